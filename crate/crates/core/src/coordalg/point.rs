//! Rational points of the torus, exponent functions, orbits and the X_* check.

use std::cmp::Ordering;
use std::collections::BTreeMap;
use std::fmt;

use crate::error::{EmaError, Result};
use crate::foundations::FieldElement as F;
use crate::liealg::GammaGroup;

#[derive(Clone, Debug)]
pub struct Point {
    pub coords: Vec<F>,
}

impl Point {
    pub fn new(coords: Vec<F>) -> Result<Self> {
        if coords.iter().any(F::is_zero) {
            return Err(EmaError::Input("torus points need nonzero coordinates".into()));
        }
        Ok(Point { coords })
    }

    pub fn from_ints(c: &[i64]) -> Self {
        Point::new(c.iter().map(|&x| F::int(x)).collect()).expect("nonzero coordinates")
    }

    pub fn dim(&self) -> usize {
        self.coords.len()
    }

    pub fn act(&self, group: &GammaGroup, a: usize) -> Point {
        Point { coords: group.act_coords(a, &self.coords) }
    }

    /// Γ·x in group element order (identity first).
    pub fn orbit(&self, group: &GammaGroup) -> Vec<Point> {
        (0..group.order()).map(|a| self.act(group, a)).collect()
    }

    /// The element γ with γ·self = other, if any.
    pub fn element_to(&self, other: &Point, group: &GammaGroup) -> Option<usize> {
        (0..group.order()).find(|&a| &self.act(group, a) == other)
    }

    pub fn same_orbit(&self, other: &Point, group: &GammaGroup) -> bool {
        self.element_to(other, group).is_some()
    }

    /// Canonical representative of the orbit (smallest point).
    pub fn orbit_representative(&self, group: &GammaGroup) -> Point {
        self.orbit(group).into_iter().min().expect("nonempty orbit")
    }
}

impl PartialEq for Point {
    fn eq(&self, other: &Self) -> bool {
        self.coords == other.coords
    }
}

impl Eq for Point {}

impl Ord for Point {
    fn cmp(&self, other: &Self) -> Ordering {
        for (a, b) in self.coords.iter().zip(&other.coords) {
            match a.canonical_cmp(b) {
                Ordering::Equal => continue,
                o => return o,
            }
        }
        self.coords.len().cmp(&other.coords.len())
    }
}

impl PartialOrd for Point {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl fmt::Display for Point {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.coords.len() == 1 {
            return write!(f, "{}", self.coords[0]);
        }
        let parts: Vec<String> = self.coords.iter().map(|c| c.to_string()).collect();
        write!(f, "({})", parts.join(", "))
    }
}

/// η : X_rat → N with finite support; I_η = Π m_x^{η(x)}.
pub type EtaFunction = BTreeMap<Point, u32>;

/// Saturates η along orbits: every γ·x gets the exponent of x.
pub fn orbit_saturate(eta: &EtaFunction, group: &GammaGroup) -> Result<EtaFunction> {
    let mut out = EtaFunction::new();
    for (x, &e) in eta {
        for y in x.orbit(group) {
            match out.get(&y) {
                Some(&old) if old != e => {
                    return Err(EmaError::XStarViolation(format!(
                        "points {x} and {y} share an orbit with different exponents"
                    )))
                }
                _ => {
                    out.insert(y, e);
                }
            }
        }
    }
    Ok(out)
}

#[derive(Clone, Debug, PartialEq)]
pub struct FreenessReport {
    pub free: bool,
    /// Exponent tuples of nontrivial elements with trivial scaling.
    pub fixed_point_elements: Vec<Vec<i64>>,
    pub xstar_ok: bool,
    /// Pairs of listed points lying in one orbit.
    pub same_orbit_pairs: Vec<(Point, Point)>,
}

impl FreenessReport {
    pub fn ok(&self) -> bool {
        self.free && self.xstar_ok
    }
}

/// A nontrivial coordinate scaling has no fixed point on the torus, so the
/// action is free iff every nontrivial element scales some coordinate.
pub fn validate_free_and_xstar(group: &GammaGroup, points: &[Point]) -> FreenessReport {
    let bad: Vec<Vec<i64>> =
        group.non_free_elements().into_iter().map(|a| group.elements[a].exps.clone()).collect();
    let mut pairs = Vec::new();
    for i in 0..points.len() {
        for j in (i + 1)..points.len() {
            if points[i].same_orbit(&points[j], group) {
                pairs.push((points[i].clone(), points[j].clone()));
            }
        }
    }
    FreenessReport {
        free: bad.is_empty(),
        fixed_point_elements: bad,
        xstar_ok: pairs.is_empty(),
        same_orbit_pairs: pairs,
    }
}

/// Errors unless the points meet the X_* condition.
pub fn require_xstar(group: &GammaGroup, points: &[Point]) -> Result<()> {
    let r = validate_free_and_xstar(group, points);
    if let Some((a, b)) = r.same_orbit_pairs.first() {
        return Err(EmaError::XStarViolation(format!("{a} and {b} lie in the same orbit")));
    }
    Ok(())
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::liealg::{ChevalleyAlgebra, GeneratorSpec};
    use crate::rootdata::DiagramSymmetry;

    fn z2(scaling: i64) -> GammaGroup {
        let g = ChevalleyAlgebra::build_sl(2).unwrap();
        let spec = GeneratorSpec {
            order: 2,
            scaling: vec![scaling],
            tau: DiagramSymmetry::Identity,
            torus: vec![1],
        };
        GammaGroup::build(&g, 4, 1, &[spec]).unwrap()
    }

    #[test]
    fn orbit_of_one() {
        let gamma = z2(1);
        let orbit = Point::from_ints(&[1]).orbit(&gamma);
        assert_eq!(orbit, vec![Point::from_ints(&[1]), Point::from_ints(&[-1])]);
    }

    #[test]
    fn freeness_and_xstar() {
        let gamma = z2(1);
        let r = validate_free_and_xstar(&gamma, &[Point::from_ints(&[1])]);
        assert!(r.ok());
        let r = validate_free_and_xstar(&gamma, &[Point::from_ints(&[1]), Point::from_ints(&[-1])]);
        assert!(r.free && !r.xstar_ok);
        let r = validate_free_and_xstar(&z2(0), &[Point::from_ints(&[1])]);
        assert!(!r.free);
    }
}
