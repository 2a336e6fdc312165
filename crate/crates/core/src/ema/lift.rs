//! Explicit invariant preimages under the evaluation map.

use crate::coordalg::{interpolate, jet_expand, EtaFunction, LaurentFunction, Point};
use crate::error::{EmaError, Result};
use crate::foundations::sparse::SparseVec;
use crate::foundations::FieldElement as F;
use crate::liealg::{ChevalleyAlgebra, GammaGroup};

/// An element Σ_b x_b ⊗ α_b of g ⊗ A, stored by g-basis component.
#[derive(Clone, Debug, PartialEq)]
pub struct MapElement {
    pub components: Vec<LaurentFunction>,
}

impl MapElement {
    pub fn zero(dim_g: usize, nvars: usize) -> Self {
        MapElement { components: vec![LaurentFunction::zero(nvars); dim_g] }
    }

    pub fn pure(a: &SparseVec, f: &LaurentFunction, dim_g: usize) -> Self {
        let mut m = MapElement::zero(dim_g, f.nvars);
        for (b, c) in a {
            m.components[*b] = f.scale(c);
        }
        m
    }

    /// γ·(Σ x_b ⊗ f_b) = Σ σ_γ(x_b) ⊗ γ·f_b.
    pub fn gamma_act(&self, group: &GammaGroup, a: usize) -> Self {
        let sigma = &group.elements[a].sigma;
        let n = self.components.len();
        let nvars = self.components.first().map(|f| f.nvars).unwrap_or(0);
        let mut out = MapElement::zero(n, nvars);
        for (c, f) in self.components.iter().enumerate() {
            if f.is_zero() {
                continue;
            }
            let moved = f.gamma_act(group, a);
            for b in 0..n {
                if !sigma[(b, c)].is_zero() {
                    out.components[b] = out.components[b].add(&moved.scale(&sigma[(b, c)]));
                }
            }
        }
        out
    }

    pub fn add(&self, other: &Self) -> Self {
        MapElement {
            components: self.components.iter().zip(&other.components).map(|(a, b)| a.add(b)).collect(),
        }
    }

    /// Value at a point, as a g-element.
    pub fn eval(&self, x: &Point) -> Vec<F> {
        self.components.iter().map(|f| f.eval(x)).collect()
    }

    pub fn describe(&self, g: &ChevalleyAlgebra) -> String {
        let parts: Vec<String> = self
            .components
            .iter()
            .enumerate()
            .filter(|(_, f)| !f.is_zero())
            .map(|(b, f)| format!("{}⊗[{f}]", g.labels[b]))
            .collect();
        if parts.is_empty() {
            "0".into()
        } else {
            parts.join(" + ")
        }
    }
}

#[derive(Clone, Debug)]
pub struct LiftResult {
    pub n: u32,
    pub xi: F,
    pub f1: LaurentFunction,
    pub f2: LaurentFunction,
    pub alpha: MapElement,
    pub invariant: bool,
    pub matches_at_x: bool,
    pub vanishes_elsewhere: bool,
}

impl LiftResult {
    pub fn ok(&self) -> bool {
        self.invariant && self.matches_at_x && self.vanishes_elsewhere
    }
}

/// Builds α = Σ_γ γ·(a ⊗ f₂) with f₂ = f(1 + f₁ⁿ)ⁿ, where f₁ vanishes at x
/// and equals an n-th root of −1 on the rest of Γ·Supp η.
pub fn constructive_lift(
    g: &ChevalleyAlgebra,
    group: &GammaGroup,
    a: &SparseVec,
    f: &LaurentFunction,
    x: &Point,
    eta: &EtaFunction,
) -> Result<LiftResult> {
    let ex = *eta.get(x).filter(|&&e| e > 0).ok_or_else(|| {
        EmaError::Input(format!("{x} is not in the support of η"))
    })?;
    let support: Vec<&Point> = eta.iter().filter(|(_, &e)| e > 0).map(|(p, _)| p).collect();
    crate::coordalg::require_xstar(group, &support.iter().map(|p| (*p).clone()).collect::<Vec<_>>())?;
    let n = eta.values().copied().max().unwrap_or(0).max(1);
    let m = group.field_order;
    if !m.is_multiple_of(2 * n) {
        return Err(EmaError::MissingRoot { needed: 2 * n });
    }
    let xi = F::zeta(m, (m / (2 * n)) as i64);
    let mut assignments = Vec::new();
    for y in &support {
        for (k, z) in y.orbit(group).into_iter().enumerate() {
            let value = if *y == x && k == 0 { F::zero() } else { xi.clone() };
            assignments.push((z, value));
        }
    }
    let f1 = interpolate(&assignments)?;
    let one = LaurentFunction::one(f.nvars);
    let f2 = f.mul(&one.add(&f1.pow(n)).pow(n));
    let base = MapElement::pure(a, &f2, g.dim);
    let mut alpha = MapElement::zero(g.dim, f.nvars);
    for k in 0..group.order() {
        alpha = alpha.add(&base.gamma_act(group, k));
    }
    let invariant = (0..group.order()).all(|k| alpha.gamma_act(group, k) == alpha);
    let target = jet_expand(f, x, ex);
    let matches_at_x = (0..g.dim).all(|b| {
        let coeff = a.iter().find(|(i, _)| *i == b).map(|(_, c)| c.clone()).unwrap_or_else(F::zero);
        let want: Vec<F> = target.iter().map(|t| t * &coeff).collect();
        jet_expand(&alpha.components[b], x, ex) == want
    });
    let vanishes_elsewhere = support.iter().filter(|y| **y != x).all(|y| {
        let e = eta[*y];
        alpha.components.iter().all(|c| jet_expand(c, y, e).iter().all(F::is_zero))
    });
    Ok(LiftResult { n, xi, f1, f2, alpha, invariant, matches_at_x, vanishes_elsewhere })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::liealg::GeneratorSpec;
    use crate::rootdata::DiagramSymmetry;

    fn setup() -> (ChevalleyAlgebra, GammaGroup) {
        let g = ChevalleyAlgebra::build_sl(2).unwrap();
        let spec = GeneratorSpec { order: 2, scaling: vec![1], tau: DiagramSymmetry::Identity, torus: vec![1] };
        let gamma = GammaGroup::build(&g, 4, 1, &[spec]).unwrap();
        (g, gamma)
    }

    #[test]
    fn lift_of_e_is_e_tensor_t() {
        let (g, gamma) = setup();
        let x = Point::from_ints(&[1]);
        let eta: EtaFunction = [(x.clone(), 1)].into_iter().collect();
        let e = vec![(g.e(0), F::one())];
        let r = constructive_lift(&g, &gamma, &e, &LaurentFunction::one(1), &x, &eta).unwrap();
        assert_eq!(r.xi, F::int(-1));
        let t = LaurentFunction::var(1, 0);
        assert_eq!(r.f1, t.sub(&LaurentFunction::one(1)).scale(&F::rat(1, 2)));
        assert_eq!(r.f2, t.add(&LaurentFunction::one(1)).scale(&F::rat(1, 2)));
        assert_eq!(r.alpha, MapElement::pure(&e, &t, g.dim));
        assert!(r.ok());
    }

    #[test]
    fn lift_needs_root() {
        let g = ChevalleyAlgebra::build_sl(2).unwrap();
        let spec = GeneratorSpec { order: 2, scaling: vec![1], tau: DiagramSymmetry::Identity, torus: vec![1] };
        let gamma = GammaGroup::build(&g, 2, 1, &[spec]).unwrap();
        let x = Point::from_ints(&[1]);
        let eta: EtaFunction = [(x.clone(), 2)].into_iter().collect();
        let e = vec![(g.e(0), F::one())];
        let r = constructive_lift(&g, &gamma, &e, &LaurentFunction::one(1), &x, &eta);
        assert_eq!(r.unwrap_err(), EmaError::MissingRoot { needed: 4 });
    }

    #[test]
    fn lift_of_h_two_points() {
        let (g, gamma) = setup();
        let x = Point::from_ints(&[1]);
        let y = Point::from_ints(&[2]);
        let eta: EtaFunction = [(x.clone(), 2), (y, 1)].into_iter().collect();
        let h = vec![(g.h(0), F::one())];
        let f = LaurentFunction::var(1, 0).pow(3);
        let r = constructive_lift(&g, &gamma, &h, &f, &x, &eta).unwrap();
        assert!(r.ok());
        assert_eq!(r.alpha.eval(&x), vec![F::zero(), F::one(), F::zero()]);
    }
}
