//! Finitely supported functions ψ : X_rat → P⁺.

use std::collections::BTreeMap;
use std::fmt;

use crate::coordalg::{require_xstar, Point};
use crate::error::{EmaError, Result};
use crate::foundations::Rat;
use crate::liealg::GammaGroup;
use crate::rootdata::{diagram_act, RootDatum, Weight};

#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord)]
pub struct PsiFunction {
    /// Nonzero values only.
    pub values: BTreeMap<Point, Weight>,
    pub equivariant: bool,
}

impl PsiFunction {
    pub fn new(values: impl IntoIterator<Item = (Point, Weight)>, equivariant: bool) -> Self {
        let values = values.into_iter().filter(|(_, w)| !w.is_zero()).collect();
        PsiFunction { values, equivariant }
    }

    pub fn zero(equivariant: bool) -> Self {
        PsiFunction { values: BTreeMap::new(), equivariant }
    }

    pub fn is_zero(&self) -> bool {
        self.values.is_empty()
    }

    pub fn support(&self) -> Vec<Point> {
        self.values.keys().cloned().collect()
    }

    pub fn get(&self, p: &Point) -> Option<&Weight> {
        self.values.get(p)
    }

    /// Σ_x ψ(x); `rank` fixes the length for ψ = 0.
    pub fn total(&self, rank: usize) -> Weight {
        self.values.values().fold(Weight::zero(rank), |acc, w| acc.add(w))
    }

    /// Pointwise sum; errors when the supports meet.
    pub fn disjoint_sum(&self, other: &PsiFunction) -> Result<PsiFunction> {
        if let Some(p) = self.values.keys().find(|p| other.values.contains_key(*p)) {
            return Err(EmaError::OverlappingSupport(format!("both functions are nonzero at {p}")));
        }
        let values = self.values.iter().chain(&other.values).map(|(p, w)| (p.clone(), w.clone()));
        Ok(PsiFunction::new(values, self.equivariant && other.equivariant))
    }

    /// ψ(γ·x) = γ_Out · ψ(x) for every γ and support point x.
    pub fn is_equivariant(&self, group: &GammaGroup) -> bool {
        for (x, w) in &self.values {
            for a in 0..group.order() {
                let image = x.act(group, a);
                let want = diagram_act(group.elements[a].out, w);
                let got = self.values.get(&image).cloned().unwrap_or_else(|| Weight::zero(w.rank()));
                if got != want {
                    return false;
                }
            }
        }
        true
    }

    /// Orbits met by the support, as canonical representatives.
    pub fn support_orbits(&self, group: &GammaGroup) -> Vec<Point> {
        let mut reps: Vec<Point> = self.values.keys().map(|p| p.orbit_representative(group)).collect();
        reps.sort();
        reps.dedup();
        reps
    }

    /// Sum of heights over one point per orbit for equivariant ψ, over all
    /// support points otherwise.
    pub fn height(&self, datum: &RootDatum, group: &GammaGroup) -> Rat {
        let mut h = Rat::ZERO;
        if self.equivariant {
            for rep in self.support_orbits(group) {
                h = &h + &datum.height(&self.values[&rep]);
            }
        } else {
            for w in self.values.values() {
                h = &h + &datum.height(w);
            }
        }
        h
    }
}

impl fmt::Display for PsiFunction {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let parts: Vec<String> = self.values.iter().map(|(p, w)| format!("{p}->{w}")).collect();
        write!(f, "{{{}}}", parts.join(", "))
    }
}

/// ψ^Γ(x) = Σ_γ γ·ψ(γ^{-1}·x).
pub fn psi_gamma(psi: &PsiFunction, group: &GammaGroup) -> Result<PsiFunction> {
    require_xstar(group, &psi.support())?;
    let mut values = BTreeMap::new();
    for (x, w) in &psi.values {
        for a in 0..group.order() {
            values.insert(x.act(group, a), diagram_act(group.elements[a].out, w));
        }
    }
    Ok(PsiFunction::new(values, true))
}

/// ψ_x: agrees with ψ on the transversal x, zero elsewhere.
pub fn psi_restrict(psi: &PsiFunction, transversal: &[Point], group: &GammaGroup) -> Result<PsiFunction> {
    require_xstar(group, transversal).map_err(|e| EmaError::InvalidTransversal(e.to_string()))?;
    let orbits = psi.support_orbits(group);
    for x in transversal {
        if !orbits.contains(&x.orbit_representative(group)) {
            return Err(EmaError::InvalidTransversal(format!("{x} lies outside the support orbits")));
        }
    }
    for rep in &orbits {
        if !transversal.iter().any(|x| x.same_orbit(rep, group)) {
            return Err(EmaError::InvalidTransversal(format!("no point chosen in the orbit of {rep}")));
        }
    }
    let values = transversal.iter().map(|x| (x.clone(), psi.values[x].clone()));
    Ok(PsiFunction::new(values, false))
}

/// The canonical transversal: the smallest point of each support orbit.
pub fn canonical_transversal(psi: &PsiFunction, group: &GammaGroup) -> Vec<Point> {
    psi.support_orbits(group)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::liealg::{ChevalleyAlgebra, GeneratorSpec};
    use crate::rootdata::DiagramSymmetry;

    fn group(n: usize, tau: DiagramSymmetry) -> GammaGroup {
        let g = ChevalleyAlgebra::build_sl(n + 1).unwrap();
        let spec = GeneratorSpec { order: 2, scaling: vec![1], tau, torus: vec![0; n] };
        GammaGroup::build(&g, 4, 1, &[spec]).unwrap()
    }

    fn p(x: i64) -> Point {
        Point::from_ints(&[x])
    }

    #[test]
    fn gamma_of_sl2() {
        let gamma = group(1, DiagramSymmetry::Identity);
        let psi = PsiFunction::new([(p(1), Weight::new(vec![2]))], false);
        let pg = psi_gamma(&psi, &gamma).unwrap();
        assert_eq!(pg, PsiFunction::new([(p(1), Weight::new(vec![2])), (p(-1), Weight::new(vec![2]))], true));
        assert!(pg.is_equivariant(&gamma));
        assert_eq!(psi_restrict(&pg, &[p(-1)], &gamma).unwrap(), PsiFunction::new([(p(-1), Weight::new(vec![2]))], false));
        let datum = RootDatum::type_a(1).unwrap();
        assert_eq!(pg.height(&datum, &gamma), Rat::ONE);
        assert!(psi_gamma(&PsiFunction::zero(false), &gamma).unwrap().is_zero());
    }

    #[test]
    fn gamma_of_sl3_flip() {
        let gamma = group(2, DiagramSymmetry::Flip);
        let psi = PsiFunction::new([(p(1), Weight::new(vec![1, 0]))], false);
        let pg = psi_gamma(&psi, &gamma).unwrap();
        assert_eq!(pg.values[&p(-1)], Weight::new(vec![0, 1]));
        assert!(psi_restrict(&pg, &[p(1), p(-1)], &gamma).is_err());
        assert!(psi_restrict(&pg, &[p(2)], &gamma).is_err());
    }
}
