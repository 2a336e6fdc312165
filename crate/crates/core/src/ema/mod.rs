//! Truncated and equivariant map algebras (g ⊗ A)^Γ.

pub mod evaliso;
pub mod ideals;
pub mod invariant;
pub mod lift;
pub mod truncated;

use std::collections::HashMap;
use std::sync::{Arc, Mutex};

use crate::coordalg::{orbit_saturate, require_xstar, EtaFunction, Point};
use crate::error::Result;
use crate::foundations::sparse::SparseVec;
use crate::liealg::{ChevalleyAlgebra, GammaGroup};

pub use evaliso::EvalIso;
pub use ideals::{annihilator_eta, ideal_equality, power_ideal_check, AnnihilatorReport};
pub use invariant::InvariantAlgebra;
pub use lift::{constructive_lift, LiftResult, MapElement};
pub use truncated::{OrbitTruncation, TruncatedAlgebra};

/// Canonical text key of an exponent function.
pub fn eta_key(eta: &EtaFunction) -> String {
    eta.iter().filter(|(_, &e)| e > 0).map(|(p, e)| format!("{p}^{e}")).collect::<Vec<_>>().join(",")
}

/// Exponent `e` at every point of `points`.
pub fn constant_eta<'a>(points: impl IntoIterator<Item = &'a Point>, e: u32) -> EtaFunction {
    points.into_iter().map(|p| (p.clone(), e)).collect()
}

#[derive(Default)]
struct Cache {
    truncated: HashMap<String, Arc<TruncatedAlgebra>>,
    invariant: HashMap<String, Arc<InvariantAlgebra>>,
    iso: HashMap<String, Arc<EvalIso>>,
}

/// The fixed data g, Γ and the number of torus coordinates, with memoized
/// algebras keyed by exponent function.
pub struct EmaSetting {
    pub g: Arc<ChevalleyAlgebra>,
    pub gamma: Arc<GammaGroup>,
    pub nvars: usize,
    cache: Mutex<Cache>,
}

impl EmaSetting {
    pub fn new(g: Arc<ChevalleyAlgebra>, gamma: Arc<GammaGroup>, nvars: usize) -> Self {
        EmaSetting { g, gamma, nvars, cache: Mutex::new(Cache::default()) }
    }

    pub fn truncated(&self, eta: &EtaFunction) -> Arc<TruncatedAlgebra> {
        let key = eta_key(eta);
        if let Some(t) = self.cache.lock().expect("cache lock").truncated.get(&key) {
            return t.clone();
        }
        let t = Arc::new(TruncatedAlgebra::new(self.g.clone(), self.nvars, eta));
        self.cache.lock().expect("cache lock").truncated.insert(key, t.clone());
        t
    }

    /// The invariant algebra of the orbit saturation of `eta`.
    pub fn invariant(&self, eta: &EtaFunction) -> Result<Arc<InvariantAlgebra>> {
        let sat = orbit_saturate(eta, &self.gamma)?;
        let key = eta_key(&sat);
        if let Some(a) = self.cache.lock().expect("cache lock").invariant.get(&key) {
            return Ok(a.clone());
        }
        let orbit = Arc::new(OrbitTruncation::new(self.g.clone(), self.gamma.clone(), self.nvars, &sat)?);
        let a = Arc::new(InvariantAlgebra::new(orbit)?);
        self.cache.lock().expect("cache lock").invariant.insert(key, a.clone());
        Ok(a)
    }

    /// ev^Γ for an exponent function supported on a set in X_*.
    pub fn ev_gamma_iso(&self, eta: &EtaFunction) -> Result<Arc<EvalIso>> {
        let support: Vec<Point> = eta.iter().filter(|(_, &e)| e > 0).map(|(p, _)| p.clone()).collect();
        require_xstar(&self.gamma, &support)?;
        self.restriction(&self.invariant(eta)?, eta)
    }

    /// Restriction from an invariant algebra to the truncation over `eta`,
    /// whose points need not meet every orbit of the source.
    pub fn restriction(&self, source: &Arc<InvariantAlgebra>, eta: &EtaFunction) -> Result<Arc<EvalIso>> {
        let key = format!("{}=>{}", source.key(), eta_key(eta));
        if let Some(i) = self.cache.lock().expect("cache lock").iso.get(&key) {
            return Ok(i.clone());
        }
        let iso = Arc::new(EvalIso::new(source.clone(), self.truncated(eta))?);
        self.cache.lock().expect("cache lock").iso.insert(key, iso.clone());
        Ok(iso)
    }

    /// Averages an element of the orbit truncation into the invariant algebra.
    pub fn average(&self, inv: &InvariantAlgebra, v: &SparseVec) -> Vec<crate::foundations::FieldElement> {
        use crate::foundations::sparse::Accumulator;
        use crate::foundations::FieldElement as F;
        let w = F::rat(1, self.gamma.order() as i64);
        let mut acc = Accumulator::new();
        for m in &inv.orbit.action {
            acc.add_scaled(&m.apply(v), &w);
        }
        inv.coordinates(&acc.finish()).expect("averages are invariant")
    }
}

#[cfg(test)]
pub(crate) mod tests {
    use super::*;
    use crate::liealg::GeneratorSpec;
    use crate::rootdata::DiagramSymmetry;

    pub(crate) fn sl2_z2() -> EmaSetting {
        let g = Arc::new(ChevalleyAlgebra::build_sl(2).unwrap());
        let spec = GeneratorSpec { order: 2, scaling: vec![1], tau: DiagramSymmetry::Identity, torus: vec![1] };
        let gamma = Arc::new(GammaGroup::build(&g, 4, 1, &[spec]).unwrap());
        EmaSetting::new(g, gamma, 1)
    }

    #[test]
    fn evaluation_isomorphism_dimensions() {
        let s = sl2_z2();
        for (e, d) in [(1, 3), (2, 6)] {
            let eta = constant_eta(&[Point::from_ints(&[1])], e);
            let iso = s.ev_gamma_iso(&eta).unwrap();
            assert_eq!(iso.source.dim, d);
            assert_eq!(iso.target.dim, d);
            assert!(iso.is_bijective());
            assert!(iso.source.check_grading());
            for (_, here, dg, db) in iso.source.grading_dimensions() {
                assert_eq!(here, dg * db);
            }
        }
    }

    #[test]
    fn xstar_is_enforced() {
        let s = sl2_z2();
        let eta = constant_eta(&[Point::from_ints(&[1]), Point::from_ints(&[-1])], 1);
        assert!(s.ev_gamma_iso(&eta).is_err());
    }

    #[test]
    fn trivial_group_gives_identity() {
        let g = Arc::new(ChevalleyAlgebra::build_sl(2).unwrap());
        let gamma = Arc::new(GammaGroup::trivial(&g, 1));
        let s = EmaSetting::new(g, gamma, 1);
        let eta = constant_eta(&[Point::from_ints(&[3])], 2);
        let iso = s.ev_gamma_iso(&eta).unwrap();
        assert!(iso.matrix.is_identity());
    }

    #[test]
    fn commuting_square() {
        let s = sl2_z2();
        let x = Point::from_ints(&[1]);
        let small = constant_eta(std::slice::from_ref(&x), 1);
        let big = constant_eta(&[x], 2);
        let iso_s = s.ev_gamma_iso(&small).unwrap();
        let iso_b = s.ev_gamma_iso(&big).unwrap();
        let proj_t = iso_b.target.projection_to(&iso_s.target);
        // projection of invariants: restrict in the orbit truncation, then take coordinates
        let proj_i = iso_b.source.projection_to(&iso_s.source).unwrap();
        assert_eq!(proj_t.mul(&iso_b.matrix), iso_s.matrix.mul(&proj_i));
    }
}
