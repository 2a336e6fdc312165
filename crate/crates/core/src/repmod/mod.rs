//! Finite-dimensional modules over truncated and invariant algebras.

pub mod evaluation;
pub mod hom;
pub mod module;
pub mod multiplicity;
pub mod psi;
pub mod transport;

pub use evaluation::{evaluation_module, evaluation_truncated, irrep};
pub use hom::{hom_space, is_intertwiner, is_isomorphic, isomorphism_witness};
pub use module::{AlgebraRef, FiniteModule, LieStructure, StructureConstants};
pub use multiplicity::{
    composition_length, dimension_sum, is_maximal_weight, levi_character, levi_eigenspaces, multiplicities,
    multiplicities_truncated, multiplicities_via, support, MultiplicityTable,
};
pub use psi::{canonical_transversal, psi_gamma, psi_restrict, PsiFunction};
pub use transport::{
    algebra_eta, algebra_transversal, common_algebra, eta_max, transport, transport_invariant, transport_truncated, twist,
    untwist,
};

#[cfg(test)]
mod tests {
    use super::*;
    use crate::coordalg::Point;
    use crate::ema::constant_eta;
    use crate::ema::tests::sl2_z2;
    use crate::rootdata::Weight;

    fn p(x: i64) -> Point {
        Point::from_ints(&[x])
    }

    #[test]
    fn evaluation_and_functors() {
        let s = sl2_z2();
        let t = s.truncated(&constant_eta(&[p(1)], 1));
        let local = PsiFunction::new([(p(1), Weight::new(vec![2]))], false);
        let v = evaluation_truncated(&local, &t).unwrap();
        assert_eq!(v.dim, 3);
        assert!(v.check_representation());
        let tv = twist(&s, &v).unwrap();
        assert!(tv.check_representation());
        let psi = psi_gamma(&local, &s.gamma).unwrap();
        assert_eq!(multiplicities(&s, &tv).unwrap(), MultiplicityTable::from([(psi.clone(), 1)]));
        let back = untwist(&s, &tv, &[p(1)]).unwrap();
        assert_eq!(back.actions, v.actions);
        assert_eq!(twist(&s, &back).unwrap().actions, tv.actions);
        let direct = evaluation_module(&s, &psi, &tv.algebra).unwrap();
        assert!(is_isomorphic(&direct, &tv).unwrap());
        let other = untwist(&s, &tv, &[p(-1)]).unwrap();
        assert_eq!(
            multiplicities_truncated(&other).unwrap(),
            MultiplicityTable::from([(psi_restrict(&psi, &[p(-1)], &s.gamma).unwrap(), 1)])
        );
    }

    #[test]
    fn hom_and_sums() {
        let s = sl2_z2();
        let t = s.truncated(&constant_eta(&[p(1)], 1));
        let alg = AlgebraRef::Truncated(t.clone());
        let a = evaluation_truncated(&PsiFunction::new([(p(1), Weight::new(vec![1]))], false), &t).unwrap();
        let triv = FiniteModule::trivial(alg, 1);
        assert_eq!(hom_space(&a, &a).unwrap().len(), 1);
        assert_eq!(hom_space(&a, &triv).unwrap().len(), 0);
        let sum = a.direct_sum(&triv).unwrap();
        assert_eq!(hom_space(&sum, &sum).unwrap().len(), 2);
        let sq = a.tensor(&a).unwrap();
        let table = multiplicities(&s, &sq).unwrap();
        assert_eq!(composition_length(&table), 2);
        assert_eq!(dimension_sum(&table, &s.g.datum, &s.gamma), 4);
    }

    #[test]
    fn support_escape_is_reported() {
        let s = sl2_z2();
        let t = s.truncated(&constant_eta(&[p(1), p(2)], 1));
        let psi = PsiFunction::new([(p(1), Weight::new(vec![1])), (p(2), Weight::new(vec![1]))], false);
        let tv = twist(&s, &evaluation_truncated(&psi, &t).unwrap()).unwrap();
        let err = untwist(&s, &tv, &[p(1)]).unwrap_err();
        assert!(matches!(err, crate::EmaError::SupportEscapes(_)), "{err}");
    }
}
