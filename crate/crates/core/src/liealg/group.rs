//! Finite abelian groups Γ = Π Z/d_k acting on g and on the torus.
//!
//! Generator k acts on points by z_i ↦ ξ_k^{c_{k,i}} z_i and on g by an
//! automorphism of torus-scaling × diagram type, where ξ_k = ζ_m^{m/d_k}.
//! A character is a residue tuple r; its value is χ_r(γ) = Π ξ_k^{−n_k r_k}
//! for γ = Π γ_k^{n_k}. With this convention a monomial t^a lies in the
//! component labelled by r_k = c_k · a.

use crate::error::{EmaError, Result};
use crate::foundations::{FieldElement as F, Matrix};
use crate::liealg::automorphism::{build_automorphism, GAutomorphism};
use crate::liealg::chevalley::ChevalleyAlgebra;
use crate::rootdata::DiagramSymmetry;

/// Declarative description of one generator.
#[derive(Clone, Debug, PartialEq)]
pub struct GeneratorSpec {
    pub order: u32,
    pub scaling: Vec<i64>,
    pub tau: DiagramSymmetry,
    pub torus: Vec<i64>,
}

#[derive(Clone, Debug)]
pub struct GammaGenerator {
    pub spec: GeneratorSpec,
    pub xi: F,
    pub automorphism: GAutomorphism,
}

#[derive(Clone, Debug)]
pub struct GroupElement {
    pub exps: Vec<i64>,
    /// Scaling factors s_i of the point action z_i ↦ s_i z_i.
    pub scaling: Vec<F>,
    pub sigma: Matrix,
    pub out: DiagramSymmetry,
}

#[derive(Clone, Debug)]
pub struct GammaGroup {
    pub field_order: u32,
    pub num_vars: usize,
    pub generators: Vec<GammaGenerator>,
    /// Elements in mixed-radix order of their exponent tuples; index 0 is 1.
    pub elements: Vec<GroupElement>,
}

impl GammaGroup {
    pub fn build(
        g: &ChevalleyAlgebra,
        field_order: u32,
        num_vars: usize,
        specs: &[GeneratorSpec],
    ) -> Result<Self> {
        let mut generators = Vec::new();
        for (k, s) in specs.iter().enumerate() {
            if s.order == 0 || !field_order.is_multiple_of(s.order) {
                return Err(EmaError::Input(format!(
                    "generator {k}: order {} does not divide the field order {field_order}",
                    s.order
                )));
            }
            if s.scaling.len() != num_vars {
                return Err(EmaError::Input(format!(
                    "generator {k}: point scaling has length {}, expected {num_vars}",
                    s.scaling.len()
                )));
            }
            let xi = F::zeta(field_order, (field_order / s.order) as i64);
            let automorphism = build_automorphism(g, s.tau, &s.torus, &xi, s.order)?;
            generators.push(GammaGenerator { spec: s.clone(), xi, automorphism });
        }
        for a in 0..generators.len() {
            for b in (a + 1)..generators.len() {
                let x = &generators[a].automorphism.matrix;
                let y = &generators[b].automorphism.matrix;
                if x.mul(y) != y.mul(x) {
                    return Err(EmaError::NonCommuting(a, b));
                }
            }
        }
        let orders: Vec<i64> = specs.iter().map(|s| s.order as i64).collect();
        let total: i64 = orders.iter().product();
        let mut elements = Vec::with_capacity(total as usize);
        for idx in 0..total {
            let exps = mixed_radix(idx, &orders);
            let mut scaling = vec![F::one(); num_vars];
            let mut sigma = Matrix::identity(g.dim);
            let mut out = DiagramSymmetry::Identity;
            for (k, gen) in generators.iter().enumerate() {
                let e = exps[k];
                for (i, s) in scaling.iter_mut().enumerate() {
                    *s = &*s * &gen.xi.pow(e * gen.spec.scaling[i]);
                }
                for _ in 0..e {
                    sigma = gen.automorphism.matrix.mul(&sigma);
                }
                out = out.compose(gen.spec.tau.pow(e));
            }
            elements.push(GroupElement { exps, scaling, sigma, out });
        }
        Ok(GammaGroup { field_order, num_vars, generators, elements })
    }

    /// The trivial group.
    pub fn trivial(g: &ChevalleyAlgebra, num_vars: usize) -> Self {
        GammaGroup::build(g, 1, num_vars, &[]).expect("trivial group")
    }

    pub fn order(&self) -> usize {
        self.elements.len()
    }

    fn orders(&self) -> Vec<i64> {
        self.generators.iter().map(|g| g.spec.order as i64).collect()
    }

    pub fn index_of(&self, exps: &[i64]) -> usize {
        let orders = self.orders();
        let mut idx = 0i64;
        for (k, &d) in orders.iter().enumerate() {
            idx = idx * d + exps[k].rem_euclid(d);
        }
        idx as usize
    }

    pub fn mul(&self, a: usize, b: usize) -> usize {
        let e: Vec<i64> =
            self.elements[a].exps.iter().zip(&self.elements[b].exps).map(|(x, y)| x + y).collect();
        self.index_of(&e)
    }

    pub fn inverse(&self, a: usize) -> usize {
        let e: Vec<i64> = self.elements[a].exps.iter().map(|x| -x).collect();
        self.index_of(&e)
    }

    /// Applies element `a` to point coordinates.
    pub fn act_coords(&self, a: usize, z: &[F]) -> Vec<F> {
        z.iter().zip(&self.elements[a].scaling).map(|(x, s)| x * s).collect()
    }

    /// All character labels, in mixed-radix order.
    pub fn characters(&self) -> Vec<Vec<i64>> {
        let orders = self.orders();
        (0..self.order() as i64).map(|i| mixed_radix(i, &orders)).collect()
    }

    pub fn character_value(&self, r: &[i64], a: usize) -> F {
        let mut v = F::one();
        for (k, gen) in self.generators.iter().enumerate() {
            v = &v * &gen.xi.pow(-self.elements[a].exps[k] * r[k]);
        }
        v
    }

    /// Sum of character labels, reduced.
    pub fn character_add(&self, r: &[i64], s: &[i64]) -> Vec<i64> {
        self.orders().iter().enumerate().map(|(k, d)| (r[k] + s[k]).rem_euclid(*d)).collect()
    }

    /// Label of the monomial t^a: r_k = c_k · a mod d_k.
    pub fn monomial_character(&self, a: &[i64]) -> Vec<i64> {
        self.generators
            .iter()
            .map(|gen| {
                let dot: i64 = gen.spec.scaling.iter().zip(a).map(|(c, x)| c * x).sum();
                dot.rem_euclid(gen.spec.order as i64)
            })
            .collect()
    }

    /// Nontrivial elements acting with trivial scaling vector (these have fixed points).
    pub fn non_free_elements(&self) -> Vec<usize> {
        (1..self.order())
            .filter(|&a| self.elements[a].scaling.iter().all(F::is_one))
            .collect()
    }
}

fn mixed_radix(mut idx: i64, orders: &[i64]) -> Vec<i64> {
    let mut e = vec![0; orders.len()];
    for k in (0..orders.len()).rev() {
        e[k] = idx % orders[k];
        idx /= orders[k];
    }
    e
}

#[cfg(test)]
mod tests {
    use super::*;

    fn sl2_z2() -> (ChevalleyAlgebra, GammaGroup) {
        let g = ChevalleyAlgebra::build_sl(2).unwrap();
        let spec = GeneratorSpec {
            order: 2,
            scaling: vec![1],
            tau: DiagramSymmetry::Identity,
            torus: vec![1],
        };
        let gamma = GammaGroup::build(&g, 4, 1, &[spec]).unwrap();
        (g, gamma)
    }

    #[test]
    fn z2_structure() {
        let (_, gamma) = sl2_z2();
        assert_eq!(gamma.order(), 2);
        assert_eq!(gamma.elements[1].scaling, vec![F::int(-1)]);
        assert_eq!(gamma.mul(1, 1), 0);
        assert_eq!(gamma.character_value(&[1], 1), F::int(-1));
        assert!(gamma.non_free_elements().is_empty());
    }

    #[test]
    fn non_commuting_pair_is_named() {
        let g = ChevalleyAlgebra::build_sl(3).unwrap();
        let flip = GeneratorSpec {
            order: 2,
            scaling: vec![1],
            tau: DiagramSymmetry::Flip,
            torus: vec![0, 0],
        };
        let torus = GeneratorSpec {
            order: 3,
            scaling: vec![0],
            tau: DiagramSymmetry::Identity,
            torus: vec![1, 0],
        };
        let err = GammaGroup::build(&g, 12, 1, &[flip, torus]).unwrap_err();
        assert_eq!(err, EmaError::NonCommuting(0, 1));
    }

    #[test]
    fn monomial_labels_match_averaging() {
        let g = ChevalleyAlgebra::build_sl(2).unwrap();
        let spec = GeneratorSpec {
            order: 4,
            scaling: vec![1],
            tau: DiagramSymmetry::Identity,
            torus: vec![0],
        };
        let gamma = GammaGroup::build(&g, 4, 1, &[spec]).unwrap();
        // γ·t^3 = s^{-3} t^3 must equal χ_r(γ) t^3 for r = 3
        let r = gamma.monomial_character(&[3]);
        assert_eq!(r, vec![3]);
        for a in 0..4 {
            let s = gamma.elements[a].scaling[0].pow(-3);
            assert_eq!(s, gamma.character_value(&r, a));
        }
    }
}
