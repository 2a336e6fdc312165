//! Finite-order automorphisms of torus-scaling × diagram type.

use crate::error::{EmaError, Result};
use crate::foundations::sparse::{get, scale, SparseVec};
use crate::foundations::{FieldElement as F, Matrix};
use crate::liealg::chevalley::ChevalleyAlgebra;
use crate::rootdata::DiagramSymmetry;

#[derive(Clone, Debug)]
pub struct GAutomorphism {
    pub tau: DiagramSymmetry,
    pub torus: Vec<i64>,
    pub zeta: F,
    pub order: u32,
    /// Column `b` is the image of basis element `b`.
    pub matrix: Matrix,
}

impl GAutomorphism {
    pub fn identity(g: &ChevalleyAlgebra) -> Self {
        GAutomorphism {
            tau: DiagramSymmetry::Identity,
            torus: vec![0; g.rank()],
            zeta: F::one(),
            order: 1,
            matrix: Matrix::identity(g.dim),
        }
    }

    pub fn out_part(&self) -> DiagramSymmetry {
        self.tau
    }

    pub fn apply(&self, x: &[F]) -> Vec<F> {
        self.matrix.mul_vec(x)
    }

    /// The automorphism `self ∘ other`.
    pub fn compose(&self, other: &GAutomorphism) -> GAutomorphism {
        GAutomorphism {
            tau: self.tau.compose(other.tau),
            torus: Vec::new(),
            zeta: F::one(),
            order: 0,
            matrix: self.matrix.mul(&other.matrix),
        }
    }
}

/// Builds e_i ↦ ζ^{a_i} e_{τ(i)}, f_i ↦ ζ^{−a_i} f_{τ(i)}, h_i ↦ h_{τ(i)} and
/// extends it to all root vectors through brackets with simple root vectors.
pub fn build_automorphism(
    g: &ChevalleyAlgebra,
    tau: DiagramSymmetry,
    torus: &[i64],
    zeta: &F,
    declared_order: u32,
) -> Result<GAutomorphism> {
    let n = g.rank();
    if torus.len() != n {
        return Err(EmaError::Input(format!(
            "torus exponents have length {}, expected {n}",
            torus.len()
        )));
    }
    let mut images: Vec<SparseVec> = vec![Vec::new(); g.dim];
    for i in 0..n {
        let t = tau.node(n, i);
        images[g.e(i)] = vec![(g.e(t), zeta.pow(torus[i]))];
        images[g.f(i)] = vec![(g.f(t), zeta.pow(-torus[i]))];
        images[g.h(i)] = vec![(g.h(t), F::one())];
    }
    for k in n..g.num_positive() {
        let (i, j) = g.datum.root_span(k);
        let rest = g.root_index(i + 1, j);
        for (simple, part, target) in [(g.e(i), g.e(rest), g.e(k)), (g.f(i), g.f(rest), g.f(k))] {
            let c = get(&g.brackets[simple][part], target)
                .cloned()
                .ok_or_else(|| EmaError::NotAnAutomorphism("root vector not reached".into()))?;
            let img = g.bracket(&images[simple], &images[part]);
            images[target] = scale(&img, &c.inv());
        }
    }
    let mut matrix = Matrix::zeros(g.dim, g.dim);
    for (b, img) in images.iter().enumerate() {
        for (i, c) in img {
            matrix[(*i, b)] = c.clone();
        }
    }
    for a in 0..g.dim {
        for b in 0..g.dim {
            let lhs = g.bracket(&images[a], &images[b]);
            let mut rhs = crate::foundations::sparse::Accumulator::new();
            for (i, c) in &g.brackets[a][b] {
                rhs.add_scaled(&images[*i], c);
            }
            if lhs != rhs.finish() {
                return Err(EmaError::NotAnAutomorphism(format!(
                    "bracket [{}, {}] not preserved",
                    g.labels[a], g.labels[b]
                )));
            }
        }
    }
    let mut power = Matrix::identity(g.dim);
    for _ in 0..declared_order {
        power = matrix.mul(&power);
    }
    if !power.is_identity() {
        return Err(EmaError::NotAnAutomorphism(format!(
            "map does not have order dividing {declared_order}"
        )));
    }
    Ok(GAutomorphism { tau, torus: torus.to_vec(), zeta: zeta.clone(), order: declared_order, matrix })
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn sl2_inner_involution() {
        let g = ChevalleyAlgebra::build_sl(2).unwrap();
        let s = build_automorphism(&g, DiagramSymmetry::Identity, &[1], &F::int(-1), 2).unwrap();
        assert_eq!(s.matrix[(0, 0)], F::int(-1));
        assert_eq!(s.matrix[(1, 1)], F::one());
        assert_eq!(s.matrix[(2, 2)], F::int(-1));
        assert!(s.matrix.mul(&s.matrix).is_identity());
    }

    #[test]
    fn sl3_flip() {
        let g = ChevalleyAlgebra::build_sl(3).unwrap();
        let s = build_automorphism(&g, DiagramSymmetry::Flip, &[0, 0], &F::one(), 2).unwrap();
        assert!(s.matrix[(g.e(1), g.e(0))].is_one());
        assert!(s.matrix[(g.e(0), g.e(1))].is_one());
        assert_eq!(s.out_part(), DiagramSymmetry::Flip);
    }

    #[test]
    fn identity_and_wrong_order() {
        let g = ChevalleyAlgebra::build_sl(2).unwrap();
        let id = build_automorphism(&g, DiagramSymmetry::Identity, &[0], &F::one(), 1).unwrap();
        assert!(id.matrix.is_identity());
        let bad = build_automorphism(&g, DiagramSymmetry::Identity, &[1], &F::zeta(4, 1), 2);
        assert!(matches!(bad, Err(EmaError::NotAnAutomorphism(_))));
    }
}
