//! Restriction of invariant elements to the summands over a transversal.

use std::sync::Arc;

use crate::error::{EmaError, Result};
use crate::foundations::sparse::{sparse_from_dense, SparseVec};
use crate::foundations::{FieldElement as F, Matrix};

use super::invariant::InvariantAlgebra;
use super::truncated::TruncatedAlgebra;

/// The evaluation map (g⊗A/Ĩ_η)^Γ → g⊗A/I_η and a right inverse.
#[derive(Clone, Debug)]
pub struct EvalIso {
    pub source: Arc<InvariantAlgebra>,
    pub target: Arc<TruncatedAlgebra>,
    /// `target.dim × source.dim`.
    pub matrix: Matrix,
    /// `source.dim × target.dim` with `matrix * inverse = 1`.
    pub inverse: Matrix,
    /// Basis of the kernel in source coordinates (empty for a bijection).
    pub kernel: Vec<Vec<F>>,
}

impl EvalIso {
    /// Builds the restriction map; the target must use points of the
    /// source's orbit truncation with no larger exponents.
    pub fn new(source: Arc<InvariantAlgebra>, target: Arc<TruncatedAlgebra>) -> Result<Self> {
        let ambient = &source.orbit.alg;
        for (p, &e) in target.quot.points.iter().zip(&target.quot.exps) {
            match ambient.quot.point_index(p) {
                Some(i) if ambient.quot.exps[i] >= e => {}
                _ => {
                    return Err(EmaError::InvalidTransversal(format!(
                        "point {p} with exponent {e} is not covered by the invariant algebra"
                    )))
                }
            }
        }
        let proj = ambient.projection_to(&target);
        let basis = Matrix::from_columns(
            ambient.dim,
            &(0..source.dim)
                .map(|i| crate::foundations::sparse::sparse_to_dense(source.basis_vector(i), ambient.dim))
                .collect::<Vec<_>>(),
        );
        let matrix = proj.mul(&basis);
        if matrix.rank() != target.dim {
            return Err(EmaError::Certification("evaluation map is not surjective".into()));
        }
        let inverse = if matrix.rows == matrix.cols {
            matrix.inverse().ok_or_else(|| EmaError::Certification("evaluation map is singular".into()))?
        } else {
            matrix
                .solve_matrix(&Matrix::identity(target.dim))
                .ok_or_else(|| EmaError::Certification("no right inverse".into()))?
        };
        let kernel = matrix.nullspace();
        let iso = EvalIso { source, target, matrix, inverse, kernel };
        if !iso.check_brackets() {
            return Err(EmaError::Certification("evaluation map does not preserve brackets".into()));
        }
        Ok(iso)
    }

    pub fn is_bijective(&self) -> bool {
        self.kernel.is_empty() && self.matrix.rows == self.matrix.cols
    }

    pub fn apply(&self, v: &SparseVec) -> SparseVec {
        let dense = crate::foundations::sparse::sparse_to_dense(v, self.source.dim);
        sparse_from_dense(&self.matrix.mul_vec(&dense))
    }

    /// ev([u_i, u_j]) = [ev u_i, ev u_j] on all basis pairs.
    pub fn check_brackets(&self) -> bool {
        let cols: Vec<SparseVec> =
            (0..self.source.dim).map(|i| sparse_from_dense(&self.matrix.column(i))).collect();
        for i in 0..self.source.dim {
            for j in (i + 1)..self.source.dim {
                let lhs = self.apply(&self.source.brackets[i][j]);
                let rhs = self.target.bracket(&cols[i], &cols[j]);
                if lhs != rhs {
                    return false;
                }
            }
        }
        true
    }
}
