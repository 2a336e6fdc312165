//! The Γ-fixed subalgebra of an orbit truncation, graded by characters.

use std::sync::Arc;

use crate::error::{EmaError, Result};
use crate::foundations::sparse::{sparse_from_dense, sparse_to_dense, Accumulator, SparseVec};
use crate::foundations::{FieldElement as F, Frame, Matrix, Subspace};
use crate::liealg::{ChevalleyAlgebra, GammaGroup};

use super::truncated::OrbitTruncation;

#[derive(Clone, Debug)]
pub struct InvariantAlgebra {
    pub orbit: Arc<OrbitTruncation>,
    pub dim: usize,
    /// Basis vectors in the coordinates of the orbit truncation, grouped by character.
    pub frame: Frame,
    /// Character label r of each basis element (element of g_r ⊗ B_{−r}).
    pub grades: Vec<Vec<i64>>,
    pub brackets: Vec<Vec<SparseVec>>,
    pub labels: Vec<String>,
}

/// Projector onto g_r: |Γ|^{-1} Σ_γ χ_r(γ)^{-1} σ_γ, as sparse columns.
fn g_isotypic(g: &ChevalleyAlgebra, gamma: &GammaGroup, r: &[i64]) -> Vec<SparseVec> {
    let inv_order = F::rat(1, gamma.order() as i64);
    (0..g.dim)
        .map(|b| {
            let mut acc = Accumulator::new();
            for a in 0..gamma.order() {
                let w = &gamma.character_value(r, a).inv() * &inv_order;
                let sigma = &gamma.elements[a].sigma;
                for row in 0..g.dim {
                    if !sigma[(row, b)].is_zero() {
                        acc.add(row, &w * &sigma[(row, b)]);
                    }
                }
            }
            acc.finish()
        })
        .collect()
}

impl InvariantAlgebra {
    pub fn new(orbit: Arc<OrbitTruncation>) -> Result<Self> {
        let alg = &orbit.alg;
        let g = &alg.g;
        let gamma = &orbit.gamma;
        let dg = g.dim;
        let inv_order = F::rat(1, gamma.order() as i64);
        let average = |v: &SparseVec| {
            let mut acc = Accumulator::new();
            for m in &orbit.action {
                acc.add_scaled(&m.apply(v), &inv_order);
            }
            acc.finish()
        };
        let mut basis = Vec::new();
        let mut grades = Vec::new();
        for r in gamma.characters() {
            let proj = g_isotypic(g, gamma, &r);
            let mut space = Subspace::zero(alg.dim);
            for q in 0..alg.quot.dim {
                for b in 0..dg {
                    if proj[b].is_empty() {
                        continue;
                    }
                    let v: SparseVec = proj[b].iter().map(|(a, c)| (q * dg + a, c.clone())).collect();
                    space.insert(&average(&v));
                }
            }
            for v in space.basis() {
                basis.push(v.clone());
                grades.push(r.clone());
            }
        }
        let dim = basis.len();
        if dim * gamma.order() != alg.dim {
            return Err(EmaError::Certification(format!(
                "invariant dimension {dim} times |Γ| = {} differs from {}",
                gamma.order(),
                alg.dim
            )));
        }
        let frame = Frame::new(alg.dim, basis)
            .ok_or_else(|| EmaError::Certification("isotypic bases are dependent".into()))?;
        let mut brackets = vec![vec![Vec::new(); dim]; dim];
        for i in 0..dim {
            for j in (i + 1)..dim {
                let w = alg.bracket(&frame.basis()[i], &frame.basis()[j]);
                let c = frame.try_coordinates(&w).ok_or_else(|| {
                    EmaError::Certification("invariants are not closed under the bracket".into())
                })?;
                let sv: SparseVec =
                    c.into_iter().enumerate().filter(|(_, x)| !x.is_zero()).collect();
                brackets[j][i] = sv.iter().map(|(k, x)| (*k, -x)).collect();
                brackets[i][j] = sv;
            }
        }
        let labels = (0..dim).map(|i| format!("X{i}[{}]", fmt_grade(&grades[i]))).collect();
        Ok(InvariantAlgebra { orbit, dim, frame, grades, brackets, labels })
    }

    pub fn gamma(&self) -> &Arc<GammaGroup> {
        &self.orbit.gamma
    }

    pub fn g(&self) -> &Arc<ChevalleyAlgebra> {
        &self.orbit.alg.g
    }

    pub fn key(&self) -> String {
        format!("I{}", self.orbit.alg.key())
    }

    pub fn basis_vector(&self, i: usize) -> &SparseVec {
        &self.frame.basis()[i]
    }

    /// Coordinates of an invariant element of the orbit truncation.
    pub fn coordinates(&self, v: &SparseVec) -> Option<Vec<F>> {
        self.frame.try_coordinates(v)
    }

    pub fn bracket(&self, x: &SparseVec, y: &SparseVec) -> SparseVec {
        let mut acc = Accumulator::new();
        for (i, a) in x {
            for (j, b) in y {
                acc.add_scaled(&self.brackets[*i][*j], &(a * b));
            }
        }
        acc.finish()
    }

    /// Matrix of the projection onto the invariants of a smaller truncation
    /// (`other.dim × self.dim`); `None` if `other` is not a quotient of `self`.
    pub fn projection_to(&self, other: &InvariantAlgebra) -> Option<Matrix> {
        let p = self.orbit.alg.projection_to(&other.orbit.alg);
        let mut cols = Vec::with_capacity(self.dim);
        for i in 0..self.dim {
            let v = sparse_to_dense(self.basis_vector(i), self.orbit.alg.dim);
            let w = sparse_from_dense(&p.mul_vec(&v));
            cols.push(other.coordinates(&w)?);
        }
        Some(Matrix::from_columns(other.dim, &cols))
    }

    /// Every basis element is homogeneous and brackets add grades.
    pub fn check_grading(&self) -> bool {
        let gamma = self.gamma();
        let alg = &self.orbit.alg;
        let dg = alg.g.dim;
        for (i, r) in self.grades.iter().enumerate() {
            for a in 0..gamma.order() {
                // (σ_γ ⊗ 1) v = χ_r(γ) v
                let sigma = &gamma.elements[a].sigma;
                let chi = gamma.character_value(r, a);
                let mut acc = Accumulator::new();
                for (idx, c) in self.basis_vector(i) {
                    let (b, q) = (idx % dg, idx / dg);
                    for row in 0..dg {
                        if !sigma[(row, b)].is_zero() {
                            acc.add(q * dg + row, &sigma[(row, b)] * c);
                        }
                    }
                }
                let scaled: SparseVec = self.basis_vector(i).iter().map(|(k, x)| (*k, x * &chi)).collect();
                if acc.finish() != scaled {
                    return false;
                }
            }
        }
        for i in 0..self.dim {
            for j in 0..self.dim {
                let want = gamma.character_add(&self.grades[i], &self.grades[j]);
                if self.brackets[i][j].iter().any(|(k, _)| self.grades[*k] != want) {
                    return false;
                }
            }
        }
        true
    }

    /// Per character r: (dim of the r-part, dim g_r, dim B_{−r}).
    pub fn grading_dimensions(&self) -> Vec<(Vec<i64>, usize, usize, usize)> {
        let gamma = self.gamma();
        let g = self.g();
        let quot = &self.orbit.alg.quot;
        let inv_order = F::rat(1, gamma.order() as i64);
        let gb: Vec<_> = (0..gamma.order()).map(|a| quot.gamma_matrix(gamma, a).expect("orbit-stable")).collect();
        let mut out = Vec::new();
        for r in gamma.characters() {
            let here = self.grades.iter().filter(|s| **s == r).count();
            let proj = g_isotypic(g, gamma, &r);
            let dim_g = Subspace::from_sparse(g.dim, proj).dim();
            // B_{−r}: γ b = χ_r(γ)^{-1} b
            let mut space = Subspace::zero(quot.dim);
            for q in 0..quot.dim {
                let mut acc = Accumulator::new();
                for (a, m) in gb.iter().enumerate() {
                    let w = &gamma.character_value(&r, a) * &inv_order;
                    acc.add_scaled(&m.columns[q], &w);
                }
                space.insert(&acc.finish());
            }
            out.push((r, here, dim_g, space.dim()));
        }
        out
    }
}

pub fn fmt_grade(r: &[i64]) -> String {
    r.iter().map(|x| x.to_string()).collect::<Vec<_>>().join(",")
}
