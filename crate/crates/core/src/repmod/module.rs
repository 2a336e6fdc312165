//! Finite-dimensional modules given by action matrices.

use std::sync::Arc;

use crate::ema::{InvariantAlgebra, TruncatedAlgebra};
use crate::error::{EmaError, Result};
use crate::foundations::sparse::{sparse_from_dense, sparse_to_dense, SparseMatrix, SparseVec};
use crate::foundations::{FieldElement as F, Matrix, Subspace};
use crate::liealg::ChevalleyAlgebra;

/// A Lie algebra given by structure constants on a basis.
pub trait LieStructure {
    fn dimension(&self) -> usize;
    fn bracket_of_basis(&self, i: usize, j: usize) -> &SparseVec;
}

impl LieStructure for TruncatedAlgebra {
    fn dimension(&self) -> usize {
        self.dim
    }
    fn bracket_of_basis(&self, i: usize, j: usize) -> &SparseVec {
        &self.brackets[i][j]
    }
}

impl LieStructure for InvariantAlgebra {
    fn dimension(&self) -> usize {
        self.dim
    }
    fn bracket_of_basis(&self, i: usize, j: usize) -> &SparseVec {
        &self.brackets[i][j]
    }
}

impl LieStructure for ChevalleyAlgebra {
    fn dimension(&self) -> usize {
        self.dim
    }
    fn bracket_of_basis(&self, i: usize, j: usize) -> &SparseVec {
        &self.brackets[i][j]
    }
}

/// Structure constants given directly.
#[derive(Clone, Debug)]
pub struct StructureConstants {
    pub dim: usize,
    pub brackets: Vec<Vec<SparseVec>>,
}

impl StructureConstants {
    pub fn abelian(dim: usize) -> Self {
        StructureConstants { dim, brackets: vec![vec![Vec::new(); dim]; dim] }
    }
}

impl LieStructure for StructureConstants {
    fn dimension(&self) -> usize {
        self.dim
    }
    fn bracket_of_basis(&self, i: usize, j: usize) -> &SparseVec {
        &self.brackets[i][j]
    }
}

/// The algebra a module is defined over.
#[derive(Clone, Debug)]
pub enum AlgebraRef {
    Truncated(Arc<TruncatedAlgebra>),
    Invariant(Arc<InvariantAlgebra>),
}

impl AlgebraRef {
    pub fn dim(&self) -> usize {
        match self {
            AlgebraRef::Truncated(t) => t.dim,
            AlgebraRef::Invariant(i) => i.dim,
        }
    }

    pub fn key(&self) -> String {
        match self {
            AlgebraRef::Truncated(t) => t.key(),
            AlgebraRef::Invariant(i) => i.key(),
        }
    }

    pub fn labels(&self) -> &[String] {
        match self {
            AlgebraRef::Truncated(t) => &t.labels,
            AlgebraRef::Invariant(i) => &i.labels,
        }
    }

    pub fn g(&self) -> &Arc<ChevalleyAlgebra> {
        match self {
            AlgebraRef::Truncated(t) => &t.g,
            AlgebraRef::Invariant(i) => i.g(),
        }
    }

    pub fn is_invariant(&self) -> bool {
        matches!(self, AlgebraRef::Invariant(_))
    }

    pub fn same_as(&self, other: &AlgebraRef) -> bool {
        self.key() == other.key()
    }
}

impl LieStructure for AlgebraRef {
    fn dimension(&self) -> usize {
        self.dim()
    }
    fn bracket_of_basis(&self, i: usize, j: usize) -> &SparseVec {
        match self {
            AlgebraRef::Truncated(t) => &t.brackets[i][j],
            AlgebraRef::Invariant(a) => &a.brackets[i][j],
        }
    }
}

#[derive(Clone, Debug)]
pub struct FiniteModule {
    pub algebra: AlgebraRef,
    pub dim: usize,
    /// One matrix per algebra basis element.
    pub actions: Vec<Matrix>,
}

impl FiniteModule {
    pub fn new(algebra: AlgebraRef, dim: usize, actions: Vec<Matrix>) -> Result<Self> {
        if actions.len() != algebra.dim() || actions.iter().any(|m| m.rows != dim || m.cols != dim) {
            return Err(EmaError::Input("action matrices do not match the algebra and dimension".into()));
        }
        Ok(FiniteModule { algebra, dim, actions })
    }

    /// The zero action on a space of dimension `dim`.
    pub fn trivial(algebra: AlgebraRef, dim: usize) -> Self {
        let actions = vec![Matrix::zeros(dim, dim); algebra.dim()];
        FiniteModule { algebra, dim, actions }
    }

    /// ρ of an algebra element given in basis coordinates.
    pub fn act(&self, x: &SparseVec) -> Matrix {
        let mut m = Matrix::zeros(self.dim, self.dim);
        for (i, c) in x {
            m.add_scaled(c, &self.actions[*i]);
        }
        m
    }

    /// ρ([u,v]) = [ρ(u), ρ(v)] on all basis pairs.
    pub fn check_representation(&self) -> bool {
        let n = self.algebra.dim();
        for i in 0..n {
            for j in (i + 1)..n {
                let lhs = self.act(self.algebra.bracket_of_basis(i, j));
                if lhs != self.actions[i].commutator(&self.actions[j]) {
                    return false;
                }
            }
        }
        true
    }

    pub fn require_same_algebra(&self, other: &FiniteModule) -> Result<()> {
        if !self.algebra.same_as(&other.algebra) {
            return Err(EmaError::AlgebraMismatch(format!(
                "{} versus {}",
                self.algebra.key(),
                other.algebra.key()
            )));
        }
        Ok(())
    }

    pub fn direct_sum(&self, other: &FiniteModule) -> Result<FiniteModule> {
        self.require_same_algebra(other)?;
        let actions = self.actions.iter().zip(&other.actions).map(|(a, b)| a.direct_sum(b)).collect();
        Ok(FiniteModule { algebra: self.algebra.clone(), dim: self.dim + other.dim, actions })
    }

    /// u ↦ u ⊗ 1 + 1 ⊗ u.
    pub fn tensor(&self, other: &FiniteModule) -> Result<FiniteModule> {
        self.require_same_algebra(other)?;
        let ia = Matrix::identity(self.dim);
        let ib = Matrix::identity(other.dim);
        let actions =
            self.actions.iter().zip(&other.actions).map(|(a, b)| a.kron(&ib).add(&ia.kron(b))).collect();
        Ok(FiniteModule { algebra: self.algebra.clone(), dim: self.dim * other.dim, actions })
    }

    /// Pullback along a homomorphism φ from `target` into this module's
    /// algebra, given as a `self.algebra.dim × target.dim` matrix.
    pub fn pullback(&self, target: AlgebraRef, phi: &Matrix) -> Result<FiniteModule> {
        if phi.rows != self.algebra.dim() || phi.cols != target.dim() {
            return Err(EmaError::AlgebraMismatch("pullback matrix has the wrong shape".into()));
        }
        let actions = (0..target.dim())
            .map(|b| self.act(&sparse_from_dense(&phi.column(b))))
            .collect();
        Ok(FiniteModule { algebra: target, dim: self.dim, actions })
    }

    pub fn sparse_actions(&self) -> Vec<SparseMatrix> {
        self.actions.iter().map(SparseMatrix::from_dense).collect()
    }

    /// The submodule generated by the given vectors.
    pub fn generated(&self, vectors: &[Vec<F>]) -> Subspace {
        Subspace::from_dense(self.dim, vectors).saturate(&self.sparse_actions())
    }

    pub fn is_submodule(&self, s: &Subspace) -> bool {
        let ops = self.sparse_actions();
        s.basis().iter().all(|v| ops.iter().all(|op| s.contains(&op.apply(v))))
    }

    /// M / S for a submodule S, on the coordinates that are not pivots of S.
    pub fn quotient(&self, s: &Subspace) -> FiniteModule {
        let pivots = s.pivots();
        let keep: Vec<usize> = (0..self.dim).filter(|i| !pivots.contains(i)).collect();
        let pos: std::collections::HashMap<usize, usize> = keep.iter().enumerate().map(|(k, &i)| (i, k)).collect();
        let ops = self.sparse_actions();
        let actions = ops
            .iter()
            .map(|op| {
                let mut m = Matrix::zeros(keep.len(), keep.len());
                for (k, &i) in keep.iter().enumerate() {
                    for (j, c) in s.reduce(&op.columns[i]) {
                        m[(pos[&j], k)] = c;
                    }
                }
                m
            })
            .collect();
        FiniteModule { algebra: self.algebra.clone(), dim: keep.len(), actions }
    }

    /// The restriction to a submodule, in the RREF basis of S.
    pub fn restrict(&self, s: &Subspace) -> FiniteModule {
        let ops = self.sparse_actions();
        let actions = ops
            .iter()
            .map(|op| {
                let cols: Vec<Vec<F>> = s.basis().iter().map(|v| s.coordinates(&op.apply(v))).collect();
                Matrix::from_columns(s.dim(), &cols)
            })
            .collect();
        FiniteModule { algebra: self.algebra.clone(), dim: s.dim(), actions }
    }

    /// Whether the submodule generated by `v` is everything.
    pub fn is_generated_by(&self, v: &[F]) -> bool {
        self.generated(&[v.to_vec()]).dim() == self.dim
    }

    pub fn column(&self, x: usize, v: &[F]) -> Vec<F> {
        self.actions[x].mul_vec(v)
    }
}

/// Dense vector from sparse, convenience for callers in this crate.
pub fn dense(v: &SparseVec, n: usize) -> Vec<F> {
    sparse_to_dense(v, n)
}
