//! Subspaces of F^n kept in reduced row echelon form.

use std::collections::VecDeque;

use super::field::FieldElement as F;
use super::matrix::Matrix;
use super::sparse::{axpy, get, scale, sparse_from_dense, sparse_to_dense, SparseMatrix, SparseVec};

#[derive(Clone, Debug)]
pub struct Subspace {
    ambient: usize,
    /// Rows in RREF, sorted by pivot; each pivot entry is 1.
    rows: Vec<SparseVec>,
}

impl Subspace {
    pub fn zero(ambient: usize) -> Self {
        Subspace { ambient, rows: Vec::new() }
    }

    pub fn full(ambient: usize) -> Self {
        let rows = (0..ambient).map(|i| vec![(i, F::one())]).collect();
        Subspace { ambient, rows }
    }

    pub fn from_sparse<I: IntoIterator<Item = SparseVec>>(ambient: usize, vs: I) -> Self {
        let mut s = Subspace::zero(ambient);
        for v in vs {
            s.insert(&v);
        }
        s
    }

    pub fn from_dense<'a, I: IntoIterator<Item = &'a Vec<F>>>(ambient: usize, vs: I) -> Self {
        Self::from_sparse(ambient, vs.into_iter().map(|v| sparse_from_dense(v)))
    }

    pub fn ambient(&self) -> usize {
        self.ambient
    }

    pub fn dim(&self) -> usize {
        self.rows.len()
    }

    pub fn basis(&self) -> &[SparseVec] {
        &self.rows
    }

    pub fn dense_basis(&self) -> Vec<Vec<F>> {
        self.rows.iter().map(|r| sparse_to_dense(r, self.ambient)).collect()
    }

    /// Basis rows as the rows of a matrix.
    pub fn to_matrix(&self) -> Matrix {
        Matrix::from_rows(self.dense_basis()).with_cols(self.ambient)
    }

    pub fn pivots(&self) -> Vec<usize> {
        self.rows.iter().map(|r| r[0].0).collect()
    }

    /// Residual of `v` after eliminating every pivot coordinate.
    pub fn reduce(&self, v: &SparseVec) -> SparseVec {
        let mut acc = v.clone();
        for row in &self.rows {
            let p = row[0].0;
            if let Some(c) = get(v, p) {
                acc = axpy(&acc, &-c, row);
            }
        }
        acc
    }

    pub fn contains(&self, v: &SparseVec) -> bool {
        self.reduce(v).is_empty()
    }

    pub fn contains_dense(&self, v: &[F]) -> bool {
        self.contains(&sparse_from_dense(v))
    }

    /// Coordinates of `v` in the RREF basis, assuming `v` lies in the span.
    pub fn coordinates(&self, v: &SparseVec) -> Vec<F> {
        self.rows
            .iter()
            .map(|row| get(v, row[0].0).cloned().unwrap_or_else(F::zero))
            .collect()
    }

    /// Adds `v`; returns the new normalized row if the dimension grew.
    pub fn insert(&mut self, v: &SparseVec) -> Option<SparseVec> {
        let r = self.reduce(v);
        if r.is_empty() {
            return None;
        }
        let lead = r[0].1.inv();
        let r = scale(&r, &lead);
        let p = r[0].0;
        for row in self.rows.iter_mut() {
            if let Some(c) = get(row, p).cloned() {
                *row = axpy(row, &-c, &r);
            }
        }
        let at = self.rows.partition_point(|row| row[0].0 < p);
        self.rows.insert(at, r.clone());
        Some(r)
    }

    pub fn contains_subspace(&self, other: &Subspace) -> bool {
        other.rows.iter().all(|r| self.contains(r))
    }

    pub fn sum(&self, other: &Subspace) -> Subspace {
        let mut s = self.clone();
        for r in &other.rows {
            s.insert(r);
        }
        s
    }

    pub fn intersect(&self, other: &Subspace) -> Subspace {
        assert_eq!(self.ambient, other.ambient);
        if self.dim() == 0 || other.dim() == 0 {
            return Subspace::zero(self.ambient);
        }
        // columns a_i and -b_j; kernel vectors give common elements
        let mut cols = self.dense_basis();
        cols.extend(other.dense_basis().into_iter().map(|v| v.iter().map(|x| -x).collect()));
        let m = Matrix::from_columns(self.ambient, &cols);
        let mut out = Subspace::zero(self.ambient);
        let k = self.dim();
        for w in m.nullspace() {
            let mut acc: SparseVec = Vec::new();
            for (i, row) in self.rows.iter().enumerate() {
                acc = axpy(&acc, &w[i], row);
            }
            debug_assert!(w.len() >= k);
            out.insert(&acc);
        }
        out
    }

    /// Basis of the vectors x with r·x = 0 for every row r.
    pub fn orthogonal_kernel(&self) -> Vec<SparseVec> {
        let pivots = self.pivots();
        let mut is_pivot = vec![false; self.ambient];
        for &p in &pivots {
            is_pivot[p] = true;
        }
        (0..self.ambient)
            .filter(|&f| !is_pivot[f])
            .map(|f| {
                let mut v: SparseVec = self
                    .rows
                    .iter()
                    .filter_map(|row| get(row, f).map(|c| (row[0].0, -c)))
                    .collect();
                v.push((f, F::one()));
                v.sort_by_key(|p| p.0);
                v
            })
            .collect()
    }

    /// Image of the subspace under a linear map.
    pub fn image(&self, op: &SparseMatrix) -> Subspace {
        Subspace::from_sparse(op.rows, self.rows.iter().map(|r| op.apply(r)))
    }

    /// Smallest subspace containing `self` and stable under every operator.
    pub fn saturate(&self, ops: &[SparseMatrix]) -> Subspace {
        let mut s = self.clone();
        let mut queue: VecDeque<SparseVec> = self.rows.iter().cloned().collect();
        while let Some(v) = queue.pop_front() {
            for op in ops {
                let w = op.apply(&v);
                if let Some(new) = s.insert(&w) {
                    queue.push_back(new);
                }
            }
        }
        s
    }
}

impl PartialEq for Subspace {
    fn eq(&self, other: &Self) -> bool {
        // RREF is canonical
        self.ambient == other.ambient && self.rows == other.rows
    }
}

/// Coordinates with respect to an arbitrary linearly independent family.
#[derive(Clone, Debug)]
pub struct Frame {
    ambient: usize,
    basis: Vec<SparseVec>,
    /// Ambient coordinates on which the family restricts to an invertible square.
    rows: Vec<usize>,
    solver: Matrix,
}

impl Frame {
    /// `None` when the family is dependent.
    pub fn new(ambient: usize, basis: Vec<SparseVec>) -> Option<Frame> {
        let k = basis.len();
        if k == 0 {
            return Some(Frame { ambient, basis, rows: Vec::new(), solver: Matrix::zeros(0, 0) });
        }
        let m = Matrix::from_rows(basis.iter().map(|v| sparse_to_dense(v, ambient)).collect());
        let (_, pivots) = m.rref();
        if pivots.len() < k {
            return None;
        }
        let square = m.submatrix(&(0..k).collect::<Vec<_>>(), &pivots).transpose();
        let solver = square.inverse()?;
        Some(Frame { ambient, basis, rows: pivots, solver })
    }

    pub fn dim(&self) -> usize {
        self.basis.len()
    }

    pub fn ambient(&self) -> usize {
        self.ambient
    }

    pub fn basis(&self) -> &[SparseVec] {
        &self.basis
    }

    /// Coordinates of `v`, assuming it lies in the span.
    pub fn coordinates(&self, v: &SparseVec) -> Vec<F> {
        let rhs: Vec<F> = self.rows.iter().map(|&r| get(v, r).cloned().unwrap_or_else(F::zero)).collect();
        self.solver.mul_vec(&rhs)
    }

    pub fn combine(&self, coords: &[F]) -> SparseVec {
        let mut acc = super::sparse::Accumulator::new();
        for (c, b) in coords.iter().zip(&self.basis) {
            acc.add_scaled(b, c);
        }
        acc.finish()
    }

    /// Coordinates of `v`, or `None` when it leaves the span.
    pub fn try_coordinates(&self, v: &SparseVec) -> Option<Vec<F>> {
        let c = self.coordinates(v);
        (self.combine(&c) == *v).then_some(c)
    }
}

impl Matrix {
    /// Fixes the column count of an empty matrix built from no rows.
    pub fn with_cols(self, cols: usize) -> Matrix {
        if self.rows == 0 {
            Matrix::zeros(0, cols)
        } else {
            self
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn e(i: usize) -> SparseVec {
        vec![(i, F::one())]
    }

    #[test]
    fn frame_coordinates() {
        let b = vec![vec![(0, F::one()), (1, F::one())], vec![(1, F::one()), (2, F::int(2))]];
        let f = Frame::new(3, b).unwrap();
        let v = vec![(0, F::int(3)), (1, F::int(1)), (2, F::int(-4))];
        assert_eq!(f.try_coordinates(&v), Some(vec![F::int(3), F::int(-2)]));
        assert_eq!(f.try_coordinates(&vec![(0, F::one())]), None);
        assert!(Frame::new(2, vec![vec![(0, F::one())], vec![(0, F::int(2))]]).is_none());
    }

    #[test]
    fn saturate_jordan_block() {
        // e_0 <- e_1 <- e_2 style lowering: e_i -> e_{i+1}
        let mut n = SparseMatrix::zeros(3, 3);
        n.columns[0] = e(1);
        n.columns[1] = e(2);
        let s = Subspace::from_sparse(3, [e(0)]).saturate(&[n.clone()]);
        assert_eq!(s.dim(), 3);
        assert_eq!(Subspace::zero(3).saturate(&[n.clone()]).dim(), 0);
        let again = s.saturate(&[n]);
        assert_eq!(again, s);
    }

    #[test]
    fn intersection_and_equality() {
        let a = Subspace::from_sparse(3, [e(0), e(1)]);
        let b = Subspace::from_sparse(3, [vec![(1, F::one()), (2, F::one())], e(0)]);
        let c = a.intersect(&b);
        assert_eq!(c.dim(), 1);
        assert!(c.contains(&e(0)));
        let a2 = Subspace::from_sparse(3, [vec![(0, F::one()), (1, F::one())], e(1)]);
        assert_eq!(a, a2);
    }

    #[test]
    fn rows_stay_reduced() {
        let mut s = Subspace::zero(3);
        s.insert(&vec![(0, F::int(2)), (1, F::int(4))]);
        s.insert(&vec![(1, F::int(1)), (2, F::int(1))]);
        assert_eq!(s.basis()[0], vec![(0, F::one()), (2, F::int(-2))]);
        assert_eq!(s.coordinates(&vec![(0, F::one()), (1, F::one()), (2, F::int(-1))]), vec![F::one(), F::one()]);
    }
}
