//! Sparse vectors and column-sparse matrices over the field.

use super::field::FieldElement as F;
use super::matrix::Matrix;

/// Sorted `(index, nonzero value)` pairs.
pub type SparseVec = Vec<(usize, F)>;

pub fn sparse_from_dense(v: &[F]) -> SparseVec {
    v.iter()
        .enumerate()
        .filter(|(_, x)| !x.is_zero())
        .map(|(i, x)| (i, x.clone()))
        .collect()
}

pub fn sparse_to_dense(v: &SparseVec, n: usize) -> Vec<F> {
    let mut out = vec![F::zero(); n];
    for (i, x) in v {
        out[*i] = x.clone();
    }
    out
}

/// `a + c * b`.
pub fn axpy(a: &SparseVec, c: &F, b: &SparseVec) -> SparseVec {
    if c.is_zero() {
        return a.clone();
    }
    let mut out = Vec::with_capacity(a.len() + b.len());
    let (mut i, mut j) = (0, 0);
    while i < a.len() || j < b.len() {
        let ia = a.get(i).map(|p| p.0).unwrap_or(usize::MAX);
        let ib = b.get(j).map(|p| p.0).unwrap_or(usize::MAX);
        if ia < ib {
            out.push(a[i].clone());
            i += 1;
        } else if ib < ia {
            out.push((ib, c * &b[j].1));
            j += 1;
        } else {
            let v = &a[i].1 + &(c * &b[j].1);
            if !v.is_zero() {
                out.push((ia, v));
            }
            i += 1;
            j += 1;
        }
    }
    out
}

pub fn scale(v: &SparseVec, c: &F) -> SparseVec {
    if c.is_zero() {
        return Vec::new();
    }
    v.iter().map(|(i, x)| (*i, x * c)).collect()
}

pub fn get(v: &SparseVec, idx: usize) -> Option<&F> {
    v.binary_search_by_key(&idx, |p| p.0).ok().map(|k| &v[k].1)
}

/// Accumulates scattered contributions and emits a sorted sparse vector.
#[derive(Default)]
pub struct Accumulator {
    entries: std::collections::BTreeMap<usize, F>,
}

impl Accumulator {
    pub fn new() -> Self {
        Self::default()
    }

    pub fn add(&mut self, idx: usize, c: F) {
        if c.is_zero() {
            return;
        }
        let slot = self.entries.entry(idx).or_insert_with(F::zero);
        *slot = &*slot + &c;
    }

    pub fn add_scaled(&mut self, v: &SparseVec, c: &F) {
        for (i, x) in v {
            self.add(*i, c * x);
        }
    }

    pub fn finish(self) -> SparseVec {
        self.entries.into_iter().filter(|(_, x)| !x.is_zero()).collect()
    }
}

/// A matrix stored by sparse columns.
#[derive(Clone, Debug, PartialEq)]
pub struct SparseMatrix {
    pub rows: usize,
    pub cols: usize,
    pub columns: Vec<SparseVec>,
}

impl SparseMatrix {
    pub fn zeros(rows: usize, cols: usize) -> Self {
        SparseMatrix { rows, cols, columns: vec![Vec::new(); cols] }
    }

    pub fn from_dense(m: &Matrix) -> Self {
        let columns = (0..m.cols)
            .map(|j| {
                (0..m.rows)
                    .filter(|&i| !m[(i, j)].is_zero())
                    .map(|i| (i, m[(i, j)].clone()))
                    .collect()
            })
            .collect();
        SparseMatrix { rows: m.rows, cols: m.cols, columns }
    }

    pub fn to_dense(&self) -> Matrix {
        let mut m = Matrix::zeros(self.rows, self.cols);
        for (j, col) in self.columns.iter().enumerate() {
            for (i, x) in col {
                m[(*i, j)] = x.clone();
            }
        }
        m
    }

    pub fn apply(&self, v: &SparseVec) -> SparseVec {
        let mut acc = Accumulator::new();
        for (j, c) in v {
            acc.add_scaled(&self.columns[*j], c);
        }
        acc.finish()
    }

    pub fn is_zero(&self) -> bool {
        self.columns.iter().all(|c| c.is_empty())
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn axpy_cancels() {
        let a = vec![(0, F::int(1)), (3, F::int(2))];
        let b = vec![(3, F::int(1)), (5, F::int(1))];
        let r = axpy(&a, &F::int(-2), &b);
        assert_eq!(r, vec![(0, F::int(1)), (5, F::int(-2))]);
    }

    #[test]
    fn dense_round_trip() {
        let m = Matrix::from_rows(vec![vec![F::int(1), F::zero()], vec![F::int(3), F::int(4)]]);
        let s = SparseMatrix::from_dense(&m);
        assert_eq!(s.to_dense(), m);
        assert_eq!(s.apply(&vec![(1, F::one())]), vec![(1, F::int(4))]);
    }
}
