//! sl_{n+1} in its matrix realization with a Chevalley basis.
//!
//! Basis order: e_β for positive roots β (ordered as in [`RootDatum`]), then
//! h_1..h_n, then f_β in the same root order. For β = α_i + ... + α_j
//! (0-based nodes i..=j) the realization is e_β = E_{i,j+1}, f_β = E_{j+1,i},
//! and h_i = E_{ii} − E_{i+1,i+1}.

use crate::error::Result;
use crate::foundations::sparse::{Accumulator, SparseVec};
use crate::foundations::{FieldElement as F, Matrix};
use crate::rootdata::{RootDatum, Weight};

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum BasisKind {
    E(usize),
    H(usize),
    F(usize),
}

#[derive(Clone, Debug)]
pub struct ChevalleyAlgebra {
    pub datum: RootDatum,
    pub dim: usize,
    /// (n+1)×(n+1) matrices of the basis.
    pub matrices: Vec<Matrix>,
    /// `brackets[a][b]` is [x_a, x_b] in basis coordinates.
    pub brackets: Vec<Vec<SparseVec>>,
    pub labels: Vec<String>,
}

impl ChevalleyAlgebra {
    /// sl_{n+1} for 2 <= n+1 <= 4.
    pub fn build_sl(n_plus_1: usize) -> Result<Self> {
        let datum = RootDatum::type_a(n_plus_1.saturating_sub(1))
            .map_err(|_| crate::EmaError::RankOutOfRange(n_plus_1))?;
        let n = datum.n;
        let size = n + 1;
        let p = datum.positive_roots.len();
        let mut matrices = Vec::with_capacity(2 * p + n);
        let mut labels = Vec::with_capacity(2 * p + n);
        let name = |k: usize| {
            let (i, j) = datum.root_span(k);
            (i..=j).map(|t| (t + 1).to_string()).collect::<String>()
        };
        for k in 0..p {
            let (i, j) = datum.root_span(k);
            let mut m = Matrix::zeros(size, size);
            m[(i, j + 1)] = F::one();
            matrices.push(m);
            labels.push(format!("e{}", name(k)));
        }
        for i in 0..n {
            let mut m = Matrix::zeros(size, size);
            m[(i, i)] = F::one();
            m[(i + 1, i + 1)] = F::int(-1);
            matrices.push(m);
            labels.push(format!("h{}", i + 1));
        }
        for k in 0..p {
            let (i, j) = datum.root_span(k);
            let mut m = Matrix::zeros(size, size);
            m[(j + 1, i)] = F::one();
            matrices.push(m);
            labels.push(format!("f{}", name(k)));
        }
        let dim = matrices.len();
        let mut g = ChevalleyAlgebra { datum, dim, matrices, brackets: Vec::new(), labels };
        let brackets = (0..dim)
            .map(|a| {
                (0..dim)
                    .map(|b| g.decompose(&g.matrices[a].commutator(&g.matrices[b])))
                    .collect()
            })
            .collect();
        g.brackets = brackets;
        Ok(g)
    }

    pub fn rank(&self) -> usize {
        self.datum.n
    }

    pub fn num_positive(&self) -> usize {
        self.datum.positive_roots.len()
    }

    pub fn e(&self, k: usize) -> usize {
        k
    }

    pub fn h(&self, i: usize) -> usize {
        self.num_positive() + i
    }

    pub fn f(&self, k: usize) -> usize {
        self.num_positive() + self.rank() + k
    }

    pub fn kind(&self, idx: usize) -> BasisKind {
        let p = self.num_positive();
        let n = self.rank();
        if idx < p {
            BasisKind::E(idx)
        } else if idx < p + n {
            BasisKind::H(idx - p)
        } else {
            BasisKind::F(idx - p - n)
        }
    }

    /// The weight of a basis element under the adjoint action of h.
    pub fn basis_weight(&self, idx: usize) -> Weight {
        match self.kind(idx) {
            BasisKind::E(k) => self.datum.root_to_weight(&self.datum.positive_roots[k]),
            BasisKind::H(_) => Weight::zero(self.rank()),
            BasisKind::F(k) => self.datum.root_to_weight(&self.datum.positive_roots[k]).neg(),
        }
    }

    /// Root-lattice coordinates (simple-root basis) of the basis element's weight.
    pub fn basis_root(&self, idx: usize) -> Vec<i64> {
        match self.kind(idx) {
            BasisKind::E(k) => self.datum.positive_roots[k].clone(),
            BasisKind::H(_) => vec![0; self.rank()],
            BasisKind::F(k) => self.datum.positive_roots[k].iter().map(|c| -c).collect(),
        }
    }

    /// Coordinates of a traceless matrix in the Chevalley basis.
    pub fn decompose(&self, x: &Matrix) -> SparseVec {
        let n = self.rank();
        let mut acc = Accumulator::new();
        for k in 0..self.num_positive() {
            let (i, j) = self.datum.root_span(k);
            acc.add(self.e(k), x[(i, j + 1)].clone());
            acc.add(self.f(k), x[(j + 1, i)].clone());
        }
        let mut run = F::zero();
        for i in 0..n {
            run = &run + &x[(i, i)];
            acc.add(self.h(i), run.clone());
        }
        acc.finish()
    }

    /// Matrix of a basis-coordinate vector.
    pub fn to_matrix(&self, v: &SparseVec) -> Matrix {
        let size = self.rank() + 1;
        let mut m = Matrix::zeros(size, size);
        for (i, c) in v {
            m.add_scaled(c, &self.matrices[*i]);
        }
        m
    }

    /// Bracket of coordinate vectors.
    pub fn bracket(&self, x: &SparseVec, y: &SparseVec) -> SparseVec {
        let mut acc = Accumulator::new();
        for (a, ca) in x {
            for (b, cb) in y {
                acc.add_scaled(&self.brackets[*a][*b], &(ca * cb));
            }
        }
        acc.finish()
    }

    /// Matrix of ad(x_a) in the basis.
    pub fn ad(&self, a: usize) -> Matrix {
        let mut m = Matrix::zeros(self.dim, self.dim);
        for b in 0..self.dim {
            for (i, c) in &self.brackets[a][b] {
                m[(*i, b)] = c.clone();
            }
        }
        m
    }

    pub fn check_jacobi(&self) -> bool {
        for a in 0..self.dim {
            for b in 0..self.dim {
                for c in 0..self.dim {
                    let x = vec![(a, F::one())];
                    let y = vec![(b, F::one())];
                    let z = vec![(c, F::one())];
                    let t1 = self.bracket(&x, &self.bracket(&y, &z));
                    let t2 = self.bracket(&y, &self.bracket(&z, &x));
                    let t3 = self.bracket(&z, &self.bracket(&x, &y));
                    let mut acc = Accumulator::new();
                    acc.add_scaled(&t1, &F::one());
                    acc.add_scaled(&t2, &F::one());
                    acc.add_scaled(&t3, &F::one());
                    if !acc.finish().is_empty() {
                        return false;
                    }
                }
            }
        }
        true
    }

    /// Index of the positive root with node span `[i, j]`.
    pub fn root_index(&self, i: usize, j: usize) -> usize {
        (0..self.num_positive())
            .find(|&k| self.datum.root_span(k) == (i, j))
            .expect("valid root span")
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn dimensions() {
        assert_eq!(ChevalleyAlgebra::build_sl(2).unwrap().dim, 3);
        assert_eq!(ChevalleyAlgebra::build_sl(3).unwrap().dim, 8);
        assert_eq!(ChevalleyAlgebra::build_sl(4).unwrap().dim, 15);
        assert!(ChevalleyAlgebra::build_sl(5).is_err());
        assert!(ChevalleyAlgebra::build_sl(1).is_err());
    }

    #[test]
    fn chevalley_relations() {
        for size in 2..=4 {
            let g = ChevalleyAlgebra::build_sl(size).unwrap();
            let n = g.rank();
            for i in 0..n {
                assert_eq!(g.brackets[g.e(i)][g.f(i)], vec![(g.h(i), F::one())]);
                for j in 0..n {
                    let a = g.datum.cartan[i][j];
                    let expect = if a == 0 { vec![] } else { vec![(g.e(j), F::int(a))] };
                    // [h_i, e_j] = a_{ji} e_j; the A_n Cartan matrix is symmetric
                    assert_eq!(g.brackets[g.h(i)][g.e(j)], expect);
                }
            }
            assert!(g.check_jacobi());
        }
    }

    #[test]
    fn sl3_theta_bracket() {
        let g = ChevalleyAlgebra::build_sl(3).unwrap();
        let theta = g.root_index(0, 1);
        assert_eq!(g.brackets[g.e(0)][g.e(1)], vec![(g.e(theta), F::one())]);
    }
}
