//! Truncated map algebras g ⊗ A/I_η and their Γ-equivariant versions.

use std::sync::Arc;

use crate::error::Result;
use crate::foundations::sparse::{Accumulator, SparseVec};
use crate::foundations::{FieldElement as F, Matrix, SparseMatrix};
use crate::coordalg::{EtaFunction, Point, QuotientAlgebra};
use crate::liealg::{ChevalleyAlgebra, GammaGroup};

/// g ⊗ A/I_η with basis index `q * dim g + a` for x_a ⊗ (jet monomial q).
#[derive(Clone, Debug)]
pub struct TruncatedAlgebra {
    pub g: Arc<ChevalleyAlgebra>,
    pub quot: QuotientAlgebra,
    pub dim: usize,
    pub brackets: Vec<Vec<SparseVec>>,
    pub labels: Vec<String>,
}

impl TruncatedAlgebra {
    pub fn new(g: Arc<ChevalleyAlgebra>, nvars: usize, eta: &EtaFunction) -> Self {
        let quot = QuotientAlgebra::new(nvars, eta);
        let dg = g.dim;
        let dim = dg * quot.dim;
        let mut labels = Vec::with_capacity(dim);
        for q in 0..quot.dim {
            for a in 0..dg {
                labels.push(format!("{}⊗{}", g.labels[a], quot.label(q)));
            }
        }
        let mut brackets = vec![vec![Vec::new(); dim]; dim];
        for q in 0..quot.dim {
            for r in 0..quot.dim {
                let Some(qr) = quot.mul_basis(q, r) else { continue };
                for a in 0..dg {
                    for b in 0..dg {
                        brackets[q * dg + a][r * dg + b] =
                            g.brackets[a][b].iter().map(|(c, x)| (qr * dg + c, x.clone())).collect();
                    }
                }
            }
        }
        TruncatedAlgebra { g, quot, dim, brackets, labels }
    }

    pub fn index(&self, a: usize, q: usize) -> usize {
        q * self.g.dim + a
    }

    /// (g basis index, quotient basis index).
    pub fn split(&self, i: usize) -> (usize, usize) {
        (i % self.g.dim, i / self.g.dim)
    }

    pub fn eta(&self) -> EtaFunction {
        self.quot.eta()
    }

    pub fn key(&self) -> String {
        let parts: Vec<String> =
            self.quot.points.iter().zip(&self.quot.exps).map(|(p, e)| format!("{p}^{e}")).collect();
        format!("T[{}|{}]", self.g.labels.len(), parts.join(","))
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

    /// Jacobi identity on every triple of basis elements whose jet product
    /// is nonzero, sampled by stride to keep the check cheap.
    pub fn check_jacobi(&self, stride: usize) -> bool {
        let stride = stride.max(1);
        for a in (0..self.dim).step_by(stride) {
            for b in (0..self.dim).step_by(stride) {
                for c in 0..self.dim {
                    let ea = vec![(a, F::one())];
                    let eb = vec![(b, F::one())];
                    let ec = vec![(c, F::one())];
                    let mut acc = Accumulator::new();
                    acc.add_scaled(&self.bracket(&ea, &self.bracket(&eb, &ec)), &F::one());
                    acc.add_scaled(&self.bracket(&eb, &self.bracket(&ec, &ea)), &F::one());
                    acc.add_scaled(&self.bracket(&ec, &self.bracket(&ea, &eb)), &F::one());
                    if !acc.finish().is_empty() {
                        return false;
                    }
                }
            }
        }
        true
    }

    /// Basis indices x_a ⊗ u_p^β with β of degree at least `min_degree(p)`.
    pub fn filtered_basis(&self, min_degree: impl Fn(usize) -> u32) -> Vec<usize> {
        (0..self.dim)
            .filter(|&i| {
                let (_, q) = self.split(i);
                let (p, _) = self.quot.locate(q);
                self.quot.degree(q) >= min_degree(p)
            })
            .collect()
    }

    /// The projection onto a smaller truncation (support ⊆, exponents ≤),
    /// as a `target.dim × self.dim` matrix.
    pub fn projection_to(&self, target: &TruncatedAlgebra) -> Matrix {
        let mut m = Matrix::zeros(target.dim, self.dim);
        for i in 0..self.dim {
            let (a, q) = self.split(i);
            let (p, _) = self.quot.locate(q);
            let Some(tp) = target.quot.point_index(&self.quot.points[p]) else { continue };
            if let Some(tq) = target.quot.index(tp, self.quot.monomial(q)) {
                m[(target.index(a, tq), i)] = F::one();
            }
        }
        m
    }
}

/// The truncation over an orbit-saturated exponent function with its Γ-action.
#[derive(Clone, Debug)]
pub struct OrbitTruncation {
    pub alg: Arc<TruncatedAlgebra>,
    pub gamma: Arc<GammaGroup>,
    /// Action matrix of each group element, in element order.
    pub action: Vec<SparseMatrix>,
    /// Orbits of support points, each listed in group element order from its
    /// canonical (smallest) representative.
    pub orbits: Vec<Vec<Point>>,
}

impl OrbitTruncation {
    /// `eta` must already be orbit-saturated.
    pub fn new(g: Arc<ChevalleyAlgebra>, gamma: Arc<GammaGroup>, nvars: usize, eta: &EtaFunction) -> Result<Self> {
        let alg = Arc::new(TruncatedAlgebra::new(g.clone(), nvars, eta));
        let dg = g.dim;
        let mut action = Vec::with_capacity(gamma.order());
        for a in 0..gamma.order() {
            let gb = alg.quot.gamma_matrix(&gamma, a)?;
            let sigma = &gamma.elements[a].sigma;
            let mut m = SparseMatrix::zeros(alg.dim, alg.dim);
            for q in 0..alg.quot.dim {
                let (q2, c) = gb.columns[q][0].clone();
                for b in 0..dg {
                    let col: SparseVec = (0..dg)
                        .filter(|&r| !sigma[(r, b)].is_zero())
                        .map(|r| (q2 * dg + r, &sigma[(r, b)] * &c))
                        .collect();
                    m.columns[q * dg + b] = col;
                }
            }
            action.push(m);
        }
        let mut orbits: Vec<Vec<Point>> = Vec::new();
        for p in &alg.quot.points {
            if orbits.iter().any(|o| o.contains(p)) {
                continue;
            }
            let rep = p.orbit_representative(&gamma);
            orbits.push(rep.orbit(&gamma));
        }
        orbits.sort_by(|a, b| a[0].cmp(&b[0]));
        Ok(OrbitTruncation { alg, gamma, action, orbits })
    }

    /// Averaging projector |Γ|^{-1} Σ_γ γ as a dense matrix.
    pub fn averaging(&self) -> Matrix {
        let mut p = Matrix::zeros(self.alg.dim, self.alg.dim);
        for m in &self.action {
            p = p.add(&m.to_dense());
        }
        p.scale(&F::rat(1, self.gamma.order() as i64))
    }

    pub fn check_action_preserves_brackets(&self) -> bool {
        for m in &self.action {
            for i in 0..self.alg.dim {
                for j in 0..self.alg.dim {
                    let lhs = m.apply(&self.alg.brackets[i][j]);
                    let rhs = self.alg.bracket(&m.columns[i], &m.columns[j]);
                    if lhs != rhs {
                        return false;
                    }
                }
            }
        }
        true
    }
}
