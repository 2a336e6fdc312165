//! Jet rings A/m_x^e via Taylor expansion in u = t − x, and their products
//! A/I_η ≅ ⊕_x A/m_x^{η(x)}.

use std::collections::HashMap;
use std::sync::Arc;

use crate::error::{EmaError, Result};
use crate::foundations::sparse::SparseVec;
use crate::foundations::{FieldElement as F, Rat, SparseMatrix};
use crate::liealg::GammaGroup;

use super::laurent::LaurentFunction;
use super::point::{EtaFunction, Point};

/// Truncated polynomial ring k[u_1..u_n]/(u)^e.
#[derive(Clone, Debug)]
pub struct JetAlgebra {
    pub nvars: usize,
    pub order: u32,
    /// Monomials of total degree < e, by degree then lexicographically descending.
    pub monomials: Vec<Vec<u32>>,
    index: HashMap<Vec<u32>, usize>,
}

fn monomials_of_degree(nvars: usize, d: u32) -> Vec<Vec<u32>> {
    if nvars == 0 {
        return if d == 0 { vec![vec![]] } else { vec![] };
    }
    let mut out = Vec::new();
    for first in (0..=d).rev() {
        for mut rest in monomials_of_degree(nvars - 1, d - first) {
            rest.insert(0, first);
            out.push(rest);
        }
    }
    out
}

impl JetAlgebra {
    pub fn new(nvars: usize, order: u32) -> Self {
        let mut monomials = Vec::new();
        for d in 0..order {
            monomials.extend(monomials_of_degree(nvars, d));
        }
        let index = monomials.iter().cloned().enumerate().map(|(i, m)| (m, i)).collect();
        JetAlgebra { nvars, order, monomials, index }
    }

    pub fn dim(&self) -> usize {
        self.monomials.len()
    }

    pub fn degree(&self, i: usize) -> u32 {
        self.monomials[i].iter().sum()
    }

    pub fn index_of(&self, m: &[u32]) -> Option<usize> {
        self.index.get(m).copied()
    }

    /// Product of basis monomials, `None` when it falls in (u)^e.
    pub fn mul_basis(&self, i: usize, j: usize) -> Option<usize> {
        let m: Vec<u32> = self.monomials[i].iter().zip(&self.monomials[j]).map(|(a, b)| a + b).collect();
        self.index_of(&m)
    }

    pub fn mul(&self, a: &[F], b: &[F]) -> Vec<F> {
        let mut out = vec![F::zero(); self.dim()];
        for (i, x) in a.iter().enumerate() {
            if x.is_zero() {
                continue;
            }
            for (j, y) in b.iter().enumerate() {
                if y.is_zero() {
                    continue;
                }
                if let Some(k) = self.mul_basis(i, j) {
                    out[k] = &out[k] + &(x * y);
                }
            }
        }
        out
    }

    pub fn unit(&self) -> Vec<F> {
        let mut v = vec![F::zero(); self.dim()];
        v[0] = F::one();
        v
    }
}

/// binom(a, k) for integer a (possibly negative).
fn gen_binomial(a: i64, k: u32) -> Rat {
    let mut acc = Rat::ONE;
    for i in 0..k as i64 {
        acc = &acc * &Rat::new(a - i, i + 1);
    }
    acc
}

/// Taylor expansion of f at x, truncated below total degree e.
pub fn jet_expand(f: &LaurentFunction, x: &Point, e: u32) -> Vec<F> {
    let jets = JetAlgebra::new(f.nvars, e);
    jet_expand_in(&jets, f, x)
}

pub fn jet_expand_in(jets: &JetAlgebra, f: &LaurentFunction, x: &Point) -> Vec<F> {
    let n = f.nvars;
    let mut out = vec![F::zero(); jets.dim()];
    for (exps, c) in &f.terms {
        let mut term = jets.unit();
        term[0] = c.clone();
        for i in 0..n {
            // t_i^a = Σ_k binom(a,k) x_i^{a-k} u_i^k
            let mut series = vec![F::zero(); jets.dim()];
            for k in 0..jets.order {
                let mut m = vec![0u32; n];
                m[i] = k;
                let idx = jets.index_of(&m).expect("monomial below the order");
                series[idx] = &F::from(gen_binomial(exps[i], k)) * &x.coords[i].pow(exps[i] - k as i64);
            }
            term = jets.mul(&term, &series);
        }
        for (o, t) in out.iter_mut().zip(&term) {
            *o = &*o + t;
        }
    }
    out
}

/// A/I_η realized as the product of jet rings at the support points.
#[derive(Clone, Debug)]
pub struct QuotientAlgebra {
    pub nvars: usize,
    pub points: Vec<Point>,
    pub exps: Vec<u32>,
    pub jets: Vec<Arc<JetAlgebra>>,
    pub offsets: Vec<usize>,
    pub dim: usize,
}

impl QuotientAlgebra {
    pub fn new(nvars: usize, eta: &EtaFunction) -> Self {
        let mut points = Vec::new();
        let mut exps = Vec::new();
        let mut jets = Vec::new();
        let mut offsets = Vec::new();
        let mut dim = 0;
        for (p, &e) in eta {
            if e == 0 {
                continue;
            }
            let j = Arc::new(JetAlgebra::new(nvars, e));
            offsets.push(dim);
            dim += j.dim();
            points.push(p.clone());
            exps.push(e);
            jets.push(j);
        }
        QuotientAlgebra { nvars, points, exps, jets, offsets, dim }
    }

    pub fn eta(&self) -> EtaFunction {
        self.points.iter().cloned().zip(self.exps.iter().copied()).collect()
    }

    pub fn point_index(&self, p: &Point) -> Option<usize> {
        self.points.iter().position(|q| q == p)
    }

    /// (point index, local monomial index) of basis element `i`.
    pub fn locate(&self, i: usize) -> (usize, usize) {
        let p = self.offsets.partition_point(|&o| o <= i) - 1;
        (p, i - self.offsets[p])
    }

    pub fn degree(&self, i: usize) -> u32 {
        let (p, j) = self.locate(i);
        self.jets[p].degree(j)
    }

    pub fn monomial(&self, i: usize) -> &[u32] {
        let (p, j) = self.locate(i);
        &self.jets[p].monomials[j]
    }

    /// Index of the basis element u_p^m, if m is below the order at p.
    pub fn index(&self, p: usize, m: &[u32]) -> Option<usize> {
        self.jets[p].index_of(m).map(|j| self.offsets[p] + j)
    }

    pub fn mul_basis(&self, i: usize, j: usize) -> Option<usize> {
        let (p, a) = self.locate(i);
        let (q, b) = self.locate(j);
        if p != q {
            return None;
        }
        self.jets[p].mul_basis(a, b).map(|k| self.offsets[p] + k)
    }

    pub fn label(&self, i: usize) -> String {
        let (p, j) = self.locate(i);
        let m = &self.jets[p].monomials[j];
        let mono: Vec<String> = m
            .iter()
            .enumerate()
            .filter(|(_, &k)| k > 0)
            .map(|(v, &k)| {
                let var = if self.nvars == 1 { "u".to_string() } else { format!("u{}", v + 1) };
                if k == 1 {
                    var
                } else {
                    format!("{var}^{k}")
                }
            })
            .collect();
        let mono = if mono.is_empty() { "1".to_string() } else { mono.join("*") };
        format!("{mono}@{}", self.points[p])
    }

    /// Image of a Laurent function in A/I_η.
    pub fn expand(&self, f: &LaurentFunction) -> Vec<F> {
        let mut out = Vec::with_capacity(self.dim);
        for (p, jets) in self.points.iter().zip(&self.jets) {
            out.extend(jet_expand_in(jets, f, p));
        }
        out
    }

    /// Matrix of γ: u_p^β ↦ s_γ^{−β} u_{γp}^β. Needs a Γ-stable support with
    /// exponents constant along orbits.
    pub fn gamma_matrix(&self, group: &GammaGroup, a: usize) -> Result<SparseMatrix> {
        let s = &group.elements[a].scaling;
        let mut m = SparseMatrix::zeros(self.dim, self.dim);
        for (p, point) in self.points.iter().enumerate() {
            let image = point.act(group, a);
            let q = self.point_index(&image).ok_or_else(|| {
                EmaError::Input(format!("support is not Γ-stable: {image} missing"))
            })?;
            if self.exps[q] != self.exps[p] {
                return Err(EmaError::Input(format!(
                    "exponents differ along the orbit of {point}"
                )));
            }
            for (j, mono) in self.jets[p].monomials.iter().enumerate() {
                let mut c = F::one();
                for (si, &b) in s.iter().zip(mono) {
                    c = &c * &si.pow(-(b as i64));
                }
                let col: SparseVec = vec![(self.offsets[q] + j, c)];
                m.columns[self.offsets[p] + j] = col;
            }
        }
        Ok(m)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn t(k: i64) -> LaurentFunction {
        LaurentFunction::monomial(1, vec![k], F::one())
    }

    #[test]
    fn expansions() {
        let one = Point::from_ints(&[1]);
        assert_eq!(jet_expand(&t(1), &one, 2), vec![F::one(), F::one()]);
        assert_eq!(jet_expand(&t(-1), &one, 2), vec![F::one(), F::int(-1)]);
        let two = Point::from_ints(&[2]);
        assert_eq!(jet_expand(&t(-1), &two, 2), vec![F::rat(1, 2), F::rat(-1, 4)]);
    }

    #[test]
    fn jet_dimensions() {
        assert_eq!(JetAlgebra::new(1, 3).dim(), 3);
        assert_eq!(JetAlgebra::new(2, 3).dim(), 6);
        assert_eq!(JetAlgebra::new(2, 2).monomials, vec![vec![0, 0], vec![1, 0], vec![0, 1]]);
        let mut eta = EtaFunction::new();
        eta.insert(Point::from_ints(&[1, 1]), 2);
        eta.insert(Point::from_ints(&[1, -1]), 3);
        assert_eq!(QuotientAlgebra::new(2, &eta).dim, 3 + 6);
    }

    #[test]
    fn expansion_is_multiplicative() {
        let x = Point::from_ints(&[3]);
        let f = t(-2).add(&t(1).scale(&F::int(5)));
        let g = t(3).add(&LaurentFunction::one(1));
        let jets = JetAlgebra::new(1, 4);
        let lhs = jet_expand_in(&jets, &f.mul(&g), &x);
        let rhs = jets.mul(&jet_expand_in(&jets, &f, &x), &jet_expand_in(&jets, &g, &x));
        assert_eq!(lhs, rhs);
    }
}
