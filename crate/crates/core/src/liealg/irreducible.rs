//! Irreducible modules V(λ) realized inside tensor products of exterior powers.
//!
//! V(λ) is the cyclic submodule generated by the tensor product of highest
//! weight vectors of ⊗_i (Λ^i C^{n+1})^{⊗λ_i}, computed weight space by
//! weight space with the lowering operators f_i.

use std::collections::BTreeMap;

use crate::error::{EmaError, Result};
use crate::foundations::sparse::{Accumulator, SparseVec};
use crate::foundations::{FieldElement as F, Matrix, Subspace};
use crate::liealg::chevalley::ChevalleyAlgebra;
use crate::rootdata::Weight;

/// Default cap on the ambient tensor dimension.
pub const DEFAULT_AMBIENT_BUDGET: usize = 1 << 20;

/// A g-module given by action matrices on a weight basis.
#[derive(Clone, Debug)]
pub struct IrrepData {
    pub lambda: Weight,
    pub dim: usize,
    /// One matrix per g basis element.
    pub actions: Vec<Matrix>,
    /// Weight of each basis vector; the highest weight vector is index 0.
    pub weights: Vec<Weight>,
}

fn subsets(n: usize, k: usize) -> Vec<Vec<usize>> {
    let mut out = Vec::new();
    let mut cur = Vec::new();
    fn rec(start: usize, n: usize, k: usize, cur: &mut Vec<usize>, out: &mut Vec<Vec<usize>>) {
        if cur.len() == k {
            out.push(cur.clone());
            return;
        }
        for i in start..n {
            cur.push(i);
            rec(i + 1, n, k, cur, out);
            cur.pop();
        }
    }
    rec(0, n, k, &mut cur, &mut out);
    out
}

/// Matrix of X acting on Λ^k C^size in the basis of sorted subsets.
fn wedge_action(x: &Matrix, k: usize) -> Matrix {
    let size = x.rows;
    let basis = subsets(size, k);
    let index: BTreeMap<Vec<usize>, usize> =
        basis.iter().cloned().enumerate().map(|(i, s)| (s, i)).collect();
    let mut m = Matrix::zeros(basis.len(), basis.len());
    for (col, s) in basis.iter().enumerate() {
        for pos in 0..k {
            let src = s[pos];
            for dst in 0..size {
                let c = &x[(dst, src)];
                if c.is_zero() {
                    continue;
                }
                let mut t = s.clone();
                t[pos] = dst;
                if dst != src && s.contains(&dst) {
                    continue;
                }
                // sort t and track the sign of the permutation
                let mut sign = 1i64;
                for i in 0..k {
                    for j in 0..k - 1 - i {
                        if t[j] > t[j + 1] {
                            t.swap(j, j + 1);
                            sign = -sign;
                        }
                    }
                }
                let row = index[&t];
                m[(row, col)] = &m[(row, col)] + &(c * &F::int(sign));
            }
        }
    }
    m
}

struct TensorSpace {
    factors: Vec<usize>,
    dims: Vec<usize>,
    /// Per g basis element, per factor, the sparse columns of its action.
    ops: Vec<Vec<Vec<SparseVec>>>,
}

impl TensorSpace {
    fn apply(&self, x: usize, v: &SparseVec) -> SparseVec {
        let mut acc = Accumulator::new();
        for (idx, c) in v {
            let mut digits = Vec::with_capacity(self.dims.len());
            let mut rem = *idx;
            for &d in self.dims.iter().rev() {
                digits.push(rem % d);
                rem /= d;
            }
            digits.reverse();
            for (f, &digit) in digits.iter().enumerate() {
                for (row, a) in &self.ops[x][f][digit] {
                    let mut target = 0;
                    for (g, &d) in self.dims.iter().enumerate() {
                        let dg = if g == f { *row } else { digits[g] };
                        target = target * d + dg;
                    }
                    acc.add(target, c * a);
                }
            }
        }
        acc.finish()
    }
}

/// Builds V(λ) with the default ambient budget.
pub fn irreducible_module(g: &ChevalleyAlgebra, lambda: &Weight) -> Result<IrrepData> {
    irreducible_module_with_budget(g, lambda, DEFAULT_AMBIENT_BUDGET)
}

pub fn irreducible_module_with_budget(
    g: &ChevalleyAlgebra,
    lambda: &Weight,
    budget: usize,
) -> Result<IrrepData> {
    let n = g.rank();
    if lambda.rank() != n {
        return Err(EmaError::Input(format!("weight {lambda} has wrong rank for sl_{}", n + 1)));
    }
    if !lambda.is_dominant() {
        return Err(EmaError::NotDominant(lambda.to_string()));
    }
    let size = n + 1;
    let mut factors = Vec::new();
    for (i, &c) in lambda.coords.iter().enumerate() {
        for _ in 0..c {
            factors.push(i + 1);
        }
    }
    let dims: Vec<usize> = factors.iter().map(|&k| subsets(size, k).len()).collect();
    let mut ambient: usize = 1;
    for d in &dims {
        ambient = ambient.saturating_mul(*d);
    }
    if ambient > budget {
        return Err(EmaError::Budget { size: ambient, limit: budget });
    }
    if factors.is_empty() {
        return Ok(IrrepData {
            lambda: lambda.clone(),
            dim: 1,
            actions: vec![Matrix::zeros(1, 1); g.dim],
            weights: vec![lambda.clone()],
        });
    }
    let ops: Vec<Vec<Vec<SparseVec>>> = (0..g.dim)
        .map(|x| {
            factors
                .iter()
                .map(|&k| {
                    let m = wedge_action(&g.matrices[x], k);
                    crate::foundations::SparseMatrix::from_dense(&m).columns
                })
                .collect()
        })
        .collect();
    let space = TensorSpace { factors: factors.clone(), dims, ops };
    debug_assert_eq!(space.factors.len(), factors.len());
    // the highest weight vector is e_0 ∧ ... ∧ e_{k-1} in each factor, index 0
    let top: SparseVec = vec![(0, F::one())];
    let mut spaces: BTreeMap<Vec<i64>, (Weight, Subspace)> = BTreeMap::new();
    let drop_key = |w: &Weight| -> Vec<i64> {
        let k = g.datum.root_coords(&lambda.sub(w));
        let mut key: Vec<i64> = vec![k.iter().map(|x| x.to_i64().unwrap()).sum()];
        key.extend(k.iter().map(|x| x.to_i64().unwrap()));
        key
    };
    spaces.insert(drop_key(lambda), (lambda.clone(), Subspace::from_sparse(ambient, [top])));
    // process weights by increasing drop height; lowering only increases it
    let mut processed = std::collections::BTreeSet::new();
    loop {
        let Some(key) = spaces.keys().find(|k| !processed.contains(*k)).cloned() else {
            break;
        };
        processed.insert(key.clone());
        let (w, sub) = spaces[&key].clone();
        for i in 0..n {
            let target = w.sub(&g.datum.simple_root(i));
            let tkey = drop_key(&target);
            for v in sub.basis() {
                let img = space.apply(g.f(i), v);
                if img.is_empty() {
                    continue;
                }
                let entry = spaces
                    .entry(tkey.clone())
                    .or_insert_with(|| (target.clone(), Subspace::zero(ambient)));
                entry.1.insert(&img);
            }
        }
    }
    // flatten to a basis, weights in decreasing order
    let mut basis: Vec<SparseVec> = Vec::new();
    let mut weights = Vec::new();
    let mut offsets: BTreeMap<Vec<i64>, usize> = BTreeMap::new();
    for (key, (w, sub)) in &spaces {
        offsets.insert(key.clone(), basis.len());
        for v in sub.basis() {
            basis.push(v.clone());
            weights.push(w.clone());
        }
    }
    let dim = basis.len();
    let mut actions = Vec::with_capacity(g.dim);
    for x in 0..g.dim {
        let mut m = Matrix::zeros(dim, dim);
        let shift = g.basis_weight(x);
        for (col, v) in basis.iter().enumerate() {
            let img = space.apply(x, v);
            if img.is_empty() {
                continue;
            }
            let target = weights[col].add(&shift);
            let tkey = drop_key(&target);
            let (_, sub) = &spaces[&tkey];
            let off = offsets[&tkey];
            for (r, c) in sub.coordinates(&img).into_iter().enumerate() {
                m[(off + r, col)] = c;
            }
        }
        actions.push(m);
    }
    Ok(IrrepData { lambda: lambda.clone(), dim, actions, weights })
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn small_dimensions() {
        let sl2 = ChevalleyAlgebra::build_sl(2).unwrap();
        assert_eq!(irreducible_module(&sl2, &Weight::new(vec![2])).unwrap().dim, 3);
        let sl3 = ChevalleyAlgebra::build_sl(3).unwrap();
        assert_eq!(irreducible_module(&sl3, &Weight::new(vec![1, 0])).unwrap().dim, 3);
        let adj = irreducible_module(&sl3, &Weight::new(vec![1, 1])).unwrap();
        assert_eq!(adj.dim, 8);
    }

    #[test]
    fn actions_represent_brackets() {
        let sl3 = ChevalleyAlgebra::build_sl(3).unwrap();
        let v = irreducible_module(&sl3, &Weight::new(vec![2, 1])).unwrap();
        for a in 0..sl3.dim {
            for b in 0..sl3.dim {
                let lhs = v.actions[a].commutator(&v.actions[b]);
                let mut rhs = Matrix::zeros(v.dim, v.dim);
                for (i, c) in &sl3.brackets[a][b] {
                    rhs.add_scaled(c, &v.actions[*i]);
                }
                assert_eq!(lhs, rhs);
            }
        }
    }

    #[test]
    fn budget_error_reports_size() {
        let sl4 = ChevalleyAlgebra::build_sl(4).unwrap();
        let err = irreducible_module_with_budget(&sl4, &Weight::new(vec![1, 1, 1]), 10).unwrap_err();
        assert_eq!(err, EmaError::Budget { size: 96, limit: 10 });
    }
}
