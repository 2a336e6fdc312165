//! Intertwiners between modules and isomorphism certificates.

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::error::Result;
use crate::foundations::sparse::SparseVec;
use crate::foundations::{FieldElement as F, Matrix, Subspace};

use super::module::FiniteModule;

const RANDOM_ATTEMPTS: usize = 5;
const EXHAUSTIVE_COEFFS: [i64; 4] = [0, 1, -1, 2];
const EXHAUSTIVE_MAX_DIM: usize = 6;

/// Basis of Hom(M, N): matrices T (`N.dim × M.dim`) with ρ_N(u) T = T ρ_M(u).
pub fn hom_space(m: &FiniteModule, n: &FiniteModule) -> Result<Vec<Matrix>> {
    m.require_same_algebra(n)?;
    let (dm, dn) = (m.dim, n.dim);
    let unknowns = dm * dn;
    let var = |r: usize, c: usize| r * dm + c;
    let mut rows = Subspace::zero(unknowns);
    'outer: for (am, an) in m.actions.iter().zip(&n.actions) {
        for r in 0..dn {
            for c in 0..dm {
                let mut acc = crate::foundations::sparse::Accumulator::new();
                for k in 0..dn {
                    if !an[(r, k)].is_zero() {
                        acc.add(var(k, c), an[(r, k)].clone());
                    }
                }
                for k in 0..dm {
                    if !am[(k, c)].is_zero() {
                        acc.add(var(r, k), -&am[(k, c)]);
                    }
                }
                let row: SparseVec = acc.finish();
                if !row.is_empty() {
                    rows.insert(&row);
                    if rows.dim() == unknowns {
                        break 'outer;
                    }
                }
            }
        }
    }
    Ok(rows
        .orthogonal_kernel()
        .into_iter()
        .map(|v| {
            let mut t = Matrix::zeros(dn, dm);
            for (i, x) in v {
                t[(i / dm, i % dm)] = x;
            }
            t
        })
        .collect())
}

fn combine(basis: &[Matrix], coeffs: &[i64]) -> Matrix {
    let mut t = Matrix::zeros(basis[0].rows, basis[0].cols);
    for (b, &c) in basis.iter().zip(coeffs) {
        if c != 0 {
            t.add_scaled(&F::int(c), b);
        }
    }
    t
}

/// An invertible intertwiner M → N when one is found.
pub fn isomorphism_witness(m: &FiniteModule, n: &FiniteModule) -> Result<Option<Matrix>> {
    m.require_same_algebra(n)?;
    if m.dim != n.dim {
        return Ok(None);
    }
    if m.dim == 0 {
        return Ok(Some(Matrix::zeros(0, 0)));
    }
    let basis = hom_space(m, n)?;
    if basis.is_empty() {
        return Ok(None);
    }
    let mut rng = ChaCha8Rng::seed_from_u64(0x5eed);
    for _ in 0..RANDOM_ATTEMPTS {
        let coeffs: Vec<i64> = (0..basis.len()).map(|_| rng.gen_range(-5..=5)).collect();
        let t = combine(&basis, &coeffs);
        if t.rank() == m.dim {
            return Ok(Some(t));
        }
    }
    if basis.len() <= EXHAUSTIVE_MAX_DIM {
        let k = basis.len();
        let total = EXHAUSTIVE_COEFFS.len().pow(k as u32);
        for code in 1..total {
            let mut c = code;
            let coeffs: Vec<i64> = (0..k)
                .map(|_| {
                    let v = EXHAUSTIVE_COEFFS[c % EXHAUSTIVE_COEFFS.len()];
                    c /= EXHAUSTIVE_COEFFS.len();
                    v
                })
                .collect();
            let t = combine(&basis, &coeffs);
            if t.rank() == m.dim {
                return Ok(Some(t));
            }
        }
    }
    Ok(None)
}

pub fn is_isomorphic(m: &FiniteModule, n: &FiniteModule) -> Result<bool> {
    Ok(isomorphism_witness(m, n)?.is_some())
}

/// T is an intertwiner M → N.
pub fn is_intertwiner(m: &FiniteModule, n: &FiniteModule, t: &Matrix) -> bool {
    m.actions.iter().zip(&n.actions).all(|(am, an)| an.mul(t) == t.mul(am))
}
