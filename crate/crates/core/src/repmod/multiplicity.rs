//! Composition multiplicities through the Levi subalgebra ⊕_x g ⊗ 1_x.

use std::collections::BTreeMap;

use crate::coordalg::Point;
use crate::ema::EmaSetting;
use crate::error::{EmaError, Result};
use crate::foundations::sparse::sparse_from_dense;
use crate::foundations::{FieldElement as F, Frame, Matrix, Rat};
use crate::liealg::GammaGroup;
use crate::rootdata::{RootDatum, Weight};

use super::module::{AlgebraRef, FiniteModule};
use super::psi::{psi_gamma, PsiFunction};
use super::transport::{algebra_transversal, untwist};

pub type MultiplicityTable = BTreeMap<PsiFunction, usize>;

/// Splits `basis` (vectors of the module) into eigenspaces of `op`, whose
/// eigenvalues are integers.
fn split(op: &Matrix, basis: &[Vec<F>]) -> Result<Vec<(i64, Vec<Vec<F>>)>> {
    let k = basis.len();
    let n = op.rows;
    let frame = Frame::new(n, basis.iter().map(|v| sparse_from_dense(v)).collect())
        .expect("independent basis");
    let cols: Vec<Vec<F>> =
        basis.iter().map(|v| frame.coordinates(&sparse_from_dense(&op.mul_vec(v)))).collect();
    let x = Matrix::from_columns(k, &cols);
    let mut out = Vec::new();
    let mut found = 0;
    let mut c: i64 = 0;
    let bound = 2 * n as i64 + 2;
    while found < k {
        if c.abs() > bound {
            return Err(EmaError::Certification("Cartan elements do not act semisimply".into()));
        }
        let shifted = x.sub(&Matrix::identity(k).scale(&F::int(c)));
        let kernel = shifted.nullspace();
        if !kernel.is_empty() {
            found += kernel.len();
            let vecs = kernel
                .iter()
                .map(|coeffs| {
                    let mut v = vec![F::zero(); n];
                    for (b, cf) in basis.iter().zip(coeffs) {
                        if cf.is_zero() {
                            continue;
                        }
                        for (vi, bi) in v.iter_mut().zip(b) {
                            *vi = &*vi + &(cf * bi);
                        }
                    }
                    v
                })
                .collect();
            out.push((c, vecs));
        }
        c = if c > 0 { -c } else { -c + 1 };
    }
    Ok(out)
}

/// Joint eigenspaces of ⊕_p h ⊗ 1_p on a module over a truncated algebra,
/// keyed by the weight at each support point (in the algebra's point order).
pub fn levi_eigenspaces(m: &FiniteModule) -> Result<(Vec<Point>, Vec<(Vec<Weight>, Vec<Vec<F>>)>)> {
    let AlgebraRef::Truncated(t) = &m.algebra else {
        return Err(EmaError::AlgebraMismatch("Levi characters need a truncated algebra".into()));
    };
    let g = &t.g;
    let rank = g.rank();
    let zero_mono = vec![0u32; t.quot.nvars];
    let mut ops = Vec::new();
    for p in 0..t.quot.points.len() {
        let q = t.quot.index(p, &zero_mono).expect("constant jet");
        for i in 0..rank {
            ops.push(&m.actions[t.index(g.h(i), q)]);
        }
    }
    let identity: Vec<Vec<F>> = (0..m.dim)
        .map(|i| {
            let mut e = vec![F::zero(); m.dim];
            e[i] = F::one();
            e
        })
        .collect();
    let mut spaces: Vec<(Vec<i64>, Vec<Vec<F>>)> = if m.dim == 0 { vec![] } else { vec![(vec![], identity)] };
    for op in ops {
        let mut next = Vec::new();
        for (label, basis) in spaces {
            for (c, vecs) in split(op, &basis)? {
                let mut l = label.clone();
                l.push(c);
                next.push((l, vecs));
            }
        }
        spaces = next;
    }
    let out = spaces
        .into_iter()
        .map(|(label, basis)| {
            let key: Vec<Weight> = label.chunks(rank).map(|c| Weight::new(c.to_vec())).collect();
            (key, basis)
        })
        .collect();
    Ok((t.quot.points.clone(), out))
}

/// Joint weight multiplicities of ⊕_p h ⊗ 1_p.
pub fn levi_character(m: &FiniteModule) -> Result<(Vec<Point>, BTreeMap<Vec<Weight>, usize>)> {
    let (points, spaces) = levi_eigenspaces(m)?;
    let mut chars = BTreeMap::new();
    for (key, basis) in spaces {
        *chars.entry(key).or_insert(0) += basis.len();
    }
    Ok((points, chars))
}

fn product_character(datum: &RootDatum, tops: &[Weight]) -> Result<BTreeMap<Vec<Weight>, usize>> {
    let mut acc: BTreeMap<Vec<Weight>, usize> = BTreeMap::new();
    acc.insert(vec![], 1);
    for w in tops {
        let single = datum.freudenthal_mults(w)?;
        let mut next = BTreeMap::new();
        for (k, m) in &acc {
            for (mu, n) in &single {
                let mut key = k.clone();
                key.push(mu.clone());
                *next.entry(key).or_insert(0) += m * n;
            }
        }
        acc = next;
    }
    Ok(acc)
}

fn total_height(datum: &RootDatum, ws: &[Weight]) -> Rat {
    ws.iter().fold(Rat::ZERO, |a, w| &a + &datum.height(w))
}

/// Multiplicities over a truncated algebra, keyed by ψ on its support points.
pub fn multiplicities_truncated(m: &FiniteModule) -> Result<MultiplicityTable> {
    let (points, mut chars) = levi_character(m)?;
    let datum = &m.algebra.g().datum;
    let mut table = MultiplicityTable::new();
    while !chars.is_empty() {
        let top = chars
            .keys()
            .max_by(|a, b| total_height(datum, a).cmp(&total_height(datum, b)).then(a.cmp(b)))
            .cloned()
            .expect("nonempty");
        if !top.iter().all(Weight::is_dominant) {
            return Err(EmaError::Certification(format!("maximal joint weight {top:?} is not dominant")));
        }
        let mult = chars[&top];
        for (key, n) in product_character(datum, &top)? {
            let have = chars.get(&key).copied().unwrap_or(0);
            if have < n * mult {
                return Err(EmaError::Certification("Levi character is not a sum of irreducibles".into()));
            }
            if have == n * mult {
                chars.remove(&key);
            } else {
                chars.insert(key, have - n * mult);
            }
        }
        let psi = PsiFunction::new(points.iter().cloned().zip(top), false);
        *table.entry(psi).or_insert(0) += mult;
    }
    Ok(table)
}

/// Multiplicity table; modules over invariants are untwisted over the
/// canonical transversal and the result labelled by equivariant ψ.
pub fn multiplicities(setting: &EmaSetting, m: &FiniteModule) -> Result<MultiplicityTable> {
    match &m.algebra {
        AlgebraRef::Truncated(_) => multiplicities_truncated(m),
        AlgebraRef::Invariant(inv) => multiplicities_via(setting, m, &algebra_transversal(inv)),
    }
}

/// Multiplicities of a module over invariants, untwisting over `transversal`.
pub fn multiplicities_via(setting: &EmaSetting, m: &FiniteModule, transversal: &[Point]) -> Result<MultiplicityTable> {
    let u = untwist(setting, m, transversal)?;
    let mut out = MultiplicityTable::new();
    for (psi, n) in multiplicities_truncated(&u)? {
        *out.entry(psi_gamma(&psi, &setting.gamma)?).or_insert(0) += n;
    }
    Ok(out)
}

/// Σ mult · dim V(ψ) = dim M.
pub fn dimension_sum(table: &MultiplicityTable, datum: &RootDatum, group: &GammaGroup) -> usize {
    table
        .iter()
        .map(|(psi, n)| {
            let reps: Vec<Weight> = if psi.equivariant {
                psi.support_orbits(group).iter().map(|p| psi.values[p].clone()).collect()
            } else {
                psi.values.values().cloned().collect()
            };
            n * reps.iter().map(|w| datum.weyl_dimension(w)).product::<usize>()
        })
        .sum()
}

/// Union of the support orbits of the composition factors.
pub fn support(table: &MultiplicityTable, group: &GammaGroup) -> Vec<Point> {
    let mut reps: Vec<Point> = table.keys().flat_map(|psi| psi.support_orbits(group)).collect();
    reps.sort();
    reps.dedup();
    reps
}

/// mult_ψ = 1 and every other factor has strictly smaller height.
pub fn is_maximal_weight(table: &MultiplicityTable, psi: &PsiFunction, datum: &RootDatum, group: &GammaGroup) -> bool {
    if table.get(psi) != Some(&1) {
        return false;
    }
    let h = psi.height(datum, group);
    table.keys().filter(|k| *k != psi).all(|k| k.height(datum, group) < h)
}

pub fn composition_length(table: &MultiplicityTable) -> usize {
    table.values().sum()
}
