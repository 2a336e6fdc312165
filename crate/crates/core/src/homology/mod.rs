//! Degree-one Lie algebra cohomology, Ext¹ along truncation ladders and the
//! homological characterization of twisted Weyl modules.

pub mod battery;

use crate::coordalg::EtaFunction;
use crate::ema::EmaSetting;
use crate::error::{EmaError, Result};
use crate::foundations::sparse::{Accumulator, SparseVec};
use crate::foundations::{Matrix, Subspace};
use crate::repmod::{algebra_eta, transport, AlgebraRef, FiniteModule, LieStructure};

pub use battery::{candidate_functions, characterization_battery, BatteryEntry, BatteryReport};

/// The cochains C⁰ → C¹ → C² with dense differentials. C¹ coordinates are
/// φ(x_i)_r at index i·dim V + r; C² coordinates are (x_i, x_j), i < j, in
/// lexicographic order.
#[derive(Clone, Debug)]
pub struct CeComplex {
    pub d0: Matrix,
    pub d1: Matrix,
}

impl CeComplex {
    pub fn new<L: LieStructure + ?Sized>(l: &L, actions: &[Matrix]) -> Self {
        let n = l.dimension();
        let dv = actions.first().map_or(0, |a| a.rows);
        let mut d0 = Matrix::zeros(n * dv, dv);
        for (i, a) in actions.iter().enumerate() {
            for r in 0..dv {
                for c in 0..dv {
                    d0[(i * dv + r, c)] = a[(r, c)].clone();
                }
            }
        }
        let pairs = n * n.saturating_sub(1) / 2;
        let mut d1 = Matrix::zeros(pairs * dv, n * dv);
        let mut row = 0;
        for i in 0..n {
            for j in (i + 1)..n {
                for (k, v) in cocycle_rows(l, actions, i, j).into_iter().enumerate() {
                    for (col, c) in v {
                        d1[(row + k, col)] = c;
                    }
                }
                row += dv;
            }
        }
        CeComplex { d0, d1 }
    }

    /// d¹ ∘ d⁰ = 0.
    pub fn is_complex(&self) -> bool {
        self.d1.mul(&self.d0).is_zero()
    }
}

/// Rows of (dφ)(x_i, x_j) = x_i·φ(x_j) − x_j·φ(x_i) − φ([x_i, x_j]), one per
/// coordinate of V.
fn cocycle_rows<L: LieStructure + ?Sized>(l: &L, actions: &[Matrix], i: usize, j: usize) -> Vec<SparseVec> {
    let dv = actions[i].rows;
    let bracket = l.bracket_of_basis(i, j);
    (0..dv)
        .map(|r| {
            let mut acc = Accumulator::new();
            for k in 0..dv {
                let a = &actions[i][(r, k)];
                if !a.is_zero() {
                    acc.add(j * dv + k, a.clone());
                }
                let b = &actions[j][(r, k)];
                if !b.is_zero() {
                    acc.add(i * dv + k, -b);
                }
            }
            for (z, c) in bracket {
                acc.add(z * dv + r, -c);
            }
            acc.finish()
        })
        .collect()
}

#[derive(Clone, Debug)]
pub struct H1 {
    pub dim: usize,
    pub cocycle_dim: usize,
    pub coboundary_dim: usize,
    /// Cocycles whose classes form a basis of H¹, as `dim V × dim L` matrices.
    pub representatives: Vec<Matrix>,
}

/// H¹(L, V) for V given by one action matrix per basis element of L.
pub fn h1<L: LieStructure + ?Sized>(l: &L, actions: &[Matrix]) -> H1 {
    let n = l.dimension();
    let dv = actions.first().map_or(0, |a| a.rows);
    let unknowns = n * dv;
    let mut rows = Subspace::zero(unknowns);
    'outer: for i in 0..n {
        for j in (i + 1)..n {
            for r in cocycle_rows(l, actions, i, j) {
                if !r.is_empty() {
                    rows.insert(&r);
                    if rows.dim() == unknowns {
                        break 'outer;
                    }
                }
            }
        }
    }
    let cocycles = rows.orthogonal_kernel();
    let mut space = Subspace::zero(unknowns);
    for c in 0..dv {
        let mut acc = Accumulator::new();
        for (i, a) in actions.iter().enumerate() {
            for r in 0..dv {
                if !a[(r, c)].is_zero() {
                    acc.add(i * dv + r, a[(r, c)].clone());
                }
            }
        }
        space.insert(&acc.finish());
    }
    let coboundary_dim = space.dim();
    let mut representatives = Vec::new();
    for z in &cocycles {
        if space.insert(z).is_some() {
            let mut m = Matrix::zeros(dv, n);
            for (idx, c) in z {
                m[(idx % dv, idx / dv)] = c.clone();
            }
            representatives.push(m);
        }
    }
    H1 { dim: representatives.len(), cocycle_dim: cocycles.len(), coboundary_dim, representatives }
}

/// Hom(M, N) with (x·T) = ρ_N(x) T − T ρ_M(x); T is vectorized row-major.
pub fn hom_module(m: &FiniteModule, n: &FiniteModule) -> Result<FiniteModule> {
    m.require_same_algebra(n)?;
    let im = Matrix::identity(m.dim);
    let inn = Matrix::identity(n.dim);
    let actions = m
        .actions
        .iter()
        .zip(&n.actions)
        .map(|(am, an)| an.kron(&im).sub(&inn.kron(&am.transpose())))
        .collect();
    FiniteModule::new(m.algebra.clone(), m.dim * n.dim, actions)
}

/// Ext¹(M, N) over the algebra the modules are defined on.
pub fn ext1(m: &FiniteModule, n: &FiniteModule) -> Result<H1> {
    let hom = hom_module(m, n)?;
    Ok(h1(&m.algebra, &hom.actions))
}

#[derive(Clone, Debug)]
pub struct ExtLadder {
    /// Exponent on every support orbit, with the H¹ dimension there.
    pub rungs: Vec<(u32, usize)>,
    pub stabilized: bool,
}

/// Ext¹(M, N) computed on truncations with exponent base + i on every
/// support point, where base exceeds every exponent M and N are defined at.
pub fn ext1_ladder(setting: &EmaSetting, m: &FiniteModule, n: &FiniteModule, rungs: usize) -> Result<ExtLadder> {
    if m.algebra.is_invariant() != n.algebra.is_invariant() {
        return Err(EmaError::AlgebraMismatch("both modules must live over the same kind of algebra".into()));
    }
    let mut support = algebra_eta(&m.algebra);
    for (p, e) in algebra_eta(&n.algebra) {
        let slot = support.entry(p).or_insert(0);
        *slot = (*slot).max(e);
    }
    let base = support.values().copied().max().unwrap_or(0) + 1;
    let mut out = Vec::with_capacity(rungs);
    for i in 0..rungs {
        let e = base + i as u32;
        let eta: EtaFunction = support.keys().map(|p| (p.clone(), e)).collect();
        let target = if m.algebra.is_invariant() {
            AlgebraRef::Invariant(setting.invariant(&eta)?)
        } else {
            AlgebraRef::Truncated(setting.truncated(&eta))
        };
        let mm = transport(m, &target)?;
        let nn = transport(n, &target)?;
        out.push((e, ext1(&mm, &nn)?.dim));
    }
    let stabilized = out.len() >= 2 && out[out.len() - 1].1 == out[out.len() - 2].1;
    Ok(ExtLadder { rungs: out, stabilized })
}


#[cfg(test)]
mod tests {
    use super::*;
    use crate::coordalg::Point;
    use crate::ema::tests::sl2_z2;
    use crate::liealg::ChevalleyAlgebra;
    use crate::repmod::{evaluation_module, irrep, psi_gamma, PsiFunction, StructureConstants};
    use crate::rootdata::Weight;
    use crate::weyl::tests::untwisted;
    use crate::weyl::{head, twisted_weyl, WeylOptions};

    fn single(x: i64, k: i64) -> PsiFunction {
        PsiFunction::new([(Point::from_ints(&[x]), Weight::new(vec![k]))], false)
    }

    #[test]
    fn whitehead_and_abelian() {
        let g = ChevalleyAlgebra::build_sl(2).unwrap();
        let adj = irrep(&g, &Weight::new(vec![2])).unwrap();
        let c = CeComplex::new(&g, &adj.actions);
        assert!(c.is_complex());
        assert_eq!(h1(&g, &adj.actions).dim, 0);
        let l = StructureConstants::abelian(1);
        let r = h1(&l, &[Matrix::zeros(1, 1)]);
        assert_eq!((r.dim, r.cocycle_dim, r.coboundary_dim), (1, 1, 0));
    }

    #[test]
    fn weyl_extension_survives_the_ladder() {
        let s = untwisted(1);
        let alg = AlgebraRef::Truncated(s.truncated(&crate::ema::constant_eta(&[Point::from_ints(&[1])], 1)));
        let v = evaluation_module(&s, &single(1, 2), &alg).unwrap();
        let triv = FiniteModule::trivial(alg, 1);
        let ladder = ext1_ladder(&s, &v, &triv, 3).unwrap();
        assert_eq!(ladder.rungs.len(), 3);
        assert!(ladder.rungs.iter().all(|(_, d)| *d >= 1), "{:?}", ladder.rungs);
    }

    #[test]
    fn self_extensions_of_twisted_irreducible() {
        let s = sl2_z2();
        let psi = psi_gamma(&single(1, 2), &s.gamma).unwrap();
        let inv = s.invariant(&crate::ema::constant_eta(&[Point::from_ints(&[1])], 2)).unwrap();
        let v = evaluation_module(&s, &psi, &AlgebraRef::Invariant(inv)).unwrap();
        assert!(ext1(&v, &v).unwrap().dim >= 1);
    }

    #[test]
    fn battery_directions() {
        let s = sl2_z2();
        let psi = psi_gamma(&single(1, 2), &s.gamma).unwrap();
        let w = twisted_weyl(&s, &psi, &[Point::from_ints(&[1])], &WeylOptions::default()).unwrap();
        let report = characterization_battery(&s, &w.module, &psi, 2, 3).unwrap();
        assert!(report.pass, "{:?}", report.entries);
        assert_eq!(report.entries.len(), 2);

        let top = head(&s, &w.module).unwrap();
        let report = characterization_battery(&s, &top, &psi, 2, 3).unwrap();
        assert!(!report.pass);
        assert!(report.entries.iter().any(|e| e.phi.is_zero() && e.ext.iter().all(|(_, d)| *d > 0)));

        let padded = top.direct_sum(&evaluation_module(&s, &PsiFunction::zero(true), &top.algebra).unwrap()).unwrap();
        let report = characterization_battery(&s, &padded, &psi, 2, 3).unwrap();
        assert!(!report.pass);
        assert!(report.entries.iter().any(|e| e.hom_dim > 0));

        let bad = characterization_battery(&s, &padded, &PsiFunction::zero(true), 2, 3).unwrap_err();
        assert!(matches!(bad, EmaError::Hypothesis(_)));
    }
}
