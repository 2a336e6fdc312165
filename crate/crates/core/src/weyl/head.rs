//! Irreducible heads of cyclic highest weight modules and surjections from
//! Weyl modules.

use crate::coordalg::Point;
use crate::ema::{EmaSetting, TruncatedAlgebra};
use crate::error::{EmaError, Result};
use crate::foundations::{FieldElement as F, Matrix, Rat, Subspace};
use crate::repmod::{
    algebra_transversal, eta_max, is_intertwiner, levi_eigenspaces, transport, untwist, AlgebraRef, FiniteModule,
    PsiFunction,
};
use crate::rootdata::Weight;

use super::{weyl_module, WeylModule, WeylOptions};

/// The same vector space viewed over a truncated algebra.
fn truncated_view(setting: &EmaSetting, m: &FiniteModule) -> Result<FiniteModule> {
    match &m.algebra {
        AlgebraRef::Truncated(_) => Ok(m.clone()),
        AlgebraRef::Invariant(inv) => untwist(setting, m, &algebra_transversal(inv)),
    }
}

/// The top joint weight of ⊕_p h ⊗ 1_p (by total height), its vector and the
/// sum of the other joint weight spaces. The top space must be a line
/// generating the module.
pub fn top_vector(m: &FiniteModule) -> Result<(Vec<Point>, Vec<Weight>, Vec<F>, Subspace)> {
    let (points, spaces) = levi_eigenspaces(m)?;
    let datum = &m.algebra.g().datum;
    let height = |ws: &[Weight]| ws.iter().fold(Rat::ZERO, |a, w| &a + &datum.height(w));
    let top = spaces
        .iter()
        .enumerate()
        .max_by(|(_, a), (_, b)| height(&a.0).cmp(&height(&b.0)).then(a.0.cmp(&b.0)))
        .map(|(i, _)| i)
        .ok_or_else(|| EmaError::NotCyclic("the module is zero".into()))?;
    if spaces[top].1.len() != 1 {
        return Err(EmaError::NotCyclic(format!("top weight space has dimension {}", spaces[top].1.len())));
    }
    let v = spaces[top].1[0].clone();
    if !m.is_generated_by(&v) {
        return Err(EmaError::NotCyclic("the top weight vector does not generate the module".into()));
    }
    let rest = Subspace::from_dense(
        m.dim,
        spaces.iter().enumerate().filter(|(i, _)| *i != top).flat_map(|(_, (_, b))| b.iter()),
    );
    Ok((points, spaces[top].0.clone(), v, rest))
}

/// The largest submodule contained in `s`.
fn largest_submodule_in(m: &FiniteModule, s: &Subspace) -> Subspace {
    let ops = m.sparse_actions();
    let mut cur = s.clone();
    loop {
        let basis = cur.basis().to_vec();
        if basis.is_empty() {
            return cur;
        }
        let mut rows: Vec<Vec<F>> = Vec::new();
        for op in &ops {
            let residuals: Vec<Vec<F>> = basis
                .iter()
                .map(|b| crate::foundations::sparse::sparse_to_dense(&cur.reduce(&op.apply(b)), m.dim))
                .collect();
            for r in 0..m.dim {
                if residuals.iter().any(|col| !col[r].is_zero()) {
                    rows.push(residuals.iter().map(|col| col[r].clone()).collect());
                }
            }
        }
        if rows.is_empty() {
            return cur;
        }
        let kernel = Matrix::from_rows(rows).nullspace();
        let next = Subspace::from_sparse(
            m.dim,
            kernel.iter().map(|c| {
                let mut acc = crate::foundations::sparse::Accumulator::new();
                for (b, x) in basis.iter().zip(c) {
                    acc.add_scaled(b, x);
                }
                acc.finish()
            }),
        );
        if next.dim() == cur.dim() {
            return cur;
        }
        cur = next;
    }
}

/// M / S where S is the greatest submodule meeting the top weight line
/// trivially.
pub fn head(setting: &EmaSetting, m: &FiniteModule) -> Result<FiniteModule> {
    let view = truncated_view(setting, m)?;
    let (_, _, _, rest) = top_vector(&view)?;
    let s = largest_submodule_in(&view, &rest);
    Ok(m.quotient(&s))
}

#[derive(Clone, Debug)]
pub struct HwQuotient {
    pub psi: PsiFunction,
    pub weyl: WeylModule,
    /// W(ψ) → M over the common truncation, columns indexed by W's basis.
    pub surjection: Matrix,
    pub rank: usize,
}

fn embed_index(from: &TruncatedAlgebra, to: &TruncatedAlgebra, i: usize) -> usize {
    let (a, q) = from.split(i);
    let (p, _) = from.quot.locate(q);
    let tp = to.quot.point_index(&from.quot.points[p]).expect("covering support");
    let tq = to.quot.index(tp, from.quot.monomial(q)).expect("covering exponent");
    to.index(a, tq)
}

/// Reads ψ from the top vector of a cyclic module over a truncated algebra
/// and builds the surjection W(ψ) ↠ M, w_ψ ↦ top vector.
pub fn hw_quotient_check(setting: &EmaSetting, m: &FiniteModule, opts: &WeylOptions) -> Result<HwQuotient> {
    let AlgebraRef::Truncated(t) = &m.algebra else {
        return Err(EmaError::AlgebraMismatch("expected a module over a truncated algebra".into()));
    };
    let (points, top, v, _) = top_vector(m)?;
    let psi = PsiFunction::new(points.into_iter().zip(top), false);
    if psi.values.values().any(|w| !w.is_dominant()) {
        return Err(EmaError::Certification(format!("top weight {psi} is not dominant")));
    }
    let weyl = weyl_module(setting, &psi, opts)?;
    let AlgebraRef::Truncated(wt) = &weyl.module.algebra else { unreachable!("Weyl modules live over truncations") };
    let common = setting.truncated(&eta_max(&wt.eta(), &t.eta()));
    let target = AlgebraRef::Truncated(common.clone());
    let on_w = transport(&weyl.module, &target)?;
    let on_m = transport(m, &target)?;
    let cols: Vec<Vec<F>> = weyl
        .words
        .iter()
        .map(|word| {
            let mut u = v.clone();
            for &y in word.iter().rev() {
                u = on_m.actions[embed_index(wt, &common, y)].mul_vec(&u);
            }
            u
        })
        .collect();
    let surjection = Matrix::from_columns(m.dim, &cols);
    if !is_intertwiner(&on_w, &on_m, &surjection) {
        return Err(EmaError::Certification("w_ψ ↦ top vector does not extend to a homomorphism".into()));
    }
    let rank = surjection.rank();
    Ok(HwQuotient { psi, weyl, surjection, rank })
}
