//! Evaluation modules ⊗_x V(ψ(x)) pulled back along evaluation at points.

use std::collections::HashMap;
use std::sync::{Arc, Mutex, OnceLock};

use crate::ema::{EmaSetting, TruncatedAlgebra};
use crate::error::{EmaError, Result};
use crate::foundations::Matrix;
use crate::liealg::{irreducible_module, ChevalleyAlgebra, IrrepData};
use crate::rootdata::Weight;

use super::module::{AlgebraRef, FiniteModule};
use super::psi::{canonical_transversal, PsiFunction};

type IrrepCache = Mutex<HashMap<(usize, Weight), Arc<IrrepData>>>;

fn irrep_cache() -> &'static IrrepCache {
    static CACHE: OnceLock<IrrepCache> = OnceLock::new();
    CACHE.get_or_init(|| Mutex::new(HashMap::new()))
}

/// V(λ) as a g-module, memoized per (dim g, λ).
pub fn irrep(g: &ChevalleyAlgebra, lambda: &Weight) -> Result<Arc<IrrepData>> {
    let key = (g.dim, lambda.clone());
    if let Some(v) = irrep_cache().lock().expect("irrep cache").get(&key) {
        return Ok(v.clone());
    }
    let v = Arc::new(irreducible_module(g, lambda)?);
    irrep_cache().lock().expect("irrep cache").insert(key, v.clone());
    Ok(v)
}

/// ⊗_x V(ψ(x)) over a truncated algebra: a ⊗ u_p^β acts through the factor
/// at p when β = 0 and by zero otherwise.
pub fn evaluation_truncated(psi: &PsiFunction, alg: &Arc<TruncatedAlgebra>) -> Result<FiniteModule> {
    let g = &alg.g;
    let mut factors = Vec::new();
    for (p, w) in &psi.values {
        let idx = alg.quot.point_index(p).ok_or_else(|| {
            EmaError::Input(format!("the truncation does not cover the support point {p}"))
        })?;
        factors.push((idx, irrep(g, w)?));
    }
    let dim: usize = factors.iter().map(|(_, v)| v.dim).product();
    let zero_mono = vec![0u32; alg.quot.nvars];
    let mut actions = vec![Matrix::zeros(dim, dim); alg.dim];
    for (k, (pidx, v)) in factors.iter().enumerate() {
        let q = alg.quot.index(*pidx, &zero_mono).expect("constant jet");
        let left: usize = factors[..k].iter().map(|(_, f)| f.dim).product();
        let right: usize = factors[k + 1..].iter().map(|(_, f)| f.dim).product();
        let il = Matrix::identity(left);
        let ir = Matrix::identity(right);
        for a in 0..g.dim {
            actions[alg.index(a, q)] = il.kron(&v.actions[a]).kron(&ir);
        }
    }
    Ok(FiniteModule { algebra: AlgebraRef::Truncated(alg.clone()), dim, actions })
}

/// Evaluation module over the algebra `target`. For an invariant algebra ψ
/// must be equivariant; evaluation happens at the canonical transversal.
pub fn evaluation_module(setting: &EmaSetting, psi: &PsiFunction, target: &AlgebraRef) -> Result<FiniteModule> {
    match target {
        AlgebraRef::Truncated(t) => evaluation_truncated(psi, t),
        AlgebraRef::Invariant(inv) => {
            if !psi.is_equivariant(&setting.gamma) {
                return Err(EmaError::Input(format!("{psi} is not equivariant")));
            }
            let quot = &inv.orbit.alg.quot;
            let mut eta = crate::coordalg::EtaFunction::new();
            for x in canonical_transversal(psi, &setting.gamma) {
                let i = quot.point_index(&x).ok_or_else(|| {
                    EmaError::Input(format!("the truncation does not cover the support point {x}"))
                })?;
                eta.insert(x, quot.exps[i]);
            }
            let iso = setting.restriction(inv, &eta)?;
            let local = PsiFunction::new(eta.keys().map(|x| (x.clone(), psi.values[x].clone())), false);
            evaluation_truncated(&local, &iso.target)?.pullback(target.clone(), &iso.matrix)
        }
    }
}
