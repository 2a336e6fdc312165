//! Twisted local Weyl modules W_Γ(ψ) = T(W(ψ_x)) and the checks relating
//! them to their untwisted counterparts.

use crate::coordalg::{EtaFunction, Point};
use crate::ema::EmaSetting;
use crate::error::{EmaError, Result};
use crate::liealg::GammaGroup;
use crate::repmod::{
    canonical_transversal, is_isomorphic, psi_restrict, transport, twist, AlgebraRef, FiniteModule, PsiFunction,
};

use super::{weyl_module, WeylModule, WeylOptions};

#[derive(Clone, Debug)]
pub struct TwistedWeyl {
    pub psi: PsiFunction,
    pub transversal: Vec<Point>,
    pub untwisted: WeylModule,
    /// The module over the invariant algebra.
    pub module: FiniteModule,
}

fn require_equivariant(psi: &PsiFunction, group: &GammaGroup) -> Result<()> {
    if !psi.equivariant || !psi.is_equivariant(group) {
        return Err(EmaError::Input(format!("{psi} is not an equivariant function")));
    }
    Ok(())
}

/// W_Γ(ψ) built from the transversal `x`.
pub fn twisted_weyl(setting: &EmaSetting, psi: &PsiFunction, x: &[Point], opts: &WeylOptions) -> Result<TwistedWeyl> {
    require_equivariant(psi, &setting.gamma)?;
    let local = psi_restrict(psi, x, &setting.gamma)?;
    let untwisted = weyl_module(setting, &local, opts)?;
    let module = twist(setting, &untwisted.module)?;
    Ok(TwistedWeyl { psi: psi.clone(), transversal: x.to_vec(), untwisted, module })
}

/// Every choice of one point per support orbit.
pub fn all_transversals(psi: &PsiFunction, group: &GammaGroup) -> Vec<Vec<Point>> {
    let mut out: Vec<Vec<Point>> = vec![vec![]];
    for rep in psi.support_orbits(group) {
        let mut orbit = rep.orbit(group);
        orbit.sort();
        orbit.dedup();
        out = out
            .into_iter()
            .flat_map(|t| {
                orbit.iter().map(move |p| {
                    let mut t = t.clone();
                    t.push(p.clone());
                    t
                })
            })
            .collect();
    }
    out
}

/// W_Γ(ψ) does not depend on the transversal: all choices are isomorphic.
pub fn check_choice_independence(setting: &EmaSetting, psi: &PsiFunction, opts: &WeylOptions) -> Result<bool> {
    let mut modules = Vec::new();
    for x in all_transversals(psi, &setting.gamma) {
        modules.push(twisted_weyl(setting, psi, &x, opts)?.module);
    }
    for m in &modules[1..] {
        if !is_isomorphic(&modules[0], m)? {
            return Ok(false);
        }
    }
    Ok(true)
}

/// Pulls a module over g ⊗ A/I supported on x back to γ·x along
/// z ↦ γ^{-1}·z.
pub fn gamma_pullback(setting: &EmaSetting, m: &FiniteModule, gamma: usize) -> Result<FiniteModule> {
    let AlgebraRef::Truncated(t) = &m.algebra else {
        return Err(EmaError::AlgebraMismatch("γ-pullback expects a module over a truncated algebra".into()));
    };
    let group = &setting.gamma;
    let eta = t.eta();
    let moved: EtaFunction = eta.iter().map(|(p, &e)| (p.act(group, gamma), e)).collect();
    let orbit = setting.invariant(&eta)?.orbit.clone();
    let target = setting.truncated(&moved);
    let to_x = orbit.alg.projection_to(t);
    let from_gx = orbit.alg.projection_to(&target).transpose();
    let act = orbit.action[group.inverse(gamma)].to_dense();
    let phi = to_x.mul(&act).mul(&from_gx);
    m.pullback(AlgebraRef::Truncated(target), &phi)
}

/// ρ_{W(ψ_x)} ∘ γ^{-1} ≅ ρ_{W(ψ_{γx})}.
pub fn check_gamma_twist(
    setting: &EmaSetting,
    psi: &PsiFunction,
    x: &[Point],
    gamma: usize,
    opts: &WeylOptions,
) -> Result<bool> {
    require_equivariant(psi, &setting.gamma)?;
    let group = &setting.gamma;
    let here = weyl_module(setting, &psi_restrict(psi, x, group)?, opts)?;
    let moved: Vec<Point> = x.iter().map(|p| p.act(group, gamma)).collect();
    let there = weyl_module(setting, &psi_restrict(psi, &moved, group)?, opts)?;
    let pulled = gamma_pullback(setting, &here.module, gamma)?;
    is_isomorphic(&pulled, &there.module)
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct TensorReport {
    pub dim_sum: usize,
    pub dim_left: usize,
    pub dim_right: usize,
    pub isomorphic: bool,
}

/// W(ψ + ψ′) ≅ W(ψ) ⊗ W(ψ′), twisted when both functions are equivariant.
pub fn tensor_check(setting: &EmaSetting, a: &PsiFunction, b: &PsiFunction, opts: &WeylOptions) -> Result<TensorReport> {
    let group = &setting.gamma;
    if a.equivariant != b.equivariant {
        return Err(EmaError::Input("cannot mix equivariant and plain functions".into()));
    }
    let twisted = a.equivariant;
    if twisted {
        require_equivariant(a, group)?;
        require_equivariant(b, group)?;
        let oa = a.support_orbits(group);
        if let Some(p) = b.support_orbits(group).iter().find(|p| oa.contains(p)) {
            return Err(EmaError::OverlappingSupport(format!("both functions meet the orbit of {p}")));
        }
    }
    let sum = a.disjoint_sum(b)?;
    let build = |psi: &PsiFunction| -> Result<FiniteModule> {
        if twisted {
            Ok(twisted_weyl(setting, psi, &canonical_transversal(psi, group), opts)?.module)
        } else {
            Ok(weyl_module(setting, psi, opts)?.module)
        }
    };
    let whole = build(&sum)?;
    let part = |psi: &PsiFunction| -> Result<FiniteModule> {
        if psi.is_zero() {
            Ok(FiniteModule::trivial(whole.algebra.clone(), 1))
        } else {
            transport(&build(psi)?, &whole.algebra)
        }
    };
    let left = part(a)?;
    let right = part(b)?;
    let product = left.tensor(&right)?;
    Ok(TensorReport {
        dim_sum: whole.dim,
        dim_left: left.dim,
        dim_right: right.dim,
        isomorphic: is_isomorphic(&whole, &product)?,
    })
}
