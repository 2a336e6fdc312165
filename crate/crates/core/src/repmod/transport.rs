//! Twisting and untwisting between truncated and invariant algebras, and
//! transport to larger truncations.

use std::sync::Arc;

use crate::coordalg::{require_xstar, EtaFunction, Point};
use crate::ema::{EmaSetting, InvariantAlgebra, TruncatedAlgebra};
use crate::error::{EmaError, Result};
use crate::foundations::sparse::sparse_from_dense;

use super::module::{AlgebraRef, FiniteModule};

/// T: restrict a module over g ⊗ A/I_η to the invariants through ev^Γ.
pub fn twist(setting: &EmaSetting, m: &FiniteModule) -> Result<FiniteModule> {
    let AlgebraRef::Truncated(t) = &m.algebra else {
        return Err(EmaError::AlgebraMismatch("twist expects a module over a truncated algebra".into()));
    };
    let iso = setting.ev_gamma_iso(&t.eta())?;
    m.pullback(AlgebraRef::Invariant(iso.source.clone()), &iso.matrix)
}

/// One point from each orbit of the algebra's support.
pub fn algebra_transversal(inv: &InvariantAlgebra) -> Vec<Point> {
    inv.orbit.orbits.iter().map(|o| o[0].clone()).collect()
}

/// U_x: transport a module over the invariants to g ⊗ A/I over the points
/// of x, keeping the exponents of the source algebra.
pub fn untwist(setting: &EmaSetting, m: &FiniteModule, transversal: &[Point]) -> Result<FiniteModule> {
    let AlgebraRef::Invariant(inv) = &m.algebra else {
        return Err(EmaError::AlgebraMismatch("untwist expects a module over an invariant algebra".into()));
    };
    require_xstar(&setting.gamma, transversal).map_err(|e| EmaError::InvalidTransversal(e.to_string()))?;
    let quot = &inv.orbit.alg.quot;
    let mut eta = EtaFunction::new();
    for x in transversal {
        let i = quot
            .point_index(x)
            .ok_or_else(|| EmaError::InvalidTransversal(format!("{x} is outside the algebra's support")))?;
        eta.insert(x.clone(), quot.exps[i]);
    }
    let iso = setting.restriction(inv, &eta)?;
    for k in &iso.kernel {
        if !m.act(&sparse_from_dense(k)).is_zero() {
            return Err(EmaError::SupportEscapes(format!(
                "the module is not supported on the orbits of {}",
                transversal.iter().map(|p| p.to_string()).collect::<Vec<_>>().join(", ")
            )));
        }
    }
    m.pullback(AlgebraRef::Truncated(iso.target.clone()), &iso.inverse)
}

/// Pullback along the projection from a larger truncation.
pub fn transport_truncated(m: &FiniteModule, target: &Arc<TruncatedAlgebra>) -> Result<FiniteModule> {
    let AlgebraRef::Truncated(t) = &m.algebra else {
        return Err(EmaError::AlgebraMismatch("expected a module over a truncated algebra".into()));
    };
    for (p, &e) in t.quot.points.iter().zip(&t.quot.exps) {
        match target.quot.point_index(p) {
            Some(i) if target.quot.exps[i] >= e => {}
            _ => return Err(EmaError::AlgebraMismatch(format!("{} does not cover {p}^{e}", target.key()))),
        }
    }
    m.pullback(AlgebraRef::Truncated(target.clone()), &target.projection_to(t))
}

pub fn transport_invariant(m: &FiniteModule, target: &Arc<InvariantAlgebra>) -> Result<FiniteModule> {
    let AlgebraRef::Invariant(inv) = &m.algebra else {
        return Err(EmaError::AlgebraMismatch("expected a module over an invariant algebra".into()));
    };
    let quot = &inv.orbit.alg.quot;
    for (p, &e) in quot.points.iter().zip(&quot.exps) {
        let tq = &target.orbit.alg.quot;
        match tq.point_index(p) {
            Some(i) if tq.exps[i] >= e => {}
            _ => return Err(EmaError::AlgebraMismatch(format!("{} does not cover {p}^{e}", target.key()))),
        }
    }
    let phi = target
        .projection_to(inv)
        .ok_or_else(|| EmaError::Certification("projection leaves the invariants".into()))?;
    m.pullback(AlgebraRef::Invariant(target.clone()), &phi)
}

/// Transport to whichever kind of algebra `target` is, when compatible.
pub fn transport(m: &FiniteModule, target: &AlgebraRef) -> Result<FiniteModule> {
    match target {
        AlgebraRef::Truncated(t) => transport_truncated(m, t),
        AlgebraRef::Invariant(i) => transport_invariant(m, i),
    }
}

/// The smallest common exponent function dominating both.
pub fn eta_max(a: &EtaFunction, b: &EtaFunction) -> EtaFunction {
    let mut out = a.clone();
    for (p, &e) in b {
        let slot = out.entry(p.clone()).or_insert(0);
        *slot = (*slot).max(e);
    }
    out
}

/// The exponent function an algebra is truncated at.
pub fn algebra_eta(a: &AlgebraRef) -> EtaFunction {
    match a {
        AlgebraRef::Truncated(t) => t.eta(),
        AlgebraRef::Invariant(i) => i.orbit.alg.eta(),
    }
}

/// The smallest algebra of the same kind covering both.
pub fn common_algebra(setting: &EmaSetting, a: &AlgebraRef, b: &AlgebraRef) -> Result<AlgebraRef> {
    if a.is_invariant() != b.is_invariant() {
        return Err(EmaError::AlgebraMismatch("cannot combine modules over truncated and invariant algebras".into()));
    }
    let eta = eta_max(&algebra_eta(a), &algebra_eta(b));
    Ok(if a.is_invariant() {
        AlgebraRef::Invariant(setting.invariant(&eta)?)
    } else {
        AlgebraRef::Truncated(setting.truncated(&eta))
    })
}
