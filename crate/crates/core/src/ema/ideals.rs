//! Ideal identities inside truncated invariant algebras and annihilators of modules.

use crate::coordalg::{orbit_saturate, EtaFunction, Point};
use crate::error::{EmaError, Result};
use crate::foundations::sparse::sparse_from_dense;
use crate::foundations::{FieldElement as F, Matrix, Subspace};
use crate::repmod::{composition_length, multiplicities, AlgebraRef, FiniteModule};

use super::invariant::InvariantAlgebra;
use super::EmaSetting;

/// P(g ⊗ {jets of degree ≥ min(p)}) in invariant coordinates; points
/// missing from `min` are unconstrained.
fn filtered_invariants(setting: &EmaSetting, inv: &InvariantAlgebra, min: &EtaFunction) -> Subspace {
    let alg = &inv.orbit.alg;
    let mins: Vec<u32> = alg.quot.points.iter().map(|p| min.get(p).copied().unwrap_or(0)).collect();
    let mut s = Subspace::zero(inv.dim);
    for i in alg.filtered_basis(|p| mins[p]) {
        s.insert(&sparse_from_dense(&setting.average(inv, &vec![(i, F::one())])));
    }
    s
}

fn ambient_eta(setting: &EmaSetting, ideal: &EtaFunction, exponent: u32) -> Result<EtaFunction> {
    let sat = orbit_saturate(ideal, &setting.gamma)?;
    Ok(sat.keys().map(|p| (p.clone(), exponent)).collect())
}

/// ((g⊗I)^Γ)^m = (g⊗I^m)^Γ inside the invariants of the orbit truncation at
/// exponent `ambient` on the orbits of Supp I.
pub fn power_ideal_check(setting: &EmaSetting, ideal: &EtaFunction, m: u32, ambient: u32) -> Result<bool> {
    let e = ideal.values().copied().max().unwrap_or(0);
    if m == 0 {
        return Err(EmaError::Input("the power must be positive".into()));
    }
    if ambient <= m * e {
        return Err(EmaError::AmbientTooSmall(format!(
            "ambient exponent {ambient} must exceed {m} · {e}"
        )));
    }
    let inv = setting.invariant(&ambient_eta(setting, ideal, ambient)?)?;
    let sat = orbit_saturate(ideal, &setting.gamma)?;
    let l1 = filtered_invariants(setting, &inv, &sat);
    let mut power = l1.clone();
    for _ in 1..m {
        let mut next = Subspace::zero(inv.dim);
        for x in l1.basis() {
            for y in power.basis() {
                next.insert(&inv.bracket(x, y));
            }
        }
        power = next;
    }
    let sat_m: EtaFunction = sat.iter().map(|(p, &k)| (p.clone(), k * m)).collect();
    let rhs = filtered_invariants(setting, &inv, &sat_m);
    Ok(power == rhs)
}

/// (g⊗I_η)^Γ = (g⊗Ĩ_η)^Γ inside the invariants of the orbit truncation at
/// exponent `ambient`, for Supp η in X_*.
pub fn ideal_equality(setting: &EmaSetting, eta: &EtaFunction, ambient: u32) -> Result<bool> {
    let support: Vec<Point> = eta.iter().filter(|(_, &e)| e > 0).map(|(p, _)| p.clone()).collect();
    crate::coordalg::require_xstar(&setting.gamma, &support)?;
    if eta.values().any(|&e| e > ambient) {
        return Err(EmaError::AmbientTooSmall(format!("ambient exponent {ambient} is below max η")));
    }
    let inv = setting.invariant(&ambient_eta(setting, eta, ambient)?)?;
    let alg = &inv.orbit.alg;
    // invariant elements vanishing to order η(p) at the points of Supp η only
    let rows: Vec<usize> = (0..alg.dim)
        .filter(|&i| {
            let (_, q) = alg.split(i);
            let (p, _) = alg.quot.locate(q);
            eta.get(&alg.quot.points[p]).is_some_and(|&e| alg.quot.degree(q) < e)
        })
        .collect();
    let mut m = Matrix::zeros(rows.len(), inv.dim);
    for b in 0..inv.dim {
        for (i, c) in inv.basis_vector(b) {
            if let Ok(r) = rows.binary_search(i) {
                m[(r, b)] = c.clone();
            }
        }
    }
    let lhs = Subspace::from_dense(inv.dim, &m.nullspace());
    let rhs = filtered_invariants(setting, &inv, &orbit_saturate(eta, &setting.gamma)?);
    Ok(lhs == rhs)
}

#[derive(Clone, Debug)]
pub struct AnnihilatorReport {
    /// η = n·ν, orbit-saturated for modules over invariants.
    pub eta: EtaFunction,
    pub nu: EtaFunction,
    pub composition_length: usize,
    /// Every basis element of (g ⊗ Ĩ_η)^Γ, truncated to the module's algebra, acts by zero.
    pub verified: bool,
}

/// η = n·ν where ν counts, at each point, the composition factors whose
/// support contains it and n is the composition length.
pub fn annihilator_eta(setting: &EmaSetting, module: &FiniteModule) -> Result<AnnihilatorReport> {
    let table = multiplicities(setting, module)?;
    let n = composition_length(&table) as u32;
    let mut nu = EtaFunction::new();
    for psi in table.keys() {
        for p in psi.values.keys() {
            *nu.entry(p.clone()).or_insert(0) += 1;
        }
    }
    let eta: EtaFunction = nu.iter().map(|(p, &k)| (p.clone(), n * k)).collect();
    let verified = match &module.algebra {
        AlgebraRef::Truncated(t) => {
            let mins: Vec<u32> = t.quot.points.iter().map(|p| eta.get(p).copied().unwrap_or(0)).collect();
            t.filtered_basis(|p| mins[p]).into_iter().all(|i| module.actions[i].is_zero())
        }
        AlgebraRef::Invariant(inv) => {
            let s = filtered_invariants(setting, inv, &eta);
            s.basis().iter().all(|v| module.act(v).is_zero())
        }
    };
    Ok(AnnihilatorReport { eta, nu, composition_length: n as usize, verified })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::ema::constant_eta;
    use crate::ema::tests::sl2_z2;

    #[test]
    fn power_ideal_sl2() {
        let s = sl2_z2();
        let ideal = constant_eta(&[Point::from_ints(&[1])], 1);
        for m in 1..=3 {
            assert!(power_ideal_check(&s, &ideal, m, 2 * m + 1).unwrap());
        }
        assert!(matches!(power_ideal_check(&s, &ideal, 2, 2), Err(EmaError::AmbientTooSmall(_))));
    }

    #[test]
    fn ideal_equality_sl2() {
        let s = sl2_z2();
        for e in [1, 2] {
            let eta = constant_eta(&[Point::from_ints(&[1])], e);
            assert!(ideal_equality(&s, &eta, 5).unwrap());
        }
    }
}
