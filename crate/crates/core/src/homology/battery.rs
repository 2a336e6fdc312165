//! The finite window of the Hom/Ext vanishing criterion for twisted Weyl
//! modules: all φ of smaller height must have Hom and Ext¹ equal to zero.

use std::collections::BTreeMap;

use crate::coordalg::Point;
use crate::ema::EmaSetting;
use crate::error::{EmaError, Result};
use crate::foundations::Rat;
use crate::liealg::GammaGroup;
use crate::repmod::{
    evaluation_module, hom_space, is_maximal_weight, multiplicities, psi_gamma, AlgebraRef, FiniteModule,
    PsiFunction,
};
use crate::rootdata::{RootDatum, Weight};

use super::ext1_ladder;

#[derive(Clone, Debug)]
pub struct BatteryEntry {
    pub phi: PsiFunction,
    pub height: Rat,
    pub hom_dim: usize,
    /// (exponent, dim Ext¹) per rung.
    pub ext: Vec<(u32, usize)>,
}

impl BatteryEntry {
    pub fn vanishes(&self) -> bool {
        self.hom_dim == 0 && self.ext.iter().all(|(_, d)| *d == 0)
    }
}

#[derive(Clone, Debug)]
pub struct BatteryReport {
    pub psi: PsiFunction,
    pub bound: i64,
    pub rungs: usize,
    pub entries: Vec<BatteryEntry>,
    pub pass: bool,
}

fn dominant_weights(rank: usize, bound: i64) -> Vec<Weight> {
    let mut out = vec![vec![]];
    for _ in 0..rank {
        out = out
            .into_iter()
            .flat_map(|w: Vec<i64>| {
                (0..=bound).map(move |c| {
                    let mut w = w.clone();
                    w.push(c);
                    w
                })
            })
            .collect();
    }
    out.into_iter().map(Weight::new).collect()
}

/// Equivariant φ supported on the given orbits with fundamental coordinates
/// at most `bound` and height below `below` when given, ordered by height
/// then φ.
pub fn candidate_functions(
    orbits: &[Point],
    datum: &RootDatum,
    group: &GammaGroup,
    bound: i64,
    below: Option<&Rat>,
) -> Result<Vec<PsiFunction>> {
    let weights = dominant_weights(datum.n, bound);
    let mut choices: Vec<Vec<(Point, Weight)>> = vec![vec![]];
    for rep in orbits {
        choices = choices
            .into_iter()
            .flat_map(|c| {
                weights.iter().map(move |w| {
                    let mut c = c.clone();
                    c.push((rep.clone(), w.clone()));
                    c
                })
            })
            .collect();
    }
    let mut out = BTreeMap::new();
    for c in choices {
        let phi = psi_gamma(&PsiFunction::new(c, false), group)?;
        let h = phi.height(datum, group);
        if below.is_none_or(|b| &h < b) {
            out.insert((h, phi), ());
        }
    }
    Ok(out.into_keys().map(|(_, phi)| phi).collect())
}

/// Support orbits of the algebra a module over invariants is defined on.
fn module_orbits(m: &FiniteModule) -> Result<Vec<Point>> {
    match &m.algebra {
        AlgebraRef::Invariant(inv) => Ok(inv.orbit.orbits.iter().map(|o| o[0].clone()).collect()),
        AlgebraRef::Truncated(_) => {
            Err(EmaError::AlgebraMismatch("the battery expects a module over an invariant algebra".into()))
        }
    }
}

/// Checks the maximal weight hypothesis, then computes Hom and the Ext¹
/// ladder against V_Γ(φ) for every candidate φ of smaller height.
pub fn characterization_battery(
    setting: &EmaSetting,
    m: &FiniteModule,
    psi: &PsiFunction,
    bound: i64,
    rungs: usize,
) -> Result<BatteryReport> {
    let datum = &setting.g.datum;
    let group = &setting.gamma;
    let table = multiplicities(setting, m)?;
    if !is_maximal_weight(&table, psi, datum, group) {
        return Err(EmaError::Hypothesis(format!("the module is not of maximal weight {psi}")));
    }
    let orbits = module_orbits(m)?;
    let mut entries = Vec::new();
    for phi in candidate_functions(&orbits, datum, group, bound, Some(&psi.height(datum, group)))? {
        let v = evaluation_module(setting, &phi, &m.algebra)?;
        let hom_dim = hom_space(m, &v)?.len();
        let ladder = ext1_ladder(setting, m, &v, rungs)?;
        entries.push(BatteryEntry { height: phi.height(datum, group), phi, hom_dim, ext: ladder.rungs });
    }
    let pass = entries.iter().all(BatteryEntry::vanishes);
    Ok(BatteryReport { psi: psi.clone(), bound, rungs, entries, pass })
}
