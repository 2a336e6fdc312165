//! Scenario files: JSON documents describing g, Γ, named points and named
//! functions ψ.

use std::collections::BTreeMap;
use std::sync::Arc;

use num_integer::Integer;
use serde::Deserialize;
use sha2::{Digest, Sha256};

use crate::coordalg::{require_xstar, validate_free_and_xstar, Point};
use crate::ema::EmaSetting;
use crate::error::{EmaError, Result};
use crate::foundations::FieldElement as F;
use crate::liealg::{ChevalleyAlgebra, GammaGroup, GeneratorSpec};
use crate::repmod::PsiFunction;
use crate::rootdata::{DiagramSymmetry, Weight};

#[derive(Clone, Debug, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct ScenarioFile {
    pub name: String,
    /// "A1", "A2" or "A3".
    pub lie_type: String,
    pub num_variables: usize,
    #[serde(default)]
    pub cyclotomic_order: Option<u32>,
    #[serde(default)]
    pub gamma: Vec<GeneratorEntry>,
    pub points: BTreeMap<String, Vec<Scalar>>,
    #[serde(default)]
    pub transversals: BTreeMap<String, Vec<String>>,
    #[serde(default)]
    pub psi: BTreeMap<String, PsiEntry>,
}

#[derive(Clone, Debug, Deserialize)]
#[serde(untagged)]
pub enum Scalar {
    Int(i64),
    Text(String),
}

#[derive(Clone, Debug, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct GeneratorEntry {
    pub order: u32,
    /// Powers of a primitive `order`-th root of unity, one per coordinate.
    pub point_scaling: Vec<i64>,
    #[serde(default)]
    pub automorphism: AutomorphismEntry,
}

#[derive(Clone, Debug, Default, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct AutomorphismEntry {
    /// "identity" (default) or "flip".
    #[serde(default)]
    pub diagram: Option<String>,
    /// Powers of the generator's root of unity by which the simple root
    /// vectors are scaled; defaults to all zero.
    #[serde(default)]
    pub torus: Vec<i64>,
}

#[derive(Clone, Debug, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct PsiEntry {
    #[serde(default)]
    pub equivariant: bool,
    pub values: BTreeMap<String, Vec<i64>>,
}

/// Parses the file text; JSON errors carry line and column.
pub fn parse(text: &str) -> Result<ScenarioFile> {
    serde_json::from_str(text).map_err(|e| EmaError::Parse(format!("scenario: {e}")))
}

pub fn digest(text: &str) -> String {
    hex::encode(Sha256::digest(text.as_bytes()))
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Check {
    pub name: String,
    pub ok: bool,
    pub detail: String,
}

impl Check {
    fn new(name: impl Into<String>, outcome: std::result::Result<String, String>) -> Self {
        match outcome {
            Ok(detail) => Check { name: name.into(), ok: true, detail },
            Err(detail) => Check { name: name.into(), ok: false, detail },
        }
    }
}

pub struct Scenario {
    pub file: ScenarioFile,
    pub setting: EmaSetting,
    pub points: BTreeMap<String, Point>,
    pub transversals: BTreeMap<String, Vec<Point>>,
    pub psi: BTreeMap<String, PsiFunction>,
}

impl Scenario {
    pub fn psi(&self, name: &str) -> Result<&PsiFunction> {
        self.psi.get(name).ok_or_else(|| EmaError::Input(format!("unknown function {name:?}")))
    }

    pub fn transversal(&self, name: &str) -> Result<&Vec<Point>> {
        self.transversals.get(name).ok_or_else(|| EmaError::Input(format!("unknown transversal {name:?}")))
    }

    /// One representative per orbit met by the named points.
    pub fn orbit_representatives(&self) -> Vec<Point> {
        let mut reps: Vec<Point> =
            self.points.values().map(|p| p.orbit_representative(&self.setting.gamma)).collect();
        reps.sort();
        reps.dedup();
        reps
    }
}

fn rank_of(lie_type: &str) -> Result<usize> {
    let n = lie_type
        .strip_prefix('A')
        .and_then(|s| s.parse::<usize>().ok())
        .ok_or_else(|| EmaError::Input(format!("unsupported Lie type {lie_type:?}")))?;
    if !(1..=3).contains(&n) {
        return Err(EmaError::RankOutOfRange(n + 1));
    }
    Ok(n)
}

fn diagram(s: &Option<String>) -> Result<DiagramSymmetry> {
    match s.as_deref() {
        None | Some("identity") => Ok(DiagramSymmetry::Identity),
        Some("flip") => Ok(DiagramSymmetry::Flip),
        Some(other) => Err(EmaError::Input(format!("unknown diagram symmetry {other:?}"))),
    }
}

fn scalar(s: &Scalar, m: u32) -> Result<F> {
    match s {
        Scalar::Int(k) => Ok(F::int(*k)),
        Scalar::Text(t) => F::parse_with_order(t, m),
    }
}

/// Checks that only depend on the file: ranks, names and weights. Failures
/// here are input errors.
fn structural(file: &ScenarioFile) -> Result<(usize, u32)> {
    let n = rank_of(&file.lie_type)?;
    if file.num_variables == 0 {
        return Err(EmaError::Input("num_variables must be positive".into()));
    }
    let lcm = file.gamma.iter().fold(1u32, |acc, g| acc.lcm(&g.order.max(1)));
    let m = file.cyclotomic_order.unwrap_or(2 * lcm);
    for (name, coords) in &file.points {
        if coords.len() != file.num_variables {
            return Err(EmaError::Input(format!("point {name:?} has {} coordinates", coords.len())));
        }
    }
    for (name, members) in &file.transversals {
        for p in members {
            if !file.points.contains_key(p) {
                return Err(EmaError::Input(format!("transversal {name:?} names unknown point {p:?}")));
            }
        }
    }
    for (name, entry) in &file.psi {
        for (p, w) in &entry.values {
            if !file.points.contains_key(p) {
                return Err(EmaError::Input(format!("function {name:?} names unknown point {p:?}")));
            }
            if w.len() != n {
                return Err(EmaError::Input(format!("function {name:?} has a weight of length {} at {p:?}", w.len())));
            }
        }
    }
    Ok((n, m))
}

/// Builds the scenario and runs every validator. The scenario is returned
/// only when all checks pass.
pub fn build(file: ScenarioFile) -> Result<(Option<Scenario>, Vec<Check>)> {
    let (n, m) = structural(&file)?;
    let mut checks = Vec::new();
    let g = Arc::new(ChevalleyAlgebra::build_sl(n + 1)?);
    checks.push(Check::new("lie type", Ok(format!("sl_{} (type {}), cyclotomic order {m}", n + 1, file.lie_type))));
    let mut specs = Vec::new();
    for entry in &file.gamma {
        let torus = if entry.automorphism.torus.is_empty() { vec![0; n] } else { entry.automorphism.torus.clone() };
        if torus.len() != n {
            return Err(EmaError::Input(format!("torus part has length {}, expected {n}", torus.len())));
        }
        specs.push(GeneratorSpec {
            order: entry.order,
            scaling: entry.point_scaling.clone(),
            tau: diagram(&entry.automorphism.diagram)?,
            torus,
        });
    }
    let group = match GammaGroup::build(&g, m, file.num_variables, &specs) {
        Ok(group) => {
            checks.push(Check::new("automorphisms", Ok(format!("{} generator(s) of finite order", specs.len()))));
            checks.push(Check::new("commutativity", Ok(format!("group of order {}", group.order()))));
            group
        }
        Err(EmaError::NonCommuting(a, b)) => {
            checks.push(Check::new("automorphisms", Ok("each generator has the declared order".into())));
            checks.push(Check::new("commutativity", Err(format!("generators {} and {} do not commute", a + 1, b + 1))));
            return Ok((None, checks));
        }
        Err(e @ EmaError::Input(_)) => return Err(e),
        Err(e) => {
            checks.push(Check::new("automorphisms", Err(e.to_string())));
            return Ok((None, checks));
        }
    };
    let group = Arc::new(group);
    let mut points = BTreeMap::new();
    for (name, coords) in &file.points {
        let c = coords.iter().map(|s| scalar(s, m)).collect::<Result<Vec<_>>>()?;
        let p = Point::new(c).map_err(|e| EmaError::Input(format!("point {name:?}: {e}")))?;
        points.insert(name.clone(), p);
    }
    let all: Vec<Point> = points.values().cloned().collect();
    let report = validate_free_and_xstar(&group, &all);
    checks.push(Check::new(
        "free action",
        if report.free {
            Ok("every nontrivial element moves every point".into())
        } else {
            Err(format!("elements with fixed points: {:?}", report.fixed_point_elements))
        },
    ));
    let mut transversals = BTreeMap::new();
    for (name, members) in &file.transversals {
        let pts: Vec<Point> = members.iter().map(|p| points[p].clone()).collect();
        checks.push(Check::new(
            format!("transversal {name}"),
            require_xstar(&group, &pts).map(|_| "one point per orbit".to_string()).map_err(|e| e.to_string()),
        ));
        transversals.insert(name.clone(), pts);
    }
    let mut psi = BTreeMap::new();
    for (name, entry) in &file.psi {
        let values = entry.values.iter().map(|(p, w)| (points[p].clone(), Weight::new(w.clone())));
        let f = PsiFunction::new(values, entry.equivariant);
        let dominant = f.values.values().all(Weight::is_dominant);
        checks.push(Check::new(
            format!("psi {name} dominant"),
            if dominant { Ok(f.to_string()) } else { Err(format!("{f} has a non-dominant value")) },
        ));
        if entry.equivariant {
            checks.push(Check::new(
                format!("psi {name} equivariant"),
                if f.is_equivariant(&group) {
                    Ok(format!("{} support orbit(s)", f.support_orbits(&group).len()))
                } else {
                    Err(format!("{f} is not Γ-equivariant"))
                },
            ));
        }
        psi.insert(name.clone(), f);
    }
    if checks.iter().any(|c| !c.ok) {
        return Ok((None, checks));
    }
    let setting = EmaSetting::new(g, group, file.num_variables);
    Ok((Some(Scenario { file, setting, points, transversals, psi }), checks))
}
