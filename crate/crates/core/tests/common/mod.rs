#![allow(dead_code)]

pub mod oracle;

use std::path::PathBuf;
use std::process::Command;

pub struct Case {
    pub name: &'static str,
    pub args: &'static [&'static str],
    pub max_dim: Option<&'static str>,
    pub exit: i32,
}

const fn case(name: &'static str, args: &'static [&'static str], exit: i32) -> Case {
    Case { name, args, max_dim: None, exit }
}

/// Every fixture scenario/command pair with a stored golden report.
pub const CASES: &[Case] = &[
    case("validate_std", &["validate", "std.scn"], 0),
    case("validate_std2", &["validate", "std2.scn"], 0),
    case("validate_sl3flip", &["validate", "sl3flip.scn"], 0),
    case("validate_bad_xstar", &["validate", "bad_xstar.scn"], 1),
    case("validate_noncommuting", &["validate", "noncommuting.scn"], 1),
    case("validate_malformed", &["validate", "malformed.scn"], 2),
    case("validate_missing", &["validate", "absent.scn"], 2),
    case("weyl_std_psi2w", &["weyl", "std.scn", "psi2w"], 0),
    case("weyl_std_psi2w_machine", &["--format", "machine", "weyl", "std.scn", "psi2w"], 0),
    case("weyl_std_at1", &["weyl", "std.scn", "at1"], 0),
    case("weyl_sl3flip_adj", &["weyl", "sl3flip.scn", "adj"], 0),
    Case { name: "weyl_sl3flip_budget", args: &["weyl", "sl3flip.scn", "adj"], max_dim: Some("5"), exit: 1 },
    case("weyl_unknown_psi", &["weyl", "std.scn", "nope"], 2),
    case("twist_std_psi2w", &["twist", "std.scn", "psi2w"], 0),
    case("twist_std2_both", &["twist", "std2.scn", "both"], 0),
    case("twist_std2_both_a", &["twist", "std2.scn", "both", "--transversal", "a"], 0),
    case("twist_sl3flip_nat", &["twist", "sl3flip.scn", "nat"], 0),
    case("irreps_std", &["irreps", "std.scn", "--bound", "1"], 0),
    case("irreps_std2", &["irreps", "std2.scn", "--bound", "1"], 0),
    case("irreps_sl3flip", &["irreps", "sl3flip.scn", "--bound", "1"], 0),
    case("mult_std_head_sum", &["mult", "std.scn", "head(W(psi2w)) + V(zero)"], 0),
    case("mult_std2_tensor", &["mult", "std2.scn", "W(left) * W(right)"], 0),
    case("mult_bad_expr", &["mult", "std.scn", "W(psi2w"], 2),
    case("ext_std_psi2w", &["ext", "std.scn", "psi2w", "--rungs", "3", "--bound", "2"], 0),
    case("battery_std_psi2w", &["battery", "std.scn", "psi2w"], 0),
    case("battery_std_head", &["battery", "std.scn", "psi2w", "--module", "head(W(psi2w))"], 1),
    case("battery_std_padded", &["battery", "std.scn", "psi2w", "--module", "head(W(psi2w)) + V(zero)"], 1),
    case("battery_std_hypothesis", &["battery", "std.scn", "psi2w", "--module", "V(zero)"], 1),
    case("battery_sl3flip_nat", &["battery", "sl3flip.scn", "nat"], 0),
];

pub fn fixtures() -> PathBuf {
    PathBuf::from(env!("CARGO_MANIFEST_DIR")).join("fixtures")
}

/// Runs the binary from the fixture directory; returns the exit code and
/// stdout followed by stderr.
pub fn run(case: &Case) -> (i32, String) {
    let mut cmd = Command::new(env!("CARGO_BIN_EXE_ema-weyl"));
    cmd.args(case.args).current_dir(fixtures()).env_remove("EMA_WEYL_MAX_DIM");
    if let Some(d) = case.max_dim {
        cmd.env("EMA_WEYL_MAX_DIM", d);
    }
    let out = cmd.output().expect("binary runs");
    let mut text = String::from_utf8(out.stdout).expect("utf-8 stdout");
    text.push_str(&String::from_utf8(out.stderr).expect("utf-8 stderr"));
    (out.status.code().unwrap_or(-1), text)
}

pub fn golden_path(case: &Case) -> PathBuf {
    fixtures().join("golden").join(format!("{}.txt", case.name))
}

/// Checks one case: expected exit code, byte equality across two runs and
/// against the stored report. With UPDATE_GOLDEN=1 the report is rewritten.
pub fn check_golden(case: &Case) -> Result<(), String> {
    let (code, first) = run(case);
    let (code2, second) = run(case);
    if code != case.exit || code2 != case.exit {
        return Err(format!("{}: exit {code}/{code2}, expected {}", case.name, case.exit));
    }
    if first != second {
        return Err(format!("{}: output differs between runs", case.name));
    }
    let path = golden_path(case);
    if std::env::var("UPDATE_GOLDEN").as_deref() == Ok("1") {
        std::fs::write(&path, &first).map_err(|e| e.to_string())?;
        return Ok(());
    }
    let stored = std::fs::read_to_string(&path).map_err(|e| format!("{}: {e}", path.display()))?;
    if stored != first {
        return Err(format!("{}: output differs from {}", case.name, path.display()));
    }
    Ok(())
}
