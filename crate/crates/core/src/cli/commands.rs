//! The subcommands. Each returns human-readable lines, a JSON result and
//! whether every mathematical check held.

use serde_json::{json, Value};

use crate::error::{EmaError, Result};
use crate::foundations::Rat;
use crate::homology::{candidate_functions, characterization_battery, ext1_ladder};
use crate::repmod::{
    canonical_transversal, composition_length, dimension_sum, evaluation_module, hom_space, is_isomorphic,
    is_maximal_weight, multiplicities, psi_restrict, untwist, FiniteModule, MultiplicityTable, PsiFunction,
};
use crate::rootdata::Weight;
use crate::weyl::{
    all_transversals, check_gamma_twist, dimension_certificate, head, twisted_weyl, weyl_module, WeylOptions,
};

use super::expr::{eval, parse_expr};
use super::scenario::{Check, Scenario};

pub struct Outcome {
    pub lines: Vec<String>,
    pub data: Value,
    pub ok: bool,
}

/// Left-aligned columns separated by two spaces.
pub fn table(header: &[&str], rows: &[Vec<String>]) -> Vec<String> {
    let mut widths: Vec<usize> = header.iter().map(|h| h.chars().count()).collect();
    for r in rows {
        for (w, c) in widths.iter_mut().zip(r) {
            *w = (*w).max(c.chars().count());
        }
    }
    let fmt = |cells: Vec<String>| {
        let padded: Vec<String> =
            cells.iter().zip(&widths).map(|(c, w)| format!("{c}{}", " ".repeat(w - c.chars().count()))).collect();
        format!("  {}", padded.join("  ").trim_end())
    };
    let mut out = vec![fmt(header.iter().map(|h| h.to_string()).collect())];
    out.extend(rows.iter().map(|r| fmt(r.clone())));
    out
}

fn yes(b: bool) -> String {
    if b { "yes" } else { "no" }.to_string()
}

fn dims(ds: &[(u32, usize)]) -> String {
    ds.iter().map(|(_, d)| d.to_string()).collect::<Vec<_>>().join(" ")
}

pub fn validate(checks: &[Check]) -> Outcome {
    let rows: Vec<Vec<String>> = checks
        .iter()
        .map(|c| vec![c.name.clone(), if c.ok { "PASS" } else { "FAIL" }.to_string(), c.detail.clone()])
        .collect();
    let mut lines = vec!["validators:".to_string()];
    lines.extend(table(&["check", "result", "detail"], &rows));
    let data = json!({
        "checks": checks.iter().map(|c| json!({"name": c.name, "ok": c.ok, "detail": c.detail})).collect::<Vec<_>>(),
    });
    Outcome { lines, data, ok: checks.iter().all(|c| c.ok) }
}

fn composition_rows(sc: &Scenario, table: &MultiplicityTable) -> (Vec<Vec<String>>, Vec<Value>) {
    let datum = &sc.setting.g.datum;
    let group = &sc.setting.gamma;
    let mut entries: Vec<(&PsiFunction, &usize)> = table.iter().collect();
    entries.sort_by(|a, b| b.0.height(datum, group).cmp(&a.0.height(datum, group)).then(a.0.cmp(b.0)));
    let rows = entries
        .iter()
        .map(|(psi, n)| vec![psi.to_string(), n.to_string(), psi.height(datum, group).to_string()])
        .collect();
    let data = entries
        .iter()
        .map(|(psi, n)| json!({"psi": psi.to_string(), "mult": n, "height": psi.height(datum, group).to_string()}))
        .collect();
    (rows, data)
}

pub fn weyl(sc: &Scenario, name: &str, opts: &WeylOptions) -> Result<Outcome> {
    let s = &sc.setting;
    let psi = sc.psi(name)?;
    let (local, transversal, module, w) = if psi.equivariant {
        let x = canonical_transversal(psi, &s.gamma);
        let t = twisted_weyl(s, psi, &x, opts)?;
        (psi_restrict(psi, &x, &s.gamma)?, Some(x), t.module, t.untwisted)
    } else {
        let w = weyl_module(s, psi, opts)?;
        (psi.clone(), None, w.module.clone(), w)
    };
    let cert = dimension_certificate(s, &local, opts.max_dim)?;
    let table = multiplicities(s, &module)?;
    let maximal = is_maximal_weight(&table, psi, &s.g.datum, &s.gamma);
    let datum = &s.g.datum;
    let mut character: Vec<(Weight, usize)> = w.character().into_iter().collect();
    character.sort_by(|a, b| datum.height(&b.0).cmp(&datum.height(&a.0)).then(b.0.cmp(&a.0)));

    let mut lines = vec![format!("psi: {psi}")];
    if let Some(x) = &transversal {
        lines.push(format!("transversal: {}", x.iter().map(|p| p.to_string()).collect::<Vec<_>>().join(", ")));
        lines.push(format!("module: W_Γ(psi) = T(W({local}))"));
    } else {
        lines.push("module: W(psi)".to_string());
    }
    lines.push(format!("truncation exponent N: {}", w.exponent));
    lines.push(format!("PBW monomials within the buffer: {}", w.pbw_size));
    lines.push(format!("dimension: {}", module.dim));
    lines.push(format!(
        "dimension certificate (base, buffer+1, N+1, reversed order): {}",
        cert.iter().map(|d| d.to_string()).collect::<Vec<_>>().join(" ")
    ));
    lines.push(format!("certified: {}", w.certification.join("; ")));
    lines.push("g-character:".to_string());
    let rows: Vec<Vec<String>> = character.iter().map(|(wt, n)| vec![wt.to_string(), n.to_string()]).collect();
    lines.extend(table_lines(&["weight", "mult"], &rows));
    let (crows, cdata) = composition_rows(sc, &table);
    lines.push("composition factors:".to_string());
    lines.extend(table_lines(&["psi", "mult", "height"], &crows));
    lines.push(format!("maximal weight module of weight psi: {}", yes(maximal)));
    let stable = cert.iter().all(|&d| d == module.dim);
    let data = json!({
        "psi": psi.to_string(),
        "equivariant": psi.equivariant,
        "transversal": transversal.map(|x| x.iter().map(|p| p.to_string()).collect::<Vec<_>>()),
        "exponent": w.exponent,
        "pbw_size": w.pbw_size,
        "dim": module.dim,
        "certificate": cert.to_vec(),
        "certified": w.certification,
        "character": character.iter().map(|(wt, n)| json!({"weight": wt.to_string(), "mult": n})).collect::<Vec<_>>(),
        "composition": cdata,
        "maximal_weight": maximal,
    });
    Ok(Outcome { lines, data, ok: stable && maximal })
}

fn table_lines(header: &[&str], rows: &[Vec<String>]) -> Vec<String> {
    table(header, rows)
}

fn require_equivariant(psi: &PsiFunction) -> Result<()> {
    if !psi.equivariant {
        return Err(EmaError::Input(format!("{psi} is not declared equivariant")));
    }
    Ok(())
}

pub fn twist(sc: &Scenario, name: &str, transversal: Option<&str>, opts: &WeylOptions) -> Result<Outcome> {
    let s = &sc.setting;
    let psi = sc.psi(name)?;
    require_equivariant(psi)?;
    let choices = match transversal {
        Some(t) => vec![sc.transversal(t)?.clone()],
        None => all_transversals(psi, &s.gamma),
    };
    let mut built = Vec::new();
    let mut rows = Vec::new();
    let mut tdata = Vec::new();
    let mut ok = true;
    for x in &choices {
        let t = twisted_weyl(s, psi, x, opts)?;
        let identity = untwist(s, &t.module, x)?.actions == t.untwisted.module.actions;
        let iso = match built.first() {
            None => true,
            Some(first) => is_isomorphic(first, &t.module)?,
        };
        ok &= identity && iso;
        let label = x.iter().map(|p| p.to_string()).collect::<Vec<_>>().join(", ");
        rows.push(vec![label.clone(), t.module.dim.to_string(), yes(identity), yes(iso)]);
        tdata.push(json!({"transversal": label, "dim": t.module.dim, "untwist_identity": identity, "isomorphic_to_first": iso}));
        built.push(t.module);
    }
    let x0 = &choices[0];
    let mut grows = Vec::new();
    let mut gdata = Vec::new();
    for g in 0..s.gamma.order() {
        let holds = check_gamma_twist(s, psi, x0, g, opts)?;
        ok &= holds;
        let exps = format!("{:?}", s.gamma.elements[g].exps);
        grows.push(vec![exps.clone(), yes(holds)]);
        gdata.push(json!({"element": exps, "holds": holds}));
    }
    let mut lines = vec![format!("psi: {psi}"), "transversals:".to_string()];
    lines.extend(table(&["x", "dim W_Γ", "U_x T = id", "≅ first"], &rows));
    lines.push(format!(
        "γ-twist: W(psi_x) pulled back along γ^-1 against W(psi_γx), x = {}",
        x0.iter().map(|p| p.to_string()).collect::<Vec<_>>().join(", ")
    ));
    lines.extend(table(&["γ", "isomorphic"], &grows));
    let data = json!({"psi": psi.to_string(), "transversals": tdata, "gamma_twist": gdata});
    Ok(Outcome { lines, data, ok })
}

fn irreducible_dim(sc: &Scenario, psi: &PsiFunction) -> usize {
    let datum = &sc.setting.g.datum;
    psi.support_orbits(&sc.setting.gamma).iter().map(|p| datum.weyl_dimension(&psi.values[p])).product()
}

pub fn irreps(sc: &Scenario, bound: i64) -> Result<Outcome> {
    if bound < 0 {
        return Err(EmaError::Input("--bound must be nonnegative".into()));
    }
    let s = &sc.setting;
    let orbits = sc.orbit_representatives();
    let found = candidate_functions(&orbits, &s.g.datum, &s.gamma, bound, None)?;
    let rows: Vec<Vec<String>> = found
        .iter()
        .map(|psi| vec![psi.to_string(), psi.height(&s.g.datum, &s.gamma).to_string(), irreducible_dim(sc, psi).to_string()])
        .collect();
    let mut lines = vec![
        format!("orbits: {}", orbits.iter().map(|p| format!("Γ·{p}")).collect::<Vec<_>>().join(", ")),
        format!("coordinate bound: {bound}"),
        format!("classes: {}", found.len()),
    ];
    lines.extend(table(&["psi", "height", "dim V_Γ(psi)"], &rows));
    let data = json!({
        "orbits": orbits.iter().map(|p| p.to_string()).collect::<Vec<_>>(),
        "bound": bound,
        "classes": found.iter().map(|psi| json!({
            "psi": psi.to_string(),
            "height": psi.height(&s.g.datum, &s.gamma).to_string(),
            "dim": irreducible_dim(sc, psi),
        })).collect::<Vec<_>>(),
    });
    Ok(Outcome { lines, data, ok: true })
}

pub fn mult(sc: &Scenario, expr: &str, opts: &WeylOptions) -> Result<Outcome> {
    let s = &sc.setting;
    let e = parse_expr(expr)?;
    let m = eval(sc, &e, opts)?;
    let table = multiplicities(s, &m)?;
    let total = dimension_sum(&table, &s.g.datum, &s.gamma);
    let datum = &s.g.datum;
    let top = table.keys().max_by(|a, b| a.height(datum, &s.gamma).cmp(&b.height(datum, &s.gamma)).then(b.cmp(a)));
    let maximal = top.map(|t| is_maximal_weight(&table, t, datum, &s.gamma)).unwrap_or(false);
    let (rows, cdata) = composition_rows(sc, &table);
    let mut lines = vec![
        format!("module: {expr}"),
        format!("algebra: {}", m.algebra.key()),
        format!("dimension: {}", m.dim),
        format!("composition length: {}", composition_length(&table)),
        format!("sum of mult · dim: {total}"),
    ];
    lines.extend(table_lines(&["psi", "mult", "height"], &rows));
    lines.push(format!(
        "maximal weight module: {}",
        if maximal { format!("yes, of weight {}", top.expect("nonempty")) } else { "no".into() }
    ));
    let data = json!({
        "module": expr,
        "algebra": m.algebra.key(),
        "dim": m.dim,
        "composition_length": composition_length(&table),
        "dimension_sum": total,
        "composition": cdata,
        "maximal_weight": if maximal { Some(top.expect("nonempty").to_string()) } else { None },
    });
    Ok(Outcome { lines, data, ok: total == m.dim })
}

fn default_bound(psi: &PsiFunction) -> i64 {
    psi.values.values().flat_map(|w| w.coords.iter().copied()).max().unwrap_or(0)
}

fn window(sc: &Scenario, psi: &PsiFunction, m: &FiniteModule, bound: i64) -> Result<Vec<PsiFunction>> {
    let s = &sc.setting;
    let orbits: Vec<_> = match &m.algebra {
        crate::repmod::AlgebraRef::Invariant(inv) => inv.orbit.orbits.iter().map(|o| o[0].clone()).collect(),
        crate::repmod::AlgebraRef::Truncated(_) => {
            return Err(EmaError::AlgebraMismatch("expected a module over an invariant algebra".into()))
        }
    };
    candidate_functions(&orbits, &s.g.datum, &s.gamma, bound, Some(&psi.height(&s.g.datum, &s.gamma)))
}

pub fn ext(sc: &Scenario, name: &str, rungs: usize, bound: Option<i64>, opts: &WeylOptions) -> Result<Outcome> {
    let s = &sc.setting;
    let psi = sc.psi(name)?;
    require_equivariant(psi)?;
    let bound = bound.unwrap_or_else(|| default_bound(psi));
    let w = twisted_weyl(s, psi, &canonical_transversal(psi, &s.gamma), opts)?.module;
    let top = head(s, &w)?;
    let mut rows = Vec::new();
    let mut data = Vec::new();
    for phi in window(sc, psi, &w, bound)? {
        let v = evaluation_module(s, &phi, &w.algebra)?;
        let hom = hom_space(&w, &v)?.len();
        let lw = ext1_ladder(s, &w, &v, rungs)?;
        let lh = ext1_ladder(s, &top, &v, rungs)?;
        let h: Rat = phi.height(&s.g.datum, &s.gamma);
        rows.push(vec![phi.to_string(), h.to_string(), hom.to_string(), dims(&lw.rungs), dims(&lh.rungs)]);
        data.push(json!({
            "phi": phi.to_string(),
            "height": h.to_string(),
            "hom_weyl": hom,
            "exponents": lw.rungs.iter().map(|(e, _)| e).collect::<Vec<_>>(),
            "ext_weyl": lw.rungs.iter().map(|(_, d)| d).collect::<Vec<_>>(),
            "ext_head": lh.rungs.iter().map(|(_, d)| d).collect::<Vec<_>>(),
            "stabilized": lw.stabilized && lh.stabilized,
        }));
    }
    let mut lines = vec![
        format!("psi: {psi}"),
        format!("W = W_Γ(psi) (dim {}), head (dim {})", w.dim, top.dim),
        format!("window: height < {}, coordinates ≤ {bound}, {rungs} rung(s)", psi.height(&s.g.datum, &s.gamma)),
    ];
    lines.extend(table(&["phi", "height", "Hom(W,V)", "Ext¹(W,V)", "Ext¹(head,V)"], &rows));
    let data = json!({"psi": psi.to_string(), "bound": bound, "rungs": rungs, "entries": data});
    Ok(Outcome { lines, data, ok: true })
}

pub fn battery(
    sc: &Scenario,
    name: &str,
    module: Option<&str>,
    rungs: usize,
    bound: Option<i64>,
    opts: &WeylOptions,
) -> Result<Outcome> {
    let s = &sc.setting;
    let psi = sc.psi(name)?;
    require_equivariant(psi)?;
    let bound = bound.unwrap_or_else(|| default_bound(psi));
    let m = match module {
        Some(expr) => eval(sc, &parse_expr(expr)?, opts)?,
        None => twisted_weyl(s, psi, &canonical_transversal(psi, &s.gamma), opts)?.module,
    };
    let report = characterization_battery(s, &m, psi, bound, rungs)?;
    let rows: Vec<Vec<String>> = report
        .entries
        .iter()
        .map(|e| {
            vec![
                e.phi.to_string(),
                e.height.to_string(),
                e.hom_dim.to_string(),
                dims(&e.ext),
                if e.vanishes() { "0" } else { "nonzero" }.to_string(),
            ]
        })
        .collect();
    let mut lines = vec![
        format!("module: {}", module.unwrap_or("W_Γ(psi)")),
        format!("psi: {psi}"),
        "hypothesis: maximal weight module of weight psi".to_string(),
        format!("window: height < {}, coordinates ≤ {bound}, {rungs} rung(s)", psi.height(&s.g.datum, &s.gamma)),
    ];
    lines.extend(table(&["phi", "height", "Hom", "Ext¹ by rung", "verdict"], &rows));
    lines.push(format!("battery: {}", if report.pass { "PASS" } else { "FAIL" }));
    let data = json!({
        "module": module.unwrap_or("W_Γ(psi)"),
        "psi": psi.to_string(),
        "bound": bound,
        "rungs": rungs,
        "entries": report.entries.iter().map(|e| json!({
            "phi": e.phi.to_string(),
            "height": e.height.to_string(),
            "hom": e.hom_dim,
            "ext": e.ext.iter().map(|(_, d)| d).collect::<Vec<_>>(),
        })).collect::<Vec<_>>(),
        "verdict": if report.pass { "PASS" } else { "FAIL" },
    });
    Ok(Outcome { lines, data, ok: report.pass })
}
