//! Acceptance gate: one PASS/FAIL line per criterion, exact equality
//! throughout. Exits nonzero when any criterion fails.

mod common;

use std::sync::Arc;
use std::time::{Duration, Instant};

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use ema_weyl::coordalg::{EtaFunction, LaurentFunction, Point};
use ema_weyl::ema::{constant_eta, constructive_lift, ideal_equality, power_ideal_check, EmaSetting};
use ema_weyl::foundations::FieldElement as F;
use ema_weyl::homology::{characterization_battery, ext1_ladder};
use ema_weyl::liealg::{ChevalleyAlgebra, GammaGroup, GeneratorSpec};
use ema_weyl::repmod::{
    evaluation_module, evaluation_truncated, is_isomorphic, is_maximal_weight, multiplicities,
    multiplicities_truncated, psi_gamma, psi_restrict, twist, untwist, AlgebraRef, FiniteModule, MultiplicityTable,
    PsiFunction,
};
use ema_weyl::rootdata::{DiagramSymmetry, Weight};
use ema_weyl::weyl::{
    all_transversals, check_choice_independence, check_gamma_twist, dimension_certificate, head, hw_quotient_check,
    tensor_check, twisted_weyl, weyl_module, WeylOptions, DEFAULT_MAX_DIM,
};

type Outcome = Result<String, String>;

fn p(x: i64) -> Point {
    Point::from_ints(&[x])
}

fn at(values: &[(i64, &[i64])], equivariant: bool) -> PsiFunction {
    PsiFunction::new(values.iter().map(|(x, w)| (p(*x), Weight::new(w.to_vec()))), equivariant)
}

fn sl2_z2() -> EmaSetting {
    let g = Arc::new(ChevalleyAlgebra::build_sl(2).unwrap());
    let spec = GeneratorSpec { order: 2, scaling: vec![1], tau: DiagramSymmetry::Identity, torus: vec![1] };
    let gamma = Arc::new(GammaGroup::build(&g, 4, 1, &[spec]).unwrap());
    EmaSetting::new(g, gamma, 1)
}

fn sl3_flip() -> EmaSetting {
    let g = Arc::new(ChevalleyAlgebra::build_sl(3).unwrap());
    let spec = GeneratorSpec { order: 2, scaling: vec![1], tau: DiagramSymmetry::Flip, torus: vec![0, 0] };
    let gamma = Arc::new(GammaGroup::build(&g, 4, 1, &[spec]).unwrap());
    EmaSetting::new(g, gamma, 1)
}

fn untwisted_sl2() -> EmaSetting {
    let g = Arc::new(ChevalleyAlgebra::build_sl(2).unwrap());
    let gamma = Arc::new(GammaGroup::trivial(&g, 1));
    EmaSetting::new(g, gamma, 1)
}

fn ensure(cond: bool, msg: impl FnOnce() -> String) -> Result<(), String> {
    if cond {
        Ok(())
    } else {
        Err(msg())
    }
}

fn within(start: Instant, limit: Duration, what: &str) -> Result<(), String> {
    let t = start.elapsed();
    ensure(t < limit, || format!("{what} took {t:?}, limit {limit:?}"))
}

macro_rules! tryf {
    ($e:expr) => {
        $e.map_err(|e| e.to_string())?
    };
}

fn c1_evaluation_isomorphism() -> Outcome {
    let mut cases = 0;
    for (name, s) in [("sl2/Z2", sl2_z2()), ("sl3/flip", sl3_flip())] {
        for e in [1, 2] {
            for support in [vec![p(1)], vec![p(1), p(2)]] {
                let start = Instant::now();
                let eta = constant_eta(&support, e);
                let iso = tryf!(s.ev_gamma_iso(&eta));
                ensure(iso.is_bijective() && iso.check_brackets(), || format!("{name} η={eta:?}: not an isomorphism"))?;
                ensure(iso.source.dim == iso.target.dim, || format!("{name}: dimensions differ"))?;
                within(start, Duration::from_secs(5), name)?;
                cases += 1;
            }
        }
    }
    Ok(format!("{cases} cases bijective and bracket-preserving"))
}

fn random_lift_instances(s: &EmaSetting, rng: &mut ChaCha8Rng) -> Result<usize, String> {
    let g = &s.g;
    let mut ok = 0;
    for _ in 0..50 {
        let mut a = Vec::new();
        while a.is_empty() {
            a = (0..g.dim).filter_map(|i| Some((i, F::int(rng.gen_range(-2..=2)))).filter(|(_, c)| !c.is_zero())).collect();
        }
        let mut f = LaurentFunction::zero(1);
        for _ in 0..rng.gen_range(1..=3) {
            let c = F::int(rng.gen_range(1..=3) * if rng.gen_bool(0.5) { 1 } else { -1 });
            f = f.add(&LaurentFunction::monomial(1, vec![rng.gen_range(-2..=2)], c));
        }
        let orbits = if rng.gen_bool(0.5) { vec![1] } else { vec![1, 2] };
        let eta: EtaFunction = orbits
            .iter()
            .map(|&r| (p(if rng.gen_bool(0.5) { r } else { -r }), rng.gen_range(1..=2)))
            .collect();
        let x = eta.keys().nth(rng.gen_range(0..eta.len())).unwrap().clone();
        let r = tryf!(constructive_lift(g, &s.gamma, &a, &f, &x, &eta));
        ensure(r.ok(), || format!("lift failed for a={a:?}, f={f:?}, x={x}, η={eta:?}"))?;
        ok += 1;
    }
    Ok(ok)
}

fn c2_constructive_lift() -> Outcome {
    let start = Instant::now();
    let mut rng = ChaCha8Rng::seed_from_u64(2);
    let a = random_lift_instances(&sl2_z2(), &mut rng)?;
    let b = random_lift_instances(&sl3_flip(), &mut rng)?;
    within(start, Duration::from_secs(10), "lift suite")?;
    Ok(format!("{a} + {b} lifts satisfy invariance, the jet at x and vanishing elsewhere"))
}

fn c3_ideal_identities() -> Outcome {
    for (name, s) in [("sl2/Z2", sl2_z2()), ("sl3/flip", sl3_flip())] {
        for e in [1, 2] {
            let eta = constant_eta(&[p(1)], e);
            ensure(tryf!(ideal_equality(&s, &eta, 2 * e + 1)), || format!("{name}: ideal equality fails at e={e}"))?;
        }
        let ideal = constant_eta(&[p(1)], 1);
        for m in 1..=3 {
            ensure(tryf!(power_ideal_check(&s, &ideal, m, 2 * m + 1)), || format!("{name}: power identity fails at m={m}"))?;
        }
    }
    Ok("subspace equalities hold for e ∈ {1,2} and m ∈ {1,2,3}".into())
}

/// Modules over truncations supported on x, with the irreducible ones marked.
fn category_battery(s: &EmaSetting, x: &[Point], weights: &[&[i64]]) -> Result<Vec<(FiniteModule, Option<PsiFunction>)>, String> {
    let t = s.truncated(&constant_eta(x, 1));
    let mut out = Vec::new();
    let mut irreducible = Vec::new();
    for w in weights {
        let psi = PsiFunction::new(x.iter().map(|q| (q.clone(), Weight::new(w.to_vec()))), false);
        let v = tryf!(evaluation_truncated(&psi, &t));
        irreducible.push(v.clone());
        out.push((v, Some(psi)));
    }
    let (a, b) = (&irreducible[0], &irreducible[irreducible.len() - 1]);
    out.push((tryf!(a.direct_sum(b)), None));
    out.push((tryf!(a.tensor(b)), None));
    let psi = PsiFunction::new(x.iter().map(|q| (q.clone(), Weight::new(weights[0].to_vec()))), false);
    out.push((tryf!(weyl_module(s, &psi, &WeylOptions::default())).module, None));
    Ok(out)
}

fn c4_category_isomorphism() -> Outcome {
    let mut count = 0;
    let suites: [(EmaSetting, Vec<Point>, Vec<&[i64]>); 3] = [
        (sl2_z2(), vec![p(1)], vec![&[1], &[2], &[3]]),
        (sl2_z2(), vec![p(1), p(2)], vec![&[1], &[2]]),
        (sl3_flip(), vec![p(1)], vec![&[1, 0], &[0, 1], &[1, 1]]),
    ];
    for (s, x, weights) in &suites {
        for (m, psi) in category_battery(s, x, weights)? {
            let tm = tryf!(twist(s, &m));
            let utm = tryf!(untwist(s, &tm, x));
            ensure(utm.actions == m.actions, || "U∘T is not the identity".into())?;
            ensure(tryf!(twist(s, &utm)).actions == tm.actions, || "T∘U is not the identity".into())?;
            if let Some(psi) = psi {
                let global = tryf!(psi_gamma(&psi, &s.gamma));
                let want = MultiplicityTable::from([(global.clone(), 1)]);
                ensure(tryf!(multiplicities(s, &tm)) == want, || format!("T(V({psi})) is not V_Γ({global})"))?;
                let vg = tryf!(evaluation_module(s, &global, &tm.algebra));
                let local = tryf!(psi_restrict(&global, x, &s.gamma));
                let want = MultiplicityTable::from([(local.clone(), 1)]);
                let got = tryf!(multiplicities_truncated(&tryf!(untwist(s, &vg, x))));
                ensure(got == want, || format!("U_x(V_Γ({global})) is not V({local})"))?;
            }
            count += 1;
        }
    }
    Ok(format!("{count} modules: U∘T and T∘U are identities, irreducibles correspond"))
}

fn c5_weyl_dimensions() -> Outcome {
    let start = Instant::now();
    let s = untwisted_sl2();
    let mut dims = Vec::new();
    for k in 1..=3 {
        let expected = common::oracle::sl2_local_weyl_dim(k);
        let psi = at(&[(1, &[k])], false);
        let w = tryf!(weyl_module(&s, &psi, &WeylOptions::default()));
        let cert = tryf!(dimension_certificate(&s, &psi, DEFAULT_MAX_DIM));
        ensure(w.dim() == expected, || format!("W({k}ω): {} vs oracle {expected}", w.dim()))?;
        ensure(cert.iter().all(|&d| d == expected), || format!("W({k}ω): certificate {cert:?}"))?;
        dims.push(expected);
    }
    within(start, Duration::from_secs(60), "dimension suite")?;
    Ok(format!("dims {dims:?} agree with the oracle and the perturbed recomputations"))
}

fn c6_twisted_weyl() -> Outcome {
    let opts = WeylOptions::default();
    let s = sl2_z2();
    let psi = at(&[(1, &[1]), (-1, &[1]), (2, &[1]), (-2, &[1])], true);
    ensure(tryf!(check_choice_independence(&s, &psi, &opts)), || "choice dependence on two orbits".into())?;
    let mut identities = 0;
    let mut twists = 0;
    for (s, psi) in [(sl2_z2(), psi.clone()), (s, at(&[(1, &[2]), (-1, &[2])], true)), (sl3_flip(), at(&[(1, &[1, 0]), (-1, &[0, 1])], true))] {
        for x in all_transversals(&psi, &s.gamma) {
            let t = tryf!(twisted_weyl(&s, &psi, &x, &opts));
            let local = tryf!(weyl_module(&s, &tryf!(psi_restrict(&psi, &x, &s.gamma)), &opts));
            ensure(tryf!(untwist(&s, &t.module, &x)).actions == local.module.actions, || format!("U_x(W_Γ) ≠ W(ψ_x) at {x:?}"))?;
            identities += 1;
            for g in 0..s.gamma.order() {
                ensure(tryf!(check_gamma_twist(&s, &psi, &x, g, &opts)), || format!("γ-twist fails for element {g}"))?;
                twists += 1;
            }
        }
    }
    Ok(format!("choice independence over 4 transversals, {identities} untwist identities, {twists} γ-twist instances"))
}

fn c7_tensor_factorization() -> Outcome {
    let opts = WeylOptions::default();
    let mut lines = Vec::new();
    let cases = [
        (untwisted_sl2(), at(&[(1, &[1])], false), at(&[(2, &[1])], false)),
        (untwisted_sl2(), at(&[(1, &[2])], false), at(&[(3, &[1])], false)),
        (sl2_z2(), at(&[(1, &[1]), (-1, &[1])], true), at(&[(2, &[1]), (-2, &[1])], true)),
        (sl2_z2(), at(&[(1, &[2]), (-1, &[2])], true), at(&[(2, &[1]), (-2, &[1])], true)),
    ];
    for (s, a, b) in &cases {
        let r = tryf!(tensor_check(s, a, b, &opts));
        ensure(r.dim_sum == r.dim_left * r.dim_right && r.isomorphic, || format!("{a} + {b}: {r:?}"))?;
        lines.push(format!("{}={}·{}", r.dim_sum, r.dim_left, r.dim_right));
    }
    Ok(format!("dims {} with isomorphisms", lines.join(", ")))
}

fn c8_maximal_weight_and_head() -> Outcome {
    let opts = WeylOptions::default();
    for (s, psi) in [(sl2_z2(), at(&[(1, &[2]), (-1, &[2])], true)), (sl3_flip(), at(&[(1, &[1, 1]), (-1, &[1, 1])], true))] {
        let x = vec![p(1)];
        let w = tryf!(twisted_weyl(&s, &psi, &x, &opts)).module;
        let table = tryf!(multiplicities(&s, &w));
        ensure(is_maximal_weight(&table, &psi, &s.g.datum, &s.gamma), || format!("W_Γ({psi}) not of maximal weight"))?;
    }
    for (s, psi) in [(untwisted_sl2(), at(&[(1, &[2])], false)), (sl3_flip(), at(&[(1, &[1, 1])], false))] {
        let w = tryf!(weyl_module(&s, &psi, &opts)).module;
        let top = tryf!(head(&s, &w));
        let v = tryf!(evaluation_module(&s, &psi, &w.algebra));
        ensure(tryf!(is_isomorphic(&top, &v)), || format!("head(W({psi})) ≇ V({psi})"))?;
        let q = tryf!(hw_quotient_check(&s, &v, &opts));
        ensure(q.psi == psi && q.rank == v.dim, || format!("W({psi}) does not surject onto V({psi})"))?;
    }
    Ok("W_Γ(ψ) has top ψ; head(W(ψ)) ≅ V(ψ) with a surjection W(ψ) → V(ψ)".into())
}

fn c9_battery() -> Outcome {
    let start = Instant::now();
    let s = sl2_z2();
    let psi = at(&[(1, &[2]), (-1, &[2])], true);
    let w = tryf!(twisted_weyl(&s, &psi, &[p(1)], &WeylOptions::default())).module;
    let pass = tryf!(characterization_battery(&s, &w, &psi, 2, 3));
    ensure(pass.pass, || format!("W_Γ(ψ) fails: {:?}", pass.entries))?;
    let top = tryf!(head(&s, &w));
    ensure(!tryf!(characterization_battery(&s, &top, &psi, 2, 3)).pass, || "the head passes".into())?;
    let padded = tryf!(top.direct_sum(&tryf!(evaluation_module(&s, &PsiFunction::zero(true), &top.algebra))));
    ensure(!tryf!(characterization_battery(&s, &padded, &psi, 2, 3)).pass, || "the padded sum passes".into())?;

    let u = untwisted_sl2();
    let alg = AlgebraRef::Truncated(u.truncated(&constant_eta(&[p(1)], 1)));
    let v = tryf!(evaluation_module(&u, &at(&[(1, &[2])], false), &alg));
    let ladder = tryf!(ext1_ladder(&u, &v, &FiniteModule::trivial(alg, 1), 3));
    ensure(ladder.rungs.len() == 3 && ladder.rungs.iter().all(|(_, d)| *d >= 1), || format!("ladder {:?}", ladder.rungs))?;
    within(start, Duration::from_secs(300), "battery")?;
    Ok(format!(
        "PASS on W_Γ(ψ) ({} candidates), FAIL on head and padded sum, Ext¹(V(2ω),V(0)) ladder {:?}",
        pass.entries.len(),
        ladder.rungs.iter().map(|(_, d)| d).collect::<Vec<_>>()
    ))
}

fn c10_cli_determinism() -> Outcome {
    for case in common::CASES {
        common::check_golden(case)?;
    }
    Ok(format!("{} fixture/command pairs byte-identical across runs and to the golden files", common::CASES.len()))
}

fn main() {
    let criteria: [(&str, fn() -> Outcome); 10] = [
        ("evaluation isomorphism", c1_evaluation_isomorphism),
        ("constructive lift", c2_constructive_lift),
        ("ideal identities", c3_ideal_identities),
        ("category isomorphism", c4_category_isomorphism),
        ("Weyl dimension certificates", c5_weyl_dimensions),
        ("twisted Weyl modules", c6_twisted_weyl),
        ("tensor factorization", c7_tensor_factorization),
        ("maximal weight and head", c8_maximal_weight_and_head),
        ("homological battery", c9_battery),
        ("CLI determinism", c10_cli_determinism),
    ];
    let mut failed = 0;
    for (i, (name, run)) in criteria.iter().enumerate() {
        let start = Instant::now();
        let (verdict, detail) = match run() {
            Ok(d) => ("PASS", d),
            Err(d) => {
                failed += 1;
                ("FAIL", d)
            }
        };
        println!("criterion {:>2} {name}: {verdict} [{:.2?}] {detail}", i + 1, start.elapsed());
    }
    println!("acceptance: {} of {} criteria pass", criteria.len() - failed, criteria.len());
    if failed > 0 {
        std::process::exit(1);
    }
}
