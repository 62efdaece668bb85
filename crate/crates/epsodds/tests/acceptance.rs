//! Acceptance suite. Runs every criterion at its pinned tolerance and prints
//! one PASS/FAIL line per criterion:
//!
//! ```text
//! cargo test -p epsodds --test acceptance -- --nocapture
//! ```

mod common;

use std::fs;
use std::time::{Duration, Instant};

use common::{
    app, cli, cli_in, get, highlighted_per_panel, ks_critical_001, ks_statistic, laplace_cdf,
    stdout,
};
use epsodds::payload::{build_response, ExplainParams};
use epsodds::registry::ScenarioRegistry;
use epsodds_core::render::HIGHLIGHT_COLOR;
use epsodds_core::{
    dp_ratio_check, AdversaryModel, Method, PrivacyBudget, SeededRng, STUDY_EPSILONS,
};

type Outcome = Result<String, String>;
type Criterion<'a> = (&'static str, Box<dyn Fn() -> Outcome + 'a>);

fn check(cond: bool, msg: impl FnOnce() -> String) -> Result<(), String> {
    if cond {
        Ok(())
    } else {
        Err(msg())
    }
}

fn eps(e: f64) -> PrivacyBudget {
    PrivacyBudget::new(e).unwrap()
}

/// Posterior of NO written out from Bayes' rule, independent of the library.
fn reference_posterior_no(p: f64, e: f64, r: f64) -> f64 {
    let no = (-e * (r - 1.0).abs()).exp() * p;
    let not_no = (-e * r.abs()).exp() * (1.0 - p);
    no / (no + not_no)
}

fn reference_bisection(p: f64, e: f64) -> f64 {
    let (mut lo, mut hi) = (0.0f64, 1.0f64);
    for _ in 0..200 {
        let mid = 0.5 * (lo + hi);
        if reference_posterior_no(p, e, mid) < 0.5 {
            lo = mid;
        } else {
            hi = mid;
        }
    }
    0.5 * (lo + hi)
}

fn condition_holds(p: f64, e: f64) -> bool {
    ((1.0 - p) / p).max(p / (1.0 - p)) <= e.exp()
}

/// Random (prior, ε) pairs on one side of the validity boundary, kept at
/// least 1e-6 (relative) away from it.
fn random_pairs(seed: u64, valid: bool, count: usize) -> Vec<(f64, f64)> {
    let mut rng = SeededRng::new(seed);
    let mut out = Vec::with_capacity(count);
    while out.len() < count {
        let p = rng.next_open_unit();
        let e = 0.01 + rng.next_open_unit() * 9.99;
        let ratio = ((1.0 - p) / p).max(p / (1.0 - p));
        let margin = (ratio / e.exp() - 1.0).abs();
        if margin > 1e-6 && condition_holds(p, e) == valid {
            out.push((p, e));
        }
    }
    out
}

fn ac01_table() -> Outcome {
    let start = Instant::now();
    let o = cli(&["table"]);
    let elapsed = start.elapsed();
    let expected = "epsilon\tx\ty\n0.1\t48\t52\n0.5\t39\t61\n2\t18\t82\n4\t7\t93\n";
    check(o.status.code() == Some(0), || {
        format!("exit {:?}", o.status.code())
    })?;
    check(stdout(&o) == expected, || format!("got {:?}", stdout(&o)))?;
    check(elapsed < Duration::from_secs(1), || {
        format!("took {elapsed:?}")
    })?;
    Ok(format!("(48,52) (39,61) (18,82) (7,93) in {elapsed:?}"))
}

fn ac02_threshold() -> Outcome {
    let mut rng = SeededRng::new(202);
    for _ in 0..1000 {
        let e = 1e-6 + rng.next_open_unit() * 50.0;
        let t = AdversaryModel::new(0.5, eps(e), 0.0)
            .unwrap()
            .decision_threshold()
            .unwrap();
        check(t == 0.5, || format!("P=0.5 eps={e} gave {t}"))?;
    }
    let mut worst = 0.0f64;
    for (p, e) in random_pairs(2, true, 1000) {
        let t = AdversaryModel::new(p, eps(e), 0.0)
            .unwrap()
            .decision_threshold()
            .unwrap();
        let gap = (t - reference_bisection(p, e)).abs();
        worst = worst.max(gap);
        check(gap <= 1e-9, || {
            format!("P={p} eps={e}: closed {t} vs bisection gap {gap}")
        })?;
    }
    Ok(format!(
        "symmetric prior exact; max |closed - bisection| = {worst:.2e}"
    ))
}

fn ac03_validity() -> Outcome {
    for (p, e) in random_pairs(3, false, 1000) {
        let r = AdversaryModel::new(p, eps(e), 0.0)
            .unwrap()
            .decision_threshold();
        check(r.as_ref().is_err_and(|e| e.is_extreme_prior()), || {
            format!("P={p} eps={e} should be ExtremePrior, got {r:?}")
        })?;
    }
    for (p, e) in random_pairs(4, true, 1000) {
        let r = AdversaryModel::new(p, eps(e), 0.0)
            .unwrap()
            .decision_threshold();
        check(r.is_ok(), || format!("P={p} eps={e} rejected: {r:?}"))?;
    }
    Ok("1000 violating raise ExtremePrior, 1000 satisfying succeed".into())
}

fn ac04_monte_carlo() -> Outcome {
    let start = Instant::now();
    let mut worst = 0.0f64;
    for (i, e) in [0.1, 0.5, 1.0, 2.0, 4.0].into_iter().enumerate() {
        let m = AdversaryModel::new(0.5, eps(e), 0.0).unwrap();
        let closed = m.compute_odds(100).unwrap();
        let est = m
            .monte_carlo_odds(1_000_000, &mut SeededRng::new(400 + i as u64))
            .unwrap();
        for (emp, cf) in [
            (est.p_without, closed.p_without),
            (est.p_with, closed.p_with),
        ] {
            let gap = (emp - cf).abs();
            worst = worst.max(gap);
            check(gap <= 0.002, || {
                format!("eps={e}: empirical {emp} vs closed {cf}")
            })?;
        }
    }
    let elapsed = start.elapsed();
    check(elapsed < Duration::from_secs(30), || {
        format!("took {elapsed:?}")
    })?;
    Ok(format!("max gap {worst:.5} <= 0.002 in {elapsed:?}"))
}

fn ac05_dp_bound() -> Outcome {
    for e in STUDY_EPSILONS {
        let points: Vec<f64> = (0..10_000).map(|i| -60.0 + i as f64 * 0.012).collect();
        let ok = dp_ratio_check(eps(e), 0.0, 1.0, &points).map_err(|err| err.to_string())?;
        check(ok, || format!("density ratio violated at eps={e}"))?;
    }
    let mut rng = SeededRng::new(5);
    let mut tested = 0;
    while tested < 1000 {
        let p = 0.01 + rng.next_open_unit() * 0.98;
        let e = 0.01 + rng.next_open_unit() * 9.99;
        let mu = (rng.next_u64() % 50) as f64;
        let m = AdversaryModel::new(p, eps(e), mu).unwrap();
        let Ok(o) = m.compute_odds(100) else { continue };
        check(o.p_with / o.p_without <= e.exp() * (1.0 + 1e-12), || {
            format!("ratio {} > e^{e}", o.p_with / o.p_without)
        })?;
        tested += 1;
    }
    Ok("10^4-point sweeps pass; p_with/p_without <= e^eps on 1000 models".into())
}

fn ac06_icon_arrays() -> Outcome {
    let runs = [tempfile::tempdir().unwrap(), tempfile::tempdir().unwrap()];
    let expected = [(48, 52), (39, 61), (18, 82), (7, 93)];
    for (e, (x, y)) in STUDY_EPSILONS.into_iter().zip(expected) {
        let eps_arg = e.to_string();
        let mut svgs = Vec::new();
        for dir in &runs {
            let o = cli_in(
                dir.path(),
                &["explain", "--epsilon", &eps_arg, "--method", "odds_vis"],
            );
            check(o.status.code() == Some(0), || {
                format!("explain failed at eps={e}")
            })?;
            svgs.push(fs::read(dir.path().join(format!("odds_vis_{e}.svg"))).unwrap());
        }
        check(svgs[0] == svgs[1], || {
            format!("SVG bytes differ at eps={e}")
        })?;
        let svg = String::from_utf8(svgs.remove(0)).unwrap();
        let counts = highlighted_per_panel(&svg, HIGHLIGHT_COLOR);
        check(counts == [x, y], || {
            format!("eps={e}: counted {counts:?}, want ({x},{y})")
        })?;
        let total = svg.matches("<circle").count();
        check(total == 200, || format!("eps={e}: {total} icons"))?;
    }
    Ok("highlight counts equal Table 1 for all four eps; bytes identical".into())
}

fn ac07_sample_reports() -> Outcome {
    let registry = ScenarioRegistry::bundled();
    let scenario = registry.get("workplace").unwrap();
    let n = 10_000usize;
    for (i, e) in STUDY_EPSILONS.into_iter().enumerate() {
        let mut params = ExplainParams::new(e, Method::SampleReports);
        params.samples = n as u32;
        params.seed = 700 + i as u64;
        let resp = build_response("workplace", scenario, &params).map_err(|e| e.to_string())?;
        let reports = resp.artifacts.sample_reports.unwrap();
        let b = 1.0 / e;
        for (mu, draws) in [(0.0, reports.draws_withhold), (1.0, reports.draws_share)] {
            let mean = draws.iter().sum::<f64>() / n as f64;
            let tol = 3.0 * b * 2f64.sqrt() / (n as f64).sqrt();
            check((mean - mu).abs() <= tol, || {
                format!("eps={e} mu={mu}: mean {mean} tol {tol}")
            })?;
            let mut d = draws.clone();
            let ks = ks_statistic(&mut d, |r| laplace_cdf(mu, b, r));
            check(ks < ks_critical_001(n), || {
                format!("eps={e} mu={mu}: KS {ks}")
            })?;
        }
    }
    let runs = [tempfile::tempdir().unwrap(), tempfile::tempdir().unwrap()];
    let mut bodies = Vec::new();
    for dir in &runs {
        let o = cli_in(
            dir.path(),
            &[
                "explain",
                "--epsilon",
                "0.5",
                "--method",
                "sample_reports",
                "--seed",
                "20220131",
            ],
        );
        check(o.status.code() == Some(0), || {
            "sample_reports explain failed".into()
        })?;
        bodies.push(fs::read(dir.path().join("sample_reports_0.5.json")).unwrap());
    }
    check(bodies[0] == bodies[1], || {
        "fixed-seed lists differ between runs".into()
    })?;
    let v: serde_json::Value = serde_json::from_slice(&bodies[0]).unwrap();
    for key in ["display_withhold", "display_share"] {
        for s in v["artifacts"]["sample_reports"][key].as_array().unwrap() {
            let s = s.as_str().unwrap();
            let one_decimal = s.split_once('.').is_some_and(|(_, f)| f.len() == 1);
            check(one_decimal, || format!("{s} is not one-decimal"))?;
        }
    }
    Ok("means within 3 SE, KS below 0.001 critical value, seeded lists identical".into())
}

fn ac08_setting_independence() -> Outcome {
    let registry = ScenarioRegistry::bundled();
    let optional = registry.get("workplace").unwrap();
    let mandatory = registry.get("workplace_mandatory").unwrap();
    for (e, prior) in STUDY_EPSILONS
        .into_iter()
        .flat_map(|e| [(e, 0.5), (e, 0.48)])
    {
        for method in [Method::OddsText, Method::OddsVis, Method::SampleReports] {
            let mut params = ExplainParams::new(e, method);
            params.seed = 88;
            params.prior = prior;
            let a = build_response("workplace", optional, &params).map_err(|e| e.to_string())?;
            let b = build_response("workplace_mandatory", mandatory, &params)
                .map_err(|e| e.to_string())?;
            check(a.odds == b.odds, || {
                format!("odds differ at eps={e} {method}")
            })?;
            if let (Some(ra), Some(rb)) = (&a.artifacts.sample_reports, &b.artifacts.sample_reports)
            {
                check(
                    ra.draws_withhold == rb.draws_withhold && ra.draws_share == rb.draws_share,
                    || format!("draws differ at eps={e}"),
                )?;
            }
            check(a.artifacts.text != b.artifacts.text, || {
                format!("wording identical at eps={e} {method}")
            })?;
        }
    }
    Ok("odds and draws identical across settings; wording differs".into())
}

fn ac09_controls() -> Outcome {
    let registry = ScenarioRegistry::bundled();
    let mut scenario = registry.get("workplace").unwrap().clone();
    let no_eps = build_response(
        "workplace",
        &scenario,
        &ExplainParams::new(2.0, Method::ControlNoEpsilon),
    )
    .map_err(|e| e.to_string())?
    .artifacts
    .control_text
    .unwrap();
    check(
        no_eps.contains("adding random noise to aggregated data"),
        || "missing noise sentence".into(),
    )?;
    check(
        no_eps.contains("the reports shared with your manager"),
        || "missing scenario substitution".into(),
    )?;
    let det = build_response(
        "workplace",
        &scenario,
        &ExplainParams::new(2.0, Method::ControlDeterministic),
    )
    .map_err(|e| e.to_string())?
    .artifacts
    .control_text
    .unwrap();
    for banned in ["noise", "privacy protection method", "potential reports"] {
        check(!det.contains(banned), || {
            format!("deterministic control mentions {banned:?}")
        })?;
    }
    for text in [&no_eps, &det] {
        check(!text.contains("epsilon") && !text.contains('ε'), || {
            "control mentions epsilon".into()
        })?;
    }
    scenario.adversary_label = "the agency".into();
    let sub = build_response(
        "custom",
        &scenario,
        &ExplainParams::new(2.0, Method::ControlNoEpsilon),
    )
    .map_err(|e| e.to_string())?
    .artifacts
    .control_text
    .unwrap();
    let paragraph = sub.rsplit("\n\n").next().unwrap();
    check(
        paragraph.contains("the agency") && !paragraph.contains("your manager"),
        || format!("substitution failed: {paragraph}"),
    )?;
    Ok(
        "no-epsilon control carries the noise sentence with substitutions; deterministic has none"
            .into(),
    )
}

fn ac10_parity(rt: &tokio::runtime::Runtime) -> Outcome {
    let app = app();
    let dir = tempfile::tempdir().unwrap();
    let mut compared = 0;
    for e in [0.5, 1.0, 2.0] {
        for prior in [0.4, 0.5, 0.6] {
            for seed in [1u64, 2] {
                for method in ["sample_reports", "odds_vis"] {
                    let (e_s, p_s, s_s) = (e.to_string(), prior.to_string(), seed.to_string());
                    let o = cli_in(
                        dir.path(),
                        &[
                            "explain",
                            "--epsilon",
                            &e_s,
                            "--prior",
                            &p_s,
                            "--seed",
                            &s_s,
                            "--method",
                            method,
                        ],
                    );
                    check(o.status.code() == Some(0), || {
                        format!("cli failed for {e}/{prior}/{seed}")
                    })?;
                    let file = dir.path().join(format!("{method}_{e}.json"));
                    let cli_body: serde_json::Value =
                        serde_json::from_str(&fs::read_to_string(file).unwrap()).unwrap();
                    let uri = format!(
                        "/api/v1/explain?epsilon={e}&prior={prior}&seed={seed}&method={method}"
                    );
                    let (status, api_body) = rt.block_on(get(&app, &uri));
                    check(status.is_success(), || format!("api {status} for {uri}"))?;
                    let (a, b) = (numbers(&cli_body), numbers(&api_body));
                    check(!a.is_empty() && a == b, || {
                        format!("numeric mismatch for {uri}")
                    })?;
                    check(cli_body == api_body, || format!("body mismatch for {uri}"))?;
                    compared += 1;
                }
            }
        }
    }
    Ok(format!(
        "{compared} CLI/API payload pairs identical field-for-field"
    ))
}

/// Every numeric leaf with its JSON path.
fn numbers(v: &serde_json::Value) -> Vec<(String, f64)> {
    fn walk(v: &serde_json::Value, path: String, out: &mut Vec<(String, f64)>) {
        match v {
            serde_json::Value::Number(n) => out.push((path, n.as_f64().unwrap())),
            serde_json::Value::Array(items) => {
                for (i, item) in items.iter().enumerate() {
                    walk(item, format!("{path}[{i}]"), out);
                }
            }
            serde_json::Value::Object(map) => {
                for (k, item) in map {
                    walk(item, format!("{path}.{k}"), out);
                }
            }
            _ => {}
        }
    }
    let mut out = Vec::new();
    walk(v, String::new(), &mut out);
    out
}

#[test]
fn acceptance_criteria() {
    let rt = tokio::runtime::Runtime::new().unwrap();
    let criteria: Vec<Criterion> = vec![
        ("AC1  Table 1 reproduction", Box::new(ac01_table)),
        ("AC2  decision threshold", Box::new(ac02_threshold)),
        ("AC3  prior validity condition", Box::new(ac03_validity)),
        ("AC4  Monte Carlo agreement", Box::new(ac04_monte_carlo)),
        ("AC5  DP bound properties", Box::new(ac05_dp_bound)),
        ("AC6  icon-array exactness", Box::new(ac06_icon_arrays)),
        (
            "AC7  sample-report statistics",
            Box::new(ac07_sample_reports),
        ),
        (
            "AC8  setting independence",
            Box::new(ac08_setting_independence),
        ),
        ("AC9  control fidelity", Box::new(ac09_controls)),
        ("AC10 CLI/API parity", Box::new(move || ac10_parity(&rt))),
    ];
    let mut failures = Vec::new();
    for (name, criterion) in &criteria {
        match criterion() {
            Ok(detail) => println!("PASS {name}: {detail}"),
            Err(why) => {
                println!("FAIL {name}: {why}");
                failures.push(*name);
            }
        }
    }
    assert!(failures.is_empty(), "failed criteria: {failures:?}");
}
