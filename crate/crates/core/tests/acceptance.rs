//! End-to-end acceptance criteria. Each test writes one PASS/FAIL line to
//! stderr (bypassing output capture) and then asserts.

use std::io::Write;
use std::sync::{Mutex, OnceLock};
use std::time::Instant;

use curvesat::analysis::{analyze, Analysis, Options};
use curvesat::catalog;
use curvesat::classify::{Kind, Status};
use curvesat::jacobian::smooth_reference_dims;
use curvesat::parser::parse_poly;
use curvesat::resolution::BettiTable;
use curvesat::suite::{analyze_all, summarize, tjurina_determines_resolution, SuiteOptions};
use curvesat::Result;

/// Criteria run one at a time so that wall-clock targets are measured on an
/// otherwise idle process.
static SERIAL: Mutex<()> = Mutex::new(());

fn report(criterion: u32, ok: bool, detail: &str) {
    let line = format!(
        "acceptance criterion {criterion}: {} | {detail}\n",
        if ok { "PASS" } else { "FAIL" }
    );
    let _ = std::io::stderr().write_all(line.as_bytes());
}

fn run(name: &str) -> Analysis {
    let input = catalog::lookup(name).and_then(|e| e.input()).unwrap();
    analyze(input, &Options::default()).unwrap()
}

fn jacobian_table(gens: &[usize], second: &[usize], third: &[usize]) -> BettiTable {
    BettiTable::from_columns(vec![vec![0], gens.to_vec(), second.to_vec(), third.to_vec()])
}

#[test]
fn criterion_1_ziegler_pair() {
    let _guard = SERIAL.lock().unwrap_or_else(|e| e.into_inner());
    let start = Instant::now();
    let a = run("ziegler-A");
    let b = run("ziegler-Aprime");
    let seconds = start.elapsed().as_secs_f64();
    let expected = [
        jacobian_table(&[8, 8, 8], &[13, 14, 14, 14], &[15, 16]),
        BettiTable::cyclic(&[8, 8, 8, 8, 9], &[10, 10, 10, 11]),
        jacobian_table(&[8, 8, 8], &[14; 6], &[15; 4]),
        BettiTable::cyclic(&[8, 8, 8, 9, 9, 9, 9], &[10; 6]),
    ];
    let computed = [
        a.betti_jacobian.clone(),
        a.betti_saturated.clone(),
        b.betti_jacobian.clone(),
        b.betti_saturated.clone(),
    ];
    let ok = computed == expected && seconds < 60.0;
    report(
        1,
        ok,
        &format!(
            "A: S/J {} S/I {}; A': S/J {} S/I {}; {seconds:.1}s",
            computed[0], computed[1], computed[2], computed[3]
        ),
    );
    assert_eq!(computed, expected);
    assert!(seconds < 60.0, "Ziegler analyses took {seconds:.1}s");
}

#[test]
fn criterion_2_nearly_free_family() {
    let _guard = SERIAL.lock().unwrap_or_else(|e| e.into_inner());
    let mut bad = Vec::new();
    let mut slowest = 0.0f64;
    let mut count = 0;
    for d in 3..=10usize {
        for k in 1..d {
            let start = Instant::now();
            let a = run(&format!("ex1-d{d}-k{k}"));
            let seconds = start.elapsed().as_secs_f64();
            slowest = slowest.max(seconds);
            count += 1;
            let t = 3 * d - 6;
            let n_expected: Vec<usize> = (0..=t).map(|j| usize::from((d - 2..=2 * d - 4).contains(&j))).collect();
            let ok = a.jacobian.mdr() == 1
                && a.jacobian.tau() == (d - 1) * (d - 2)
                && a.saturation.n_table(t) == n_expected
                && a.classification.kind == Kind::NearlyFree
                && a.classification.exponents == Some((1, d - 1))
                && a.betti_saturated == BettiTable::cyclic(&[d - 1, d - 2], &[2 * d - 3])
                && seconds < 5.0;
            if !ok {
                bad.push(format!("d = {d}, k = {k}"));
            }
        }
    }
    report(
        2,
        bad.is_empty(),
        &format!("{count} curves, slowest {slowest:.2}s, failing {bad:?}"),
    );
    assert!(bad.is_empty(), "failing members: {bad:?}");
}

#[test]
fn criterion_3_one_node() {
    let _guard = SERIAL.lock().unwrap_or_else(|e| e.into_inner());
    let line_pair = BettiTable::cyclic(&[1, 1], &[2]);
    let xy = run("ex0-xy");
    let sat = xy.saturation.saturated();
    let (x, y) = (parse_poly("x").unwrap(), parse_poly("y").unwrap());
    // I_f = (x, y): both variables lie in I_f, and S/I_f has dimension 1
    // in every degree
    let is_xy = sat.piece(1).contains_poly(&x)
        && sat.piece(1).contains_poly(&y)
        && (0..=xy.jacobian.kmax()).all(|k| sat.dim(k) == 1);
    let mut ok = is_xy && xy.betti_saturated == line_pair;
    let mut detail = format!("xy: S/I {}", xy.betti_saturated);
    for d in 3..=6 {
        let a = run(&format!("nodal-d{d}"));
        ok &= a.betti_saturated == line_pair && a.classification.kind == Kind::Other;
        detail.push_str(&format!(
            "; nodal d = {d}: S/I {} {:?}",
            a.betti_saturated, a.classification.kind
        ));
    }
    report(3, ok, &detail);
    assert!(ok, "{detail}");
}

#[test]
fn criterion_4_smooth_fermat() {
    let _guard = SERIAL.lock().unwrap_or_else(|e| e.into_inner());
    let mut ok = true;
    let mut detail = Vec::new();
    for d in 3..=6usize {
        let a = run(&format!("fermat-{d}"));
        let t = 3 * d - 6;
        let reference = smooth_reference_dims(d as u32, t);
        let this = a.jacobian.tau() == 0
            && a.saturation.n_table(t) == reference
            && a.saturation.sigma() == Some(0)
            && a.saturation.end() == Some(t)
            && a.saturated_is_unit()
            && a.classification.kind == Kind::Smooth;
        ok &= this;
        detail.push(format!("d = {d}: n = {:?}", a.saturation.n_table(t)));
    }
    report(4, ok, &detail.join("; "));
    assert!(ok, "{detail:?}");
}

type Suite = (Vec<(String, Result<Analysis>)>, f64);

fn suite() -> &'static Suite {
    static SUITE: OnceLock<Suite> = OnceLock::new();
    SUITE.get_or_init(|| {
        let opts = SuiteOptions {
            random: 25,
            ..SuiteOptions::default()
        };
        let start = Instant::now();
        let results = analyze_all(&opts).unwrap();
        (results, start.elapsed().as_secs_f64())
    })
}

/// The per-curve checks named by the criterion.
const PROPERTIES: [&str; 8] = [
    "unimodality",
    "duality",
    "betti-identities",
    "milnor-oracle",
    "syzygy-count",
    "arrangement-tau",
    "threshold-equivalence",
    "generator-degrees",
];

#[test]
fn criterion_5_property_suite() {
    let _guard = SERIAL.lock().unwrap_or_else(|e| e.into_inner());
    let (results, seconds) = suite();
    let summary = summarize(results, None);
    let random = results.iter().filter(|(l, _)| l.starts_with("random-")).count();
    let per_curve_failures: Vec<String> = summary
        .failures
        .iter()
        .filter(|f| f.check != "tjurina-determines-resolution")
        .map(|f| format!("{} {}", f.curve, f.check))
        .collect();
    let exercised = PROPERTIES
        .iter()
        .all(|p| summary.counts.get(*p).is_some_and(|c| c.pass > 0 && c.fail == 0));
    let arrangements_checked = summary.counts["syzygy-count"].pass >= random;
    let ok = summary.errors.is_empty()
        && per_curve_failures.is_empty()
        && exercised
        && arrangements_checked
        && random == 25
        && *seconds < 600.0;
    let counts: Vec<String> = PROPERTIES
        .iter()
        .map(|p| format!("{p} {}", summary.counts[*p].pass))
        .collect();
    report(
        5,
        ok,
        &format!(
            "{} curves ({random} random) in {seconds:.0}s; passes: {}; failures {per_curve_failures:?}; errors {:?}",
            summary.curves,
            counts.join(", "),
            summary.errors
        ),
    );
    // reported, not asserted: the claim that τ alone fixes the resolution
    // of a nearly free curve fails for even degree
    let done: Vec<&Analysis> = results.iter().filter_map(|(_, r)| r.as_ref().ok()).collect();
    for v in tjurina_determines_resolution(&done) {
        if v.status == Status::Fail {
            let line = format!("note: tjurina-determines-resolution fails: {}\n", v.computed);
            let _ = std::io::stderr().write_all(line.as_bytes());
        }
    }
    assert!(ok, "{:?} {:?}", per_curve_failures, summary.errors);
}

#[test]
fn criterion_6_nearly_free_conformance() {
    let _guard = SERIAL.lock().unwrap_or_else(|e| e.into_inner());
    let (results, _) = suite();
    let wanted = [
        "nearly-free-resolution",
        "sigma-formula",
        "regularity-nearly-free",
        "regularity-threshold",
        "generator-count",
    ];
    let mut nearly_free = 0;
    let mut counted = [0usize; 3];
    let mut bad = Vec::new();
    for (label, r) in results {
        let a = r.as_ref().unwrap();
        match a.classification.kind {
            Kind::NearlyFree => nearly_free += 1,
            Kind::Free => counted[1] += 1,
            _ => continue,
        }
        if a.classification.kind == Kind::NearlyFree {
            let d1 = a.classification.exponents.unwrap().0;
            counted[if d1 == 1 { 0 } else { 2 }] += 1;
        }
        for v in &a.classification.checks {
            let relevant = wanted.contains(&v.name.as_str());
            let needed = a.classification.kind == Kind::NearlyFree || v.name == "generator-count";
            if relevant && needed && v.status != Status::Pass {
                bad.push(format!("{label} {}", v.name));
            }
        }
    }
    let ok = bad.is_empty() && nearly_free > 0 && counted.iter().all(|&c| c > 0);
    report(
        6,
        ok,
        &format!(
            "{nearly_free} nearly free curves; generator counts checked on {} with 2, {} with 3, {} with 4; failing {bad:?}",
            counted[0], counted[1], counted[2]
        ),
    );
    assert!(ok, "{bad:?}");
}
