//! Batch runs over the catalog and random line arrangements, with per-check
//! pass counts and the checks that compare several curves.

use std::collections::BTreeMap;

use rand::rngs::StdRng;
use rand::{Rng, SeedableRng};
use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::analysis::{analyze, Analysis, CurveInput, Options};
use crate::catalog;
use crate::classify::{Kind, Status, Verdict};
use crate::error::Result;
use crate::parser::{parse_arrangement, ArrangementSpec};

/// Degrees of random arrangements.
pub const RANDOM_DEGREES: std::ops::RangeInclusive<usize> = 4..=9;
const COEFF: i64 = 4;

/// Checks comparing several curves.
pub const CROSS_VERDICTS: &[&str] = &["tjurina-determines-resolution", "non-combinatorial"];

#[derive(Clone, Debug)]
pub struct SuiteOptions {
    pub random: usize,
    /// Restrict the report to one check name.
    pub only: Option<String>,
    pub seed: u64,
    pub kmax: Option<usize>,
    pub include_catalog: bool,
}

impl Default for SuiteOptions {
    fn default() -> Self {
        SuiteOptions {
            random: 0,
            only: None,
            seed: 2024,
            kmax: None,
            include_catalog: true,
        }
    }
}

fn form_text(c: [i64; 3]) -> String {
    let mut s = String::new();
    for (v, name) in c.iter().zip(["x", "y", "z"]) {
        if *v == 0 {
            continue;
        }
        if *v < 0 {
            s.push('-');
        } else if !s.is_empty() {
            s.push('+');
        }
        if v.abs() != 1 {
            s.push_str(&format!("{}*", v.abs()));
        }
        s.push_str(name);
    }
    s
}

/// A random arrangement of `d` distinct lines with coefficients in
/// `[-4, 4]`. Zero or proportional forms are resampled.
pub fn random_arrangement(rng: &mut StdRng, d: usize) -> ArrangementSpec {
    let mut forms: Vec<String> = Vec::new();
    while forms.len() < d {
        let c = [0; 3].map(|_| rng.gen_range(-COEFF..=COEFF));
        if c == [0; 3] {
            continue;
        }
        let mut trial = forms.clone();
        trial.push(form_text(c));
        if parse_arrangement(&trial).is_ok() {
            forms = trial;
        }
    }
    parse_arrangement(&forms).expect("distinct lines")
}

/// The suite inputs: catalog entries, then `n` random arrangements.
pub fn suite_inputs(opts: &SuiteOptions) -> Result<Vec<CurveInput>> {
    let mut inputs = Vec::new();
    if opts.include_catalog {
        for e in catalog::entries() {
            inputs.push(e.input()?);
        }
    }
    let mut rng = StdRng::seed_from_u64(opts.seed);
    for i in 0..opts.random {
        let d = rng.gen_range(RANDOM_DEGREES);
        let spec = random_arrangement(&mut rng, d);
        inputs.push(CurveInput::arrangement(format!("random-{i}-d{d}"), spec));
    }
    Ok(inputs)
}

#[derive(Clone, Copy, Debug, Default, PartialEq, Eq, Serialize, Deserialize)]
pub struct Counts {
    pub pass: usize,
    pub fail: usize,
    pub not_applicable: usize,
}

impl Counts {
    fn add(&mut self, s: Status) {
        match s {
            Status::Pass => self.pass += 1,
            Status::Fail => self.fail += 1,
            Status::NotApplicable => self.not_applicable += 1,
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Failure {
    pub curve: String,
    pub check: String,
    pub computed: String,
    pub expected: String,
}

#[derive(Clone, Debug, Default, PartialEq, Serialize, Deserialize)]
pub struct SuiteReport {
    pub curves: usize,
    pub counts: BTreeMap<String, Counts>,
    pub failures: Vec<Failure>,
    /// Curves whose analysis stopped with an error.
    pub errors: Vec<(String, String)>,
    pub seconds: f64,
}

impl SuiteReport {
    pub fn ok(&self) -> bool {
        self.failures.is_empty() && self.errors.is_empty()
    }

    pub fn to_text(&self) -> String {
        let mut lines = vec![format!("{} curves, {:.1}s", self.curves, self.seconds)];
        for (name, c) in &self.counts {
            lines.push(format!(
                "{name:30} pass {:4}  fail {:3}  n/a {:4}",
                c.pass, c.fail, c.not_applicable
            ));
        }
        for f in &self.failures {
            lines.push(format!(
                "FAIL {} {}: {} vs {}",
                f.curve, f.check, f.computed, f.expected
            ));
        }
        for (curve, err) in &self.errors {
            lines.push(format!("ERROR {curve}: {err}"));
        }
        lines.join("\n") + "\n"
    }

    fn record(&mut self, curve: &str, v: &Verdict, only: Option<&str>) {
        if only.is_some_and(|o| o != v.name) {
            return;
        }
        self.counts.entry(v.name.clone()).or_default().add(v.status);
        if v.status == Status::Fail {
            self.failures.push(Failure {
                curve: curve.to_string(),
                check: v.name.clone(),
                computed: v.computed.clone(),
                expected: v.expected.clone(),
            });
        }
    }
}

fn cross(name: &str, ok: bool, computed: String, expected: String) -> Verdict {
    Verdict {
        name: name.to_string(),
        status: if ok { Status::Pass } else { Status::Fail },
        computed,
        expected,
    }
}

/// Nearly free curves sharing degree and Tjurina number have the same
/// exponents and the same resolution of `S/I_f`.
pub fn tjurina_determines_resolution(analyses: &[&Analysis]) -> Vec<Verdict> {
    let mut groups: BTreeMap<(usize, usize), Vec<&Analysis>> = BTreeMap::new();
    for a in analyses {
        if a.classification.kind == Kind::NearlyFree {
            groups.entry((a.degree(), a.jacobian.tau())).or_default().push(a);
        }
    }
    groups
        .into_iter()
        .filter(|(_, g)| g.len() > 1)
        .map(|((d, tau), g)| {
            type Key = (Option<(usize, usize)>, String);
            let mut seen: BTreeMap<Key, Vec<&str>> = BTreeMap::new();
            for a in &g {
                let key = (a.classification.exponents, a.betti_saturated.to_string());
                seen.entry(key).or_default().push(&a.input.label);
            }
            let parts: Vec<String> = seen
                .iter()
                .map(|((e, table), labels)| {
                    let e = e.map_or("-".to_string(), |(a, b)| format!("({a}, {b})"));
                    format!("exponents {e}: {table} on {}", labels.join(", "))
                })
                .collect();
            cross(
                CROSS_VERDICTS[0],
                seen.len() == 1,
                format!("d = {d}, τ = {tau}: {}", parts.join("; ")),
                "one exponent pair and one table".to_string(),
            )
        })
        .collect()
}

/// Two arrangements with the same intersection data whose resolutions
/// differ, for both `S/J_f` and `S/I_f`.
pub fn non_combinatorial(a: &Analysis, b: &Analysis) -> Verdict {
    let same = a.combinatorics.as_ref().map(|c| &c.n_table) == b.combinatorics.as_ref().map(|c| &c.n_table)
        && a.combinatorics.is_some();
    let ok = same && a.betti_jacobian != b.betti_jacobian && a.betti_saturated != b.betti_saturated;
    cross(
        CROSS_VERDICTS[1],
        ok,
        format!(
            "{}: {} {}; {}: {} {}",
            a.input.label, a.betti_jacobian, a.betti_saturated, b.input.label, b.betti_jacobian, b.betti_saturated
        ),
        "same point counts, different tables".to_string(),
    )
}

/// Analyses of every suite input, in input order.
pub fn analyze_all(opts: &SuiteOptions) -> Result<Vec<(String, Result<Analysis>)>> {
    let inputs = suite_inputs(opts)?;
    let analysis_opts = Options {
        kmax: opts.kmax,
        ..Options::default()
    };
    Ok(inputs
        .into_par_iter()
        .map(|input| (input.label.clone(), analyze(input, &analysis_opts)))
        .collect())
}

/// Per-check counts over finished analyses, including the cross-curve
/// checks.
pub fn summarize(results: &[(String, Result<Analysis>)], only: Option<&str>) -> SuiteReport {
    let mut report = SuiteReport {
        curves: results.len(),
        ..SuiteReport::default()
    };
    let mut done = Vec::new();
    for (label, r) in results {
        match r {
            Ok(a) => {
                for v in &a.classification.checks {
                    report.record(label, v, only);
                }
                done.push(a);
            }
            Err(e) => report.errors.push((label.clone(), e.to_string())),
        }
    }
    for v in tjurina_determines_resolution(&done) {
        report.record("catalog", &v, only);
    }
    let find = |name: &str| done.iter().find(|a| a.input.label == name).copied();
    if let (Some(a), Some(b)) = (find("ziegler-A"), find("ziegler-Aprime")) {
        report.record("ziegler pair", &non_combinatorial(a, b), only);
    }
    report
}

pub fn run_suite(opts: &SuiteOptions) -> Result<SuiteReport> {
    let start = std::time::Instant::now();
    let results = analyze_all(opts)?;
    let mut report = summarize(&results, opts.only.as_deref());
    report.seconds = start.elapsed().as_secs_f64();
    Ok(report)
}

/// All check names accepted by `--only`.
pub fn check_names() -> Vec<&'static str> {
    crate::classify::VERDICTS.iter().chain(CROSS_VERDICTS).copied().collect()
}
