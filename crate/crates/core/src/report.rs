//! Serializable summary of an analysis, with a text rendering.

use std::collections::BTreeMap;
use std::fmt::Write as _;

use serde::{Deserialize, Serialize};

use crate::analysis::Analysis;
use crate::classify::{Classification, Status};
use crate::resolution::BettiTable;

pub const SCHEMA_VERSION: u32 = 1;

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(rename_all = "camelCase")]
pub struct InputEcho {
    pub label: String,
    pub polynomial: String,
    #[serde(skip_serializing_if = "Option::is_none", default)]
    pub lines: Option<Vec<String>>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "camelCase")]
pub struct Invariants {
    pub mdr: usize,
    pub tau: usize,
    /// Absent when `N(f) = 0`.
    pub sigma: Option<usize>,
    pub nu: usize,
    /// Absent for smooth curves.
    pub ct: Option<usize>,
    pub mu_ar: usize,
    pub e2: usize,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "camelCase")]
pub struct Tables {
    pub jacobian: BettiTable,
    pub saturated: BettiTable,
    /// Position 0 lists the generators of `N(f)`.
    pub n_module: BettiTable,
    /// `I_f = S`.
    pub saturated_is_unit: bool,
    /// The explicit generator/syzygy route agreed with Koszul homology.
    pub cross_checked: bool,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "camelCase")]
pub struct LefschetzEcho {
    pub form: String,
    pub attempts: usize,
    pub strict: bool,
    pub ranks: Vec<usize>,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct Stage {
    pub name: String,
    pub seconds: f64,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(rename_all = "camelCase")]
pub struct CurveReport {
    pub schema_version: u32,
    pub input: InputEcho,
    pub d: usize,
    #[serde(rename = "T")]
    pub t: usize,
    pub kmax: usize,
    pub invariants: Invariants,
    /// `dim N(f)_k` for `k = 0..=T`.
    pub n_table: Vec<usize>,
    /// `dim M(f)_k` for `k = 0..=kmax`.
    pub milnor_dims: Vec<usize>,
    pub betti: Tables,
    pub classification: Classification,
    /// Intersection points by multiplicity, for arrangements.
    #[serde(skip_serializing_if = "Option::is_none", default)]
    pub point_counts: Option<BTreeMap<usize, usize>>,
    #[serde(skip_serializing_if = "Option::is_none", default)]
    pub lefschetz: Option<LefschetzEcho>,
    /// Omitted unless requested, so that reports are reproducible.
    #[serde(skip_serializing_if = "Option::is_none", default)]
    pub timing: Option<Vec<Stage>>,
}

impl CurveReport {
    pub fn new(a: &Analysis, with_timing: bool) -> Self {
        let sat = &a.saturation;
        CurveReport {
            schema_version: SCHEMA_VERSION,
            input: InputEcho {
                label: a.input.label.clone(),
                polynomial: a.input.f.to_string(),
                lines: a
                    .input
                    .arrangement
                    .as_ref()
                    .map(|s| s.source_text().lines().map(str::to_string).collect()),
            },
            d: a.degree(),
            t: a.t(),
            kmax: a.jacobian.kmax(),
            invariants: Invariants {
                mdr: a.jacobian.mdr(),
                tau: a.jacobian.tau(),
                sigma: sat.sigma(),
                nu: sat.nu(),
                ct: a.ct,
                mu_ar: a.mu_ar,
                e2: a.e2,
            },
            n_table: sat.n_table(a.t()),
            milnor_dims: a.jacobian.milnor_dims(),
            betti: Tables {
                jacobian: a.betti_jacobian.clone(),
                saturated: a.betti_saturated.clone(),
                n_module: a.betti_n.clone(),
                saturated_is_unit: a.saturated_is_unit(),
                cross_checked: a.explicit_saturated.is_some() || a.explicit_jacobian.is_some(),
            },
            classification: a.classification.clone(),
            point_counts: a.combinatorics.as_ref().map(|c| c.n_table.clone()),
            lefschetz: a.lefschetz.as_ref().map(|l| LefschetzEcho {
                form: l.profile.form.to_string(),
                attempts: l.attempts,
                strict: l.strict,
                ranks: l.ranks(),
            }),
            timing: with_timing.then(|| {
                a.timings
                    .iter()
                    .map(|(name, seconds)| Stage {
                        name: name.clone(),
                        seconds: *seconds,
                    })
                    .collect()
            }),
        }
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string_pretty(self).expect("report serializes")
    }

    pub fn from_json(text: &str) -> serde_json::Result<Self> {
        serde_json::from_str(text)
    }

    pub fn failed_checks(&self) -> usize {
        self.classification
            .checks
            .iter()
            .filter(|v| v.status == Status::Fail)
            .count()
    }

    pub fn to_text(&self) -> String {
        let mut s = String::new();
        let inv = &self.invariants;
        let opt = |v: Option<usize>| v.map_or("-".to_string(), |x| x.to_string());
        let _ = writeln!(s, "curve      {}", self.input.label);
        let _ = writeln!(s, "f          {}", self.input.polynomial);
        let _ = writeln!(s, "d = {}, T = {}, kmax = {}", self.d, self.t, self.kmax);
        let _ = writeln!(
            s,
            "mdr = {}, tau = {}, sigma = {}, nu = {}, ct = {}",
            inv.mdr,
            inv.tau,
            opt(inv.sigma),
            inv.nu,
            opt(inv.ct)
        );
        if let Some(points) = &self.point_counts {
            let parts: Vec<String> = points.iter().map(|(m, n)| format!("n_{m} = {n}")).collect();
            let _ = writeln!(s, "points     {}", parts.join(", "));
        }
        let _ = writeln!(s, "n(f)       {:?}", self.n_table);
        let _ = writeln!(s, "S/J_f      {}", self.betti.jacobian);
        if self.betti.saturated_is_unit {
            let _ = writeln!(s, "S/I_f      0 (I_f = S)");
        } else {
            let _ = writeln!(s, "S/I_f      {}", self.betti.saturated);
        }
        let c = &self.classification;
        let kind = serde_json::to_value(c.kind).expect("kind serializes");
        let _ = write!(s, "kind       {}", kind.as_str().unwrap_or_default());
        if let Some((d1, d2)) = c.exponents {
            let _ = write!(s, ", exponents ({d1}, {d2})");
        }
        if let Some(p) = &c.predicted {
            let _ = write!(s, ", predicted S/I_f {p}");
        }
        s.push('\n');
        let _ = writeln!(s, "checks");
        for v in &c.checks {
            let mark = match v.status {
                Status::Pass => "pass",
                Status::Fail => "FAIL",
                Status::NotApplicable => "n/a ",
            };
            if v.status == Status::NotApplicable {
                let _ = writeln!(s, "  {mark} {:24} {}", v.name, v.expected);
            } else {
                let _ = writeln!(s, "  {mark} {:24} {} vs {}", v.name, v.computed, v.expected);
            }
        }
        if let Some(timing) = &self.timing {
            let parts: Vec<String> = timing.iter().map(|t| format!("{} {:.2}s", t.name, t.seconds)).collect();
            let _ = writeln!(s, "timing     {}", parts.join(", "));
        }
        s
    }
}
