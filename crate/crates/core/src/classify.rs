//! Free / nearly free classification, the predicted resolution of `S/I_f`
//! for nearly free curves, and named verdicts over a finished analysis.

use std::fmt::Debug;

use serde::{Deserialize, Serialize};

use crate::analysis::Analysis;
use crate::error::{Error, Result};
use crate::resolution::BettiTable;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "SCREAMING_SNAKE_CASE")]
pub enum Kind {
    Smooth,
    Free,
    NearlyFree,
    Other,
    ConcurrentLines,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "SCREAMING_SNAKE_CASE")]
pub enum Status {
    Pass,
    Fail,
    NotApplicable,
}

/// One named check. `computed` and `expected` hold the two sides; for a
/// check that does not apply, `expected` records the failed hypothesis.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Verdict {
    pub name: String,
    pub status: Status,
    pub computed: String,
    pub expected: String,
}

impl Verdict {
    fn compare<T: Debug + PartialEq>(name: &str, computed: T, expected: T) -> Self {
        let ok = computed == expected;
        Self::with(name, ok, format!("{computed:?}"), format!("{expected:?}"))
    }

    fn with(name: &str, ok: bool, computed: String, expected: String) -> Self {
        Verdict {
            name: name.to_string(),
            status: if ok { Status::Pass } else { Status::Fail },
            computed,
            expected,
        }
    }

    fn skip(name: &str, why: &str) -> Self {
        Verdict {
            name: name.to_string(),
            status: Status::NotApplicable,
            computed: String::new(),
            expected: why.to_string(),
        }
    }
}

/// Names of all per-curve verdicts, in report order.
pub const VERDICTS: &[&str] = &[
    "unimodality",
    "duality",
    "support",
    "smooth-identities",
    "milnor-oracle",
    "hilbert-series",
    "pd",
    "betti-identities",
    "arrangement-tau",
    "syzygy-count",
    "threshold-equivalence",
    "generator-degrees",
    "saturation-resolution",
    "regularity-indeg",
    "regularity-threshold",
    "jacobian-resolution",
    "nearly-free-resolution",
    "sigma-formula",
    "regularity-nearly-free",
    "minimal-degree",
    "exponent-range",
    "lefschetz-generic",
    "generator-count",
    "generator-bound",
    "mdr1-nearly-free",
];

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Classification {
    pub kind: Kind,
    /// `(d_1, d_2)` with `d_1 <= d_2`.
    pub exponents: Option<(usize, usize)>,
    /// `σ - (d - 2)`.
    pub s: Option<i64>,
    /// Predicted table of `S/I_f` for nearly free curves.
    pub predicted: Option<BettiTable>,
    pub checks: Vec<Verdict>,
}

/// `(d-1)^2 - r(d-r-1)`, the Tjurina number of a free curve with `mdr = r`.
pub fn free_tau(d: usize, r: usize) -> i64 {
    let (d, r) = (d as i64, r as i64);
    (d - 1) * (d - 1) - r * (d - r - 1)
}

/// Kind from `τ` and `r = mdr(f)`, cross-checked against `ν`.
pub fn classify(d: usize, tau: usize, mdr: usize, nu: usize, sigma: Option<usize>) -> Result<Classification> {
    let s = sigma.map(|sg| sg as i64 - (d as i64 - 2));
    let mut c = Classification {
        kind: Kind::Other,
        exponents: None,
        s,
        predicted: None,
        checks: Vec::new(),
    };
    if tau == 0 {
        c.kind = Kind::Smooth;
        return Ok(c);
    }
    if mdr == 0 {
        c.kind = Kind::ConcurrentLines;
        if nu != 0 {
            return Err(Error::InconsistentClassification(format!(
                "concurrent lines with ν = {nu}"
            )));
        }
        c.exponents = Some((0, d - 1));
        return Ok(c);
    }
    let base = free_tau(d, mdr);
    let tau = tau as i64;
    let free = tau == base;
    let nearly = tau == base - 1;
    if free != (nu == 0) || nearly != (nu == 1) {
        return Err(Error::InconsistentClassification(format!(
            "τ = {tau}, mdr = {mdr} gives free {free}, nearly free {nearly}, but ν = {nu}"
        )));
    }
    if free {
        c.kind = Kind::Free;
        c.exponents = Some((mdr, d - 1 - mdr));
    } else if nearly {
        c.kind = Kind::NearlyFree;
        c.exponents = Some((mdr, d - mdr));
        c.predicted = Some(predicted_resolution_nearly_free(d as u32, mdr as u32)?);
    }
    Ok(c)
}

/// Table of `S/I_f` for a nearly free curve of degree `d` with first
/// exponent `d1`.
pub fn predicted_resolution_nearly_free(d: u32, d1: u32) -> Result<BettiTable> {
    let max = d / 2;
    if d1 < 1 || d1 > max {
        return Err(Error::BadExponent { d, d1, max });
    }
    let (d, d1) = (d as usize, d1 as usize);
    let t = 3 * d - 6;
    let sigma = d + d1 - 3;
    Ok(if d1 == 1 {
        BettiTable::cyclic(&[d - 1, d - 2], &[2 * d - 3])
    } else {
        BettiTable::cyclic(&[d - 1, d - 1, d - 1, sigma], &[sigma + 1, sigma + 1, t + 1 - sigma])
    })
}

/// `2 <= μ(I_f) <= dim E_2' + μ(AR(f)) - 2`.
pub fn mu_if_bound_check(mu_i: usize, e2: usize, mu_ar: usize) -> Verdict {
    let bound = (e2 + mu_ar).saturating_sub(2);
    Verdict::with(
        "generator-bound",
        (2..=bound).contains(&mu_i),
        format!("μ(I_f) = {mu_i}"),
        format!("2 <= μ(I_f) <= {e2} + {mu_ar} - 2 = {bound}"),
    )
}

fn unimodal(n: &[usize], t: usize) -> bool {
    let mid = t / 2;
    n[..=mid].windows(2).all(|w| w[0] <= w[1]) && n[mid..=t].windows(2).all(|w| w[0] >= w[1])
}

fn desc(v: &[usize]) -> Vec<usize> {
    let mut v = v.to_vec();
    v.sort_unstable_by(|a, b| b.cmp(a));
    v
}

/// Every per-curve verdict, in the order of [`VERDICTS`].
pub fn verify_corollaries(a: &Analysis) -> Vec<Verdict> {
    let d = a.degree();
    let t = a.t();
    let tau = a.jacobian.tau();
    let mdr = a.jacobian.mdr();
    let n = a.saturation.n_table(t);
    let nu = a.saturation.nu();
    let sigma = a.saturation.sigma();
    let c = &a.classification;
    let (bj, bi, bn) = (&a.betti_jacobian, &a.betti_saturated, &a.betti_n);
    let unit = a.saturated_is_unit();
    let nearly = c.kind == Kind::NearlyFree;
    let d1 = c.exponents.map(|e| e.0);
    let arrangement = a.combinatorics.is_some();
    let n_below = n[d - 2] == 0;
    let alpha = bj.column(2);
    let beta = bj.column(3);
    let mu_i = bi.column(1).len();
    let mut out = Vec::new();

    out.push(Verdict::with(
        "unimodality",
        unimodal(&n, t),
        format!("{n:?}"),
        format!("nondecreasing to {}, then nonincreasing", t / 2),
    ));

    let reversed: Vec<usize> = n.iter().rev().copied().collect();
    let tail_zero = a.saturation.n_dims()[t + 1..].iter().all(|&x| x == 0);
    out.push(Verdict::with(
        "duality",
        reversed == n && tail_zero,
        format!("{n:?}"),
        format!("{reversed:?}, zero above {t}"),
    ));

    out.push(match sigma {
        Some(sg) => {
            let support: Vec<usize> = (0..=t).filter(|&k| n[k] != 0).collect();
            let expected: Vec<usize> = (sg..=t.saturating_sub(sg)).collect();
            Verdict::compare("support", support, expected)
        }
        None => Verdict::skip("support", "N(f) = 0"),
    });

    out.push(if tau == 0 {
        let m = a.jacobian.milnor_dims();
        let smooth = a.jacobian.smooth_reference_dims();
        let ok = sigma == Some(0) && a.saturation.end() == Some(t) && n[..] == m[..=t] && m == smooth && unit;
        Verdict::with(
            "smooth-identities",
            ok,
            format!("σ = {sigma:?}, end = {:?}, n = {n:?}", a.saturation.end()),
            format!("σ = 0, end = {t}, n = {:?}, I_f = S", &smooth[..=t]),
        )
    } else {
        Verdict::skip("smooth-identities", "τ > 0")
    });

    let oracle = crate::saturation::milnor_oracle(&a.jacobian);
    let n_signed: Vec<i64> = n.iter().map(|&x| x as i64).collect();
    out.push(Verdict::compare("milnor-oracle", n_signed, oracle));

    let kmax = a.jacobian.kmax();
    let series = |table: &BettiTable| -> Vec<i64> { (0..=kmax).map(|k| table.hilbert(k)).collect() };
    let m_dims: Vec<i64> = a.jacobian.milnor_dims().iter().map(|&x| x as i64).collect();
    let i_dims: Vec<i64> = (0..=kmax).map(|k| a.saturation.saturated().dim(k) as i64).collect();
    let n_dims: Vec<i64> = a.saturation.n_dims()[..=kmax].iter().map(|&x| x as i64).collect();
    let computed = (m_dims, i_dims, n_dims);
    let expected = (series(bj), series(bi), series(bn));
    out.push(Verdict::compare("hilbert-series", computed, expected));

    out.push(if unit {
        Verdict::skip("pd", "I_f = S")
    } else {
        let want_j = if nu > 0 { 3 } else { 2 };
        Verdict::compare("pd", (bi.pd(), bj.pd()), (2, want_j))
    });

    out.push(if unit || bi.pd() != 2 {
        Verdict::skip("betti-identities", "S/I_f is not of projective dimension 2")
    } else {
        let (av, bv) = (desc(bi.column(1)), desc(bi.column(2)));
        let paired = bv.len() + 1 == av.len() && bv.iter().zip(&av).all(|(b, a)| *b > *a);
        let (sa, sb): (usize, usize) = (av.iter().sum(), bv.iter().sum());
        let sq = |v: &[usize]| v.iter().map(|x| (x * x) as i64).sum::<i64>();
        let diff = sq(&bv) - sq(&av);
        Verdict::with(
            "betti-identities",
            paired && sa == sb && diff == 2 * tau as i64,
            format!("a = {av:?}, b = {bv:?}, Σa = {sa}, Σb = {sb}, Σb² - Σa² = {diff}"),
            format!("b_i >= a_i + 1, Σa = Σb, Σb² - Σa² = {}", 2 * tau),
        )
    });

    out.push(match &a.combinatorics {
        Some(comb) => Verdict::compare("arrangement-tau", tau, comb.tjurina_sum()),
        None => Verdict::skip("arrangement-tau", "not an arrangement"),
    });

    out.push(if (arrangement && d >= 3) || (n_below && mdr >= 1 && tau > 0) {
        Verdict::with(
            "syzygy-count",
            a.mu_ar < d,
            format!("μ(AR) = {}", a.mu_ar),
            format!("<= {}", d - 1),
        )
    } else {
        Verdict::skip("syzygy-count", "not an arrangement and n(f)_{d-2} != 0")
    });

    let m_dims = a.jacobian.milnor_dims();
    let threshold = m_dims[2 * d - 4] == tau;
    let forced = arrangement && d >= 4;
    out.push(Verdict::with(
        "threshold-equivalence",
        n_below == threshold && (!forced || n_below),
        format!("n_{} = {}, dim M_{} = {}", d - 2, n[d - 2], 2 * d - 4, m_dims[2 * d - 4]),
        format!(
            "n_{} = 0 iff dim M_{} = τ = {tau}{}",
            d - 2,
            2 * d - 4,
            if forced { ", both holding" } else { "" }
        ),
    ));

    let dual = |v: &[usize]| -> Vec<usize> {
        let mut out: Vec<usize> = v.iter().map(|&b| 3 * d - 3 - b).collect();
        out.sort_unstable();
        out
    };
    let three_forms = mdr >= 1 && tau > 0 && nu > 0;
    out.push(if three_forms {
        let expected = BettiTable::from_columns(vec![dual(beta), dual(alpha), alpha.to_vec(), beta.to_vec()]);
        let gens = a.saturation.n_min_generators();
        Verdict::compare(
            "generator-degrees",
            (gens, bn.clone()),
            (dual(beta), expected),
        )
    } else {
        Verdict::skip("generator-degrees", "J_f saturated, smooth, or mdr = 0")
    });

    out.push(if three_forms && n_below {
        let mut gens = vec![d - 1; 3];
        gens.extend(dual(beta));
        Verdict::compare("saturation-resolution", bi.clone(), BettiTable::cyclic(&gens, &dual(alpha)))
    } else {
        Verdict::skip("saturation-resolution", "needs N(f) != 0 and n(f)_{d-2} = 0")
    });

    out.push(match sigma {
        Some(sg) if three_forms && n_below => Verdict::with(
            "regularity-indeg",
            bj.reg_general() + sg == t && bj.reg_general() + 5 <= 2 * d,
            format!("reg S/J_f = {}", bj.reg_general()),
            format!("T - σ = {} <= 2d - 5 = {}", t - sg, 2 * d as i64 - 5),
        ),
        _ => Verdict::skip("regularity-indeg", "needs N(f) != 0 and n(f)_{d-2} = 0"),
    });

    out.push(match (a.ct, unit) {
        (Some(ct), false) => Verdict::compare(
            "regularity-threshold",
            bi.reg_general() as i64,
            t as i64 - ct as i64,
        ),
        _ => Verdict::skip("regularity-threshold", "smooth curve"),
    });

    out.push(match c.kind {
        Kind::Free => {
            let (e1, e2) = c.exponents.expect("free exponents");
            let expected = BettiTable::from_columns(vec![vec![0], vec![d - 1; 3], vec![e1 + d - 1, e2 + d - 1]]);
            Verdict::compare("jacobian-resolution", bj.clone(), expected)
        }
        Kind::NearlyFree => {
            let (e1, e2) = c.exponents.expect("nearly free exponents");
            let expected = BettiTable::from_columns(vec![
                vec![0],
                vec![d - 1; 3],
                vec![d + e1 - 1, d + e2 - 1, d + e2 - 1],
                vec![d + e2],
            ]);
            Verdict::compare("jacobian-resolution", bj.clone(), expected)
        }
        _ => Verdict::skip("jacobian-resolution", "neither free nor nearly free"),
    });

    out.push(match &c.predicted {
        Some(p) if nearly => Verdict::compare("nearly-free-resolution", bi.clone(), p.clone()),
        _ => Verdict::skip("nearly-free-resolution", "not nearly free"),
    });

    out.push(match (nearly, d1, sigma) {
        (true, Some(d1), Some(sg)) => Verdict::compare("sigma-formula", sg, d + d1 - 3),
        _ => Verdict::skip("sigma-formula", "not nearly free"),
    });

    out.push(match (nearly, d1, a.ct) {
        (true, Some(d1), Some(ct)) => Verdict::compare(
            "regularity-nearly-free",
            (bi.reg_general(), bj.reg_general(), ct),
            (2 * d - 4 - d1, 2 * d - 3 - d1, d + d1 - 2),
        ),
        _ => Verdict::skip("regularity-nearly-free", "not nearly free"),
    });

    let a_min = bi.column(1).iter().copied().min();
    out.push(match (nearly, a_min, sigma, d1) {
        (true, Some(am), Some(sg), Some(d1)) => {
            let range = am == d - 2 || am == d - 1;
            let low = am != d - 2 || (sg == d - 2 && d1 == 1 && *bi == BettiTable::cyclic(&[d - 1, d - 2], &[2 * d - 3]));
            Verdict::with(
                "minimal-degree",
                range && sg >= am && low,
                format!("a_min = {am}, σ = {sg}, d_1 = {d1}, S/I_f = {bi}"),
                format!("a_min in {{{}, {}}}, σ >= a_min, a_min = {} forces σ = {}, d_1 = 1", d - 2, d - 1, d - 2, d - 2),
            )
        }
        _ => Verdict::skip("minimal-degree", "not nearly free"),
    });

    out.push(match (nearly, a_min, c.s) {
        (true, Some(am), Some(s)) if am == d - 1 => Verdict::with(
            "exponent-range",
            (1..(d / 2) as i64).contains(&s),
            format!("s = {s}"),
            format!("1 <= s <= {}", (d / 2) as i64 - 1),
        ),
        _ => Verdict::skip("exponent-range", "needs a nearly free curve with a_min = d - 1"),
    });

    out.push(match (&a.lefschetz, sigma) {
        (Some(l), Some(sg)) => {
            let iso = !nearly || sg + 1 > t - sg || l.profile.isomorphic_on(sg, t - sg - 1);
            Verdict::with(
                "lefschetz-generic",
                l.strict && iso,
                format!("ℓ = {} after {} attempt(s), ranks {:?}", l.profile.form, l.attempts, l.ranks()),
                if nearly {
                    format!("injective below T/2, surjective from [T/2], isomorphic on [{sg}, {}]", t - sg - 1)
                } else {
                    "injective below T/2, surjective from [T/2]".to_string()
                },
            )
        }
        _ => Verdict::skip("lefschetz-generic", "N(f) = 0"),
    });

    out.push(match (c.kind, d1) {
        (Kind::Free, _) => Verdict::compare("generator-count", mu_i, 3),
        (Kind::NearlyFree, Some(d1)) => Verdict::compare("generator-count", mu_i, if d1 == 1 { 2 } else { 4 }),
        _ => Verdict::skip("generator-count", "neither free nor nearly free"),
    });

    out.push(if tau > 0 && mdr >= 1 {
        let mut v = mu_if_bound_check(mu_i, a.e2, a.mu_ar);
        let mu_n = a.saturation.n_min_generators().len();
        let ok = v.status == Status::Pass && mu_n + 2 == a.mu_ar;
        v.status = if ok { Status::Pass } else { Status::Fail };
        v.computed = format!("{}, μ(N) = {mu_n}", v.computed);
        v.expected = format!("{}, μ(N) = μ(AR) - 2 = {}", v.expected, a.mu_ar as i64 - 2);
        v
    } else {
        Verdict::skip("generator-bound", "smooth or mdr = 0")
    });

    out.push(if a.input.irreducible && mdr == 1 && d >= 3 {
        let expected_table = BettiTable::cyclic(&[d - 1, d - 2], &[2 * d - 3]);
        Verdict::compare(
            "mdr1-nearly-free",
            (c.kind, c.exponents, bi.clone()),
            (Kind::NearlyFree, Some((1, d - 1)), expected_table),
        )
    } else {
        Verdict::skip("mdr1-nearly-free", "needs a known irreducible curve of degree >= 3 with mdr = 1")
    });

    debug_assert_eq!(out.len(), VERDICTS.len());
    out
}
