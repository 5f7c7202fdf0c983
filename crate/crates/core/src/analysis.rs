//! The full pipeline for one curve: Milnor algebra, saturation, resolutions,
//! explicit cross-checks, classification and verdicts.

use std::time::Instant;

use crate::classify::{classify, verify_corollaries, Classification};
use crate::error::{Error, Result};
use crate::exactla::{rank_of, QVec};
use crate::graded::FreeModule;
use crate::jacobian::JacobianData;
use crate::parser::{combinatorics, ArrangementSpec, Combinatorics};
use crate::poly::{dim_s, partials, HomogeneousPoly, Var};
use crate::resolution::{explicit_jacobian, generator_polys, koszul_betti, min_generators, syzygies, BettiTable};
use crate::saturation::{generic_lefschetz, saturate, LefschetzProfile, SaturationData};

/// A curve to analyze.
#[derive(Clone, Debug)]
pub struct CurveInput {
    /// Catalog name, file name, or the polynomial text.
    pub label: String,
    pub f: HomogeneousPoly,
    pub arrangement: Option<ArrangementSpec>,
    /// Known to be irreducible (catalog curves only).
    pub irreducible: bool,
}

impl CurveInput {
    pub fn poly(label: impl Into<String>, f: HomogeneousPoly) -> Self {
        CurveInput {
            label: label.into(),
            f,
            arrangement: None,
            irreducible: false,
        }
    }

    pub fn arrangement(label: impl Into<String>, spec: ArrangementSpec) -> Self {
        CurveInput {
            label: label.into(),
            f: spec.product(),
            arrangement: Some(spec),
            irreducible: false,
        }
    }
}

#[derive(Clone, Debug)]
pub struct Options {
    pub kmax: Option<usize>,
    /// Seed for the random linear forms of the Lefschetz check.
    pub seed: u64,
    /// Run the explicit generator/syzygy route alongside Koszul homology.
    pub cross_check: bool,
}

impl Default for Options {
    fn default() -> Self {
        Options {
            kmax: None,
            seed: 1,
            cross_check: true,
        }
    }
}

const LEFSCHETZ_ATTEMPTS: usize = 5;

#[derive(Clone, Debug)]
pub struct Lefschetz {
    pub profile: LefschetzProfile,
    pub attempts: usize,
    pub strict: bool,
}

impl Lefschetz {
    pub fn ranks(&self) -> Vec<usize> {
        self.profile.steps.iter().map(|s| s.3).collect()
    }
}

#[derive(Clone, Debug)]
pub struct Analysis {
    pub input: CurveInput,
    pub jacobian: JacobianData,
    pub saturation: SaturationData,
    pub ct: Option<usize>,
    pub betti_jacobian: BettiTable,
    pub betti_saturated: BettiTable,
    /// Resolution of `N(f)`; position 0 holds its generators.
    pub betti_n: BettiTable,
    /// Explicit-route tables of `S/J_f` and `S/I_f`, when computed.
    pub explicit_jacobian: Option<BettiTable>,
    pub explicit_saturated: Option<BettiTable>,
    pub mu_ar: usize,
    /// `dim E_2'`: the image of `J_{f,d-1}` in `I_f / m I_f`.
    pub e2: usize,
    pub combinatorics: Option<Combinatorics>,
    pub lefschetz: Option<Lefschetz>,
    pub classification: Classification,
    /// Wall-clock seconds per stage.
    pub timings: Vec<(String, f64)>,
}

impl Analysis {
    pub fn degree(&self) -> usize {
        self.jacobian.degree() as usize
    }

    pub fn t(&self) -> usize {
        self.jacobian.t()
    }

    /// `I_f = S`, so `S/I_f = 0`.
    pub fn saturated_is_unit(&self) -> bool {
        self.saturation.saturated().dim(0) == 0
    }

    pub fn total_seconds(&self) -> f64 {
        self.timings.iter().map(|t| t.1).sum()
    }
}

struct Clock {
    last: Instant,
    laps: Vec<(String, f64)>,
}

impl Clock {
    fn new() -> Self {
        Clock {
            last: Instant::now(),
            laps: Vec::new(),
        }
    }

    fn lap(&mut self, name: &str) {
        let now = Instant::now();
        self.laps.push((name.to_string(), (now - self.last).as_secs_f64()));
        self.last = now;
    }
}

fn table(module: &crate::inverse::GradedModule, what: &str) -> Result<BettiTable> {
    Ok(BettiTable::from_koszul(&koszul_betti(module, what)?))
}

/// `dim E_2' = dim(J_{d-1} + S_1 I_{d-2}) - dim(S_1 I_{d-2})`.
fn e2_dim(jac: &JacobianData, sat: &SaturationData) -> usize {
    let d = jac.degree() as usize;
    let cols = dim_s(d - 1);
    let below = sat.saturated().piece(d - 2).ideal_basis();
    let ring = FreeModule::standard(1);
    let mut span: Vec<QVec> = below
        .iter()
        .flat_map(|g| Var::ALL.map(|v| ring.mul_var(g, d - 2, v)))
        .collect();
    let without = rank_of(cols, &span);
    let (fx, fy, fz) = partials(jac.f());
    span.extend([fx.coeffs(), fy.coeffs(), fz.coeffs()]);
    rank_of(cols, &span) - without
}

fn last(v: &[usize]) -> usize {
    v.iter().copied().max().unwrap_or(0)
}

/// Generators and relations of `J_f` from explicit kernels.
fn cross_check_jacobian(f: &HomogeneousPoly, bj: &BettiTable) -> Result<BettiTable> {
    let d = f.degree() as usize;
    let alpha = last(bj.column(2)) - (d - 1);
    let top = last(bj.column(3)).max(last(bj.column(2))) - (d - 1);
    let explicit = explicit_jacobian(f, (2 * (d - 1)).min(alpha + 2), top + 2).table(d as u32);
    if explicit != *bj {
        return Err(Error::Internal(format!(
            "S/J_f: Koszul table {bj} but explicit table {explicit}"
        )));
    }
    Ok(explicit)
}

/// Generators of `I_f` by Nakayama counts, their relations by kernels, and
/// the freeness check up to `kmax`.
fn cross_check_saturated(sat: &SaturationData, kmax: usize, bi: &BettiTable) -> Result<BettiTable> {
    let quotient = sat.saturated();
    let gens_hi = last(bi.column(1)) + 2;
    let gens = min_generators(&quotient.ideal_slices(0, gens_hi.min(quotient.top())));
    let polys = generator_polys(&gens);
    let syz_hi = (last(bi.column(2)) + 2).min(quotient.top());
    let rel = syzygies(&polys, syz_hi, kmax, |k| quotient.ideal_dim(k))?;
    let explicit = BettiTable::cyclic(&gens.degrees, &rel.degrees);
    if explicit != *bi {
        return Err(Error::Internal(format!(
            "S/I_f: Koszul table {bi} but explicit table {explicit}"
        )));
    }
    Ok(explicit)
}

pub fn analyze(input: CurveInput, opts: &Options) -> Result<Analysis> {
    let mut clock = Clock::new();
    let jacobian = JacobianData::new(&input.f, opts.kmax)?;
    clock.lap("milnor");
    let saturation = saturate(&jacobian);
    clock.lap("saturation");
    let d = jacobian.degree() as usize;
    let betti_jacobian = table(&jacobian.milnor().module(), "S/J_f")?;
    let betti_saturated = table(&saturation.saturated().module(), "S/I_f")?;
    let betti_n = table(saturation.n_module(), "N(f)")?;
    clock.lap("koszul");

    if jacobian.mdr() >= 1 && betti_jacobian.column(1) != [d - 1; 3] {
        return Err(Error::Internal(format!(
            "S/J_f: first position {:?} with independent partials",
            betti_jacobian.column(1)
        )));
    }
    let mu_ar = betti_jacobian.column(2).len() + 3 - betti_jacobian.column(1).len();

    let mut explicit_j = None;
    let mut explicit_i = None;
    if opts.cross_check {
        // with mdr = 0 the partials are dependent and the relation module
        // has a constant generator; the Koszul table already covers it
        if jacobian.mdr() >= 1 {
            explicit_j = Some(cross_check_jacobian(&input.f, &betti_jacobian)?);
        }
        if saturation.saturated().dim(0) != 0 {
            explicit_i = Some(cross_check_saturated(&saturation, jacobian.kmax(), &betti_saturated)?);
        }
        clock.lap("explicit");
    }

    let ct = jacobian.ct().ok();
    let e2 = if jacobian.tau() > 0 { e2_dim(&jacobian, &saturation) } else { 0 };
    let combinatorics = input.arrangement.as_ref().map(combinatorics);
    let lefschetz = (saturation.nu() > 0).then(|| {
        let (profile, attempts, strict) = generic_lefschetz(&saturation, jacobian.t(), opts.seed, LEFSCHETZ_ATTEMPTS);
        Lefschetz {
            profile,
            attempts,
            strict,
        }
    });
    let classification = classify(
        d,
        jacobian.tau(),
        jacobian.mdr(),
        saturation.nu(),
        saturation.sigma(),
    )?;
    clock.lap("classify");

    let mut analysis = Analysis {
        input,
        jacobian,
        saturation,
        ct,
        betti_jacobian,
        betti_saturated,
        betti_n,
        explicit_jacobian: explicit_j,
        explicit_saturated: explicit_i,
        mu_ar,
        e2,
        combinatorics,
        lefschetz,
        classification,
        timings: Vec::new(),
    };
    analysis.classification.checks = verify_corollaries(&analysis);
    clock.lap("verdicts");
    analysis.timings = clock.laps;
    Ok(analysis)
}
