//! Saturation `I = W^sat` of a homogeneous ideal with respect to
//! `m = (x, y, z)`, and the finite-length module `N = I/W`.
//!
//! `g ∈ I` iff `x g, y g, z g ∈ I`, so `I` is computed downwards from a base
//! degree above which `I` and `W` agree.

use rand::rngs::StdRng;
use rand::{Rng, SeedableRng};

use crate::error::{Error, Result};
use crate::exactla::{rank, rank_of, QVec};
use crate::inverse::{GradedModule, QuotientRing};
use crate::jacobian::JacobianData;
use crate::poly::{HomogeneousPoly, Monomial, Var};

/// `S/W`, `S/I` and `N = I/W` for an ideal `W` with saturation `I`.
#[derive(Clone, Debug)]
pub struct SaturationData {
    base: usize,
    quotient: QuotientRing,
    saturated: QuotientRing,
    n_module: GradedModule,
}

impl SaturationData {
    /// `quotient` is `S/W`; `I_k = W_k` is assumed for `k >= base`.
    pub fn from_base(quotient: QuotientRing, base: usize) -> Self {
        let saturated = quotient.saturate_from(base);
        let bases: Vec<Vec<QVec>> = (0..=quotient.top())
            .map(|k| quotient.sub_quotient_basis(&saturated, k))
            .collect();
        let n_module = quotient
            .module()
            .submodule(&bases)
            .expect("I/W is closed under multiplication");
        SaturationData {
            base,
            quotient,
            saturated,
            n_module,
        }
    }

    pub fn base(&self) -> usize {
        self.base
    }

    /// `S/W`.
    pub fn quotient(&self) -> &QuotientRing {
        &self.quotient
    }

    /// `S/I`.
    pub fn saturated(&self) -> &QuotientRing {
        &self.saturated
    }

    pub fn n_module(&self) -> &GradedModule {
        &self.n_module
    }

    /// `dim N_k` for `k = 0..=top`.
    pub fn n_dims(&self) -> Vec<usize> {
        self.n_module.dims().to_vec()
    }

    /// `dim N_k` for `k = 0..=last`.
    pub fn n_table(&self, last: usize) -> Vec<usize> {
        self.n_module.dims()[..=last].to_vec()
    }

    /// Least degree with `N_k != 0`; `None` when `W` is saturated.
    pub fn sigma(&self) -> Option<usize> {
        self.n_module.dims().iter().position(|&n| n != 0)
    }

    /// Largest degree with `N_k != 0`.
    pub fn end(&self) -> Option<usize> {
        self.n_module.dims().iter().rposition(|&n| n != 0)
    }

    pub fn nu(&self) -> usize {
        self.n_module.dims().iter().copied().max().unwrap_or(0)
    }

    /// Degrees of a minimal generating set of `N`, nondecreasing.
    pub fn n_min_generators(&self) -> Vec<usize> {
        self.n_module
            .generator_counts()
            .iter()
            .enumerate()
            .flat_map(|(k, &c)| std::iter::repeat_n(k, c))
            .collect()
    }
}

/// Saturation of the Jacobian ideal: `I_f = J_f` above `T = 3d - 6`.
pub fn saturate(jac: &JacobianData) -> SaturationData {
    SaturationData::from_base(jac.milnor().clone(), jac.t() + 1)
}

/// Saturation of the ideal of three independent forms of a common degree
/// `e` defining a codimension-2 scheme.
///
/// The Hilbert function must be constant and nonzero at `3e - 2` and
/// `3e - 1`. The base is the first `K >= 3e - 2` for which the descent
/// from `K + 2` leaves `N_K = N_{K+1} = 0`.
pub fn saturate_three_forms(forms: [&HomogeneousPoly; 3], kmax: Option<usize>) -> Result<SaturationData> {
    let e = forms[0].degree() as usize;
    if forms.iter().any(|g| g.degree() as usize != e) {
        return Err(Error::Internal("forms of different degrees".into()));
    }
    let coeffs: Vec<QVec> = forms.iter().map(|g| g.coeffs()).collect();
    if forms.iter().any(|g| g.is_zero()) || rank_of(coeffs[0].len(), &coeffs) < 3 {
        return Err(Error::DependentForms);
    }
    let b = (3 * e).saturating_sub(2).max(1);
    let kmax = kmax.unwrap_or(3 * e + 3).max(b + 3);
    let gens: Vec<HomogeneousPoly> = forms.iter().map(|&g| g.clone()).collect();
    let quotient = QuotientRing::of_ideal(&gens, kmax);
    let (first, second) = (quotient.dim(b), quotient.dim(b + 1));
    if first != second || first == 0 {
        return Err(Error::NotCodimensionTwo { k: b, first, second });
    }
    for base in b..=kmax - 2 {
        let data = SaturationData::from_base(quotient.clone(), base + 2);
        let n = data.n_dims();
        if n[base] == 0 && n[base + 1] == 0 {
            return Ok(data);
        }
    }
    Err(Error::BaseWindowNotFound { kmax })
}

/// Ranks of multiplication by a linear form on `N`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct LefschetzProfile {
    pub form: HomogeneousPoly,
    /// `(s, dim N_s, dim N_{s+1}, rank of N_s -> N_{s+1})` for `s < T`.
    pub steps: Vec<(usize, usize, usize, usize)>,
}

impl LefschetzProfile {
    /// Injective below `T/2`, surjective from `floor(T/2)` on.
    pub fn is_strict(&self, t: usize) -> bool {
        self.steps.iter().all(|&(s, a, b, r)| {
            let inj = 2 * s >= t || r == a;
            let surj = s < t / 2 || r == b;
            inj && surj
        })
    }

    /// Isomorphism `N_s -> N_{s+1}` for all `s` in `lo..=hi`.
    pub fn isomorphic_on(&self, lo: usize, hi: usize) -> bool {
        self.steps
            .iter()
            .filter(|(s, ..)| (lo..=hi).contains(s))
            .all(|&(_, a, b, r)| a == b && r == a)
    }
}

/// Multiplication by `l` on `N_s -> N_{s+1}` for `s = 0..t-1`.
pub fn lefschetz_check(sat: &SaturationData, l: &HomogeneousPoly, t: usize) -> LefschetzProfile {
    let n = sat.n_module();
    let steps = (0..t)
        .map(|s| {
            let m = n.mult_linear(s as i64, l);
            (s, n.dim(s as i64), n.dim(s as i64 + 1), rank(&m))
        })
        .collect();
    LefschetzProfile {
        form: l.clone(),
        steps,
    }
}

/// Random linear form with coefficients in `[-5, 5]`, not all zero.
pub fn random_linear_form(rng: &mut StdRng) -> HomogeneousPoly {
    loop {
        let terms: Vec<(Monomial, crate::exactla::Rat)> = Var::ALL
            .iter()
            .map(|&v| (Monomial::var(v), crate::exactla::rat(rng.gen_range(-5..=5))))
            .collect();
        let l = HomogeneousPoly::from_terms(1, terms).expect("degree 1");
        if !l.is_zero() {
            return l;
        }
    }
}

/// Tries up to `attempts` random forms; returns the first strict profile, or
/// the last one tried together with the number of attempts used.
pub fn generic_lefschetz(
    sat: &SaturationData,
    t: usize,
    seed: u64,
    attempts: usize,
) -> (LefschetzProfile, usize, bool) {
    let mut rng = StdRng::seed_from_u64(seed);
    let mut last = None;
    for i in 1..=attempts {
        let l = random_linear_form(&mut rng);
        let p = lefschetz_check(sat, &l, t);
        if p.is_strict(t) {
            return (p, i, true);
        }
        last = Some(p);
    }
    (last.expect("at least one attempt"), attempts, false)
}

/// `dim N_k` predicted from Milnor algebra data alone:
/// `dim M_k + dim M_{T-k} - dim M(f_s)_k - τ` for `k = 0..=T`.
pub fn milnor_oracle(jac: &JacobianData) -> Vec<i64> {
    let t = jac.t();
    let m = jac.milnor_dims();
    let smooth = jac.smooth_reference_dims();
    let tau = jac.tau() as i64;
    (0..=t)
        .map(|k| m[k] as i64 + m[t - k] as i64 - smooth[k] as i64 - tau)
        .collect()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::parser::parse_poly;
    use crate::poly::partials;

    fn poly(s: &str) -> HomogeneousPoly {
        parse_poly(s).unwrap()
    }

    fn sat_of(s: &str) -> (JacobianData, SaturationData) {
        let j = JacobianData::new(&poly(s), None).unwrap();
        let sd = saturate(&j);
        (j, sd)
    }

    #[test]
    fn saturation_examples() {
        let (_, s) = sat_of("x*y");
        assert_eq!(s.saturated().ideal_dim(1), 2);
        assert_eq!(s.sigma(), None);
        assert_eq!(s.nu(), 0);

        let (j, s) = sat_of("y^4 + x*z^3");
        assert_eq!(s.saturated().ideal_dim(2), 1);
        assert!(s.saturated().piece(2).contains_poly(&poly("z^2")));
        assert!(!s.quotient().piece(2).contains_poly(&poly("z^2")));
        let ideal = s.saturated().ideal_slices(2, 2);
        assert_eq!(ideal.polys(2), vec![poly("z^2")]);
        assert_eq!(s.n_table(j.t()), vec![0, 0, 1, 1, 1, 0, 0]);
        assert_eq!((s.sigma(), s.nu()), (Some(2), 1));
        assert_eq!(s.n_min_generators(), vec![2]);

        let (j, s) = sat_of("x^3+y^3+z^3");
        assert_eq!(s.saturated().dim(0), 0);
        assert_eq!(s.n_table(j.t() + 1), vec![1, 3, 3, 1, 0]);
    }

    #[test]
    fn ex1_family_tables() {
        for d in 3..=7usize {
            for k in 1..d {
                let (j, s) = sat_of(&format!("y^{d} + x^{k}*z^{}", d - k));
                let expected: Vec<usize> = (0..=j.t())
                    .map(|i| usize::from((d - 2..=2 * d - 4).contains(&i)))
                    .collect();
                assert_eq!(s.n_table(j.t()), expected, "d={d} k={k}");
            }
        }
    }

    #[test]
    fn oracle_matches_descent() {
        for text in ["y^5 + x^2*z^3", "x*y*z*(x+y+z)", "x*y*z^2 + x^4 + y^4", "x^4+y^4+z^4"] {
            let (j, s) = sat_of(text);
            let oracle = milnor_oracle(&j);
            let n: Vec<i64> = s.n_table(j.t()).iter().map(|&v| v as i64).collect();
            assert_eq!(oracle, n, "{text}");
        }
    }

    #[test]
    fn lefschetz_for_nearly_free_quartic() {
        let (j, s) = sat_of("y^4 + x*z^3");
        let p = lefschetz_check(&s, &poly("y"), j.t());
        assert!(p.isomorphic_on(2, 3), "{:?}", p.steps);
        // z * z^2 = f_x lies in J, so z kills N
        let p = lefschetz_check(&s, &poly("z"), j.t());
        let ranks: Vec<usize> = p.steps.iter().map(|st| st.3).collect();
        assert_eq!(ranks, vec![0; 6]);
        let (j, s) = sat_of("x^3+y^3+z^3");
        let (p, _, ok) = generic_lefschetz(&s, j.t(), 7, 5);
        assert!(ok);
        let ranks: Vec<usize> = p.steps.iter().map(|st| st.3).collect();
        assert_eq!(ranks, vec![1, 3, 1]);
    }

    #[test]
    fn three_forms() {
        let f = poly("y^5 + x^2*z^3");
        let (a, b, c) = partials(&f);
        let three = saturate_three_forms([&a, &b, &c], None).unwrap();
        let (_, jac) = sat_of("y^5 + x^2*z^3");
        for k in 0..=9 {
            assert_eq!(three.saturated().piece(k), jac.saturated().piece(k));
        }

        let forms: Vec<HomogeneousPoly> = ["x^2", "y^2", "x*y"].iter().map(|s| poly(s)).collect();
        let s = saturate_three_forms([&forms[0], &forms[1], &forms[2]], None).unwrap();
        assert_eq!(s.nu(), 0);

        let forms: Vec<HomogeneousPoly> = ["x^2", "y^2", "z^2"].iter().map(|s| poly(s)).collect();
        assert!(matches!(
            saturate_three_forms([&forms[0], &forms[1], &forms[2]], None),
            Err(Error::NotCodimensionTwo { .. })
        ));

        let forms: Vec<HomogeneousPoly> = ["x^2", "y^2", "x^2+y^2"].iter().map(|s| poly(s)).collect();
        assert_eq!(
            saturate_three_forms([&forms[0], &forms[1], &forms[2]], None).unwrap_err(),
            Error::DependentForms
        );
    }
}
