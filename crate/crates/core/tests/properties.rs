use proptest::prelude::*;

use curvesat::analysis::{analyze, CurveInput, Options};
use curvesat::classify::{Kind, Status};
use curvesat::exactla::rat;
use curvesat::jacobian::{jacobian_slices, milnor_dims};
use curvesat::parser::parse_arrangement;
use curvesat::poly::{dim_s, monomial_basis, HomogeneousPoly};
use curvesat::Error;

fn arb_form(d: u32) -> impl Strategy<Value = HomogeneousPoly> {
    let n = dim_s(d as usize);
    prop::collection::vec(prop_oneof![3 => Just(0i64), 2 => -3i64..=3], n).prop_map(move |c| {
        let terms = monomial_basis(d as usize)
            .into_iter()
            .zip(c)
            .map(|(m, v)| (m, rat(v)));
        HomogeneousPoly::from_terms(d, terms).expect("one degree")
    })
}

fn arb_lines(max: usize) -> impl Strategy<Value = Vec<String>> {
    prop::collection::vec((-3i64..=3, -3i64..=3, -3i64..=3), 3..=max).prop_map(|v| {
        v.into_iter()
            .map(|(a, b, c)| format!("{a}*x + {b}*y + {c}*z"))
            .collect()
    })
}

fn failures(input: CurveInput) -> Result<Vec<String>, Error> {
    let a = analyze(input, &Options::default())?;
    Ok(a.classification
        .checks
        .iter()
        .filter(|v| v.status == Status::Fail)
        .map(|v| format!("{}: {} vs {}", v.name, v.computed, v.expected))
        .collect())
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(24))]

    #[test]
    fn arrangements_pass_every_check(lines in arb_lines(6)) {
        // zero or proportional forms are not arrangements
        let spec = parse_arrangement(&lines);
        prop_assume!(spec.is_ok());
        let spec = spec.unwrap();
        let fails = failures(CurveInput::arrangement("random", spec)).unwrap();
        prop_assert!(fails.is_empty(), "{:?}", fails);
    }

    #[test]
    fn random_curves_pass_every_check(f in (3u32..=5).prop_flat_map(arb_form)) {
        let r = failures(CurveInput::poly("random", f));
        match r {
            Ok(fails) => prop_assert!(fails.is_empty(), "{:?}", fails),
            // zero input, or a repeated factor
            Err(Error::NonReducedInput { .. }) => {}
            Err(e) => prop_assert!(false, "{}", e),
        }
    }

    #[test]
    fn annihilator_dims_match_primal_ranks(f in (2u32..=4).prop_flat_map(arb_form)) {
        prop_assume!(!f.is_zero());
        let kmax = 3 * f.degree() as usize;
        let dual = milnor_dims(&f, kmax);
        let primal = jacobian_slices(&f, kmax);
        for (k, &n) in dual.iter().enumerate() {
            prop_assert_eq!(n, dim_s(k) - primal.dim(k));
        }
        prop_assert_eq!(dual.len(), kmax + 1);
    }
}

#[test]
fn ex1_curves_with_common_factor_still_nearly_free() {
    for (d, k) in [(4, 2), (6, 3), (6, 4), (8, 6)] {
        let f = curvesat::parser::parse_poly(&format!("y^{d} + x^{k}*z^{}", d - k)).unwrap();
        let a = analyze(CurveInput::poly("ex1", f), &Options::default()).unwrap();
        assert_eq!(a.classification.kind, Kind::NearlyFree);
        assert_eq!(a.classification.exponents, Some((1, d - 1)));
    }
}
