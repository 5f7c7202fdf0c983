use std::process::{Command, Output};

use curvesat::analysis::{analyze, CurveInput, Options};
use curvesat::parser::parse_poly;
use curvesat::report::CurveReport;

fn curvesat(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_curvesat"))
        .args(args)
        .env("CURVESAT_THREADS", "1")
        .output()
        .expect("binary runs")
}

fn stdout(o: &Output) -> String {
    String::from_utf8(o.stdout.clone()).unwrap()
}

#[test]
fn nearly_free_quartic_text() {
    let o = curvesat(&["analyze", "--poly", "y^4 + x*z^3"]);
    assert!(o.status.success());
    let text = stdout(&o);
    assert!(text.contains("NEARLY_FREE, exponents (1, 3)"), "{text}");
    assert!(text.contains("S/I_f      {2, 3 | 5}"), "{text}");
    assert!(!text.contains("FAIL"), "{text}");
}

#[test]
fn exit_codes() {
    assert_eq!(curvesat(&["analyze", "--poly", "x^2*y"]).status.code(), Some(3));
    assert_eq!(curvesat(&["analyze", "--poly", "x^2 + y"]).status.code(), Some(2));
    assert_eq!(curvesat(&["analyze", "--poly", "x*y +"]).status.code(), Some(2));
    assert_eq!(curvesat(&["analyze", "--catalog", "no-such-curve"]).status.code(), Some(2));
    assert_eq!(curvesat(&["analyze"]).status.code(), Some(2));
    assert_eq!(
        curvesat(&["analyze", "--poly", "x*y", "--catalog", "ex0-xy"]).status.code(),
        Some(2)
    );
    assert_eq!(curvesat(&["suite", "--only", "no-such-check"]).status.code(), Some(2));
}

#[test]
fn arrangement_file() {
    let dir = std::env::temp_dir().join(format!("curvesat-test-{}", std::process::id()));
    std::fs::create_dir_all(&dir).unwrap();
    let path = dir.join("braid.txt");
    std::fs::write(&path, "# braid arrangement\nx\ny\nz\nx-y\nx-z\ny-z\n").unwrap();
    let o = curvesat(&["analyze", "--arrangement", path.to_str().unwrap(), "--format", "json"]);
    assert!(o.status.success());
    let r = CurveReport::from_json(&stdout(&o)).unwrap();
    assert_eq!(r.invariants.tau, 19);
    assert_eq!(r.classification.exponents, Some((2, 3)));
    assert_eq!(r.point_counts.unwrap().get(&3), Some(&4));
    std::fs::write(&path, "x\n2*x\n").unwrap();
    let o = curvesat(&["analyze", "--arrangement", path.to_str().unwrap()]);
    assert_eq!(o.status.code(), Some(2));
    std::fs::remove_dir_all(&dir).unwrap();
}

#[test]
fn json_is_deterministic_and_sorted() {
    let args = ["analyze", "--catalog", "generic-4", "--format", "json"];
    let (a, b) = (curvesat(&args), curvesat(&args));
    assert!(a.status.success());
    assert_eq!(a.stdout, b.stdout);
    let v: serde_json::Value = serde_json::from_slice(&a.stdout).unwrap();
    assert_eq!(v["schemaVersion"], 1);
    assert_eq!(v["betti"]["saturated"], serde_json::json!([[0], [3, 3, 3, 3], [4, 4, 4]]));
    assert_eq!(v["classification"]["kind"], "NEARLY_FREE");
    assert!(v.get("timing").is_none());
    let timed = curvesat(&["analyze", "--catalog", "generic-4", "--format", "json", "--timing"]);
    let v: serde_json::Value = serde_json::from_slice(&timed.stdout).unwrap();
    assert!(v["timing"].is_array());
}

#[test]
fn report_round_trip() {
    for text in ["x*y", "y^5 + x^2*z^3", "x^3 + y^3 + z^3", "x*y*z*(x+y+z)*(x-2*y+3*z)"] {
        let f = parse_poly(text).unwrap();
        let a = analyze(CurveInput::poly(text, f), &Options::default()).unwrap();
        for timing in [false, true] {
            let r = CurveReport::new(&a, timing);
            let back = CurveReport::from_json(&r.to_json()).unwrap();
            if timing {
                // seconds may lose their last bit in decimal form
                assert_eq!(back.timing.as_ref().map(Vec::len), r.timing.as_ref().map(Vec::len));
                assert_eq!(CurveReport { timing: None, ..back }, CurveReport { timing: None, ..r });
            } else {
                assert_eq!(back, r);
            }
        }
    }
}

#[test]
fn kmax_is_recorded() {
    let o = curvesat(&["analyze", "--poly", "y^4 + x*z^3", "--format", "json", "--kmax", "12"]);
    let r = CurveReport::from_json(&stdout(&o)).unwrap();
    assert_eq!(r.kmax, 12);
    assert_eq!(r.milnor_dims.len(), 13);
    // clamped from below to 3d - 4
    let o = curvesat(&["analyze", "--poly", "y^4 + x*z^3", "--format", "json", "--kmax", "2"]);
    assert_eq!(CurveReport::from_json(&stdout(&o)).unwrap().kmax, 8);
}

#[test]
fn catalog_listing() {
    let o = curvesat(&["catalog", "list"]);
    assert!(o.status.success());
    let text = stdout(&o);
    for name in ["ex0-xy", "ex1-d10-k9", "fermat-6", "ziegler-A", "ziegler-Aprime", "nodal-d6"] {
        assert!(text.lines().any(|l| l.starts_with(&format!("{name} "))), "{name}");
    }
    assert!(text.contains("(x+y-z)*(5*x+2*y-10*z)"));
}

#[test]
fn suite_only_duality() {
    let o = curvesat(&["suite", "--only", "duality"]);
    assert!(o.status.success(), "{}", stdout(&o));
    let text = stdout(&o);
    let line = text.lines().find(|l| l.starts_with("duality")).unwrap();
    assert!(line.contains("fail   0"), "{line}");
    assert_eq!(text.lines().filter(|l| l.contains(" pass ")).count(), 1);
}
