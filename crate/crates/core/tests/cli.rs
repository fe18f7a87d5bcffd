use proptest::prelude::*;
use qmat_core::cli::{parse_poly, parse_qrat, run, Ambient, ParseError};
use qmat_core::freealg::{Gen, NCPoly, Word};
use qmat_core::scalars::{Field, QRat, ZPoly};
use serde_json::Value;
use std::process::Command;

fn qmat(args: &[&str]) -> (i32, String, String) {
    let out = Command::new(env!("CARGO_BIN_EXE_qmat")).args(args).output().expect("qmat runs");
    (
        out.status.code().unwrap_or(-1),
        String::from_utf8_lossy(&out.stdout).into_owned(),
        String::from_utf8_lossy(&out.stderr).into_owned(),
    )
}

/// Structural validation against schema/report.schema.json.
fn assert_report_schema(v: &Value) {
    let schema: Value = serde_json::from_str(include_str!("../../../schema/report.schema.json")).unwrap();
    let keys: Vec<&str> = schema["required"].as_array().unwrap().iter().map(|k| k.as_str().unwrap()).collect();
    let obj = v.as_object().expect("object");
    assert_eq!(obj.len(), keys.len(), "{v}");
    for k in keys {
        assert!(obj.contains_key(k), "missing {k}");
    }
    assert!(v["suite"].is_string());
    for (_, p) in v["params"].as_object().expect("params") {
        assert!(p.is_i64() || p.is_u64() || p.is_string(), "{p}");
    }
    let mut all_pass = true;
    for c in v["checks"].as_array().expect("checks") {
        let c = c.as_object().unwrap();
        assert!(c["name"].is_string());
        assert!(c.keys().all(|k| ["name", "status", "witness"].contains(&k.as_str())));
        let status = c["status"].as_str().unwrap();
        assert!(status == "pass" || status == "fail");
        if status == "fail" {
            all_pass = false;
            assert!(c["witness"].is_string(), "failure without witness");
        }
    }
    assert_eq!(v["status"], if all_pass { "pass" } else { "fail" });
}

#[test]
fn normal_form_example() {
    let (code, out, _) = qmat(&["nf", "--m", "1", "--n", "1", "--expr", "dt[1,1] t[1,1]"]);
    assert_eq!(code, 0);
    assert_eq!(out.trim(), "(q^-2) t[1,1] dt[1,1]");
}

#[test]
fn rhat_dump() {
    let (code, out, _) = qmat(&["rhat", "--N", "5"]);
    assert_eq!(code, 0);
    assert!(out.contains("[pass] Hecke identity"));
    assert!(out.contains("[pass] braid relation"));
    assert!(out.contains("Rhat[11 -> 11] = q^-1"));
}

#[test]
fn module_algebra_report() {
    let (code, out, _) = qmat(&["verify", "--suite", "module-algebra", "--m", "1", "--n", "1", "--maxdeg", "3", "--json"]);
    assert_eq!(code, 0);
    let v: Value = serde_json::from_str(&out).unwrap();
    assert_report_schema(&v);
    assert_eq!(v["status"], "pass");
    assert_eq!(v["params"]["maxdeg"], 3);
}

#[test]
fn specialized_reports_carry_q0() {
    let (code, out, _) = qmat(&["verify", "--suite", "module-algebra", "--m", "1", "--n", "2", "--q0", "1/3", "--json"]);
    assert_eq!(code, 0);
    let v: Value = serde_json::from_str(&out).unwrap();
    assert_report_schema(&v);
    assert_eq!(v["params"]["q0"], "1/3");
    let (code, _, err) = qmat(&["verify", "--suite", "module-algebra", "--m", "1", "--n", "1", "--q0", "1"]);
    assert_eq!(code, 2, "{err}");
}

#[test]
fn every_suite_emits_a_valid_report() {
    for suite in ["hopf", "embed", "grading", "uniqueness", "flatness", "differential"] {
        let (code, out, err) = qmat(&["verify", "--suite", suite, "--m", "1", "--n", "1", "--maxdeg", "2", "--json"]);
        assert_eq!(code, 0, "{suite}: {err}");
        assert_report_schema(&serde_json::from_str(&out).unwrap());
    }
    // the uniqueness probe cannot certify (1,2) at L = 3
    let (code, out, _) = qmat(&["verify", "--suite", "uniqueness", "--m", "1", "--n", "2", "--json"]);
    assert_eq!(code, 1);
    assert_report_schema(&serde_json::from_str(&out).unwrap());
}

#[test]
fn usage_errors_exit_2() {
    assert_eq!(qmat(&["nf", "--m", "1", "--n", "2", "--expr", "t[3,1]"]).0, 2);
    assert_eq!(qmat(&["nf", "--m", "1", "--n", "1", "--expr", "t[1,1] +"]).0, 2);
    assert_eq!(qmat(&["verify", "--suite", "nope", "--m", "1", "--n", "1"]).0, 2);
    assert_eq!(qmat(&["minor", "--m", "2", "--n", "1", "--cols", "2,1"]).0, 2);
    assert_eq!(qmat(&["pair", "--N", "2", "--func", "E_1", "--word", "E_1"]).0, 2);
    assert_eq!(qmat(&["rhat", "--N", "3", "--inject", "k-entry"]).0, 2);
    assert_eq!(qmat(&["--help"]).0, 0);
}

#[test]
fn small_commands() {
    let (code, out, _) = qmat(&["minor", "--m", "2", "--n", "1", "--cols", "1,2"]);
    assert_eq!(code, 0);
    assert_eq!(out.trim(), "x(1,2) = u[1,1] u[2,2] + (-q) u[1,2] u[2,1]");
    // <u12, E_1> is the (1,2) entry of E_1 in the natural representation
    let (code, out, _) = qmat(&["pair", "--N", "2", "--func", "u[1,2]", "--word", "E_1", "--json"]);
    assert_eq!(code, 0);
    assert_eq!(serde_json::from_str::<Value>(&out).unwrap()["value"], "1");
    let (_, out, _) = qmat(&["pair", "--N", "2", "--func", "u[1,1] u[2,2]", "--word", "K_1"]);
    assert!(out.trim().ends_with("= 1"), "{out}");
    let (code, out, _) = qmat(&["hilbert", "--m", "2", "--n", "2", "--maxdeg", "2"]);
    assert_eq!(code, 0);
    assert!(out.contains("   2    4      10      10         10"), "{out}");
}

#[test]
fn derive_action_writes_golden_layout() {
    let dir = std::env::temp_dir().join(format!("qmat-golden-{}", std::process::id()));
    let (code, out, err) = qmat(&["derive-action", "--m", "1", "--n", "2", "--out", dir.to_str().unwrap()]);
    assert_eq!(code, 0, "{err}");
    assert!(out.contains("F_1 . t[1,1] = (-q^2) t[1,1] t[1,1]"), "{out}");
    let action: Value = serde_json::from_str(&std::fs::read_to_string(dir.join("1x2/action.json")).unwrap()).unwrap();
    assert_eq!(action["m"], 1);
    assert_eq!(action["L"], 4);
    assert_eq!(action["actions"]["E_1"]["t[1,1]"], "(q^-1)");
    let rules: Value = serde_json::from_str(&std::fs::read_to_string(dir.join("1x2/rules.json")).unwrap()).unwrap();
    assert!(rules["rules"].as_array().unwrap().iter().any(|r| r == "t[2,1] t[1,1] -> (q^-1) t[1,1] t[2,1]"), "{rules}");
    std::fs::remove_dir_all(dir).ok();
    // L = 3 cannot certify F_1 . t[2,1]
    let (code, _, err) = qmat(&["derive-action", "--m", "1", "--n", "2", "--L", "3", "--out", "/nonexistent"]);
    assert_eq!(code, 1);
    assert!(err.contains("increase L"), "{err}");
}

#[test]
fn in_process_runner_matches_binary() {
    let o = run(["qmat", "nf", "--m", "1", "--n", "2", "--expr", "t[2,1] t[1,1]"]);
    assert_eq!(o.code, 0);
    assert_eq!(o.stdout, "(q^-1) t[1,1] t[2,1]");
}

#[test]
fn parse_errors() {
    let amb = Ambient::Calculus { m: 1, n: 2 };
    match parse_poly("t[3,1]", amb) {
        Err(ParseError::Index { atom, .. }) => assert_eq!(atom, "t[3,1]"),
        other => panic!("{other:?}"),
    }
    assert!(matches!(parse_poly("E_3", amb), Err(ParseError::Index { .. })));
    assert!(matches!(parse_poly("u[1,1]", amb), Err(ParseError::Index { .. })));
    assert!(matches!(parse_poly("t[1,1] ^", amb), Err(ParseError::Syntax { pos: 8, .. })));
    assert!(matches!(parse_poly("1/0", amb), Err(ParseError::Syntax { .. })));
}

const CORPUS: &[&str] = &[
    "t[1,1]^2",
    "(q^-1 - q) dt[1,1] t[1,1]",
    "-t[1,1] + 3 t[2,1] t[1,1] - (q^2 + 1)/q dt[2,1]",
    "((q^2 + 1)/(q^3 - q)) t[1,1] dt[2,1]",
    "(2*q - 1)/3",
    "(t[1,1] + t[2,1])^2",
    "E_1 F_1 - F_1 E_1",
    "q^-2 K_2 Ki_2 + 0",
    "2 (q) (t[1,1])",
];

#[test]
fn render_round_trip_corpus() {
    let amb = Ambient::Calculus { m: 1, n: 2 };
    for src in CORPUS {
        let p = parse_poly(src, amb).unwrap_or_else(|e| panic!("{src}: {e}"));
        let again = parse_poly(&p.to_string(), amb).unwrap_or_else(|e| panic!("{p}: {e}"));
        assert_eq!(p, again, "{src}");
    }
    assert_eq!(parse_qrat("(q^2+1)/q").unwrap(), QRat::q().add(&QRat::q_pow(-1)));
}

fn coefficient() -> impl Strategy<Value = QRat> {
    (prop::collection::vec(-5i64..=5, 1..4), -3i64..=3, prop::collection::vec(1i64..=3, 1..3)).prop_map(
        |(num, shift, den)| {
            let n = QRat::from_poly(ZPoly::from_i64s(&num)).mul(&QRat::q_pow(shift));
            n.try_div(&QRat::from_poly(ZPoly::from_i64s(&den))).unwrap()
        },
    )
}

fn generator() -> impl Strategy<Value = Gen> {
    prop_oneof![
        (1u8..=2).prop_map(|a| Gen::T { a, alpha: 1 }),
        (1u8..=2).prop_map(|a| Gen::Dt { a, alpha: 1 }),
        (1u8..=2).prop_map(Gen::E),
        (1u8..=2).prop_map(Gen::F),
        (1u8..=2).prop_map(Gen::K),
        (1u8..=2).prop_map(Gen::Kinv),
    ]
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(128))]

    #[test]
    fn render_then_parse_is_identity(
        terms in prop::collection::vec((coefficient(), prop::collection::vec(generator(), 0..4)), 0..5)
    ) {
        let p = NCPoly::from_terms(terms.into_iter().map(|(c, g)| (Word::from_gens(&g), c)));
        let back = parse_poly(&p.to_string(), Ambient::Calculus { m: 1, n: 2 });
        prop_assert_eq!(back, Ok(p));
    }
}
