use assert_cmd::Command;
use lmo_core::invariants::InvariantReport;
use serde_json::Value;

fn lmo() -> Command {
    Command::cargo_bin("lmo").unwrap()
}

fn stdout_of(args: &[&str]) -> String {
    let out = lmo().args(args).assert().success().get_output().stdout.clone();
    String::from_utf8(out).unwrap()
}

#[test]
fn dedekind_json() {
    let s = stdout_of(&["dedekind", "4/25", "--format", "json"]);
    let v: Value = serde_json::from_str(&s).unwrap();
    assert_eq!(v, serde_json::json!({"S": "48/25"}));
    assert_eq!(stdout_of(&["dedekind", "9/25"]).trim(), "48/25");
    assert_eq!(stdout_of(&["dedekind", "-1/3"]).trim(), "-2/3");
    assert_eq!(stdout_of(&["dedekind", "3"]).trim(), "0/1");
}

#[test]
fn lens_of_sphere_is_one() {
    let s = stdout_of(&["lens", "1", "1", "--order", "6", "--format", "json"]);
    let r: InvariantReport = serde_json::from_str(&s).unwrap();
    assert_eq!(r.series.order(), 6);
    assert!(r.series.is_one());
    assert_eq!(r.e0, None);
}

#[test]
fn seifert_json_round_trips() {
    for args in [
        vec!["seifert", "-1", "2/1", "3/1", "5/1", "--format", "json"],
        vec!["seifert", "2", "3/2", "--order", "5", "--format", "json"],
        vec!["lens", "7", "-3", "--format", "json"],
    ] {
        let s = stdout_of(&args);
        let r: InvariantReport = serde_json::from_str(&s).unwrap();
        assert_eq!(serde_json::to_string(&r).unwrap(), s.trim());
        let v: Value = serde_json::from_str(&s).unwrap();
        for key in ["series", "casson_walker", "e0", "h1_order"] {
            assert!(v.get(key).is_some(), "{key} missing from {s}");
        }
    }
}

#[test]
fn poincare_sphere_text() {
    let s = stdout_of(&["seifert", "-1", "2/1", "3/1", "5/1", "--order", "2"]);
    assert!(s.contains("e0        1/30"), "{s}");
    assert!(s.contains("λ_w       -2"), "{s}");
    assert!(s.contains("ħ^1  -6"), "{s}");
    assert_eq!(stdout_of(&["casson", "-1", "2/1", "3/1", "5/1"]).trim(), "-2/1");
}

#[test]
fn table_is_csv_or_json() {
    let s = stdout_of(&["dedekind-table", "--qmax", "25"]);
    let mut lines = s.lines();
    assert_eq!(lines.next(), Some("p,q,qS"));
    assert!(s.lines().any(|l| l == "4,25,48"));
    let j: Value = serde_json::from_str(&stdout_of(&["dedekind-table", "--qmax", "3", "--format", "json"])).unwrap();
    assert_eq!(j, serde_json::json!([{"p":1,"q":2,"qS":0},{"p":1,"q":3,"qS":2},{"p":2,"q":3,"qS":-2}]));
}

#[test]
fn cfrac_reports_both_routes() {
    let v: Value = serde_json::from_str(&stdout_of(&["cfrac", "4/25", "--format", "json"])).unwrap();
    assert_eq!(v["S_direct"], "48/25");
    assert_eq!(v["S_surgery"], "48/25");
    assert_eq!(v["det"], v["q"]);
    let t = stdout_of(&["cfrac", "2/3"]);
    for key in ["a ", "(p,u,q,v)", "τ", "ς", "det Λ", "l^11", "l^1ℓ", "l^ℓℓ", "S direct", "S surgery"] {
        assert!(t.contains(key), "{key} missing from {t}");
    }
}

#[test]
fn ihs_poincare() {
    let v: Value = serde_json::from_str(&stdout_of(&["ihs", "2", "3", "5", "--sign", "+", "--exhaustive", "--format", "json"])).unwrap();
    assert_eq!(v["b"], -1);
    assert_eq!(v["unique"], true);
    let qs: Vec<i64> = v["fibers"].as_array().unwrap().iter().map(|f| f["q"].as_i64().unwrap()).collect();
    assert_eq!(qs, vec![1, 1, 1]);
}

#[test]
fn aarhus_unknot_series() {
    let v: Value = serde_json::from_str(&stdout_of(&["aarhus-unknot", "1", "--order", "2", "--format", "json"])).unwrap();
    assert_eq!(v["series"][0], "1/1");
}

#[test]
fn zrest_check_agrees() {
    let v: Value = serde_json::from_str(&stdout_of(&["zrest-check", "1", "2/1", "--hbar", "0.1", "--format", "json"])).unwrap();
    assert!(v["difference"].as_f64().unwrap() < 1e-6);
    lmo().args(["zrest-check", "-1", "2/1"]).assert().code(1);
}

#[test]
fn verify_passes() {
    let s = stdout_of(&["verify", "--order", "8"]);
    assert!(s.lines().all(|l| !l.starts_with("FAIL")), "{s}");
    assert!(s.contains("0 failed"));
}

#[test]
fn exit_codes() {
    let a = lmo().args(["lens", "4", "2"]).assert().code(1);
    let err = String::from_utf8(a.get_output().stderr.clone()).unwrap();
    assert_eq!(err.lines().count(), 1, "{err}");
    lmo().args(["dedekind", "1/0"]).assert().code(2);
    lmo().args(["seifert", "-1", "2/1", "2/1"]).assert().code(1);
    lmo().args(["seifert", "0", "1/1"]).assert().code(2);
    lmo().args(["ihs", "2", "4"]).assert().code(1);
    lmo().args(["frobnicate"]).assert().code(2);
    lmo().assert().code(2);
    lmo().args(["lens", "x", "1"]).assert().code(2);
}
