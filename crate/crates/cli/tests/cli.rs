use std::process::{Command, Output};

fn svpsido(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_svpsido")).args(args).output().expect("binary runs")
}

fn stdout(out: &Output) -> String {
    String::from_utf8_lossy(&out.stdout).into_owned()
}

#[test]
fn eval_prints_the_canonical_form() {
    let out = svpsido(&["eval", "theta(xi*d_xi)"]);
    assert!(out.status.success());
    assert_eq!(stdout(&out).trim(), "1/2*r*d_r | exact");
}

#[test]
fn eval_reports_parse_errors() {
    let out = svpsido(&["eval", "theta(xi*"]);
    assert_eq!(out.status.code(), Some(2));
    assert!(!out.stderr.is_empty());
}

#[test]
fn invariance_suite_passes() {
    let out = svpsido(&["verify", "--suite", "lemma33", "--floor", "-7/2", "--range", "3"]);
    assert!(out.status.success(), "{}", stdout(&out));
    assert!(stdout(&out).starts_with("PASS lemma33"));
}

#[test]
fn wrong_central_charge_is_reported() {
    let out = svpsido(&["verify", "--suite", "theorem61", "--c", "1", "--range", "2"]);
    assert_eq!(out.status.code(), Some(1));
    let text = stdout(&out);
    assert!(text.starts_with("FAIL theorem61"));
    assert!(text.contains("first failure"));
}

#[test]
fn json_report_has_the_documented_fields() {
    let out = svpsido(&["verify", "--suite", "lemma26", "--suite", "nu-scan", "--range", "2", "--nu-grid", "1/2", "--report", "json"]);
    assert!(out.status.success());
    let v: serde_json::Value = serde_json::from_slice(&out.stdout).unwrap();
    let reports = v.as_array().unwrap();
    assert_eq!(reports.len(), 2);
    for r in reports {
        for key in ["suite", "cases", "passed", "failures", "millis"] {
            assert!(r.get(key).is_some(), "missing {key} in {r}");
        }
        assert_eq!(r["cases"], r["passed"]);
    }
    assert!(reports[1]["notes"][1].as_str().unwrap().starts_with("nu = 1/2: mu = 1/2 ("));
}

#[test]
fn reports_are_identical_across_runs() {
    let strip = |o: Output| {
        let mut v: serde_json::Value = serde_json::from_slice(&o.stdout).unwrap();
        v.as_array_mut().unwrap().iter_mut().for_each(|r| r["millis"] = 0.into());
        v
    };
    let args = ["verify", "--suite", "theta", "--range", "2", "--random", "5", "--seed", "7", "--report", "json"];
    assert_eq!(strip(svpsido(&args)), strip(svpsido(&args)));
}

#[test]
fn bad_arguments_are_rejected() {
    assert_eq!(svpsido(&["verify", "--suite", "nonsense"]).status.code(), Some(2));
    assert_eq!(svpsido(&["verify", "--suite", "lemma26", "--range", "-1"]).status.code(), Some(2));
    assert_eq!(svpsido(&["verify", "--suite", "lemma26", "--floor", "-1/3"]).status.code(), Some(2));
    assert_eq!(svpsido(&["verify", "--suite", "lemma26", "--floor", "0"]).status.code(), Some(2));
}
