use std::process::{Command, Output};

use nilzeta::formulas::zeta_closed_form;
use nilzeta::{RationalFunction, ZetaKind};
use serde_json::Value;

fn nilzeta(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_nilzeta")).args(args).output().expect("binary runs")
}

fn stdout(o: &Output) -> String {
    String::from_utf8(o.stdout.clone()).unwrap()
}

fn json(args: &[&str]) -> Value {
    let mut full = vec!["--format", "json"];
    full.extend_from_slice(args);
    let o = nilzeta(&full);
    assert!(o.status.success(), "{}", String::from_utf8_lossy(&o.stderr));
    serde_json::from_str(&stdout(&o)).unwrap()
}

#[test]
fn formula_heisenberg() {
    let o = nilzeta(&["formula", "--kind", "leq", "--n", "2"]);
    assert!(o.status.success());
    assert_eq!(stdout(&o), "(1 - p^3*t^3) / ((1 - t)*(1 - p*t)*(1 - p^2*t^2)*(1 - p^3*t^2))\n");
}

#[test]
fn funeq_hat_three() {
    let v = json(&["verify", "--suite", "funeq", "--kind", "hat", "--n", "3"]);
    let r = &v["result"]["reports"][0];
    assert_eq!(r["sign"], -1);
    assert_eq!(r["p_exp"], 15);
    assert_eq!(r["t_exp"], 7);
    assert_eq!(r["holds"], true);
}

#[test]
fn count_heisenberg() {
    let v = json(&["count", "--kind", "leq", "--n", "2", "--p", "2", "--max-k", "2"]);
    assert_eq!(v["result"]["counts"], serde_json::json!([1, 3, 19]));
    assert_eq!(v["result"]["agreement"], serde_json::json!([true, true, true]));
    assert!(v["checks"].as_array().unwrap().iter().all(|c| c["pass"] == true));
}

#[test]
fn count_writes_csv() {
    let path = std::env::temp_dir().join(format!("nilzeta-census-{}.csv", std::process::id()));
    let o = nilzeta(&[
        "count",
        "--kind",
        "normal",
        "--n",
        "2",
        "--p",
        "3",
        "--max-k",
        "1",
        "--csv",
        path.to_str().unwrap(),
    ]);
    assert!(o.status.success());
    let csv = std::fs::read_to_string(&path).unwrap();
    std::fs::remove_file(&path).ok();
    let rows: Vec<Vec<&str>> = csv.lines().map(|l| l.split(',').collect()).collect();
    assert_eq!(rows[0], ["n", "p", "k", "kind", "count", "elapsed_ms"]);
    assert_eq!(&rows[1][..5], ["2", "3", "0", "normal", "1"]);
    assert_eq!(&rows[2][..5], ["2", "3", "1", "normal", "4"]);
}

#[test]
fn json_formula_reparses() {
    for kind in ["leq", "normal", "hat"] {
        let v = json(&["formula", "--kind", kind, "--n", "3"]);
        assert_eq!(v["command"], "formula");
        assert_eq!(v["params"]["n"], 3);
        let parsed: RationalFunction = v["result"]["rendering"].as_str().unwrap().parse().unwrap();
        let expected = zeta_closed_form(kind.parse::<ZetaKind>().unwrap(), 3).unwrap();
        assert!(parsed.value_eq(&expected), "{kind}");
    }
}

#[test]
fn output_is_byte_stable() {
    let args = ["--format", "json", "verify", "--suite", "lemmas", "--n", "4"];
    assert_eq!(stdout(&nilzeta(&args)), stdout(&nilzeta(&args)));
}

#[test]
fn expand_and_abscissa() {
    let v = json(&["expand", "--kind", "leq", "--n", "3", "--p", "2", "--max-k", "2"]);
    assert_eq!(v["result"]["coefficients"], serde_json::json!([1, 7, 107]));
    let v = json(&["abscissa", "--kind", "leq", "--n", "6"]);
    assert_eq!(v["result"]["value"], "19/3");
    assert_eq!(v["result"]["status"], "exact");
    let v = json(&["abscissa", "--kind", "normal", "--n", "3"]);
    assert_eq!(v["result"]["status"], "candidate");
}

#[test]
fn suites_pass() {
    for args in [
        &["verify", "--suite", "lemmas", "--n", "5"][..],
        &["verify", "--suite", "descent", "--n", "4"],
        &["verify", "--suite", "typesum", "--n", "3", "--p", "2", "--max-k", "3"],
        &["verify", "--suite", "heisenberg"],
        &["verify", "--suite", "funeq", "--n", "4"],
    ] {
        let o = nilzeta(args);
        assert!(o.status.success(), "{args:?}");
        assert!(stdout(&o).lines().all(|l| !l.starts_with("FAIL")));
    }
}

#[test]
fn usage_errors_exit_two() {
    for args in [
        &["formula", "--kind", "leq", "--n", "1"][..],
        &["expand", "--kind", "leq", "--n", "2", "--p", "6", "--max-k", "2"],
        &["expand", "--kind", "leq", "--n", "2", "--p", "101", "--max-k", "2"],
        &["count", "--kind", "hat", "--n", "2", "--p", "2", "--max-k", "1"],
        &["verify", "--suite", "typesum", "--n", "2"],
        &["formula", "--kind", "bogus", "--n", "2"],
        &["frobnicate"],
    ] {
        let o = nilzeta(args);
        assert_eq!(o.status.code(), Some(2), "{args:?}");
        let err = String::from_utf8(o.stderr).unwrap();
        assert_eq!(err.lines().count(), 1, "{args:?}: {err}");
    }
}

#[test]
fn bad_worker_count_is_usage_error() {
    let o = Command::new(env!("CARGO_BIN_EXE_nilzeta"))
        .args(["formula", "--kind", "hat", "--n", "2"])
        .env("NILZETA_WORKERS", "zero")
        .output()
        .unwrap();
    assert_eq!(o.status.code(), Some(2));
    let o = Command::new(env!("CARGO_BIN_EXE_nilzeta"))
        .args(["count", "--kind", "leq", "--n", "2", "--p", "2", "--max-k", "2"])
        .env("NILZETA_WORKERS", "1")
        .output()
        .unwrap();
    assert!(o.status.success());
}
