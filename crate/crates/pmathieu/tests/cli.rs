//! End-to-end tests of the `pmathieu` binary: output shapes, determinism,
//! config handling, and the exit-code contract (0 ok, 1 usage, 2 domain,
//! 3 convergence/cross-check failure).
#![allow(clippy::excessive_precision)]

use std::process::{Command, Output};

use pmathieu::mathieu::s_classical;
use pmathieu::report::OutputRecord;

fn run(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_pmathieu"))
        .args(args)
        .output()
        .expect("binary spawns")
}

fn stdout_str(o: &Output) -> String {
    String::from_utf8(o.stdout.clone()).unwrap()
}

fn stderr_str(o: &Output) -> String {
    String::from_utf8(o.stderr.clone()).unwrap()
}

fn json(o: &Output) -> serde_json::Value {
    serde_json::from_str(stdout_str(o).trim()).expect("stdout is one JSON value")
}

#[test]
fn compute_defaults_to_json_and_auto_method() {
    let out = run(&["compute", "--mu", "1", "--p", "1", "--r", "0.5"]);
    assert_eq!(out.status.code(), Some(0), "stderr: {}", stderr_str(&out));
    let v = json(&out);
    assert_eq!(v["method"], "b4");
    let value = v["value"].as_f64().unwrap();
    assert!((value - 0.872_798_540_222_598_667_3).abs() < 1e-8, "value {value}");
    assert!(v["err_estimate"].as_f64().unwrap() > 0.0);
    assert!(v["terms"].as_u64().unwrap() > 0);
    assert!(v["elapsed_ns"].as_u64().is_some());
}

#[test]
fn compute_csv_matches_the_header_contract() {
    let out = run(&[
        "compute", "--mu", "0", "--p", "1", "--r", "0.5", "--method", "b3", "--format", "csv",
    ]);
    assert_eq!(out.status.code(), Some(0));
    let text = stdout_str(&out);
    let mut lines = text.lines();
    assert_eq!(
        lines.next().unwrap(),
        "method,mu,p,r,value,err_estimate,terms,elapsed_ns"
    );
    let row = lines.next().unwrap();
    assert!(row.starts_with("b3,"), "{row}");
    assert_eq!(row.split(',').count(), 8);
    assert!(lines.next().is_none());
    assert!(!text.contains('\r'));
}

#[test]
fn compute_series_at_p_zero_is_the_classical_sum() {
    let out = run(&["compute", "--mu", "1", "--p", "0", "--r", "0.5", "--method", "series"]);
    assert_eq!(out.status.code(), Some(0));
    let got = json(&out)["value"].as_f64().unwrap();
    let want = s_classical(1.0, 0.5, 1e-12).unwrap().value;
    assert!((got - want).abs() < 1e-9 * want.abs(), "{got} vs {want}");
}

#[test]
fn identical_invocations_are_deterministic_modulo_elapsed() {
    let args = ["compute", "--mu", "1.5", "--p", "0.5", "--r", "0.7"];
    let mut a = json(&run(&args));
    let mut b = json(&run(&args));
    a.as_object_mut().unwrap().remove("elapsed_ns");
    b.as_object_mut().unwrap().remove("elapsed_ns");
    assert_eq!(a, b);
}

#[test]
fn emitted_json_round_trips_through_the_record_type() {
    let out = run(&["compute", "--mu", "-0.5", "--p", "1", "--r", "0.5"]);
    assert_eq!(out.status.code(), Some(0));
    let line = stdout_str(&out);
    let v: serde_json::Value = serde_json::from_str(line.trim()).unwrap();
    let rec = OutputRecord {
        method: v["method"].as_str().unwrap().to_string(),
        mu: v["mu"].as_f64().unwrap(),
        p: v["p"].as_f64().unwrap(),
        r: v["r"].as_f64().unwrap(),
        value: v["value"].as_f64().unwrap(),
        err_estimate: v["err_estimate"].as_f64().unwrap(),
        terms: v["terms"].as_u64().unwrap(),
        elapsed_ns: v["elapsed_ns"].as_u64().unwrap(),
    };
    // Byte-identical re-serialization proves nothing was lost in transit.
    assert_eq!(rec.to_json(), line.trim());
}

#[test]
fn domain_errors_exit_2_and_name_the_precondition() {
    let out = run(&["compute", "--mu", "1", "--p", "-1", "--r", "0.5"]);
    assert_eq!(out.status.code(), Some(2));
    assert!(stderr_str(&out).contains("p >= 0"), "stderr: {}", stderr_str(&out));

    let out = run(&["compute", "--mu", "1", "--p", "1", "--r", "0.5", "--method", "b3"]);
    assert_eq!(out.status.code(), Some(2), "b3 at mu = 1 must be rejected");
    assert!(stderr_str(&out).contains("mu = 0"));
}

#[test]
fn usage_errors_exit_1_with_text_on_stderr() {
    for args in [
        &["compute", "--mu", "1", "--p", "1", "--r", "0.5", "--unknown-flag"][..],
        &["compute", "--mu", "1", "--p", "1"][..],
        &["compute", "--mu", "1", "--p", "1", "--r", "0.5", "--method", "nope"][..],
        &["no-such-command"][..],
    ] {
        let out = run(args);
        assert_eq!(out.status.code(), Some(1), "args: {args:?}");
        assert!(!stderr_str(&out).is_empty());
    }
}

#[test]
fn help_and_version_exit_0() {
    assert_eq!(run(&["--help"]).status.code(), Some(0));
    assert_eq!(run(&["--version"]).status.code(), Some(0));
}

#[test]
fn convergence_failure_exits_3_with_a_best_effort_record() {
    // r this close to 1 exceeds the series term cap.
    let out = run(&[
        "compute", "--mu", "1", "--p", "1", "--r", "0.9999", "--method", "series",
    ]);
    assert_eq!(out.status.code(), Some(3));
    assert!(stderr_str(&out).contains("convergence"));
    let v = json(&out);
    assert_eq!(v["method"], "series");
    assert!(v["value"].as_f64().unwrap().is_finite());
}

#[test]
fn compare_emits_the_applicable_records() {
    let out = run(&["compare", "--mu", "1", "--p", "1", "--r", "0.5"]);
    assert_eq!(out.status.code(), Some(0));
    let v = json(&out);
    let methods: Vec<&str> = v["records"]
        .as_array()
        .unwrap()
        .iter()
        .map(|r| r["method"].as_str().unwrap())
        .collect();
    assert_eq!(methods, vec!["series", "integral", "b4"]);
    assert!(v["max_pairwise_delta"].as_f64().unwrap() < 1e-8);
    assert_eq!(v["consistent"], true);

    let out = run(&["compare", "--mu", "2", "--p", "1", "--r", "1.5"]);
    let v = json(&out);
    let methods: Vec<&str> = v["records"]
        .as_array()
        .unwrap()
        .iter()
        .map(|r| r["method"].as_str().unwrap())
        .collect();
    assert_eq!(methods, vec!["integral", "b7"], "series excluded at |r| >= 1");

    let out = run(&["compare", "--mu", "0.25", "--p", "1", "--r", "0.5"]);
    let v = json(&out);
    assert_eq!(v["records"].as_array().unwrap().len(), 2, "no Schlomilch form at mu = 0.25");
}

#[test]
fn compare_detects_an_injected_disagreement() {
    let out = run(&[
        "compare", "--mu", "1", "--p", "1", "--r", "0.5", "--inject-fault", "1e-3",
    ]);
    assert_eq!(out.status.code(), Some(3));
    let v = json(&out);
    assert_eq!(v["consistent"], false);
    assert!(stderr_str(&out).contains("disagreement"));
}

#[test]
fn compare_without_applicable_methods_exits_2() {
    let out = run(&["compare", "--mu", "-2", "--p", "1", "--r", "0.5"]);
    assert_eq!(out.status.code(), Some(2));
    assert!(stderr_str(&out).contains("no applicable method"));
}

#[test]
fn convergence_table_shape_and_decay() {
    let out = run(&[
        "convergence", "--mu", "0", "--p", "1", "--r", "0.5", "--method", "b3",
        "--max-terms", "64",
    ]);
    assert_eq!(out.status.code(), Some(0));
    let text = stdout_str(&out);
    let mut lines = text.lines();
    assert_eq!(lines.next().unwrap(), "method,terms,partial,err_estimate");
    let rows: Vec<Vec<String>> = lines
        .map(|l| l.split(',').map(str::to_string).collect())
        .collect();
    let terms: Vec<u64> = rows.iter().map(|r| r[1].parse().unwrap()).collect();
    assert_eq!(terms, vec![1, 2, 4, 8, 16, 32, 64]);
    let errs: Vec<f64> = rows.iter().map(|r| r[3].parse().unwrap()).collect();
    for w in errs.windows(2) {
        assert!(w[1] < w[0], "err_estimate must decay: {errs:?}");
    }
    assert!(rows.iter().all(|r| r[0] == "b3"));
}

#[test]
fn convergence_final_partial_equals_the_computed_value() {
    let conv = run(&[
        "convergence", "--mu", "0", "--p", "1", "--r", "0.5", "--method", "b3",
        "--max-terms", "5000",
    ]);
    assert_eq!(conv.status.code(), Some(0));
    let text = stdout_str(&conv);
    let last = text.lines().last().unwrap();
    let partial: f64 = last.split(',').nth(2).unwrap().parse().unwrap();

    let comp = run(&["compute", "--mu", "0", "--p", "1", "--r", "0.5", "--method", "b3"]);
    let value = json(&comp)["value"].as_f64().unwrap();
    assert_eq!(partial, value, "final partial must equal the compute value");
}

#[test]
fn convergence_rejects_methods_without_term_structure() {
    let out = run(&[
        "convergence", "--mu", "1", "--p", "1", "--r", "0.5", "--method", "integral",
    ]);
    assert_eq!(out.status.code(), Some(2));
    let out = run(&[
        "convergence", "--mu", "0", "--p", "1", "--r", "0.5", "--method", "b3",
        "--max-terms", "0",
    ]);
    assert_eq!(out.status.code(), Some(1), "--max-terms 0 is a usage error");
}

#[test]
fn zeta_p_routes_agree_and_report_their_tags() {
    let a = json(&run(&["zeta-p", "--alpha", "3", "--p", "1"]));
    let b = json(&run(&["zeta-p", "--alpha", "3", "--p", "1", "--route", "integral"]));
    assert_eq!(a["method"], "zeta-kseries");
    assert_eq!(b["method"], "zeta-integral");
    let (va, vb) = (a["value"].as_f64().unwrap(), b["value"].as_f64().unwrap());
    assert!((va - vb).abs() < 1e-9 * vb.abs());

    let out = run(&["zeta-p", "--alpha", "0.5", "--p", "0"]);
    assert_eq!(out.status.code(), Some(2), "p = 0 needs alpha > 1");
}

#[test]
fn gl_check_verifies_the_eigenrelation() {
    let v = json(&run(&["gl-check", "--alpha", "0.5", "--x", "0.4"]));
    assert_eq!(v["all_pass"], true);
    let v = json(&run(&["gl-check", "--alpha", "2", "--x", "0.7"]));
    assert_eq!(v["all_pass"], true);
    assert_eq!(v["checks"].as_array().unwrap().len(), 2, "integer order adds the stencil check");

    let out = run(&["gl-check", "--alpha", "5"]);
    assert_eq!(out.status.code(), Some(2));
}

#[test]
fn selfcheck_lists_named_groups_and_honors_the_fault_hook() {
    let out = run(&["selfcheck"]);
    assert_eq!(out.status.code(), Some(0));
    let text = stdout_str(&out);
    let pass_lines: Vec<&str> = text.lines().filter(|l| l.starts_with("[PASS]")).collect();
    assert!(pass_lines.len() >= 6, "need >= 6 named groups:\n{text}");
    assert!(text.contains("kernel-parity"));

    let out = run(&["selfcheck", "--inject-fault"]);
    assert_eq!(out.status.code(), Some(3));
    assert!(stdout_str(&out).contains("[FAIL] kernel-parity"));
}

#[test]
fn config_file_sets_defaults_and_flags_override() {
    let dir = std::env::temp_dir();
    let path = dir.join("pmathieu_itest_config.txt");
    std::fs::write(&path, "tol=1e-4\n").unwrap();
    let cfg = path.to_str().unwrap();

    let loose = json(&run(&[
        "compute", "--mu", "0", "--p", "1", "--r", "0.5", "--method", "b3", "--config", cfg,
    ]));
    let tight = json(&run(&[
        "compute", "--mu", "0", "--p", "1", "--r", "0.5", "--method", "b3", "--config", cfg,
        "--tol", "1e-13",
    ]));
    let (tl, tt) = (loose["terms"].as_u64().unwrap(), tight["terms"].as_u64().unwrap());
    assert!(tl < tt, "config tol must loosen the sum ({tl} vs {tt})");

    std::fs::write(&path, "max_terms=8\n").unwrap();
    let conv = run(&[
        "convergence", "--mu", "0", "--p", "1", "--r", "0.5", "--method", "b3", "--config", cfg,
    ]);
    let text = stdout_str(&conv);
    let last_terms: u64 = text
        .lines()
        .last()
        .unwrap()
        .split(',')
        .nth(1)
        .unwrap()
        .parse()
        .unwrap();
    assert!(last_terms <= 8, "config max_terms caps the table:\n{text}");

    std::fs::write(&path, "no_such_key=1\n").unwrap();
    let out = run(&[
        "compute", "--mu", "0", "--p", "1", "--r", "0.5", "--config", cfg,
    ]);
    assert_eq!(out.status.code(), Some(1), "unknown config keys are usage errors");
    std::fs::remove_file(&path).ok();
}
