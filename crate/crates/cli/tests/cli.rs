use std::process::{Command, Output};

fn qmg(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_qmg"))
        .args(args)
        .output()
        .expect("binary runs")
}

fn stdout(o: &Output) -> String {
    String::from_utf8(o.stdout.clone()).unwrap()
}

fn json(o: &Output) -> serde_json::Value {
    serde_json::from_slice(&o.stdout).expect("valid JSON")
}

#[test]
fn phase_flip_sweep_is_symmetric_and_starts_at_a_quarter() {
    let o = qmg(&[
        "sweep",
        "--channel",
        "pf",
        "--vary",
        "p",
        "--mu",
        "0",
        "--points",
        "11",
    ]);
    assert!(o.status.success());
    let text = stdout(&o);
    let mut lines = text.lines();
    assert_eq!(lines.next(), Some("channel,p,mu,gamma,player,payoff"));
    let p1: Vec<f64> = lines
        .filter(|l| l.split(',').nth(4) == Some("1"))
        .map(|l| l.rsplit(',').next().unwrap().parse().unwrap())
        .collect();
    assert_eq!(p1.len(), 11);
    assert!((p1[0] - 0.25).abs() < 1e-10);
    for i in 0..11 {
        assert!((p1[i] - p1[10 - i]).abs() < 1e-10);
    }
}

#[test]
fn depolarizing_mu_sweep_json() {
    let o = qmg(&[
        "sweep",
        "--channel",
        "dep",
        "--vary",
        "mu",
        "--p",
        "0.3",
        "--points",
        "5",
        "--format",
        "json",
    ]);
    assert!(o.status.success());
    let rows = json(&o);
    let rows = rows.as_array().unwrap();
    assert_eq!(rows.len(), 20);
    assert_eq!(rows[0]["channel"], "dep");
    assert_eq!(rows[19]["mu"], 1.0);
}

#[test]
fn sweeps_are_byte_identical_across_runs() {
    let dir = tempfile::tempdir().unwrap();
    let paths: Vec<_> = (0..2)
        .map(|i| dir.path().join(format!("fig{i}.csv")))
        .collect();
    for path in &paths {
        let o = qmg(&[
            "sweep",
            "--figure",
            "7",
            "--points",
            "21",
            "--out",
            path.to_str().unwrap(),
        ]);
        assert!(o.status.success());
        assert!(o.stdout.is_empty());
    }
    let a = std::fs::read(&paths[0]).unwrap();
    assert_eq!(a, std::fs::read(&paths[1]).unwrap());
    assert_eq!(
        String::from_utf8(a).unwrap().lines().count(),
        1 + 5 * 21 * 4
    );
}

#[test]
fn validate_passes_and_names_injected_fault() {
    let o = qmg(&["validate", "--grid", "5"]);
    assert_eq!(o.status.code(), Some(0), "{}", stdout(&o));
    assert!(stdout(&o).contains("all 6 checks passed"));

    let o = qmg(&["validate", "--grid", "5", "--inject-broken-channel"]);
    assert_eq!(o.status.code(), Some(1));
    let text = stdout(&o);
    assert!(text.contains("[FAIL] completeness"));
    assert!(text.contains("failed: completeness"));
}

#[test]
fn compare_phase_flip_is_consistent() {
    let o = qmg(&["compare", "--channel", "pf", "--format", "json"]);
    assert_eq!(o.status.code(), Some(0));
    let v = json(&o);
    assert_eq!(v["verdict"], "consistent");
    assert_eq!(v["points"].as_array().unwrap().len(), 55);
    assert!(String::from_utf8_lossy(&o.stderr).contains("verdict consistent"));
}

#[test]
fn compare_damping_reports_anomaly_without_failing() {
    let o = qmg(&["compare", "--channel", "ad"]);
    assert_eq!(o.status.code(), Some(0));
    let text = stdout(&o);
    assert!(text.starts_with("formula,p,mu,gamma,formula_value,simulated_value,abs_diff\n"));
    assert_eq!(text.lines().count(), 56);
    assert!(String::from_utf8_lossy(&o.stderr).contains("inconsistent"));
}

#[test]
fn compare_without_entanglement_simulates_constant_payoff() {
    let o = qmg(&[
        "compare",
        "--channel",
        "dep",
        "--gamma",
        "0",
        "--format",
        "json",
    ]);
    assert_eq!(o.status.code(), Some(0));
    let v = json(&o);
    for pt in v["points"].as_array().unwrap() {
        assert!((pt["simulated_value"].as_f64().unwrap() - 0.125).abs() < 1e-12);
    }
    let first = &v["points"][0];
    assert!((first["formula_value"].as_f64().unwrap() - 0.125).abs() < 1e-12);
}

#[test]
fn best_response_against_classical_players_without_entanglement() {
    let o = qmg(&[
        "best-response",
        "--channel",
        "pf",
        "--gamma",
        "0",
        "--others",
        "stay",
        "--grid",
        "5",
    ]);
    assert!(o.status.success());
    let v = json(&o);
    for key in [
        "theta",
        "alpha",
        "beta",
        "payoff",
        "ne_payoff",
        "deviation_gain",
    ] {
        assert!(v[key].is_number(), "missing {key}");
    }
    assert!((v["payoff"].as_f64().unwrap() - 1.0).abs() < 1e-12);
}

#[test]
fn best_response_at_equilibrium_has_no_gain() {
    let o = qmg(&["best-response", "--grid", "9", "--player", "3"]);
    assert!(o.status.success());
    let v = json(&o);
    assert!(v["deviation_gain"].as_f64().unwrap() <= 1e-6);
}

#[test]
fn payoff_with_explicit_strategies() {
    let ne = "pi/2,-pi/16,pi/16";
    let o = qmg(&[
        "payoff",
        "--channel",
        "pf",
        "--strategy",
        ne,
        "--strategy",
        ne,
        "--strategy",
        ne,
        "--strategy",
        ne,
    ]);
    assert!(o.status.success());
    let v = json(&o);
    for k in 1..=4 {
        assert!((v[format!("payoff_{k}")].as_f64().unwrap() - 0.25).abs() < 1e-10);
    }
    let o = qmg(&["payoff", "--channel", "pf", "--strategy", ne]);
    assert_eq!(o.status.code(), Some(2));
}

#[test]
fn usage_errors_exit_two() {
    assert_eq!(
        qmg(&["sweep", "--vary", "p", "--p", "1.5"]).status.code(),
        Some(2)
    );
    assert_eq!(
        qmg(&["sweep", "--channel", "xx", "--vary", "p"])
            .status
            .code(),
        Some(2)
    );
    assert_eq!(
        qmg(&["sweep", "--vary", "p", "--points", "1"])
            .status
            .code(),
        Some(2)
    );
    assert_eq!(qmg(&["sweep"]).status.code(), Some(2));
    assert_eq!(qmg(&["sweep", "--figure", "8"]).status.code(), Some(2));
    assert_eq!(
        qmg(&["best-response", "--player", "5"]).status.code(),
        Some(2)
    );
}

#[test]
fn unwritable_output_exits_two() {
    let o = qmg(&[
        "sweep",
        "--vary",
        "p",
        "--points",
        "2",
        "--out",
        "/nonexistent-dir/out.csv",
    ]);
    assert_eq!(o.status.code(), Some(2));
    assert!(String::from_utf8_lossy(&o.stderr).contains("cannot write"));
}

#[test]
fn overlap_report_shape() {
    let o = qmg(&["overlap", "--p-points", "11", "--format", "json"]);
    assert!(o.status.success());
    let v = json(&o);
    assert_eq!(v["points"].as_array().unwrap().len(), 11);
    assert!(v["max_diff"].as_f64().unwrap() >= 0.0);
}
