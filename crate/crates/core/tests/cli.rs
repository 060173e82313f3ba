use std::process::Command;

use prime_geodesic::cli::run;
use serde_json::Value;

const BIN: &str = env!("CARGO_BIN_EXE_prime-geodesic");

fn run_lib(args: &[&str]) -> (i32, String, String) {
    let mut out = Vec::new();
    let mut err = Vec::new();
    let argv = std::iter::once("prime-geodesic").chain(args.iter().copied());
    let code = run(argv, &mut out, &mut err);
    (code, String::from_utf8(out).unwrap(), String::from_utf8(err).unwrap())
}

fn json(args: &[&str]) -> Value {
    let mut a = args.to_vec();
    a.extend(["--output", "json"]);
    let (code, out, err) = run_lib(&a);
    assert_eq!(code, 0, "{err}");
    serde_json::from_str(&out).unwrap()
}

fn value(report: &Value, name: &str) -> f64 {
    for section in ["values", "residuals"] {
        if let Some(v) = report[section].as_array().unwrap().iter().find(|t| t["name"] == name) {
            return v["value"].as_f64().unwrap();
        }
    }
    panic!("no value `{name}` in {report}");
}

#[test]
fn psi_prints_the_known_value() {
    let out = Command::new(BIN).args(["psi", "--x", "10", "--method", "oracle"]).output().unwrap();
    assert!(out.status.success());
    let text = String::from_utf8(out.stdout).unwrap();
    assert!(text.lines().next().unwrap().contains("1.9248473"), "{text}");
    let r = json(&["psi", "--x", "10", "--method", "oracle"]);
    assert!((value(&r, "psi") - 1.924_847_3).abs() < 1e-6);
    assert_eq!(r["settings"]["method"], "oracle");
}

#[test]
fn pi_prints_five() {
    let out = Command::new(BIN).args(["pi", "--x", "25"]).output().unwrap();
    assert!(out.status.success());
    let text = String::from_utf8(out.stdout).unwrap();
    assert_eq!(text.lines().next().unwrap().split_whitespace().collect::<Vec<_>>(), ["pi", "5"]);
}

#[test]
fn verify_identities_small_profile() {
    let out = Command::new(BIN)
        .args(["verify", "--suite", "identities", "--max-n", "50", "--max-q", "100"])
        .output()
        .unwrap();
    assert_eq!(out.status.code(), Some(0), "{}", String::from_utf8_lossy(&out.stderr));
}

#[test]
fn verify_failure_exits_one_with_counterexample() {
    let out = Command::new(BIN)
        .args(["verify", "--suite", "t-zeros", "--tolerance", "1e-300"])
        .output()
        .unwrap();
    assert_eq!(out.status.code(), Some(1));
    let err = String::from_utf8(out.stderr).unwrap();
    assert!(err.starts_with("FAIL t-zeros: "), "{err}");
}

#[test]
fn usage_errors_exit_two() {
    for args in [&["psi"][..], &["psi", "--x", "abc"], &["frobnicate"], &["psi", "--x", "10", "--method", "magic"]] {
        let out = Command::new(BIN).args(args).output().unwrap();
        assert_eq!(out.status.code(), Some(2), "{args:?}");
        let err = String::from_utf8_lossy(&out.stderr).to_string();
        assert!(err.contains("Usage") || err.contains("--help"), "{args:?}: {err}");
    }
}

#[test]
fn domain_errors_exit_three_naming_the_parameter() {
    let cases: [(&[&str], &str); 6] = [
        (&["psi", "--x", "1"], "`x`"),
        (&["smooth", "--x", "100", "--Y", "0"], "`Y`"),
        (&["sv", "--n", "2", "--V", "10"], "`n`"),
        (&["s1s2", "--n", "5", "--z", "1", "--Z", "10"], "`z`"),
        (&["thm13", "--a", "1.5", "--b", "12", "--q-max", "200"], "`a`"),
        (&["explicit", "--x", "100", "--T", "5", "--eigenfile", "/nonexistent/file"], "`eigenfile`"),
    ];
    for (args, param) in cases {
        let (code, _, err) = run_lib(args);
        assert_eq!(code, 3, "{args:?}");
        assert!(err.contains(param), "{args:?}: {err}");
    }
}

#[test]
fn subcommands_produce_reports() {
    let r = json(&["table", "--x-min", "10", "--x-max", "1000", "--points", "5", "--log-spaced"]);
    let rows = r["rows"].as_array().unwrap();
    assert_eq!(rows.len(), 5);
    assert_eq!(rows[4][0]["value"], 1000.0);

    let r = json(&["smooth", "--x", "500", "--Y", "50"]);
    let identity = 500.0 + value(&r, "first_moment") + value(&r, "E");
    assert!((value(&r, "psi_smoothed") - identity).abs() < 1e-9);
    assert!((value(&r, "first_moment") - 25.0).abs() < 1e-9);

    let template = concat!(env!("CARGO_MANIFEST_DIR"), "/data/eigenvalues.txt");
    let r = json(&["explicit", "--x", "100", "--T", "5", "--eigenfile", template]);
    assert_eq!(value(&r, "approx"), 100.0);
    assert_eq!(value(&r, "terms"), 0.0);

    let r = json(&["sv", "--n", "3", "--V", "1000"]);
    assert!(value(&r, "abs_diff") < 1e-3);

    let r = json(&["short", "--x", "1000", "--u", "100"]);
    assert!(value(&r, "delta_psi") > 0.0);

    let r = json(&["meanL", "--X", "100", "--delta", "50"]);
    assert_eq!(value(&r, "terms"), 50.0);

    let r = json(&["s1s2", "--n", "3", "--z", "2", "--Z", "10"]);
    assert_eq!(value(&r, "S2"), 0.0);
    assert!((value(&r, "S1") - (-1.0 / 3.0 - 1.0 / 7.0)).abs() < 1e-15);

    let r = json(&["thm13", "--a", "2.5", "--b", "12", "--q-max", "200"]);
    let cutoffs: Vec<f64> = r["rows"].as_array().unwrap().iter().map(|row| row[0]["value"].as_f64().unwrap()).collect();
    assert_eq!(cutoffs, [25.0, 50.0, 100.0, 200.0]);
}

#[test]
fn theta_changes_only_the_normalization() {
    let a = json(&["short", "--x", "1000", "--u", "100"]);
    let b = json(&["--theta", "0", "short", "--x", "1000", "--u", "100"]);
    assert_eq!(value(&a, "delta_psi"), value(&b, "delta_psi"));
    assert!(value(&a, "normalized") < value(&b, "normalized"));
}
