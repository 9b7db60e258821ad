//! End-to-end behaviour of the `thermoweak` binary.

use std::path::PathBuf;
use std::process::{Command, Output};

fn thermoweak(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_thermoweak"))
        .args(args)
        .output()
        .expect("binary runs")
}

fn stdout(out: &Output) -> String {
    assert!(
        out.status.success(),
        "stderr: {}",
        String::from_utf8_lossy(&out.stderr)
    );
    String::from_utf8(out.stdout.clone()).unwrap()
}

/// Asserts a single-line `error: kind=<kind> message="..."` and a nonzero exit.
fn assert_error(out: &Output, kind: &str) {
    assert!(!out.status.success());
    let err = String::from_utf8_lossy(&out.stderr);
    assert_eq!(err.lines().count(), 1, "{err}");
    assert!(
        err.starts_with(&format!("error: kind={kind} message=\"")),
        "{err}"
    );
    assert!(err.trim_end().ends_with('"'));
}

fn scratch(name: &str) -> PathBuf {
    let dir = std::env::temp_dir().join(format!("thermoweak-cli-{}", std::process::id()));
    std::fs::create_dir_all(&dir).unwrap();
    dir.join(name)
}

fn data_rows(csv: &str) -> Vec<Vec<f64>> {
    csv.lines()
        .filter(|l| !l.starts_with('#'))
        .skip(1)
        .map(|l| l.split(',').map(|v| v.parse().unwrap()).collect())
        .collect()
}

#[test]
fn mh_grid_files_are_deterministic() {
    let (a, b) = (scratch("a.csv"), scratch("b.csv"));
    for path in [&a, &b] {
        let args = ["mh-grid", "--mean-n", "0.01", "--q-count", "41", "--p-count", "41", "--no-header", "--out"];
        let out = thermoweak(&[&args[..], &[path.to_str().unwrap()]].concat());
        assert!(out.status.success());
    }
    let (a, b) = (std::fs::read(a).unwrap(), std::fs::read(b).unwrap());
    assert_eq!(a, b);
    let text = String::from_utf8(a).unwrap();
    assert!(text.starts_with("# mh-grid mean_n=1.00000000000e-2 "));
    assert_eq!(text.lines().nth(1), Some("q,p,value"));
    assert_eq!(data_rows(&text).len(), 41 * 41);
}

#[test]
fn header_switch_drops_only_the_version_line() {
    let with = stdout(&thermoweak(&["negativity-prob", "--steps", "5"]));
    let without = stdout(&thermoweak(&["negativity-prob", "--steps", "5", "--no-header"]));
    let first = with.lines().next().unwrap();
    assert_eq!(first, format!("# thermoweak {}", env!("CARGO_PKG_VERSION")));
    assert_eq!(&with[first.len() + 1..], without);
}

#[test]
fn mh_grid_header_records_minimum() {
    let csv = stdout(&thermoweak(&["mh-grid", "--mean-n", "0.01", "--q-count", "61", "--p-count", "61"]));
    let meta = csv.lines().nth(1).unwrap();
    let min: f64 = meta
        .split(' ')
        .find_map(|kv| kv.strip_prefix("min="))
        .unwrap()
        .parse()
        .unwrap();
    assert!(min < 0.0);
    let rows = data_rows(&csv);
    let data_min = rows.iter().map(|r| r[2]).fold(f64::INFINITY, f64::min);
    assert_eq!(min, data_min);

    let vacuum = stdout(&thermoweak(&["mh-grid", "--mean-n", "0", "--q-count", "3", "--p-count", "3"]));
    assert!(vacuum.contains("0.00000000000e0,0.00000000000e0,2.25079079039e-1"));
}

#[test]
fn weakvalue_methods_agree() {
    let csv = stdout(&thermoweak(&[
        "weakvalue-curve", "--mean-n", "0.3", "--q-min", "-5", "--q-max", "5", "--q-count", "41",
    ]));
    let meta = csv.lines().nth(1).unwrap();
    assert!(meta.contains("threshold="));
    assert_eq!(csv.lines().nth(2), Some("q,closed,integral,negative"));
    for row in data_rows(&csv) {
        assert!((row[1] - row[2]).abs() < 1e-8, "{row:?}");
        assert_eq!(row[3] == 1.0, row[1] < 0.0);
    }
}

#[test]
fn json_output_has_meta_and_data() {
    let out = stdout(&thermoweak(&["weakvalue-curve", "--mean-n", "0", "--q-count", "5", "--format", "json"]));
    let v: serde_json::Value = serde_json::from_str(&out).unwrap();
    assert_eq!(v["meta"]["kind"], "weakvalue-curve");
    assert_eq!(v["meta"]["threshold"], 1.0);
    assert_eq!(v["data"]["closed"][0], -8.0);

    let bare = stdout(&thermoweak(&["occupation", "--wien", "wavelength", "--format", "json", "--no-header"]));
    let v: serde_json::Value = serde_json::from_str(&bare).unwrap();
    assert!(v["meta"].get("version").is_none());
    assert!((v["data"]["mean_n"].as_f64().unwrap() - 7.026176e-3).abs() < 1e-9);
}

#[test]
fn occupation_inputs() {
    let out = stdout(&thermoweak(&["occupation", "--temperature", "1e-6", "--frequency", "1e5"]));
    let row = data_rows(&out).remove(0);
    assert!(row[1] > 1e-3 && row[1] < 1e-1);
    assert_error(&thermoweak(&["occupation", "--temperature", "1"]), "invalid-argument");
    assert_error(&thermoweak(&["occupation", "--temperature", "-1", "--omega", "1e9"]), "invalid-argument");
    assert_error(&thermoweak(&["occupation", "--wien", "both"]), "usage");
}

#[test]
fn simulate_vacuum_sweep() {
    let out = stdout(&thermoweak(&["simulate", "--q", "2", "--g", "0.2,0.1,0.05,0.01"]));
    let rows = data_rows(&out);
    assert_eq!(rows.len(), 4);
    for w in rows.windows(2) {
        assert!(w[1][5] < w[0][5]);
    }
    assert!((rows[3][3] + 3.0).abs() < 0.15);

    let out = stdout(&thermoweak(&["simulate", "--mean-n", "0.01", "--q", "1.3", "--pointer", "thermal"]));
    assert!(data_rows(&out)[0][3] < 0.0);
}

#[test]
fn invalid_inputs_fail_before_writing() {
    let path = scratch("never.csv");
    let _ = std::fs::remove_file(&path);
    let out = thermoweak(&["mh-grid", "--mean-n", "-1", "--out", path.to_str().unwrap()]);
    assert_error(&out, "invalid-argument");
    assert!(!path.exists());
    assert_error(&thermoweak(&["mh-grid", "--q-min", "2", "--q-max", "1"]), "invalid-grid");
    assert_error(&thermoweak(&["negativity-prob", "--mean-n-min", "1", "--mean-n-max", "0.5"]), "invalid-argument");
    assert_error(&thermoweak(&["simulate", "--q", "2", "--g", "0"]), "invalid-argument");
    assert_error(&thermoweak(&["simulate", "--q", "2", "--g", "0.01,0.1"]), "invalid-argument");
    assert_error(&thermoweak(&["simulate", "--q", "40"]), "insufficient-statistics");
    assert_error(&thermoweak(&["mh-grid", "--out", "/nonexistent-dir/x.csv"]), "io");
    assert_error(&thermoweak(&["frobnicate"]), "usage");
    assert_error(&thermoweak(&["mh-grid", "--q-count", "many"]), "usage");
}

#[test]
fn help_is_not_an_error() {
    let out = thermoweak(&["--help"]);
    assert!(out.status.success());
    let text = String::from_utf8_lossy(&out.stdout);
    for cmd in ["mh-grid", "weakvalue-curve", "negativity-prob", "occupation", "simulate", "verify"] {
        assert!(text.contains(cmd), "{cmd}");
    }
}

#[test]
fn verify_passes_and_names_injected_faults() {
    let out = thermoweak(&["verify"]);
    let text = stdout(&out);
    assert_eq!(text.lines().filter(|l| l.starts_with("PASS")).count(), 7);

    let out = thermoweak(&["verify", "--inject-fault", "q-marginal"]);
    assert_error(&out, "verification-failed");
    assert!(String::from_utf8_lossy(&out.stderr).contains("q-marginal"));
    assert!(String::from_utf8_lossy(&out.stdout).contains("FAIL q-marginal"));

    assert_error(&thermoweak(&["verify", "--inject-fault", "nonsense"]), "invalid-argument");
}
