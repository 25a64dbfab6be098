use std::fs;
use std::path::Path;
use std::process::{Command, Output};

use serde_json::Value;

fn ysc(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_ysc")).args(args).output().expect("binary runs")
}

fn json(path: &Path) -> Value {
    serde_json::from_str(&fs::read_to_string(path).unwrap()).unwrap()
}

#[test]
fn simulate_writes_log_metrics_and_plot() {
    let dir = tempfile::tempdir().unwrap();
    let out = dir.path().to_str().unwrap();
    let o = ysc(&["simulate", "--maneuver", "step", "--speed-kph", "60", "--plant", "single", "--out", out]);
    assert!(o.status.success(), "{}", String::from_utf8_lossy(&o.stderr));
    let log = fs::read_to_string(dir.path().join("log.csv")).unwrap();
    assert_eq!(log.lines().count(), 2 + 10_001);
    let m = json(&dir.path().join("metrics.json"));
    assert_eq!(m["schema"], "ysc-metrics v1");
    assert_eq!(m["steps"], 10_001);
    assert_eq!(m["completed"], true);
    for key in ["rms_yaw_rate_error", "rms_sideslip_error", "peak_abs_beta", "peak_abs_a_y", "ysc_active_fraction", "brake_energy"] {
        assert!(m["metrics"][key].is_number(), "{key}");
    }
    let svg = fs::read_to_string(dir.path().join("plot.svg")).unwrap();
    assert!(svg.starts_with("<svg"));
}

#[test]
fn simulate_output_is_reproducible() {
    let a = tempfile::tempdir().unwrap();
    let b = tempfile::tempdir().unwrap();
    for d in [&a, &b] {
        let o = ysc(&["simulate", "--seed", "3", "--out", d.path().to_str().unwrap()]);
        assert!(o.status.success());
    }
    for f in ["log.csv", "metrics.json", "plot.svg"] {
        assert_eq!(fs::read(a.path().join(f)).unwrap(), fs::read(b.path().join(f)).unwrap(), "{f}");
    }
}

#[test]
fn zero_speed_is_rejected() {
    let dir = tempfile::tempdir().unwrap();
    let o = ysc(&["simulate", "--speed-kph", "0", "--out", dir.path().to_str().unwrap()]);
    assert!(!o.status.success());
    let err = String::from_utf8_lossy(&o.stderr);
    assert!(err.starts_with("error:") && err.contains("scenario.speed"), "{err}");
    assert!(!dir.path().join("log.csv").exists());
}

#[test]
fn bad_config_reports_file_and_line() {
    let dir = tempfile::tempdir().unwrap();
    let cfg = dir.path().join("bad.toml");
    fs::write(&cfg, "[scenario]\nmu = 2.0\n").unwrap();
    let o = ysc(&["simulate", "--config", cfg.to_str().unwrap(), "--out", dir.path().to_str().unwrap()]);
    assert!(!o.status.success());
    let err = String::from_utf8_lossy(&o.stderr);
    assert!(err.contains("bad.toml") && err.contains("line 2"), "{err}");
}

#[test]
fn compare_ysc_on_off() {
    let dir = tempfile::tempdir().unwrap();
    let o = ysc(&["compare", "--vary", "ysc", "--out", dir.path().to_str().unwrap()]);
    assert!(o.status.success(), "{}", String::from_utf8_lossy(&o.stderr));
    let m = json(&dir.path().join("metrics.json"));
    assert_eq!(m["schema"], "ysc-compare v1");
    assert_eq!(m["a"]["label"], "ysc_off");
    assert_eq!(m["b"]["label"], "ysc_on");
    assert!(m["rms_yaw_rate_error_reduction"].as_f64().unwrap() >= 0.5);
    let csv = fs::read_to_string(dir.path().join("compare.csv")).unwrap();
    assert!(csv.starts_with("t,r_ysc_off,r_ysc_on,r_delta,"));
    assert!(dir.path().join("plot.svg").exists());
}

#[test]
fn compare_identical_runs_has_zero_deltas() {
    let dir = tempfile::tempdir().unwrap();
    let o = ysc(&["compare", "--vary", "none", "--maneuver", "sine", "--out", dir.path().to_str().unwrap()]);
    assert!(o.status.success());
    let m = json(&dir.path().join("metrics.json"));
    for (_, v) in m["delta"].as_object().unwrap() {
        assert_eq!(v.as_f64(), Some(0.0));
    }
    let csv = fs::read_to_string(dir.path().join("compare.csv")).unwrap();
    let header: Vec<&str> = csv.lines().next().unwrap().split(',').collect();
    for line in csv.lines().skip(1) {
        for (name, v) in header.iter().zip(line.split(',')) {
            if name.ends_with("_delta") {
                assert_eq!(v, "0");
            }
        }
    }
}

#[test]
fn gains_prints_schedule() {
    let o = ysc(&["gains"]);
    assert!(o.status.success());
    let text = String::from_utf8(o.stdout).unwrap();
    let mut lines = text.lines();
    assert_eq!(lines.next(), Some("speed,k_beta,k_r,pole_re_1,pole_re_2"));
    let rows: Vec<Vec<f64>> = lines.map(|l| l.split(',').map(|x| x.parse().unwrap()).collect()).collect();
    assert_eq!(rows.len(), 10);
    for r in &rows {
        assert!(r[3] < 0.0 && r[4] < 0.0, "{r:?}");
    }
}

#[test]
fn gains_custom_grid() {
    let o = ysc(&["gains", "--grid", "12.5,20"]);
    assert!(o.status.success());
    let text = String::from_utf8(o.stdout).unwrap();
    assert_eq!(text.lines().count(), 3);
    assert!(text.lines().nth(1).unwrap().starts_with("1.25000000e1,"));

    for bad in ["", "20,10", "-5", "x"] {
        let o = ysc(&["gains", "--grid", bad]);
        assert!(!o.status.success(), "grid {bad:?} accepted");
    }
}
