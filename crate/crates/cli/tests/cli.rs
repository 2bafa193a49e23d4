use std::path::Path;
use std::process::{Command, Output};

use hyperchaos_core::certify::{Certificate, Certifier, Evidence, UnstableSetId};
use hyperchaos_core::{Alphabet, BiSequence, MetricParams};

fn run(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_hyperchaos")).args(args).output().unwrap()
}

fn out_arg(dir: &Path) -> &str {
    dir.to_str().unwrap()
}

fn csv_rows(path: &Path) -> Vec<Vec<String>> {
    let mut r = csv::Reader::from_path(path).unwrap();
    r.records().map(|rec| rec.unwrap().iter().map(str::to_string).collect()).collect()
}

#[test]
fn default_certify_writes_certificates() {
    let dir = tempfile::tempdir().unwrap();
    let out = run(&["certify", "--out", out_arg(dir.path())]);
    assert_eq!(out.status.code(), Some(0), "{}", String::from_utf8_lossy(&out.stderr));
    let certs = std::fs::read_dir(dir.path().join("certificates")).unwrap().count();
    assert!(certs >= 5);
    assert!(dir.path().join("diameter.json").exists());
    assert!(dir.path().join("separation.json").exists());
    let stdout = String::from_utf8_lossy(&out.stdout);
    for kind in ["transitivity", "periodic_density", "sensitivity", "poisson_recurrence", "li_yorke"] {
        assert!(stdout.contains(kind), "{kind} missing from summary");
    }
    let summary = csv_rows(&dir.path().join("summary.csv"));
    assert_eq!(summary.len(), certs);
    assert!(summary.iter().all(|row| row[2] == "verified"));
}

#[test]
fn invalid_configurations_exit_2() {
    let dir = tempfile::tempdir().unwrap();
    for set in ["r=0", "tolerance=0", "m=1", "lambda=0.6"] {
        let out = run(&["certify", "--set", set, "--out", out_arg(dir.path())]);
        assert_eq!(out.status.code(), Some(2), "{set}");
    }
    assert_eq!(run(&["certify", "--format", "png"]).status.code(), Some(2));
    assert_eq!(run(&["certify", "--config", "/nonexistent/config"]).status.code(), Some(2));
    assert_eq!(run(&[]).status.code(), Some(2));
}

#[test]
fn config_file_is_overridden_by_flags() {
    let dir = tempfile::tempdir().unwrap();
    let config = dir.path().join("run.conf");
    std::fs::write(&config, "# small run\nsets = 1\ntargets = 2\nr = 0\n").unwrap();
    let out_dir = dir.path().join("out");
    let base = ["certify", "--config", config.to_str().unwrap(), "--out", out_arg(&out_dir)];
    assert_eq!(run(&base).status.code(), Some(2));
    let mut fixed = base.to_vec();
    fixed.extend(["--set", "r=0.25"]);
    let out = run(&fixed);
    assert_eq!(out.status.code(), Some(0), "{}", String::from_utf8_lossy(&out.stderr));
    let cert: Certificate =
        serde_json::from_str(&std::fs::read_to_string(out_dir.join("certificates/li_yorke.json")).unwrap()).unwrap();
    assert_eq!(cert.metric.r(), 0.25);
    let transitivity = std::fs::read_dir(out_dir.join("certificates"))
        .unwrap()
        .filter(|e| e.as_ref().unwrap().file_name().to_string_lossy().starts_with("transitivity"))
        .count();
    assert_eq!(transitivity, 2);
}

#[test]
fn verify_rejects_tampered_certificates() {
    let dir = tempfile::tempdir().unwrap();
    assert!(run(&["certify", "--set", "sets=1", "--out", out_arg(dir.path())]).status.success());
    let path = dir.path().join("certificates/sensitivity_s00_e0.json");
    let good = run(&["--verify", path.to_str().unwrap()]);
    assert_eq!(good.status.code(), Some(0));
    let mut cert: Certificate = serde_json::from_str(&std::fs::read_to_string(&path).unwrap()).unwrap();
    if let Evidence::Sensitivity(e) = &mut cert.evidence {
        e.divergence_steps = 0;
    }
    let bad = dir.path().join("bad.json");
    std::fs::write(&bad, serde_json::to_string(&cert).unwrap()).unwrap();
    let out = run(&["--verify", bad.to_str().unwrap()]);
    assert_eq!(out.status.code(), Some(1));
    assert!(String::from_utf8_lossy(&out.stdout).starts_with("rejected"));
    std::fs::write(&bad, "{}").unwrap();
    assert_eq!(run(&["--verify", bad.to_str().unwrap()]).status.code(), Some(2));
}

#[test]
fn horseshoe_outputs() {
    let dir = tempfile::tempdir().unwrap();
    let out = run(&["horseshoe", "--set", "k=3", "--set", "n=3", "--out", out_arg(dir.path())]);
    assert_eq!(out.status.code(), Some(0), "{}", String::from_utf8_lossy(&out.stderr));
    let rows = csv_rows(&dir.path().join("rectangles.csv"));
    assert_eq!(rows.len(), 128);
    let header = std::fs::read_to_string(dir.path().join("rectangles.csv")).unwrap();
    assert!(header.starts_with("word,x_lo,x_hi,y_lo,y_hi\n"));
    let svg = std::fs::read_to_string(dir.path().join("rectangles.svg")).unwrap();
    assert!(svg.starts_with("<svg") && svg.trim_end().ends_with("</svg>"));
    assert!(svg.contains("viewBox=\"0 0 1000 1000\""));
    assert_eq!(svg.matches("<rect ").count(), 128);
    assert_eq!(svg.matches("</rect>").count(), 128);
    // the rectangle at the origin sits at the bottom of the flipped image
    let origin = rows.iter().find(|r| r[1] == "0.0" && r[3] == "0.0").unwrap();
    let height = 1000.0 * origin[4].parse::<f64>().unwrap();
    assert!(svg.contains(&format!("x=\"0.000000\" y=\"{:.6}\"", 1000.0 - height)));
    for name in ["hyperbolic.json", "conjugacy.json"] {
        let v: serde_json::Value = serde_json::from_str(&std::fs::read_to_string(dir.path().join(name)).unwrap()).unwrap();
        assert_eq!(v["holds"], serde_json::Value::Bool(true), "{name}");
    }
}

#[test]
fn rectangle_cap_exits_2() {
    let dir = tempfile::tempdir().unwrap();
    let out = run(&["horseshoe", "--set", "k=15", "--set", "n=15", "--out", out_arg(dir.path())]);
    assert_eq!(out.status.code(), Some(2));
    assert_eq!(run(&["horseshoe", "--set", "diagonal_depth=10"]).status.code(), Some(2));
}

#[test]
fn periodic_orbit_returns_to_start() {
    let dir = tempfile::tempdir().unwrap();
    let out = run(&["orbit", "periodic:1122", "--steps", "4", "--out", out_arg(dir.path())]);
    assert!(out.status.success());
    let rows = csv_rows(&dir.path().join("orbit.csv"));
    assert_eq!(rows.len(), 5);
    assert_eq!(rows[4][1], "0.0");
    assert!(rows[1][1] != "0.0");
}

#[test]
fn fixed_point_orbit_is_constant() {
    let dir = tempfile::tempdir().unwrap();
    let out = run(&["orbit", "point:0,0", "--steps", "10", "--out", out_arg(dir.path())]);
    assert!(out.status.success());
    let rows = csv_rows(&dir.path().join("orbit.csv"));
    assert_eq!(rows.len(), 11);
    assert!(rows.iter().all(|r| r[1..] == ["0.0", "0.0", "1"]));
}

#[test]
fn escaping_orbit_is_marked() {
    let dir = tempfile::tempdir().unwrap();
    let out = run(&["orbit", "point:0.5,0.2", "--steps", "10", "--out", out_arg(dir.path())]);
    assert_eq!(out.status.code(), Some(1));
    let rows = csv_rows(&dir.path().join("orbit.csv"));
    assert_eq!(rows.len(), 2);
    assert_eq!(rows[1][3], "escaped");
    for bad in ["point:1.5,0", "spiral:1", "periodic:19"] {
        assert_eq!(run(&["orbit", bad, "--out", out_arg(dir.path())]).status.code(), Some(2), "{bad}");
    }
}

#[test]
fn universal_orbit_dips_at_recurrence_times() {
    let dir = tempfile::tempdir().unwrap();
    let out = run(&["orbit", "universal:1", "--steps", "100", "--out", out_arg(dir.path())]);
    assert!(out.status.success());
    let rows = csv_rows(&dir.path().join("orbit.csv"));
    let ctx = Certifier::new(Alphabet::BINARY, MetricParams::default(), 1e-12).unwrap();
    let u = UnstableSetId::new(BiSequence::constant(1).unwrap(), Alphabet::BINARY).unwrap();
    let cert = ctx.poisson_recurrence_witness(&u, 6).unwrap();
    let Evidence::PoissonRecurrence(e) = &cert.evidence else { unreachable!() };
    let mut seen = 0;
    for r in e.returns.iter().filter(|r| r.steps <= 100) {
        let d: f64 = rows[r.steps as usize][1].parse().unwrap();
        assert!((d - r.distance.value).abs() <= 1e-12);
        assert!(d < r.threshold);
        seen += 1;
    }
    assert!(seen >= 1);
}
