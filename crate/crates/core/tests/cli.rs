use std::path::Path;
use std::process::{Command, Output};

use qdo::analysis::morse;
use qdo::io::{read_curve_csv, PointRecord, RunManifest};
use qdo::model::gauss_hermite;

fn qdo(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_qdo"))
        .args(args)
        .env("QDO_THREADS", "1")
        .output()
        .expect("qdo runs")
}

fn write(path: &Path, text: &str) {
    std::fs::write(path, text).unwrap();
}

fn bytes(path: &Path) -> Vec<u8> {
    std::fs::read(path).unwrap_or_else(|e| panic!("{}: {e}", path.display()))
}

const SHORT_VQE: &str = "[vqe]\nmax_steps = 40\n[analysis]\ncat_fit = false\n";

#[test]
fn zero_charge_oracle_point_has_unit_energy() {
    let dir = tempfile::tempdir().unwrap();
    let cfg = dir.path().join("q0.toml");
    write(&cfg, "[model]\nq1 = 0.0\nq2 = 0.0\n");
    let out = dir.path().join("out");
    let o = qdo(&[
        "oracle",
        "--config",
        cfg.to_str().unwrap(),
        "--theta",
        "0.58",
        "--d",
        "0.54",
        "--out",
        out.to_str().unwrap(),
    ]);
    assert!(o.status.success(), "{}", String::from_utf8_lossy(&o.stderr));
    let rec: PointRecord =
        serde_json::from_slice(&bytes(&out.join("point_oracle_theta0.58_d0.54.json"))).unwrap();
    assert!((rec.energy - 1.0).abs() < 1e-10);
    let manifest = RunManifest::read(&out).unwrap();
    assert_eq!(manifest.points[0].status, "ok");
    assert!(manifest.finished_at.is_some());
}

#[test]
fn vqe_rerun_is_byte_identical() {
    let dir = tempfile::tempdir().unwrap();
    let cfg = dir.path().join("short.toml");
    write(&cfg, &format!("{SHORT_VQE}[output]\nstates = true\n"));
    let mut files = Vec::new();
    for run in ["a", "b"] {
        let out = dir.path().join(run);
        let o = qdo(&[
            "vqe",
            "--config",
            cfg.to_str().unwrap(),
            "--theta",
            "0.58",
            "--d",
            "1.36",
            "--seed",
            "5",
            "--out",
            out.to_str().unwrap(),
        ]);
        assert!(o.status.success(), "{}", String::from_utf8_lossy(&o.stderr));
        files.push((
            bytes(&out.join("point_vqe_theta0.58_d1.36.json")),
            bytes(&out.join("state_vqe_theta0.58_d1.36.json")),
        ));
    }
    assert_eq!(files[0], files[1]);
}

#[test]
fn config_errors_exit_1() {
    let dir = tempfile::tempdir().unwrap();
    let out = dir.path().to_str().unwrap();
    let bad = dir.path().join("bad.toml");
    write(&bad, "[model]\nnot_a_key = 1\n");
    assert_eq!(
        qdo(&["sweep", "--config", bad.to_str().unwrap(), "--out", out])
            .status
            .code(),
        Some(1)
    );
    assert_eq!(
        qdo(&["oracle", "--theta", "2.0", "--d", "1", "--out", out])
            .status
            .code(),
        Some(1)
    );
    assert_eq!(
        qdo(&["oracle", "--theta", "0.58", "--out", out])
            .status
            .code(),
        Some(1)
    );
    assert_eq!(
        qdo(&["sweep", "--config", "/no/such/file.toml", "--out", out])
            .status
            .code(),
        Some(1)
    );
    let o = Command::new(env!("CARGO_BIN_EXE_qdo"))
        .args(["oracle", "--d", "1", "--out", out])
        .env("QDO_THREADS", "0")
        .output()
        .unwrap();
    assert_eq!(o.status.code(), Some(1));
    assert!(String::from_utf8_lossy(&o.stderr).contains("QDO_THREADS"));
}

/// A distance equal to a quadrature node puts the θ = 0 collision line on the grid.
fn singular_distance() -> f64 {
    *gauss_hermite(80).nodes.iter().find(|&&x| x > 1.0).unwrap()
}

#[test]
fn solver_failure_exits_2() {
    let dir = tempfile::tempdir().unwrap();
    let d = singular_distance().to_string();
    let o = qdo(&[
        "oracle",
        "--theta",
        "0",
        "--d",
        &d,
        "--out",
        dir.path().to_str().unwrap(),
    ]);
    assert_eq!(
        o.status.code(),
        Some(2),
        "{}",
        String::from_utf8_lossy(&o.stderr)
    );
    let manifest = RunManifest::read(dir.path()).unwrap();
    assert!(manifest.points[0].status.starts_with("failed: "));
}

#[test]
fn sweep_with_failed_rows_exits_3() {
    let dir = tempfile::tempdir().unwrap();
    let d = singular_distance().to_string();
    let o = qdo(&[
        "sweep",
        "--engine",
        "oracle",
        "--theta",
        "0",
        "--d",
        &d,
        "--out",
        dir.path().to_str().unwrap(),
    ]);
    assert_eq!(
        o.status.code(),
        Some(3),
        "{}",
        String::from_utf8_lossy(&o.stderr)
    );
    let curve = read_curve_csv(&dir.path().join("curve_oracle_theta0.csv")).unwrap();
    assert_eq!(curve.points.len(), 1);
    assert!(!curve.points[0].status.is_ok());
    assert!(curve.points[0].e_b.is_nan());
}

#[test]
fn sweep_analyze_render_pipeline() {
    let dir = tempfile::tempdir().unwrap();
    let out = dir.path().join("run");
    let out_s = out.to_str().unwrap();
    let cfg = dir.path().join("sweep.toml");
    write(&cfg, "engines = [\"oracle\"]\n[model]\ntheta = 0.58\n[output]\nformats = [\"csv\"]\nstates = true\n");
    let o = qdo(&["sweep", "--config", cfg.to_str().unwrap(), "--out", out_s]);
    assert!(o.status.success(), "{}", String::from_utf8_lossy(&o.stderr));

    let curve = read_curve_csv(&out.join("curve_oracle_theta0.58.csv")).unwrap();
    assert_eq!(curve.points.len(), 40);
    assert!(curve
        .points
        .iter()
        .all(|p| p.status.is_ok() && p.e_b.is_finite() && p.entropy.is_finite()));
    assert!(curve.points.last().unwrap().e_b.abs() < 2e-3);
    let manifest = RunManifest::read(&out).unwrap();
    assert_eq!(manifest.points.len(), 40);
    assert_eq!(manifest.config.seed, 0);

    let o = qdo(&["analyze", "--out", out_s]);
    assert!(o.status.success());
    let report = String::from_utf8_lossy(&bytes(&out.join("analysis_report.tsv"))).into_owned();
    assert!(report.lines().nth(1).unwrap().starts_with("oracle\t0.58\t"));
    assert!(out.join("entropy_oracle_theta0.58.csv").exists());

    let o = qdo(&["render", "--out", out_s]);
    assert!(o.status.success(), "{}", String::from_utf8_lossy(&o.stderr));
    let first = bytes(&out.join("binding_oracle_theta0.58.svg"));
    assert_eq!(
        String::from_utf8_lossy(&first).matches("<polyline").count(),
        1
    );
    assert!(out.join("density_oracle_theta0.58_d0.54.svg").exists());
    assert!(out.join("wigner1_oracle_theta0.58_d0.54.svg").exists());
    assert!(qdo(&["render", "--out", out_s]).status.success());
    assert_eq!(bytes(&out.join("binding_oracle_theta0.58.svg")), first);
}

#[test]
fn analyze_recovers_synthetic_morse() {
    let dir = tempfile::tempdir().unwrap();
    let mut csv = String::from("d,E_b,energy,norm,entropy,correlation,status\n");
    for k in 1..=40 {
        let d = 0.3 + 0.08 * k as f64;
        let e = morse(d, 0.3, 1.1, 2.0);
        csv.push_str(&format!("{d},{e},{},1,0.01,-0.1,ok\n", 1.0 + e));
    }
    write(&dir.path().join("curve_oracle_theta0.4.csv"), &csv);
    let o = qdo(&[
        "analyze",
        dir.path().to_str().unwrap(),
        "--out",
        dir.path().to_str().unwrap(),
    ]);
    assert!(o.status.success(), "{}", String::from_utf8_lossy(&o.stderr));
    let json: serde_json::Value =
        serde_json::from_slice(&bytes(&dir.path().join("morse_oracle_theta0.4.json"))).unwrap();
    for (key, want) in [("e_b", 0.3), ("d_b", 1.1), ("s", 2.0)] {
        assert!(
            (json["fit"][key].as_f64().unwrap() - want).abs() < 1e-6,
            "{key}"
        );
    }
    let d_star = json["inflection"].as_f64().unwrap();
    assert!((d_star - (1.1 + std::f64::consts::LN_2 / 2.0)).abs() < 1e-6);
}

#[test]
fn analyze_flags_failed_fit_and_exits_0() {
    let dir = tempfile::tempdir().unwrap();
    write(
        &dir.path().join("curve_vqe_theta1.csv"),
        "d,E_b,energy,norm,entropy,correlation,status\n1,0.1,1.1,1,0,0,ok\n",
    );
    let o = qdo(&["analyze", "--out", dir.path().to_str().unwrap()]);
    assert_eq!(o.status.code(), Some(0));
    let report = String::from_utf8_lossy(&o.stdout).into_owned();
    assert!(report.contains("fit failed"), "{report}");
}

#[test]
fn render_handles_empty_and_malformed_input() {
    let dir = tempfile::tempdir().unwrap();
    let empty = dir.path().join("curve_oracle_theta0.5.csv");
    write(&empty, "d,E_b,energy,norm,entropy,correlation,status\n");
    let o = qdo(&[
        "render",
        empty.to_str().unwrap(),
        "--out",
        dir.path().to_str().unwrap(),
    ]);
    assert!(o.status.success(), "{}", String::from_utf8_lossy(&o.stderr));
    let svg = String::from_utf8(bytes(&dir.path().join("binding_oracle_theta0.5.svg"))).unwrap();
    assert!(svg.contains("class=\"axes\""));
    assert!(!svg.contains("<polyline") && !svg.contains("<circle"));

    let bad = dir.path().join("curve_oracle_theta0.6.csv");
    write(&bad, "d,E_b\n1,2\n");
    assert_eq!(
        qdo(&[
            "render",
            bad.to_str().unwrap(),
            "--out",
            dir.path().to_str().unwrap()
        ])
        .status
        .code(),
        Some(1)
    );
    let other = dir.path().join("notes.txt");
    write(&other, "hello");
    assert_eq!(
        qdo(&[
            "render",
            other.to_str().unwrap(),
            "--out",
            dir.path().to_str().unwrap()
        ])
        .status
        .code(),
        Some(1)
    );
}
