use std::fs;
use std::path::Path;
use std::process::{Command, Output};

use projkernel::io::{read_records, read_signal, write_signal};
use projkernel::{Complex64, DomainLabel, SampledSignal, UniformGrid};

fn projkernel(args: &[&str], config: Option<&Path>) -> Output {
    let mut cmd = Command::new(env!("CARGO_BIN_EXE_projkernel"));
    cmd.args(args).env_remove("PROJKERNEL_CONFIG");
    if let Some(c) = config {
        cmd.env("PROJKERNEL_CONFIG", c);
    }
    cmd.output().expect("binary runs")
}

fn arg(p: &Path) -> &str {
    p.to_str().unwrap()
}

#[test]
fn project_band_limits_a_signal_file() {
    let dir = tempfile::tempdir().unwrap();
    let (input, out) = (dir.path().join("f.csv"), dir.path().join("g.csv"));
    let grid = UniformGrid::symmetric(60.0, 0.05).unwrap();
    let f = SampledSignal::from_fn(grid, DomainLabel::Coordinate, |x| {
        Complex64::new(0.0, x).exp() + Complex64::new(0.0, 3.0 * x).exp()
    })
    .unwrap();
    write_signal(&input, &f).unwrap();
    let o = projkernel(
        &[
            "--L",
            "60",
            "project",
            "--band-a",
            "2",
            "--in",
            arg(&input),
            "--out",
            arg(&out),
        ],
        None,
    );
    assert!(o.status.success(), "{}", String::from_utf8_lossy(&o.stderr));
    let g = read_signal(&out, DomainLabel::Coordinate).unwrap();
    let kept = SampledSignal::from_fn(grid, DomainLabel::Coordinate, |x| {
        Complex64::new(0.0, x).exp()
    })
    .unwrap();
    assert!(g.central_sup_distance(&kept).unwrap() < 5e-2);
}

#[test]
fn support_test_reports_verdict_and_json() {
    let dir = tempfile::tempdir().unwrap();
    let (input, report) = (dir.path().join("u.csv"), dir.path().join("r.json"));
    let k = 64usize;
    let grid = UniformGrid::new(1.0, 1.0, k).unwrap();
    let omega = 2.0 * std::f64::consts::PI * 9.0 / k as f64;
    let u = SampledSignal::from_fn(grid, DomainLabel::Time, |t| {
        Complex64::new(0.0, omega * t).exp()
    })
    .unwrap();
    write_signal(&input, &u).unwrap();
    let o = projkernel(
        &[
            "support-test",
            "--K",
            "64",
            "--k1",
            "5",
            "--k2",
            "20",
            "--in",
            arg(&input),
            "--tol",
            "1e-6",
            "--report",
            arg(&report),
        ],
        None,
    );
    assert!(o.status.success(), "{}", String::from_utf8_lossy(&o.stderr));
    let stdout = String::from_utf8_lossy(&o.stdout);
    assert!(stdout.starts_with("supported residual="), "{stdout}");
    let json: serde_json::Value =
        serde_json::from_str(&fs::read_to_string(&report).unwrap()).unwrap();
    assert_eq!(json["entries"][0]["verdict"], "pass");
    assert_eq!(json["config"]["L"], 400.0);

    let o = projkernel(
        &[
            "support-test",
            "--K",
            "64",
            "--k1",
            "21",
            "--k2",
            "30",
            "--in",
            arg(&input),
        ],
        None,
    );
    assert!(String::from_utf8_lossy(&o.stdout).starts_with("not supported"));
    let o = projkernel(
        &[
            "support-test",
            "--K",
            "32",
            "--k1",
            "5",
            "--k2",
            "20",
            "--in",
            arg(&input),
        ],
        None,
    );
    assert_eq!(o.status.code(), Some(2));
}

#[test]
fn hilbert_and_dispersion_subcommands() {
    let dir = tempfile::tempdir().unwrap();
    let (input, out) = (dir.path().join("f.csv"), dir.path().join("h.csv"));
    let grid = UniformGrid::symmetric(100.0, 0.05).unwrap();
    let f = SampledSignal::from_real_fn(grid, DomainLabel::Momentum, |p| (-p * p).exp()).unwrap();
    write_signal(&input, &f).unwrap();
    for method in ["pv", "spectral"] {
        let o = projkernel(
            &[
                "--L",
                "100",
                "hilbert",
                "--in",
                arg(&input),
                "--out",
                arg(&out),
                "--method",
                method,
            ],
            None,
        );
        assert!(o.status.success(), "{}", String::from_utf8_lossy(&o.stderr));
        assert_eq!(read_records(&out).unwrap().len(), grid.count());
    }
    let o = projkernel(&["--L", "100", "dispersion", "--in", arg(&input)], None);
    assert!(o.status.success());
    assert!(String::from_utf8_lossy(&o.stdout).starts_with("FAIL"));

    let time = UniformGrid::symmetric(40.0, 0.01).unwrap();
    let u = SampledSignal::from_real_fn(time, DomainLabel::Time, |t| {
        if t >= 0.0 {
            (-t).exp()
        } else {
            0.0
        }
    })
    .unwrap();
    write_signal(&input, &u).unwrap();
    let o = projkernel(
        &["dispersion", "--in", arg(&input), "--domain", "time"],
        None,
    );
    assert!(
        String::from_utf8_lossy(&o.stdout).starts_with("PASS"),
        "{}",
        String::from_utf8_lossy(&o.stdout)
    );
}

#[test]
fn kernel_and_kronecker_tables() {
    let dir = tempfile::tempdir().unwrap();
    let out = dir.path().join("k.csv");
    let o = projkernel(
        &[
            "kernel",
            "--kind",
            "sinc",
            "--band-a",
            "2",
            "--range",
            "1",
            "--out",
            arg(&out),
        ],
        None,
    );
    assert!(o.status.success());
    let rows = read_records(&out).unwrap();
    assert_eq!(rows.len(), 41);
    assert!((rows[20].value.re - 2.0 / std::f64::consts::PI).abs() < 1e-15);
    let o = projkernel(&["kernel", "--kind", "sinc", "--out", arg(&out)], None);
    assert_eq!(o.status.code(), Some(2));

    let o = projkernel(
        &[
            "kronecker",
            "--K",
            "16",
            "--k1",
            "3",
            "--k2",
            "7",
            "--out",
            arg(&out),
        ],
        None,
    );
    assert!(o.status.success());
    assert!(String::from_utf8_lossy(&o.stdout).contains("trace=5.000000000000"));
    assert_eq!(fs::read_to_string(&out).unwrap().lines().count(), 1 + 256);
}

#[test]
fn config_file_supplies_defaults_and_flags_win() {
    let dir = tempfile::tempdir().unwrap();
    let cfg = dir.path().join("cfg.toml");
    let out = dir.path().join("k.csv");
    fs::write(&cfg, "step = 0.25\neps = 0.25\n").unwrap();
    let o = projkernel(
        &[
            "kernel",
            "--kind",
            "plus",
            "--range",
            "1",
            "--out",
            arg(&out),
        ],
        Some(&cfg),
    );
    assert!(o.status.success(), "{}", String::from_utf8_lossy(&o.stderr));
    assert_eq!(read_records(&out).unwrap().len(), 9);
    let o = projkernel(
        &[
            "kernel",
            "--kind",
            "plus",
            "--range",
            "1",
            "--step",
            "0.05",
            "--eps",
            "0.05",
            "--out",
            arg(&out),
        ],
        Some(&cfg),
    );
    assert!(o.status.success());
    assert_eq!(read_records(&out).unwrap().len(), 41);

    fs::write(&cfg, "width = 3\n").unwrap();
    let o = projkernel(
        &["kronecker", "--K", "4", "--k1", "1", "--k2", "2"],
        Some(&cfg),
    );
    assert_eq!(o.status.code(), Some(2));
    assert!(String::from_utf8_lossy(&o.stderr).contains("[23]"));
}

#[test]
fn usage_and_input_errors_exit_2() {
    assert_eq!(projkernel(&["frobnicate"], None).status.code(), Some(2));
    assert_eq!(
        projkernel(&["project", "--band-a", "2", "--out", "x.csv"], None)
            .status
            .code(),
        Some(2)
    );
    let dir = tempfile::tempdir().unwrap();
    let bad = dir.path().join("bad.csv");
    fs::write(&bad, "0,0.0,1,0\n1,0.1,1,0\n2,0.3,1,0\n").unwrap();
    let o = projkernel(
        &[
            "hilbert",
            "--in",
            arg(&bad),
            "--out",
            arg(&dir.path().join("h.csv")),
        ],
        None,
    );
    assert_eq!(o.status.code(), Some(2));
    assert!(String::from_utf8_lossy(&o.stderr).contains("[21]"));
}

#[test]
fn identity_suite_fails_on_coarse_config() {
    let dir = tempfile::tempdir().unwrap();
    let report = dir.path().join("suite.json");
    let o = projkernel(
        &[
            "--L",
            "5",
            "identity-suite",
            "--level",
            "quick",
            "--report",
            arg(&report),
        ],
        None,
    );
    assert_eq!(o.status.code(), Some(1));
    let json: serde_json::Value =
        serde_json::from_str(&fs::read_to_string(&report).unwrap()).unwrap();
    let entries = json["entries"].as_array().unwrap();
    assert!(entries.iter().any(|e| e["verdict"] == "fail"));
    assert!(entries
        .iter()
        .all(|e| e["equation"].as_str().is_some_and(|s| !s.is_empty())));
}
