use std::fs;
use std::path::{Path, PathBuf};
use std::process::{Command, Output};

fn isork(dir: &Path, args: &[&str], seed_env: Option<&str>) -> Output {
    let mut cmd = Command::new(env!("CARGO_BIN_EXE_isork"));
    cmd.current_dir(dir).args(args).env_remove("ISORK_SEED");
    if let Some(s) = seed_env {
        cmd.env("ISORK_SEED", s);
    }
    cmd.output().expect("spawn isork")
}

fn stdout(o: &Output) -> String {
    String::from_utf8_lossy(&o.stdout).into_owned()
}

fn golden() -> PathBuf {
    PathBuf::from(env!("CARGO_MANIFEST_DIR"))
        .join("../core/tests/data/rigid_body_seed42_midpoint.csv")
}

#[test]
fn run_reproduces_golden_csv() {
    let dir = tempfile::tempdir().unwrap();
    let o = isork(
        dir.path(),
        &[
            "run",
            "--system",
            "rigidbody",
            "--method",
            "midpoint",
            "--h",
            "0.01",
            "--steps",
            "100",
            "--seed",
            "42",
            "--out",
            "rb.csv",
        ],
        None,
    );
    assert!(o.status.success(), "{}", String::from_utf8_lossy(&o.stderr));
    let fresh = isork::read_csv(dir.path().join("rb.csv")).unwrap();
    let frozen = isork::read_csv(golden()).unwrap();
    assert_eq!(fresh.casimir_labels, frozen.casimir_labels);
    assert_eq!(fresh.records.len(), 101);
    for (a, b) in fresh.records.iter().zip(&frozen.records) {
        assert_eq!(a.step, b.step);
        assert_eq!(a.solver_iters_total, b.solver_iters_total);
        for (x, y) in [
            (a.energy, b.energy),
            (a.energy_drift, b.energy_drift),
            (a.casimir_values[0], b.casimir_values[0]),
        ] {
            assert!(
                (x - y).abs() <= 1e-12 * (1.0 + x.abs()),
                "step {}: {x} vs {y}",
                a.step
            );
        }
        assert!((a.spectral_drift - b.spectral_drift).abs() <= 1e-12);
    }
}

#[test]
fn runs_are_byte_identical() {
    let dir = tempfile::tempdir().unwrap();
    for out in ["a.csv", "b.csv"] {
        let o = isork(
            dir.path(),
            &[
                "run", "--system", "zeitlin", "--size", "5", "--h", "0.01", "--steps", "50",
                "--out", out,
            ],
            None,
        );
        assert!(o.status.success());
    }
    assert_eq!(
        fs::read(dir.path().join("a.csv")).unwrap(),
        fs::read(dir.path().join("b.csv")).unwrap()
    );
}

#[test]
fn run_summary_and_header() {
    let dir = tempfile::tempdir().unwrap();
    let o = isork(
        dir.path(),
        &[
            "run",
            "--system",
            "toda",
            "--h",
            "0.1",
            "--steps",
            "200",
            "--out",
            "out/toda.csv",
        ],
        None,
    );
    assert!(o.status.success());
    let text = stdout(&o);
    assert!(text.contains("max spectral drift"));
    assert!(text.contains("solver iterations"));
    let csv = fs::read_to_string(dir.path().join("out/toda.csv")).unwrap();
    assert_eq!(
        csv.lines().next().unwrap(),
        "step,t,energy,energy_drift,spectral_drift,casimir_2,casimir_3,casimir_4,solver_iters,membership_residual"
    );
    assert_eq!(csv.lines().count(), 202);
}

#[test]
fn seed_precedence_flag_env_file_default() {
    let dir = tempfile::tempdir().unwrap();
    fs::write(dir.path().join("c.cfg"), "seed = 5\n").unwrap();
    let seed = |args: &[&str], env: Option<&str>| {
        let o = isork(dir.path(), args, env);
        assert!(o.status.success());
        stdout(&o)
            .lines()
            .find(|l| l.starts_with("seed ="))
            .unwrap()
            .to_string()
    };
    assert_eq!(seed(&["dump-config"], None), "seed = 42");
    assert_eq!(
        seed(&["dump-config", "--config", "c.cfg"], None),
        "seed = 5"
    );
    assert_eq!(
        seed(&["dump-config", "--config", "c.cfg"], Some("7")),
        "seed = 7"
    );
    assert_eq!(
        seed(
            &["dump-config", "--config", "c.cfg", "--seed", "9"],
            Some("7")
        ),
        "seed = 9"
    );
}

#[test]
fn dumped_config_drives_identical_run() {
    let dir = tempfile::tempdir().unwrap();
    let o = isork(
        dir.path(),
        &[
            "dump-config",
            "--system",
            "zeitlin",
            "--size",
            "5",
            "--steps",
            "20",
            "--h",
            "0.01",
            "--out",
            "x.csv",
        ],
        None,
    );
    fs::write(dir.path().join("x.cfg"), stdout(&o)).unwrap();
    assert!(isork(dir.path(), &["run", "--config", "x.cfg"], None)
        .status
        .success());
    let first = fs::read(dir.path().join("x.csv")).unwrap();
    assert!(isork(
        dir.path(),
        &[
            "run", "--system", "zeitlin", "--size", "5", "--steps", "20", "--h", "0.01", "--out",
            "x.csv"
        ],
        None
    )
    .status
    .success());
    assert_eq!(first, fs::read(dir.path().join("x.csv")).unwrap());
}

#[test]
fn config_errors_exit_2() {
    let dir = tempfile::tempdir().unwrap();
    fs::write(dir.path().join("bad.cfg"), "colour = blue\n").unwrap();
    for args in [
        vec!["run", "--h", "-1"],
        vec!["run", "--method", "rk5"],
        vec!["run", "--system", "pendulum"],
        vec!["run", "--config", "bad.cfg"],
        vec!["run", "--config", "missing.cfg"],
        vec!["run", "--method", "custom", "--weights", "0.3,0.3"],
        vec!["convergence", "--h-list", "0.1", "--reference-h", "0.05"],
    ] {
        let o = isork(dir.path(), &args, None);
        assert_eq!(
            o.status.code(),
            Some(2),
            "{args:?}: {}",
            String::from_utf8_lossy(&o.stderr)
        );
    }
    let o = isork(dir.path(), &["run", "--seed", "x"], Some("1"));
    assert_eq!(o.status.code(), Some(2));
    let o = isork(dir.path(), &["dump-config"], Some("not-a-number"));
    assert_eq!(o.status.code(), Some(2));
}

#[test]
fn non_convergence_exits_3_with_partial_csv() {
    let dir = tempfile::tempdir().unwrap();
    let o = isork(
        dir.path(),
        &[
            "run", "--system", "toda", "--h", "5", "--steps", "3", "--out", "t.csv",
        ],
        None,
    );
    assert_eq!(o.status.code(), Some(3));
    assert!(String::from_utf8_lossy(&o.stderr).contains("did not converge"));
    let csv = fs::read_to_string(dir.path().join("t.csv")).unwrap();
    assert_eq!(csv.lines().count(), 2, "header plus the step-0 record");
}

#[test]
fn io_error_exits_4() {
    let dir = tempfile::tempdir().unwrap();
    fs::write(dir.path().join("blocker"), "").unwrap();
    let o = isork(
        dir.path(),
        &["run", "--steps", "2", "--out", "blocker/x.csv"],
        None,
    );
    assert_eq!(o.status.code(), Some(4));
}

#[test]
fn convergence_reports_slope() {
    let dir = tempfile::tempdir().unwrap();
    let o = isork(
        dir.path(),
        &[
            "convergence",
            "--method",
            "midpoint",
            "--h-list",
            "0.1,0.05,0.025,0.0125",
            "--out",
            "c.csv",
        ],
        None,
    );
    assert!(o.status.success());
    let slope: f64 = stdout(&o)
        .lines()
        .find_map(|l| l.strip_prefix("slope "))
        .unwrap()
        .trim()
        .parse()
        .unwrap();
    assert!((slope - 2.0).abs() < 0.1, "slope {slope}");
    let csv = fs::read_to_string(dir.path().join("c.csv")).unwrap();
    assert_eq!(csv.lines().next().unwrap(), "h,error");
    assert_eq!(csv.lines().count(), 5);
}

#[test]
fn compare_writes_one_csv_per_method() {
    let dir = tempfile::tempdir().unwrap();
    let o = isork(
        dir.path(),
        &[
            "compare",
            "--h",
            "0.01",
            "--steps",
            "1000",
            "--methods",
            "midpoint,gawlik,rk4,suzuki4",
            "--out-dir",
            "cmp",
        ],
        None,
    );
    assert!(o.status.success());
    for m in ["midpoint", "gawlik", "rk4", "suzuki4"] {
        assert!(
            dir.path().join("cmp").join(format!("{m}.csv")).exists(),
            "{m}"
        );
    }
    let text = stdout(&o);
    let gawlik_ratio: f64 = text
        .lines()
        .find(|l| l.starts_with("gawlik"))
        .unwrap()
        .split_whitespace()
        .nth(4)
        .unwrap()
        .parse()
        .unwrap();
    assert!(gawlik_ratio > 1e3);
}

#[test]
fn custom_tableau_and_right_variant() {
    let dir = tempfile::tempdir().unwrap();
    let o = isork(
        dir.path(),
        &[
            "run",
            "--method",
            "custom",
            "--weights",
            "0.25,0.5,0.25",
            "--variant",
            "right",
            "--update-form",
            "dcay",
            "--steps",
            "100",
            "--out",
            "c.csv",
        ],
        None,
    );
    assert!(o.status.success(), "{}", String::from_utf8_lossy(&o.stderr));
    assert!(stdout(&o).contains("custom"));
}
