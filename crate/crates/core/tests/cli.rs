//! End-to-end checks of the `nubound` binary: subcommands, exit codes, CSV
//! shapes, and output-file handling.

use std::path::PathBuf;
use std::process::{Command, Output};

fn workdir() -> PathBuf {
    let dir = std::env::temp_dir().join(format!("nubound-cli-{}", std::process::id()));
    std::fs::create_dir_all(&dir).unwrap();
    dir
}

fn write_cfg(name: &str, text: &str) -> PathBuf {
    let path = workdir().join(name);
    std::fs::write(&path, text).unwrap();
    path
}

fn run(args: &[&str], cfg: &PathBuf) -> Output {
    let mut cmd = Command::new(env!("CARGO_BIN_EXE_nubound"));
    for a in args.iter().take(1) {
        cmd.arg(a);
    }
    cmd.arg("--config").arg(cfg);
    for a in args.iter().skip(1) {
        cmd.arg(a);
    }
    cmd.output().expect("binary runs")
}

const HRS: &str = "family = hrs\nDe = 4\nre = 1\nn0_max = 1\nnr_max = 1\noracle_N = 1000\n";

#[test]
fn spectrum_csv_shape_and_determinism() {
    let cfg = write_cfg("s.cfg", HRS);
    let a = run(&["spectrum"], &cfg);
    assert!(a.status.success());
    let text = String::from_utf8(a.stdout.clone()).unwrap();
    let lines: Vec<&str> = text.lines().collect();
    assert_eq!(lines[0], "n0,nr,Msq_paper,Msq_nu,E_paper,E_derived");
    assert_eq!(lines.len(), 5, "{text}");
    assert!(lines[1].starts_with("0,0,"));
    assert!(lines[4].starts_with("1,1,"));

    let b = run(&["spectrum"], &cfg);
    assert_eq!(a.stdout, b.stdout, "byte-identical spectrum output");
}

#[test]
fn wavefunction_polar_and_cartesian_grids() {
    let cfg = write_cfg("w.cfg", HRS);
    let out = run(
        &["wavefunction", "--n0", "0", "--nr", "0", "--grid", "3,4"],
        &cfg,
    );
    assert!(out.status.success());
    let text = String::from_utf8(out.stdout).unwrap();
    let lines: Vec<&str> = text.lines().collect();
    assert_eq!(lines[0], "r,phi,psi");
    assert_eq!(lines.len(), 1 + 12);
    // first row sits on the phi = 0 axis where admitted states vanish
    let psi: f64 = lines[1].rsplit(',').next().unwrap().parse().unwrap();
    assert!(psi.abs() < 1e-12);

    let out = run(
        &[
            "wavefunction",
            "--n0",
            "0",
            "--nr",
            "0",
            "--grid",
            "5,5",
            "--cartesian",
        ],
        &cfg,
    );
    assert!(out.status.success());
    let text = String::from_utf8(out.stdout).unwrap();
    assert!(text.starts_with("x,y,psi\n"));
    assert_eq!(text.lines().count(), 1 + 25);
}

#[test]
fn verify_exit_codes_and_out_file() {
    let cfg = write_cfg("v.cfg", "family = hrs\nDe = 4\nre = 1\noracle_N = 1000\n");
    let out_path = workdir().join("report.txt");
    let out = Command::new(env!("CARGO_BIN_EXE_nubound"))
        .args(["verify", "--config"])
        .arg(&cfg)
        .arg("--out")
        .arg(&out_path)
        .output()
        .unwrap();
    assert!(
        out.status.success(),
        "{}",
        String::from_utf8_lossy(&out.stderr)
    );
    let report = std::fs::read_to_string(&out_path).unwrap();
    assert!(report.starts_with("nubound-verify:\n"));
    assert!(report.contains("result: PASS"));
}

#[test]
fn config_errors_exit_2_with_line_numbers() {
    let cfg = write_cfg("bad.cfg", "family = hrs\nDe = -1\nre = 1\n");
    let out = run(&["spectrum"], &cfg);
    assert_eq!(out.status.code(), Some(2));
    let err = String::from_utf8(out.stderr).unwrap();
    assert!(err.contains("line 2"), "{err}");

    let empty = write_cfg("empty.cfg", "");
    let out = run(&["verify"], &empty);
    assert_eq!(out.status.code(), Some(2));

    let missing = workdir().join("does-not-exist.cfg");
    let out = run(&["spectrum"], &missing);
    assert_eq!(out.status.code(), Some(2));
}

#[test]
fn solver_failures_exit_3() {
    // Repulsive override admits no bound states, so tabulating a spectrum
    // is a solver failure (verify, by contrast, passes on agreed absence).
    let cfg = write_cfg(
        "rep.cfg",
        "family = hrs\nDe = 4\nre = 1\nkappa1_sign = 1\noracle_N = 1000\n",
    );
    let out = run(&["spectrum"], &cfg);
    assert_eq!(out.status.code(), Some(3));

    let out = run(&["verify"], &cfg);
    assert_eq!(out.status.code(), Some(0));
}
