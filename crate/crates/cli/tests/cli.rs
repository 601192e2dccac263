//! End-to-end checks of the `wavekin` binary: config handling, outputs,
//! error paths.

use std::fs;
use std::process::{Command, Output};

fn wavekin(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_wavekin"))
        .args(args)
        .output()
        .expect("binary runs")
}

fn stdout(out: &Output) -> String {
    String::from_utf8_lossy(&out.stdout).into_owned()
}

fn stderr(out: &Output) -> String {
    String::from_utf8_lossy(&out.stderr).into_owned()
}

#[test]
fn presets_lists_all_reference_experiments() {
    let out = wavekin(&["presets"]);
    assert!(out.status.success());
    let text = stdout(&out);
    for name in [
        "test1-plain",
        "test1-weighted",
        "test2",
        "eoc-test1-uniform",
        "eoc-test1-geometric",
        "eoc-test2-uniform",
        "eoc-test2-geometric",
    ] {
        assert!(text.contains(name), "missing {name} in:\n{text}");
    }
}

#[test]
fn exported_config_files_run_unchanged() {
    let dir = tempfile::tempdir().unwrap();
    let export = dir.path().join("presets");
    let out = wavekin(&["presets", "--export", export.to_str().unwrap()]);
    assert!(out.status.success());

    let cfg = export.join("test2.toml");
    assert!(cfg.exists());
    let run_dir = dir.path().join("out");
    let out = wavekin(&[
        "run",
        "--config",
        cfg.to_str().unwrap(),
        "--tmax",
        "1",
        "--out",
        run_dir.to_str().unwrap(),
    ]);
    assert!(out.status.success(), "{}", stderr(&out));
    assert!(run_dir.join("moments.csv").exists());
    assert!(run_dir.join("run_summary.txt").exists());
}

#[test]
fn zero_horizon_writes_single_moment_row() {
    let dir = tempfile::tempdir().unwrap();
    let out = wavekin(&[
        "run",
        "test1-plain",
        "--tmax",
        "0",
        "--out",
        dir.path().to_str().unwrap(),
    ]);
    assert!(out.status.success(), "{}", stderr(&out));
    let moments = fs::read_to_string(dir.path().join("moments.csv")).unwrap();
    let rows: Vec<&str> = moments.trim().lines().collect();
    assert_eq!(rows.len(), 2, "header plus exactly one row:\n{moments}");
    assert!(rows[0].starts_with("t,M0,M1,M2,M3"));
    assert!(rows[1].starts_with("0,"));
    // only the t = 0 snapshot exists
    assert!(dir.path().join("density_0.csv").exists());
}

#[test]
fn invalid_configuration_exits_nonzero_naming_the_field() {
    let out = wavekin(&["run", "--R", "-5"]);
    assert_eq!(out.status.code(), Some(1));
    assert!(stderr(&out).contains('R'), "{}", stderr(&out));

    let out = wavekin(&["run", "--ic", "nonsense"]);
    assert_eq!(out.status.code(), Some(1));
    assert!(stderr(&out).contains("ic"), "{}", stderr(&out));

    let out = wavekin(&["run", "no-such-preset"]);
    assert_eq!(out.status.code(), Some(1));
    assert!(stderr(&out).contains("no-such-preset"), "{}", stderr(&out));
}

#[test]
fn tabulated_initial_condition_runs_and_projects() {
    let dir = tempfile::tempdir().unwrap();
    let profile = dir.path().join("profile.txt");
    fs::write(&profile, "0 0\n1 1\n2 0.5\n4 0\n").unwrap();
    let out_dir = dir.path().join("out");
    let out = wavekin(&[
        "run",
        "--ic",
        &format!("file:{}", profile.display()),
        "--R",
        "4",
        "--cells",
        "8",
        "--tmax",
        "1",
        "--dt",
        "0.1",
        "--out",
        out_dir.to_str().unwrap(),
    ]);
    assert!(out.status.success(), "{}", stderr(&out));
    let density = fs::read_to_string(out_dir.join("density_0.csv")).unwrap();
    let first_cell: Vec<&str> = density.lines().nth(1).unwrap().split(',').collect();
    // cell [0, 0.5] of the ramp profile averages to 0.25
    let n0: f64 = first_cell[2].parse().unwrap();
    assert!((n0 - 0.25).abs() < 1e-12, "{n0}");
}

#[test]
fn gapped_tabulated_profile_is_rejected() {
    let dir = tempfile::tempdir().unwrap();
    let profile = dir.path().join("short.txt");
    fs::write(&profile, "0 0\n1 1\n").unwrap();
    let out = wavekin(&[
        "run",
        "--ic",
        &format!("file:{}", profile.display()),
        "--R",
        "4",
        "--cells",
        "8",
        "--tmax",
        "1",
    ]);
    assert_eq!(out.status.code(), Some(1));
    assert!(stderr(&out).contains("gap"), "{}", stderr(&out));
}

#[test]
fn zero_profile_refinement_study_reports_exact_levels() {
    let dir = tempfile::tempdir().unwrap();
    let profile = dir.path().join("zero.txt");
    fs::write(&profile, "0 0\n10 0\n").unwrap();
    let out_dir = dir.path().join("eoc");
    let out = wavekin(&[
        "eoc",
        "--ic",
        &format!("file:{}", profile.display()),
        "--R",
        "10",
        "--cells",
        "8",
        "--tmax",
        "1",
        "--levels",
        "3",
        "--out",
        out_dir.to_str().unwrap(),
    ]);
    assert!(out.status.success(), "{}", stderr(&out));
    let table = fs::read_to_string(out_dir.join("eoc_report.txt")).unwrap();
    assert!(table.contains("exact"), "{table}");
}

#[test]
fn strict_negativity_flag_aborts_unstable_runs() {
    // a deliberately unstable step size drives entries negative
    let out = wavekin(&[
        "run",
        "test1-plain",
        "--dt",
        "200",
        "--tmax",
        "1000",
        "--strict-negativity",
    ]);
    assert_eq!(out.status.code(), Some(1));
    let msg = stderr(&out);
    assert!(msg.contains("negative") || msg.contains("blow-up"), "{msg}");
}
