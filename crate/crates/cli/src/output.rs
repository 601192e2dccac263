//! Text outputs: CSV series, density snapshots, summaries and EOC tables.
//!
//! Floats are written in Rust's shortest round-trip decimal form so files
//! are byte-stable across runs and lossless to reparse.

use std::fmt::Write as _;
use std::fs;
use std::path::Path;
use std::time::Duration;

use anyhow::{Context, Result};
use wavekin_core::{EocValue, Grid, MomentSeries, State};

use crate::config::SimulationConfig;
use crate::runner::{EocStudy, RunArtifacts};

pub fn write_moments_csv(path: &Path, series: &MomentSeries) -> Result<()> {
    let mut text = String::from("t,M0,M1,M2,M3\n");
    for k in 0..series.len() {
        writeln!(
            text,
            "{},{},{},{},{}",
            series.times[k], series.m0[k], series.m1[k], series.m2[k], series.m3[k]
        )
        .unwrap();
    }
    fs::write(path, text).with_context(|| format!("writing {}", path.display()))
}

pub fn write_density_csv(path: &Path, grid: &Grid, state: &State) -> Result<()> {
    let mut text = String::from("omega,delta_omega,N\n");
    for i in 0..grid.cell_count() {
        writeln!(
            text,
            "{},{},{}",
            grid.centers()[i],
            grid.widths()[i],
            state.densities()[i]
        )
        .unwrap();
    }
    fs::write(path, text).with_context(|| format!("writing {}", path.display()))
}

/// File name for the snapshot at time t, e.g. density_0.csv, density_10.csv.
pub fn density_file_name(t: f64) -> String {
    format!("density_{t}.csv")
}

pub fn write_run_summary(
    path: &Path,
    cfg: &SimulationConfig,
    artifacts: &RunArtifacts,
) -> Result<()> {
    let result = &artifacts.result;
    let m = &result.moments;
    let last = m.len() - 1;
    let mut text = String::from("# run summary\n\n[config]\n");
    text.push_str(&cfg.to_toml());
    text.push_str("\n[result]\n");
    writeln!(text, "steps = {}", result.steps).unwrap();
    writeln!(text, "negative_entries = {}", result.negative_entries).unwrap();
    writeln!(text, "snapshots = {}", result.snapshots.len()).unwrap();
    writeln!(text, "final_t = {}", m.times[last]).unwrap();
    writeln!(text, "final_m0 = {}", m.m0[last]).unwrap();
    writeln!(text, "final_m1 = {}", m.m1[last]).unwrap();
    writeln!(text, "final_m2 = {}", m.m2[last]).unwrap();
    writeln!(text, "final_m3 = {}", m.m3[last]).unwrap();
    writeln!(text, "wall_seconds = {}", duration_seconds(artifacts.wall)).unwrap();
    fs::write(path, text).with_context(|| format!("writing {}", path.display()))
}

/// Write every run artifact into `dir`: moments.csv, density_<t>.csv per
/// snapshot, run_summary.txt.
pub fn write_run_outputs(
    dir: &Path,
    cfg: &SimulationConfig,
    artifacts: &RunArtifacts,
) -> Result<()> {
    fs::create_dir_all(dir).with_context(|| format!("creating {}", dir.display()))?;
    write_moments_csv(&dir.join("moments.csv"), &artifacts.result.moments)?;
    for snap in &artifacts.result.snapshots {
        write_density_csv(
            &dir.join(density_file_name(snap.time)),
            &artifacts.grid,
            &snap.state,
        )?;
    }
    write_run_summary(&dir.join("run_summary.txt"), cfg, artifacts)
}

fn eoc_cell(value: &Option<EocValue>) -> String {
    match value {
        None => "-".into(),
        Some(EocValue::Order(p)) => format!("{p:.4}"),
        Some(EocValue::Exact) => "exact".into(),
    }
}

/// Human-readable table in the (grid points | L1 error | EOC) layout.
pub fn eoc_table_text(study: &EocStudy) -> String {
    let mut text = String::new();
    writeln!(
        text,
        "{:>11}  {:>13}  {:>8}",
        "grid points", "L1 error", "EOC"
    )
    .unwrap();
    for level in &study.report.levels {
        writeln!(
            text,
            "{:>11}  {:>13.4e}  {:>8}",
            level.cells,
            level.l1_error,
            eoc_cell(&level.eoc)
        )
        .unwrap();
    }
    text
}

pub fn write_eoc_outputs(
    dir: &Path,
    cfg: &SimulationConfig,
    levels: usize,
    study: &EocStudy,
) -> Result<()> {
    fs::create_dir_all(dir).with_context(|| format!("creating {}", dir.display()))?;
    fs::write(dir.join("eoc_report.txt"), eoc_table_text(study))
        .context("writing eoc_report.txt")?;

    let mut csv = String::from("cells,l1_error,eoc\n");
    for level in &study.report.levels {
        let eoc = match &level.eoc {
            None => String::new(),
            Some(EocValue::Order(p)) => format!("{p}"),
            Some(EocValue::Exact) => "exact".into(),
        };
        writeln!(csv, "{},{},{eoc}", level.cells, level.l1_error).unwrap();
    }
    fs::write(dir.join("eoc_report.csv"), csv).context("writing eoc_report.csv")?;

    let mut summary = String::from("# refinement study summary\n\n[config]\n");
    summary.push_str(&cfg.to_toml());
    summary.push_str("\n[result]\n");
    writeln!(summary, "levels = {levels}").unwrap();
    writeln!(summary, "negative_entries = {}", study.negative_entries).unwrap();
    writeln!(summary, "wall_seconds = {}", duration_seconds(study.wall)).unwrap();
    fs::write(dir.join("run_summary.txt"), summary).context("writing run_summary.txt")
}

fn duration_seconds(d: Duration) -> String {
    format!("{:.3}", d.as_secs_f64())
}
