//! Drive simulations and refinement studies from a configuration.

use std::sync::Arc;
use std::time::{Duration, Instant};

use anyhow::{bail, Context, Result};
use wavekin_core::{l1_distance, project, EocReport, Grid, RunResult, State, Stepper};

use crate::config::SimulationConfig;

pub struct RunArtifacts {
    pub grid: Arc<Grid>,
    pub result: RunResult,
    pub wall: Duration,
}

/// Validate, assemble and integrate one run.
pub fn execute_run(cfg: &SimulationConfig) -> Result<RunArtifacts> {
    cfg.validate()?;
    let started = Instant::now();
    let grid = cfg.build_grid()?;
    let kernels = cfg.kernel_spec(&grid)?;
    let ic = cfg.initial_condition()?;
    let initial = project(&ic, grid.clone())?;
    let stepper = Stepper::new(grid.clone(), &kernels, cfg.scheme.kind())?;
    let time = cfg.time()?;
    let result = stepper
        .run(&initial, &time, cfg.strict_negativity)
        .context("time integration failed")?;
    Ok(RunArtifacts {
        grid,
        result,
        wall: started.elapsed(),
    })
}

pub struct EocStudy {
    pub cells: Vec<usize>,
    pub report: EocReport,
    pub negative_entries: u64,
    pub wall: Duration,
}

/// Run the solver at cells, 2·cells, 4·cells, ... (`levels` grids, at least
/// 3), compare successive final states in the nested L¹ metric and form the
/// experimental orders of convergence. Levels run concurrently, at most
/// `workers` at a time.
pub fn execute_eoc(cfg: &SimulationConfig, levels: usize, workers: usize) -> Result<EocStudy> {
    cfg.validate()?;
    if levels < 3 {
        bail!("levels must be at least 3, got {levels}");
    }
    let workers = workers.max(1);
    let started = Instant::now();

    let mut level_configs = Vec::with_capacity(levels);
    for lvl in 0..levels {
        let mut c = cfg.clone();
        c.cells = cfg
            .cells
            .checked_shl(lvl as u32)
            .context("cell count overflow across levels")?;
        c.snapshot_every = 0;
        level_configs.push(c);
    }

    let mut finals: Vec<Option<(State, u64)>> = (0..levels).map(|_| None).collect();
    for chunk_start in (0..levels).step_by(workers) {
        let chunk_end = (chunk_start + workers).min(levels);
        let outcomes: Vec<Result<(State, u64)>> = std::thread::scope(|scope| {
            let handles: Vec<_> = level_configs[chunk_start..chunk_end]
                .iter()
                .map(|c| {
                    scope.spawn(move || {
                        let artifacts = execute_run(c)
                            .with_context(|| format!("refinement level with {} cells", c.cells))?;
                        Ok((
                            artifacts.result.final_state,
                            artifacts.result.negative_entries,
                        ))
                    })
                })
                .collect();
            handles
                .into_iter()
                .map(|h| h.join().expect("level thread panicked"))
                .collect()
        });
        for (offset, outcome) in outcomes.into_iter().enumerate() {
            finals[chunk_start + offset] = Some(outcome?);
        }
    }

    let finals: Vec<(State, u64)> = finals.into_iter().map(Option::unwrap).collect();
    let negative_entries = finals.iter().map(|(_, n)| n).sum();
    let mut errors = Vec::with_capacity(levels - 1);
    for pair in finals.windows(2) {
        errors.push(l1_distance(&pair[0].0, &pair[1].0)?);
    }
    let cells: Vec<usize> = level_configs[..levels - 1]
        .iter()
        .map(|c| c.cells)
        .collect();
    let report = EocReport::from_errors(&cells, &errors)?;

    Ok(EocStudy {
        cells,
        report,
        negative_entries,
        wall: started.elapsed(),
    })
}
