//! Explicit Euler time stepping for the discrete collision operator.
//!
//! Both schemes advance N_i by dt (q1 + q2 + q3 + q4 + q5)_i and share the
//! energy-metered gain deposits. They differ in the merge loss: the plain
//! scheme counts every partner (raw kernel), so merges past the truncation
//! radius drain energy out of the domain and Σ ω_i N_i Δω_i can only fall;
//! the weighted scheme truncates the loss as well, closing the system so
//! that the total energy is conserved to round-off on any grid.

use std::sync::Arc;

use crate::diagnostics::MomentSeries;
use crate::error::{Error, Result};
use crate::grid::Grid;
use crate::kernel::KernelSpec;
use crate::operator::{
    build_index_sets, flux_impl, DepositFactors, FluxTables, FluxTerms, IndexSets, State,
};

/// Which update rule a run uses.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum SchemeKind {
    /// Open at the truncation radius: merge losses count all partners.
    Plain,
    /// Energy-conserving closure: overflow interactions switched off.
    Weighted,
}

/// Time-stepping parameters.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct TimeConfig {
    pub dt: f64,
    pub t_end: f64,
    /// Steps between recorded density snapshots; 0 disables periodic
    /// snapshots (initial and final states are always kept).
    pub snapshot_stride: usize,
}

impl TimeConfig {
    pub fn new(dt: f64, t_end: f64, snapshot_stride: usize) -> Result<Self> {
        if !dt.is_finite() || dt <= 0.0 {
            return Err(Error::InvalidConfiguration(format!(
                "time step dt must be positive, got {dt}"
            )));
        }
        if !t_end.is_finite() || t_end < 0.0 {
            return Err(Error::InvalidConfiguration(format!(
                "final time t_end must be non-negative, got {t_end}"
            )));
        }
        let cfg = Self {
            dt,
            t_end,
            snapshot_stride,
        };
        let n = cfg.step_count() as f64;
        if (n * dt - t_end).abs() > 1e-6 * dt.max(t_end) {
            return Err(Error::InvalidConfiguration(format!(
                "t_end = {t_end} is not an integer number of steps of dt = {dt}"
            )));
        }
        Ok(cfg)
    }

    pub fn step_count(&self) -> usize {
        (self.t_end / self.dt).round() as usize
    }
}

/// Merge-gain weight α: the exact interaction frequency over the midpoint
/// of the receiving cell, zero for pairs truncated away.
pub fn weight_alpha(grid: &Grid, i: usize, j: usize, k: usize) -> f64 {
    let c = grid.centers();
    let s = c[j] + c[k];
    if s <= grid.radius() {
        s / c[i]
    } else {
        0.0
    }
}

/// Classical split-loss weight β = 2 ω_j / ω_i. Midpoints lie in (0, R], so
/// the zero branch of its definition is unreachable for valid cells. The
/// update itself does not need it: with energy-metered gain deposits each
/// split already balances, and applying β on top would unbalance it. It is
/// exposed for diagnostic use; β equals the ratio actually deposited per
/// split, (ω_D + ω_j)/ω_i with D the cell receiving the difference, exactly
/// when that difference lands in cell j itself.
pub fn weight_beta(grid: &Grid, i: usize, j: usize) -> f64 {
    let c = grid.centers();
    2.0 * c[j] / c[i]
}

/// Snapshot of the state at one recorded time.
#[derive(Debug, Clone)]
pub struct Snapshot {
    pub time: f64,
    pub state: State,
}

/// Everything a run produces.
#[derive(Debug, Clone)]
pub struct RunResult {
    pub final_state: State,
    pub moments: MomentSeries,
    pub snapshots: Vec<Snapshot>,
    /// Total count of negative entries observed after steps, summed over the
    /// run. Explicit stepping may undershoot; entries are reported, never
    /// clipped, since clipping would silently break the energy balance.
    pub negative_entries: u64,
    pub steps: usize,
}

/// Precomputed stepping context for one (grid, kernels, scheme) triple.
#[derive(Debug, Clone)]
pub struct Stepper {
    grid: Arc<Grid>,
    kind: SchemeKind,
    sets: IndexSets,
    tables: FluxTables,
    factors: DepositFactors,
}

impl Stepper {
    pub fn new(grid: Arc<Grid>, kernels: &KernelSpec, kind: SchemeKind) -> Result<Self> {
        let tables = FluxTables::new(kernels, &grid)?;
        let sets = build_index_sets(&grid);
        let factors = DepositFactors::new(&grid, &sets);
        Ok(Self {
            grid,
            kind,
            sets,
            tables,
            factors,
        })
    }

    pub fn grid(&self) -> &Arc<Grid> {
        &self.grid
    }

    pub fn kind(&self) -> SchemeKind {
        self.kind
    }

    pub fn index_sets(&self) -> &IndexSets {
        &self.sets
    }

    /// Flux terms under this scheme's loss closure.
    pub fn fluxes(&self, state: &State) -> Result<FluxTerms> {
        flux_impl(state, &self.tables, &self.sets, &self.factors, self.kind)
    }

    fn check_same_grid(&self, state: &State) -> Result<()> {
        let g = state.grid();
        if g.cell_count() != self.grid.cell_count() || g.radius() != self.grid.radius() {
            return Err(Error::InvalidConfiguration(
                "state grid does not match the stepper grid".into(),
            ));
        }
        Ok(())
    }

    /// One explicit Euler step.
    pub fn step(&self, state: &State, dt: f64) -> Result<State> {
        if !dt.is_finite() || dt <= 0.0 {
            return Err(Error::InvalidConfiguration(format!(
                "time step dt must be positive, got {dt}"
            )));
        }
        self.check_same_grid(state)?;
        let fx = self.fluxes(state)?;
        let next: Vec<f64> = state
            .densities()
            .iter()
            .enumerate()
            .map(|(i, n)| n + dt * (fx.q1[i] + fx.q2[i] + fx.q3[i] + fx.q4[i] + fx.q5[i]))
            .collect();
        State::new_signed(self.grid.clone(), next)
    }

    /// Integrate from `initial` to t_end, recording moments every step and
    /// density snapshots every `snapshot_stride` steps. With
    /// `strict_negativity` the run aborts once an entry falls below
    /// -1e-12 max(N).
    pub fn run(
        &self,
        initial: &State,
        time: &TimeConfig,
        strict_negativity: bool,
    ) -> Result<RunResult> {
        self.check_same_grid(initial)?;
        let steps = time.step_count();
        let mut moments = MomentSeries::new();
        moments.push(0.0, initial);
        let mut snapshots = vec![Snapshot {
            time: 0.0,
            state: initial.clone(),
        }];
        let mut state = initial.clone();
        let mut negative_entries: u64 = 0;

        for step in 1..=steps {
            state = self.step(&state, time.dt).map_err(|e| match e {
                e @ Error::InvalidConfiguration(_) => e,
                other => Error::NumericalBlowUp {
                    step,
                    source: Box::new(other),
                },
            })?;
            let t = step as f64 * time.dt;

            let negatives = state.negative_entries() as u64;
            negative_entries += negatives;
            if strict_negativity && negatives > 0 {
                let threshold = -1e-12 * state.max_density().max(0.0);
                if let Some((cell, &value)) = state
                    .densities()
                    .iter()
                    .enumerate()
                    .find(|(_, v)| **v < threshold)
                {
                    return Err(Error::NegativityExceeded { step, cell, value });
                }
            }

            moments.push(t, &state);
            if time.snapshot_stride > 0 && step % time.snapshot_stride == 0 && step != steps {
                snapshots.push(Snapshot {
                    time: t,
                    state: state.clone(),
                });
            }
        }

        if steps > 0 {
            snapshots.push(Snapshot {
                time: time.t_end,
                state: state.clone(),
            });
        }

        Ok(RunResult {
            final_state: state,
            moments,
            snapshots,
            negative_entries,
            steps,
        })
    }
}
