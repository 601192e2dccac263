//! Moments, decay-rate fits, cross-grid L¹ distances and convergence orders.

use crate::error::{Error, Result};
use crate::operator::State;

/// Discrete p-th moment Σ_i ω_i^p N_i Δω_i. p = 0 is the total wave number,
/// p = 1 the total energy.
pub fn moment(state: &State, p: u32) -> f64 {
    let grid = state.grid();
    let c = grid.centers();
    let w = grid.widths();
    state
        .densities()
        .iter()
        .enumerate()
        .map(|(i, n)| c[i].powi(p as i32) * n * w[i])
        .sum()
}

/// Time series of the first four moments, appended once per step.
#[derive(Debug, Clone, Default)]
pub struct MomentSeries {
    pub times: Vec<f64>,
    pub m0: Vec<f64>,
    pub m1: Vec<f64>,
    pub m2: Vec<f64>,
    pub m3: Vec<f64>,
}

impl MomentSeries {
    pub fn new() -> Self {
        Self::default()
    }

    pub fn push(&mut self, t: f64, state: &State) {
        self.times.push(t);
        self.m0.push(moment(state, 0));
        self.m1.push(moment(state, 1));
        self.m2.push(moment(state, 2));
        self.m3.push(moment(state, 3));
    }

    pub fn len(&self) -> usize {
        self.times.len()
    }

    pub fn is_empty(&self) -> bool {
        self.times.is_empty()
    }
}

/// Outcome of fitting the late-time decay of the total energy M₁(t).
#[derive(Debug, Clone, Copy, PartialEq)]
pub enum DecayEnvelope {
    /// Least-squares slope of log M₁ against log t on [t_start, T]; `passes`
    /// when the slope is at most -1/2 plus a 0.05 slack.
    Slope { slope: f64, passes: bool },
    /// M₁ vanished on the fit window, faster than any power law.
    FullyDecayed,
}

const DECAY_SLACK: f64 = 0.05;

/// Fit the log-log slope of M₁ over t ≥ t_start.
pub fn decay_envelope_check(series: &MomentSeries, t_start: f64) -> DecayEnvelope {
    let pts: Vec<(f64, f64)> = series
        .times
        .iter()
        .zip(&series.m1)
        .filter(|(t, m)| **t >= t_start && **t > 0.0 && **m > 0.0)
        .map(|(t, m)| (t.ln(), m.ln()))
        .collect();
    if pts.len() < 2 {
        return DecayEnvelope::FullyDecayed;
    }
    let n = pts.len() as f64;
    let sx: f64 = pts.iter().map(|p| p.0).sum();
    let sy: f64 = pts.iter().map(|p| p.1).sum();
    let sxx: f64 = pts.iter().map(|p| p.0 * p.0).sum();
    let sxy: f64 = pts.iter().map(|p| p.0 * p.1).sum();
    let slope = (n * sxy - sx * sy) / (n * sxx - sx * sx);
    DecayEnvelope::Slope {
        slope,
        passes: slope <= -0.5 + DECAY_SLACK,
    }
}

/// L¹ distance between a coarse state and a state on its factor-2 nested
/// refinement, measured on cell masses F = N Δω after conservative
/// restriction of the fine solution (fine cell masses summed per coarse cell).
pub fn l1_distance(coarse: &State, fine: &State) -> Result<f64> {
    let cg = coarse.grid();
    let fg = fine.grid();
    if fg.cell_count() != 2 * cg.cell_count() {
        return Err(Error::InvalidComparison(format!(
            "expected a factor-2 refinement of {} cells, got {}",
            cg.cell_count(),
            fg.cell_count()
        )));
    }
    let tol = 1e-9 * cg.radius().max(1.0);
    for (k, e) in cg.edges().iter().enumerate() {
        if (fg.edges()[2 * k] - e).abs() > tol {
            return Err(Error::InvalidComparison(format!(
                "grids are not nested at coarse edge {k}"
            )));
        }
    }
    let cw = cg.widths();
    let fw = fg.widths();
    let cn = coarse.densities();
    let fn_ = fine.densities();
    let mut dist = 0.0;
    for k in 0..cg.cell_count() {
        let coarse_mass = cn[k] * cw[k];
        let fine_mass = fn_[2 * k] * fw[2 * k] + fn_[2 * k + 1] * fw[2 * k + 1];
        dist += (coarse_mass - fine_mass).abs();
    }
    Ok(dist)
}

/// One experimental order of convergence, or a flag that the level was exact.
#[derive(Debug, Clone, Copy, PartialEq)]
pub enum EocValue {
    Order(f64),
    /// The error vanished, so no finite order can be formed at this level.
    Exact,
}

/// EOC_k = log2(errors[k-1] / errors[k]) for successive nested-grid errors.
pub fn eoc(errors: &[f64]) -> Result<Vec<EocValue>> {
    if errors.len() < 2 {
        return Err(Error::InvalidInput("EOC needs at least two errors".into()));
    }
    if let Some(e) = errors.iter().find(|e| !e.is_finite() || **e < 0.0) {
        return Err(Error::InvalidInput(format!(
            "errors must be finite and non-negative, got {e}"
        )));
    }
    Ok(errors
        .windows(2)
        .map(|w| {
            if w[0] == 0.0 || w[1] == 0.0 {
                EocValue::Exact
            } else {
                EocValue::Order((w[0] / w[1]).log2())
            }
        })
        .collect())
}

/// One row of a grid-refinement study: the cell count, the L¹ distance to
/// the next refinement, and the order formed against the previous row.
#[derive(Debug, Clone)]
pub struct EocLevel {
    pub cells: usize,
    pub l1_error: f64,
    pub eoc: Option<EocValue>,
}

/// Table of refinement rows, mirroring the usual (grid points, error, EOC)
/// presentation.
#[derive(Debug, Clone)]
pub struct EocReport {
    pub levels: Vec<EocLevel>,
}

impl EocReport {
    /// Assemble from per-level cell counts and the distances between
    /// successive levels (`errors[k]` compares level k to level k+1).
    pub fn from_errors(cells: &[usize], errors: &[f64]) -> Result<Self> {
        if cells.len() != errors.len() {
            return Err(Error::InvalidInput(
                "one error per refinement row is required".into(),
            ));
        }
        let orders = if errors.len() >= 2 {
            eoc(errors)?
        } else {
            Vec::new()
        };
        let levels = cells
            .iter()
            .zip(errors)
            .enumerate()
            .map(|(k, (&cells, &l1_error))| EocLevel {
                cells,
                l1_error,
                eoc: if k == 0 { None } else { Some(orders[k - 1]) },
            })
            .collect();
        Ok(Self { levels })
    }
}
