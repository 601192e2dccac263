//! Initial wave-density profiles and their projection onto a grid.

use std::path::Path;
use std::sync::Arc;

use crate::error::{Error, Result};
use crate::grid::Grid;
use crate::operator::State;

/// Narrow Gaussian pulse at low frequency: N(ω) = 1.25 ω exp(-100 (ω - 1/4)²).
pub fn eval_test1(w: f64) -> f64 {
    1.25 * w * (-100.0 * (w - 0.25) * (w - 0.25)).exp()
}

/// Compactly supported bump around ω = 5:
/// N(ω) = exp(5 / (|ω - 5|² - 1)) for |ω - 5| < 1 and 0 otherwise. The
/// boundary |ω - 5| = 1 takes the limit value 0.
pub fn eval_test2(w: f64) -> f64 {
    let u = (w - 5.0).abs();
    if u >= 1.0 {
        0.0
    } else {
        (5.0 / (u * u - 1.0)).exp()
    }
}

/// Piecewise-linear profile read from a two-column (ω, N) text file.
#[derive(Debug, Clone, PartialEq)]
pub struct TabulatedProfile {
    points: Vec<(f64, f64)>,
}

impl TabulatedProfile {
    pub fn new(points: Vec<(f64, f64)>) -> Result<Self> {
        if points.len() < 2 {
            return Err(Error::InvalidInput(
                "tabulated profile needs at least two points".into(),
            ));
        }
        for (i, &(w, n)) in points.iter().enumerate() {
            if !w.is_finite() || !n.is_finite() {
                return Err(Error::InvalidInput(format!(
                    "non-finite table entry at row {i}"
                )));
            }
            if n < 0.0 {
                return Err(Error::InvalidInput(format!(
                    "tabulated density must be non-negative, row {i} has N = {n}"
                )));
            }
            if i > 0 && w <= points[i - 1].0 {
                return Err(Error::InvalidInput(format!(
                    "tabulated frequencies must be strictly increasing at row {i}"
                )));
            }
        }
        Ok(Self { points })
    }

    /// Parse whitespace-separated rows; blank lines and `#` comments are skipped.
    pub fn parse(text: &str) -> Result<Self> {
        let mut points = Vec::new();
        for (lineno, line) in text.lines().enumerate() {
            let line = line.trim();
            if line.is_empty() || line.starts_with('#') {
                continue;
            }
            let mut cols = line.split_whitespace();
            let parse = |s: Option<&str>| -> Result<f64> {
                s.and_then(|v| v.parse::<f64>().ok()).ok_or_else(|| {
                    Error::InvalidInput(format!(
                        "line {}: expected two numeric columns (omega, N)",
                        lineno + 1
                    ))
                })
            };
            let w = parse(cols.next())?;
            let n = parse(cols.next())?;
            points.push((w, n));
        }
        Self::new(points)
    }

    pub fn load(path: &Path) -> Result<Self> {
        let text = std::fs::read_to_string(path).map_err(|e| {
            Error::InvalidInput(format!("cannot read profile {}: {e}", path.display()))
        })?;
        Self::parse(&text)
    }

    fn value_at(&self, w: f64) -> Result<f64> {
        let first = self.points.first().unwrap().0;
        let last = self.points.last().unwrap().0;
        if w < first || w > last {
            return Err(Error::InvalidInput(format!(
                "tabulated profile covers [{first}, {last}] and has a gap at omega = {w}"
            )));
        }
        let hi = self.points.partition_point(|&(x, _)| x < w);
        if hi == 0 {
            return Ok(self.points[0].1);
        }
        let (x0, y0) = self.points[hi - 1];
        let (x1, y1) = self.points[hi];
        if w == x0 {
            return Ok(y0);
        }
        Ok(y0 + (y1 - y0) * (w - x0) / (x1 - x0))
    }
}

/// Which initial condition a run starts from.
#[derive(Debug, Clone, PartialEq)]
pub enum InitialCondition {
    /// The Gaussian pulse of [`eval_test1`].
    Test1,
    /// The compact bump of [`eval_test2`].
    Test2,
    Tabulated(TabulatedProfile),
}

impl InitialCondition {
    pub fn density_at(&self, w: f64) -> Result<f64> {
        match self {
            Self::Test1 => Ok(eval_test1(w)),
            Self::Test2 => Ok(eval_test2(w)),
            Self::Tabulated(profile) => profile.value_at(w),
        }
    }
}

// Sub-panel width for the projection quadrature; fine enough to resolve
// the reference pulses even when a whole pulse fits inside one cell.
const PROJECT_SUB_WIDTH: f64 = 2e-3;
const PROJECT_MIN_PANELS: usize = 8;

/// Project a profile onto a grid as cell averages,
/// N_i = (1/Δω_i) ∫ over the cell of N(ω) dω, computed with a composite
/// midpoint rule per cell. On meshes that resolve the profile this agrees
/// with sampling at ω_i to second order; on meshes that do not (a pulse
/// narrower than one cell) it still books the full wave content into the
/// covering cell, which sampling would lose.
pub fn project(ic: &InitialCondition, grid: Arc<Grid>) -> Result<State> {
    let mut densities = Vec::with_capacity(grid.cell_count());
    for i in 0..grid.cell_count() {
        let lo = grid.edges()[i];
        let width = grid.widths()[i];
        let panels = ((width / PROJECT_SUB_WIDTH).ceil() as usize).max(PROJECT_MIN_PANELS);
        let sub = width / panels as f64;
        let mut acc = 0.0;
        for p in 0..panels {
            acc += ic.density_at(lo + (p as f64 + 0.5) * sub)?;
        }
        densities.push(acc / panels as f64);
    }
    State::new(grid, densities)
}
