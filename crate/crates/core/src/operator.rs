//! Discrete collision operator: pair index sets and the five flux terms.
//!
//! For a state of cell averages N_i the operator splits into
//!
//!   q1_i =  Σ_{(j,k): ω_j+ω_k ∈ cell i} (ω_j+ω_k)/ω_i · K¹_{j,k} N_j N_k Δω_j Δω_k / Δω_i
//!   q2_i = -2 Σ_j K¹_{i,j} N_i N_j Δω_j
//!   q3_i =  Σ_{(j,k): ω_j-ω_k ∈ cell i} (ω_j-ω_k)/ω_i · (K²+K³)(ω_j-ω_k, ω_k) N_j N_k Δω_j Δω_k / Δω_i
//!   q4_i = -Σ_{j<i} (K²+K³)(ω_i-ω_j, ω_j) N_i N_j Δω_j
//!   q5_i =  Σ_{j>i} (K²+K³)(ω_j-ω_i, ω_i) N_i N_j Δω_j
//!
//! q1/q2 are the merge gain and loss, q3/q5 the two split gains and q4 the
//! split loss. Binning an interaction product into a cell replaces its true
//! frequency by the cell midpoint; the per-pair ratios in q1 and q3 meter
//! each deposit so it carries exactly the energy of the true frequency, and
//! with them every merge and every split balances identically. Difference
//! kernels are evaluated pointwise at (ω_j - ω_k, ω_k); integer index
//! subtraction would be meaningless on geometric meshes.
//!
//! The merge loss q2 decides the energy budget of the domain. The plain
//! scheme sums it with the raw product-power kernel, so pairs whose sum
//! exceeds R are removed without a matching gain: that unmatched loss is
//! the energy cascade out through the truncation radius, and it is the only
//! way the plain scheme's total energy can move. The weighted scheme uses
//! the truncated kernel instead, switching those pairs off entirely and
//! closing the system, which makes Σ ω_i N_i Δω_i exact to round-off.

use std::sync::Arc;

use crate::error::{Error, Result};
use crate::grid::Grid;
use crate::kernel::{kernel_table, KernelId, KernelSpec, KernelTable};
use crate::scheme::SchemeKind;

/// Per-cell wave density averages N_i on a shared grid.
#[derive(Debug, Clone)]
pub struct State {
    grid: Arc<Grid>,
    densities: Vec<f64>,
}

impl State {
    /// Physically valid state: finite, non-negative, one entry per cell.
    pub fn new(grid: Arc<Grid>, densities: Vec<f64>) -> Result<Self> {
        let state = Self::new_signed(grid, densities)?;
        if let Some((i, v)) = state.densities.iter().enumerate().find(|(_, v)| **v < 0.0) {
            return Err(Error::InvalidInput(format!(
                "density must be non-negative, N[{i}] = {v}"
            )));
        }
        Ok(state)
    }

    /// State that may carry negative entries (explicit stepping can
    /// transiently undershoot; analysis code compares signed residuals).
    pub fn new_signed(grid: Arc<Grid>, densities: Vec<f64>) -> Result<Self> {
        if densities.len() != grid.cell_count() {
            return Err(Error::InvalidInput(format!(
                "state has {} entries for a grid with {} cells",
                densities.len(),
                grid.cell_count()
            )));
        }
        if let Some((i, v)) = densities.iter().enumerate().find(|(_, v)| !v.is_finite()) {
            return Err(Error::InvalidInput(format!(
                "non-finite density N[{i}] = {v}"
            )));
        }
        Ok(Self { grid, densities })
    }

    pub fn zero(grid: Arc<Grid>) -> Self {
        let n = grid.cell_count();
        Self {
            grid,
            densities: vec![0.0; n],
        }
    }

    pub fn grid(&self) -> &Arc<Grid> {
        &self.grid
    }

    pub fn densities(&self) -> &[f64] {
        &self.densities
    }

    /// Number of entries strictly below zero.
    pub fn negative_entries(&self) -> usize {
        self.densities.iter().filter(|v| **v < 0.0).count()
    }

    pub fn max_density(&self) -> f64 {
        self.densities
            .iter()
            .copied()
            .fold(f64::NEG_INFINITY, f64::max)
    }
}

/// Precomputed pair classifications for one grid.
///
/// `gain_sum[i]` holds the ordered pairs (j, k) whose midpoint sum falls in
/// cell i, `gain_diff[i]` the pairs with j > k whose midpoint difference
/// falls in cell i, `overflow` the pairs whose sum exceeds R. Pair lists are
/// in ascending (j, k) order so summation is reproducible bit for bit.
#[derive(Debug, Clone)]
pub struct IndexSets {
    pub gain_sum: Vec<Vec<(usize, usize)>>,
    pub gain_diff: Vec<Vec<(usize, usize)>>,
    pub overflow: Vec<(usize, usize)>,
}

/// Classify all midpoint pairs of `grid`. O(I²).
pub fn build_index_sets(grid: &Grid) -> IndexSets {
    let n = grid.cell_count();
    let c = grid.centers();
    let mut gain_sum = vec![Vec::new(); n];
    let mut gain_diff = vec![Vec::new(); n];
    let mut overflow = Vec::new();

    for j in 0..n {
        for k in 0..n {
            match grid.interaction_cell(c[j] + c[k]) {
                Some(cell) => gain_sum[cell].push((j, k)),
                None => overflow.push((j, k)),
            }
        }
    }
    for j in 0..n {
        for k in 0..j {
            let d = c[j] - c[k];
            if d > 0.0 {
                if let Some(cell) = grid.interaction_cell(d) {
                    gain_diff[cell].push((j, k));
                }
            }
        }
    }

    IndexSets {
        gain_sum,
        gain_diff,
        overflow,
    }
}

/// The five per-cell rates. Gain terms q1, q3, q5 are non-negative and loss
/// terms q2, q4 non-positive whenever the state is non-negative.
#[derive(Debug, Clone)]
pub struct FluxTerms {
    pub q1: Vec<f64>,
    pub q2: Vec<f64>,
    pub q3: Vec<f64>,
    pub q4: Vec<f64>,
    pub q5: Vec<f64>,
}

impl FluxTerms {
    /// q1 + q2 + q3 + q4 + q5 per cell.
    pub fn net(&self) -> Vec<f64> {
        (0..self.q1.len())
            .map(|i| self.q1[i] + self.q2[i] + self.q3[i] + self.q4[i] + self.q5[i])
            .collect()
    }
}

/// Kernel data the flux evaluation needs: K¹ midpoint tables (truncated and
/// raw, for the closed and open merge loss) and the combined split kernel
/// (K²+K³)(ω_i - ω_j, ω_j) tabulated for every pair j < i.
#[derive(Debug, Clone)]
pub struct FluxTables {
    k1_cut: KernelTable,
    k1_raw: Vec<f64>,
    split: Vec<f64>,
    n: usize,
}

impl FluxTables {
    pub fn new(spec: &KernelSpec, grid: &Grid) -> Result<Self> {
        let k1_cut = kernel_table(spec, grid, KernelId::K1)?;
        let n = grid.cell_count();
        let c = grid.centers();
        let mut k1_raw = Vec::with_capacity(n * n);
        for i in 0..n {
            for j in 0..n {
                k1_raw.push(spec.eval_raw(KernelId::K1, c[i], c[j]));
            }
        }
        let mut split = Vec::with_capacity(n * (n - 1) / 2);
        for i in 0..n {
            for j in 0..i {
                split.push(spec.eval_split(c[i] - c[j], c[j]));
            }
        }
        Ok(Self {
            k1_cut,
            k1_raw,
            split,
            n,
        })
    }

    pub fn cell_count(&self) -> usize {
        self.n
    }

    #[inline]
    fn k1_cut(&self, i: usize, j: usize) -> f64 {
        self.k1_cut.value(i, j)
    }

    #[inline]
    fn k1_raw(&self, i: usize, j: usize) -> f64 {
        self.k1_raw[i * self.n + j]
    }

    /// (K²+K³)(ω_hi - ω_lo, ω_lo), requires hi > lo.
    #[inline]
    fn split(&self, hi: usize, lo: usize) -> f64 {
        self.split[hi * (hi - 1) / 2 + lo]
    }
}

/// Energy-metering deposit ratios, aligned with the index-set pair lists:
/// (ω_j + ω_k)/ω_i for every pair of `gain_sum[i]` and (ω_j - ω_k)/ω_i for
/// every pair of `gain_diff[i]`.
#[derive(Debug, Clone)]
pub(crate) struct DepositFactors {
    pub(crate) sum: Vec<Vec<f64>>,
    pub(crate) diff: Vec<Vec<f64>>,
}

impl DepositFactors {
    pub(crate) fn new(grid: &Grid, sets: &IndexSets) -> Self {
        let c = grid.centers();
        let sum = sets
            .gain_sum
            .iter()
            .enumerate()
            .map(|(i, pairs)| pairs.iter().map(|&(j, k)| (c[j] + c[k]) / c[i]).collect())
            .collect();
        let diff = sets
            .gain_diff
            .iter()
            .enumerate()
            .map(|(i, pairs)| pairs.iter().map(|&(j, k)| (c[j] - c[k]) / c[i]).collect())
            .collect();
        Self { sum, diff }
    }
}

pub(crate) fn flux_impl(
    state: &State,
    tables: &FluxTables,
    sets: &IndexSets,
    factors: &DepositFactors,
    kind: SchemeKind,
) -> Result<FluxTerms> {
    let grid = state.grid();
    let n = grid.cell_count();
    if tables.cell_count() != n || sets.gain_sum.len() != n {
        return Err(Error::InvalidConfiguration(
            "state, kernel tables and index sets must share one grid".into(),
        ));
    }
    let w = grid.widths();
    let f = state.densities();

    let mut q1 = vec![0.0; n];
    let mut q2 = vec![0.0; n];
    let mut q3 = vec![0.0; n];
    let mut q4 = vec![0.0; n];
    let mut q5 = vec![0.0; n];

    for i in 0..n {
        let mut acc = 0.0;
        for (p, &(j, k)) in sets.gain_sum[i].iter().enumerate() {
            acc += tables.k1_cut(j, k) * f[j] * f[k] * w[j] * w[k] * factors.sum[i][p];
        }
        q1[i] = acc / w[i];
    }

    for i in 0..n {
        let mut acc = 0.0;
        match kind {
            SchemeKind::Plain => {
                for j in 0..n {
                    acc += tables.k1_raw(i, j) * f[j] * w[j];
                }
            }
            SchemeKind::Weighted => {
                for j in 0..n {
                    acc += tables.k1_cut(i, j) * f[j] * w[j];
                }
            }
        }
        q2[i] = -2.0 * f[i] * acc;
    }

    for i in 0..n {
        let mut acc = 0.0;
        for (p, &(j, k)) in sets.gain_diff[i].iter().enumerate() {
            acc += tables.split(j, k) * f[j] * f[k] * w[j] * w[k] * factors.diff[i][p];
        }
        q3[i] = acc / w[i];
    }

    for i in 0..n {
        let mut acc = 0.0;
        for j in 0..i {
            acc += tables.split(i, j) * f[j] * w[j];
        }
        q4[i] = -f[i] * acc;
    }

    for i in 0..n {
        let mut acc = 0.0;
        for j in i + 1..n {
            acc += tables.split(j, i) * f[j] * w[j];
        }
        q5[i] = f[i] * acc;
    }

    for (term, values) in [
        ("q1", &q1),
        ("q2", &q2),
        ("q3", &q3),
        ("q4", &q4),
        ("q5", &q5),
    ] {
        if let Some(cell) = values.iter().position(|v| !v.is_finite()) {
            return Err(Error::NumericalOverflow { term, cell });
        }
    }

    Ok(FluxTerms { q1, q2, q3, q4, q5 })
}

/// Evaluate the five flux terms under the given scheme's loss closure.
pub fn compute_fluxes_with(
    state: &State,
    tables: &FluxTables,
    sets: &IndexSets,
    kind: SchemeKind,
) -> Result<FluxTerms> {
    let factors = DepositFactors::new(state.grid(), sets);
    flux_impl(state, tables, sets, &factors, kind)
}

/// Plain-scheme flux evaluation.
pub fn compute_fluxes(state: &State, tables: &FluxTables, sets: &IndexSets) -> Result<FluxTerms> {
    compute_fluxes_with(state, tables, sets, SchemeKind::Plain)
}
