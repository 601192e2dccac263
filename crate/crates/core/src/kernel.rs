//! Wave-interaction kernels K₁, K₂, K₃ with the truncation constraint.
//!
//! All three kernels are product powers K(ω, μ) = (ωμ)^d with non-negative
//! degrees of homogeneity, cut off so that the value is zero unless
//! 0 < ω + μ ≤ R and both arguments are positive. K₁ drives the forward
//! transfer of energy (merging), K₂ and K₃ the back-scattering (splitting).

use crate::error::{Error, Result};
use crate::grid::Grid;

/// Which of the three interaction kernels to evaluate.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum KernelId {
    K1,
    K2,
    K3,
}

/// Degrees of homogeneity (θ, γ, δ) plus the truncation radius shared with
/// the grid.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct KernelSpec {
    pub theta: f64,
    pub gamma: f64,
    pub delta: f64,
    pub radius: f64,
}

impl KernelSpec {
    pub fn new(theta: f64, gamma: f64, delta: f64, radius: f64) -> Result<Self> {
        for (name, d) in [("theta", theta), ("gamma", gamma), ("delta", delta)] {
            if !d.is_finite() || d < 0.0 {
                return Err(Error::InvalidConfiguration(format!(
                    "kernel degree {name} must be finite and non-negative, got {d}"
                )));
            }
        }
        if !radius.is_finite() || radius <= 0.0 {
            return Err(Error::InvalidConfiguration(format!(
                "kernel truncation radius R must be positive, got {radius}"
            )));
        }
        Ok(Self {
            theta,
            gamma,
            delta,
            radius,
        })
    }

    pub fn degree(&self, which: KernelId) -> f64 {
        match which {
            KernelId::K1 => self.theta,
            KernelId::K2 => self.gamma,
            KernelId::K3 => self.delta,
        }
    }

    /// Truncated kernel value: (w·m)^degree when 0 < w + m ≤ R and both
    /// arguments are positive, 0 otherwise. Symmetric in (w, m).
    #[allow(clippy::neg_cmp_op_on_partial_ord)] // NaN must hit the zero branch
    pub fn eval(&self, which: KernelId, w: f64, m: f64) -> f64 {
        if !(w > 0.0) || !(m > 0.0) || w + m > self.radius {
            return 0.0;
        }
        (w * m).powf(self.degree(which))
    }

    /// Untruncated product power (w·m)^degree for positive arguments. The
    /// merge loss of the plain scheme sums this over all partners: pairs
    /// whose sum exceeds R are removed without a matching gain, which is the
    /// energy flux out through the truncation radius.
    #[allow(clippy::neg_cmp_op_on_partial_ord)] // NaN must hit the zero branch
    pub fn eval_raw(&self, which: KernelId, w: f64, m: f64) -> f64 {
        if !(w > 0.0) || !(m > 0.0) {
            return 0.0;
        }
        (w * m).powf(self.degree(which))
    }

    /// K₂ + K₃ at the same point; the splitting terms of the collision
    /// operator only ever use this combination.
    #[allow(clippy::neg_cmp_op_on_partial_ord)] // NaN must hit the zero branch
    pub fn eval_split(&self, w: f64, m: f64) -> f64 {
        if !(w > 0.0) || !(m > 0.0) || w + m > self.radius {
            return 0.0;
        }
        let p = w * m;
        p.powf(self.gamma) + p.powf(self.delta)
    }
}

/// Dense I×I table of one kernel at all midpoint pairs (ω_i, ω_j).
#[derive(Debug, Clone)]
pub struct KernelTable {
    n: usize,
    values: Vec<f64>,
}

impl KernelTable {
    pub fn cell_count(&self) -> usize {
        self.n
    }

    #[inline]
    pub fn value(&self, i: usize, j: usize) -> f64 {
        self.values[i * self.n + j]
    }
}

/// Tabulate `which` at every midpoint pair of `grid`. Entries with
/// ω_i + ω_j > R are zero by the truncation constraint.
pub fn kernel_table(spec: &KernelSpec, grid: &Grid, which: KernelId) -> Result<KernelTable> {
    if spec.radius != grid.radius() {
        return Err(Error::InvalidConfiguration(format!(
            "kernel radius {} does not match grid radius {}",
            spec.radius,
            grid.radius()
        )));
    }
    let n = grid.cell_count();
    let c = grid.centers();
    let mut values = Vec::with_capacity(n * n);
    for i in 0..n {
        for j in 0..n {
            values.push(spec.eval(which, c[i], c[j]));
        }
    }
    Ok(KernelTable { n, values })
}
