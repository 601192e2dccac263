//! One-dimensional frequency meshes over the truncated domain (0, R].
//!
//! A [`Grid`] stores the I+1 cell edges ω_{1/2} < ... < ω_{I+1/2} together
//! with the cell midpoints ω_i and widths Δω_i. The first edge is exactly 0
//! and the last edge is exactly the truncation radius R.

use crate::error::{Error, Result};

/// Immutable frequency mesh. Cells are indexed 0..I and treated as
/// half-open intervals [ω_{i-1/2}, ω_{i+1/2}), with the single exception
/// that x = R belongs to the last cell so the domain is closed at the
/// truncation radius. On uniform meshes every sum and difference of two
/// midpoints lands exactly on an edge; the half-open convention sends those
/// interaction products into the upper cell.
#[derive(Debug, Clone, PartialEq)]
pub struct Grid {
    edges: Vec<f64>,
    centers: Vec<f64>,
    widths: Vec<f64>,
}

impl Grid {
    /// Uniform mesh with `cells` cells of width R / cells over [0, R].
    pub fn uniform(radius: f64, cells: usize) -> Result<Self> {
        if !radius.is_finite() || radius <= 0.0 {
            return Err(Error::InvalidConfiguration(format!(
                "truncation radius R must be positive and finite, got {radius}"
            )));
        }
        if cells == 0 {
            return Err(Error::InvalidConfiguration(
                "cell count I must be at least 1".into(),
            ));
        }
        let h = radius / cells as f64;
        let mut edges: Vec<f64> = (0..=cells).map(|k| k as f64 * h).collect();
        edges[cells] = radius;
        Self::from_edges(edges)
    }

    /// Geometric mesh obtained from a uniform mesh in ξ under ω = exp(ξ).
    ///
    /// Edges are exp(ξ_k) for ξ_k equally spaced in [ξ_min, ξ_max], except
    /// that the first edge is snapped to 0 so the domain is (0, R] with
    /// R = exp(ξ_max).
    pub fn geometric(xi_min: f64, xi_max: f64, cells: usize) -> Result<Self> {
        if !xi_min.is_finite() || !xi_max.is_finite() || xi_min >= xi_max {
            return Err(Error::InvalidConfiguration(format!(
                "geometric grid requires xi_min < xi_max, got [{xi_min}, {xi_max}]"
            )));
        }
        if cells == 0 {
            return Err(Error::InvalidConfiguration(
                "cell count I must be at least 1".into(),
            ));
        }
        let dxi = (xi_max - xi_min) / cells as f64;
        let mut edges = Vec::with_capacity(cells + 1);
        edges.push(0.0);
        for k in 1..cells {
            edges.push((xi_min + k as f64 * dxi).exp());
        }
        edges.push(xi_max.exp());
        Self::from_edges(edges)
    }

    fn from_edges(edges: Vec<f64>) -> Result<Self> {
        if edges.len() < 2 {
            return Err(Error::InvalidConfiguration(
                "grid needs at least one cell".into(),
            ));
        }
        // the negated comparison also rejects NaN edges
        #[allow(clippy::neg_cmp_op_on_partial_ord)]
        if edges.windows(2).any(|w| !(w[1] > w[0])) {
            return Err(Error::InvalidConfiguration(
                "grid edges must be strictly increasing".into(),
            ));
        }
        let centers = edges.windows(2).map(|w| 0.5 * (w[0] + w[1])).collect();
        let widths = edges.windows(2).map(|w| w[1] - w[0]).collect();
        Ok(Self {
            edges,
            centers,
            widths,
        })
    }

    /// Number of cells I.
    pub fn cell_count(&self) -> usize {
        self.centers.len()
    }

    /// Truncation radius R (the last edge).
    pub fn radius(&self) -> f64 {
        *self.edges.last().unwrap()
    }

    /// Cell edges ω_{1/2} ... ω_{I+1/2} (length I+1).
    pub fn edges(&self) -> &[f64] {
        &self.edges
    }

    /// Cell midpoints ω_i (length I).
    pub fn centers(&self) -> &[f64] {
        &self.centers
    }

    /// Cell widths Δω_i (length I).
    pub fn widths(&self) -> &[f64] {
        &self.widths
    }

    /// Cell containing the frequency `x`, or `None` when `x` lies outside
    /// [0, R]. Interior edges resolve to the upper cell (half-open cells);
    /// x = R maps to the last cell.
    pub fn cell_index_of(&self, x: f64) -> Option<usize> {
        if !x.is_finite() || x < 0.0 || x > self.radius() {
            return None;
        }
        if x == self.radius() {
            return Some(self.cell_count() - 1);
        }
        let k = self.edges.partition_point(|&e| e <= x);
        Some(k - 1)
    }

    /// Cell lookup for pair interaction frequencies (midpoint sums and
    /// differences). Identical to [`Grid::cell_index_of`] except that values
    /// within 1e-12 R of an edge are classified as that edge value: on
    /// uniform meshes interaction frequencies land exactly on edges, and the
    /// snap keeps the classification independent of how R / I rounds.
    pub fn interaction_cell(&self, x: f64) -> Option<usize> {
        if !x.is_finite() || x <= 0.0 {
            return None;
        }
        let tol = 1e-12 * self.radius();
        let k = self.edges.partition_point(|&e| e <= x);
        // edges[k] is the first edge strictly above x; x within tolerance
        // below it classifies as that edge value (values at or just above
        // an edge already land in the edge's cell on the fall-through path)
        if k <= self.cell_count() && (self.edges[k] - x) <= tol {
            if k == self.cell_count() {
                return Some(self.cell_count() - 1);
            }
            return Some(k);
        }
        if x > self.radius() + tol {
            return None;
        }
        if x >= self.radius() {
            return Some(self.cell_count() - 1);
        }
        Some(k - 1)
    }
}
