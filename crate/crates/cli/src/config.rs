//! Flat key-value run configuration, readable and writable as TOML.

use std::path::{Path, PathBuf};
use std::sync::Arc;

use anyhow::{bail, Context, Result};
use serde::{Deserialize, Serialize};
use wavekin_core::{Grid, InitialCondition, KernelSpec, SchemeKind, TabulatedProfile, TimeConfig};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum SchemeName {
    Plain,
    Weighted,
}

impl SchemeName {
    pub fn kind(self) -> SchemeKind {
        match self {
            SchemeName::Plain => SchemeKind::Plain,
            SchemeName::Weighted => SchemeKind::Weighted,
        }
    }

    pub fn parse(s: &str) -> Result<Self> {
        match s {
            "plain" => Ok(SchemeName::Plain),
            "weighted" => Ok(SchemeName::Weighted),
            other => bail!("scheme must be 'plain' or 'weighted', got '{other}'"),
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum GridKind {
    Uniform,
    Geometric,
}

impl GridKind {
    pub fn parse(s: &str) -> Result<Self> {
        match s {
            "uniform" => Ok(GridKind::Uniform),
            "geometric" => Ok(GridKind::Geometric),
            other => bail!("grid must be 'uniform' or 'geometric', got '{other}'"),
        }
    }
}

/// One simulation's full parameter set. Serializes to flat TOML; a file
/// written by the tool parses back to an equal configuration.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct SimulationConfig {
    pub scheme: SchemeName,
    pub theta: f64,
    pub gamma: f64,
    pub delta: f64,
    #[serde(rename = "R")]
    pub radius: f64,
    pub grid: GridKind,
    pub cells: usize,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub xi_min: Option<f64>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub xi_max: Option<f64>,
    pub dt: f64,
    pub t_end: f64,
    /// "test1", "test2" or "file:PATH".
    pub ic: String,
    pub snapshot_every: usize,
    #[serde(default)]
    pub strict_negativity: bool,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub out: Option<PathBuf>,
}

impl SimulationConfig {
    /// Field-by-field validation; error messages name the offending field.
    pub fn validate(&self) -> Result<()> {
        if !(self.radius.is_finite() && self.radius > 0.0) {
            bail!("R must be positive and finite, got {}", self.radius);
        }
        if self.cells == 0 {
            bail!("cells must be at least 1");
        }
        for (name, v) in [
            ("theta", self.theta),
            ("gamma", self.gamma),
            ("delta", self.delta),
        ] {
            if !(v.is_finite() && v >= 0.0) {
                bail!("{name} must be finite and non-negative, got {v}");
            }
        }
        if !(self.dt.is_finite() && self.dt > 0.0) {
            bail!("dt must be positive, got {}", self.dt);
        }
        if !(self.t_end.is_finite() && self.t_end >= 0.0) {
            bail!("tmax must be non-negative, got {}", self.t_end);
        }
        match self.grid {
            GridKind::Uniform => {
                if self.xi_min.is_some() || self.xi_max.is_some() {
                    bail!("xi_min/xi_max are only valid with grid = geometric");
                }
            }
            GridKind::Geometric => {
                let (lo, hi) = match (self.xi_min, self.xi_max) {
                    (Some(lo), Some(hi)) => (lo, hi),
                    _ => bail!("grid = geometric requires both xi_min and xi_max"),
                };
                if !(lo.is_finite() && hi.is_finite() && lo < hi) {
                    bail!("xi_min must be below xi_max, got [{lo}, {hi}]");
                }
                let implied = hi.exp();
                if (implied - self.radius).abs() > 1e-9 * self.radius.max(1.0) {
                    bail!(
                        "R = {} is inconsistent with xi_max: exp(xi_max) = {implied}",
                        self.radius
                    );
                }
            }
        }
        self.initial_condition().map(|_| ())?;
        Ok(())
    }

    pub fn build_grid(&self) -> Result<Arc<Grid>> {
        let grid = match self.grid {
            GridKind::Uniform => Grid::uniform(self.radius, self.cells),
            GridKind::Geometric => {
                Grid::geometric(self.xi_min.unwrap(), self.xi_max.unwrap(), self.cells)
            }
        }?;
        Ok(Arc::new(grid))
    }

    /// Kernel degrees bound to the grid's exact radius (for geometric grids
    /// exp(xi_max) may differ from the configured R in the last bit).
    pub fn kernel_spec(&self, grid: &Grid) -> Result<KernelSpec> {
        Ok(KernelSpec::new(
            self.theta,
            self.gamma,
            self.delta,
            grid.radius(),
        )?)
    }

    pub fn initial_condition(&self) -> Result<InitialCondition> {
        if self.ic == "test1" {
            Ok(InitialCondition::Test1)
        } else if self.ic == "test2" {
            Ok(InitialCondition::Test2)
        } else if let Some(path) = self.ic.strip_prefix("file:") {
            let profile = TabulatedProfile::load(Path::new(path))
                .with_context(|| format!("ic file '{path}'"))?;
            Ok(InitialCondition::Tabulated(profile))
        } else {
            bail!(
                "ic must be 'test1', 'test2' or 'file:PATH', got '{}'",
                self.ic
            )
        }
    }

    pub fn time(&self) -> Result<TimeConfig> {
        Ok(TimeConfig::new(self.dt, self.t_end, self.snapshot_every)?)
    }

    pub fn to_toml(&self) -> String {
        toml::to_string(self).expect("config serializes")
    }

    pub fn from_toml(text: &str) -> Result<Self> {
        Ok(toml::from_str(text)?)
    }

    pub fn load(path: &Path) -> Result<Self> {
        let text = std::fs::read_to_string(path)
            .with_context(|| format!("cannot read config {}", path.display()))?;
        Self::from_toml(&text)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::presets;

    #[test]
    fn every_preset_round_trips_and_validates() {
        for preset in presets::all() {
            preset.config.validate().expect(preset.name);
            let text = preset.config.to_toml();
            let back = SimulationConfig::from_toml(&text).expect(preset.name);
            assert_eq!(back, preset.config, "{}", preset.name);
        }
    }

    #[test]
    fn validation_names_fields() {
        let mut cfg = presets::by_name("test1-plain").unwrap().config;
        cfg.radius = -1.0;
        let msg = cfg.validate().unwrap_err().to_string();
        assert!(msg.contains('R'), "{msg}");

        let mut cfg = presets::by_name("test1-plain").unwrap().config;
        cfg.ic = "bogus".into();
        let msg = cfg.validate().unwrap_err().to_string();
        assert!(msg.contains("ic"), "{msg}");

        let mut cfg = presets::by_name("test1-plain").unwrap().config;
        cfg.xi_min = Some(0.0);
        let msg = cfg.validate().unwrap_err().to_string();
        assert!(msg.contains("xi_min"), "{msg}");

        let mut cfg = presets::by_name("eoc-test1-geometric").unwrap().config;
        cfg.radius = 3.0;
        let msg = cfg.validate().unwrap_err().to_string();
        assert!(msg.contains("xi_max"), "{msg}");
    }
}
