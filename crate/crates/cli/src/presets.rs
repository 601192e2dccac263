//! Named parameter sets for the reference experiments.

use crate::config::{GridKind, SchemeName, SimulationConfig};

pub struct Preset {
    pub name: &'static str,
    pub about: &'static str,
    pub config: SimulationConfig,
    /// Grid count for convergence studies; None for single runs.
    pub eoc_levels: Option<usize>,
}

fn base(
    scheme: SchemeName,
    degree: f64,
    radius: f64,
    cells: usize,
    t_end: f64,
    ic: &str,
) -> SimulationConfig {
    SimulationConfig {
        scheme,
        theta: degree,
        gamma: degree,
        delta: degree,
        radius,
        grid: GridKind::Uniform,
        cells,
        xi_min: None,
        xi_max: None,
        dt: 0.1,
        t_end,
        ic: ic.into(),
        snapshot_every: 100,
        strict_negativity: false,
        out: None,
    }
}

fn geometric(mut cfg: SimulationConfig, xi_min: f64, xi_max: f64) -> SimulationConfig {
    cfg.grid = GridKind::Geometric;
    cfg.xi_min = Some(xi_min);
    cfg.xi_max = Some(xi_max);
    cfg.radius = xi_max.exp();
    cfg
}

pub fn all() -> Vec<Preset> {
    let ln_floor = (1e-8f64).ln();
    vec![
        Preset {
            name: "test1-plain",
            about: "Gaussian pulse, plain scheme, degree 1 kernels, R=100, h=1, T=1000",
            config: base(SchemeName::Plain, 1.0, 100.0, 100, 1000.0, "test1"),
            eoc_levels: None,
        },
        Preset {
            name: "test1-weighted",
            about: "Gaussian pulse, energy-conserving scheme, degree 0.15 kernels, R=100, h=0.5, T=1000",
            config: base(SchemeName::Weighted, 0.15, 100.0, 200, 1000.0, "test1"),
            eoc_levels: None,
        },
        Preset {
            name: "test2",
            about: "Compact bump, plain scheme, degree 1 kernels, R=70, h=0.5, T=1000",
            config: base(SchemeName::Plain, 1.0, 70.0, 140, 1000.0, "test2"),
            eoc_levels: None,
        },
        Preset {
            name: "eoc-test1-uniform",
            about: "Convergence study: Gaussian pulse on uniform grids over [0,2], T=200",
            config: {
                let mut c = base(SchemeName::Plain, 1.0, 2.0, 60, 200.0, "test1");
                c.snapshot_every = 0;
                c
            },
            eoc_levels: Some(5),
        },
        Preset {
            name: "eoc-test1-geometric",
            about: "Convergence study: Gaussian pulse on geometric grids, xi in [ln 1e-8, ln 2], T=200",
            config: {
                let mut c = base(SchemeName::Plain, 1.0, 2.0, 60, 200.0, "test1");
                c.snapshot_every = 0;
                geometric(c, ln_floor, 2.0f64.ln())
            },
            eoc_levels: Some(5),
        },
        Preset {
            name: "eoc-test2-uniform",
            about: "Convergence study: compact bump on uniform grids over [0,10], T=50",
            config: {
                let mut c = base(SchemeName::Plain, 1.0, 10.0, 60, 50.0, "test2");
                c.snapshot_every = 0;
                c
            },
            eoc_levels: Some(5),
        },
        Preset {
            name: "eoc-test2-geometric",
            about: "Convergence study: compact bump on geometric grids, xi in [ln 1e-8, ln 10], T=50",
            config: {
                let mut c = base(SchemeName::Plain, 1.0, 10.0, 60, 50.0, "test2");
                c.snapshot_every = 0;
                geometric(c, ln_floor, 10.0f64.ln())
            },
            eoc_levels: Some(5),
        },
    ]
}

pub fn by_name(name: &str) -> Option<Preset> {
    all().into_iter().find(|p| p.name == name)
}
