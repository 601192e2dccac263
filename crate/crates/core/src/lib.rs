//! Finite-volume solvers for the truncated fully nonlinear
//! coagulation-fragmentation model of 3-wave kinetic theory.
//!
//! The model evolves a wave density N_ω on a truncated frequency domain
//! (0, R] under product-power interaction kernels (ωμ)^θ, (ωμ)^γ, (ωμ)^δ.
//! Pairs of waves merge (forward energy transfer) and waves split against a
//! stimulating partner (back-scatter). This crate provides:
//!
//! - frequency meshes, uniform and geometric ([`grid`]),
//! - truncated kernels and their tables ([`kernel`]),
//! - the five-term discrete collision operator ([`operator`]),
//! - explicit Euler stepping with a plain and an exactly
//!   energy-conserving weighted scheme ([`scheme`]),
//! - the reference initial profiles ([`initcond`]),
//! - moments, decay-slope fits and nested-grid convergence orders
//!   ([`diagnostics`]),
//! - independent brute-force reference implementations for validation
//!   ([`oracle`]).

pub mod diagnostics;
pub mod error;
pub mod grid;
pub mod initcond;
pub mod kernel;
pub mod operator;
pub mod oracle;
pub mod scheme;

pub use diagnostics::{
    decay_envelope_check, eoc, l1_distance, moment, DecayEnvelope, EocLevel, EocReport, EocValue,
    MomentSeries,
};
pub use error::{Error, Result};
pub use grid::Grid;
pub use initcond::{eval_test1, eval_test2, project, InitialCondition, TabulatedProfile};
pub use kernel::{kernel_table, KernelId, KernelSpec, KernelTable};
pub use operator::{
    build_index_sets, compute_fluxes, compute_fluxes_with, FluxTables, FluxTerms, IndexSets, State,
};
pub use oracle::{
    energy_weighted_magnitude, energy_weighted_total, oracle_energy_balance, oracle_flux,
    oracle_flux_naive,
};
pub use scheme::{weight_alpha, weight_beta, RunResult, SchemeKind, Snapshot, Stepper, TimeConfig};
