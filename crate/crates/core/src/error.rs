use thiserror::Error;

/// Errors produced by grid construction, operator evaluation and time stepping.
#[derive(Debug, Error)]
pub enum Error {
    /// A structural parameter (radius, cell count, time step, ...) is unusable.
    #[error("invalid configuration: {0}")]
    InvalidConfiguration(String),

    /// Input data (initial-condition tables, state vectors) failed validation.
    #[error("invalid input: {0}")]
    InvalidInput(String),

    /// A flux term evaluated to a non-finite value.
    #[error("numerical overflow in term {term} at cell {cell}")]
    NumericalOverflow { term: &'static str, cell: usize },

    /// Time integration produced a non-finite state.
    #[error("numerical blow-up at step {step}")]
    NumericalBlowUp {
        step: usize,
        #[source]
        source: Box<Error>,
    },

    /// Strict negativity mode tripped: an entry fell below -1e-12 * max(N).
    #[error("negative density at step {step}: N[{cell}] = {value:e}")]
    NegativityExceeded {
        step: usize,
        cell: usize,
        value: f64,
    },

    /// Two states passed to a cross-grid comparison are not nested refinements.
    #[error("invalid comparison: {0}")]
    InvalidComparison(String),
}

pub type Result<T> = std::result::Result<T, Error>;
