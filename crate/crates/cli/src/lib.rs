//! Library surface of the batch front end, shared by the binary and the
//! acceptance suite.

pub mod config;
pub mod output;
pub mod presets;
pub mod runner;
