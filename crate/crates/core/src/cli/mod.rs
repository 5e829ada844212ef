//! Reproducible runs with machine-readable output. Each command turns a
//! [`RunConfig`] into one or more [`Artifact`]s that embed the resolved
//! configuration under a schema version header.

mod commands;
mod config;
mod output;

pub use commands::{
    cmd_chain, cmd_distribution, cmd_enumerate, cmd_sweep, cmd_wigner, fidelity_thresholds, run_command,
    squeezing_bounds, Command,
};
pub use config::{OutputFormat, RunConfig, WignerSource, KEYS};
pub use output::{write_artifacts, Artifact, SCHEMA_VERSION};
