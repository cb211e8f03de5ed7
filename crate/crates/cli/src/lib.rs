//! Spec-file parsing and command implementations behind the `driftwalk` binary.

pub mod commands;
pub mod spec_file;

pub use commands::{CliError, Output};
pub use spec_file::{EnvironmentSpec, SpecError};
