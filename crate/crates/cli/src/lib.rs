//! Command-line front end: algebra files, verification runs and table
//! emission. [`run`] executes one invocation and returns its exit code and
//! output, so tests can drive the CLI without a subprocess.

pub mod budget;
pub mod commands;
pub mod error;
pub mod format;
pub mod sweep;

pub use commands::{run, Outcome, RunConfig};
