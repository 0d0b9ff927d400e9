//! Experiment harness and command-line front end for the graph coloring
//! game: seeded parallel Monte Carlo runs, color-count bracketing,
//! structural audits, graph files and transcripts.

pub mod audit;
pub mod config;
pub mod error;
pub mod graph_io;
pub mod harness;
pub mod players;

pub use config::ExperimentConfig;
pub use error::{CliError, CliResult};
