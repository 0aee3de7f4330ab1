//! Experiment harness for the trilateration optimizers: baseline runs,
//! seeded multi-trial experiments, one-at-a-time parameter sweeps, CSV
//! output and SVG scatter plots. The `trilat` binary is a thin wrapper over
//! [`cli::run`].

pub mod cli;
pub mod error;
pub mod experiment;
pub mod output;
pub mod plot;
pub mod settings;
pub mod sweep;

pub use error::{HarnessError, Result};
pub use experiment::{run_baseline, run_trials, Aggregate, SolutionRow, TrialRecord};
pub use settings::{Optimizer, OptimizerConfig, Override};
pub use sweep::{run_sweep, SweepParam};
