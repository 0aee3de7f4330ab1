//! One-at-a-time parameter study: every setting of one parameter is run as a
//! full set of trials while everything else stays at its configured value.

use std::fmt;
use std::str::FromStr;

use trilat_core::Simulator;

use crate::error::{HarnessError, Result};
use crate::experiment::{run_trials, Aggregate};
use crate::settings::OptimizerConfig;

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum SweepParam {
    /// Swarm size and iteration count varied together.
    ParticlesIterations,
    MaxRange,
    MutationFraction,
    MutationValue,
    Inertia,
}

impl SweepParam {
    pub const ALL: [SweepParam; 5] = [
        SweepParam::ParticlesIterations,
        SweepParam::MaxRange,
        SweepParam::MutationFraction,
        SweepParam::MutationValue,
        SweepParam::Inertia,
    ];

    pub fn name(self) -> &'static str {
        match self {
            SweepParam::ParticlesIterations => "particles-iterations",
            SweepParam::MaxRange => "max-range",
            SweepParam::MutationFraction => "mutation-fraction",
            SweepParam::MutationValue => "mutation-value",
            SweepParam::Inertia => "inertia",
        }
    }

    /// Setting values as they appear in the sweep CSV.
    pub fn grid(self) -> Vec<String> {
        match self {
            SweepParam::ParticlesIterations => {
                [5, 10, 20, 50, 100, 150, 200].iter().map(|n| format!("{n}x{n}")).collect()
            }
            SweepParam::MaxRange => [64, 75, 86, 97, 108, 119, 125, 132].iter().map(|r| r.to_string()).collect(),
            SweepParam::MutationFraction => (0..=30).step_by(5).map(|pct| format!("{pct}%")).collect(),
            SweepParam::MutationValue => vec!["min".into(), "max".into()],
            SweepParam::Inertia => (1..=10).map(|k| format!("{}", k as f64 / 10.0)).collect(),
        }
    }

    pub fn apply(self, config: &mut OptimizerConfig, value: &str) -> Result<()> {
        match self {
            SweepParam::ParticlesIterations => {
                let (p, i) =
                    value.split_once('x').ok_or_else(|| HarnessError::Usage(format!("expected PxI, got {value:?}")))?;
                config.set("particles", p)?;
                config.set("iterations", i)
            }
            SweepParam::MaxRange => config.set("max_range", value),
            SweepParam::MutationFraction => config.set("mutation_fraction", value),
            SweepParam::MutationValue => config.set("mutation_value", value),
            SweepParam::Inertia => config.set("inertia", value),
        }
    }
}

impl fmt::Display for SweepParam {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

impl FromStr for SweepParam {
    type Err = HarnessError;

    fn from_str(s: &str) -> Result<Self> {
        let normalized = s.replace('_', "-");
        Self::ALL
            .into_iter()
            .find(|p| p.name() == normalized || (normalized == "particles" && *p == SweepParam::ParticlesIterations))
            .ok_or_else(|| {
                let names: Vec<&str> = Self::ALL.iter().map(|p| p.name()).collect();
                HarnessError::Usage(format!("unknown sweep parameter {s:?}; expected one of {}", names.join(", ")))
            })
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct SweepPoint {
    pub value: String,
    pub aggregate: Aggregate,
}

/// Runs `trials` trials per grid value. All settings reuse the same trial
/// seeds so differences come from the parameter, not the draw.
pub fn run_sweep(
    sim: &Simulator,
    base: &OptimizerConfig,
    param: SweepParam,
    trials: usize,
    seed: u64,
) -> Result<Vec<SweepPoint>> {
    param
        .grid()
        .into_iter()
        .map(|value| {
            let mut config = *base;
            param.apply(&mut config, &value)?;
            config.validate()?;
            let records = run_trials(sim, &config, trials, seed)?;
            Ok(SweepPoint { value, aggregate: Aggregate::from_records(&records) })
        })
        .collect()
}
