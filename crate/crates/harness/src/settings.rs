//! Optimizer configuration assembled from defaults, a `key=value` config file
//! and command-line overrides, in that order.

use std::fmt;
use std::str::FromStr;

use trilat_core::mopso::{CrowdingRefresh, MopsoConfig, MutationValue};
use trilat_core::swarm::{Encoding, Inertia, ObjectiveSet, PsoConfig, Scalarizer, UpdateRule};
use trilat_core::RangeBounds;

use crate::error::{HarnessError, Result};

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Optimizer {
    Sopso,
    MopsoBinary,
    MopsoContinuous,
}

impl Optimizer {
    pub fn name(self) -> &'static str {
        match self {
            Optimizer::Sopso => "sopso",
            Optimizer::MopsoBinary => "mopso-bin",
            Optimizer::MopsoContinuous => "mopso-cont",
        }
    }
}

impl fmt::Display for Optimizer {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

impl FromStr for Optimizer {
    type Err = HarnessError;

    fn from_str(s: &str) -> Result<Self> {
        match s {
            "sopso" => Ok(Optimizer::Sopso),
            "mopso-bin" => Ok(Optimizer::MopsoBinary),
            "mopso-cont" => Ok(Optimizer::MopsoContinuous),
            other => Err(HarnessError::Usage(format!("unknown optimizer {other:?}"))),
        }
    }
}

/// One `key=value` override.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Override {
    pub key: String,
    pub value: String,
}

impl FromStr for Override {
    type Err = HarnessError;

    fn from_str(s: &str) -> Result<Self> {
        let (key, value) =
            s.split_once('=').ok_or_else(|| HarnessError::Usage(format!("expected key=value, got {s:?}")))?;
        let (key, value) = (key.trim(), value.trim());
        if key.is_empty() {
            return Err(HarnessError::Usage(format!("empty key in {s:?}")));
        }
        Ok(Override { key: key.replace('-', "_"), value: value.to_string() })
    }
}

/// Parses config file text: one `key=value` per line, `#` starts a comment.
pub fn parse_config(text: &str) -> Result<Vec<Override>> {
    text.lines()
        .enumerate()
        .filter_map(|(i, line)| {
            let line = line.split('#').next().unwrap_or("").trim();
            (!line.is_empty()).then(|| {
                line.parse::<Override>().map_err(|e| HarnessError::Usage(format!("config line {}: {e}", i + 1)))
            })
        })
        .collect()
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub enum OptimizerConfig {
    Sopso { pso: PsoConfig, encoding: Encoding, objective: Scalarizer },
    Mopso { cfg: MopsoConfig, encoding: Encoding },
}

fn number<T: FromStr>(key: &str, value: &str) -> Result<T> {
    value.parse().map_err(|_| HarnessError::Usage(format!("{key}: cannot parse {value:?}")))
}

fn core<T, E: fmt::Display>(key: &str, r: std::result::Result<T, E>) -> Result<T> {
    r.map_err(|e| HarnessError::Usage(format!("{key}: {e}")))
}

impl OptimizerConfig {
    pub fn default_for(optimizer: Optimizer) -> Self {
        match optimizer {
            Optimizer::Sopso => OptimizerConfig::Sopso {
                pso: PsoConfig::sopso_default(),
                encoding: Encoding::Binary,
                objective: Scalarizer::MaxLocalized,
            },
            Optimizer::MopsoBinary => {
                OptimizerConfig::Mopso { cfg: MopsoConfig::binary_default(), encoding: Encoding::Binary }
            }
            Optimizer::MopsoContinuous => {
                OptimizerConfig::Mopso { cfg: MopsoConfig::continuous_default(), encoding: Encoding::Continuous }
            }
        }
    }

    pub fn pso(&self) -> &PsoConfig {
        match self {
            OptimizerConfig::Sopso { pso, .. } => pso,
            OptimizerConfig::Mopso { cfg, .. } => &cfg.pso,
        }
    }

    pub fn pso_mut(&mut self) -> &mut PsoConfig {
        match self {
            OptimizerConfig::Sopso { pso, .. } => pso,
            OptimizerConfig::Mopso { cfg, .. } => &mut cfg.pso,
        }
    }

    pub fn encoding(&self) -> Encoding {
        match self {
            OptimizerConfig::Sopso { encoding, .. } | OptimizerConfig::Mopso { encoding, .. } => *encoding,
        }
    }

    pub fn with_seed(mut self, seed: u64) -> Self {
        self.pso_mut().seed = seed;
        self
    }

    fn mopso_mut(&mut self, key: &str) -> Result<&mut MopsoConfig> {
        match self {
            OptimizerConfig::Mopso { cfg, .. } => Ok(cfg),
            OptimizerConfig::Sopso { .. } => Err(HarnessError::Usage(format!("{key} only applies to MOPSO"))),
        }
    }

    /// Applies one override. Unknown keys and keys the optimizer does not use
    /// are usage errors.
    pub fn set(&mut self, key: &str, value: &str) -> Result<()> {
        match key {
            "particles" => self.pso_mut().n_particles = number(key, value)?,
            "iterations" => self.pso_mut().n_iterations = number(key, value)?,
            "c1" => self.pso_mut().c1 = number(key, value)?,
            "c2" => self.pso_mut().c2 = number(key, value)?,
            "inertia" => self.pso_mut().inertia = core(key, value.parse::<Inertia>())?,
            "min_range" | "max_range" => {
                let v: f64 = number(key, value)?;
                let b = self.pso().bounds;
                let (min, max) = if key == "min_range" { (v, b.max) } else { (b.min, v) };
                self.pso_mut().bounds = core(key, RangeBounds::new(min, max))?;
            }
            "mode" | "update_rule" => self.pso_mut().update_rule = core(key, value.parse::<UpdateRule>())?,
            "archive_capacity" => self.mopso_mut(key)?.archive_capacity = number(key, value)?,
            "mutation_fraction" => {
                // Accept both 0.2 and 20%.
                let fraction = match value.strip_suffix('%') {
                    Some(pct) => number::<f64>(key, pct)? / 100.0,
                    None => number(key, value)?,
                };
                self.mopso_mut(key)?.mutation_fraction = fraction;
            }
            "mutation_value" => self.mopso_mut(key)?.mutation_value = core(key, value.parse::<MutationValue>())?,
            "epsilon" => self.mopso_mut(key)?.epsilon_equal = number(key, value)?,
            "objectives" => {
                self.mopso_mut(key)?.objectives = match value {
                    "time-power-localized" => ObjectiveSet::TimePowerLocalized,
                    "with-messages" => ObjectiveSet::WithMessages,
                    other => return Err(HarnessError::Usage(format!("{key}: unknown objective set {other:?}"))),
                }
            }
            "crowding_refresh" => {
                self.mopso_mut(key)?.crowding_refresh = match value {
                    "per-particle" => CrowdingRefresh::PerParticle,
                    "per-iteration" => CrowdingRefresh::PerIteration,
                    other => return Err(HarnessError::Usage(format!("{key}: unknown refresh mode {other:?}"))),
                }
            }
            "objective" | "encoding" => match self {
                OptimizerConfig::Sopso { objective, encoding, .. } => {
                    if key == "objective" {
                        *objective = core(key, value.parse::<Scalarizer>())?;
                    } else {
                        *encoding = match value {
                            "binary" => Encoding::Binary,
                            "continuous" => Encoding::Continuous,
                            other => return Err(HarnessError::Usage(format!("{key}: unknown encoding {other:?}"))),
                        };
                    }
                }
                OptimizerConfig::Mopso { .. } => {
                    return Err(HarnessError::Usage(format!("{key} only applies to sopso")));
                }
            },
            other => return Err(HarnessError::Usage(format!("unknown setting {other:?}"))),
        }
        Ok(())
    }

    pub fn apply(&mut self, overrides: &[Override]) -> Result<()> {
        for o in overrides {
            self.set(&o.key, &o.value)?;
        }
        self.validate()
    }

    pub fn validate(&self) -> Result<()> {
        match self {
            OptimizerConfig::Sopso { pso, .. } => pso.validate()?,
            OptimizerConfig::Mopso { cfg, .. } => cfg.validate()?,
        }
        Ok(())
    }
}
