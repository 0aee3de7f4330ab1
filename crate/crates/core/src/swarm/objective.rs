use std::fmt;
use std::str::FromStr;

use crate::error::Error;
use crate::sim::SimOutcome;

/// The metrics one flood is judged by.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct ObjectiveVector {
    pub time_steps: u32,
    pub power_mw: f64,
    pub localized_blind: u32,
    pub messages: u32,
}

impl ObjectiveVector {
    pub fn from_outcome(out: &SimOutcome) -> Self {
        Self {
            time_steps: out.steps,
            power_mw: out.total_power_mw,
            localized_blind: out.localized_blind,
            messages: out.messages,
        }
    }

    /// Components in minimization form; only the first `set.arity()` are used.
    pub fn minimized(&self, set: ObjectiveSet) -> [f64; 4] {
        let base = [self.time_steps as f64, self.power_mw, -(self.localized_blind as f64)];
        match set {
            ObjectiveSet::TimePowerLocalized => [base[0], base[1], base[2], 0.0],
            ObjectiveSet::WithMessages => [base[0], base[1], base[2], self.messages as f64],
        }
    }
}

/// Which objectives take part in Pareto dominance.
///
/// Messages always equal anchors plus localized blind nodes, so they are
/// redundant with localizability and left out unless asked for.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Default)]
pub enum ObjectiveSet {
    #[default]
    TimePowerLocalized,
    WithMessages,
}

impl ObjectiveSet {
    pub fn arity(self) -> usize {
        match self {
            ObjectiveSet::TimePowerLocalized => 3,
            ObjectiveSet::WithMessages => 4,
        }
    }

    /// Whether component `k` is integer valued and must compare exactly.
    pub fn is_integral(self, k: usize) -> bool {
        k != 1
    }
}

/// Single objective for SOPSO, expressed as a value to minimize.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Default)]
pub enum Scalarizer {
    #[default]
    MaxLocalized,
    MinPower,
    MinTime,
    MinMessages,
}

impl Scalarizer {
    pub fn fitness(self, obj: &ObjectiveVector) -> f64 {
        match self {
            Scalarizer::MaxLocalized => -(obj.localized_blind as f64),
            Scalarizer::MinPower => obj.power_mw,
            Scalarizer::MinTime => obj.time_steps as f64,
            Scalarizer::MinMessages => obj.messages as f64,
        }
    }
}

impl fmt::Display for Scalarizer {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Scalarizer::MaxLocalized => "max-localized",
            Scalarizer::MinPower => "min-power",
            Scalarizer::MinTime => "min-time",
            Scalarizer::MinMessages => "min-messages",
        })
    }
}

impl FromStr for Scalarizer {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self, Error> {
        match s {
            "max-localized" | "localized" => Ok(Scalarizer::MaxLocalized),
            "min-power" | "power" => Ok(Scalarizer::MinPower),
            "min-time" | "time" => Ok(Scalarizer::MinTime),
            "min-messages" | "messages" => Ok(Scalarizer::MinMessages),
            other => Err(Error::InvalidArgument(format!("unknown objective {other:?}"))),
        }
    }
}
