//! ZigBee link budget: output power (dBm) to transmission range and back.
//!
//! The range model is a log-distance path-loss budget:
//!
//! ```text
//! log10(R) = (P_o - F_m - P_r + 30 n - 32.44 - 10 n log10(f)) / (10 n)
//! ```
//!
//! with fade margin `F_m`, receiver sensitivity `P_r`, carrier frequency `f`
//! in MHz and path-loss exponent `n`. Power bookkeeping is per broadcast in
//! milliwatts.

use std::fmt;
use std::str::FromStr;

use crate::error::{Error, Result};

/// Free-space constant of the link budget, in dB.
const FREE_SPACE_DB: f64 = 32.44;

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct RadioParams {
    pub fade_margin_db: f64,
    pub receiver_sensitivity_dbm: f64,
    pub frequency_mhz: f64,
    pub path_loss_exponent: f64,
}

impl Default for RadioParams {
    /// CC2420-class values at channel 11.
    fn default() -> Self {
        Self { fade_margin_db: 8.0, receiver_sensitivity_dbm: -98.0, frequency_mhz: 2405.0, path_loss_exponent: 2.5 }
    }
}

impl RadioParams {
    pub fn validate(&self) -> Result<()> {
        if !(self.path_loss_exponent > 0.0 && self.path_loss_exponent.is_finite()) {
            return Err(Error::InvalidArgument(format!(
                "path loss exponent must be positive, got {}",
                self.path_loss_exponent
            )));
        }
        if !(self.frequency_mhz > 0.0 && self.frequency_mhz.is_finite()) {
            return Err(Error::InvalidArgument(format!("frequency must be positive, got {}", self.frequency_mhz)));
        }
        if !self.fade_margin_db.is_finite() || !self.receiver_sensitivity_dbm.is_finite() {
            return Err(Error::InvalidArgument("link budget terms must be finite".into()));
        }
        Ok(())
    }

    /// Terms of the budget that do not depend on output power or range.
    fn fixed_loss_db(&self) -> f64 {
        let n = self.path_loss_exponent;
        self.fade_margin_db + self.receiver_sensitivity_dbm - 30.0 * n
            + FREE_SPACE_DB
            + 10.0 * n * self.frequency_mhz.log10()
    }

    /// Transmission range in meters reached at `p_o_dbm` output power.
    pub fn range_from_dbm(&self, p_o_dbm: f64) -> f64 {
        let n = self.path_loss_exponent;
        10f64.powf((p_o_dbm - self.fixed_loss_db()) / (10.0 * n))
    }

    /// Output power in dBm needed to reach `range_m` meters.
    pub fn dbm_from_range(&self, range_m: f64) -> Result<f64> {
        if !(range_m > 0.0 && range_m.is_finite()) {
            return Err(Error::InvalidArgument(format!("range must be positive and finite, got {range_m}")));
        }
        Ok(10.0 * self.path_loss_exponent * range_m.log10() + self.fixed_loss_db())
    }

    /// Milliwatts drawn by one broadcast that reaches `range_m` meters.
    pub fn mw_from_range(&self, range_m: f64) -> Result<f64> {
        self.dbm_from_range(range_m).map(mw_from_dbm)
    }

    pub fn level_range(&self, level: PowerLevel) -> f64 {
        self.range_from_dbm(level.output_dbm())
    }
}

pub fn mw_from_dbm(p_dbm: f64) -> f64 {
    10f64.powf(p_dbm / 10.0)
}

/// The three discrete output levels of the binary encodings.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum PowerLevel {
    Min,
    Mid,
    Max,
}

impl PowerLevel {
    pub const ALL: [PowerLevel; 3] = [PowerLevel::Min, PowerLevel::Mid, PowerLevel::Max];

    pub fn output_dbm(self) -> f64 {
        match self {
            PowerLevel::Min => -3.0,
            PowerLevel::Mid => 1.0,
            PowerLevel::Max => 5.0,
        }
    }

    pub fn power_mw(self) -> f64 {
        mw_from_dbm(self.output_dbm())
    }

    /// Column of this level in a one-hot row (Min, Mid, Max).
    pub fn index(self) -> usize {
        self as usize
    }

    pub fn from_index(index: usize) -> Option<Self> {
        Self::ALL.get(index).copied()
    }
}

impl fmt::Display for PowerLevel {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            PowerLevel::Min => "min",
            PowerLevel::Mid => "mid",
            PowerLevel::Max => "max",
        })
    }
}

impl FromStr for PowerLevel {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s.to_ascii_lowercase().as_str() {
            "min" => Ok(PowerLevel::Min),
            "mid" | "med" => Ok(PowerLevel::Mid),
            "max" => Ok(PowerLevel::Max),
            other => Err(Error::InvalidArgument(format!("unknown power level {other:?}"))),
        }
    }
}

/// Inclusive bounds on continuous transmission ranges, in meters.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct RangeBounds {
    pub min: f64,
    pub max: f64,
}

impl RangeBounds {
    /// Lowest range the continuous encoding can represent at all.
    pub const REPRESENTABLE_MIN: f64 = 60.0;

    /// `min == max` is allowed and pins every range to one value.
    pub fn new(min: f64, max: f64) -> Result<Self> {
        if !(min > 0.0 && min <= max && max.is_finite()) {
            return Err(Error::InvalidArgument(format!("range bounds need 0 < min <= max, got [{min}, {max}]")));
        }
        Ok(Self { min, max })
    }

    pub fn contains(&self, r: f64) -> bool {
        (self.min..=self.max).contains(&r)
    }

    pub fn clamp(&self, r: f64) -> f64 {
        r.clamp(self.min, self.max)
    }

    /// Half the width of the interval; the velocity limit of continuous PSO.
    pub fn half_width(&self) -> f64 {
        (self.max - self.min) / 2.0
    }
}

impl Default for RangeBounds {
    fn default() -> Self {
        Self { min: 64.0, max: 132.0 }
    }
}

/// Per-node transmit configuration for one flood.
#[derive(Debug, Clone, PartialEq)]
pub enum RangeAssignment {
    Discrete(Vec<PowerLevel>),
    /// Transmission range in meters per node.
    Continuous(Vec<f64>),
}

impl RangeAssignment {
    pub fn uniform_level(n: usize, level: PowerLevel) -> Self {
        RangeAssignment::Discrete(vec![level; n])
    }

    pub fn uniform_range(n: usize, range_m: f64) -> Self {
        RangeAssignment::Continuous(vec![range_m; n])
    }

    /// Continuous assignment that must lie inside `bounds`.
    pub fn continuous_within(ranges: Vec<f64>, bounds: RangeBounds) -> Result<Self> {
        if let Some((i, r)) = ranges.iter().enumerate().find(|(_, r)| !bounds.contains(**r)) {
            return Err(Error::InvalidArgument(format!("node {i} range {r} outside [{}, {}]", bounds.min, bounds.max)));
        }
        Ok(RangeAssignment::Continuous(ranges))
    }

    pub fn len(&self) -> usize {
        match self {
            RangeAssignment::Discrete(v) => v.len(),
            RangeAssignment::Continuous(v) => v.len(),
        }
    }

    pub fn is_empty(&self) -> bool {
        self.len() == 0
    }

    /// `(range_m, power_mw)` for every node under `params`.
    pub fn tx_profile(&self, params: &RadioParams) -> Result<Vec<(f64, f64)>> {
        match self {
            RangeAssignment::Discrete(levels) => {
                Ok(levels.iter().map(|&l| (params.level_range(l), l.power_mw())).collect())
            }
            RangeAssignment::Continuous(ranges) => {
                ranges.iter().map(|&r| params.mw_from_range(r).map(|mw| (r, mw))).collect()
            }
        }
    }

    /// Human-readable value for node `i`: a level name or a range in meters.
    pub fn describe(&self, i: usize) -> String {
        match self {
            RangeAssignment::Discrete(v) => v[i].to_string(),
            RangeAssignment::Continuous(v) => v[i].to_string(),
        }
    }
}
