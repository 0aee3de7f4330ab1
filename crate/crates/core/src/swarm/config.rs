use std::fmt;
use std::str::FromStr;

use rand::Rng;

use crate::error::{Error, Result};
use crate::radio::RangeBounds;

/// Acceleration coefficient used for both the cognitive and social terms.
pub const DEFAULT_ACCELERATION: f64 = 1.49445;

#[derive(Debug, Clone, Copy, PartialEq)]
pub enum Inertia {
    Fixed(f64),
    /// Random inertia weight, redrawn each iteration as `0.5 + U(0,1)/2`.
    Random,
}

impl Inertia {
    pub fn sample(self, rng: &mut impl Rng) -> f64 {
        match self {
            Inertia::Fixed(w) => w,
            Inertia::Random => 0.5 + rng.random::<f64>() / 2.0,
        }
    }
}

impl fmt::Display for Inertia {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Inertia::Fixed(w) => write!(f, "{w}"),
            Inertia::Random => f.write_str("random"),
        }
    }
}

impl FromStr for Inertia {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s {
            "random" | "riw" => Ok(Inertia::Random),
            _ => s
                .parse::<f64>()
                .map(Inertia::Fixed)
                .map_err(|_| Error::InvalidArgument(format!("inertia must be a number or `random`, got {s:?}"))),
        }
    }
}

/// How continuous particles clamp velocity and move.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Default)]
pub enum UpdateRule {
    /// Velocity clamped to `[-d, d]` with `d` half the range interval;
    /// position moves by `p + v`.
    #[default]
    Standard,
    /// Velocity snapped to `min_range` when below `d` and to `d` otherwise;
    /// position redrawn as `U(0, max_range) + v`.
    PaperLiteral,
}

impl FromStr for UpdateRule {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s {
            "standard" => Ok(UpdateRule::Standard),
            "paper-literal" | "literal" => Ok(UpdateRule::PaperLiteral),
            other => Err(Error::InvalidArgument(format!("unknown update mode {other:?}"))),
        }
    }
}

impl fmt::Display for UpdateRule {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            UpdateRule::Standard => "standard",
            UpdateRule::PaperLiteral => "paper-literal",
        })
    }
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct PsoConfig {
    pub n_particles: usize,
    pub n_iterations: usize,
    pub c1: f64,
    pub c2: f64,
    pub inertia: Inertia,
    pub bounds: RangeBounds,
    pub seed: u64,
    pub update_rule: UpdateRule,
}

impl PsoConfig {
    /// Single-objective defaults: 100 particles, 200 iterations, random
    /// inertia.
    pub fn sopso_default() -> Self {
        Self {
            n_particles: 100,
            n_iterations: 200,
            c1: DEFAULT_ACCELERATION,
            c2: DEFAULT_ACCELERATION,
            inertia: Inertia::Random,
            bounds: RangeBounds::default(),
            seed: 0,
            update_rule: UpdateRule::Standard,
        }
    }

    pub fn validate(&self) -> Result<()> {
        if self.n_particles == 0 {
            return Err(Error::InvalidArgument("need at least one particle".into()));
        }
        RangeBounds::new(self.bounds.min, self.bounds.max)?;
        if !(self.c1.is_finite() && self.c2.is_finite()) {
            return Err(Error::InvalidArgument("acceleration coefficients must be finite".into()));
        }
        if let Inertia::Fixed(w) = self.inertia {
            if !w.is_finite() {
                return Err(Error::InvalidArgument("inertia must be finite".into()));
            }
        }
        Ok(())
    }
}

impl Default for PsoConfig {
    fn default() -> Self {
        Self::sopso_default()
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::seed::stream;

    #[test]
    fn random_inertia_range() {
        let mut rng = stream(3, &[]);
        for _ in 0..1000 {
            let w = Inertia::Random.sample(&mut rng);
            assert!((0.5..1.0).contains(&w));
        }
        assert_eq!(Inertia::Fixed(0.1).sample(&mut rng), 0.1);
    }

    #[test]
    fn parse_inertia_and_rule() {
        assert_eq!("0.4".parse::<Inertia>().unwrap(), Inertia::Fixed(0.4));
        assert_eq!("random".parse::<Inertia>().unwrap(), Inertia::Random);
        assert!("fast".parse::<Inertia>().is_err());
        assert_eq!("paper-literal".parse::<UpdateRule>().unwrap(), UpdateRule::PaperLiteral);
        assert!("other".parse::<UpdateRule>().is_err());
    }

    #[test]
    fn config_validation() {
        assert!(PsoConfig::default().validate().is_ok());
        let c = PsoConfig { n_particles: 0, ..PsoConfig::default() };
        assert!(c.validate().is_err());
        let c = PsoConfig { bounds: RangeBounds { min: 132.0, max: 64.0 }, ..PsoConfig::default() };
        assert!(c.validate().is_err());
    }
}
