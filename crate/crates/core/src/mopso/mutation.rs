use std::fmt;
use std::str::FromStr;

use rand::seq::index;
use rand::Rng;

use crate::error::Error;
use crate::radio::{PowerLevel, RangeBounds};
use crate::swarm::Particle;

/// Boundary a mutated coordinate is reset to.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Default)]
pub enum MutationValue {
    /// Minimum range (continuous) or the Min level (binary).
    #[default]
    Min,
    /// Maximum range (continuous) or the Max level (binary).
    Max,
}

impl MutationValue {
    pub fn level(self) -> PowerLevel {
        match self {
            MutationValue::Min => PowerLevel::Min,
            MutationValue::Max => PowerLevel::Max,
        }
    }

    pub fn range(self, bounds: &RangeBounds) -> f64 {
        match self {
            MutationValue::Min => bounds.min,
            MutationValue::Max => bounds.max,
        }
    }
}

impl fmt::Display for MutationValue {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            MutationValue::Min => "min",
            MutationValue::Max => "max",
        })
    }
}

impl FromStr for MutationValue {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self, Error> {
        match s {
            "min" => Ok(MutationValue::Min),
            "max" => Ok(MutationValue::Max),
            other => Err(Error::InvalidArgument(format!("mutation value must be min or max, got {other:?}"))),
        }
    }
}

/// Number of particles a fraction selects, rounded up.
pub fn mutation_count(fraction: f64, n_particles: usize) -> usize {
    // Absorb representation error so that e.g. 0.2 * 50 stays 10.
    let raw = fraction * n_particles as f64 - 1e-9;
    (raw.ceil().max(0.0) as usize).min(n_particles)
}

/// Resets one random node of `ceil(fraction * n)` distinct particles to the
/// boundary `value`. Returns the indices of the mutated particles, ascending.
pub fn boundary_mutation(
    swarm: &mut [Particle],
    fraction: f64,
    value: MutationValue,
    bounds: &RangeBounds,
    rng: &mut impl Rng,
) -> Vec<usize> {
    let count = mutation_count(fraction, swarm.len());
    let mut chosen = index::sample(rng, swarm.len(), count).into_vec();
    chosen.sort_unstable();
    for &i in &chosen {
        let n_nodes = swarm[i].position.n_nodes();
        if n_nodes == 0 {
            continue;
        }
        let node = rng.random_range(0..n_nodes);
        swarm[i].position.set_node(node, value.level(), value.range(bounds));
    }
    chosen
}
