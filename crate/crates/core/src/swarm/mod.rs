//! Particle representations, update rules and the single-objective driver.

pub mod config;
pub mod objective;
pub mod particle;
pub mod sopso;

pub use config::{Inertia, PsoConfig, UpdateRule, DEFAULT_ACCELERATION};
pub use objective::{ObjectiveSet, ObjectiveVector, Scalarizer};
pub use particle::{evaluate, init_swarm, update_position, update_velocity, Encoding, Particle, Position};
pub use sopso::{sopso_run, SopsoResult};

/// Purpose tags for seeded RNG streams.
pub(crate) mod tags {
    pub const INIT: u64 = 0;
    pub const MOVE: u64 = 1;
    pub const OMEGA: u64 = 2;
    pub const MUTATE: u64 = 3;
    pub const MEMORY: u64 = 4;
}
