//! Trilateration flooding simulator with swarm optimizers that pick each
//! node's transmit power.
//!
//! - [`topology`]: node layouts, generation and the text file format.
//! - [`radio`]: link budget between output power and transmission range.
//! - [`sim`]: the step-synchronous localization flood.
//! - [`swarm`]: particle encodings, update rules and single-objective PSO.
//! - [`mopso`]: multi-objective PSO with a crowding-distance leaders archive.

pub mod error;
pub mod mopso;
pub mod radio;
pub mod seed;
pub mod sim;
pub mod swarm;
pub mod topology;

pub use error::{Error, Result};
pub use radio::{PowerLevel, RadioParams, RangeAssignment, RangeBounds};
pub use sim::{SimOutcome, Simulator, StepRecord};
pub use topology::{Node, NodeId, NodeKind, Topology};
