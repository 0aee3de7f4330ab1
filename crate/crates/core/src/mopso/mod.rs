//! Multi-objective PSO with a bounded leaders archive.

pub mod archive;
pub mod crowding;
pub mod dominance;
pub mod mutation;
pub mod run;

pub use archive::{ArchiveEntry, LeadersArchive};
pub use crowding::crowding_distances;
pub use dominance::{compare_vectors, dominance, Dominance};
pub use mutation::{boundary_mutation, mutation_count, MutationValue};
pub use run::{mopso_run, CrowdingRefresh, Mopso, MopsoConfig, MopsoOutcome};
