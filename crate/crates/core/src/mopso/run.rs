//! The multi-objective driver.
//!
//! Each iteration every particle picks a leader from the archive by crowding
//! tournament, updates velocity and position toward it, a fraction of the
//! swarm is boundary-mutated, and the swarm is evaluated. Particle memory and
//! the archive are then updated in particle order. The inner per-particle
//! work runs in parallel against the archive as it stood at the start of the
//! iteration; the ordered application afterwards keeps results independent of
//! the thread count.

use rand::Rng;
use rayon::prelude::*;

use super::archive::{ArchiveEntry, LeadersArchive};
use super::dominance::Dominance;
use super::mutation::{boundary_mutation, MutationValue};
use crate::error::{Error, Result};
use crate::seed;
use crate::sim::Simulator;
use crate::swarm::particle::{evaluate, init_swarm, Encoding, Particle};
use crate::swarm::sopso::move_particle;
use crate::swarm::tags;
use crate::swarm::{Inertia, ObjectiveSet, PsoConfig};

/// When archive crowding distances are recomputed.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Default)]
pub enum CrowdingRefresh {
    /// After every particle's archive update.
    #[default]
    PerParticle,
    /// Once at the end of each iteration.
    PerIteration,
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct MopsoConfig {
    pub pso: PsoConfig,
    pub archive_capacity: usize,
    pub mutation_fraction: f64,
    pub mutation_value: MutationValue,
    /// Relative tolerance for treating power values as equal.
    pub epsilon_equal: f64,
    pub objectives: ObjectiveSet,
    pub crowding_refresh: CrowdingRefresh,
}

impl MopsoConfig {
    /// 100 particles x 200 iterations, 15% mutation.
    pub fn binary_default() -> Self {
        Self {
            pso: PsoConfig {
                n_particles: 100,
                n_iterations: 200,
                inertia: Inertia::Fixed(0.1),
                ..PsoConfig::sopso_default()
            },
            archive_capacity: 100,
            mutation_fraction: 0.15,
            mutation_value: MutationValue::Min,
            epsilon_equal: 1e-9,
            objectives: ObjectiveSet::TimePowerLocalized,
            crowding_refresh: CrowdingRefresh::PerParticle,
        }
    }

    /// 50 particles x 50 iterations, 20% mutation.
    pub fn continuous_default() -> Self {
        let mut cfg = Self::binary_default();
        cfg.pso.n_particles = 50;
        cfg.pso.n_iterations = 50;
        cfg.mutation_fraction = 0.2;
        cfg
    }

    pub fn default_for(encoding: Encoding) -> Self {
        match encoding {
            Encoding::Binary => Self::binary_default(),
            Encoding::Continuous => Self::continuous_default(),
        }
    }

    pub fn validate(&self) -> Result<()> {
        self.pso.validate()?;
        if !(0.0..=1.0).contains(&self.mutation_fraction) {
            return Err(Error::InvalidArgument(format!(
                "mutation fraction must be within [0, 1], got {}",
                self.mutation_fraction
            )));
        }
        if self.archive_capacity < 2 {
            return Err(Error::InvalidArgument("archive capacity must be at least 2".into()));
        }
        if !(self.epsilon_equal >= 0.0 && self.epsilon_equal.is_finite()) {
            return Err(Error::InvalidArgument("equality tolerance must be non-negative".into()));
        }
        Ok(())
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct MopsoOutcome {
    pub archive: Vec<ArchiveEntry>,
    /// Archive size after each iteration.
    pub size_trace: Vec<usize>,
}

/// Stepwise MOPSO state, for callers that want to inspect every iteration.
pub struct Mopso<'a> {
    sim: &'a Simulator,
    cfg: MopsoConfig,
    swarm: Vec<Particle>,
    archive: LeadersArchive,
    iteration: u64,
    size_trace: Vec<usize>,
}

impl<'a> Mopso<'a> {
    /// Initializes and evaluates the swarm, seeds the archive from it and
    /// computes crowding.
    pub fn new(sim: &'a Simulator, cfg: MopsoConfig, encoding: Encoding) -> Result<Self> {
        cfg.validate()?;
        let swarm = init_swarm(&cfg.pso, sim, encoding)?;
        let mut archive = LeadersArchive::new(cfg.archive_capacity, cfg.objectives, cfg.epsilon_equal);
        for p in &swarm {
            archive.insert(p.position.clone(), p.objectives);
        }
        archive.refresh_crowding();
        Ok(Self { sim, cfg, swarm, archive, iteration: 0, size_trace: Vec::new() })
    }

    pub fn swarm(&self) -> &[Particle] {
        &self.swarm
    }

    pub fn archive(&self) -> &LeadersArchive {
        &self.archive
    }

    pub fn iteration(&self) -> u64 {
        self.iteration
    }

    pub fn step(&mut self) -> Result<()> {
        let it = self.iteration;
        let cfg = self.cfg;
        let seed = cfg.pso.seed;
        let omega = cfg.pso.inertia.sample(&mut seed::stream(seed, &[tags::OMEGA, it]));

        let archive = &self.archive;
        self.swarm.par_iter_mut().enumerate().try_for_each(|(i, particle)| -> Result<()> {
            let mut rng = seed::stream(seed, &[tags::MOVE, it, i as u64]);
            let leader = archive.select_leader(&mut rng)?.position.clone();
            move_particle(particle, &leader, &cfg.pso, omega, &mut rng);
            Ok(())
        })?;

        let mut mutation_rng = seed::stream(seed, &[tags::MUTATE, it]);
        boundary_mutation(
            &mut self.swarm,
            cfg.mutation_fraction,
            cfg.mutation_value,
            &cfg.pso.bounds,
            &mut mutation_rng,
        );

        let sim = self.sim;
        self.swarm.par_iter_mut().try_for_each(|p| -> Result<()> {
            p.objectives = evaluate(&p.position, sim)?;
            Ok(())
        })?;

        for (i, p) in self.swarm.iter_mut().enumerate() {
            let replace = match self.archive.compare(&p.objectives, &p.best_objectives) {
                Dominance::ADominates => true,
                Dominance::NonDominated => seed::stream(seed, &[tags::MEMORY, it, i as u64]).random_bool(0.5),
                Dominance::BDominates | Dominance::Equal => false,
            };
            if replace {
                p.best_position = p.position.clone();
                p.best_objectives = p.objectives;
            }
            self.archive.insert(p.position.clone(), p.objectives);
            if cfg.crowding_refresh == CrowdingRefresh::PerParticle {
                self.archive.refresh_crowding();
            }
        }
        if cfg.crowding_refresh == CrowdingRefresh::PerIteration {
            self.archive.refresh_crowding();
        }

        self.iteration += 1;
        self.size_trace.push(self.archive.len());
        Ok(())
    }

    pub fn finish(self) -> MopsoOutcome {
        MopsoOutcome { archive: self.archive.into_entries(), size_trace: self.size_trace }
    }
}

pub fn mopso_run(sim: &Simulator, cfg: &MopsoConfig, encoding: Encoding) -> Result<MopsoOutcome> {
    let mut driver = Mopso::new(sim, *cfg, encoding)?;
    for _ in 0..cfg.pso.n_iterations {
        driver.step()?;
    }
    Ok(driver.finish())
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::radio::RadioParams;
    use crate::topology::Topology;

    fn small_sim(seed: u64) -> Simulator {
        let t = Topology::generate_random(30, 6, 250.0, seed).unwrap();
        Simulator::new(t, RadioParams::default()).unwrap()
    }

    fn quick(encoding: Encoding) -> MopsoConfig {
        let mut cfg = MopsoConfig::default_for(encoding);
        cfg.pso.n_particles = 20;
        cfg.pso.n_iterations = 15;
        cfg.pso.seed = 4;
        cfg
    }

    #[test]
    fn defaults() {
        let b = MopsoConfig::binary_default();
        assert_eq!((b.pso.n_particles, b.pso.n_iterations, b.mutation_fraction), (100, 200, 0.15));
        let c = MopsoConfig::continuous_default();
        assert_eq!((c.pso.n_particles, c.pso.n_iterations, c.mutation_fraction), (50, 50, 0.2));
        assert_eq!(c.pso.inertia, Inertia::Fixed(0.1));
        assert_eq!(c.archive_capacity, 100);
        let bad = MopsoConfig { mutation_fraction: 1.5, ..c };
        assert!(bad.validate().is_err());
        let bad = MopsoConfig { archive_capacity: 1, ..c };
        assert!(bad.validate().is_err());
    }

    #[test]
    fn archive_stays_clean_every_iteration() {
        let sim = small_sim(1);
        for encoding in [Encoding::Binary, Encoding::Continuous] {
            let cfg = quick(encoding);
            let mut driver = Mopso::new(&sim, cfg, encoding).unwrap();
            for _ in 0..cfg.pso.n_iterations {
                driver.step().unwrap();
                let a = driver.archive();
                assert!(a.len() <= cfg.archive_capacity);
                assert!(a.is_mutually_non_dominated());
                for e in a.entries() {
                    assert_eq!(evaluate(&e.position, &sim).unwrap(), e.objectives);
                }
                for p in driver.swarm() {
                    assert!(p.position.is_one_hot());
                }
            }
        }
    }

    #[test]
    fn crowding_refresh_modes_agree() {
        let sim = small_sim(2);
        let cfg = quick(Encoding::Continuous);
        let per_iter = MopsoConfig { crowding_refresh: CrowdingRefresh::PerIteration, ..cfg };
        let a = mopso_run(&sim, &cfg, Encoding::Continuous).unwrap();
        let b = mopso_run(&sim, &per_iter, Encoding::Continuous).unwrap();
        assert_eq!(a, b);
    }

    #[test]
    fn deterministic_per_seed() {
        let sim = small_sim(3);
        let cfg = quick(Encoding::Binary);
        let a = mopso_run(&sim, &cfg, Encoding::Binary).unwrap();
        let b = mopso_run(&sim, &cfg, Encoding::Binary).unwrap();
        assert_eq!(a, b);
        assert_eq!(a.size_trace.len(), cfg.pso.n_iterations);
    }

    #[test]
    fn pinned_bounds_run() {
        let sim = small_sim(6);
        let mut cfg = quick(Encoding::Continuous);
        cfg.pso.bounds = crate::radio::RangeBounds::new(64.0, 64.0).unwrap();
        for rule in [crate::swarm::UpdateRule::Standard, crate::swarm::UpdateRule::PaperLiteral] {
            cfg.pso.update_rule = rule;
            let out = mopso_run(&sim, &cfg, Encoding::Continuous).unwrap();
            assert_eq!(out.archive.len(), 1);
            assert!(out.archive[0].position.cells().iter().all(|&r| r == 64.0));
        }
    }

    #[test]
    fn all_anchor_topology_collapses_to_one_leader() {
        let t = Topology::generate_random(6, 6, 200.0, 5).unwrap();
        let sim = Simulator::new(t, RadioParams::default()).unwrap();
        for encoding in [Encoding::Binary, Encoding::Continuous] {
            let out = mopso_run(&sim, &quick(encoding), encoding).unwrap();
            assert_eq!(out.archive.len(), 1);
            assert_eq!(out.archive[0].objectives.time_steps, 1);
            assert_eq!(out.archive[0].objectives.localized_blind, 0);
        }
    }
}
