//! Global-best single-objective PSO.

use rayon::prelude::*;

use super::config::PsoConfig;
use super::objective::{ObjectiveVector, Scalarizer};
use super::particle::{evaluate, init_swarm, update_position, update_velocity, Encoding, Particle, Position};
use super::tags;
use crate::error::Result;
use crate::radio::RangeAssignment;
use crate::seed;
use crate::sim::Simulator;

#[derive(Debug, Clone, PartialEq)]
pub struct SopsoResult {
    pub best_position: Position,
    pub best_assignment: RangeAssignment,
    pub best_objectives: ObjectiveVector,
    /// Scalar fitness of the best solution, in minimization form.
    pub best_fitness: f64,
    /// Best fitness after each iteration.
    pub trace: Vec<f64>,
}

/// Runs SOPSO and returns the best solution ever seen.
///
/// Velocities and positions update in parallel from per-particle streams;
/// personal and global bests are refreshed afterwards in particle order, so the
/// outcome depends only on `(cfg, sim, encoding, objective)`.
pub fn sopso_run(sim: &Simulator, cfg: &PsoConfig, encoding: Encoding, objective: Scalarizer) -> Result<SopsoResult> {
    let mut swarm = init_swarm(cfg, sim, encoding)?;
    let fitness = |o: &ObjectiveVector| objective.fitness(o);

    let mut best = 0;
    for (i, p) in swarm.iter().enumerate() {
        if fitness(&p.best_objectives) < fitness(&swarm[best].best_objectives) {
            best = i;
        }
    }
    let mut best_position = swarm[best].best_position.clone();
    let mut best_objectives = swarm[best].best_objectives;
    let mut trace = Vec::with_capacity(cfg.n_iterations);

    for it in 0..cfg.n_iterations as u64 {
        let omega = cfg.inertia.sample(&mut seed::stream(cfg.seed, &[tags::OMEGA, it]));
        let guide = &best_position;
        swarm.par_iter_mut().enumerate().try_for_each(|(i, particle)| -> Result<()> {
            let mut rng = seed::stream(cfg.seed, &[tags::MOVE, it, i as u64]);
            move_particle(particle, guide, cfg, omega, &mut rng);
            particle.objectives = evaluate(&particle.position, sim)?;
            Ok(())
        })?;

        for particle in &mut swarm {
            if fitness(&particle.objectives) < fitness(&particle.best_objectives) {
                particle.best_position = particle.position.clone();
                particle.best_objectives = particle.objectives;
            }
            if fitness(&particle.best_objectives) < fitness(&best_objectives) {
                best_position = particle.best_position.clone();
                best_objectives = particle.best_objectives;
            }
        }
        trace.push(fitness(&best_objectives));
    }

    Ok(SopsoResult {
        best_assignment: best_position.decode()?,
        best_position,
        best_fitness: fitness(&best_objectives),
        best_objectives,
        trace,
    })
}

/// Velocity then position update toward `guide`.
pub(crate) fn move_particle(
    particle: &mut Particle,
    guide: &Position,
    cfg: &PsoConfig,
    omega: f64,
    rng: &mut impl rand::Rng,
) {
    particle.velocity = update_velocity(particle, guide, cfg, omega, rng);
    particle.position = update_position(&particle.position, &particle.velocity, cfg, rng);
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::radio::{PowerLevel, RadioParams};
    use crate::swarm::config::Inertia;
    use crate::topology::{Node, NodeId, NodeKind, Topology};

    /// Three anchors 110 m from one blind node: it localizes only when every
    /// anchor transmits at Max.
    fn toy() -> Simulator {
        use NodeKind::*;
        let pts = [(100.0, 10.0, Anchor), (4.737, 175.0, Anchor), (195.263, 175.0, Anchor), (100.0, 120.0, Blind)];
        let nodes = pts.iter().enumerate().map(|(i, &(x, y, kind))| Node { id: NodeId(i), x, y, kind }).collect();
        Simulator::new(Topology::new(200.0, nodes).unwrap(), RadioParams::default()).unwrap()
    }

    #[test]
    fn toy_matches_exhaustive_search() {
        let sim = toy();
        let mut exhaustive_best = f64::INFINITY;
        for code in 0..81usize {
            let levels: Vec<PowerLevel> = (0..4).map(|k| PowerLevel::ALL[(code / 3usize.pow(k)) % 3]).collect();
            let out = sim.simulate(&RangeAssignment::Discrete(levels)).unwrap();
            exhaustive_best = exhaustive_best.min(-(out.localized_blind as f64));
        }
        assert_eq!(exhaustive_best, -1.0);
        let cfg = PsoConfig { n_particles: 10, n_iterations: 20, seed: 3, ..PsoConfig::sopso_default() };
        let res = sopso_run(&sim, &cfg, Encoding::Binary, Scalarizer::MaxLocalized).unwrap();
        assert_eq!(res.best_fitness, exhaustive_best);
        assert_eq!(res.best_objectives.localized_blind, 1);
    }

    #[test]
    fn stationary_swarm_has_constant_trace() {
        let sim = toy();
        let cfg =
            PsoConfig { n_particles: 1, n_iterations: 15, inertia: Inertia::Fixed(0.0), ..PsoConfig::sopso_default() };
        let res = sopso_run(&sim, &cfg, Encoding::Continuous, Scalarizer::MinPower).unwrap();
        assert!(res.trace.windows(2).all(|w| w[0] == w[1]), "{:?}", res.trace);
    }

    #[test]
    fn trace_is_monotone_and_bounded_by_all_max() {
        let t = Topology::generate_random(60, 12, 300.0, 8).unwrap();
        let sim = Simulator::new(t, RadioParams::default()).unwrap();
        let all_max = sim.simulate(&RangeAssignment::uniform_level(60, PowerLevel::Max)).unwrap();
        let cfg = PsoConfig { n_particles: 15, n_iterations: 25, seed: 11, ..PsoConfig::sopso_default() };
        let res = sopso_run(&sim, &cfg, Encoding::Binary, Scalarizer::MaxLocalized).unwrap();
        assert!(res.trace.windows(2).all(|w| w[1] <= w[0]));
        assert!(res.best_objectives.localized_blind <= all_max.localized_blind);
        assert_eq!(res.trace.len(), 25);
        let again = sopso_run(&sim, &cfg, Encoding::Binary, Scalarizer::MaxLocalized).unwrap();
        assert_eq!(res, again);
    }
}
