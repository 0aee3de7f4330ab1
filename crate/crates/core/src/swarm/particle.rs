//! Particle encodings and the per-element update rules.
//!
//! Binary particles carry an `N x 3` one-hot matrix (columns Min, Mid, Max)
//! and a velocity matrix of Bernoulli probabilities in `[0, 1]`. Continuous
//! particles carry one transmission range per node.

use rand::Rng;
use rayon::prelude::*;

use super::config::{PsoConfig, UpdateRule};
use super::objective::ObjectiveVector;
use super::tags;
use crate::error::{Error, Result};
use crate::radio::{PowerLevel, RangeAssignment};
use crate::seed;
use crate::sim::Simulator;

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Encoding {
    Binary,
    Continuous,
}

impl Encoding {
    /// Cells per node row.
    pub fn width(self) -> usize {
        match self {
            Encoding::Binary => 3,
            Encoding::Continuous => 1,
        }
    }
}

/// Row-major position matrix. Binary cells hold exactly `0.0` or `1.0`.
#[derive(Debug, Clone, PartialEq)]
pub struct Position {
    encoding: Encoding,
    cells: Vec<f64>,
}

impl Position {
    pub fn from_levels(levels: &[PowerLevel]) -> Self {
        let mut cells = vec![0.0; levels.len() * 3];
        for (i, l) in levels.iter().enumerate() {
            cells[i * 3 + l.index()] = 1.0;
        }
        Self { encoding: Encoding::Binary, cells }
    }

    /// Binary position from raw rows; rows need not be one-hot.
    pub fn from_rows(rows: &[[u8; 3]]) -> Self {
        let cells = rows.iter().flatten().map(|&b| f64::from(b)).collect();
        Self { encoding: Encoding::Binary, cells }
    }

    pub fn from_ranges(ranges: Vec<f64>) -> Self {
        Self { encoding: Encoding::Continuous, cells: ranges }
    }

    pub fn from_assignment(assignment: &RangeAssignment) -> Self {
        match assignment {
            RangeAssignment::Discrete(levels) => Self::from_levels(levels),
            RangeAssignment::Continuous(r) => Self::from_ranges(r.clone()),
        }
    }

    pub fn encoding(&self) -> Encoding {
        self.encoding
    }

    pub fn cells(&self) -> &[f64] {
        &self.cells
    }

    pub fn n_nodes(&self) -> usize {
        self.cells.len() / self.encoding.width()
    }

    pub fn row(&self, node: usize) -> &[f64] {
        let w = self.encoding.width();
        &self.cells[node * w..(node + 1) * w]
    }

    /// Overwrites one node: continuous rows take `range_m`, binary rows take
    /// the one-hot for `level`.
    pub fn set_node(&mut self, node: usize, level: PowerLevel, range_m: f64) {
        match self.encoding {
            Encoding::Continuous => self.cells[node] = range_m,
            Encoding::Binary => {
                let row = &mut self.cells[node * 3..node * 3 + 3];
                row.fill(0.0);
                row[level.index()] = 1.0;
            }
        }
    }

    pub fn is_one_hot(&self) -> bool {
        self.encoding == Encoding::Continuous
            || self.cells.chunks(3).all(|r| r.iter().sum::<f64>() == 1.0 && r.iter().all(|&c| c == 0.0 || c == 1.0))
    }

    pub fn decode(&self) -> Result<RangeAssignment> {
        match self.encoding {
            Encoding::Continuous => Ok(RangeAssignment::Continuous(self.cells.clone())),
            Encoding::Binary => self
                .cells
                .chunks(3)
                .enumerate()
                .map(|(i, row)| match row {
                    [1.0, 0.0, 0.0] => Ok(PowerLevel::Min),
                    [0.0, 1.0, 0.0] => Ok(PowerLevel::Mid),
                    [0.0, 0.0, 1.0] => Ok(PowerLevel::Max),
                    other => Err(Error::Internal(format!("row {i} is not one-hot: {other:?}"))),
                })
                .collect::<Result<Vec<_>>>()
                .map(RangeAssignment::Discrete),
        }
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct Particle {
    pub position: Position,
    pub velocity: Vec<f64>,
    pub objectives: ObjectiveVector,
    pub best_position: Position,
    pub best_objectives: ObjectiveVector,
}

impl Particle {
    pub fn new(position: Position, velocity: Vec<f64>, objectives: ObjectiveVector) -> Self {
        Self { best_position: position.clone(), best_objectives: objectives, position, velocity, objectives }
    }
}

/// One element of the velocity rule before any clamping.
#[allow(clippy::too_many_arguments)]
pub fn raw_velocity(v: f64, p: f64, p_best: f64, guide: f64, omega: f64, c1: f64, c2: f64, r1: f64, r2: f64) -> f64 {
    omega * v + c1 * r1 * (p_best - p) + c2 * r2 * (guide - p)
}

/// Applies the velocity bound of `encoding` under `cfg`.
pub fn clamp_velocity(v: f64, encoding: Encoding, cfg: &PsoConfig) -> f64 {
    match encoding {
        Encoding::Binary => v.clamp(0.0, 1.0),
        Encoding::Continuous => {
            let delta = cfg.bounds.half_width();
            match cfg.update_rule {
                UpdateRule::Standard => v.clamp(-delta, delta),
                UpdateRule::PaperLiteral => {
                    if v < delta {
                        cfg.bounds.min
                    } else {
                        delta
                    }
                }
            }
        }
    }
}

fn initial_velocity(encoding: Encoding, cfg: &PsoConfig, rng: &mut impl Rng) -> f64 {
    match encoding {
        Encoding::Binary => rng.random::<f64>(),
        Encoding::Continuous => {
            let delta = cfg.bounds.half_width();
            let (lo, hi) = match cfg.update_rule {
                UpdateRule::Standard => (-delta, delta),
                UpdateRule::PaperLiteral => (cfg.bounds.min.min(delta), cfg.bounds.min.max(delta)),
            };
            rng.random_range(lo..=hi)
        }
    }
}

/// A fresh random position and velocity for `n_nodes` nodes.
pub fn random_particle_state(
    n_nodes: usize,
    encoding: Encoding,
    cfg: &PsoConfig,
    rng: &mut impl Rng,
) -> (Position, Vec<f64>) {
    let position = match encoding {
        Encoding::Binary => {
            let levels: Vec<PowerLevel> = (0..n_nodes).map(|_| PowerLevel::ALL[rng.random_range(0..3)]).collect();
            Position::from_levels(&levels)
        }
        Encoding::Continuous => {
            Position::from_ranges((0..n_nodes).map(|_| rng.random_range(cfg.bounds.min..=cfg.bounds.max)).collect())
        }
    };
    let velocity = (0..n_nodes * encoding.width()).map(|_| initial_velocity(encoding, cfg, rng)).collect();
    (position, velocity)
}

/// New clamped velocity with `r1`, `r2` drawn fresh per element.
pub fn update_velocity(
    particle: &Particle,
    guide: &Position,
    cfg: &PsoConfig,
    omega: f64,
    rng: &mut impl Rng,
) -> Vec<f64> {
    let encoding = particle.position.encoding();
    particle
        .velocity
        .iter()
        .zip(particle.position.cells())
        .zip(particle.best_position.cells())
        .zip(guide.cells())
        .map(|(((&v, &p), &pb), &g)| {
            let r1: f64 = rng.random();
            let r2: f64 = rng.random();
            let raw = raw_velocity(v, p, pb, g, omega, cfg.c1, cfg.c2, r1, r2);
            clamp_velocity(raw, encoding, cfg)
        })
        .collect()
}

/// Moves a position by `velocity`.
///
/// Binary rows sample each cell as a Bernoulli trial with the cell's velocity
/// as probability, then repair to one-hot: with several bits set the one with
/// the highest velocity survives, with none set the highest-velocity column
/// is switched on. Ties go to the lower power level.
pub fn update_position(position: &Position, velocity: &[f64], cfg: &PsoConfig, rng: &mut impl Rng) -> Position {
    match position.encoding() {
        Encoding::Continuous => {
            let cells = position
                .cells()
                .iter()
                .zip(velocity)
                .map(|(&p, &v)| {
                    let moved = match cfg.update_rule {
                        UpdateRule::Standard => p + v,
                        UpdateRule::PaperLiteral => rng.random_range(0.0..cfg.bounds.max) + v,
                    };
                    cfg.bounds.clamp(moved)
                })
                .collect();
            Position::from_ranges(cells)
        }
        Encoding::Binary => {
            let mut cells = Vec::with_capacity(position.cells().len());
            for row_v in velocity.chunks(3) {
                let bits: [bool; 3] = std::array::from_fn(|k| rng.random::<f64>() < row_v[k]);
                let candidates: Vec<usize> =
                    if bits.iter().any(|&b| b) { (0..3).filter(|&k| bits[k]).collect() } else { (0..3).collect() };
                let keep = strongest(row_v, &candidates);
                cells.extend((0..3).map(|k| if k == keep { 1.0 } else { 0.0 }));
            }
            Position { encoding: Encoding::Binary, cells }
        }
    }
}

/// Highest velocity among `candidates`; the first (lowest level) wins ties.
fn strongest(row_v: &[f64], candidates: &[usize]) -> usize {
    let mut best = candidates[0];
    for &k in &candidates[1..] {
        if row_v[k] > row_v[best] {
            best = k;
        }
    }
    best
}

pub fn evaluate(position: &Position, sim: &Simulator) -> Result<ObjectiveVector> {
    let assignment = position.decode()?;
    sim.simulate(&assignment).map(|out| ObjectiveVector::from_outcome(&out))
}

/// Random, evaluated swarm. Particle `i` draws from its own seeded stream.
pub fn init_swarm(cfg: &PsoConfig, sim: &Simulator, encoding: Encoding) -> Result<Vec<Particle>> {
    cfg.validate()?;
    let n_nodes = sim.topology().len();
    (0..cfg.n_particles)
        .into_par_iter()
        .map(|i| {
            let mut rng = seed::stream(cfg.seed, &[tags::INIT, i as u64]);
            let (position, velocity) = random_particle_state(n_nodes, encoding, cfg, &mut rng);
            let objectives = evaluate(&position, sim)?;
            Ok(Particle::new(position, velocity, objectives))
        })
        .collect()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::radio::{RadioParams, RangeBounds};
    use crate::seed::stream;
    use crate::swarm::config::Inertia;
    use crate::topology::Topology;

    fn cfg() -> PsoConfig {
        PsoConfig { inertia: Inertia::Fixed(0.1), ..PsoConfig::sopso_default() }
    }

    #[test]
    fn velocity_substitution() {
        let c = crate::swarm::config::DEFAULT_ACCELERATION;
        let v = raw_velocity(0.0, 100.0, 110.0, 120.0, 0.1, c, c, 0.5, 0.5);
        assert!((v - 22.417).abs() < 0.001, "{v}");
        assert_eq!(raw_velocity(0.0, 5.0, 5.0, 5.0, 0.7, c, c, 0.3, 0.9), 0.0);
    }

    #[test]
    fn velocity_clamps() {
        let c = cfg();
        assert_eq!(clamp_velocity(1.7, Encoding::Binary, &c), 1.0);
        assert_eq!(clamp_velocity(-0.2, Encoding::Binary, &c), 0.0);
        assert_eq!(clamp_velocity(50.0, Encoding::Continuous, &c), 34.0);
        assert_eq!(clamp_velocity(-50.0, Encoding::Continuous, &c), -34.0);
        assert_eq!(clamp_velocity(10.0, Encoding::Continuous, &c), 10.0);
        let lit = PsoConfig { update_rule: UpdateRule::PaperLiteral, ..c };
        assert_eq!(clamp_velocity(10.0, Encoding::Continuous, &lit), 64.0);
        assert_eq!(clamp_velocity(34.0, Encoding::Continuous, &lit), 34.0);
        assert_eq!(clamp_velocity(90.0, Encoding::Continuous, &lit), 34.0);
    }

    #[test]
    fn continuous_position_clamps() {
        let c = cfg();
        let mut rng = stream(1, &[]);
        let p = Position::from_ranges(vec![120.0, 70.0, 100.0]);
        let moved = update_position(&p, &[30.0, -20.0, 5.0], &c, &mut rng);
        assert_eq!(moved.cells(), &[132.0, 64.0, 105.0]);
    }

    #[test]
    fn paper_literal_position_redraws() {
        let c = PsoConfig { update_rule: UpdateRule::PaperLiteral, ..cfg() };
        let mut rng = stream(2, &[]);
        let p = Position::from_ranges(vec![100.0; 200]);
        let moved = update_position(&p, &vec![34.0; 200], &c, &mut rng);
        assert!(moved.cells().iter().all(|&r| (64.0..=132.0).contains(&r)));
        assert!(moved.cells().iter().any(|&r| r != 100.0));
    }

    #[test]
    fn certain_binary_row_is_kept() {
        let mut rng = stream(3, &[]);
        let p = Position::from_rows(&[[1, 0, 0]]);
        for _ in 0..100 {
            let moved = update_position(&p, &[0.0, 1.0, 0.0], &cfg(), &mut rng);
            assert_eq!(moved.cells(), &[0.0, 1.0, 0.0]);
        }
    }

    #[test]
    fn binary_repair_rules() {
        let mut rng = stream(4, &[]);
        let p = Position::from_rows(&[[1, 0, 0]]);
        // Every bit set with equal velocity.
        let all = update_position(&p, &[1.0, 1.0, 1.0], &cfg(), &mut rng);
        assert_eq!(all.cells(), &[1.0, 0.0, 0.0], "ties resolve to the lowest level");
        // Nothing set: highest velocity column.
        let none = update_position(&p, &[0.0, 0.0, 0.0], &cfg(), &mut rng);
        assert_eq!(none.cells(), &[1.0, 0.0, 0.0]);
        let mid = strongest(&[0.2, 0.6, 0.1], &[0, 1, 2]);
        assert_eq!(mid, 1);
        assert_eq!(strongest(&[0.2, 0.6, 0.9], &[0, 1]), 1);
    }

    #[test]
    fn decode_tables() {
        let p = Position::from_rows(&[[0, 1, 0], [1, 0, 0], [0, 0, 1]]);
        assert_eq!(
            p.decode().unwrap(),
            RangeAssignment::Discrete(vec![PowerLevel::Mid, PowerLevel::Min, PowerLevel::Max])
        );
        let all_max = Position::from_rows(&[[0, 0, 1]; 4]);
        assert_eq!(all_max.decode().unwrap(), RangeAssignment::uniform_level(4, PowerLevel::Max));
        let c = Position::from_ranges(vec![83.4, 63.2, 91.0]);
        assert_eq!(c.decode().unwrap(), RangeAssignment::Continuous(vec![83.4, 63.2, 91.0]));
        let bad = Position::from_rows(&[[1, 1, 0]]);
        assert!(matches!(bad.decode(), Err(Error::Internal(_))));
        assert!(!bad.is_one_hot());
    }

    #[test]
    fn set_node_overwrites() {
        let mut p = Position::from_levels(&[PowerLevel::Max, PowerLevel::Mid]);
        p.set_node(1, PowerLevel::Min, 64.0);
        assert_eq!(p.row(1), &[1.0, 0.0, 0.0]);
        let mut c = Position::from_ranges(vec![100.0, 100.0]);
        c.set_node(0, PowerLevel::Min, 64.0);
        assert_eq!(c.cells(), &[64.0, 100.0]);
    }

    #[test]
    fn init_swarm_shapes_and_determinism() {
        let t = Topology::generate_random(3, 1, 100.0, 0).unwrap();
        let sim = Simulator::new(t, RadioParams::default()).unwrap();
        let c = PsoConfig { n_particles: 20, seed: 5, ..cfg() };
        let swarm = init_swarm(&c, &sim, Encoding::Binary).unwrap();
        for p in &swarm {
            assert_eq!(p.position.cells().len(), 9);
            assert!(p.position.is_one_hot());
            assert!(p.velocity.iter().all(|v| (0.0..=1.0).contains(v)));
            assert_eq!(p.best_position, p.position);
        }
        let cont = init_swarm(&c, &sim, Encoding::Continuous).unwrap();
        let b = RangeBounds::default();
        for p in &cont {
            assert_eq!(p.position.cells().len(), 3);
            assert!(p.position.cells().iter().all(|&r| b.contains(r)));
            assert!(p.velocity.iter().all(|v| v.abs() <= b.half_width()));
        }
        assert_eq!(swarm, init_swarm(&c, &sim, Encoding::Binary).unwrap());
    }
}
