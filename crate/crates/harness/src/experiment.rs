use std::fmt::Write as _;
use std::time::{Duration, Instant};

use rayon::prelude::*;
use trilat_core::mopso::mopso_run;
use trilat_core::seed::derive_seed;
use trilat_core::swarm::{sopso_run, ObjectiveVector};
use trilat_core::{PowerLevel, RangeAssignment, SimOutcome, Simulator};

use crate::error::Result;
use crate::settings::OptimizerConfig;

/// Column names of the per-solution metrics, in CSV order.
pub const METRICS: [&str; 6] = ["steps", "node_steps", "power_mw", "localized_blind", "participants", "messages"];

#[derive(Debug, Clone, PartialEq)]
pub struct SolutionRow {
    pub steps: u32,
    pub node_steps: u64,
    pub power_mw: f64,
    pub localized_blind: u32,
    pub participants: u32,
    pub messages: u32,
    pub assignment: RangeAssignment,
}

impl SolutionRow {
    pub fn from_objectives(obj: &ObjectiveVector, assignment: RangeAssignment, sim: &Simulator) -> Self {
        let t = sim.topology();
        SolutionRow {
            steps: obj.time_steps,
            node_steps: obj.time_steps as u64 * t.len() as u64,
            power_mw: obj.power_mw,
            localized_blind: obj.localized_blind,
            participants: t.n_anchors() as u32 + obj.localized_blind,
            messages: obj.messages,
            assignment,
        }
    }

    pub fn from_outcome(out: &SimOutcome, assignment: RangeAssignment) -> Self {
        SolutionRow {
            steps: out.steps,
            node_steps: out.node_steps,
            power_mw: out.total_power_mw,
            localized_blind: out.localized_blind,
            participants: out.participants,
            messages: out.messages,
            assignment,
        }
    }

    pub fn metrics(&self) -> [f64; 6] {
        [
            self.steps as f64,
            self.node_steps as f64,
            self.power_mw,
            self.localized_blind as f64,
            self.participants as f64,
            self.messages as f64,
        ]
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct TrialRecord {
    pub trial: usize,
    pub seed: u64,
    /// The SOPSO best, or every final archive entry.
    pub solutions: Vec<SolutionRow>,
    pub wall_time: Duration,
}

/// The three uniform-level floods, Min first.
pub fn run_baseline(sim: &Simulator) -> Result<Vec<(PowerLevel, SimOutcome)>> {
    let n = sim.topology().len();
    PowerLevel::ALL.iter().map(|&level| Ok((level, sim.simulate(&RangeAssignment::uniform_level(n, level))?))).collect()
}

/// Baseline results laid out one run per column.
pub fn baseline_table(sim: &Simulator, runs: &[(PowerLevel, SimOutcome)]) -> String {
    let radio = sim.radio();
    let mut s = String::new();
    let row = |s: &mut String, label: &str, cells: Vec<String>| {
        let _ = write!(s, "{label:<22}");
        for c in cells {
            let _ = write!(s, "{c:>12}");
        }
        s.push('\n');
    };
    row(&mut s, "", (1..=runs.len()).map(|i| format!("Run{i}")).collect());
    row(&mut s, "Level", runs.iter().map(|(l, _)| l.to_string()).collect());
    row(&mut s, "Range (m)", runs.iter().map(|(l, _)| format!("{:.2}", radio.level_range(*l))).collect());
    row(&mut s, "Time (node-steps)", runs.iter().map(|(_, o)| o.node_steps.to_string()).collect());
    row(&mut s, "Steps", runs.iter().map(|(_, o)| o.steps.to_string()).collect());
    row(&mut s, "Energy (mW)", runs.iter().map(|(_, o)| format!("{:.2}", o.total_power_mw)).collect());
    row(&mut s, "Localized nodes", runs.iter().map(|(_, o)| o.participants.to_string()).collect());
    row(&mut s, "Localized blind", runs.iter().map(|(_, o)| o.localized_blind.to_string()).collect());
    s
}

pub fn trial_seed(master: u64, trial: usize) -> u64 {
    derive_seed(master, &[trial as u64])
}

pub fn run_trial(sim: &Simulator, config: &OptimizerConfig, trial: usize, seed: u64) -> Result<TrialRecord> {
    let started = Instant::now();
    let solutions = match config.with_seed(seed) {
        OptimizerConfig::Sopso { pso, encoding, objective } => {
            let best = sopso_run(sim, &pso, encoding, objective)?;
            vec![SolutionRow::from_objectives(&best.best_objectives, best.best_assignment, sim)]
        }
        OptimizerConfig::Mopso { cfg, encoding } => mopso_run(sim, &cfg, encoding)?
            .archive
            .into_iter()
            .map(|e| Ok(SolutionRow::from_objectives(&e.objectives, e.position.decode()?, sim)))
            .collect::<Result<_>>()?,
    };
    Ok(TrialRecord { trial, seed, solutions, wall_time: started.elapsed() })
}

/// Independent trials, each seeded from `(master, trial)`. Results come back
/// in trial order whatever the scheduling.
pub fn run_trials(sim: &Simulator, config: &OptimizerConfig, trials: usize, master: u64) -> Result<Vec<TrialRecord>> {
    config.validate()?;
    (0..trials).into_par_iter().map(|t| run_trial(sim, config, t, trial_seed(master, t))).collect()
}

/// Mean and sample standard deviation of each metric over a set of rows.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Aggregate {
    pub count: usize,
    pub mean: [f64; 6],
    pub stdev: [f64; 6],
}

impl Aggregate {
    pub fn from_metrics<'a>(rows: impl IntoIterator<Item = &'a [f64; 6]>) -> Self {
        let rows: Vec<&[f64; 6]> = rows.into_iter().collect();
        let n = rows.len();
        let mut mean = [f64::NAN; 6];
        let mut stdev = [f64::NAN; 6];
        if n > 0 {
            for k in 0..6 {
                mean[k] = rows.iter().map(|r| r[k]).sum::<f64>() / n as f64;
                stdev[k] = if n == 1 {
                    0.0
                } else {
                    let ss: f64 = rows.iter().map(|r| (r[k] - mean[k]).powi(2)).sum();
                    (ss / (n - 1) as f64).sqrt()
                };
            }
        }
        Aggregate { count: n, mean, stdev }
    }

    pub fn from_records(records: &[TrialRecord]) -> Self {
        let metrics: Vec<[f64; 6]> = records.iter().flat_map(|r| &r.solutions).map(SolutionRow::metrics).collect();
        Self::from_metrics(&metrics)
    }

    /// `(label, values)` rows: AVG, STDEV, AVG+STDEV, AVG-STDEV.
    pub fn table(&self) -> [(&'static str, [f64; 6]); 4] {
        let plus = std::array::from_fn(|k| self.mean[k] + self.stdev[k]);
        let minus = std::array::from_fn(|k| self.mean[k] - self.stdev[k]);
        [("AVG", self.mean), ("STDEV", self.stdev), ("AVG+STDEV", plus), ("AVG-STDEV", minus)]
    }
}
