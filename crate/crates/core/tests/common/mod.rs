//! Independent oracles shared by the integration tests.
//!
//! Nothing here calls into the simulator or optimizers under test: the
//! reference flood recomputes reachability from raw coordinates every step,
//! and the link budget is re-derived from its closed form.

#![allow(dead_code)]

use std::collections::BTreeSet;

use trilat_core::{Node, NodeId, NodeKind, PowerLevel, RangeAssignment, Topology};

pub const FADE_MARGIN: f64 = 8.0;
pub const SENSITIVITY: f64 = -98.0;
pub const FREQ_MHZ: f64 = 2405.0;
pub const PATH_LOSS_N: f64 = 2.5;

pub fn ref_range_from_dbm(p: f64) -> f64 {
    let n = PATH_LOSS_N;
    let x = (p - FADE_MARGIN - SENSITIVITY + 30.0 * n - 32.44 - 10.0 * n * FREQ_MHZ.log10()) / (10.0 * n);
    10f64.powf(x)
}

pub fn ref_dbm_from_range(r: f64) -> f64 {
    let n = PATH_LOSS_N;
    10.0 * n * r.log10() + 10.0 * n * FREQ_MHZ.log10() - 30.0 * n + FADE_MARGIN + SENSITIVITY + 32.44
}

pub fn ref_mw(dbm: f64) -> f64 {
    10f64.powf(dbm / 10.0)
}

/// `(range, mW)` per node, derived independently of the radio module.
pub fn ref_profile(a: &RangeAssignment) -> Vec<(f64, f64)> {
    match a {
        RangeAssignment::Discrete(levels) => levels
            .iter()
            .map(|l| {
                let dbm = match l {
                    PowerLevel::Min => -3.0,
                    PowerLevel::Mid => 1.0,
                    PowerLevel::Max => 5.0,
                };
                (ref_range_from_dbm(dbm), ref_mw(dbm))
            })
            .collect(),
        RangeAssignment::Continuous(r) => r.iter().map(|&r| (r, ref_mw(ref_dbm_from_range(r)))).collect(),
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct RefStep {
    pub broadcasters: Vec<usize>,
    pub newly_localized: Vec<usize>,
    pub power_mw: f64,
}

#[derive(Debug, Clone, PartialEq)]
pub struct RefOutcome {
    pub steps: Vec<RefStep>,
    pub localized_blind: BTreeSet<usize>,
    pub total_power_mw: f64,
    pub messages: usize,
}

/// Naive flood: every step rescans every (sender, receiver) pair and tracks
/// explicit sets of distinct senders heard.
pub fn ref_simulate(t: &Topology, a: &RangeAssignment) -> RefOutcome {
    let nodes = t.nodes();
    let n = nodes.len();
    let profile = ref_profile(a);
    let mut localized: BTreeSet<usize> = (0..n).filter(|&i| nodes[i].kind == NodeKind::Anchor).collect();
    let mut heard: Vec<BTreeSet<usize>> = vec![BTreeSet::new(); n];
    let mut pending: BTreeSet<usize> = localized.clone();
    let mut steps = Vec::new();
    let mut localized_blind = BTreeSet::new();
    while !pending.is_empty() {
        for &s in &pending {
            for u in 0..n {
                if u == s || localized.contains(&u) {
                    continue;
                }
                let dx = nodes[u].x - nodes[s].x;
                let dy = nodes[u].y - nodes[s].y;
                if (dx * dx + dy * dy).sqrt() <= profile[s].0 {
                    heard[u].insert(s);
                }
            }
        }
        let newly: Vec<usize> = (0..n).filter(|u| !localized.contains(u) && heard[*u].len() >= 3).collect();
        let mut power = 0.0;
        for &s in &pending {
            power += profile[s].1;
        }
        steps.push(RefStep {
            broadcasters: pending.iter().copied().collect(),
            newly_localized: newly.clone(),
            power_mw: power,
        });
        for &u in &newly {
            localized.insert(u);
            localized_blind.insert(u);
        }
        pending = newly.into_iter().collect();
    }
    let total_power_mw = steps.iter().map(|s| s.power_mw).sum();
    let messages = steps.iter().map(|s| s.broadcasters.len()).sum();
    RefOutcome { steps, localized_blind, total_power_mw, messages }
}

pub fn close_rel(a: f64, b: f64, tol: f64) -> bool {
    (a - b).abs() <= tol * a.abs().max(b.abs()).max(1.0)
}

/// Fig. 1 replica. Ids: a=0, d=1, f=2 (anchors), b=3, c=4, e=5 (blind).
pub mod fig1 {
    pub const A: usize = 0;
    pub const D: usize = 1;
    pub const F: usize = 2;
    pub const B: usize = 3;
    pub const C: usize = 4;
    pub const E: usize = 5;
}

pub fn fig1_topology() -> Topology {
    use NodeKind::*;
    let pts = [
        (200.0, 200.0, Anchor), // a
        (200.0, 300.0, Anchor), // d
        (260.0, 380.0, Anchor), // f
        (200.0, 80.0, Blind),   // b
        (160.0, 300.0, Blind),  // c
        (240.0, 300.0, Blind),  // e
    ];
    let nodes = pts.iter().enumerate().map(|(i, &(x, y, kind))| Node { id: NodeId(i), x, y, kind }).collect();
    Topology::new(500.0, nodes).unwrap()
}

pub fn fig1_method1() -> RangeAssignment {
    RangeAssignment::Continuous(vec![132.0; 6])
}

pub fn fig1_method2() -> RangeAssignment {
    use fig1::*;
    let mut r = vec![132.0; 6];
    r[A] = 132.0;
    r[D] = 63.2;
    r[F] = 91.0;
    r[E] = 83.4;
    r[C] = 132.0;
    RangeAssignment::Continuous(r)
}

fn raw_dist(t: &Topology, i: usize, j: usize) -> f64 {
    let (a, b) = (&t.nodes()[i], &t.nodes()[j]);
    ((a.x - b.x).powi(2) + (a.y - b.y).powi(2)).sqrt()
}

/// Every reachability constraint the worked example implies, checked on raw
/// coordinates. Returns the violated ones.
pub fn fig1_violations(t: &Topology) -> Vec<String> {
    use fig1::*;
    let within = |i, j, r: f64| raw_dist(t, i, j) <= r;
    let checks: Vec<(&str, bool)> = vec![
        // Method 1, step 1: b hears one anchor, c and e hear all three.
        ("b hears a at 132", within(A, B, 132.0)),
        ("b misses d at 132", !within(D, B, 132.0)),
        ("b misses f at 132", !within(F, B, 132.0)),
        ("c hears a,d,f at 132", within(A, C, 132.0) && within(D, C, 132.0) && within(F, C, 132.0)),
        ("e hears a,d,f at 132", within(A, E, 132.0) && within(D, E, 132.0) && within(F, E, 132.0)),
        // Method 1, step 2: neither c nor e reaches b.
        ("c misses b at 132", !within(C, B, 132.0)),
        ("e misses b at 132", !within(E, B, 132.0)),
        // Method 2, step 1: e hears a (132), d (63.2), f (91); c hears only a, d.
        ("e hears d at 63.2", within(D, E, 63.2)),
        ("e hears f at 91", within(F, E, 91.0)),
        ("c hears d at 63.2", within(D, C, 63.2)),
        ("c misses f at 91", !within(F, C, 91.0)),
        ("b misses d at 63.2 and f at 91", !within(D, B, 63.2) && !within(F, B, 91.0)),
        // Method 2, step 2: e at 83.4 reaches c but not b.
        ("e reaches c at 83.4", within(E, C, 83.4)),
        ("e misses b at 83.4", !within(E, B, 83.4)),
    ];
    checks.into_iter().filter(|(_, ok)| !ok).map(|(name, _)| name.to_string()).collect()
}

/// Small instances for exhaustive checks: 4..=8 nodes, 3 or 4 anchors, on a
/// field tight enough for partial connectivity.
pub fn small_topology(seed: u64) -> Topology {
    let n = 4 + (seed % 5) as usize;
    let anchors = 3 + (seed / 5 % 2) as usize;
    Topology::generate_random(n, anchors.min(n), 200.0, seed.wrapping_mul(7919).wrapping_add(13)).unwrap()
}

/// Objectives in minimization form: (steps, power, -localized).
pub type RefObjectives = [f64; 3];

pub fn ref_objectives(o: &RefOutcome) -> RefObjectives {
    [o.steps.len() as f64, o.total_power_mw, -(o.localized_blind.len() as f64)]
}

fn ref_le(a: f64, b: f64) -> bool {
    a <= b || close_rel(a, b, 1e-9)
}

fn ref_eq(a: &RefObjectives, b: &RefObjectives) -> bool {
    a.iter().zip(b).all(|(x, y)| close_rel(*x, *y, 1e-9))
}

pub fn ref_dominates(a: &RefObjectives, b: &RefObjectives) -> bool {
    a.iter().zip(b).all(|(x, y)| ref_le(*x, *y)) && !ref_eq(a, b)
}

pub fn all_levels(n: usize) -> impl Iterator<Item = Vec<PowerLevel>> {
    (0..3usize.pow(n as u32))
        .map(move |code| (0..n).map(|k| PowerLevel::ALL[code / 3usize.pow(k as u32) % 3]).collect())
}

/// Distinct objective vectors of the exhaustive binary Pareto front.
pub fn exhaustive_front(t: &Topology) -> Vec<RefObjectives> {
    let mut front: Vec<RefObjectives> = Vec::new();
    for levels in all_levels(t.len()) {
        let o = ref_objectives(&ref_simulate(t, &RangeAssignment::Discrete(levels)));
        if front.iter().any(|f| ref_dominates(f, &o) || ref_eq(f, &o)) {
            continue;
        }
        front.retain(|f| !ref_dominates(&o, f));
        front.push(o);
    }
    front
}

/// `(archive ⊆ front, fraction of front covered)`.
pub fn front_agreement(front: &[RefObjectives], archive: &[RefObjectives]) -> (bool, f64) {
    let subset = archive.iter().all(|a| front.iter().any(|f| ref_eq(f, a)));
    let covered = front.iter().filter(|f| archive.iter().any(|a| ref_eq(f, a))).count();
    (subset, covered as f64 / front.len() as f64)
}
