//! Step-synchronous trilateration flooding.
//!
//! Every step, each node holding a pending broadcast transmits once. A
//! non-localized node hears a sender when it lies within the *sender's*
//! range, so links are directional when ranges differ. Receptions
//! accumulate across steps. At the end of a step, every blind node that has
//! heard three distinct localized senders becomes localized and queues its
//! own broadcast for the next step. The flood ends when a step localizes
//! nobody.
//!
//! Position estimation itself is not computed: hearing three localized
//! neighbours is taken as sufficient to trilaterate.

use crate::error::{Error, Result};
use crate::radio::{RadioParams, RangeAssignment};
use crate::topology::{NodeId, Topology};

/// Distinct localized senders a blind node must hear to localize.
pub const SENDERS_TO_LOCALIZE: u32 = 3;

#[derive(Debug, Clone, PartialEq)]
pub struct SimOutcome {
    /// Flood rounds in which at least one broadcast happened.
    pub steps: u32,
    /// Broadcasts sent; every localized node broadcasts exactly once.
    pub messages: u32,
    pub total_power_mw: f64,
    pub localized_blind: u32,
    /// Anchors plus localized blind nodes.
    pub participants: u32,
    /// Localized blind nodes, ascending.
    pub localized_set: Vec<NodeId>,
    /// `steps * N`, kept alongside `steps` for node-time style reporting.
    pub node_steps: u64,
}

/// What happened in a single flood round.
#[derive(Debug, Clone, PartialEq)]
pub struct StepRecord {
    /// Nodes that broadcast this step, ascending.
    pub broadcasters: Vec<NodeId>,
    /// Blind nodes that localized at the end of this step, ascending.
    pub newly_localized: Vec<NodeId>,
    /// Sum of the broadcasters' per-message power, in id order.
    pub power_mw: f64,
}

/// Simulator bound to one topology.
///
/// Construction sorts every node's neighbours by distance (O(N^2) memory) so
/// that each broadcast only touches the receivers inside its range.
#[derive(Debug, Clone)]
pub struct Simulator {
    topology: Topology,
    radio: RadioParams,
    by_distance: Vec<Vec<(f64, u32)>>,
}

impl Simulator {
    pub fn new(topology: Topology, radio: RadioParams) -> Result<Self> {
        radio.validate()?;
        let n = topology.len();
        let by_distance = (0..n)
            .map(|s| {
                let mut row: Vec<(f64, u32)> =
                    (0..n).filter(|&u| u != s).map(|u| (topology.distance(NodeId(s), NodeId(u)), u as u32)).collect();
                row.sort_by(|a, b| a.0.total_cmp(&b.0).then(a.1.cmp(&b.1)));
                row
            })
            .collect();
        Ok(Self { topology, radio, by_distance })
    }

    pub fn topology(&self) -> &Topology {
        &self.topology
    }

    pub fn radio(&self) -> &RadioParams {
        &self.radio
    }

    pub fn simulate(&self, assignment: &RangeAssignment) -> Result<SimOutcome> {
        self.run(assignment, None)
    }

    /// Like [`simulate`](Self::simulate) but also returns the per-step log.
    pub fn simulate_traced(&self, assignment: &RangeAssignment) -> Result<(SimOutcome, Vec<StepRecord>)> {
        let mut trace = Vec::new();
        let outcome = self.run(assignment, Some(&mut trace))?;
        Ok((outcome, trace))
    }

    fn run(&self, assignment: &RangeAssignment, mut trace: Option<&mut Vec<StepRecord>>) -> Result<SimOutcome> {
        let n = self.topology.len();
        if assignment.len() != n {
            return Err(Error::InvalidArgument(format!(
                "assignment covers {} nodes, topology has {n}",
                assignment.len()
            )));
        }
        let tx = assignment.tx_profile(&self.radio)?;

        let mut localized: Vec<bool> = self.topology.nodes().iter().map(|n| n.is_anchor()).collect();
        let mut heard = vec![0u32; n];
        let mut pending: Vec<usize> = (0..n).filter(|&i| localized[i]).collect();
        let n_anchors = pending.len() as u32;

        let mut steps = 0u32;
        let mut messages = 0u32;
        let mut total_power_mw = 0.0;
        let mut localized_set = Vec::new();

        while !pending.is_empty() {
            steps += 1;
            let mut step_power = 0.0;
            for &s in &pending {
                let (range, mw) = tx[s];
                step_power += mw;
                messages += 1;
                let row = &self.by_distance[s];
                let reach = row.partition_point(|&(d, _)| d <= range);
                for &(_, u) in &row[..reach] {
                    if !localized[u as usize] {
                        heard[u as usize] += 1;
                    }
                }
            }
            total_power_mw += step_power;

            let newly: Vec<usize> = (0..n).filter(|&u| !localized[u] && heard[u] >= SENDERS_TO_LOCALIZE).collect();
            for &u in &newly {
                localized[u] = true;
                localized_set.push(NodeId(u));
            }
            if let Some(trace) = trace.as_deref_mut() {
                trace.push(StepRecord {
                    broadcasters: pending.iter().map(|&i| NodeId(i)).collect(),
                    newly_localized: newly.iter().map(|&i| NodeId(i)).collect(),
                    power_mw: step_power,
                });
            }
            pending = newly;
        }

        localized_set.sort_unstable();
        let localized_blind = localized_set.len() as u32;
        Ok(SimOutcome {
            steps,
            messages,
            total_power_mw,
            localized_blind,
            participants: n_anchors + localized_blind,
            localized_set,
            node_steps: steps as u64 * n as u64,
        })
    }
}

/// One-shot convenience over [`Simulator`].
pub fn simulate(topology: &Topology, assignment: &RangeAssignment, radio: &RadioParams) -> Result<SimOutcome> {
    Simulator::new(topology.clone(), *radio)?.simulate(assignment)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::radio::PowerLevel;
    use crate::topology::{Node, NodeKind};

    fn topo(side: f64, pts: &[(f64, f64, NodeKind)]) -> Topology {
        let nodes = pts.iter().enumerate().map(|(i, &(x, y, kind))| Node { id: NodeId(i), x, y, kind }).collect();
        Topology::new(side, nodes).unwrap()
    }

    #[test]
    fn no_anchors_no_flood() {
        let t = Topology::generate_random(6, 0, 100.0, 1).unwrap();
        let out = simulate(&t, &RangeAssignment::uniform_level(6, PowerLevel::Max), &RadioParams::default()).unwrap();
        assert_eq!((out.steps, out.messages, out.localized_blind), (0, 0, 0));
        assert_eq!(out.total_power_mw, 0.0);
        assert_eq!(out.node_steps, 0);
    }

    #[test]
    fn single_blind_inside_three_anchors() {
        use NodeKind::*;
        let t = topo(100.0, &[(0.0, 0.0, Anchor), (40.0, 0.0, Anchor), (0.0, 40.0, Anchor), (20.0, 20.0, Blind)]);
        let out = simulate(&t, &RangeAssignment::uniform_level(4, PowerLevel::Min), &RadioParams::default()).unwrap();
        assert_eq!(out.steps, 2);
        assert_eq!(out.messages, 4);
        assert_eq!(out.localized_blind, 1);
        assert_eq!(out.participants, 4);
        assert_eq!(out.node_steps, 8);
        assert_eq!(out.localized_set, vec![NodeId(3)]);
    }

    #[test]
    fn reception_uses_sender_range() {
        use NodeKind::*;
        // Blind node 3 is 80 m from anchor 2: reachable at Mid, not at Min.
        let t = topo(200.0, &[(0.0, 0.0, Anchor), (10.0, 0.0, Anchor), (0.0, 10.0, Anchor), (0.0, 90.0, Blind)]);
        let radio = RadioParams::default();
        let sim = Simulator::new(t, radio).unwrap();
        let all_min = RangeAssignment::uniform_level(4, PowerLevel::Min);
        assert_eq!(sim.simulate(&all_min).unwrap().localized_blind, 0);
        let mixed = RangeAssignment::Discrete(vec![PowerLevel::Mid, PowerLevel::Mid, PowerLevel::Mid, PowerLevel::Min]);
        assert_eq!(sim.simulate(&mixed).unwrap().localized_blind, 1);
        // The receiver's own range is irrelevant.
        let receiver_only =
            RangeAssignment::Discrete(vec![PowerLevel::Min, PowerLevel::Min, PowerLevel::Min, PowerLevel::Max]);
        assert_eq!(sim.simulate(&receiver_only).unwrap().localized_blind, 0);
    }

    #[test]
    fn length_mismatch_is_an_error() {
        let t = Topology::generate_random(4, 3, 100.0, 0).unwrap();
        let err = simulate(&t, &RangeAssignment::uniform_level(3, PowerLevel::Max), &RadioParams::default());
        assert!(matches!(err, Err(Error::InvalidArgument(_))));
        let err = simulate(&t, &RangeAssignment::Continuous(vec![100.0, -1.0, 100.0, 100.0]), &RadioParams::default());
        assert!(err.is_err());
    }

    #[test]
    fn trace_sums_to_outcome() {
        let t = Topology::generate_random(60, 10, 300.0, 5).unwrap();
        let sim = Simulator::new(t, RadioParams::default()).unwrap();
        let (out, trace) = sim.simulate_traced(&RangeAssignment::uniform_level(60, PowerLevel::Mid)).unwrap();
        assert_eq!(trace.len() as u32, out.steps);
        let msgs: usize = trace.iter().map(|s| s.broadcasters.len()).sum();
        assert_eq!(msgs as u32, out.messages);
        let power: f64 = trace.iter().map(|s| s.power_mw).sum();
        assert_eq!(power, out.total_power_mw);
        assert!(trace.last().unwrap().newly_localized.is_empty());
    }
}
