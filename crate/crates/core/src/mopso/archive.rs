use rand::Rng;

use super::crowding::crowding_distances;
use super::dominance::{dominance, Dominance};
use crate::error::{Error, Result};
use crate::swarm::{ObjectiveSet, ObjectiveVector, Position};

#[derive(Debug, Clone, PartialEq)]
pub struct ArchiveEntry {
    pub position: Position,
    pub objectives: ObjectiveVector,
    /// Crowding distance as of the last refresh.
    pub crowding: f64,
}

/// Bounded set of mutually non-dominated solutions.
#[derive(Debug, Clone, PartialEq)]
pub struct LeadersArchive {
    entries: Vec<ArchiveEntry>,
    capacity: usize,
    objectives: ObjectiveSet,
    epsilon: f64,
}

impl LeadersArchive {
    pub fn new(capacity: usize, objectives: ObjectiveSet, epsilon: f64) -> Self {
        Self { entries: Vec::with_capacity(capacity + 1), capacity, objectives, epsilon }
    }

    pub fn entries(&self) -> &[ArchiveEntry] {
        &self.entries
    }

    pub fn into_entries(self) -> Vec<ArchiveEntry> {
        self.entries
    }

    pub fn len(&self) -> usize {
        self.entries.len()
    }

    pub fn is_empty(&self) -> bool {
        self.entries.is_empty()
    }

    pub fn capacity(&self) -> usize {
        self.capacity
    }

    pub fn compare(&self, a: &ObjectiveVector, b: &ObjectiveVector) -> Dominance {
        dominance(a, b, self.objectives, self.epsilon)
    }

    /// Offers a candidate. Rejected when an entry dominates or equals it;
    /// otherwise it goes in and every entry it dominates is dropped. Over
    /// capacity, crowding is recomputed and the most crowded entry evicted
    /// (first one on ties).
    ///
    /// Returns whether the candidate was kept. The new entry's crowding is
    /// stale until [`refresh_crowding`](Self::refresh_crowding).
    pub fn insert(&mut self, position: Position, objectives: ObjectiveVector) -> bool {
        let mut dominated = Vec::new();
        for (i, e) in self.entries.iter().enumerate() {
            match self.compare(&objectives, &e.objectives) {
                Dominance::BDominates | Dominance::Equal => return false,
                Dominance::ADominates => dominated.push(i),
                Dominance::NonDominated => {}
            }
        }
        for &i in dominated.iter().rev() {
            self.entries.remove(i);
        }
        self.entries.push(ArchiveEntry { position, objectives, crowding: 0.0 });
        if self.entries.len() > self.capacity {
            self.refresh_crowding();
            let newcomer = self.entries.len() - 1;
            let worst =
                self.entries
                    .iter()
                    .enumerate()
                    .fold(0, |w, (i, e)| if e.crowding < self.entries[w].crowding { i } else { w });
            self.entries.remove(worst);
            self.refresh_crowding();
            return worst != newcomer;
        }
        true
    }

    pub fn refresh_crowding(&mut self) {
        let k = self.objectives.arity();
        let points: Vec<[f64; 4]> = self.entries.iter().map(|e| e.objectives.minimized(self.objectives)).collect();
        let trimmed: Vec<&[f64]> = points.iter().map(|p| &p[..k]).collect();
        for (e, d) in self.entries.iter_mut().zip(crowding_distances(&trimmed)) {
            e.crowding = d;
        }
    }

    /// Binary tournament on crowding: two entries drawn with replacement, the
    /// less crowded (larger distance) wins, ties split evenly.
    pub fn select_leader(&self, rng: &mut impl Rng) -> Result<&ArchiveEntry> {
        if self.entries.is_empty() {
            return Err(Error::Internal("leader requested from an empty archive".into()));
        }
        let a = &self.entries[rng.random_range(0..self.entries.len())];
        let b = &self.entries[rng.random_range(0..self.entries.len())];
        Ok(if a.crowding > b.crowding {
            a
        } else if b.crowding > a.crowding {
            b
        } else if rng.random_bool(0.5) {
            a
        } else {
            b
        })
    }

    /// O(k^2) audit: no entry dominates or equals another.
    pub fn is_mutually_non_dominated(&self) -> bool {
        self.entries.iter().enumerate().all(|(i, a)| {
            self.entries[i + 1..].iter().all(|b| self.compare(&a.objectives, &b.objectives) == Dominance::NonDominated)
        })
    }
}
