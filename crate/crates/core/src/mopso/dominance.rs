use std::cmp::Ordering;

use crate::swarm::{ObjectiveSet, ObjectiveVector};

/// Outcome of comparing two minimized objective vectors.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Dominance {
    ADominates,
    BDominates,
    NonDominated,
    Equal,
}

impl Dominance {
    pub fn flip(self) -> Self {
        match self {
            Dominance::ADominates => Dominance::BDominates,
            Dominance::BDominates => Dominance::ADominates,
            other => other,
        }
    }
}

fn compare_component(x: f64, y: f64, exact: bool, eps: f64) -> Ordering {
    if exact {
        return x.total_cmp(&y);
    }
    if (x - y).abs() <= eps * x.abs().max(y.abs()) {
        Ordering::Equal
    } else {
        x.total_cmp(&y)
    }
}

fn compare(a: &[f64], b: &[f64], exact: impl Fn(usize) -> bool, eps: f64) -> Dominance {
    debug_assert_eq!(a.len(), b.len());
    let (mut a_better, mut b_better) = (false, false);
    for k in 0..a.len() {
        match compare_component(a[k], b[k], exact(k), eps) {
            Ordering::Less => a_better = true,
            Ordering::Greater => b_better = true,
            Ordering::Equal => {}
        }
        if a_better && b_better {
            return Dominance::NonDominated;
        }
    }
    match (a_better, b_better) {
        (true, false) => Dominance::ADominates,
        (false, true) => Dominance::BDominates,
        (false, false) => Dominance::Equal,
        (true, true) => unreachable!(),
    }
}

/// Pareto comparison of raw minimized vectors; every component is compared
/// with relative tolerance `eps`.
pub fn compare_vectors(a: &[f64], b: &[f64], eps: f64) -> Dominance {
    compare(a, b, |_| false, eps)
}

/// Pareto comparison over the objectives in `set`. Integer-valued components
/// compare exactly, power compares within relative tolerance `eps`.
pub fn dominance(a: &ObjectiveVector, b: &ObjectiveVector, set: ObjectiveSet, eps: f64) -> Dominance {
    let k = set.arity();
    compare(&a.minimized(set)[..k], &b.minimized(set)[..k], |i| set.is_integral(i), eps)
}
