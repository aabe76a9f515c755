//! Lawler-style ranked enumeration over an MPE oracle with forced literals.
//!
//! The space of models is partitioned around every emitted state: for each
//! free variable index `j` (ascending), one subproblem forces agreement on
//! all earlier free variables and disagreement on `j`. Subproblems are kept
//! in a max-heap keyed by their optimum, so states pop in decreasing
//! probability; probability ties prefer the lexicographically smaller
//! state.

use crate::oracle::RankedState;
use crate::vars::State;
use alloc::collections::BinaryHeap;
use alloc::vec;
use alloc::vec::Vec;
use core::cmp::Ordering;

pub(crate) enum StopRule {
    Threshold(f64),
    Count(usize),
}

struct Item {
    probability: f64,
    state: State,
    forced: Vec<Option<bool>>,
}

impl PartialEq for Item {
    fn eq(&self, other: &Self) -> bool {
        self.cmp(other) == Ordering::Equal
    }
}

impl Eq for Item {}

impl PartialOrd for Item {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl Ord for Item {
    fn cmp(&self, other: &Self) -> Ordering {
        // Max-heap: greatest = highest probability, then smallest state.
        self.probability
            .total_cmp(&other.probability)
            .then_with(|| other.state.cmp(&self.state))
    }
}

/// `solve(forced)` must return an optimal state of the subspace respecting
/// `forced` (None = empty subspace) together with its probability.
pub(crate) fn enumerate<F>(n_vars: usize, mut solve: F, stop: StopRule) -> Vec<RankedState>
where
    F: FnMut(&[Option<bool>]) -> Option<(State, f64)>,
{
    let mut out: Vec<RankedState> = Vec::new();
    if let StopRule::Count(0) = stop {
        return out;
    }
    let mut heap: BinaryHeap<Item> = BinaryHeap::new();
    let free: Vec<Option<bool>> = vec![None; n_vars];
    if let Some((state, probability)) = solve(&free) {
        heap.push(Item {
            probability,
            state,
            forced: free,
        });
    }
    while let Some(item) = heap.pop() {
        match stop {
            StopRule::Threshold(t) => {
                if item.probability < t {
                    break;
                }
            }
            StopRule::Count(k) => {
                if out.len() >= k {
                    break;
                }
            }
        }
        // Partition the remaining subspace around the emitted state.
        for j in 0..n_vars {
            if item.forced[j].is_some() {
                continue;
            }
            let mut child = item.forced.clone();
            for (jj, slot) in child.iter_mut().enumerate().take(j) {
                if slot.is_none() {
                    *slot = Some(item.state.get(jj));
                }
            }
            child[j] = Some(!item.state.get(j));
            if let Some((state, probability)) = solve(&child) {
                heap.push(Item {
                    probability,
                    state,
                    forced: child,
                });
            }
        }
        out.push(RankedState {
            state: item.state,
            probability: item.probability,
        });
        if let StopRule::Count(k) = stop {
            if out.len() >= k {
                break;
            }
        }
    }
    out
}
