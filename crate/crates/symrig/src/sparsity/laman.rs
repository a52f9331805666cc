//! Laman-style sparsity via edge doubling, and greedy circuit extraction.
//!
//! Purpose: a graph satisfies the m′ ≤ f(G′) − 1 count on every nonempty
//! subgraph exactly when doubling any single edge leaves the doubled count
//! satisfiable, i.e. when every single-edge doubling still splits into two
//! independent parts.  The checker materializes all duplicates once and
//! replays the union with one extra edge per probe.
//!
//! Notes: a failed probe's reachable set maps back to the original edge ids
//! (the duplicate stands in for its source edge) and then violates the
//! −1-adjusted count.  Circuit extraction deletes edges in descending id
//! order while the remainder stays non-sparse; hereditary sparsity makes a
//! single pass minimal.

use crate::graph::{ColoredGraph, Edge};

use super::state::OneOneFamily;
use super::union::{augment, partition_into_two, UnionOutcome};

/// Doubling-based sparsity checks over a fixed graph.
pub struct LamanChecker<'g> {
    graph: &'g ColoredGraph,
    doubled: ColoredGraph,
    family: OneOneFamily,
}

impl<'g> LamanChecker<'g> {
    /// Prepares a copy of the graph with a duplicate of edge e at id m + e.
    pub fn new(graph: &'g ColoredGraph, family: OneOneFamily) -> Self {
        let extra: Vec<Edge> = graph.edges().to_vec();
        let doubled = graph
            .with_extra_edges(&extra)
            .expect("duplicating existing edges keeps the graph valid");
        LamanChecker {
            graph,
            doubled,
            family,
        }
    }

    /// Violating subset of `subset` under the −1-adjusted count, if any.
    ///
    /// `None` means every nonempty subset F of `subset` has |F| ≤ f(F) − 1.
    pub fn witness(&self, subset: &[usize]) -> Option<Vec<usize>> {
        let m = self.graph.m();
        debug_assert!(subset.iter().all(|&e| e < m));
        let parts = match partition_into_two(&self.doubled, self.family, subset) {
            UnionOutcome::Partitioned(parts) => parts,
            UnionOutcome::Violation(witness) => return Some(witness),
        };
        let mut order = subset.to_vec();
        order.sort_unstable();
        for &e in &order {
            let mut probe = parts.clone();
            if let Err(reached) = augment(&self.doubled, self.family, &mut probe, m + e) {
                let mut witness: Vec<usize> = reached
                    .into_iter()
                    .map(|id| if id == m + e { e } else { id })
                    .collect();
                witness.sort_unstable();
                witness.dedup();
                return Some(witness);
            }
        }
        None
    }

    pub fn is_sparse(&self, subset: &[usize]) -> bool {
        self.witness(subset).is_none()
    }

    /// Edge-minimal non-sparse subset, or `None` when the graph is sparse.
    ///
    /// Deletion runs in descending id order; since sparsity is hereditary,
    /// every surviving edge stays necessary and one pass suffices.
    pub fn circuit(&self) -> Option<Vec<usize>> {
        let all: Vec<usize> = (0..self.graph.m()).collect();
        self.witness(&all)?;
        let mut keep = all;
        for id in (0..self.graph.m()).rev() {
            let trial: Vec<usize> = keep.iter().copied().filter(|&e| e != id).collect();
            if trial.len() < keep.len() && self.witness(&trial).is_some() {
                keep = trial;
            }
        }
        Some(keep)
    }
}

/// Violating subset for the whole graph under the −1-adjusted count.
pub fn laman_witness(graph: &ColoredGraph, family: OneOneFamily) -> Option<Vec<usize>> {
    let all: Vec<usize> = (0..graph.m()).collect();
    LamanChecker::new(graph, family).witness(&all)
}

/// Edge-minimal subset violating the −1-adjusted count, if the graph does.
pub fn find_laman_circuit(graph: &ColoredGraph, family: OneOneFamily) -> Option<Vec<usize>> {
    LamanChecker::new(graph, family).circuit()
}
