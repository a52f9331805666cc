//! Matroid-union partitioning of edge sets into two independent parts.
//!
//! Purpose: decide whether an edge set splits into two sets that are both
//! independent in the same (1,1)-family matroid, via the classical
//! augmenting-path scheme over the independence oracle.  A failed
//! augmentation certifies the decision: the set of edges reachable in the
//! exchange digraph has one more edge than twice its rank, violating the
//! doubled count on that subset.
//!
//! Notes: edges are examined in ascending id order, BFS explores parts and
//! part members in ascending order, so outcomes are deterministic.

use std::collections::{HashMap, VecDeque};

use crate::graph::ColoredGraph;

use super::state::{one_one_independent, set_rank, OneOneFamily};

/// Result of attempting a two-part split.
#[derive(Debug, Clone)]
pub enum UnionOutcome {
    /// Disjoint parts, each independent, jointly covering the input edges.
    Partitioned([Vec<usize>; 2]),
    /// Edge set R with |R| = 2·rank(R) + 1, sorted ascending.
    Violation(Vec<usize>),
}

/// Split `edges` into two independent parts, or produce a violating subset.
pub fn partition_into_two(
    graph: &ColoredGraph,
    family: OneOneFamily,
    edges: &[usize],
) -> UnionOutcome {
    let mut order = edges.to_vec();
    order.sort_unstable();
    order.dedup();
    let mut parts: [Vec<usize>; 2] = [Vec::new(), Vec::new()];
    for &z in &order {
        if let Err(witness) = augment(graph, family, &mut parts, z) {
            return UnionOutcome::Violation(witness);
        }
    }
    for p in &mut parts {
        p.sort_unstable();
    }
    UnionOutcome::Partitioned(parts)
}

/// Greedily keep the edges that fit into a two-part split, skipping failures.
///
/// The kept edges form a maximal union-independent subset; the parts are the
/// certifying split.
pub fn greedy_union_parts(graph: &ColoredGraph, family: OneOneFamily) -> [Vec<usize>; 2] {
    let mut parts: [Vec<usize>; 2] = [Vec::new(), Vec::new()];
    for z in 0..graph.m() {
        let _ = augment(graph, family, &mut parts, z);
    }
    for p in &mut parts {
        p.sort_unstable();
    }
    parts
}

/// Insert one edge via an augmenting path, rehoming displaced edges.
///
/// On failure returns the reachable edge set of the exchange search, which
/// satisfies |R| = 2·rank(R) + 1.
pub fn augment(
    graph: &ColoredGraph,
    family: OneOneFamily,
    parts: &mut [Vec<usize>; 2],
    z: usize,
) -> Result<(), Vec<usize>> {
    debug_assert!(!parts[0].contains(&z) && !parts[1].contains(&z));
    // prev[y] = (node whose displacement chain reaches y, part the arc used).
    let mut prev: HashMap<usize, (usize, usize)> = HashMap::new();
    let mut visited = vec![z];
    let mut queue = VecDeque::from([z]);
    while let Some(u) = queue.pop_front() {
        for p in 0..2 {
            if parts[p].contains(&u) {
                continue;
            }
            let mut grown = parts[p].clone();
            grown.push(u);
            if one_one_independent(graph, family, &grown) {
                // Shortest displacement chain found; apply it back to z.
                parts[p].push(u);
                let mut cur = u;
                while cur != z {
                    let (pred, q) = prev[&cur];
                    let pos = parts[q].iter().position(|&x| x == cur).unwrap();
                    parts[q][pos] = pred;
                    cur = pred;
                }
                debug_assert!(one_one_independent(graph, family, &parts[0]));
                debug_assert!(one_one_independent(graph, family, &parts[1]));
                return Ok(());
            }
            let mut members = parts[p].clone();
            members.sort_unstable();
            for &y in &members {
                if visited.contains(&y) {
                    continue;
                }
                let mut swapped: Vec<usize> =
                    parts[p].iter().copied().filter(|&x| x != y).collect();
                swapped.push(u);
                if one_one_independent(graph, family, &swapped) {
                    visited.push(y);
                    prev.insert(y, (u, p));
                    queue.push_back(y);
                }
            }
        }
    }
    visited.sort_unstable();
    debug_assert_eq!(
        visited.len(),
        2 * set_rank(graph, family, &visited) + 1,
        "reachable set must exceed the doubled count by exactly one"
    );
    Err(visited)
}
