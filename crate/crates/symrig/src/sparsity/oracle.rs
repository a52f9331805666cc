//! Exhaustive subset enumeration against an arbitrary count bound.
//!
//! Purpose: independent verification of the polynomial deciders.  Every
//! nonempty edge subset is evaluated directly from the masked invariants,
//! and the subset with the least slack (bound − size) is reported, ties
//! broken toward the lowest bitmask.  Subsets are scanned in parallel; the
//! lexicographic (slack, mask) minimum makes the result order-independent.

use rayon::prelude::*;

use crate::graph::{ColoredGraph, GraphError};

/// 2^m enumeration cap.
pub const ORACLE_EDGE_LIMIT: usize = 16;

#[derive(Debug, Clone)]
pub struct OracleOutcome {
    /// Every nonempty subset satisfies the bound.
    pub sparse: bool,
    /// Subset with the least slack; empty only for an edgeless graph.
    pub worst: Vec<usize>,
    /// bound(worst) − |worst|; negative exactly when not sparse.
    pub slack: i64,
}

/// Evaluate `bound` on every nonempty edge subset.
pub fn exhaustive_oracle<B>(graph: &ColoredGraph, bound: B) -> Result<OracleOutcome, GraphError>
where
    B: Fn(&ColoredGraph, &[usize]) -> i64 + Sync,
{
    let m = graph.m();
    if m > ORACLE_EDGE_LIMIT {
        return Err(GraphError::Invalid(format!(
            "subset enumeration handles at most {ORACLE_EDGE_LIMIT} edges, got {m}"
        )));
    }
    if m == 0 {
        return Ok(OracleOutcome {
            sparse: true,
            worst: Vec::new(),
            slack: 0,
        });
    }
    let (slack, mask) = (1u64..1 << m)
        .into_par_iter()
        .map(|mask| {
            let ids: Vec<usize> = (0..m).filter(|i| mask >> i & 1 == 1).collect();
            (bound(graph, &ids) - ids.len() as i64, mask)
        })
        .min()
        .expect("at least one nonempty subset");
    Ok(OracleOutcome {
        sparse: slack >= 0,
        worst: (0..m).filter(|i| mask >> i & 1 == 1).collect(),
        slack,
    })
}
