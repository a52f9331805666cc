//! Sparsity counts and class deciders for colored graphs.
//!
//! Purpose: the four count functions f, g, h, h′ evaluated on arbitrary
//! edge subsets, polynomial deciders for the eight graph classes built on
//! them (loop family, doubled family, Laman family, for wallpaper, cone,
//! and rotation-class variants), violating-subset witnesses, map-graph
//! structure, and an exhaustive enumeration oracle for cross-checking.
//!
//! Notes: f = 2n′ + rep − ΣT and g = f/2 over the spanned components, so
//! isolated vertices never contribute; h = f − 1; h′ replaces the lattice
//! and T terms by the Teichmüller and centralizer dimensions.

mod classes;
mod laman;
mod map_graph;
mod oracle;
mod state;
mod union;

pub use classes::{
    decider, gamma11_independent, rotation_cycle_independent, rotation_union_parts,
    rotation_basis, ClassDecider, SparsityReport, DECIDERS,
};
pub use laman::{find_laman_circuit, laman_witness, LamanChecker};
pub use map_graph::{map_orientation, overlap_graph, OverlapGraph, OverlapNode};
pub use oracle::{exhaustive_oracle, OracleOutcome, ORACLE_EDGE_LIMIT};
pub use state::{
    fundamental_circuit, greedy_basis, one_one_independent, set_rank, OneOneFamily, RankState,
};
pub use union::{augment, greedy_union_parts, partition_into_two, UnionOutcome};

use crate::graph::{ColoredGraph, GraphInvariants};
use crate::subgroup::{cent_dim, teich_dim};

/// The four counts of one graph or subgraph.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct SparsityValues {
    /// 2n′ + rep − ΣT over spanned components.
    pub f: i64,
    /// f / 2.
    pub g: i64,
    /// f − 1.
    pub h: i64,
    /// 2n′ + teich − Σcent over spanned components.
    pub h_prime: i64,
}

/// Counts of the subgraph spanned by an edge subset.
pub fn values_of_subset(graph: &ColoredGraph, edges: &[usize]) -> SparsityValues {
    values_from_invariants(graph, &graph.subgraph_invariants(edges))
}

/// Counts of the whole graph.
pub fn sparsity_values(graph: &ColoredGraph) -> SparsityValues {
    values_from_invariants(graph, &graph.invariants())
}

fn values_from_invariants(graph: &ColoredGraph, inv: &GraphInvariants) -> SparsityValues {
    let ctx = graph.group();
    let mut f = inv.rep as i64;
    let mut h_prime = teich_dim(ctx, &inv.lattice) as i64;
    for comp in inv.components.iter().filter(|c| c.edges > 0) {
        let two_n = 2 * comp.vertices.len() as i64;
        f += two_n - comp.t_dim() as i64;
        h_prime += two_n - cent_dim(&comp.subgroup) as i64;
    }
    debug_assert!(f % 2 == 0);
    SparsityValues {
        f,
        g: f / 2,
        h: f - 1,
        h_prime,
    }
}
