//! Map-graph structure: orientations, cycle cores, and overlap graphs.
//!
//! Purpose: a map-graph is a graph in which every connected component has
//! exactly one cycle (self-loops count, and a parallel pair forms the unique
//! cycle of its component).  Such graphs are exactly those orientable with
//! in-degree one everywhere: peel leaves toward the cycle core, point each
//! peeled edge at its leaf, and run each core cycle around consistently.
//!
//! Notes: the overlap graph of an edge-disjoint pair of spanning map-graphs
//! tracks which component of one part contains the other part's base
//! vertices; every node has exactly one incoming edge, so each weakly
//! connected component carries a directed cycle.

use std::collections::VecDeque;

use crate::graph::{ColoredGraph, GraphError};

/// In-degree-one orientation of an edge set, as (edge id, incoming vertex).
///
/// `None` when some component spanned by `edges` is not a map-graph (a tree,
/// or more than one independent cycle).  Sorted by edge id.
pub fn map_orientation(graph: &ColoredGraph, edges: &[usize]) -> Option<Vec<(usize, usize)>> {
    MapStructure::build(graph, edges).map(|s| s.orientation)
}

/// Map-graph structure of an edge subset: per-vertex component ids over the
/// spanned vertices, and which vertices sit on their component's cycle core.
struct MapStructure {
    orientation: Vec<(usize, usize)>,
    /// Component id per vertex; usize::MAX off the spanned set.
    comp: Vec<usize>,
    comp_count: usize,
    /// Vertices surviving leaf peeling, i.e. on the unique cycles.
    core: Vec<bool>,
}

impl MapStructure {
    fn build(graph: &ColoredGraph, edges: &[usize]) -> Option<MapStructure> {
        let n = graph.n();
        let mut incident: Vec<Vec<(usize, usize)>> = vec![Vec::new(); n]; // (edge, other end)
        let mut degree = vec![0usize; n];
        for &id in edges {
            let e = graph.edge(id);
            incident[e.tail].push((id, e.head));
            incident[e.head].push((id, e.tail));
            degree[e.tail] += 1;
            degree[e.head] += 1;
        }
        for list in &mut incident {
            list.sort_unstable();
        }

        // Peel leaves; each removed edge points into its leaf.
        let mut removed_edge = vec![false; graph.m()];
        let mut orientation = Vec::with_capacity(edges.len());
        let mut queue: VecDeque<usize> = (0..n).filter(|&v| degree[v] == 1).collect();
        while let Some(v) = queue.pop_front() {
            if degree[v] != 1 {
                continue;
            }
            let &(id, other) = incident[v]
                .iter()
                .find(|&&(id, _)| !removed_edge[id])
                .expect("a degree-one vertex keeps exactly one live edge");
            removed_edge[id] = true;
            orientation.push((id, v));
            degree[v] = 0;
            degree[other] -= 1;
            if degree[other] == 1 {
                queue.push_back(other);
            }
        }

        // The core must be disjoint cycles: every remaining vertex degree 2.
        let core: Vec<bool> = degree.iter().map(|&d| d > 0).collect();
        if degree.iter().any(|&d| d != 0 && d != 2) {
            return None;
        }
        let mut edge_used = removed_edge;
        for start in 0..n {
            if !core[start] || incident[start].iter().all(|&(id, _)| edge_used[id]) {
                continue;
            }
            // Walk the cycle from `start`, orienting each step into its head.
            let mut at = start;
            loop {
                let &(id, next) = incident[at]
                    .iter()
                    .find(|&&(id, _)| !edge_used[id])
                    .expect("core vertices keep live edges until their cycle closes");
                edge_used[id] = true;
                orientation.push((id, next));
                at = next;
                if at == start && incident[at].iter().all(|&(id, _)| edge_used[id]) {
                    break;
                }
            }
        }
        if edges.iter().any(|&id| !edge_used[id]) {
            return None;
        }

        // Components over spanned vertices, and the tree/cycle census: a
        // component is a map-graph iff its edge and vertex counts agree.
        let mut comp = vec![usize::MAX; n];
        let mut comp_count = 0;
        for start in 0..n {
            if comp[start] != usize::MAX || incident[start].is_empty() {
                continue;
            }
            let mut stack = vec![start];
            comp[start] = comp_count;
            let mut vertices = 0usize;
            let mut edge_ends = 0usize;
            while let Some(v) = stack.pop() {
                vertices += 1;
                edge_ends += incident[v].len();
                for &(_, w) in &incident[v] {
                    if comp[w] == usize::MAX {
                        comp[w] = comp_count;
                        stack.push(w);
                    }
                }
            }
            if edge_ends != 2 * vertices {
                return None;
            }
            comp_count += 1;
        }

        orientation.sort_unstable();
        Some(MapStructure {
            orientation,
            comp,
            comp_count,
            core,
        })
    }

    /// Lowest core vertex of each component.
    fn bases(&self) -> Vec<usize> {
        let mut base = vec![usize::MAX; self.comp_count];
        for v in (0..self.comp.len()).rev() {
            if self.core[v] {
                base[self.comp[v]] = v;
            }
        }
        base
    }
}

/// One node of an overlap graph: a component base of one side of a fixed
/// two-part map-graph decomposition.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct OverlapNode {
    /// 0 for the first part, 1 for the second.
    pub part: usize,
    pub component: usize,
    pub base_vertex: usize,
}

/// Directed graph on the component bases of a two-part decomposition.
///
/// Each base of one part receives exactly one edge: from the base of the
/// other part's component containing it.
#[derive(Debug, Clone)]
pub struct OverlapGraph {
    pub nodes: Vec<OverlapNode>,
    pub edges: Vec<(usize, usize)>,
}

impl OverlapGraph {
    pub fn in_degrees(&self) -> Vec<usize> {
        let mut deg = vec![0usize; self.nodes.len()];
        for &(_, to) in &self.edges {
            deg[to] += 1;
        }
        deg
    }

    /// Whether every weakly connected component contains a directed cycle.
    pub fn directed_cycle_in_each_component(&self) -> bool {
        let n = self.nodes.len();
        let mut comp = vec![usize::MAX; n];
        let mut adj: Vec<Vec<usize>> = vec![Vec::new(); n];
        for &(from, to) in &self.edges {
            adj[from].push(to);
            adj[to].push(from);
        }
        let mut comp_count = 0;
        for start in 0..n {
            if comp[start] != usize::MAX {
                continue;
            }
            comp[start] = comp_count;
            let mut stack = vec![start];
            while let Some(v) = stack.pop() {
                for &w in &adj[v] {
                    if comp[w] == usize::MAX {
                        comp[w] = comp_count;
                        stack.push(w);
                    }
                }
            }
            comp_count += 1;
        }
        let mut incoming: Vec<Option<usize>> = vec![None; n];
        for &(from, to) in &self.edges {
            if incoming[to].is_some() {
                return false;
            }
            incoming[to] = Some(from);
        }
        // Follow unique in-edges backwards; a node revisited within the walk
        // certifies the component's cycle.
        let mut component_ok = vec![false; comp_count];
        for start in 0..n {
            let mut seen = vec![start];
            let mut at = start;
            while let Some(prev) = incoming[at] {
                if seen.contains(&prev) {
                    component_ok[comp[start]] = true;
                    break;
                }
                seen.push(prev);
                at = prev;
            }
        }
        component_ok.iter().take(comp_count).all(|&ok| ok)
    }
}

/// Overlap graph of an edge-disjoint pair of spanning map-graphs.
pub fn overlap_graph(
    graph: &ColoredGraph,
    first: &[usize],
    second: &[usize],
) -> Result<OverlapGraph, GraphError> {
    if first.iter().any(|id| second.contains(id)) {
        return Err(GraphError::Invalid(
            "decomposition parts must be edge-disjoint".into(),
        ));
    }
    let parts = [first, second];
    let mut structures = Vec::with_capacity(2);
    for (idx, part) in parts.iter().enumerate() {
        let s = MapStructure::build(graph, part).ok_or_else(|| {
            GraphError::Invalid(format!("part {} is not a map-graph", idx + 1))
        })?;
        if s.comp.contains(&usize::MAX) {
            return Err(GraphError::Invalid(format!(
                "part {} does not span every vertex",
                idx + 1
            )));
        }
        structures.push(s);
    }

    let mut nodes = Vec::new();
    let mut node_of = [Vec::new(), Vec::new()];
    for part in 0..2 {
        let bases = structures[part].bases();
        node_of[part] = vec![usize::MAX; bases.len()];
        for (component, &base_vertex) in bases.iter().enumerate() {
            node_of[part][component] = nodes.len();
            nodes.push(OverlapNode {
                part,
                component,
                base_vertex,
            });
        }
    }
    // The other part's component containing a base sends it an edge.
    let mut edges = Vec::new();
    for (node, &OverlapNode {
        part, base_vertex, ..
    }) in nodes.iter().enumerate()
    {
        let other = 1 - part;
        let container = structures[other].comp[base_vertex];
        edges.push((node_of[other][container], node));
    }
    edges.sort_unstable();
    Ok(OverlapGraph { nodes, edges })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::graph::{Edge, GraphCtx};
    use crate::group::Elem;
    use crate::sparsity::{partition_into_two, OneOneFamily, UnionOutcome};
    use rand::{Rng, SeedableRng};
    use rand_chacha::ChaCha8Rng;

    fn crystal_graph(k: u8, n: usize, edges: &[(usize, usize, [i64; 2], u8)]) -> ColoredGraph {
        let ctx = GraphCtx::crystal(k).unwrap();
        let list = edges
            .iter()
            .map(|&(u, v, t, r)| Edge {
                tail: u,
                head: v,
                color: Elem::new(t[0], t[1], r),
            })
            .collect();
        ColoredGraph::new(ctx, n, list).unwrap()
    }

    fn assert_in_degree_one(graph: &ColoredGraph, orientation: &[(usize, usize)]) {
        let mut deg = vec![0usize; graph.n()];
        for &(_, v) in orientation {
            deg[v] += 1;
        }
        let spanned: Vec<usize> = orientation
            .iter()
            .flat_map(|&(id, _)| {
                let e = graph.edge(id);
                [e.tail, e.head]
            })
            .collect();
        for (v, &d) in deg.iter().enumerate() {
            let want = usize::from(spanned.contains(&v));
            assert_eq!(d, want, "vertex {v}");
        }
    }

    #[test]
    fn single_loop_is_a_map_graph() {
        let g = crystal_graph(4, 1, &[(0, 0, [0, 0], 1)]);
        let orientation = map_orientation(&g, &[0]).unwrap();
        assert_eq!(orientation, vec![(0, 0)]);
    }

    #[test]
    fn tree_is_not_a_map_graph() {
        let g = crystal_graph(4, 3, &[(0, 1, [0, 0], 1), (1, 2, [1, 0], 0)]);
        assert_eq!(map_orientation(&g, &[0, 1]), None);
    }

    #[test]
    fn parallel_pair_forms_the_unique_cycle() {
        let g = crystal_graph(2, 2, &[(0, 1, [0, 0], 0), (0, 1, [1, 0], 0)]);
        let orientation = map_orientation(&g, &[0, 1]).unwrap();
        assert_in_degree_one(&g, &orientation);
    }

    #[test]
    fn two_independent_cycles_in_one_component_are_rejected() {
        let g = crystal_graph(2, 1, &[(0, 0, [1, 0], 0), (0, 0, [0, 1], 0)]);
        assert_eq!(map_orientation(&g, &[0, 1]), None);
    }

    #[test]
    fn cycle_with_pendant_tree_orients_every_vertex_once() {
        let g = crystal_graph(
            4,
            4,
            &[
                (0, 0, [0, 0], 1),
                (0, 1, [0, 0], 0),
                (1, 2, [1, 0], 0),
                (1, 3, [0, 1], 0),
            ],
        );
        let orientation = map_orientation(&g, &[0, 1, 2, 3]).unwrap();
        assert_in_degree_one(&g, &orientation);
    }

    #[test]
    fn overlap_graph_of_a_fixed_decomposition_has_in_degree_one_and_cycles() {
        // Two loops on separate vertices plus a connecting double edge:
        // {loop0, bridge01} and {loop1, bridge01'} are spanning map-graphs.
        let g = crystal_graph(
            4,
            2,
            &[
                (0, 0, [0, 0], 1),
                (1, 1, [0, 1], 0),
                (0, 1, [0, 0], 0),
                (0, 1, [1, 0], 0),
            ],
        );
        let overlap = overlap_graph(&g, &[0, 2], &[1, 3]).unwrap();
        assert!(overlap.in_degrees().iter().all(|&d| d == 1));
        assert!(overlap.directed_cycle_in_each_component());
    }

    #[test]
    fn overlap_rejects_non_spanning_parts() {
        let g = crystal_graph(4, 2, &[(0, 0, [0, 0], 1), (1, 1, [0, 1], 0)]);
        assert!(overlap_graph(&g, &[0], &[1]).is_err());
    }

    #[test]
    fn random_two_part_decompositions_always_satisfy_the_overlap_property() {
        let mut rng = ChaCha8Rng::seed_from_u64(72508);
        let mut checked = 0;
        for _ in 0..300 {
            let k = [2u8, 3, 4, 6][rng.gen_range(0..4)];
            let n = rng.gen_range(1..=3);
            let m = 2 * n;
            let edges: Vec<(usize, usize, [i64; 2], u8)> = (0..m)
                .map(|_| {
                    (
                        rng.gen_range(0..n),
                        rng.gen_range(0..n),
                        [rng.gen_range(-1..=1), rng.gen_range(-1..=1)],
                        rng.gen_range(0..k),
                    )
                })
                .collect();
            let graph = crystal_graph(k, n, &edges);
            let ids: Vec<usize> = (0..m).collect();
            // Rotation-family parts of a full split are spanning map-graphs.
            if let UnionOutcome::Partitioned(parts) =
                partition_into_two(&graph, OneOneFamily::Rotation, &ids)
            {
                let overlap = match overlap_graph(&graph, &parts[0], &parts[1]) {
                    Ok(o) => o,
                    Err(err) => panic!("parts {:?} not spanning maps: {err}", parts),
                };
                assert!(overlap.in_degrees().iter().all(|&d| d == 1));
                assert!(overlap.directed_cycle_in_each_component());
                checked += 1;
            }
        }
        assert!(checked > 0, "some random instances should decompose");
    }
}
