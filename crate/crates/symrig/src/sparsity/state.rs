//! Incremental independence oracles for the two (1,1)-style count matroids.
//!
//! Purpose: decide whether an edge set is independent in either the
//! lattice-rank matroid (rank n′ + ½·rep(Λ) − ½·ΣT) or the rotation-cycle
//! matroid (rank n′ − ½·ΣT), by replaying edge insertions through a
//! union-find whose classes carry walk labels and a subgroup descriptor.
//!
//! Notes: an in-component edge contributes one closed-walk element to its
//! component's subgroup; a cross-component edge conjugates the absorbed
//! component's subgroup onto the surviving base and joins.  Both rank
//! functions are evaluated from the tracked ΣT and lattice join, so a
//! single insertion gains rank 1 or 0 and nothing else.

use crate::graph::ColoredGraph;
use crate::group::{Elem, GroupCtx};
use crate::lattice::Lattice;
use crate::subgroup::{rep_dim, t_dim, SubgroupDesc};

/// Which count family a rank state evaluates.
///
/// `Lattice` is the family whose rank includes the global translation-lattice
/// term (the wallpaper-group loop matroid).  `Rotation` drops that term and
/// counts only per-component rotation classes; it serves both the cone
/// matroid (where lattices are trivial anyway) and its generalization to
/// wallpaper-group colors.
#[derive(Clone, Copy, PartialEq, Eq, Debug)]
pub enum OneOneFamily {
    Lattice,
    Rotation,
}

/// Union-find over vertices with walk labels and per-component subgroups.
///
/// `step[v]` labels the walk `parent[v] → v`; roots carry the identity.
/// `sub[r]` is the closed-walk subgroup of the component rooted at `r`,
/// expressed at that component's base.  `lattice` accumulates every
/// component lattice ever seen; conjugation during merges maps lattices by
/// a rotation power, which preserves rank for k=2 (the action is ±I) and
/// preserves nontriviality for k≥3, so the accumulated join always yields
/// the same rep value as the exact per-component join.
#[derive(Clone)]
pub struct RankState<'g> {
    graph: &'g ColoredGraph,
    group: GroupCtx,
    family: OneOneFamily,
    parent: Vec<usize>,
    step: Vec<Elem>,
    sub: Vec<SubgroupDesc>,
    lattice: Lattice,
    sum_t: usize,
    inserted: usize,
}

impl<'g> RankState<'g> {
    pub fn new(graph: &'g ColoredGraph, family: OneOneFamily) -> Self {
        let n = graph.n();
        RankState {
            graph,
            group: graph.group(),
            family,
            parent: (0..n).collect(),
            step: vec![Elem::identity(); n],
            sub: vec![SubgroupDesc::trivial(); n],
            lattice: Lattice::empty(),
            sum_t: 2 * n,
            inserted: 0,
        }
    }

    pub fn family(&self) -> OneOneFamily {
        self.family
    }

    /// Edges accepted so far.
    pub fn inserted(&self) -> usize {
        self.inserted
    }

    /// Current rank of the accepted edge set.
    pub fn rank(&self) -> usize {
        let rep = match self.family {
            OneOneFamily::Lattice => rep_dim(self.group, &self.lattice),
            OneOneFamily::Rotation => 0,
        };
        let rank2 = 2 * self.graph.n() + rep - self.sum_t;
        debug_assert!(rank2.is_multiple_of(2));
        rank2 / 2
    }

    /// Root of v's component and the walk label base → v, compressing paths.
    fn find(&mut self, v: usize) -> (usize, Elem) {
        let mut chain = Vec::new();
        let mut cur = v;
        while self.parent[cur] != cur {
            chain.push(cur);
            cur = self.parent[cur];
        }
        let root = cur;
        let mut eta = Elem::identity();
        for &node in chain.iter().rev() {
            eta = self.group.compose(eta, self.step[node]);
            self.parent[node] = root;
            self.step[node] = eta;
        }
        if v == root {
            (root, Elem::identity())
        } else {
            (root, eta)
        }
    }

    /// Try to insert an edge; commits and returns true iff the rank grows.
    pub fn insert(&mut self, edge_id: usize) -> bool {
        let e = self.graph.edge(edge_id);
        let g = self.group;
        let (ru, eta_u) = self.find(e.tail);
        let (rv, eta_v) = self.find(e.head);
        if ru == rv {
            // New closed walk at the component base.
            let rho = g.compose(g.compose(eta_u, e.color), g.inverse(eta_v));
            let cand = self.sub[ru].join_elem(g, rho);
            let dt = t_dim(&self.sub[ru]) - t_dim(&cand);
            let (drep, new_lat) = self.rep_gain(&cand);
            let gain2 = dt + drep;
            debug_assert!(gain2 == 0 || gain2 == 2);
            if gain2 != 2 {
                return false;
            }
            self.sub[ru] = cand;
            if let Some(nl) = new_lat {
                self.lattice = nl;
            }
            self.sum_t -= dt;
        } else {
            // δ relabels rv's base to ru coordinates: δ·s·δ⁻¹ for old walks s.
            let delta = g.compose(g.compose(eta_u, e.color), g.inverse(eta_v));
            let moved = self.sub[rv].conjugate(g, g.inverse(delta));
            let cand = self.sub[ru].join(g, &moved);
            let dt = t_dim(&self.sub[ru]) + t_dim(&self.sub[rv]) - t_dim(&cand);
            let (drep, new_lat) = self.rep_gain(&cand);
            let gain2 = dt + drep;
            debug_assert!(gain2 == 0 || gain2 == 2);
            if gain2 != 2 {
                return false;
            }
            self.parent[rv] = ru;
            self.step[rv] = delta;
            self.sub[ru] = cand;
            if let Some(nl) = new_lat {
                self.lattice = nl;
            }
            self.sum_t -= dt;
        }
        self.inserted += 1;
        true
    }

    /// Lattice-term rank gain from adopting `cand` (0 for the rotation family).
    fn rep_gain(&self, cand: &SubgroupDesc) -> (usize, Option<Lattice>) {
        match self.family {
            OneOneFamily::Lattice => {
                let nl = self.lattice.join(cand.lattice());
                let drep = rep_dim(self.group, &nl) - rep_dim(self.group, &self.lattice);
                (drep, Some(nl))
            }
            OneOneFamily::Rotation => (0, None),
        }
    }
}

/// Whether the edge set is independent in the chosen family's matroid.
pub fn one_one_independent(graph: &ColoredGraph, family: OneOneFamily, edges: &[usize]) -> bool {
    let mut ids = edges.to_vec();
    ids.sort_unstable();
    ids.dedup();
    if ids.len() != edges.len() {
        return false;
    }
    let mut state = RankState::new(graph, family);
    ids.iter().all(|&e| state.insert(e))
}

/// Rank of an arbitrary edge set.
pub fn set_rank(graph: &ColoredGraph, family: OneOneFamily, edges: &[usize]) -> usize {
    let mut ids = edges.to_vec();
    ids.sort_unstable();
    ids.dedup();
    let mut state = RankState::new(graph, family);
    for &e in &ids {
        state.insert(e);
    }
    state.rank()
}

/// Greedy maximal independent subset of `edges`, scanned in ascending id order.
pub fn greedy_basis(graph: &ColoredGraph, family: OneOneFamily, edges: &[usize]) -> Vec<usize> {
    let mut ids = edges.to_vec();
    ids.sort_unstable();
    ids.dedup();
    let mut state = RankState::new(graph, family);
    ids.retain(|&e| state.insert(e));
    ids
}

/// Fundamental circuit of `extra` with respect to an independent set.
///
/// Returns `{extra} ∪ {y ∈ independent : independent − y + extra is
/// independent}`, sorted ascending; a violating set with one more edge than
/// its rank.
pub fn fundamental_circuit(
    graph: &ColoredGraph,
    family: OneOneFamily,
    independent: &[usize],
    extra: usize,
) -> Vec<usize> {
    debug_assert!(one_one_independent(graph, family, independent));
    debug_assert!(!independent.contains(&extra));
    let mut circuit = vec![extra];
    for &y in independent {
        let mut swapped: Vec<usize> = independent.iter().copied().filter(|&x| x != y).collect();
        swapped.push(extra);
        if one_one_independent(graph, family, &swapped) {
            circuit.push(y);
        }
    }
    circuit.sort_unstable();
    circuit
}
