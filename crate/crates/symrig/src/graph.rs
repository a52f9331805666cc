//! Colored (gain) multigraphs over Γₖ or over the rotation classes Z/kZ.
//!
//! Purpose:
//! - A colored graph is a finite directed multigraph with a group-element color
//!   per edge; self-loops and parallel edges are allowed. Cone graphs restrict
//!   colors to pure rotation classes.
//! - A marked graph fixes, per connected component, a base vertex and a BFS
//!   spanning forest; each non-forest edge then determines a fundamental closed
//!   path whose color product ρ generates the component's subgroup image.
//! - Invariants (per-component translation dimension and the global lattice
//!   representation dimension) are independent of the marking; the BFS choice
//!   exists only for determinism.
//! - Lift fragments materialize a finite window of the infinite symmetric cover.
//!
//! Determinism:
//! - Base vertices are the lowest-numbered vertex of each component; BFS visits
//!   incident edges in edge-id order. Parsing keeps file order as edge ids;
//!   serialization sorts edges by (tail, head, color).

use std::collections::VecDeque;
use std::fmt::Write as _;

use crate::group::{Elem, GroupCtx};
use crate::lattice::Lattice;
use crate::subgroup::{rep_dim, subgroup_from_generators, t_dim, SubgroupDesc};

#[derive(Debug, thiserror::Error, PartialEq, Eq)]
pub enum GraphError {
    #[error("line {line}: {msg}")]
    Parse { line: usize, msg: String },
    #[error("{0}")]
    Invalid(String),
}

/// Group context of a graph: a wallpaper group Γₖ, or its rotation quotient
/// Z/kZ acting on a cone (colors then carry no translation part).
#[derive(Clone, Copy, PartialEq, Eq, Debug)]
pub struct GraphCtx {
    pub group: GroupCtx,
    pub cone: bool,
}

impl GraphCtx {
    pub fn crystal(k: u8) -> Option<Self> {
        GroupCtx::new(k).map(|group| GraphCtx { group, cone: false })
    }

    pub fn cone(k: u8) -> Option<Self> {
        GroupCtx::new(k).map(|group| GraphCtx { group, cone: true })
    }

    pub fn k(&self) -> u8 {
        self.group.k()
    }

    fn check_color(&self, color: Elem) -> Result<(), String> {
        if color.r >= self.k() {
            return Err(format!(
                "rotation class {} out of range for k = {}",
                color.r,
                self.k()
            ));
        }
        if self.cone && color.t != [0, 0] {
            return Err("cone colors carry no translation part".into());
        }
        Ok(())
    }
}

#[derive(Clone, Copy, PartialEq, Eq, Debug)]
pub struct Edge {
    pub tail: usize,
    pub head: usize,
    pub color: Elem,
}

#[derive(Clone, PartialEq, Eq, Debug)]
pub struct ColoredGraph {
    ctx: GraphCtx,
    n: usize,
    edges: Vec<Edge>,
}

impl ColoredGraph {
    pub fn new(ctx: GraphCtx, n: usize, edges: Vec<Edge>) -> Result<Self, GraphError> {
        if n == 0 {
            return Err(GraphError::Invalid("vertex count must be positive".into()));
        }
        for (id, e) in edges.iter().enumerate() {
            if e.tail >= n || e.head >= n {
                return Err(GraphError::Invalid(format!(
                    "edge {id} endpoint out of range"
                )));
            }
            ctx.check_color(e.color)
                .map_err(|msg| GraphError::Invalid(format!("edge {id}: {msg}")))?;
        }
        Ok(ColoredGraph { ctx, n, edges })
    }

    pub fn ctx(&self) -> GraphCtx {
        self.ctx
    }

    pub fn group(&self) -> GroupCtx {
        self.ctx.group
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn m(&self) -> usize {
        self.edges.len()
    }

    pub fn edges(&self) -> &[Edge] {
        &self.edges
    }

    pub fn edge(&self, id: usize) -> Edge {
        self.edges[id]
    }

    /// The same graph with extra edges appended (ids continue after the
    /// existing ones).
    pub fn with_extra_edges(&self, extra: &[Edge]) -> Result<ColoredGraph, GraphError> {
        let mut edges = self.edges.clone();
        edges.extend_from_slice(extra);
        ColoredGraph::new(self.ctx, self.n, edges)
    }

    /// Color product along a walk; reverse traversals contribute the inverse
    /// color. Steps are (edge id, forward?).
    pub fn rho(&self, steps: &[(usize, bool)]) -> Result<Elem, GraphError> {
        let g = self.group();
        let mut at: Option<usize> = None;
        let mut acc = Elem::identity();
        for &(id, forward) in steps {
            let e = self
                .edges
                .get(id)
                .ok_or_else(|| GraphError::Invalid(format!("edge id {id} out of range")))?;
            let (from, to, color) = if forward {
                (e.tail, e.head, e.color)
            } else {
                (e.head, e.tail, g.inverse(e.color))
            };
            if let Some(v) = at {
                if v != from {
                    return Err(GraphError::Invalid(format!(
                        "walk is not contiguous at edge {id}"
                    )));
                }
            }
            at = Some(to);
            acc = g.compose(acc, color);
        }
        Ok(acc)
    }

    pub fn invariants(&self) -> GraphInvariants {
        MarkedGraph::new(self).invariants()
    }

    /// Invariants of the subgraph spanned by the listed edges (other vertices
    /// appear as isolated singleton components).
    pub fn subgraph_invariants(&self, edge_ids: &[usize]) -> GraphInvariants {
        let mut mask = vec![false; self.m()];
        for &id in edge_ids {
            mask[id] = true;
        }
        MarkedGraph::with_mask(self, mask).invariants()
    }

    /// All lifted vertices i_γ with γ ranging over box translations times every
    /// rotation class (cone graphs: the k rotations), plus the edges of the
    /// cover with both ends in the window: i_γ → j_{γ·color}.
    pub fn lift_fragment(&self, bound: &LiftBound) -> Result<LiftFragment, GraphError> {
        if bound.x0 > bound.x1 || bound.y0 > bound.y1 {
            return Err(GraphError::Invalid("empty lift box".into()));
        }
        let g = self.group();
        let mut gammas = Vec::new();
        if self.ctx.cone {
            for s in 0..g.k() {
                gammas.push(Elem::rotation(s));
            }
        } else {
            for tx in bound.x0..=bound.x1 {
                for ty in bound.y0..=bound.y1 {
                    for s in 0..g.k() {
                        gammas.push(Elem::new(tx, ty, s));
                    }
                }
            }
        }
        let mut index = std::collections::HashMap::new();
        let mut vertices = Vec::with_capacity(gammas.len() * self.n);
        for &gamma in &gammas {
            for orig in 0..self.n {
                index.insert((orig, gamma), vertices.len());
                vertices.push(LiftVertex { orig, gamma });
            }
        }
        let mut lifted = Vec::new();
        for &gamma in &gammas {
            for (id, e) in self.edges.iter().enumerate() {
                let target = g.compose(gamma, e.color);
                if let Some(&to) = index.get(&(e.head, target)) {
                    lifted.push((index[&(e.tail, gamma)], to, id));
                }
            }
        }
        Ok(LiftFragment {
            vertices,
            edges: lifted,
        })
    }

    pub fn parse(text: &str) -> Result<ColoredGraph, GraphError> {
        let mut ctx: Option<GraphCtx> = None;
        let mut n: Option<usize> = None;
        let mut edges: Vec<Edge> = Vec::new();
        for (idx, raw) in text.lines().enumerate() {
            let line = idx + 1;
            let fail = |msg: String| GraphError::Parse { line, msg };
            let content = raw.split('#').next().unwrap_or("").trim();
            if content.is_empty() {
                continue;
            }
            let tokens: Vec<&str> = content.split_whitespace().collect();
            match tokens[0] {
                "group" => {
                    if ctx.is_some() {
                        return Err(fail("duplicate group directive".into()));
                    }
                    let [_, kind, kstr] = tokens[..] else {
                        return Err(fail("expected: group gamma|cone <k>".into()));
                    };
                    let k: u8 = kstr
                        .parse()
                        .map_err(|_| fail(format!("bad group order '{kstr}'")))?;
                    ctx = Some(match kind {
                        "gamma" => GraphCtx::crystal(k),
                        "cone" => GraphCtx::cone(k),
                        other => return Err(fail(format!("unknown group kind '{other}'"))),
                    }
                    .ok_or_else(|| fail(format!("unsupported order {k} (use 2, 3, 4, 6)")))?);
                }
                "vertices" => {
                    if n.is_some() {
                        return Err(fail("duplicate vertices directive".into()));
                    }
                    let [_, nstr] = tokens[..] else {
                        return Err(fail("expected: vertices <n>".into()));
                    };
                    let parsed: usize = nstr
                        .parse()
                        .map_err(|_| fail(format!("bad vertex count '{nstr}'")))?;
                    if parsed == 0 {
                        return Err(fail("vertex count must be positive".into()));
                    }
                    n = Some(parsed);
                }
                "edge" => {
                    let ctx = ctx.ok_or_else(|| fail("edge before group directive".into()))?;
                    let n = n.ok_or_else(|| fail("edge before vertices directive".into()))?;
                    let color;
                    let (tail_tok, head_tok);
                    if ctx.cone {
                        let [_, t, h, rstr] = tokens[..] else {
                            return Err(fail("expected: edge <tail> <head> <r>".into()));
                        };
                        (tail_tok, head_tok) = (t, h);
                        let r: u8 = rstr
                            .parse()
                            .map_err(|_| fail(format!("bad rotation class '{rstr}'")))?;
                        color = Elem::rotation(r);
                    } else {
                        let [_, t, h, trans, rstr] = tokens[..] else {
                            return Err(fail(
                                "expected: edge <tail> <head> (<tx>,<ty>) <r>".into(),
                            ));
                        };
                        (tail_tok, head_tok) = (t, h);
                        let inner = trans
                            .strip_prefix('(')
                            .and_then(|s| s.strip_suffix(')'))
                            .ok_or_else(|| fail(format!("bad translation '{trans}'")))?;
                        let (xs, ys) = inner
                            .split_once(',')
                            .ok_or_else(|| fail(format!("bad translation '{trans}'")))?;
                        let tx: i64 = xs
                            .trim()
                            .parse()
                            .map_err(|_| fail(format!("bad translation '{trans}'")))?;
                        let ty: i64 = ys
                            .trim()
                            .parse()
                            .map_err(|_| fail(format!("bad translation '{trans}'")))?;
                        let r: u8 = rstr
                            .parse()
                            .map_err(|_| fail(format!("bad rotation class '{rstr}'")))?;
                        color = Elem::new(tx, ty, r);
                    }
                    ctx.check_color(color).map_err(&fail)?;
                    let parse_vertex = |tok: &str| -> Result<usize, GraphError> {
                        let v: usize = tok
                            .parse()
                            .map_err(|_| fail(format!("bad vertex '{tok}'")))?;
                        if v < 1 || v > n {
                            return Err(fail(format!("vertex {v} out of range 1..={n}")));
                        }
                        Ok(v - 1)
                    };
                    edges.push(Edge {
                        tail: parse_vertex(tail_tok)?,
                        head: parse_vertex(head_tok)?,
                        color,
                    });
                }
                other => return Err(fail(format!("unknown directive '{other}'"))),
            }
        }
        let ctx = ctx.ok_or(GraphError::Parse {
            line: text.lines().count() + 1,
            msg: "missing group directive".into(),
        })?;
        let n = n.ok_or(GraphError::Parse {
            line: text.lines().count() + 1,
            msg: "missing vertices directive".into(),
        })?;
        ColoredGraph::new(ctx, n, edges)
    }

    pub fn serialize(&self) -> String {
        let mut out = String::new();
        let kind = if self.ctx.cone { "cone" } else { "gamma" };
        writeln!(out, "group {kind} {}", self.k()).unwrap();
        writeln!(out, "vertices {}", self.n).unwrap();
        let mut sorted = self.edges.clone();
        sorted.sort_by_key(|e| (e.tail, e.head, e.color));
        for e in sorted {
            if self.ctx.cone {
                writeln!(out, "edge {} {} {}", e.tail + 1, e.head + 1, e.color.r).unwrap();
            } else {
                writeln!(
                    out,
                    "edge {} {} ({},{}) {}",
                    e.tail + 1,
                    e.head + 1,
                    e.color.t[0],
                    e.color.t[1],
                    e.color.r
                )
                .unwrap();
            }
        }
        out
    }

    fn k(&self) -> u8 {
        self.ctx.k()
    }
}

#[derive(Clone, Copy, Debug)]
pub struct LiftBound {
    pub x0: i64,
    pub x1: i64,
    pub y0: i64,
    pub y1: i64,
}

#[derive(Clone, Copy, Debug)]
pub struct LiftVertex {
    pub orig: usize,
    pub gamma: Elem,
}

#[derive(Clone, Debug)]
pub struct LiftFragment {
    pub vertices: Vec<LiftVertex>,
    /// (lifted tail index, lifted head index, quotient edge id)
    pub edges: Vec<(usize, usize, usize)>,
}

#[derive(Clone, Debug)]
pub struct ComponentInfo {
    pub vertices: Vec<usize>,
    pub edges: usize,
    pub subgroup: SubgroupDesc,
}

impl ComponentInfo {
    pub fn t_dim(&self) -> usize {
        t_dim(&self.subgroup)
    }
}

#[derive(Clone, Debug)]
pub struct GraphInvariants {
    pub components: Vec<ComponentInfo>,
    /// Join of the per-component translation lattices.
    pub lattice: Lattice,
    pub rep: usize,
}

impl GraphInvariants {
    /// Vertices touched by at least one counted edge.
    pub fn spanned_vertices(&self) -> usize {
        self.components
            .iter()
            .filter(|c| c.edges > 0)
            .map(|c| c.vertices.len())
            .sum()
    }

    pub fn edge_count(&self) -> usize {
        self.components.iter().map(|c| c.edges).sum()
    }
}

/// A colored graph with deterministic base vertices and BFS spanning forest.
pub struct MarkedGraph<'g> {
    graph: &'g ColoredGraph,
    mask: Vec<bool>,
    forest: Vec<bool>,
    /// Per vertex: the forest step (edge id, traversed forward?) from its parent.
    parent_step: Vec<Option<(usize, bool)>>,
    component: Vec<usize>,
    bases: Vec<usize>,
    /// η_i: color product of the tree path base → i.
    eta: Vec<Elem>,
}

impl<'g> MarkedGraph<'g> {
    pub fn new(graph: &'g ColoredGraph) -> Self {
        MarkedGraph::with_mask(graph, vec![true; graph.m()])
    }

    pub fn with_mask(graph: &'g ColoredGraph, mask: Vec<bool>) -> Self {
        assert_eq!(mask.len(), graph.m());
        let g = graph.group();
        let n = graph.n();
        let mut incident: Vec<Vec<(usize, bool)>> = vec![Vec::new(); n];
        for (id, e) in graph.edges().iter().enumerate() {
            if !mask[id] {
                continue;
            }
            incident[e.tail].push((id, true));
            incident[e.head].push((id, false));
        }
        for list in &mut incident {
            list.sort_unstable();
        }

        let mut forest = vec![false; graph.m()];
        let mut parent_step = vec![None; n];
        let mut component = vec![usize::MAX; n];
        let mut bases = Vec::new();
        let mut eta = vec![Elem::identity(); n];
        for start in 0..n {
            if component[start] != usize::MAX {
                continue;
            }
            let comp = bases.len();
            bases.push(start);
            component[start] = comp;
            let mut queue = VecDeque::from([start]);
            while let Some(u) = queue.pop_front() {
                for &(id, forward) in &incident[u] {
                    let e = graph.edge(id);
                    let v = if forward { e.head } else { e.tail };
                    if component[v] != usize::MAX {
                        continue;
                    }
                    component[v] = comp;
                    forest[id] = true;
                    parent_step[v] = Some((id, forward));
                    let step_color = if forward { e.color } else { g.inverse(e.color) };
                    eta[v] = g.compose(eta[u], step_color);
                    queue.push_back(v);
                }
            }
        }
        MarkedGraph {
            graph,
            mask,
            forest,
            parent_step,
            component,
            bases,
            eta,
        }
    }

    pub fn graph(&self) -> &ColoredGraph {
        self.graph
    }

    pub fn num_components(&self) -> usize {
        self.bases.len()
    }

    pub fn component_of(&self, v: usize) -> usize {
        self.component[v]
    }

    pub fn base_of(&self, comp: usize) -> usize {
        self.bases[comp]
    }

    pub fn in_forest(&self, edge_id: usize) -> bool {
        self.forest[edge_id]
    }

    pub fn eta(&self, v: usize) -> Elem {
        self.eta[v]
    }

    fn tree_path_from_base(&self, v: usize) -> Vec<(usize, bool)> {
        let mut path = Vec::new();
        let mut at = v;
        while let Some((id, forward)) = self.parent_step[at] {
            path.push((id, forward));
            let e = self.graph.edge(id);
            at = if forward { e.tail } else { e.head };
        }
        path.reverse();
        path
    }

    /// The closed walk base → tail, edge, head → base of a non-forest edge.
    pub fn fundamental_closed_path(
        &self,
        edge_id: usize,
    ) -> Result<Vec<(usize, bool)>, GraphError> {
        if !self.mask[edge_id] {
            return Err(GraphError::Invalid(format!(
                "edge {edge_id} not in the marked subgraph"
            )));
        }
        if self.forest[edge_id] {
            return Err(GraphError::Invalid(format!(
                "edge {edge_id} lies in the spanning forest"
            )));
        }
        let e = self.graph.edge(edge_id);
        let mut path = self.tree_path_from_base(e.tail);
        path.push((edge_id, true));
        let mut back = self.tree_path_from_base(e.head);
        back.reverse();
        for step in &mut back {
            step.1 = !step.1;
        }
        path.extend(back);
        Ok(path)
    }

    /// ρ of the fundamental closed path: η_tail · color · η_head⁻¹.
    pub fn fundamental_rho(&self, edge_id: usize) -> Elem {
        debug_assert!(self.mask[edge_id] && !self.forest[edge_id]);
        let g = self.graph.group();
        let e = self.graph.edge(edge_id);
        g.compose(
            g.compose(self.eta[e.tail], e.color),
            g.inverse(self.eta[e.head]),
        )
    }

    /// ρ(π₁) of a component: generated by its fundamental closed paths.
    pub fn component_subgroup(&self, comp: usize) -> SubgroupDesc {
        let gens: Vec<Elem> = (0..self.graph.m())
            .filter(|&id| {
                self.mask[id]
                    && !self.forest[id]
                    && self.component[self.graph.edge(id).tail] == comp
            })
            .map(|id| self.fundamental_rho(id))
            .collect();
        subgroup_from_generators(self.graph.group(), &gens)
    }

    pub fn invariants(&self) -> GraphInvariants {
        let g = self.graph.group();
        let mut components = Vec::with_capacity(self.bases.len());
        let mut edge_counts = vec![0usize; self.bases.len()];
        for (id, e) in self.graph.edges().iter().enumerate() {
            if self.mask[id] {
                edge_counts[self.component[e.tail]] += 1;
            }
        }
        let mut lattice = Lattice::empty();
        for (comp, &edges) in edge_counts.iter().enumerate() {
            let vertices: Vec<usize> = (0..self.graph.n())
                .filter(|&v| self.component[v] == comp)
                .collect();
            let subgroup = self.component_subgroup(comp);
            lattice = lattice.join(subgroup.lattice());
            components.push(ComponentInfo {
                vertices,
                edges,
                subgroup,
            });
        }
        let rep = rep_dim(g, &lattice);
        GraphInvariants {
            components,
            lattice,
            rep,
        }
    }
}
