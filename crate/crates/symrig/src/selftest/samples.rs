//! Random instance generators for the selftest suites.
//!
//! Purpose: produce deterministic colored graphs in every group context —
//! count-matched samples for the decomposition and doubling suites, grown
//! members of the −1-adjusted class for the realization suites, and their
//! circuit-carrying extensions — each derived from a per-instance seed.
//!
//! Notes: generators feeding a linear system never emit identity-colored
//! self-loops.  Such an edge subtracts a point from itself, so its row
//! vanishes at every realization: the edge cannot carry a direction, and
//! its singleton subgraph already breaks the subgraph rank bound (count −1
//! against rank 0).  Count-only suites keep identity self-loops; they
//! exercise the oracles on degenerate input.

use crate::graph::{ColoredGraph, Edge, GraphCtx};
use crate::group::Elem;
use crate::lattice::Lattice;
use crate::sparsity::{find_laman_circuit, laman_witness, OneOneFamily};
use crate::subgroup::rep_dim;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

/// The eight group contexts every suite ranges over.
pub fn contexts() -> Vec<GraphCtx> {
    let crystal = [2u8, 3, 4, 6].iter().map(|&k| GraphCtx::crystal(k).unwrap());
    let cone = [2u8, 3, 4, 6].iter().map(|&k| GraphCtx::cone(k).unwrap());
    crystal.chain(cone).collect()
}

/// Context tag used in violation reports.
pub fn context_name(ctx: GraphCtx) -> String {
    format!("{}{}", if ctx.cone { "cone" } else { "gamma" }, ctx.k())
}

/// The (1,1) count family matching the context.
pub fn family_of(ctx: GraphCtx) -> OneOneFamily {
    if ctx.cone {
        OneOneFamily::Rotation
    } else {
        OneOneFamily::Lattice
    }
}

/// Width of the lattice-representation block: 0 on cones.
pub fn rep_block(ctx: GraphCtx) -> usize {
    if ctx.cone {
        0
    } else {
        rep_dim(ctx.group, &Lattice::full())
    }
}

/// Split one master seed into independent per-instance streams.
pub fn subseed(seed: u64, salt: u64, index: u64) -> u64 {
    let mut z = seed
        ^ salt.wrapping_mul(0x9E37_79B9_7F4A_7C15)
        ^ index.wrapping_mul(0xD6E8_FEB8_6659_FD93);
    z = (z ^ (z >> 30)).wrapping_mul(0xBF58_476D_1CE4_E5B9);
    z = (z ^ (z >> 27)).wrapping_mul(0x94D0_49BB_1331_11EB);
    z ^ (z >> 31)
}

fn random_color(rng: &mut ChaCha8Rng, ctx: GraphCtx) -> Elem {
    if ctx.cone {
        Elem::rotation(rng.gen_range(0..ctx.k()))
    } else {
        Elem::new(
            rng.gen_range(-2..=2),
            rng.gen_range(-2..=2),
            rng.gen_range(0..ctx.k()),
        )
    }
}

fn random_edge(rng: &mut ChaCha8Rng, ctx: GraphCtx, n: usize, allow_degenerate: bool) -> Edge {
    loop {
        let e = Edge {
            tail: rng.gen_range(0..n),
            head: rng.gen_range(0..n),
            color: random_color(rng, ctx),
        };
        if allow_degenerate || !(e.tail == e.head && e.color.is_identity()) {
            return e;
        }
    }
}

fn random_graph(
    ctx: GraphCtx,
    n: usize,
    m: usize,
    allow_degenerate: bool,
    rng: &mut ChaCha8Rng,
) -> ColoredGraph {
    let edges = (0..m)
        .map(|_| random_edge(rng, ctx, n, allow_degenerate))
        .collect();
    ColoredGraph::new(ctx, n, edges).expect("sampled edges are in range")
}

/// Random graph with n ≤ 3 and exactly the doubled-count target 2n + rep.
pub fn count_matched_graph(ctx: GraphCtx, seed: u64) -> ColoredGraph {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let n = rng.gen_range(1..=3);
    random_graph(ctx, n, 2 * n + rep_block(ctx), true, &mut rng)
}

/// Random graph with n ≤ 3 and 1 ≤ m ≤ max_m.
pub fn bounded_graph(ctx: GraphCtx, max_m: usize, seed: u64) -> ColoredGraph {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let n = rng.gen_range(1..=3);
    let m = rng.gen_range(1..=max_m);
    random_graph(ctx, n, m, true, &mut rng)
}

/// Random member of the −1-adjusted class: keep a proposed edge while the
/// doubled-graph test stays satisfiable, until m = 2n + rep − 1.
pub fn laman_graph(ctx: GraphCtx, max_n: usize, seed: u64) -> ColoredGraph {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let family = family_of(ctx);
    loop {
        let n = rng.gen_range(1..=max_n);
        let target = 2 * n + rep_block(ctx) - 1;
        let mut graph = ColoredGraph::new(ctx, n, Vec::new()).expect("n ≥ 1");
        let mut stalled = 0;
        while graph.m() < target && stalled < 25 * target {
            let e = random_edge(&mut rng, ctx, n, false);
            let candidate = graph.with_extra_edges(&[e]).expect("edge in range");
            if laman_witness(&candidate, family).is_none() {
                graph = candidate;
                stalled = 0;
            } else {
                stalled += 1;
            }
        }
        if graph.m() == target {
            return graph;
        }
    }
}

/// A class member, one extra edge, and the circuit the extra edge closes.
pub struct CircuitInstance {
    pub graph: ColoredGraph,
    pub extended: ColoredGraph,
    /// Edge ids into `extended` of the minimal dependent subset.
    pub circuit: Vec<usize>,
}

pub fn circuit_instance(ctx: GraphCtx, max_n: usize, seed: u64) -> CircuitInstance {
    let graph = laman_graph(ctx, max_n, seed);
    let mut rng = ChaCha8Rng::seed_from_u64(seed ^ 0xA076_1D64_78BD_642F);
    let extra = random_edge(&mut rng, ctx, graph.n(), false);
    let extended = graph.with_extra_edges(&[extra]).expect("edge in range");
    let circuit = find_laman_circuit(&extended, family_of(ctx))
        .expect("one edge past the class target is dependent");
    CircuitInstance {
        graph,
        extended,
        circuit,
    }
}

/// Random graph at the −1-adjusted count, free of degenerate edges; every
/// third instance is a grown class member so the rigid side of the verdict
/// stays populated at every size.
pub fn rigidity_candidate(ctx: GraphCtx, max_n: usize, seed: u64, index: usize) -> ColoredGraph {
    if index % 3 == 2 {
        return laman_graph(ctx, max_n, seed);
    }
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let n = rng.gen_range(1..=max_n);
    random_graph(ctx, n, 2 * n + rep_block(ctx) - 1, false, &mut rng)
}
