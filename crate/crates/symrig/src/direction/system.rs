//! Assembly and exact solution of cone and crystallographic direction networks.
//!
//! Purpose: one linear row per colored edge constraining the lifted edge
//! vector Φ(γ_ij)·p_j − p_i to a prescribed direction, over the unknowns
//! p_1..p_n (and, in the crystallographic case, the pinned lattice
//! representation v₁ or v₁,v₂). Randomized exact rank, nullspace bases,
//! collapsed-edge detection, and the faithful verdict live here.
//!
//! Notes:
//! - Columns are [p_1x, p_1y, …, p_nx, p_ny, v₁x, v₁y(, v₂x, v₂y)]; the
//!   rotation is pinned at the origin, so no rotation-center unknowns exist.
//! - For k ≥ 3 the representation is one vector with v₂ = R·v₁ folded into
//!   the coefficients (counterclockwise convention); for k = 2 both v₁ and
//!   v₂ are free, giving four representation columns.
//! - A row with normal w reads ⟨Φ(γ)·p_j − p_i, w⟩ = 0. Direction systems
//!   use w = d⊥; the rigidity matrix reuses the same builder with w = the
//!   edge vector at a realization.

use crate::field::{rotation_matrix, Fp2, Scalar};
use crate::graph::{ColoredGraph, GraphError};
use crate::linalg;
use crate::lattice::Lattice;
use crate::subgroup::rep_dim;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

/// Counterclockwise quarter turn; a vector in direction d is exactly the
/// vectors orthogonal to perp(d).
pub fn perp<S: Scalar>(v: [S; 2]) -> [S; 2] {
    [-v[1], v[0]]
}

pub(crate) fn apply2<S: Scalar>(m: [[S; 2]; 2], v: [S; 2]) -> [S; 2] {
    [
        m[0][0] * v[0] + m[0][1] * v[1],
        m[1][0] * v[0] + m[1][1] * v[1],
    ]
}

/// Number of lattice-representation columns: 4 for k = 2, 2 for k ≥ 3,
/// 0 for cone graphs (no translations exist).
pub fn rep_width(graph: &ColoredGraph) -> usize {
    if graph.ctx().cone {
        0
    } else {
        rep_dim(graph.group(), &Lattice::full())
    }
}

/// A nonzero direction per edge.
#[derive(Clone, Debug)]
pub struct DirectionAssignment<S: Scalar> {
    dirs: Vec<[S; 2]>,
}

impl<S: Scalar> DirectionAssignment<S> {
    pub fn new(dirs: Vec<[S; 2]>) -> Result<Self, GraphError> {
        if let Some(pos) = dirs
            .iter()
            .position(|d| d[0].is_zero() && d[1].is_zero())
        {
            return Err(GraphError::Invalid(format!(
                "zero direction on edge {pos}"
            )));
        }
        Ok(DirectionAssignment { dirs })
    }

    pub fn dirs(&self) -> &[[S; 2]] {
        &self.dirs
    }

    pub fn len(&self) -> usize {
        self.dirs.len()
    }

    pub fn is_empty(&self) -> bool {
        self.dirs.is_empty()
    }
}

/// Independent uniform nonzero directions over F_p(√3), one per edge,
/// reproducible from the seed.
pub fn random_directions(graph: &ColoredGraph, seed: u64) -> DirectionAssignment<Fp2> {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let dirs = (0..graph.m())
        .map(|_| loop {
            let d = [Fp2::sample(&mut rng), Fp2::sample(&mut rng)];
            if !(d[0].is_zero() && d[1].is_zero()) {
                break d;
            }
        })
        .collect();
    DirectionAssignment { dirs }
}

/// Homogeneous system with one row per edge of the underlying graph.
pub struct LinearSystem<'g, S: Scalar> {
    graph: &'g ColoredGraph,
    rows: Vec<Vec<S>>,
    rep_cols: usize,
}

impl<'g, S: Scalar> LinearSystem<'g, S> {
    pub fn graph(&self) -> &'g ColoredGraph {
        self.graph
    }

    pub fn rows(&self) -> &[Vec<S>] {
        &self.rows
    }

    pub fn rep_cols(&self) -> usize {
        self.rep_cols
    }

    pub fn cols(&self) -> usize {
        2 * self.graph.n() + self.rep_cols
    }

    pub fn rank(&self) -> usize {
        linalg::rank(&self.rows, self.cols())
    }

    pub fn nullspace(&self) -> Vec<Vec<S>> {
        linalg::nullspace(&self.rows, self.cols())
    }
}

/// Shared row builder: row e reads ⟨Φ(γ_e)·p_j − p_i, w_e⟩ = 0.
///
/// Expansion per edge (i → j, color (t, s)) and normal w:
/// coefficient R^{−s}·w on p_j, −w on p_i, and on the representation columns
/// the inner products ⟨v, w⟩ pulled through Φ(γ)_t = t₁v₁ + t₂v₂.
pub fn system_from_normals<'g, S: Scalar>(
    graph: &'g ColoredGraph,
    normals: &[[S; 2]],
) -> LinearSystem<'g, S> {
    assert_eq!(normals.len(), graph.m(), "one normal per edge");
    let k = graph.ctx().k();
    let rep_cols = rep_width(graph);
    let cols = 2 * graph.n() + rep_cols;
    let vbase = 2 * graph.n();
    let mut rows = Vec::with_capacity(graph.m());
    for (e, &w) in graph.edges().iter().zip(normals) {
        let mut row = vec![S::zero(); cols];
        let back = apply2(rotation_matrix::<S>(k, -(e.color.r as i64)), w);
        row[2 * e.head] = row[2 * e.head] + back[0];
        row[2 * e.head + 1] = row[2 * e.head + 1] + back[1];
        row[2 * e.tail] = row[2 * e.tail] - w[0];
        row[2 * e.tail + 1] = row[2 * e.tail + 1] - w[1];
        if rep_cols > 0 {
            let t = [S::from_i64(e.color.t[0]), S::from_i64(e.color.t[1])];
            if k == 2 {
                // ⟨t₁v₁ + t₂v₂, w⟩ with v₁, v₂ free.
                for c in 0..2 {
                    row[vbase + c] = row[vbase + c] + t[0] * w[c];
                    row[vbase + 2 + c] = row[vbase + 2 + c] + t[1] * w[c];
                }
            } else {
                // v₂ = R·v₁, so ⟨v₂, w⟩ = ⟨v₁, R^{−1}·w⟩.
                let rw = apply2(rotation_matrix::<S>(k, -1), w);
                for c in 0..2 {
                    row[vbase + c] = row[vbase + c] + t[0] * w[c] + t[1] * rw[c];
                }
            }
        }
        rows.push(row);
    }
    LinearSystem {
        graph,
        rows,
        rep_cols,
    }
}

fn check_assignment<S: Scalar>(
    graph: &ColoredGraph,
    d: &DirectionAssignment<S>,
) -> Result<(), GraphError> {
    if d.len() != graph.m() {
        return Err(GraphError::Invalid(format!(
            "{} directions for {} edges",
            d.len(),
            graph.m()
        )));
    }
    Ok(())
}

pub fn build_cone_system<'g, S: Scalar>(
    graph: &'g ColoredGraph,
    d: &DirectionAssignment<S>,
) -> Result<LinearSystem<'g, S>, GraphError> {
    if !graph.ctx().cone {
        return Err(GraphError::Invalid(
            "cone system on a crystallographic graph".into(),
        ));
    }
    check_assignment(graph, d)?;
    let normals: Vec<[S; 2]> = d.dirs.iter().map(|&v| perp(v)).collect();
    Ok(system_from_normals(graph, &normals))
}

pub fn build_crystal_system<'g, S: Scalar>(
    graph: &'g ColoredGraph,
    d: &DirectionAssignment<S>,
) -> Result<LinearSystem<'g, S>, GraphError> {
    if graph.ctx().cone {
        return Err(GraphError::Invalid(
            "crystallographic system on a cone graph".into(),
        ));
    }
    check_assignment(graph, d)?;
    let normals: Vec<[S; 2]> = d.dirs.iter().map(|&v| perp(v)).collect();
    Ok(system_from_normals(graph, &normals))
}

/// The two linear functionals whose joint vanishing collapses edge `id`:
/// the coordinates of p_i − Φ(γ_ij)·p_j over the system columns.
pub fn collapse_functionals<S: Scalar>(graph: &ColoredGraph, id: usize) -> [Vec<S>; 2] {
    let k = graph.ctx().k();
    let rep_cols = rep_width(graph);
    let cols = 2 * graph.n() + rep_cols;
    let vbase = 2 * graph.n();
    let e = graph.edge(id);
    let mut fx = vec![S::zero(); cols];
    let mut fy = vec![S::zero(); cols];
    fx[2 * e.tail] = fx[2 * e.tail] + S::one();
    fy[2 * e.tail + 1] = fy[2 * e.tail + 1] + S::one();
    let rot = rotation_matrix::<S>(k, e.color.r as i64);
    for c in 0..2 {
        fx[2 * e.head + c] = fx[2 * e.head + c] - rot[0][c];
        fy[2 * e.head + c] = fy[2 * e.head + c] - rot[1][c];
    }
    if rep_cols > 0 {
        let t = [S::from_i64(e.color.t[0]), S::from_i64(e.color.t[1])];
        if k == 2 {
            fx[vbase] = fx[vbase] - t[0];
            fy[vbase + 1] = fy[vbase + 1] - t[0];
            fx[vbase + 2] = fx[vbase + 2] - t[1];
            fy[vbase + 3] = fy[vbase + 3] - t[1];
        } else {
            // Φ(γ)_t = (t₁·I + t₂·R)·v₁.
            let rot1 = rotation_matrix::<S>(k, 1);
            for c in 0..2 {
                let a0 = if c == 0 { t[0] } else { S::zero() };
                let a1 = if c == 1 { t[0] } else { S::zero() };
                fx[vbase + c] = fx[vbase + c] - (a0 + t[1] * rot1[0][c]);
                fy[vbase + c] = fy[vbase + c] - (a1 + t[1] * rot1[1][c]);
            }
        }
    }
    [fx, fy]
}

fn eval<S: Scalar>(f: &[S], x: &[S]) -> S {
    f.iter().zip(x).fold(S::zero(), |acc, (&a, &b)| acc + a * b)
}

/// Lifted edge vectors Φ(γ_ij)·p_j − p_i of a solution vector.
pub fn edge_vectors<S: Scalar>(graph: &ColoredGraph, x: &[S]) -> Vec<[S; 2]> {
    assert_eq!(x.len(), 2 * graph.n() + rep_width(graph));
    (0..graph.m())
        .map(|id| {
            let [fx, fy] = collapse_functionals(graph, id);
            [-eval(&fx, x), -eval(&fy, x)]
        })
        .collect()
}

/// Randomized certified rank: the maximum exact rank over direction draws.
#[derive(Clone, Copy, Debug)]
pub struct GenericRank {
    pub rank: usize,
    pub trials: usize,
    /// log₂ of the per-trial false-negative probability (Schwartz–Zippel):
    /// a maximal minor has total degree ≤ m in the sampled coordinates,
    /// and each coordinate is uniform over the p² field elements.
    pub failure_bound_log2: f64,
}

pub fn generic_rank(graph: &ColoredGraph, seed: u64, trials: usize) -> GenericRank {
    let rep_cols = rep_width(graph);
    let cap = graph.m().min(2 * graph.n() + rep_cols);
    let mut best = 0;
    let mut used = 0;
    for trial in 0..trials.max(1) {
        used = trial + 1;
        let trial_seed = seed.wrapping_add((trial as u64).wrapping_mul(0x9E37_79B9_7F4A_7C15));
        let d = random_directions(graph, trial_seed);
        let sys = if graph.ctx().cone {
            build_cone_system(graph, &d)
        } else {
            build_crystal_system(graph, &d)
        }
        .expect("random directions are nonzero");
        best = best.max(sys.rank());
        if best == cap {
            break;
        }
    }
    let bound = if graph.m() == 0 {
        f64::NEG_INFINITY
    } else {
        (graph.m() as f64).log2() - 122.0
    };
    GenericRank {
        rank: best,
        trials: used,
        failure_bound_log2: bound,
    }
}

/// Exact solution structure of an assembled system.
#[derive(Clone, Debug)]
pub struct RealizationResult<S: Scalar> {
    pub nullity: usize,
    /// Nullspace basis vectors over the system columns.
    pub basis: Vec<Vec<S>>,
    /// Edge ids collapsed in each basis vector.
    pub collapsed_per_vector: Vec<Vec<usize>>,
    /// Edges collapsed on the whole nullspace (vacuously all edges when the
    /// only solution is zero).
    pub generically_collapsed: Vec<usize>,
    /// True when a solution with no collapsed edge exists, with a nontrivial
    /// lattice representation in the crystallographic case.
    pub faithful: bool,
}

pub fn solve_realizations<S: Scalar>(system: &LinearSystem<'_, S>) -> RealizationResult<S> {
    let graph = system.graph;
    let basis = system.nullspace();
    let functionals: Vec<[Vec<S>; 2]> = (0..graph.m())
        .map(|id| collapse_functionals(graph, id))
        .collect();
    let collapsed_per_vector: Vec<Vec<usize>> = basis
        .iter()
        .map(|x| {
            (0..graph.m())
                .filter(|&id| {
                    let [fx, fy] = &functionals[id];
                    eval(fx, x).is_zero() && eval(fy, x).is_zero()
                })
                .collect()
        })
        .collect();
    // A functional vanishes on the span iff it vanishes on every basis
    // vector, so these are the edges collapsed in all solutions.
    let generically_collapsed: Vec<usize> = (0..graph.m())
        .filter(|&id| collapsed_per_vector.iter().all(|c| c.contains(&id)))
        .collect();
    // The nullspace minus a finite union of proper subspaces (one per edge,
    // plus the trivial-representation subspace) is nonempty over this field,
    // so the verdict needs only the per-subspace properness checks.
    let rep_part_nonzero = basis
        .iter()
        .any(|x| x[2 * graph.n()..].iter().any(|c| !c.is_zero()));
    let faithful = generically_collapsed.is_empty()
        && (system.rep_cols == 0 || rep_part_nonzero)
        && (graph.m() == 0 || !basis.is_empty());
    RealizationResult {
        nullity: basis.len(),
        basis,
        collapsed_per_vector,
        generically_collapsed,
        faithful,
    }
}
