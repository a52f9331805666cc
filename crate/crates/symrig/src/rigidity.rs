//! Frameworks, the pinned rigidity system, and cross-checked verdicts.
//!
//! Purpose: a framework pairs a colored graph with a real realization of its
//! quotient (a point per vertex plus the lattice-representation vectors; the
//! rotation center is pinned at the origin).  The rigidity system is the
//! direction system assembled from the framework's own edge vectors, so row
//! construction delegates to the shared builder.  Generic rigidity is decided
//! twice — by Laman-style sparsity of the quotient and by the exact rank of
//! the system at random field realizations — and the two verdicts must agree.
//!
//! Notes: rotating every point and representation vector a quarter turn is an
//! infinitesimal motion of any realization, so the rank never reaches the
//! column count; a minimally rigid graph reaches 2n + rep − 1 (cone: 2n − 1)
//! and keeps exactly that one motion.  Realization picks small integer
//! directions whose network and perpendicular network both have full exact
//! rank, then extracts the unique floating solution by SVD.

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::direction::{
    edge_vectors, perp, rep_width, solve_realizations, system_from_normals, GenericRank,
    LinearSystem,
};
use crate::field::{Fp2, Scalar};
use crate::graph::{ColoredGraph, GraphError};
use crate::linalg::svd_nullspace;
use crate::sparsity::{LamanChecker, OneOneFamily};

/// Realizations per rank probe; each trial certifies independently.
const RANK_TRIALS: usize = 3;
/// Direction resamples before realization gives up.
const REALIZE_RETRIES: usize = 8;
/// Relative singular-value cutoff for the floating nullspace.
const SVD_REL_TOL: f64 = 1e-9;
/// Relative tolerance for supplied lengths and collapsed-edge detection.
const LENGTH_TOL: f64 = 1e-6;

/// A colored graph with a real realization of its quotient and edge lengths.
///
/// Coordinates are the system columns: two per vertex, then the
/// lattice-representation block (none on cone graphs).
#[derive(Clone, Debug)]
pub struct Framework {
    graph: ColoredGraph,
    coords: Vec<f64>,
    lengths: Vec<f64>,
}

impl Framework {
    /// Builds a framework, deriving lengths from the realization when none
    /// are supplied and validating supplied ones against it.
    pub fn new(
        graph: ColoredGraph,
        coords: Vec<f64>,
        lengths: Option<Vec<f64>>,
    ) -> Result<Framework, GraphError> {
        let want = 2 * graph.n() + rep_width(&graph);
        if coords.len() != want {
            return Err(GraphError::Invalid(format!(
                "realization has {} coordinates, expected {want}",
                coords.len()
            )));
        }
        let derived: Vec<f64> = edge_vectors(&graph, &coords)
            .iter()
            .map(|e| (e[0] * e[0] + e[1] * e[1]).sqrt())
            .collect();
        let lengths = match lengths {
            None => derived,
            Some(given) => {
                if given.len() != graph.m() {
                    return Err(GraphError::Invalid(format!(
                        "{} lengths for {} edges",
                        given.len(),
                        graph.m()
                    )));
                }
                for (id, (&l, &d)) in given.iter().zip(&derived).enumerate() {
                    if (l - d).abs() > LENGTH_TOL * (1.0 + d.abs()) {
                        return Err(GraphError::Invalid(format!(
                            "edge {id}: supplied length {l} but the realization gives {d}"
                        )));
                    }
                }
                given
            }
        };
        Ok(Framework {
            graph,
            coords,
            lengths,
        })
    }

    pub fn graph(&self) -> &ColoredGraph {
        &self.graph
    }

    pub fn coords(&self) -> &[f64] {
        &self.coords
    }

    pub fn point(&self, v: usize) -> [f64; 2] {
        [self.coords[2 * v], self.coords[2 * v + 1]]
    }

    /// Lattice-representation coordinates following the points.
    pub fn rep_coords(&self) -> &[f64] {
        &self.coords[2 * self.graph.n()..]
    }

    pub fn lengths(&self) -> &[f64] {
        &self.lengths
    }

    pub fn edge_vectors(&self) -> Vec<[f64; 2]> {
        edge_vectors(&self.graph, &self.coords)
    }
}

/// Rigidity rows of a framework plus the ids of degenerate rows.
pub struct RigidityMatrix<'g> {
    system: LinearSystem<'g, f64>,
    degenerate: Vec<usize>,
}

impl<'g> RigidityMatrix<'g> {
    pub fn system(&self) -> &LinearSystem<'g, f64> {
        &self.system
    }

    /// Edges whose vector collapsed at this realization; their rows carry no
    /// constraint figure and taint any floating rank taken from the matrix.
    pub fn degenerate_edges(&self) -> &[usize] {
        &self.degenerate
    }
}

/// Assembles the rigidity system: the direction rows whose normals are the
/// framework's own edge vectors.
pub fn rigidity_system(framework: &Framework) -> RigidityMatrix<'_> {
    let vectors = framework.edge_vectors();
    let longest = vectors
        .iter()
        .map(|e| (e[0] * e[0] + e[1] * e[1]).sqrt())
        .fold(0.0f64, f64::max);
    let degenerate = vectors
        .iter()
        .enumerate()
        .filter(|(_, e)| (e[0] * e[0] + e[1] * e[1]).sqrt() <= LENGTH_TOL * longest.max(1.0))
        .map(|(id, _)| id)
        .collect();
    RigidityMatrix {
        system: system_from_normals(&framework.graph, &vectors),
        degenerate,
    }
}

/// The quarter-turn motion at a realization: rotating all points and
/// representation vectors a quarter turn is annihilated by every rigidity
/// row, because the quarter turn commutes with the whole representation.
pub fn rotation_motion<S: Scalar>(coords: &[S]) -> Vec<S> {
    coords
        .chunks_exact(2)
        .flat_map(|c| perp([c[0], c[1]]))
        .collect()
}

/// Certified rank of the rigidity system: the maximum exact rank over random
/// field realizations.  The quarter-turn motion caps the rank one below the
/// column count.
pub fn generic_rigidity_rank(graph: &ColoredGraph, seed: u64, trials: usize) -> GenericRank {
    let cols = 2 * graph.n() + rep_width(graph);
    let cap = graph.m().min(cols - 1);
    let mut best = 0;
    let mut used = 0;
    for trial in 0..trials.max(1) {
        used = trial + 1;
        let trial_seed = seed.wrapping_add((trial as u64).wrapping_mul(0x9E37_79B9_7F4A_7C15));
        let mut rng = ChaCha8Rng::seed_from_u64(trial_seed);
        let x: Vec<Fp2> = (0..cols).map(|_| Fp2::sample(&mut rng)).collect();
        let normals = edge_vectors(graph, &x);
        best = best.max(system_from_normals(graph, &normals).rank());
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

/// Generic rigidity of the symmetric framework a colored graph encodes.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum RigidityOutcome {
    MinimallyRigid,
    RigidRedundant,
    Flexible,
}

/// Both decision paths with their shared conclusion and diagnostics.
#[derive(Clone, Debug)]
pub struct RigidityVerdict {
    pub outcome: RigidityOutcome,
    pub combinatorial: RigidityOutcome,
    pub numeric: RigidityOutcome,
    /// Exact rank of the rigidity system over sampled realizations.
    pub rank: GenericRank,
    /// Rank a rigid graph must reach: 2n + rep − 1 (cone: 2n − 1).
    pub target_rank: usize,
    /// Size of a greedy basis of the Laman-family matroid.
    pub laman_rank: usize,
    /// Count-violating edge subset when the graph is not Laman-sparse.
    pub witness: Option<Vec<usize>>,
    /// Spanning minimally-rigid edge subset when one exists.
    pub spanning_basis: Option<Vec<usize>>,
}

fn verdict_core(
    graph: &ColoredGraph,
    seed: u64,
    trials: usize,
) -> Result<RigidityVerdict, GraphError> {
    let family = if graph.ctx().cone {
        OneOneFamily::Rotation
    } else {
        OneOneFamily::Lattice
    };
    let target = 2 * graph.n() + rep_width(graph) - 1;
    let all: Vec<usize> = (0..graph.m()).collect();
    let checker = LamanChecker::new(graph, family);
    let witness = checker.witness(&all);

    // Greedy basis of the Laman matroid; dependence persists on supersets,
    // so one pass yields a maximal independent set.
    let mut basis: Vec<usize> = Vec::new();
    for e in 0..graph.m() {
        basis.push(e);
        if !checker.is_sparse(&basis) {
            basis.pop();
        }
        if basis.len() == target {
            break;
        }
    }
    let laman_rank = basis.len();
    let combinatorial = if witness.is_none() && graph.m() == target {
        RigidityOutcome::MinimallyRigid
    } else if laman_rank == target {
        RigidityOutcome::RigidRedundant
    } else {
        RigidityOutcome::Flexible
    };

    let rank = generic_rigidity_rank(graph, seed, trials);
    let numeric = if rank.rank == target && graph.m() == target {
        RigidityOutcome::MinimallyRigid
    } else if rank.rank == target {
        RigidityOutcome::RigidRedundant
    } else {
        RigidityOutcome::Flexible
    };

    if combinatorial != numeric {
        return Err(GraphError::Invalid(format!(
            "rigidity paths disagree: sparsity says {combinatorial:?} (basis size {laman_rank}), \
             rank {} of target {target} says {numeric:?}",
            rank.rank
        )));
    }
    Ok(RigidityVerdict {
        outcome: combinatorial,
        combinatorial,
        numeric,
        rank,
        target_rank: target,
        laman_rank,
        witness,
        spanning_basis: (laman_rank == target).then_some(basis),
    })
}

/// Decides generic rigidity of a wallpaper-group graph both ways; the two
/// paths disagreeing is an error, never a silent pick.
pub fn is_generically_rigid(graph: &ColoredGraph, seed: u64) -> Result<RigidityVerdict, GraphError> {
    if graph.ctx().cone {
        return Err(GraphError::Invalid(
            "wallpaper rigidity verdict on a cone graph; use the cone verdict".into(),
        ));
    }
    verdict_core(graph, seed, RANK_TRIALS)
}

/// Decides generic rigidity of a cone graph both ways.
pub fn cone_rigidity(graph: &ColoredGraph, seed: u64) -> Result<RigidityVerdict, GraphError> {
    if !graph.ctx().cone {
        return Err(GraphError::Invalid(
            "cone rigidity verdict on a wallpaper-group graph".into(),
        ));
    }
    verdict_core(graph, seed, RANK_TRIALS)
}

/// Realizes a minimally rigid graph: random small integer directions that
/// are exactly generic together with their perpendiculars, solved over the
/// floats, normalized so the largest coordinate is one.
pub fn realize_generic_framework(graph: &ColoredGraph, seed: u64) -> Result<Framework, GraphError> {
    let family = if graph.ctx().cone {
        OneOneFamily::Rotation
    } else {
        OneOneFamily::Lattice
    };
    let target = 2 * graph.n() + rep_width(graph) - 1;
    let all: Vec<usize> = (0..graph.m()).collect();
    if graph.m() != target || LamanChecker::new(graph, family).witness(&all).is_some() {
        return Err(GraphError::Invalid(format!(
            "realization needs a minimally rigid graph: {} edges, target {target}",
            graph.m()
        )));
    }
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    for _ in 0..REALIZE_RETRIES {
        let dirs: Vec<[i64; 2]> = (0..graph.m())
            .map(|_| loop {
                let d = [rng.gen_range(-9..=9), rng.gen_range(-9..=9)];
                if d != [0, 0] {
                    break d;
                }
            })
            .collect();
        let exact: Vec<[Fp2; 2]> = dirs
            .iter()
            .map(|d| [Fp2::from_i64(d[0]), Fp2::from_i64(d[1])])
            .collect();
        let normals: Vec<[Fp2; 2]> = exact.iter().map(|&d| perp(d)).collect();
        let network = system_from_normals(graph, &normals);
        if network.rank() != target {
            continue;
        }
        // Normals equal to the directions assemble the perpendicular network.
        if system_from_normals(graph, &exact).rank() != target {
            continue;
        }
        let solved = solve_realizations(&network);
        if solved.nullity != 1 || !solved.faithful {
            continue;
        }
        let float_normals: Vec<[f64; 2]> = dirs
            .iter()
            .map(|&d| perp([d[0] as f64, d[1] as f64]))
            .collect();
        let float_network = system_from_normals(graph, &float_normals);
        let mut kernel = svd_nullspace(float_network.rows(), float_network.cols(), SVD_REL_TOL);
        if kernel.len() != 1 {
            continue;
        }
        let mut coords = kernel.pop().expect("one kernel vector");
        let pivot = coords
            .iter()
            .enumerate()
            .max_by(|a, b| a.1.abs().partial_cmp(&b.1.abs()).expect("finite"))
            .map(|(i, _)| i)
            .expect("nonempty coordinates");
        let scale = coords[pivot];
        for c in &mut coords {
            *c /= scale;
        }
        let framework = Framework::new(graph.clone(), coords, None)?;
        if rigidity_system(&framework).degenerate_edges().is_empty() {
            return Ok(framework);
        }
    }
    Err(GraphError::Invalid(format!(
        "no generic directions found in {REALIZE_RETRIES} attempts"
    )))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::direction::{build_crystal_system, DirectionAssignment};
    use crate::graph::{Edge, GraphCtx};
    use crate::group::Elem;
    use crate::linalg;

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

    fn cone_graph(k: u8, n: usize, edges: &[(usize, usize, u8)]) -> ColoredGraph {
        let ctx = GraphCtx::cone(k).unwrap();
        let list = edges
            .iter()
            .map(|&(u, v, r)| Edge {
                tail: u,
                head: v,
                color: Elem::rotation(r),
            })
            .collect();
        ColoredGraph::new(ctx, n, list).unwrap()
    }

    fn quarter_turn_minimal_example() -> ColoredGraph {
        crystal_graph(4, 1, &[(0, 0, [0, 0], 1), (0, 0, [1, 0], 1), (0, 0, [1, 0], 0)])
    }

    #[test]
    fn identity_triangle_rows_match_the_classical_rigidity_matrix() {
        let g = crystal_graph(2, 3, &[(0, 1, [0, 0], 0), (1, 2, [0, 0], 0), (2, 0, [0, 0], 0)]);
        let coords = vec![0.0, 0.0, 1.0, 0.0, 0.0, 1.0, 0.0, 0.0, 0.0, 0.0];
        let f = Framework::new(g, coords, None).unwrap();
        let rig = rigidity_system(&f);
        let expected = [
            vec![-1.0, 0.0, 1.0, 0.0, 0.0, 0.0, 0.0, 0.0, 0.0, 0.0],
            vec![0.0, 0.0, 1.0, -1.0, -1.0, 1.0, 0.0, 0.0, 0.0, 0.0],
            vec![0.0, -1.0, 0.0, 0.0, 0.0, 1.0, 0.0, 0.0, 0.0, 0.0],
        ];
        assert_eq!(rig.system().rows(), &expected);
        assert_eq!(rig.system().rank(), 3);
        assert!(rig.degenerate_edges().is_empty());
        assert_eq!(f.lengths()[0], 1.0);
    }

    #[test]
    fn rigidity_rows_equal_direction_rows_built_from_edge_vector_normals() {
        let g = quarter_turn_minimal_example();
        let f = realize_generic_framework(&g, 11).unwrap();
        let rig = rigidity_system(&f);
        let dirs: Vec<[f64; 2]> = f.edge_vectors().iter().map(|&e| [e[1], -e[0]]).collect();
        let d = DirectionAssignment::new(dirs).unwrap();
        let system = build_crystal_system(f.graph(), &d).unwrap();
        for (a, b) in rig.system().rows().iter().zip(system.rows()) {
            let a_bits: Vec<u64> = a.iter().map(|x| x.to_bits()).collect();
            let b_bits: Vec<u64> = b.iter().map(|x| x.to_bits()).collect();
            assert_eq!(a_bits, b_bits);
        }
    }

    #[test]
    fn quarter_turn_example_realizes_faithfully_with_rank_three() {
        let g = quarter_turn_minimal_example();
        let f = realize_generic_framework(&g, 3).unwrap();
        assert!(f.lengths().iter().all(|&l| l > 1e-6));
        let rig = rigidity_system(&f);
        assert!(rig.degenerate_edges().is_empty());
        assert_eq!(generic_rigidity_rank(&g, 3, 3).rank, 3);
        let kernel = svd_nullspace(rig.system().rows(), rig.system().cols(), SVD_REL_TOL);
        assert_eq!(kernel.len(), 1);
    }

    #[test]
    fn scaling_the_realization_scales_rows_and_keeps_the_rank() {
        let g = crystal_graph(2, 3, &[(0, 1, [0, 0], 0), (1, 2, [0, 0], 0), (2, 0, [0, 0], 0)]);
        let coords = vec![0.0, 0.0, 1.0, 0.0, 0.0, 1.0, 0.0, 0.0, 0.0, 0.0];
        let doubled: Vec<f64> = coords.iter().map(|c| 2.0 * c).collect();
        let f1 = Framework::new(g.clone(), coords, None).unwrap();
        let f2 = Framework::new(g, doubled, None).unwrap();
        let r1 = rigidity_system(&f1);
        let r2 = rigidity_system(&f2);
        for (a, b) in r1.system().rows().iter().zip(r2.system().rows()) {
            for (x, y) in a.iter().zip(b) {
                assert_eq!(*y, 2.0 * *x);
            }
        }
        assert_eq!(r1.system().rank(), r2.system().rank());
    }

    #[test]
    fn minimal_example_reports_minimal_rigidity_on_both_paths() {
        let g = quarter_turn_minimal_example();
        let v = is_generically_rigid(&g, 5).unwrap();
        assert_eq!(v.outcome, RigidityOutcome::MinimallyRigid);
        assert_eq!(v.combinatorial, v.numeric);
        assert_eq!((v.rank.rank, v.target_rank), (3, 3));
        assert_eq!(v.spanning_basis, Some(vec![0, 1, 2]));
        assert!(v.witness.is_none());
    }

    #[test]
    fn two_translation_loops_make_the_quarter_turn_graph_flexible() {
        let g = crystal_graph(4, 1, &[(0, 0, [0, 0], 1), (0, 0, [1, 0], 0), (0, 0, [0, 1], 0)]);
        let v = is_generically_rigid(&g, 5).unwrap();
        assert_eq!(v.outcome, RigidityOutcome::Flexible);
        assert_eq!(v.witness, Some(vec![1, 2]));
        assert!(v.rank.rank < v.target_rank);
    }

    #[test]
    fn extra_loop_on_the_minimal_example_reports_redundant_rigidity() {
        let g = crystal_graph(
            4,
            1,
            &[
                (0, 0, [0, 0], 1),
                (0, 0, [1, 0], 1),
                (0, 0, [1, 0], 0),
                (0, 0, [0, 1], 1),
            ],
        );
        let v = is_generically_rigid(&g, 5).unwrap();
        assert_eq!(v.outcome, RigidityOutcome::RigidRedundant);
        assert_eq!(v.laman_rank, 3);
        assert_eq!(v.rank.rank, 3);
        assert_eq!(v.spanning_basis.as_ref().map(Vec::len), Some(3));
    }

    #[test]
    fn cone_loops_split_into_minimal_flexible_and_redundant_verdicts() {
        let rot = cone_graph(3, 1, &[(0, 0, 1)]);
        let v = cone_rigidity(&rot, 2).unwrap();
        assert_eq!(v.outcome, RigidityOutcome::MinimallyRigid);
        assert_eq!((v.rank.rank, v.target_rank), (1, 1));

        let fixed = cone_graph(3, 1, &[(0, 0, 0)]);
        let v = cone_rigidity(&fixed, 2).unwrap();
        assert_eq!(v.outcome, RigidityOutcome::Flexible);
        assert_eq!(v.rank.rank, 0);

        let both = cone_graph(3, 1, &[(0, 0, 1), (0, 0, 2)]);
        let v = cone_rigidity(&both, 2).unwrap();
        assert_eq!(v.outcome, RigidityOutcome::RigidRedundant);
        assert_eq!(v.spanning_basis, Some(vec![0]));
    }

    #[test]
    fn verdict_entry_points_reject_the_opposite_context() {
        let cone = cone_graph(3, 1, &[(0, 0, 1)]);
        assert!(is_generically_rigid(&cone, 1).is_err());
        let crystal = quarter_turn_minimal_example();
        assert!(cone_rigidity(&crystal, 1).is_err());
    }

    #[test]
    fn realize_rejects_graphs_outside_the_minimal_class() {
        let under = crystal_graph(4, 1, &[(0, 0, [0, 0], 1)]);
        assert!(realize_generic_framework(&under, 1).is_err());
        let loose = crystal_graph(4, 1, &[(0, 0, [0, 0], 1), (0, 0, [1, 0], 0), (0, 0, [0, 1], 0)]);
        assert!(realize_generic_framework(&loose, 1).is_err());
    }

    #[test]
    fn repeated_seeds_realize_identically() {
        let g = quarter_turn_minimal_example();
        let a = realize_generic_framework(&g, 9).unwrap();
        let b = realize_generic_framework(&g, 9).unwrap();
        assert_eq!(a.coords(), b.coords());
        assert_eq!(a.lengths(), b.lengths());
    }

    #[test]
    fn cone_loop_realizes_with_positive_length() {
        let g = cone_graph(4, 1, &[(0, 0, 1)]);
        let f = realize_generic_framework(&g, 1).unwrap();
        assert_eq!(f.lengths().len(), 1);
        assert!(f.lengths()[0] > 1e-6);
        assert!(f.rep_coords().is_empty());
    }

    #[test]
    fn all_zero_realization_marks_every_edge_degenerate() {
        let g = quarter_turn_minimal_example();
        let f = Framework::new(g, vec![0.0; 4], None).unwrap();
        assert_eq!(rigidity_system(&f).degenerate_edges(), &[0, 1, 2]);
    }

    #[test]
    fn supplied_lengths_must_match_the_realization() {
        let g = crystal_graph(2, 2, &[(0, 1, [0, 0], 0)]);
        let coords = vec![0.0, 0.0, 3.0, 4.0, 0.0, 0.0, 0.0, 0.0];
        assert!(Framework::new(g.clone(), coords.clone(), Some(vec![5.0])).is_ok());
        assert!(Framework::new(g.clone(), coords.clone(), Some(vec![5.0 + 1e-8])).is_ok());
        assert!(Framework::new(g.clone(), coords.clone(), Some(vec![4.9])).is_err());
        assert!(Framework::new(g, coords, Some(vec![5.0, 5.0])).is_err());
    }

    #[test]
    fn quarter_turn_motion_of_the_realization_annihilates_every_rigidity_row() {
        use rand::{Rng, SeedableRng};
        let mut rng = ChaCha8Rng::seed_from_u64(72511);
        for _ in 0..60 {
            let k = [2u8, 3, 4, 6][rng.gen_range(0..4)];
            let cone = rng.gen_bool(0.5);
            let n = rng.gen_range(1..=3);
            let m = rng.gen_range(1..=6);
            let graph = if cone {
                let edges: Vec<(usize, usize, u8)> = (0..m)
                    .map(|_| (rng.gen_range(0..n), rng.gen_range(0..n), rng.gen_range(0..k)))
                    .collect();
                cone_graph(k, n, &edges)
            } else {
                let edges: Vec<(usize, usize, [i64; 2], u8)> = (0..m)
                    .map(|_| {
                        (
                            rng.gen_range(0..n),
                            rng.gen_range(0..n),
                            [rng.gen_range(-2..=2), rng.gen_range(-2..=2)],
                            rng.gen_range(0..k),
                        )
                    })
                    .collect();
                crystal_graph(k, n, &edges)
            };
            let cols = 2 * graph.n() + rep_width(&graph);
            let x: Vec<Fp2> = (0..cols).map(|_| Fp2::sample(&mut rng)).collect();
            let normals = edge_vectors(&graph, &x);
            let system = system_from_normals(&graph, &normals);
            let motion = rotation_motion(&x);
            for value in linalg::apply(system.rows(), &motion) {
                assert!(value.is_zero());
            }
        }
    }

    #[test]
    fn random_minimal_count_graphs_always_agree_across_the_two_paths() {
        use rand::{Rng, SeedableRng};
        let mut rng = ChaCha8Rng::seed_from_u64(72512);
        let mut minimal = 0;
        let mut flexible = 0;
        for round in 0..80 {
            let k = [2u8, 3, 4, 6][rng.gen_range(0..4)];
            let cone = rng.gen_bool(0.3);
            let n = rng.gen_range(1..=3);
            let graph = if cone {
                let m = 2 * n - 1;
                let edges: Vec<(usize, usize, u8)> = (0..m)
                    .map(|_| (rng.gen_range(0..n), rng.gen_range(0..n), rng.gen_range(0..k)))
                    .collect();
                cone_graph(k, n, &edges)
            } else {
                let rep = if k == 2 { 4 } else { 2 };
                let m = 2 * n + rep - 1;
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
                crystal_graph(k, n, &edges)
            };
            let verdict = if graph.ctx().cone {
                cone_rigidity(&graph, round)
            } else {
                is_generically_rigid(&graph, round)
            };
            let v = verdict.unwrap_or_else(|e| panic!("edges={:?}: {e}", graph.edges()));
            match v.outcome {
                RigidityOutcome::MinimallyRigid => {
                    minimal += 1;
                    // Unique motion: rank one below the column count.
                    let cols = 2 * graph.n() + rep_width(&graph);
                    assert_eq!(v.rank.rank, cols - 1);
                }
                RigidityOutcome::Flexible => flexible += 1,
                RigidityOutcome::RigidRedundant => {}
            }
        }
        assert!(minimal > 0, "no minimally rigid instance sampled");
        assert!(flexible > 0, "no flexible instance sampled");
    }
}
