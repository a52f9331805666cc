//! The eight graph-class deciders behind a common strategy interface.
//!
//! Purpose: each class pairs a count target with a structural test — loop
//! classes check independence of the full edge set, doubled classes split
//! the edges into two independent parts, Laman classes probe every
//! single-edge doubling.  Wallpaper classes run the lattice-rank family on
//! wallpaper-colored graphs; cone classes run the rotation-cycle family on
//! cone-colored graphs; the rotation classes run the rotation-cycle family
//! directly on wallpaper-colored graphs.
//!
//! Notes: deciders are stateless and live in a static registry keyed by the
//! command-line class names.

use crate::graph::{ColoredGraph, GraphError};
use crate::lattice::Lattice;
use crate::subgroup::rep_dim;

use super::laman::LamanChecker;
use super::state::{fundamental_circuit, OneOneFamily, RankState};
use super::union::{greedy_union_parts, partition_into_two, UnionOutcome};
use super::{sparsity_values, SparsityValues};

/// Outcome of one class decision.
#[derive(Debug, Clone)]
pub struct SparsityReport {
    pub class_name: &'static str,
    pub in_class: bool,
    /// Edge count of the graph.
    pub m: usize,
    /// Edge count the class requires.
    pub target_m: i64,
    /// Counts of the whole graph.
    pub values: SparsityValues,
    /// Violating edge subset; satisfies m′ > (class count bound on it).
    pub witness: Option<Vec<usize>>,
    /// Certifying split for the doubled classes.
    pub decomposition: Option<[Vec<usize>; 2]>,
}

/// One graph class: a name for the command line and a decision procedure.
pub trait ClassDecider: Sync {
    fn name(&self) -> &'static str;
    fn summary(&self) -> &'static str;
    fn decide(&self, graph: &ColoredGraph) -> Result<SparsityReport, GraphError>;
}

struct WallpaperOneOne;
struct WallpaperTwoTwo;
struct WallpaperLaman;
struct ConeOneOne;
struct ConeTwoTwo;
struct ConeLamanClass;
struct RotationOneOne;
struct RotationTwoTwo;

pub static DECIDERS: [&dyn ClassDecider; 8] = [
    &WallpaperOneOne,
    &WallpaperTwoTwo,
    &WallpaperLaman,
    &ConeOneOne,
    &ConeTwoTwo,
    &ConeLamanClass,
    &RotationOneOne,
    &RotationTwoTwo,
];

/// Look up a decider by its command-line name.
pub fn decider(name: &str) -> Option<&'static dyn ClassDecider> {
    DECIDERS.iter().copied().find(|d| d.name() == name)
}

fn require_wallpaper(graph: &ColoredGraph, class: &str) -> Result<(), GraphError> {
    if graph.ctx().cone {
        return Err(GraphError::Invalid(format!(
            "class {class} needs a wallpaper-group graph, got a cone graph"
        )));
    }
    Ok(())
}

fn require_cone(graph: &ColoredGraph, class: &str) -> Result<(), GraphError> {
    if !graph.ctx().cone {
        return Err(GraphError::Invalid(format!(
            "class {class} needs a cone graph, got a wallpaper-group graph"
        )));
    }
    Ok(())
}

/// rep of the whole wallpaper group's translation lattice.
fn full_rep(graph: &ColoredGraph) -> i64 {
    rep_dim(graph.group(), &Lattice::full()) as i64
}

/// Loop classes: the full edge set must be independent and meet the target.
fn one_one_report(
    graph: &ColoredGraph,
    family: OneOneFamily,
    class_name: &'static str,
    target_m: i64,
) -> SparsityReport {
    let mut state = RankState::new(graph, family);
    let mut kept: Vec<usize> = Vec::new();
    let mut witness = None;
    for e in 0..graph.m() {
        if state.insert(e) {
            kept.push(e);
        } else {
            witness = Some(fundamental_circuit(graph, family, &kept, e));
            break;
        }
    }
    SparsityReport {
        class_name,
        in_class: witness.is_none() && graph.m() as i64 == target_m,
        m: graph.m(),
        target_m,
        values: sparsity_values(graph),
        witness,
        decomposition: None,
    }
}

/// Doubled classes: the edges must split into two independent parts.
fn two_two_report(
    graph: &ColoredGraph,
    family: OneOneFamily,
    class_name: &'static str,
    target_m: i64,
) -> SparsityReport {
    let all: Vec<usize> = (0..graph.m()).collect();
    let (witness, decomposition) = match partition_into_two(graph, family, &all) {
        UnionOutcome::Partitioned(parts) => (None, Some(parts)),
        UnionOutcome::Violation(w) => (Some(w), None),
    };
    SparsityReport {
        class_name,
        in_class: witness.is_none() && graph.m() as i64 == target_m,
        m: graph.m(),
        target_m,
        values: sparsity_values(graph),
        witness,
        decomposition,
    }
}

/// Laman classes: every single-edge doubling must still split.
fn laman_report(
    graph: &ColoredGraph,
    family: OneOneFamily,
    class_name: &'static str,
    target_m: i64,
) -> SparsityReport {
    let witness = LamanChecker::new(graph, family).witness(&(0..graph.m()).collect::<Vec<_>>());
    SparsityReport {
        class_name,
        in_class: witness.is_none() && graph.m() as i64 == target_m,
        m: graph.m(),
        target_m,
        values: sparsity_values(graph),
        witness,
        decomposition: None,
    }
}

impl ClassDecider for WallpaperOneOne {
    fn name(&self) -> &'static str {
        "g11"
    }
    fn summary(&self) -> &'static str {
        "spanning map-graph plus half the lattice rep in extra edges, all independent"
    }
    fn decide(&self, graph: &ColoredGraph) -> Result<SparsityReport, GraphError> {
        require_wallpaper(graph, self.name())?;
        let target = graph.n() as i64 + full_rep(graph) / 2;
        Ok(one_one_report(graph, OneOneFamily::Lattice, self.name(), target))
    }
}

impl ClassDecider for WallpaperTwoTwo {
    fn name(&self) -> &'static str {
        "g22"
    }
    fn summary(&self) -> &'static str {
        "edge-disjoint union of two spanning loop-class graphs"
    }
    fn decide(&self, graph: &ColoredGraph) -> Result<SparsityReport, GraphError> {
        require_wallpaper(graph, self.name())?;
        let target = 2 * graph.n() as i64 + full_rep(graph);
        Ok(two_two_report(graph, OneOneFamily::Lattice, self.name(), target))
    }
}

impl ClassDecider for WallpaperLaman {
    fn name(&self) -> &'static str {
        "laman"
    }
    fn summary(&self) -> &'static str {
        "one edge short of the doubled class, every single-edge doubling splits"
    }
    fn decide(&self, graph: &ColoredGraph) -> Result<SparsityReport, GraphError> {
        require_wallpaper(graph, self.name())?;
        let target = 2 * graph.n() as i64 + full_rep(graph) - 1;
        Ok(laman_report(graph, OneOneFamily::Lattice, self.name(), target))
    }
}

impl ClassDecider for ConeOneOne {
    fn name(&self) -> &'static str {
        "cone11"
    }
    fn summary(&self) -> &'static str {
        "spanning map-graph whose component cycles all rotate"
    }
    fn decide(&self, graph: &ColoredGraph) -> Result<SparsityReport, GraphError> {
        require_cone(graph, self.name())?;
        let target = graph.n() as i64;
        Ok(one_one_report(graph, OneOneFamily::Rotation, self.name(), target))
    }
}

impl ClassDecider for ConeTwoTwo {
    fn name(&self) -> &'static str {
        "cone22"
    }
    fn summary(&self) -> &'static str {
        "edge-disjoint union of two rotating spanning map-graphs"
    }
    fn decide(&self, graph: &ColoredGraph) -> Result<SparsityReport, GraphError> {
        require_cone(graph, self.name())?;
        let target = 2 * graph.n() as i64;
        Ok(two_two_report(graph, OneOneFamily::Rotation, self.name(), target))
    }
}

impl ClassDecider for ConeLamanClass {
    fn name(&self) -> &'static str {
        "conelaman"
    }
    fn summary(&self) -> &'static str {
        "2n−1 edges, every single-edge doubling splits into rotating map-graphs"
    }
    fn decide(&self, graph: &ColoredGraph) -> Result<SparsityReport, GraphError> {
        require_cone(graph, self.name())?;
        let target = 2 * graph.n() as i64 - 1;
        Ok(laman_report(graph, OneOneFamily::Rotation, self.name(), target))
    }
}

impl ClassDecider for RotationOneOne {
    fn name(&self) -> &'static str {
        "gc11"
    }
    fn summary(&self) -> &'static str {
        "map-graph on wallpaper colors whose component cycles have nonzero rotation class"
    }
    fn decide(&self, graph: &ColoredGraph) -> Result<SparsityReport, GraphError> {
        require_wallpaper(graph, self.name())?;
        let target = graph.n() as i64;
        Ok(one_one_report(graph, OneOneFamily::Rotation, self.name(), target))
    }
}

impl ClassDecider for RotationTwoTwo {
    fn name(&self) -> &'static str {
        "gc22"
    }
    fn summary(&self) -> &'static str {
        "edge-disjoint union of two rotation-class map-graphs on wallpaper colors"
    }
    fn decide(&self, graph: &ColoredGraph) -> Result<SparsityReport, GraphError> {
        require_wallpaper(graph, self.name())?;
        let target = 2 * graph.n() as i64;
        Ok(two_two_report(graph, OneOneFamily::Rotation, self.name(), target))
    }
}

/// Independence of an edge subset in the lattice-rank family.
pub fn gamma11_independent(graph: &ColoredGraph, edges: &[usize]) -> bool {
    super::state::one_one_independent(graph, OneOneFamily::Lattice, edges)
}

/// Independence of an edge subset in the rotation-cycle family.
pub fn rotation_cycle_independent(graph: &ColoredGraph, edges: &[usize]) -> bool {
    super::state::one_one_independent(graph, OneOneFamily::Rotation, edges)
}

/// Greedy rotation-cycle basis and its complement, in ascending id order.
///
/// On a loop-class graph this peels off a spanning rotating map-graph and
/// leaves the lattice-carrying extras as the complement.
pub fn rotation_basis(graph: &ColoredGraph) -> (Vec<usize>, Vec<usize>) {
    let all: Vec<usize> = (0..graph.m()).collect();
    let basis = super::state::greedy_basis(graph, OneOneFamily::Rotation, &all);
    let complement = all.into_iter().filter(|e| !basis.contains(e)).collect();
    (basis, complement)
}

/// Greedy maximal split into two rotation-cycle-independent parts.
///
/// On a doubled-class graph the two parts cover 2n edges and form a spanning
/// rotating two-part map-graph.
pub fn rotation_union_parts(graph: &ColoredGraph) -> [Vec<usize>; 2] {
    greedy_union_parts(graph, OneOneFamily::Rotation)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::graph::{Edge, GraphCtx};
    use crate::group::Elem;
    use crate::sparsity::{exhaustive_oracle, values_of_subset, LamanChecker};
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

    fn random_crystal(rng: &mut ChaCha8Rng, n_max: usize, m_max: usize) -> ColoredGraph {
        let k = [2u8, 3, 4, 6][rng.gen_range(0..4)];
        let n = rng.gen_range(1..=n_max);
        let m = rng.gen_range(0..=m_max);
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
    }

    fn random_cone(rng: &mut ChaCha8Rng, n_max: usize, m_max: usize) -> ColoredGraph {
        let k = [2u8, 3, 4, 6][rng.gen_range(0..4)];
        let n = rng.gen_range(1..=n_max);
        let m = rng.gen_range(0..=m_max);
        let edges: Vec<(usize, usize, u8)> = (0..m)
            .map(|_| {
                (
                    rng.gen_range(0..n),
                    rng.gen_range(0..n),
                    rng.gen_range(0..k),
                )
            })
            .collect();
        cone_graph(k, n, &edges)
    }

    #[test]
    fn registry_holds_all_eight_classes_under_their_flag_names() {
        let names: Vec<&str> = DECIDERS.iter().map(|d| d.name()).collect();
        assert_eq!(
            names,
            ["g11", "g22", "laman", "cone11", "cone22", "conelaman", "gc11", "gc22"]
        );
        for name in names {
            assert!(decider(name).is_some());
        }
        assert!(decider("nosuch").is_none());
    }

    #[test]
    fn deciders_reject_the_wrong_graph_context() {
        let crystal = crystal_graph(4, 1, &[(0, 0, [0, 0], 1)]);
        let cone = cone_graph(4, 1, &[(0, 0, 1)]);
        for name in ["g11", "g22", "laman", "gc11", "gc22"] {
            assert!(decider(name).unwrap().decide(&cone).is_err(), "{name}");
            assert!(decider(name).unwrap().decide(&crystal).is_ok(), "{name}");
        }
        for name in ["cone11", "cone22", "conelaman"] {
            assert!(decider(name).unwrap().decide(&crystal).is_err(), "{name}");
            assert!(decider(name).unwrap().decide(&cone).is_ok(), "{name}");
        }
    }

    #[test]
    fn quarter_turn_rotation_and_translation_loops_form_a_loop_class_graph() {
        let g = crystal_graph(4, 1, &[(0, 0, [0, 0], 1), (0, 0, [1, 0], 0)]);
        let report = decider("g11").unwrap().decide(&g).unwrap();
        assert!(report.in_class);
        assert_eq!(report.target_m, 2);
        assert!(report.witness.is_none());
    }

    #[test]
    fn identity_loop_reports_itself_as_the_loop_class_witness() {
        let g = crystal_graph(4, 1, &[(0, 0, [0, 0], 0), (0, 0, [1, 0], 0)]);
        let report = decider("g11").unwrap().decide(&g).unwrap();
        assert!(!report.in_class);
        assert_eq!(report.witness, Some(vec![0]));
    }

    #[test]
    fn four_loops_on_a_quarter_turn_vertex_split_into_two_loop_class_graphs() {
        let g = crystal_graph(
            4,
            1,
            &[
                (0, 0, [0, 0], 1),
                (0, 0, [1, 0], 0),
                (0, 0, [1, 0], 1),
                (0, 0, [0, 1], 0),
            ],
        );
        let report = decider("g22").unwrap().decide(&g).unwrap();
        assert!(report.in_class);
        assert_eq!(report.target_m, 4);
        let parts = report.decomposition.unwrap();
        assert!(gamma11_independent(&g, &parts[0]));
        assert!(gamma11_independent(&g, &parts[1]));
        assert_eq!(parts[0].len() + parts[1].len(), 4);
    }

    #[test]
    fn replacing_a_translation_loop_by_an_identity_loop_breaks_the_doubled_class() {
        let g = crystal_graph(
            4,
            1,
            &[
                (0, 0, [0, 0], 1),
                (0, 0, [1, 0], 0),
                (0, 0, [1, 0], 1),
                (0, 0, [0, 0], 0),
            ],
        );
        let report = decider("g22").unwrap().decide(&g).unwrap();
        assert!(!report.in_class);
        assert_eq!(report.witness, Some(vec![3]));
    }

    #[test]
    fn edgeless_graph_is_not_in_the_doubled_class_but_carries_no_witness() {
        let g = crystal_graph(4, 1, &[]);
        let report = decider("g22").unwrap().decide(&g).unwrap();
        assert!(!report.in_class);
        assert!(report.witness.is_none());
        assert_eq!(report.m, 0);
    }

    #[test]
    fn quarter_turn_three_loop_graph_is_laman_class() {
        let g = crystal_graph(4, 1, &[(0, 0, [0, 0], 1), (0, 0, [1, 0], 1), (0, 0, [1, 0], 0)]);
        let report = decider("laman").unwrap().decide(&g).unwrap();
        assert!(report.in_class);
        assert_eq!(report.target_m, 3);
    }

    #[test]
    fn rotation_loop_with_two_translation_loops_fails_laman_with_the_translation_pair() {
        let g = crystal_graph(4, 1, &[(0, 0, [0, 0], 1), (0, 0, [1, 0], 0), (0, 0, [0, 1], 0)]);
        let report = decider("laman").unwrap().decide(&g).unwrap();
        assert!(!report.in_class);
        assert_eq!(report.witness, Some(vec![1, 2]));
        let w = report.witness.unwrap();
        assert!((w.len() as i64) > values_of_subset(&g, &w).h);
    }

    #[test]
    fn half_turn_five_loop_graph_is_laman_class() {
        let g = crystal_graph(
            2,
            1,
            &[
                (0, 0, [0, 0], 1),
                (0, 0, [1, 0], 0),
                (0, 0, [0, 1], 0),
                (0, 0, [1, 1], 0),
                (0, 0, [1, 0], 1),
            ],
        );
        let report = decider("laman").unwrap().decide(&g).unwrap();
        assert_eq!(report.target_m, 5);
        assert!(report.in_class);
    }

    #[test]
    fn cone_single_rotation_loop_is_cone_laman() {
        let g = cone_graph(3, 1, &[(0, 0, 1)]);
        let report = decider("conelaman").unwrap().decide(&g).unwrap();
        assert!(report.in_class);
        assert_eq!(report.target_m, 1);
    }

    #[test]
    fn cone_identity_loop_is_not_cone_laman_sparse() {
        let g = cone_graph(3, 1, &[(0, 0, 0)]);
        let report = decider("conelaman").unwrap().decide(&g).unwrap();
        assert!(!report.in_class);
        assert_eq!(report.witness, Some(vec![0]));
    }

    #[test]
    fn cone_pair_of_rotation_loops_is_cone_doubled_class() {
        let g = cone_graph(3, 1, &[(0, 0, 1), (0, 0, 2)]);
        let report = decider("cone22").unwrap().decide(&g).unwrap();
        assert!(report.in_class);
        assert!(report.decomposition.is_some());
    }

    #[test]
    fn wallpaper_rotation_loop_is_rotation_class_and_translation_loop_is_not() {
        let rot = crystal_graph(4, 1, &[(0, 0, [0, 0], 1)]);
        assert!(decider("gc11").unwrap().decide(&rot).unwrap().in_class);
        let trans = crystal_graph(4, 1, &[(0, 0, [1, 0], 0)]);
        let report = decider("gc11").unwrap().decide(&trans).unwrap();
        assert!(!report.in_class);
        assert_eq!(report.witness, Some(vec![0]));
    }

    #[test]
    fn rotation_basis_of_the_loop_class_example_keeps_the_rotation_loop() {
        let g = crystal_graph(4, 1, &[(0, 0, [0, 0], 1), (0, 0, [1, 0], 0)]);
        let (basis, complement) = rotation_basis(&g);
        assert_eq!(basis, vec![0]);
        assert_eq!(complement, vec![1]);
    }

    #[test]
    fn loop_class_graphs_always_contain_a_spanning_rotation_basis() {
        let mut rng = ChaCha8Rng::seed_from_u64(72511);
        let mut hits = 0;
        for _ in 0..400 {
            let graph = random_crystal(&mut rng, 3, 6);
            let report = decider("g11").unwrap().decide(&graph).unwrap();
            if !report.in_class {
                continue;
            }
            hits += 1;
            let (basis, complement) = rotation_basis(&graph);
            assert_eq!(basis.len(), graph.n(), "edges={:?}", graph.edges());
            assert_eq!(basis.len() + complement.len(), graph.m());
            assert!(rotation_cycle_independent(&graph, &basis));
        }
        assert!(hits > 0);
    }

    #[test]
    fn doubled_class_graphs_always_contain_a_spanning_rotation_pair() {
        let mut rng = ChaCha8Rng::seed_from_u64(72512);
        let mut hits = 0;
        for _ in 0..400 {
            let graph = random_crystal(&mut rng, 2, 8);
            let report = decider("g22").unwrap().decide(&graph).unwrap();
            if !report.in_class {
                continue;
            }
            hits += 1;
            let parts = rotation_union_parts(&graph);
            assert_eq!(
                parts[0].len() + parts[1].len(),
                2 * graph.n(),
                "edges={:?}",
                graph.edges()
            );
            assert!(rotation_cycle_independent(&graph, &parts[0]));
            assert!(rotation_cycle_independent(&graph, &parts[1]));
        }
        assert!(hits > 0);
    }

    #[test]
    fn doubled_class_verdict_matches_the_exhaustive_oracle() {
        let mut rng = ChaCha8Rng::seed_from_u64(72513);
        for _ in 0..150 {
            let graph = random_crystal(&mut rng, 3, 8);
            let report = decider("g22").unwrap().decide(&graph).unwrap();
            let oracle = exhaustive_oracle(&graph, |g, ids| values_of_subset(g, ids).f).unwrap();
            let expect = oracle.sparse && graph.m() as i64 == report.target_m;
            assert_eq!(report.in_class, expect, "edges={:?}", graph.edges());
        }
    }

    #[test]
    fn laman_verdict_matches_the_exhaustive_oracle_for_both_contexts() {
        let mut rng = ChaCha8Rng::seed_from_u64(72514);
        for trial in 0..150 {
            let (graph, name) = if trial % 2 == 0 {
                (random_crystal(&mut rng, 3, 7), "laman")
            } else {
                (random_cone(&mut rng, 3, 7), "conelaman")
            };
            let report = decider(name).unwrap().decide(&graph).unwrap();
            let oracle = exhaustive_oracle(&graph, |g, ids| values_of_subset(g, ids).h).unwrap();
            let expect = (graph.m() == 0 || oracle.sparse) && graph.m() as i64 == report.target_m;
            assert_eq!(report.in_class, expect, "{name} edges={:?}", graph.edges());
        }
    }

    #[test]
    fn laman_class_membership_is_equivalent_to_every_doubling_splitting() {
        let mut rng = ChaCha8Rng::seed_from_u64(72515);
        for _ in 0..80 {
            let graph = random_crystal(&mut rng, 2, 6);
            if graph.m() == 0 {
                continue;
            }
            let laman = decider("laman").unwrap().decide(&graph).unwrap();
            let target = 2 * graph.n() as i64 + full_rep(&graph) - 1;
            let mut all_doublings_split = graph.m() as i64 == target;
            if all_doublings_split {
                for e in 0..graph.m() {
                    let doubled = graph.with_extra_edges(&[graph.edge(e)]).unwrap();
                    let report = decider("g22").unwrap().decide(&doubled).unwrap();
                    if !report.in_class {
                        all_doublings_split = false;
                        break;
                    }
                }
            }
            assert_eq!(laman.in_class, all_doublings_split, "edges={:?}", graph.edges());
        }
    }

    #[test]
    fn one_one_verdicts_match_the_exhaustive_oracle_under_the_halved_count() {
        let mut rng = ChaCha8Rng::seed_from_u64(72516);
        for _ in 0..150 {
            let graph = random_crystal(&mut rng, 3, 6);
            let report = decider("g11").unwrap().decide(&graph).unwrap();
            let oracle = exhaustive_oracle(&graph, |g, ids| values_of_subset(g, ids).g).unwrap();
            let expect = oracle.sparse && graph.m() as i64 == report.target_m;
            assert_eq!(report.in_class, expect, "edges={:?}", graph.edges());
        }
    }

    #[test]
    fn laman_sparsity_agrees_with_the_adjusted_invariant_count_class() {
        // The h and h′ counts define the same sparse graphs, though not the
        // same values on disconnected subgraphs.
        let mut rng = ChaCha8Rng::seed_from_u64(72517);
        for _ in 0..120 {
            let graph = random_crystal(&mut rng, 3, 7);
            if graph.m() == 0 {
                continue;
            }
            let sparse =
                LamanChecker::new(&graph, OneOneFamily::Lattice).witness(&(0..graph.m()).collect::<Vec<_>>()).is_none();
            let oracle =
                exhaustive_oracle(&graph, |g, ids| values_of_subset(g, ids).h_prime).unwrap();
            assert_eq!(sparse, oracle.sparse, "edges={:?}", graph.edges());
        }
    }

    #[test]
    fn cone_laman_graphs_are_connected() {
        let mut rng = ChaCha8Rng::seed_from_u64(72518);
        let mut hits = 0;
        for _ in 0..300 {
            let graph = random_cone(&mut rng, 3, 6);
            let report = decider("conelaman").unwrap().decide(&graph).unwrap();
            if !report.in_class {
                continue;
            }
            hits += 1;
            let inv = graph.invariants();
            let spanned: Vec<_> = inv.components.iter().filter(|c| c.edges > 0).collect();
            assert_eq!(spanned.len(), 1);
            assert_eq!(spanned[0].vertices.len(), graph.n());
        }
        assert!(hits > 0);
    }

    #[test]
    fn cone_laman_circuits_are_connected_and_match_the_two_structural_cases() {
        let mut rng = ChaCha8Rng::seed_from_u64(72519);
        let mut hits = 0;
        for _ in 0..200 {
            let graph = random_cone(&mut rng, 3, 6);
            let Some(circuit) = LamanChecker::new(&graph, OneOneFamily::Rotation).circuit()
            else {
                continue;
            };
            hits += 1;
            let inv = graph.subgraph_invariants(&circuit);
            let spanned: Vec<_> = inv.components.iter().filter(|c| c.edges > 0).collect();
            assert_eq!(spanned.len(), 1, "edges={:?}", graph.edges());
            if circuit.len() == 1 {
                // Identity loops are circuits all by themselves and fall
                // outside both structural cases below.
                assert!(graph.edge(circuit[0]).color.is_identity());
                continue;
            }
            let t = spanned[0].t_dim();
            let values = values_of_subset(&graph, &circuit);
            if t == 0 {
                // Rotating case: a doubled-class graph on its spanned vertices.
                assert_eq!(circuit.len() as i64, values.f);
            } else {
                // Translation-fixed case: strictly below 2n′ − 2 everywhere.
                for mask in 1u32..1 << circuit.len() {
                    let ids: Vec<usize> = circuit
                        .iter()
                        .enumerate()
                        .filter(|(i, _)| mask >> i & 1 == 1)
                        .map(|(_, &e)| e)
                        .collect();
                    let sub = graph.subgraph_invariants(&ids);
                    let n_sub = sub.spanned_vertices() as i64;
                    assert!(ids.len() as i64 <= 2 * n_sub - 2);
                }
            }
        }
        assert!(hits > 0);
    }

    #[test]
    fn loop_class_family_admits_basis_exchange() {
        let mut rng = ChaCha8Rng::seed_from_u64(72520);
        let mut exchanges = 0;
        'outer: for _ in 0..2000 {
            let k = [2u8, 3, 4, 6][rng.gen_range(0..4)];
            let n = rng.gen_range(1..=2);
            let m = rng.gen_range(2..=8);
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
            let target = graph.n() + rep_dim(graph.group(), &Lattice::full()) / 2;
            // Two disjoint bases drawn from the shared edge pool.
            let all: Vec<usize> = (0..graph.m()).collect();
            let first = super::super::state::greedy_basis(&graph, OneOneFamily::Lattice, &all);
            if first.len() != target {
                continue;
            }
            let rest: Vec<usize> = all.iter().copied().filter(|e| !first.contains(e)).collect();
            let second = super::super::state::greedy_basis(&graph, OneOneFamily::Lattice, &rest);
            if second.len() != target {
                continue;
            }
            for &e in first.iter().filter(|e| !second.contains(e)) {
                let mut found = false;
                for &f in second.iter().filter(|f| !first.contains(f)) {
                    let mut swapped: Vec<usize> =
                        first.iter().copied().filter(|&x| x != e).collect();
                    swapped.push(f);
                    if gamma11_independent(&graph, &swapped) {
                        found = true;
                        break;
                    }
                }
                if !found {
                    panic!("no exchange for {e} between {:?} and {:?}", first, second);
                }
                exchanges += 1;
                if exchanges >= 50 {
                    break 'outer;
                }
            }
        }
        assert!(exchanges > 0, "random pools should yield disjoint bases");
    }
}
