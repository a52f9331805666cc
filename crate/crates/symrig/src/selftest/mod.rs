//! Randomized verification suites behind the `selftest` CLI verb.
//!
//! Purpose: tie every decision path in the crate to an independent oracle
//! at desk scale — matroid rank axioms, radical arithmetic against brute
//! force word products, the matroid-union decomposition against subset
//! enumeration, doubled-count class verdicts against subset enumeration,
//! direction-network ranks, faithful realization, collapsed dimensions,
//! rigidity verdict agreement, the subgraph rank bound, the floating-point
//! projection gadgets, and the two equivalent top-count forms.
//!
//! Notes: every suite is deterministic given `SelftestConfig::seed`; each
//! instance draws from its own seed split, so reports never depend on
//! execution order.  Violation examples carry the context tag, instance
//! index, and offending data needed to rebuild the case by hand.

use crate::direction::{
    build_cone_system, build_crystal_system, construct_collapsed_basis, edge_vectors,
    generic_rank, projection_chain, projection_scale_factor, random_directions, rep_width,
    rotation_line_witness, solve_realizations, system_from_normals, DirectionAssignment,
    LinearSystem,
};
use crate::field::{rotation_matrix, Fp2, Scalar};
use crate::graph::{ColoredGraph, GraphCtx};
use crate::group::{Elem, GroupCtx};
use crate::linalg;
use crate::matroid::SubsetState;
use crate::rigidity::{cone_rigidity, is_generically_rigid, RigidityOutcome};
use crate::sparsity::{
    decider, exhaustive_oracle, one_one_independent, partition_into_two, values_of_subset,
    UnionOutcome,
};
use crate::subgroup::{
    cent_dim, radical, rep_dim, subgroup_from_generators, t_dim, teich_dim, word_ball,
    SubgroupDesc,
};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use std::time::Instant;

mod samples;

use samples::CircuitInstance;

/// How many failing cases a report keeps verbatim.
const RECORDED_EXAMPLES: usize = 3;

/// Scale knobs for one full run.  Counts are per group context (per
/// rotation order for the gadget suite).
#[derive(Clone, Copy, Debug)]
pub struct SelftestConfig {
    pub seed: u64,
    /// Vertex bound for the realization and rigidity suites.
    pub max_n: usize,
    /// Edge bound for the doubling suite.
    pub max_m: usize,
    pub matroid_triples: usize,
    pub radical_rounds: usize,
    pub decomposition_rounds: usize,
    pub doubling_rounds: usize,
    pub realization_rounds: usize,
    pub rigidity_rounds: usize,
    pub gadget_rounds: usize,
}

impl Default for SelftestConfig {
    fn default() -> Self {
        SelftestConfig {
            seed: 2512,
            max_n: 6,
            max_m: 10,
            matroid_triples: 10_000,
            radical_rounds: 5_000,
            decomposition_rounds: 1_000,
            doubling_rounds: 1_000,
            realization_rounds: 200,
            rigidity_rounds: 200,
            gadget_rounds: 1_000,
        }
    }
}

impl SelftestConfig {
    /// Same suites at a fraction of the scale, for unit tests.
    pub fn quick(seed: u64) -> Self {
        SelftestConfig {
            seed,
            max_n: 4,
            max_m: 8,
            matroid_triples: 200,
            radical_rounds: 120,
            decomposition_rounds: 40,
            doubling_rounds: 40,
            realization_rounds: 8,
            rigidity_rounds: 12,
            gadget_rounds: 50,
        }
    }
}

/// Outcome of one suite.
#[derive(Clone, Debug)]
pub struct CriterionReport {
    pub id: usize,
    pub name: &'static str,
    pub checks: usize,
    pub failures: usize,
    /// First few failing cases, with the data needed to rebuild them.
    pub examples: Vec<String>,
    /// Extra figures the suite reports beyond pass/fail.
    pub detail: String,
    pub seconds: f64,
}

impl CriterionReport {
    pub fn passed(&self) -> bool {
        self.failures == 0
    }

    /// One deterministic summary line; timing is deliberately excluded so
    /// identical inputs print identical reports.
    pub fn line(&self) -> String {
        let verdict = if self.passed() { "pass" } else { "FAIL" };
        let mut out = format!(
            "criterion {:>2} {:<26} {} [{} checks",
            self.id, self.name, verdict, self.checks
        );
        if self.failures > 0 {
            out.push_str(&format!(", {} violations", self.failures));
        }
        out.push(']');
        if !self.detail.is_empty() {
            out.push(' ');
            out.push_str(&self.detail);
        }
        out
    }
}

struct SuiteRun {
    checks: usize,
    failures: usize,
    examples: Vec<String>,
}

impl SuiteRun {
    fn new() -> Self {
        SuiteRun {
            checks: 0,
            failures: 0,
            examples: Vec::new(),
        }
    }

    fn check(&mut self, ok: bool, example: impl FnOnce() -> String) {
        self.checks += 1;
        if !ok {
            self.failures += 1;
            if self.examples.len() < RECORDED_EXAMPLES {
                self.examples.push(example());
            }
        }
    }

    fn finish(self, id: usize, name: &'static str, detail: String, start: Instant) -> CriterionReport {
        CriterionReport {
            id,
            name,
            checks: self.checks,
            failures: self.failures,
            examples: self.examples,
            detail,
            seconds: start.elapsed().as_secs_f64(),
        }
    }
}

/// Run all eleven suites in order.
pub fn run_all(cfg: &SelftestConfig) -> Vec<CriterionReport> {
    let c1 = matroid_axiom_suite(cfg);
    let c2 = radical_suite(cfg);
    let (c3, decomposition) = decomposition_suite(cfg);
    let (c4, doubling) = doubling_suite(cfg);
    let c5 = collapse_rank_suite(cfg, &decomposition);
    let (c6, circuits) = realization_suite(cfg);
    let c7 = collapsed_dimension_suite(cfg, &decomposition, &circuits);
    let (c8, rigid) = rigidity_agreement_suite(cfg);
    let c9 = subgraph_rank_bound_suite(cfg, &rigid);
    let c10 = projection_gadget_suite(cfg);
    let c11 = count_form_suite(cfg, &doubling);
    vec![c1, c2, c3, c4, c5, c6, c7, c8, c9, c10, c11]
}

const GROUP_ORDERS: [u8; 4] = [2, 3, 4, 6];

fn wide_elem(rng: &mut ChaCha8Rng, k: u8) -> Elem {
    Elem::new(
        rng.gen_range(-3..=3),
        rng.gen_range(-3..=3),
        rng.gen_range(0..k),
    )
}

fn narrow_elem(rng: &mut ChaCha8Rng, k: u8) -> Elem {
    Elem::new(
        rng.gen_range(-2..=2),
        rng.gen_range(-2..=2),
        rng.gen_range(0..k),
    )
}

/// Rank axioms of the group-copy matroid: non-negativity, monotonicity,
/// unit increments, and local submodularity on nested random states.
fn matroid_axiom_suite(cfg: &SelftestConfig) -> CriterionReport {
    let start = Instant::now();
    let mut run = SuiteRun::new();
    for (gi, &k) in GROUP_ORDERS.iter().enumerate() {
        let ctx = GroupCtx::new(k).unwrap();
        for i in 0..cfg.matroid_triples {
            let mut rng =
                ChaCha8Rng::seed_from_u64(samples::subseed(cfg.seed, 100 + gi as u64, i as u64));
            let n = rng.gen_range(1..=3);
            let mut a = SubsetState::new(ctx, n);
            for _ in 0..rng.gen_range(0..=4) {
                a.insert(wide_elem(&mut rng, k), rng.gen_range(0..n));
            }
            let mut b = a.clone();
            for _ in 0..rng.gen_range(0..=3) {
                b.insert(wide_elem(&mut rng, k), rng.gen_range(0..n));
            }
            let x = wide_elem(&mut rng, k);
            let copy = rng.gen_range(0..n);
            let ra = a.g1_rank() as i64;
            let rb = b.g1_rank() as i64;
            let mut ax = a;
            ax.insert(x, copy);
            let mut bx = b;
            bx.insert(x, copy);
            let rax = ax.g1_rank() as i64;
            let rbx = bx.g1_rank() as i64;
            let ok = ra >= 0
                && rb >= ra
                && (0..=1).contains(&(rax - ra))
                && (0..=1).contains(&(rbx - rb))
                && rax - ra >= rbx - rb;
            run.check(ok, || {
                format!("k={k} i={i}: ranks a={ra} b={rb} a+x={rax} b+x={rbx} for x={x:?}")
            });
        }
    }
    run.finish(1, "matroid-rank-axioms", String::new(), start)
}

/// Brute-force word products: every product of at most two factors drawn
/// from `gens` and their inverses must satisfy the claimed membership.
fn ball_inside(ctx: GroupCtx, gens: &[Elem], sup: &SubgroupDesc) -> bool {
    word_ball(ctx, gens, 2).iter().all(|&g| sup.contains(ctx, g))
}

/// Radical arithmetic: monotonicity, conjugation and translation
/// push-through invariance, root absorption, and the two-step rep − T law,
/// each cross-checked against brute-force word balls.
fn radical_suite(cfg: &SelftestConfig) -> CriterionReport {
    let start = Instant::now();
    let mut run = SuiteRun::new();
    for (gi, &k) in GROUP_ORDERS.iter().enumerate() {
        let ctx = GroupCtx::new(k).unwrap();
        for i in 0..cfg.radical_rounds {
            let mut rng =
                ChaCha8Rng::seed_from_u64(samples::subseed(cfg.seed, 200 + gi as u64, i as u64));
            let gens: Vec<Elem> = (0..rng.gen_range(0..=3))
                .map(|_| narrow_elem(&mut rng, k))
                .collect();
            let sub = subgroup_from_generators(ctx, &gens);
            let rad = radical(ctx, &sub);

            run.check(
                sub.is_subgroup_of(ctx, &rad) && ball_inside(ctx, &sub.generators(ctx), &rad),
                || format!("k={k} i={i}: Rad does not contain the subgroup, gens {gens:?}"),
            );

            // A bounded power landing on a nontrivial member pulls the
            // root into the radical.
            let g = narrow_elem(&mut rng, k);
            let has_member_power = (1..=24).any(|e| {
                let p = ctx.pow(g, e);
                !p.is_identity() && sub.contains(ctx, p)
            });
            if has_member_power {
                run.check(rad.contains(ctx, g), || {
                    format!("k={k} i={i}: root {g:?} escapes Rad of gens {gens:?}")
                });
            }

            // Containment of subgroups transfers to radicals.
            let sub_gens: Vec<Elem> = gens.iter().copied().filter(|_| rng.gen_bool(0.6)).collect();
            let smaller_rad = radical(ctx, &subgroup_from_generators(ctx, &sub_gens));
            run.check(
                smaller_rad.is_subgroup_of(ctx, &rad)
                    && ball_inside(ctx, &smaller_rad.generators(ctx), &rad),
                || format!("k={k} i={i}: Rad not monotone for {sub_gens:?} ⊆ {gens:?}"),
            );

            // Conjugation fixes translation-subgroup radicals.
            let trans = SubgroupDesc::translations(sub.lattice().clone());
            let by = narrow_elem(&mut rng, k);
            let rad_t = radical(ctx, &trans);
            let rad_c = radical(ctx, &trans.conjugate(ctx, by));
            run.check(
                rad_c.same_subgroup(ctx, &rad_t)
                    && ball_inside(ctx, &rad_c.generators(ctx), &rad_t)
                    && ball_inside(ctx, &rad_t.generators(ctx), &rad_c),
                || format!("k={k} i={i}: conjugating by {by:?} moved a translation radical"),
            );

            // Extending by translations commutes with the radical through
            // the translation part.
            let tgens: Vec<Elem> = (0..rng.gen_range(0..=2))
                .map(|_| Elem::translation(rng.gen_range(-2..=2), rng.gen_range(-2..=2)))
                .collect();
            let extra = subgroup_from_generators(ctx, &tgens);
            let joined_parts = SubgroupDesc::translations(sub.lattice().clone()).join(ctx, &extra);
            let whole_lattice = SubgroupDesc::translations(sub.join(ctx, &extra).lattice().clone());
            let lhs = radical(ctx, &joined_parts);
            let rhs = radical(ctx, &whole_lattice);
            run.check(
                lhs.same_subgroup(ctx, &rhs)
                    && ball_inside(ctx, &lhs.generators(ctx), &rhs)
                    && ball_inside(ctx, &rhs.generators(ctx), &lhs),
                || format!("k={k} i={i}: translation push-through failed for {tgens:?}"),
            );

            // Joining one element moves rep − T by 2 exactly outside the
            // radical and by 0 inside it.
            let g2 = narrow_elem(&mut rng, k);
            if !g2.is_identity() {
                let joined = sub.join_elem(ctx, g2);
                let before = rep_dim(ctx, sub.lattice()) as i64 - t_dim(&sub) as i64;
                let after = rep_dim(ctx, joined.lattice()) as i64 - t_dim(&joined) as i64;
                let expected = if rad.contains(ctx, g2) { 0 } else { 2 };
                run.check(after - before == expected, || {
                    format!(
                        "k={k} i={i}: rep − T moved by {} joining {g2:?} to gens {gens:?}",
                        after - before
                    )
                });
            }
        }
    }
    run.finish(2, "radical-lemmas", String::new(), start)
}

/// Two-part decomposition against exhaustive doubled-count enumeration,
/// with every returned split re-verified part by part.
fn decomposition_suite(cfg: &SelftestConfig) -> (CriterionReport, Vec<ColoredGraph>) {
    let start = Instant::now();
    let mut run = SuiteRun::new();
    let mut instances = Vec::new();
    for (ci, ctx) in samples::contexts().into_iter().enumerate() {
        let name = samples::context_name(ctx);
        let family = samples::family_of(ctx);
        for i in 0..cfg.decomposition_rounds {
            let graph =
                samples::count_matched_graph(ctx, samples::subseed(cfg.seed, 300 + ci as u64, i as u64));
            let all: Vec<usize> = (0..graph.m()).collect();
            let oracle =
                exhaustive_oracle(&graph, |g, s| values_of_subset(g, s).f).expect("m stays small");
            match partition_into_two(&graph, family, &all) {
                UnionOutcome::Partitioned(parts) => {
                    run.check(oracle.sparse, || {
                        format!(
                            "{name} i={i}: split exists but subset {:?} is over count",
                            oracle.worst
                        )
                    });
                    let part_target = graph.n() + samples::rep_block(ctx) / 2;
                    let mut seen: Vec<usize> =
                        parts.iter().flat_map(|p| p.iter().copied()).collect();
                    seen.sort_unstable();
                    let covers = |part: &[usize]| {
                        let mut hit = vec![false; graph.n()];
                        for &id in part {
                            hit[graph.edge(id).tail] = true;
                            hit[graph.edge(id).head] = true;
                        }
                        hit.into_iter().all(|h| h)
                    };
                    let ok = seen == all
                        && parts.iter().all(|p| p.len() == part_target)
                        && parts.iter().all(|p| one_one_independent(&graph, family, p))
                        && parts.iter().all(|p| covers(p));
                    run.check(ok, || {
                        format!("{name} i={i}: split {parts:?} fails to re-verify on {:?}", graph.edges())
                    });
                }
                UnionOutcome::Violation(r) => {
                    run.check(!oracle.sparse, || {
                        format!("{name} i={i}: violation {r:?} on an enumeration-sparse graph")
                    });
                    run.check(
                        (r.len() as i64) > values_of_subset(&graph, &r).f,
                        || format!("{name} i={i}: returned set {r:?} fits its own count"),
                    );
                }
            }
            instances.push(graph);
        }
    }
    (
        run.finish(3, "decomposition-equivalence", String::new(), start),
        instances,
    )
}

/// Doubled-graph class verdicts against exhaustive −1-adjusted counts.
fn doubling_suite(cfg: &SelftestConfig) -> (CriterionReport, Vec<(ColoredGraph, bool)>) {
    let start = Instant::now();
    let mut run = SuiteRun::new();
    let mut instances = Vec::new();
    for (ci, ctx) in samples::contexts().into_iter().enumerate() {
        let name = samples::context_name(ctx);
        let class = if ctx.cone { "conelaman" } else { "laman" };
        let d = decider(class).expect("registered class");
        let target = |n: usize| (2 * n + samples::rep_block(ctx)) as i64 - 1;
        for i in 0..cfg.doubling_rounds {
            let graph =
                samples::bounded_graph(ctx, cfg.max_m, samples::subseed(cfg.seed, 400 + ci as u64, i as u64));
            let oracle =
                exhaustive_oracle(&graph, |g, s| values_of_subset(g, s).h).expect("m stays small");
            let member = graph.m() as i64 == target(graph.n()) && oracle.sparse;
            match d.decide(&graph) {
                Ok(report) => {
                    run.check(report.in_class == member, || {
                        format!(
                            "{name} i={i}: decider {} vs enumeration {} on {:?}",
                            report.in_class,
                            member,
                            graph.edges()
                        )
                    });
                    if let Some(w) = &report.witness {
                        run.check((w.len() as i64) > values_of_subset(&graph, w).h, || {
                            format!("{name} i={i}: witness {w:?} fits its own count")
                        });
                    }
                }
                Err(e) => run.check(false, || format!("{name} i={i}: decider error: {e}")),
            }
            instances.push((graph, member));
        }
    }
    (
        run.finish(4, "doubling-equivalence", String::new(), start),
        instances,
    )
}

/// Generic direction-network rank on every doubled-count class member from
/// the decomposition suite: full rank in at most three exact trials.
fn collapse_rank_suite(cfg: &SelftestConfig, instances: &[ColoredGraph]) -> CriterionReport {
    let start = Instant::now();
    let mut run = SuiteRun::new();
    let mut members = 0usize;
    let mut worst = f64::NEG_INFINITY;
    for (i, graph) in instances.iter().enumerate() {
        let family = samples::family_of(graph.ctx());
        let all: Vec<usize> = (0..graph.m()).collect();
        if !matches!(
            partition_into_two(graph, family, &all),
            UnionOutcome::Partitioned(_)
        ) {
            continue;
        }
        members += 1;
        let gr = generic_rank(graph, samples::subseed(cfg.seed, 500, i as u64), 3);
        let expect = 2 * graph.n() + samples::rep_block(graph.ctx());
        worst = worst.max(gr.failure_bound_log2);
        run.check(gr.rank == expect && gr.trials <= 3, || {
            format!(
                "{} i={i}: rank {} of {expect} after {} trials on {:?}",
                samples::context_name(graph.ctx()),
                gr.rank,
                gr.trials,
                graph.edges()
            )
        });
        run.check(gr.failure_bound_log2 <= -60.0, || {
            format!(
                "{} i={i}: per-trial failure bound 2^{:.1} above 2^-60",
                samples::context_name(graph.ctx()),
                gr.failure_bound_log2
            )
        });
    }
    let detail = if members == 0 {
        "0 member instances".to_string()
    } else {
        format!(
            "{members} member instances; worst per-trial failure bound 2^{worst:.0}"
        )
    };
    run.finish(5, "network-collapse-rank", detail, start)
}

fn build_system<'g>(
    graph: &'g ColoredGraph,
    dirs: &DirectionAssignment<Fp2>,
) -> LinearSystem<'g, Fp2> {
    if graph.ctx().cone {
        build_cone_system(graph, dirs).expect("context matches")
    } else {
        build_crystal_system(graph, dirs).expect("context matches")
    }
}

/// Faithful realization on grown class members, and forced collapse of
/// every circuit once one dependent edge is added.
fn realization_suite(cfg: &SelftestConfig) -> (CriterionReport, Vec<CircuitInstance>) {
    let start = Instant::now();
    let mut run = SuiteRun::new();
    let mut instances = Vec::new();
    for (ci, ctx) in samples::contexts().into_iter().enumerate() {
        let name = samples::context_name(ctx);
        for i in 0..cfg.realization_rounds {
            let inst =
                samples::circuit_instance(ctx, cfg.max_n, samples::subseed(cfg.seed, 600 + ci as u64, i as u64));
            let dirs = random_directions(
                &inst.graph,
                samples::subseed(cfg.seed, 620 + ci as u64, i as u64),
            );
            let solved = solve_realizations(&build_system(&inst.graph, &dirs));
            run.check(
                solved.nullity == 1 && solved.faithful && solved.generically_collapsed.is_empty(),
                || {
                    format!(
                        "{name} i={i}: nullity {} faithful {} collapsed {:?} on {:?}",
                        solved.nullity,
                        solved.faithful,
                        solved.generically_collapsed,
                        inst.graph.edges()
                    )
                },
            );
            let dirs2 = random_directions(
                &inst.extended,
                samples::subseed(cfg.seed, 640 + ci as u64, i as u64),
            );
            let solved2 = solve_realizations(&build_system(&inst.extended, &dirs2));
            run.check(
                inst.circuit
                    .iter()
                    .all(|id| solved2.generically_collapsed.contains(id)),
                || {
                    format!(
                        "{name} i={i}: circuit {:?} not collapsed (collapsed {:?}) on {:?}",
                        inst.circuit,
                        solved2.generically_collapsed,
                        inst.extended.edges()
                    )
                },
            );
            instances.push(inst);
        }
    }
    (
        run.finish(6, "faithful-realization", String::new(), start),
        instances,
    )
}

/// rep(Λ) − rep(G) + ΣT over all components, isolated vertices included.
fn collapsed_formula(graph: &ColoredGraph) -> i64 {
    let inv = graph.invariants();
    let t_sum: usize = inv.components.iter().map(|c| c.t_dim()).sum();
    samples::rep_block(graph.ctx()) as i64 - inv.rep as i64 + t_sum as i64
}

/// Collapsed bases: exact solutions of random systems, independent, with
/// the predicted count; circuit nullities match the same formula.
fn collapsed_dimension_suite(
    cfg: &SelftestConfig,
    decomposition: &[ColoredGraph],
    circuits: &[CircuitInstance],
) -> CriterionReport {
    let start = Instant::now();
    let mut run = SuiteRun::new();
    let pool = decomposition
        .iter()
        .chain(circuits.iter().map(|inst| &inst.extended));
    for (i, graph) in pool.enumerate() {
        let name = samples::context_name(graph.ctx());
        let basis: Vec<Vec<Fp2>> = construct_collapsed_basis(graph);
        let cols = 2 * graph.n() + samples::rep_block(graph.ctx());
        run.check(basis.len() as i64 == collapsed_formula(graph), || {
            format!(
                "{name} i={i}: {} collapsed vectors, formula {} on {:?}",
                basis.len(),
                collapsed_formula(graph),
                graph.edges()
            )
        });
        run.check(linalg::rank(&basis, cols) == basis.len(), || {
            format!("{name} i={i}: collapsed basis is dependent")
        });
        for t in 0..2u64 {
            let dirs = random_directions(graph, samples::subseed(cfg.seed, 700 + t, i as u64));
            let sys = build_system(graph, &dirs);
            let exact = basis
                .iter()
                .all(|v| linalg::apply(sys.rows(), v).iter().all(|z| z.is_zero()));
            run.check(exact, || {
                format!("{name} i={i}: a collapsed vector misses system {t}")
            });
        }
    }
    for (j, inst) in circuits.iter().enumerate() {
        let name = samples::context_name(inst.extended.ctx());
        let edges: Vec<_> = inst.circuit.iter().map(|&id| inst.extended.edge(id)).collect();
        let circuit_graph = ColoredGraph::new(inst.extended.ctx(), inst.extended.n(), edges)
            .expect("circuit edges come from a valid graph");
        let cols = 2 * circuit_graph.n() + samples::rep_block(circuit_graph.ctx());
        let gr = generic_rank(&circuit_graph, samples::subseed(cfg.seed, 720, j as u64), 3);
        let nullity = (cols - gr.rank) as i64;
        run.check(nullity == collapsed_formula(&circuit_graph), || {
            format!(
                "{name} j={j}: circuit nullity {nullity}, formula {} on {:?}",
                collapsed_formula(&circuit_graph),
                circuit_graph.edges()
            )
        });
    }
    run.finish(7, "collapsed-dimensions", String::new(), start)
}

/// Combinatorial versus numeric rigidity verdicts at the −1-adjusted edge
/// count, with nullity pinned to one on minimally rigid instances.
fn rigidity_agreement_suite(cfg: &SelftestConfig) -> (CriterionReport, Vec<ColoredGraph>) {
    let start = Instant::now();
    let mut run = SuiteRun::new();
    let mut instances = Vec::new();
    let mut minimal = 0usize;
    let mut flexible = 0usize;
    for (ci, ctx) in samples::contexts().into_iter().enumerate() {
        let name = samples::context_name(ctx);
        for i in 0..cfg.rigidity_rounds {
            let graph = samples::rigidity_candidate(
                ctx,
                cfg.max_n,
                samples::subseed(cfg.seed, 800 + ci as u64, i as u64),
                i,
            );
            let seed = samples::subseed(cfg.seed, 820 + ci as u64, i as u64);
            let res = if ctx.cone {
                cone_rigidity(&graph, seed)
            } else {
                is_generically_rigid(&graph, seed)
            };
            match res {
                Ok(v) => {
                    run.check(v.combinatorial == v.numeric, || {
                        format!(
                            "{name} i={i}: column verdicts differ, {:?} vs {:?}",
                            v.combinatorial, v.numeric
                        )
                    });
                    if v.outcome == RigidityOutcome::MinimallyRigid {
                        minimal += 1;
                        let cols = 2 * graph.n() + rep_width(&graph);
                        run.check(v.rank.rank + 1 == cols, || {
                            format!(
                                "{name} i={i}: minimally rigid with nullity {}",
                                cols - v.rank.rank
                            )
                        });
                    } else {
                        flexible += 1;
                    }
                }
                Err(e) => run.check(false, || {
                    format!("{name} i={i}: verdict paths disagree: {e} on {:?}", graph.edges())
                }),
            }
            instances.push(graph);
        }
    }
    let detail = format!("{minimal} minimally rigid, {flexible} flexible");
    (
        run.finish(8, "rigidity-agreement", detail, start),
        instances,
    )
}

/// Sampled rigidity rank of every edge subset stays within the subset's
/// −1-adjusted count.
fn subgraph_rank_bound_suite(cfg: &SelftestConfig, instances: &[ColoredGraph]) -> CriterionReport {
    let start = Instant::now();
    let mut run = SuiteRun::new();
    let mut used = 0usize;
    for (i, graph) in instances.iter().enumerate() {
        let m = graph.m();
        if m > 12 {
            continue;
        }
        used += 1;
        let cols = 2 * graph.n() + rep_width(graph);
        let trials: Vec<Vec<Vec<Fp2>>> = (0..2u64)
            .map(|t| {
                let mut rng =
                    ChaCha8Rng::seed_from_u64(samples::subseed(cfg.seed, 900 + t, i as u64));
                let x: Vec<Fp2> = (0..cols).map(|_| Fp2::sample(&mut rng)).collect();
                system_from_normals(graph, &edge_vectors(graph, &x))
                    .rows()
                    .to_vec()
            })
            .collect();
        for mask in 1u32..(1u32 << m) {
            let ids: Vec<usize> = (0..m).filter(|&e| mask >> e & 1 == 1).collect();
            let h = values_of_subset(graph, &ids).h;
            let rank = trials
                .iter()
                .map(|rows| {
                    let sel: Vec<Vec<Fp2>> = ids.iter().map(|&e| rows[e].clone()).collect();
                    linalg::rank(&sel, cols)
                })
                .max()
                .unwrap();
            run.check((rank as i64) <= h, || {
                format!(
                    "{} i={i}: subset {ids:?} has rank {rank} over count {h} on {:?}",
                    samples::context_name(graph.ctx()),
                    graph.edges()
                )
            });
        }
    }
    let detail = format!("{used} instances within the subset budget");
    run.finish(9, "subgraph-rank-bound", detail, start)
}

fn unit_pair(rng: &mut ChaCha8Rng) -> [f64; 2] {
    loop {
        let v = [rng.gen_range(-1.0..=1.0), rng.gen_range(-1.0..=1.0)];
        if v[0] * v[0] + v[1] * v[1] >= 0.01 {
            return v;
        }
    }
}

fn norm(v: [f64; 2]) -> f64 {
    v[0].hypot(v[1])
}

/// Floating-point projection gadgets: order-2 factors vanish identically,
/// chain factors stay away from 1, and rotation-equation solutions sit on
/// the predicted carrier line.
fn projection_gadget_suite(cfg: &SelftestConfig) -> CriterionReport {
    let start = Instant::now();
    let mut run = SuiteRun::new();

    for (pi, &(k, r)) in [(2u8, 1i64), (4, 2), (6, 3)].iter().enumerate() {
        let mut produced = 0usize;
        let mut draw = 0u64;
        while produced < cfg.gadget_rounds && draw < 10 * cfg.gadget_rounds as u64 {
            let mut rng =
                ChaCha8Rng::seed_from_u64(samples::subseed(cfg.seed, 1000 + pi as u64, draw));
            draw += 1;
            let v = unit_pair(&mut rng);
            let w = unit_pair(&mut rng);
            if let Some(lambda) = projection_scale_factor(v, w, k, r) {
                produced += 1;
                run.check(lambda == 0.0, || {
                    format!("k={k} r={r}: λ = {lambda:e} for v={v:?} w={w:?}")
                });
            }
        }
        run.check(produced == cfg.gadget_rounds, || {
            format!("k={k} r={r}: sampler exhausted after {produced} factors")
        });
    }

    for (ki, &k) in [3u8, 4, 6].iter().enumerate() {
        let mut produced = 0usize;
        let mut draw = 0u64;
        while produced < cfg.gadget_rounds && draw < 10 * cfg.gadget_rounds as u64 {
            let mut rng =
                ChaCha8Rng::seed_from_u64(samples::subseed(cfg.seed, 1010 + ki as u64, draw));
            draw += 1;
            // A one-step chain projects a vector onto itself, which is
            // identically 1; the claim needs two or more pairwise
            // independent directions.
            let len = rng.gen_range(2..=5);
            let vs: Vec<[f64; 2]> = (0..len).map(|_| unit_pair(&mut rng)).collect();
            let rots: Vec<(u8, i64)> = (0..len)
                .map(|_| (k, rng.gen_range(1..k) as i64))
                .collect();
            if let Some(p) = projection_chain(&vs, &rots) {
                produced += 1;
                run.check((p - 1.0).abs() > 1e-12, || {
                    format!("k={k}: chain factor {p} within 1e-12 of 1 for {vs:?} {rots:?}")
                });
            }
        }
        run.check(produced == cfg.gadget_rounds, || {
            format!("k={k}: sampler exhausted after {produced} chains")
        });
    }

    for i in 0..cfg.gadget_rounds as u64 {
        let mut rng = ChaCha8Rng::seed_from_u64(samples::subseed(cfg.seed, 1020, i));
        let k = GROUP_ORDERS[rng.gen_range(0..GROUP_ORDERS.len())];
        let r = rng.gen_range(1..k) as i64;
        let vstar = unit_pair(&mut rng);
        let lambda = rng.gen_range(-2.0..=2.0);
        let (p, line) = rotation_line_witness(k, r, vstar, lambda);
        let rot = rotation_matrix::<f64>(k, r);
        let residual = [
            rot[0][0] * p[0] + rot[0][1] * p[1] - p[0] - lambda * vstar[0],
            rot[1][0] * p[0] + rot[1][1] * p[1] - p[1] - lambda * vstar[1],
        ];
        let solve_ok = norm(residual) <= 1e-12 * 1.0f64.max(lambda.abs() * norm(vstar));
        let cross = (p[0] * line[1] - p[1] * line[0]).abs();
        let line_ok = cross <= 1e-12 * 1.0f64.max(norm(p) * norm(line));
        run.check(solve_ok && line_ok, || {
            format!(
                "k={k} r={r}: residual {residual:?}, cross {cross:e} for v*={vstar:?} λ={lambda}"
            )
        });
    }

    run.finish(10, "projection-gadgets", String::new(), start)
}

/// Full-group top count in centralizer form: 2n + teich − cent.
fn adjusted_target(ctx: GraphCtx, n: usize) -> i64 {
    let full = if ctx.cone {
        subgroup_from_generators(ctx.group, &[Elem::rotation(1)])
    } else {
        SubgroupDesc::full(ctx.group)
    };
    2 * n as i64 + teich_dim(ctx.group, full.lattice()) as i64 - cent_dim(&full) as i64
}

/// The −1-adjusted count form and the teich/cent count form pick the same
/// class members on every doubling-suite instance.
fn count_form_suite(cfg: &SelftestConfig, instances: &[(ColoredGraph, bool)]) -> CriterionReport {
    let _ = cfg;
    let start = Instant::now();
    let mut run = SuiteRun::new();
    for (i, (graph, member)) in instances.iter().enumerate() {
        let oracle = exhaustive_oracle(graph, |g, s| values_of_subset(g, s).h_prime)
            .expect("m stays small");
        let alt = graph.m() as i64 == adjusted_target(graph.ctx(), graph.n()) && oracle.sparse;
        run.check(alt == *member, || {
            format!(
                "{} i={i}: adjusted-count form {member} vs teich/cent form {alt} on {:?}",
                samples::context_name(graph.ctx()),
                graph.edges()
            )
        });
    }
    run.finish(11, "count-form-agreement", String::new(), start)
}
