//! Command-line surface for symmetric rigidity analysis.
//!
//! Purpose: parse colored-graph files, decide sparsity-class membership, run
//! direction-network rank and realization analyses, render lift fragments to
//! SVG, and drive the randomized verification suites.
//!
//! Notes: exit code 0 is the positive verdict (in class, circuit found,
//! suites clean), 1 the negative one, 2 an input error.  Reports are stable
//! `key: value` lines on standard output and identical (file, flags, seed)
//! invocations print byte-identical reports; the selftest verb therefore
//! keeps its wall-clock line on standard error.

mod report;
mod svg;

use std::fs;
use std::path::{Path, PathBuf};
use std::process::ExitCode;
use std::time::Instant;

use clap::{Parser, Subcommand};
use symrig::direction::{generic_rank, rep_width};
use symrig::field::rotation_matrix;
use symrig::graph::{ColoredGraph, GraphCtx, LiftBound};
use symrig::rigidity::realize_generic_framework;
use symrig::selftest::{run_all, SelftestConfig};
use symrig::sparsity::{decider, find_laman_circuit, OneOneFamily, DECIDERS};

use crate::report::Report;

/// Largest lifted-vertex count `render` accepts.
const RENDER_VERTEX_CAP: i128 = 20_000;

#[derive(Parser)]
#[command(
    name = "symrig",
    version,
    about = "Generic rigidity of planar frameworks with crystallographic or cone symmetry"
)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Decide membership of a colored graph in a sparsity class.
    Check {
        /// Colored-graph file.
        path: PathBuf,
        /// One of: g11, g22, laman, cone11, cone22, conelaman, gc11, gc22.
        #[arg(long)]
        class: String,
        /// Restrict the graph to these edge ids (0-based file order) first.
        #[arg(long, num_args = 1..)]
        edges: Option<Vec<usize>>,
    },
    /// Certified generic rank of the direction network over a finite field.
    Rank {
        path: PathBuf,
        #[arg(long, default_value_t = 42)]
        seed: u64,
        /// Independent trials; the failure bound decays with each one.
        #[arg(long, default_value_t = 3)]
        trials: usize,
    },
    /// Realize a minimally rigid colored graph as a symmetric framework.
    Realize {
        path: PathBuf,
        #[arg(long, default_value_t = 42)]
        seed: u64,
    },
    /// Realize, lift over a translation box, and write the picture as SVG.
    Render {
        path: PathBuf,
        #[arg(long, default_value_t = 42)]
        seed: u64,
        /// Inclusive lattice bounds of the lift: x0 x1 y0 y1.
        #[arg(
            long = "box",
            num_args = 4,
            required = true,
            allow_negative_numbers = true,
            value_names = ["X0", "X1", "Y0", "Y1"]
        )]
        bounds: Vec<i64>,
        /// Output SVG path.
        #[arg(long)]
        out: PathBuf,
    },
    /// Find a minimal dependent edge set of the Laman-count matroid.
    Circuit { path: PathBuf },
    /// Run the randomized verification suites and report per-criterion lines.
    Selftest {
        #[arg(long, default_value_t = 2512)]
        seed: u64,
        /// Largest vertex count sampled per instance.
        #[arg(long)]
        max_n: Option<usize>,
        /// Largest edge count for the bounded-oracle suites.
        #[arg(long)]
        max_m: Option<usize>,
        /// Reduced-volume smoke run: same suites, far fewer instances.
        #[arg(long)]
        quick: bool,
    },
}

fn main() -> ExitCode {
    match run(Cli::parse()) {
        Ok(code) => code,
        Err(message) => {
            eprintln!("error: {message}");
            ExitCode::from(2)
        }
    }
}

fn run(cli: Cli) -> Result<ExitCode, String> {
    match cli.command {
        Command::Check { path, class, edges } => cmd_check(&path, &class, edges.as_deref()),
        Command::Rank { path, seed, trials } => cmd_rank(&path, seed, trials),
        Command::Realize { path, seed } => cmd_realize(&path, seed),
        Command::Render {
            path,
            seed,
            bounds,
            out,
        } => cmd_render(&path, seed, &bounds, &out),
        Command::Circuit { path } => cmd_circuit(&path),
        Command::Selftest {
            seed,
            max_n,
            max_m,
            quick,
        } => cmd_selftest(seed, max_n, max_m, quick),
    }
}

fn load(path: &Path) -> Result<ColoredGraph, String> {
    let text = fs::read_to_string(path).map_err(|e| format!("{}: {e}", path.display()))?;
    ColoredGraph::parse(&text).map_err(|e| e.to_string())
}

fn group_label(ctx: GraphCtx) -> String {
    let kind = if ctx.cone { "cone" } else { "gamma" };
    format!("{kind} {}", ctx.group.k())
}

/// Human verdict key per class flag, e.g. `laman` -> `gamma-colored-Laman`.
fn verdict_label(class: &str) -> &'static str {
    match class {
        "g11" => "gamma-(1,1)",
        "g22" => "gamma-(2,2)",
        "laman" => "gamma-colored-Laman",
        "cone11" => "cone-(1,1)",
        "cone22" => "cone-(2,2)",
        "conelaman" => "cone-Laman",
        "gc11" => "generalized-cone-(1,1)",
        "gc22" => "generalized-cone-(2,2)",
        _ => "in-class",
    }
}

/// Subgraph on the same vertices keeping the listed edges, renumbered in the
/// listed order; witnesses printed by `check` re-enter through this path.
fn restrict(graph: &ColoredGraph, ids: &[usize]) -> Result<ColoredGraph, String> {
    let mut edges = Vec::with_capacity(ids.len());
    let mut seen = vec![false; graph.m()];
    for &id in ids {
        if id >= graph.m() {
            return Err(format!("edge id {id} out of range; the graph has {} edges", graph.m()));
        }
        if seen[id] {
            return Err(format!("edge id {id} listed twice"));
        }
        seen[id] = true;
        edges.push(graph.edges()[id]);
    }
    ColoredGraph::new(graph.ctx(), graph.n(), edges).map_err(|e| e.to_string())
}

fn base_report(command: &str, path: &Path, graph: &ColoredGraph) -> Report {
    let mut report = Report::new(command);
    report.push("file", path.display());
    report.push("group", group_label(graph.ctx()));
    report.push("vertices", graph.n());
    report.push("edges", graph.m());
    report
}

fn cmd_check(path: &Path, class: &str, edges: Option<&[usize]>) -> Result<ExitCode, String> {
    let Some(decider) = decider(class) else {
        let names: Vec<_> = DECIDERS.iter().map(|d| d.name()).collect();
        return Err(format!(
            "unknown class {class:?}; expected one of {}",
            names.join(", ")
        ));
    };
    let mut graph = load(path)?;
    if let Some(ids) = edges {
        graph = restrict(&graph, ids)?;
    }
    let verdict = decider.decide(&graph).map_err(|e| e.to_string())?;
    let mut report = base_report("check", path, &graph);
    if let Some(ids) = edges {
        report.push_ids("restricted-to", Some(ids));
    }
    report.push("class", class);
    report.push("target-edges", verdict.target_m);
    report.push("f", verdict.values.f);
    report.push("g", verdict.values.g);
    report.push("h", verdict.values.h);
    report.push("h'", verdict.values.h_prime);
    report.push(
        verdict_label(class),
        if verdict.in_class { "yes" } else { "no" },
    );
    report.push_ids("witness", verdict.witness.as_deref());
    if let Some([left, right]) = &verdict.decomposition {
        report.push_ids("decomposition[0]", Some(left));
        report.push_ids("decomposition[1]", Some(right));
    }
    report.print();
    Ok(if verdict.in_class {
        ExitCode::SUCCESS
    } else {
        ExitCode::from(1)
    })
}

fn cmd_rank(path: &Path, seed: u64, trials: usize) -> Result<ExitCode, String> {
    if trials == 0 {
        return Err("trials must be positive".into());
    }
    let graph = load(path)?;
    let rank = generic_rank(&graph, seed, trials);
    let columns = 2 * graph.n() + rep_width(&graph);
    let nullity = columns - rank.rank;
    let mut report = base_report("rank", path, &graph);
    report.push("columns", columns);
    report.push(
        "summary",
        format!("rank {} / {} rows, nullity {nullity}", rank.rank, graph.m()),
    );
    report.push("rank", rank.rank);
    report.push("nullity", nullity);
    report.push("trials", rank.trials);
    report.push("field", "GF(p^2), p = 2^61 - 1");
    report.push(
        "per-trial-failure-bound",
        format!("2^{:.1}", rank.failure_bound_log2),
    );
    report.push("seed", seed);
    report.print();
    Ok(ExitCode::SUCCESS)
}

/// Representation vectors of a crystal realization: the stored block, with
/// the second vector derived by the rotation when only one is stored.
fn rep_vectors(rep: &[f64], k: u8) -> Option<([f64; 2], [f64; 2])> {
    if rep.is_empty() {
        return None;
    }
    let v1 = [rep[0], rep[1]];
    let v2 = if rep.len() == 4 {
        [rep[2], rep[3]]
    } else {
        let rot = rotation_matrix::<f64>(k, 1);
        [
            rot[0][0] * v1[0] + rot[0][1] * v1[1],
            rot[1][0] * v1[0] + rot[1][1] * v1[1],
        ]
    };
    Some((v1, v2))
}

fn cmd_realize(path: &Path, seed: u64) -> Result<ExitCode, String> {
    let graph = load(path)?;
    let framework = realize_generic_framework(&graph, seed).map_err(|e| e.to_string())?;
    let mut report = base_report("realize", path, &graph);
    report.push("seed", seed);
    for v in 0..graph.n() {
        let p = framework.point(v);
        report.push(&format!("vertex {}", v + 1), format!("{:.9} {:.9}", p[0], p[1]));
    }
    if let Some((v1, v2)) = rep_vectors(framework.rep_coords(), graph.ctx().group.k()) {
        report.push("v1", format!("{:.9} {:.9}", v1[0], v1[1]));
        report.push("v2", format!("{:.9} {:.9}", v2[0], v2[1]));
    }
    for (id, length) in framework.lengths().iter().enumerate() {
        report.push(&format!("length {id}"), format!("{length:.9}"));
    }
    report.print();
    Ok(ExitCode::SUCCESS)
}

fn cmd_render(path: &Path, seed: u64, bounds: &[i64], out: &Path) -> Result<ExitCode, String> {
    let graph = load(path)?;
    let bound = LiftBound {
        x0: bounds[0],
        x1: bounds[1],
        y0: bounds[2],
        y1: bounds[3],
    };
    if bound.x0 <= bound.x1 && bound.y0 <= bound.y1 {
        let cells = if graph.ctx().cone {
            1
        } else {
            i128::from(bound.x1 - bound.x0 + 1) * i128::from(bound.y1 - bound.y0 + 1)
        };
        let lifted = cells * i128::from(graph.ctx().group.k()) * graph.n() as i128;
        if lifted > RENDER_VERTEX_CAP {
            return Err(format!(
                "box lifts {lifted} vertices; the cap is {RENDER_VERTEX_CAP}"
            ));
        }
    }
    let fragment = graph.lift_fragment(&bound).map_err(|e| e.to_string())?;
    let framework = realize_generic_framework(&graph, seed).map_err(|e| e.to_string())?;
    let picture = svg::render(&framework, &fragment);
    fs::write(out, &picture).map_err(|e| format!("{}: {e}", out.display()))?;
    let mut report = base_report("render", path, &graph);
    report.push(
        "box",
        format!("{} {} {} {}", bound.x0, bound.x1, bound.y0, bound.y1),
    );
    report.push("out", out.display());
    report.push("lifted-vertices", fragment.vertices.len());
    report.push("lifted-edges", fragment.edges.len());
    report.push("seed", seed);
    report.print();
    Ok(ExitCode::SUCCESS)
}

fn cmd_circuit(path: &Path) -> Result<ExitCode, String> {
    let graph = load(path)?;
    let family = if graph.ctx().cone {
        OneOneFamily::Rotation
    } else {
        OneOneFamily::Lattice
    };
    let circuit = find_laman_circuit(&graph, family);
    let mut report = base_report("circuit", path, &graph);
    report.push(
        "circuit-size",
        circuit.as_ref().map_or_else(|| "none".to_string(), |c| c.len().to_string()),
    );
    report.push_ids("circuit", circuit.as_deref());
    report.print();
    Ok(if circuit.is_some() {
        ExitCode::SUCCESS
    } else {
        ExitCode::from(1)
    })
}

fn cmd_selftest(
    seed: u64,
    max_n: Option<usize>,
    max_m: Option<usize>,
    quick: bool,
) -> Result<ExitCode, String> {
    let mut cfg = if quick {
        SelftestConfig::quick(seed)
    } else {
        SelftestConfig {
            seed,
            ..SelftestConfig::default()
        }
    };
    if let Some(n) = max_n {
        cfg.max_n = n;
    }
    if let Some(m) = max_m {
        cfg.max_m = m;
    }
    if cfg.max_n == 0 || cfg.max_m == 0 {
        return Err("max-n and max-m must be positive".into());
    }
    let started = Instant::now();
    let reports = run_all(&cfg);
    let failed = reports.iter().filter(|r| !r.passed()).count();
    for criterion in &reports {
        println!("{}", criterion.line());
        for example in &criterion.examples {
            println!("    violation: {example}");
        }
    }
    println!("suites: {} passed, {} failed", reports.len() - failed, failed);
    println!("seed: {}", cfg.seed);
    // Wall-clock on stderr: the stdout report stays byte-deterministic.
    eprintln!("runtime: {:.1}s", started.elapsed().as_secs_f64());
    Ok(if failed == 0 {
        ExitCode::SUCCESS
    } else {
        ExitCode::from(1)
    })
}
