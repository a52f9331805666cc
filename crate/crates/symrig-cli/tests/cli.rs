//! End-to-end checks of the `symrig` binary: exit codes, report shapes,
//! byte determinism, witness round-trips, and SVG output.

use std::path::{Path, PathBuf};
use std::process::{Command, Output};

fn fixture(name: &str) -> PathBuf {
    Path::new(env!("CARGO_MANIFEST_DIR"))
        .join("tests/fixtures")
        .join(name)
}

fn run(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_symrig"))
        .args(args)
        .output()
        .expect("binary runs")
}

fn stdout(output: &Output) -> String {
    String::from_utf8(output.stdout.clone()).expect("utf-8 stdout")
}

fn stderr(output: &Output) -> String {
    String::from_utf8(output.stderr.clone()).expect("utf-8 stderr")
}

fn code(output: &Output) -> i32 {
    output.status.code().expect("exit code")
}

/// Value of the first `key: value` report line with the given key.
fn report_value<'a>(text: &'a str, key: &str) -> Option<&'a str> {
    let prefix = format!("{key}: ");
    text.lines().find_map(|l| l.strip_prefix(&prefix))
}

#[test]
fn missing_file_is_an_input_error() {
    let out = run(&["check", "/nonexistent/graph.txt", "--class", "laman"]);
    assert_eq!(code(&out), 2);
    assert!(stdout(&out).is_empty());
    assert!(!stderr(&out).is_empty());
}

#[test]
fn unknown_class_is_an_input_error_naming_the_choices() {
    let path = fixture("laman_gamma4.txt");
    let out = run(&["check", path.to_str().unwrap(), "--class", "bogus"]);
    assert_eq!(code(&out), 2);
    assert!(stderr(&out).contains("conelaman"));
}

#[test]
fn parse_errors_reach_stderr_with_the_line_number() {
    let path = fixture("bad_vertex.txt");
    let out = run(&["check", path.to_str().unwrap(), "--class", "laman"]);
    assert_eq!(code(&out), 2);
    assert!(stderr(&out).contains("line 4"), "stderr: {}", stderr(&out));
}

#[test]
fn laman_fixture_checks_in_class_with_exit_zero() {
    let path = fixture("laman_gamma4.txt");
    let out = run(&["check", path.to_str().unwrap(), "--class", "laman"]);
    assert_eq!(code(&out), 0, "stderr: {}", stderr(&out));
    let text = stdout(&out);
    assert!(text.contains("gamma-colored-Laman: yes"), "report: {text}");
    assert_eq!(report_value(&text, "witness"), Some("none"));
}

#[test]
fn cone_laman_fixture_checks_in_class() {
    let path = fixture("cone3_laman.txt");
    let out = run(&["check", path.to_str().unwrap(), "--class", "conelaman"]);
    assert_eq!(code(&out), 0, "stderr: {}", stderr(&out));
    assert!(stdout(&out).contains("cone-Laman: yes"));
}

#[test]
fn identity_loop_fails_check_and_prints_a_witness() {
    let path = fixture("identity_loop.txt");
    let out = run(&["check", path.to_str().unwrap(), "--class", "laman"]);
    assert_eq!(code(&out), 1);
    let text = stdout(&out);
    assert!(text.contains("gamma-colored-Laman: no"), "report: {text}");
    let witness = report_value(&text, "witness").expect("witness line");
    assert_ne!(witness, "none");
}

#[test]
fn printed_witnesses_reproduce_the_violation_when_rechecked_alone() {
    let path = fixture("identity_loop.txt");
    let first = run(&["check", path.to_str().unwrap(), "--class", "laman"]);
    assert_eq!(code(&first), 1);
    let text = stdout(&first);
    let witness = report_value(&text, "witness").expect("witness line");
    assert_ne!(witness, "none");
    let mut args = vec!["check", path.to_str().unwrap(), "--class", "laman", "--edges"];
    args.extend(witness.split(' '));
    let second = run(&args);
    assert_eq!(code(&second), 1, "restricted check must still violate");
    let retext = stdout(&second);
    assert_ne!(report_value(&retext, "witness"), Some("none"));
}

#[test]
fn identical_invocations_print_byte_identical_reports() {
    let check = fixture("laman_gamma4.txt");
    let a = run(&["check", check.to_str().unwrap(), "--class", "laman"]);
    let b = run(&["check", check.to_str().unwrap(), "--class", "laman"]);
    assert_eq!(a.stdout, b.stdout);
    let c = run(&["rank", check.to_str().unwrap(), "--seed", "11", "--trials", "2"]);
    let d = run(&["rank", check.to_str().unwrap(), "--seed", "11", "--trials", "2"]);
    assert_eq!(c.stdout, d.stdout);
}

#[test]
fn rank_of_the_minimal_laman_fixture_matches_the_known_summary() {
    let path = fixture("laman_gamma4.txt");
    let out = run(&["rank", path.to_str().unwrap()]);
    assert_eq!(code(&out), 0);
    let text = stdout(&out);
    assert!(
        text.contains("rank 3 / 3 rows, nullity 1"),
        "report: {text}"
    );
    assert!(text.contains("per-trial-failure-bound: 2^-"));
}

#[test]
fn realize_emits_vertex_coordinates_and_representation_vectors() {
    let path = fixture("laman_gamma4.txt");
    let out = run(&["realize", path.to_str().unwrap(), "--seed", "5"]);
    assert_eq!(code(&out), 0, "stderr: {}", stderr(&out));
    let text = stdout(&out);
    assert!(report_value(&text, "vertex 1").is_some());
    assert!(report_value(&text, "v1").is_some());
    assert!(report_value(&text, "v2").is_some());
    assert!(report_value(&text, "length 2").is_some());
}

#[test]
fn realize_refuses_a_graph_that_is_not_minimally_rigid() {
    let path = fixture("identity_loop.txt");
    let out = run(&["realize", path.to_str().unwrap()]);
    assert_eq!(code(&out), 2);
    assert!(stderr(&out).contains("minimally rigid"));
}

#[test]
fn render_draws_one_circle_per_lifted_vertex() {
    let path = fixture("laman_gamma4.txt");
    let out_svg = std::env::temp_dir().join("symrig_cli_render_crystal.svg");
    let out = run(&[
        "render",
        path.to_str().unwrap(),
        "--box",
        "-2",
        "2",
        "-2",
        "2",
        "--out",
        out_svg.to_str().unwrap(),
    ]);
    assert_eq!(code(&out), 0, "stderr: {}", stderr(&out));
    let text = stdout(&out);
    // |box ∩ Z²| · k · n = 25 · 4 · 1 lifted vertices.
    assert_eq!(report_value(&text, "lifted-vertices"), Some("100"));
    let picture = std::fs::read_to_string(&out_svg).expect("svg written");
    assert_eq!(picture.matches("<circle").count(), 100);
    std::fs::remove_file(&out_svg).ok();
}

#[test]
fn render_of_a_cone_graph_lifts_one_fiber_of_size_k() {
    let path = fixture("cone3_laman.txt");
    let out_svg = std::env::temp_dir().join("symrig_cli_render_cone.svg");
    let out = run(&[
        "render",
        path.to_str().unwrap(),
        "--box",
        "0",
        "0",
        "0",
        "0",
        "--out",
        out_svg.to_str().unwrap(),
    ]);
    assert_eq!(code(&out), 0, "stderr: {}", stderr(&out));
    let picture = std::fs::read_to_string(&out_svg).expect("svg written");
    assert_eq!(picture.matches("<circle").count(), 3);
    std::fs::remove_file(&out_svg).ok();
}

#[test]
fn render_rejects_an_empty_box() {
    let path = fixture("laman_gamma4.txt");
    let out_svg = std::env::temp_dir().join("symrig_cli_render_empty.svg");
    let out = run(&[
        "render",
        path.to_str().unwrap(),
        "--box",
        "2",
        "-2",
        "0",
        "0",
        "--out",
        out_svg.to_str().unwrap(),
    ]);
    assert_eq!(code(&out), 2);
    assert!(stderr(&out).contains("empty"), "stderr: {}", stderr(&out));
    assert!(!out_svg.exists());
}

#[test]
fn render_rejects_an_unreasonably_large_box() {
    let path = fixture("laman_gamma4.txt");
    let out_svg = std::env::temp_dir().join("symrig_cli_render_huge.svg");
    let out = run(&[
        "render",
        path.to_str().unwrap(),
        "--box",
        "-1000",
        "1000",
        "-1000",
        "1000",
        "--out",
        out_svg.to_str().unwrap(),
    ]);
    assert_eq!(code(&out), 2);
    assert!(stderr(&out).contains("cap"), "stderr: {}", stderr(&out));
    assert!(!out_svg.exists());
}

#[test]
fn circuit_verb_finds_a_circuit_exactly_when_the_graph_is_dependent() {
    let dependent = fixture("dependent_gamma4.txt");
    let out = run(&["circuit", dependent.to_str().unwrap()]);
    assert_eq!(code(&out), 0);
    let ids = report_value(&stdout(&out), "circuit")
        .expect("circuit line")
        .to_string();
    assert_ne!(ids, "none");
    let independent = fixture("laman_gamma4.txt");
    let out = run(&["circuit", independent.to_str().unwrap()]);
    assert_eq!(code(&out), 1);
    assert_eq!(report_value(&stdout(&out), "circuit"), Some("none"));
}

#[test]
fn selftest_quick_passes_and_reproduces_bytewise_for_the_same_seed() {
    let args = [
        "selftest", "--quick", "--seed", "7", "--max-n", "3", "--max-m", "6",
    ];
    let first = run(&args);
    assert_eq!(code(&first), 0, "stderr: {}", stderr(&first));
    let text = stdout(&first);
    assert!(text.contains("criterion  1"), "report: {text}");
    assert!(text.contains("criterion 11"));
    assert!(text.contains("suites: 11 passed, 0 failed"));
    assert!(stderr(&first).contains("runtime:"));
    let second = run(&args);
    assert_eq!(first.stdout, second.stdout);
}
