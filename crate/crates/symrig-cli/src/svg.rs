//! SVG rendering of realized lift fragments.
//!
//! Purpose: draw the finite lift of a realized colored graph — edges as
//! segments, vertices as circles color-coded by fiber (one fill per quotient
//! vertex) — at a fixed scale of 10 SVG units per lattice unit.
//!
//! Notes: output is deterministic for a fixed framework and fragment; all
//! numbers are printed with two decimals and the y-axis is flipped so the
//! mathematical orientation reads upright.

use std::fmt::Write;

use symrig::field::rotation_matrix;
use symrig::graph::{LiftFragment, LiftVertex};
use symrig::rigidity::Framework;

/// SVG units per lattice unit.
const SCALE: f64 = 10.0;
/// Fiber fills, reused cyclically past eight quotient vertices.
const PALETTE: [&str; 8] = [
    "#1f77b4", "#d62728", "#2ca02c", "#9467bd", "#ff7f0e", "#8c564b", "#17becf", "#7f7f7f",
];

/// Position of one lifted vertex: the group element applied to the base point,
/// with translations realized through the representation vectors.
pub fn lift_position(framework: &Framework, vertex: &LiftVertex) -> [f64; 2] {
    let k = framework.graph().ctx().group.k();
    let rot = rotation_matrix::<f64>(k, i64::from(vertex.gamma.r));
    let p = framework.point(vertex.orig);
    let mut pos = [
        rot[0][0] * p[0] + rot[0][1] * p[1],
        rot[1][0] * p[0] + rot[1][1] * p[1],
    ];
    let rep = framework.rep_coords();
    if rep.is_empty() {
        return pos;
    }
    let v1 = [rep[0], rep[1]];
    let v2 = if rep.len() == 4 {
        [rep[2], rep[3]]
    } else {
        let r1 = rotation_matrix::<f64>(k, 1);
        [
            r1[0][0] * v1[0] + r1[0][1] * v1[1],
            r1[1][0] * v1[0] + r1[1][1] * v1[1],
        ]
    };
    let t = vertex.gamma.t;
    pos[0] += t[0] as f64 * v1[0] + t[1] as f64 * v2[0];
    pos[1] += t[0] as f64 * v1[1] + t[1] as f64 * v2[1];
    pos
}

/// Renders the fragment over the framework's realization.
pub fn render(framework: &Framework, fragment: &LiftFragment) -> String {
    let points: Vec<[f64; 2]> = fragment
        .vertices
        .iter()
        .map(|v| {
            let p = lift_position(framework, v);
            [p[0] * SCALE, -p[1] * SCALE]
        })
        .collect();
    let mut lo = [f64::INFINITY; 2];
    let mut hi = [f64::NEG_INFINITY; 2];
    for p in &points {
        for axis in 0..2 {
            lo[axis] = lo[axis].min(p[axis]);
            hi[axis] = hi[axis].max(p[axis]);
        }
    }
    let margin = SCALE / 2.0;
    let mut svg = String::new();
    writeln!(
        svg,
        r#"<svg xmlns="http://www.w3.org/2000/svg" viewBox="{:.2} {:.2} {:.2} {:.2}">"#,
        lo[0] - margin,
        lo[1] - margin,
        hi[0] - lo[0] + 2.0 * margin,
        hi[1] - lo[1] + 2.0 * margin,
    )
    .expect("write to string");
    for &(tail, head, _) in &fragment.edges {
        let (a, b) = (points[tail], points[head]);
        writeln!(
            svg,
            r##"  <line x1="{:.2}" y1="{:.2}" x2="{:.2}" y2="{:.2}" stroke="#444444" stroke-width="0.8"/>"##,
            a[0], a[1], b[0], b[1],
        )
        .expect("write to string");
    }
    for (vertex, p) in fragment.vertices.iter().zip(&points) {
        writeln!(
            svg,
            r##"  <circle cx="{:.2}" cy="{:.2}" r="1.8" fill="{}" stroke="#222222" stroke-width="0.4"/>"##,
            p[0],
            p[1],
            PALETTE[vertex.orig % PALETTE.len()],
        )
        .expect("write to string");
    }
    svg.push_str("</svg>\n");
    svg
}
