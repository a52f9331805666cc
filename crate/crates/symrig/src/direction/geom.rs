//! Floating-point projection gadgets for cone direction networks.
//!
//! Purpose: the scale factor of projecting one direction onto another
//! across a rotation, products of such factors around a cycle, the line
//! carrying the solutions of (R − I)·p = λ·v*, and the direction
//! assignment that forces a connected cone-(1,1) graph onto the rotational
//! line arrangement. These are oracles for genericity arguments, not part
//! of any decision path.
//!
//! Notes:
//! - Half-angle rotations come from a fixed table over {0, ±1/2, ±√2/2,
//!   ±√3/2, ±1}, so order-2 inputs yield λ = 0 exactly in IEEE arithmetic
//!   rather than a 1e−17 residue.
//! - A vanishing projection denominator is reported as `None`, distinct
//!   from a defined factor of 0.

use super::system::{perp, DirectionAssignment};
use crate::graph::{ColoredGraph, GraphError, MarkedGraph};
use std::f64::consts::FRAC_1_SQRT_2;

fn inner(a: [f64; 2], b: [f64; 2]) -> f64 {
    a[0] * b[0] + a[1] * b[1]
}

fn apply(m: [[f64; 2]; 2], v: [f64; 2]) -> [f64; 2] {
    [
        m[0][0] * v[0] + m[0][1] * v[1],
        m[1][0] * v[0] + m[1][1] * v[1],
    ]
}

/// Rotation by half the angle of R_k^r, i.e. by π·r/k, from exact-constant
/// tables. Both square roots of R_k^r differ by a sign, which never matters
/// to the consumers here (lines and ratios are sign-invariant).
pub fn half_angle_rotation(k: u8, r: i64) -> [[f64; 2]; 2] {
    assert!(crate::group::SUPPORTED_K.contains(&k), "unsupported k={k}");
    let r = r.rem_euclid(k as i64) as usize;
    // Angle π·r/k in units of π/12; k divides 12, so this is integral.
    let twelfth = r * (12 / k as usize) % 24;
    let h = 0.5;
    let s2 = FRAC_1_SQRT_2;
    let s3 = 3f64.sqrt() / 2.0;
    let (c, s) = match twelfth {
        0 => (1.0, 0.0),
        2 => (s3, h),
        3 => (s2, s2),
        4 => (h, s3),
        6 => (0.0, 1.0),
        8 => (-h, s3),
        9 => (-s2, s2),
        10 => (-s3, h),
        12 => (-1.0, 0.0),
        14 => (-s3, -h),
        15 => (-s2, -s2),
        16 => (-h, -s3),
        18 => (0.0, -1.0),
        20 => (h, -s3),
        21 => (s2, -s2),
        22 => (s3, -h),
        other => unreachable!("π·{other}/12 cannot arise from k | 12"),
    };
    [[c, -s], [s, c]]
}

/// v* = (R_k^{r/2}·v)⊥, the common normal of the line family attached to v.
pub fn star_vector(v: [f64; 2], k: u8, r: i64) -> [f64; 2] {
    perp(apply(half_angle_rotation(k, r), v))
}

/// λ = ⟨v, (v*)⊥⟩ / ⟨w, (v*)⊥⟩ with v* = (R_k^{r/2}·v)⊥; `None` when the
/// denominator vanishes (w parallel to v*), which is distinct from λ = 0.
pub fn projection_scale_factor(v: [f64; 2], w: [f64; 2], k: u8, r: i64) -> Option<f64> {
    let normal = perp(star_vector(v, k, r));
    let den = inner(w, normal);
    if den == 0.0 {
        return None;
    }
    Some(inner(v, normal) / den)
}

/// Product of scale factors around a closed chain: factor i projects v_i
/// onto v_{i+1} (cyclically) across rotation (k_i, r_i).
pub fn projection_chain(vs: &[[f64; 2]], rots: &[(u8, i64)]) -> Option<f64> {
    assert_eq!(vs.len(), rots.len(), "one rotation per chain edge");
    assert!(!vs.is_empty());
    let mut out = 1.0;
    for (i, &(k, r)) in rots.iter().enumerate() {
        let w = vs[(i + 1) % vs.len()];
        out *= projection_scale_factor(vs[i], w, k, r)?;
    }
    Some(out)
}

/// The solution of (R_k^r − I)·p = λ·v* together with the predicted carrier
/// direction R_{π/2}·R_k^{−r/2}·v* (up to sign). Requires r ≠ 0 mod k.
pub fn rotation_line_witness(
    k: u8,
    r: i64,
    vstar: [f64; 2],
    lambda: f64,
) -> ([f64; 2], [f64; 2]) {
    let rot = crate::field::rotation_matrix::<f64>(k, r);
    let a = [
        [rot[0][0] - 1.0, rot[0][1]],
        [rot[1][0], rot[1][1] - 1.0],
    ];
    let det = a[0][0] * a[1][1] - a[0][1] * a[1][0];
    assert!(det != 0.0, "R − I is singular for the identity rotation");
    let rhs = [lambda * vstar[0], lambda * vstar[1]];
    let p = [
        (a[1][1] * rhs[0] - a[0][1] * rhs[1]) / det,
        (a[0][0] * rhs[1] - a[1][0] * rhs[0]) / det,
    ];
    let line = perp(apply(half_angle_rotation(k, -r), vstar));
    (p, line)
}

/// Directions forcing every realization of a connected cone-(1,1) graph
/// onto the rotational line arrangement generated by `v`: each edge takes
/// R^{−η_tail}·v*, where v* is the star vector of the cycle's ρ-image and
/// η is the spanning-tree path map. In every solution the base fiber then
/// lies along the orbit R^j·v.
pub fn cone11_collapsing_directions(
    graph: &ColoredGraph,
    v: [f64; 2],
) -> Result<DirectionAssignment<f64>, GraphError> {
    if !graph.ctx().cone {
        return Err(GraphError::Invalid("cone-(1,1) gadget needs a cone graph".into()));
    }
    if v == [0.0, 0.0] {
        return Err(GraphError::Invalid("zero gadget vector".into()));
    }
    let marked = MarkedGraph::new(graph);
    if marked.num_components() != 1 || graph.m() != graph.n() {
        return Err(GraphError::Invalid(
            "not a connected graph with exactly one cycle".into(),
        ));
    }
    let k = graph.ctx().k();
    let cycle_edge = (0..graph.m())
        .find(|&id| !marked.in_forest(id))
        .expect("m = n forces one non-forest edge");
    let gamma = marked.fundamental_rho(cycle_edge).r;
    if gamma == 0 {
        return Err(GraphError::Invalid("cycle has trivial rotation image".into()));
    }
    let vstar = star_vector(v, k, gamma as i64);
    let dirs = (0..graph.m())
        .map(|id| {
            let tail = graph.edge(id).tail;
            let back = crate::field::rotation_matrix::<f64>(k, -(marked.eta(tail).r as i64));
            apply(back, vstar)
        })
        .collect();
    DirectionAssignment::new(dirs)
}
