//! The space of fully collapsed solutions of a direction network.
//!
//! Purpose: count and explicitly construct the solutions in which every
//! lifted edge vector vanishes. These satisfy every direction system on the
//! graph regardless of the assigned directions, so they bound nullity from
//! below and are exactly the solution space on circuit-bearing inputs.
//!
//! Notes:
//! - Dimension formula: rep(full lattice) − rep(Λ(G)) + Σ_c T(G_c), summed
//!   over all connected components including isolated vertices; the cone
//!   case has no representation columns, leaving Σ_c T(G_c).
//! - Construction: pick the representation trivial on Λ(G); a component
//!   whose ρ-image has a rotation (t, s) is pinned at the fixed point of
//!   Φ((t, s)), a rotation-free component keeps a free base point with two
//!   extra solutions; all other points follow the spanning forest via
//!   p_v = Φ(η_v⁻¹)·p_base.

use crate::field::{rotation_matrix, Scalar};
use crate::graph::{ColoredGraph, MarkedGraph};
use crate::linalg;
use crate::subgroup::t_dim;
use super::system::{apply2, rep_width};

/// rep(full) − rep(Λ(G)) + Σ T over all components.
pub fn collapsed_space_dim(graph: &ColoredGraph) -> usize {
    let inv = graph.invariants();
    let t_sum: usize = inv.components.iter().map(|c| t_dim(&c.subgroup)).sum();
    if graph.ctx().cone {
        t_sum
    } else {
        rep_width(graph) - inv.rep + t_sum
    }
}

/// Φ_v(t) for a representation vector laid out as the trailing system
/// columns: (v₁, v₂) for k = 2, v₁ with v₂ = R·v₁ for k ≥ 3.
fn rep_apply<S: Scalar>(k: u8, vhat: &[S], t: [i64; 2]) -> [S; 2] {
    let t0 = S::from_i64(t[0]);
    let t1 = S::from_i64(t[1]);
    if vhat.is_empty() {
        return [S::zero(), S::zero()];
    }
    if k == 2 {
        [
            t0 * vhat[0] + t1 * vhat[2],
            t0 * vhat[1] + t1 * vhat[3],
        ]
    } else {
        let v2 = apply2(rotation_matrix::<S>(k, 1), [vhat[0], vhat[1]]);
        [
            t0 * vhat[0] + t1 * v2[0],
            t0 * vhat[1] + t1 * v2[1],
        ]
    }
}

/// Rows of the constraint Φ_v(t) = 0 over the representation columns.
fn rep_constraint_rows<S: Scalar>(k: u8, rep_cols: usize, t: [i64; 2]) -> [Vec<S>; 2] {
    let t0 = S::from_i64(t[0]);
    let t1 = S::from_i64(t[1]);
    if k == 2 {
        let z = S::zero();
        [vec![t0, z, t1, z], vec![z, t0, z, t1]]
    } else {
        debug_assert_eq!(rep_cols, 2);
        // Φ_v(t) = (t₀·I + t₁·R)·v₁.
        let r = rotation_matrix::<S>(k, 1);
        [
            vec![t0 + t1 * r[0][0], t1 * r[0][1]],
            vec![t1 * r[1][0], t0 + t1 * r[1][1]],
        ]
    }
}

/// All points of one component from its base value and the forest paths:
/// p_v = Φ(η_v⁻¹)·p_base = R^r·p_base + Φ_v(t) with (t, r) = η_v⁻¹.
fn propagate<S: Scalar>(
    marked: &MarkedGraph<'_>,
    comp: usize,
    p_base: [S; 2],
    vhat: &[S],
    x: &mut [S],
) {
    let graph = marked.graph();
    let group = graph.group();
    let k = graph.ctx().k();
    for v in 0..graph.n() {
        if marked.component_of(v) != comp {
            continue;
        }
        let inv = group.inverse(marked.eta(v));
        let rotated = apply2(rotation_matrix::<S>(k, inv.r as i64), p_base);
        let shift = rep_apply(k, vhat, inv.t);
        x[2 * v] = rotated[0] + shift[0];
        x[2 * v + 1] = rotated[1] + shift[1];
    }
}

/// Explicit basis of the collapsed solutions, following the two-case
/// construction: one family per representation vector trivial on Λ(G)
/// (rotation components pinned at their fixed points), plus two per
/// rotation-free component. Length = [`collapsed_space_dim`].
pub fn construct_collapsed_basis<S: Scalar>(graph: &ColoredGraph) -> Vec<Vec<S>> {
    let marked = MarkedGraph::new(graph);
    let k = graph.ctx().k();
    let rep_cols = rep_width(graph);
    let cols = 2 * graph.n() + rep_cols;
    let vbase = 2 * graph.n();
    let subgroups: Vec<_> = (0..marked.num_components())
        .map(|c| marked.component_subgroup(c))
        .collect();

    let mut out = Vec::new();

    // Representations vanishing on the joint lattice; each extends to a
    // collapsed solution with a forced base point on rotation components.
    let mut constraints: Vec<Vec<S>> = Vec::new();
    if rep_cols > 0 {
        for &gen in graph.invariants().lattice.basis() {
            let [a, b] = rep_constraint_rows(k, rep_cols, gen);
            constraints.push(a);
            constraints.push(b);
        }
    }
    for vhat in linalg::nullspace(&constraints, rep_cols) {
        let mut x = vec![S::zero(); cols];
        x[vbase..].copy_from_slice(&vhat);
        for (comp, sub) in subgroups.iter().enumerate() {
            let p_base = match sub.rot() {
                Some(rot) => {
                    // Unique fixed point of Φ((t, s)): (I − R^s)·p = Φ_v(t);
                    // I − R^s is invertible because s ≠ 0.
                    let r = rotation_matrix::<S>(k, rot.r as i64);
                    let a = [
                        [S::one() - r[0][0], -r[0][1]],
                        [-r[1][0], S::one() - r[1][1]],
                    ];
                    let rhs = rep_apply(k, &vhat, rot.t);
                    let det = a[0][0] * a[1][1] - a[0][1] * a[1][0];
                    let inv_det = det.inv();
                    [
                        (a[1][1] * rhs[0] - a[0][1] * rhs[1]) * inv_det,
                        (a[0][0] * rhs[1] - a[1][0] * rhs[0]) * inv_det,
                    ]
                }
                None => [S::zero(), S::zero()],
            };
            propagate(&marked, comp, p_base, &vhat, &mut x);
        }
        out.push(x);
    }

    // Rotation-free components translate freely: two solutions each, with
    // the trivial representation and zero on every other component.
    let no_rep = vec![S::zero(); rep_cols];
    for (comp, sub) in subgroups.iter().enumerate() {
        if sub.has_rotation() {
            continue;
        }
        for unit in [[S::one(), S::zero()], [S::zero(), S::one()]] {
            let mut x = vec![S::zero(); cols];
            propagate(&marked, comp, unit, &no_rep, &mut x);
            out.push(x);
        }
    }

    debug_assert_eq!(out.len(), collapsed_space_dim(graph));
    out
}
