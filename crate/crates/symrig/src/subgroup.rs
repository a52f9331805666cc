//! Finitely generated subgroups of Γₖ and their numerical invariants.
//!
//! Purpose:
//! - A subgroup Γ′ ≤ Γₖ is stored as a complete descriptor: the lattice
//!   Λ(Γ′) = Γ′ ∩ Z² of its translations plus, when Γ′ contains rotations, one
//!   representative of minimal positive rotation class d. Then
//!   Γ′ = ⋃ⱼ Λ(Γ′)·rotʲ for j = 0..(k/d).
//! - Construction from generators runs a coset-style closure over the k rotation
//!   classes and converts the resulting stabilizer generators (all translations)
//!   into a lattice.
//! - The invariants rep_dim / t_dim / cent_dim / teich_dim drive all sparsity
//!   counts downstream; the radical is the largest supergroup preserving
//!   rep_dim of the lattice and t_dim.
//!
//! Descriptor invariants (checked on construction):
//! - rot, when present, has class d with 1 ≤ d < k, d | k;
//! - Λ is invariant under the action of rotation class d;
//! - rot^(k/d) is a translation lying in Λ.

use std::collections::{HashSet, VecDeque};

use crate::group::{mat_adj, mat_det, mat_sub, mat_vec, Elem, GroupCtx, IDENTITY_MAT};
use crate::lattice::Lattice;

#[derive(Clone, PartialEq, Eq, Debug)]
pub struct SubgroupDesc {
    lattice: Lattice,
    rot: Option<Elem>,
}

impl SubgroupDesc {
    pub fn new(ctx: GroupCtx, lattice: Lattice, rot: Option<Elem>) -> Self {
        if let Some(g) = rot {
            let d = g.r;
            assert!(d > 0 && d < ctx.k() && ctx.k().is_multiple_of(d), "rotation class {d}");
            let m = ctx.action_pow(d as i64);
            assert_eq!(lattice.map(m), lattice, "lattice not rotation-invariant");
            let ord = (ctx.k() / d) as i64;
            let t = ctx.pow(g, ord);
            assert!(t.is_translation() && lattice.contains(t.t));
        }
        SubgroupDesc { lattice, rot }
    }

    pub fn trivial() -> Self {
        SubgroupDesc {
            lattice: Lattice::empty(),
            rot: None,
        }
    }

    pub fn translations(lattice: Lattice) -> Self {
        SubgroupDesc { lattice, rot: None }
    }

    /// The whole group Γₖ.
    pub fn full(_ctx: GroupCtx) -> Self {
        SubgroupDesc {
            lattice: Lattice::full(),
            rot: Some(Elem::rotation(1)),
        }
    }

    pub fn lattice(&self) -> &Lattice {
        &self.lattice
    }

    pub fn rot(&self) -> Option<Elem> {
        self.rot
    }

    pub fn has_rotation(&self) -> bool {
        self.rot.is_some()
    }

    pub fn is_trivial(&self) -> bool {
        self.lattice.is_trivial() && self.rot.is_none()
    }

    /// Minimal positive rotation class present, if any.
    pub fn rot_class(&self) -> Option<u8> {
        self.rot.map(|g| g.r)
    }

    pub fn contains(&self, ctx: GroupCtx, g: Elem) -> bool {
        if g.is_translation() {
            return self.lattice.contains(g.t);
        }
        let Some(rot) = self.rot else { return false };
        let d = rot.r;
        if !g.r.is_multiple_of(d) {
            return false;
        }
        let j = (g.r / d) as i64;
        let h = ctx.compose(g, ctx.pow(rot, -j));
        debug_assert!(h.is_translation());
        self.lattice.contains(h.t)
    }

    /// Semantic equality of the described subgroups.
    pub fn same_subgroup(&self, ctx: GroupCtx, other: &SubgroupDesc) -> bool {
        if self.lattice != other.lattice || self.rot_class() != other.rot_class() {
            return false;
        }
        match (self.rot, other.rot) {
            (None, None) => true,
            (Some(a), Some(b)) => self.contains(ctx, b) && other.contains(ctx, a),
            _ => unreachable!("classes agreed"),
        }
    }

    pub fn is_subgroup_of(&self, ctx: GroupCtx, other: &SubgroupDesc) -> bool {
        self.generators(ctx)
            .iter()
            .all(|&g| other.contains(ctx, g))
    }

    /// A finite generating set: lattice basis translations plus the rotation.
    pub fn generators(&self, _ctx: GroupCtx) -> Vec<Elem> {
        let mut out: Vec<Elem> = self
            .lattice
            .basis()
            .iter()
            .map(|&v| Elem::translation(v[0], v[1]))
            .collect();
        out.extend(self.rot);
        out
    }

    pub fn join(&self, ctx: GroupCtx, other: &SubgroupDesc) -> SubgroupDesc {
        let mut gens = self.generators(ctx);
        gens.extend(other.generators(ctx));
        subgroup_from_generators(ctx, &gens)
    }

    pub fn join_elem(&self, ctx: GroupCtx, g: Elem) -> SubgroupDesc {
        let mut gens = self.generators(ctx);
        gens.push(g);
        subgroup_from_generators(ctx, &gens)
    }

    /// The conjugate subgroup γ⁻¹ Γ′ γ.
    pub fn conjugate(&self, ctx: GroupCtx, by: Elem) -> SubgroupDesc {
        let gens: Vec<Elem> = self
            .generators(ctx)
            .iter()
            .map(|&g| ctx.conjugate(g, by))
            .collect();
        subgroup_from_generators(ctx, &gens)
    }
}

/// Subgroup generated by arbitrary elements.
///
/// Closure over the k rotation classes finds one representative per class in
/// ⟨gens⟩; powers of the representative of minimal positive class d form a
/// transversal of the translation subgroup, whose generators
/// u·a·(rep of u·a)⁻¹ are read off and folded into a lattice.
pub fn subgroup_from_generators(ctx: GroupCtx, gens: &[Elem]) -> SubgroupDesc {
    let k = ctx.k() as usize;
    let mut all: Vec<Elem> = gens.to_vec();
    all.extend(gens.iter().map(|&g| ctx.inverse(g)));

    let mut reps: Vec<Option<Elem>> = vec![None; k];
    reps[0] = Some(Elem::identity());
    let mut queue: VecDeque<Elem> = VecDeque::from([Elem::identity()]);
    while let Some(u) = queue.pop_front() {
        for &a in &all {
            let s = ctx.compose(u, a);
            if reps[s.r as usize].is_none() {
                reps[s.r as usize] = Some(s);
                queue.push_back(s);
            }
        }
    }

    let Some(d) = (1..k).find(|&s| reps[s].is_some()) else {
        // Translations only; they commute, so the subgroup is their span.
        let vecs: Vec<[i64; 2]> = gens.iter().map(|g| g.t).collect();
        return SubgroupDesc {
            lattice: Lattice::from_vectors(&vecs),
            rot: None,
        };
    };
    debug_assert_eq!(k % d, 0, "classes present form a subgroup of Z/k");
    let g0 = reps[d].unwrap();
    let ord = k / d;
    let transversal: Vec<Elem> = (0..ord).map(|j| ctx.pow(g0, j as i64)).collect();
    let coset_rep = |g: Elem| -> Elem {
        debug_assert_eq!(g.r as usize % d, 0);
        transversal[g.r as usize / d]
    };

    let mut vecs = Vec::with_capacity(ord * all.len());
    for &u in &transversal {
        for &a in &all {
            let s = ctx.compose(u, a);
            let h = ctx.compose(s, ctx.inverse(coset_rep(s)));
            debug_assert!(h.is_translation());
            vecs.push(h.t);
        }
    }
    SubgroupDesc::new(ctx, Lattice::from_vectors(&vecs), Some(g0))
}

/// Dimension of the space of symmetry-compatible lattice representations.
pub fn rep_dim(ctx: GroupCtx, lattice: &Lattice) -> usize {
    if ctx.k() == 2 {
        2 * lattice.rank()
    } else if lattice.is_trivial() {
        0
    } else {
        2
    }
}

/// Dimension of the space of translations invariant under the subgroup: 2 when
/// only translations are present (including the trivial subgroup), 0 otherwise.
pub fn t_dim(sub: &SubgroupDesc) -> usize {
    if sub.has_rotation() {
        0
    } else {
        2
    }
}

/// Dimension of the centralizer of the subgroup inside the similarity motions.
pub fn cent_dim(sub: &SubgroupDesc) -> usize {
    match (sub.has_rotation(), sub.lattice.is_trivial()) {
        (true, false) => 0,
        (true, true) => 1,
        (false, false) => 2,
        (false, true) => 3,
    }
}

/// Dimension of the lattice deformation space modulo similarity.
pub fn teich_dim(ctx: GroupCtx, lattice: &Lattice) -> usize {
    if lattice.is_trivial() {
        0
    } else {
        rep_dim(ctx, lattice) - 1
    }
}

/// Fixed point of a non-translation element, as (numerator, denominator):
/// the unique solution of (I − Mˢ)c = t.
pub fn rotation_center(ctx: GroupCtx, g: Elem) -> ([i64; 2], i64) {
    assert!(g.r != 0);
    let m = mat_sub(IDENTITY_MAT, ctx.action_pow(g.r as i64));
    let det = mat_det(m);
    debug_assert!(det > 0, "I − Mˢ is invertible for s ≠ 0");
    (mat_vec(mat_adj(m), g.t), det)
}

/// Full stabilizer in Γₖ of the fixed point of `g`: the largest rotation
/// subgroup about the same center.
fn center_stabilizer(ctx: GroupCtx, g: Elem) -> SubgroupDesc {
    let (num, den) = rotation_center(ctx, g);
    let class_fixes_center = |s: u8| -> Option<[i64; 2]> {
        let m = mat_sub(IDENTITY_MAT, ctx.action_pow(s as i64));
        let w = mat_vec(m, num);
        (w[0] % den == 0 && w[1] % den == 0).then(|| [w[0] / den, w[1] / den])
    };
    for s in 1..ctx.k() {
        if let Some(t) = class_fixes_center(s) {
            return SubgroupDesc::new(ctx, Lattice::empty(), Some(Elem::new(t[0], t[1], s)));
        }
    }
    unreachable!("class of g itself fixes the center");
}

/// Largest supergroup of `sub` with the same rep_dim of its lattice and the
/// same t_dim.
pub fn radical(ctx: GroupCtx, sub: &SubgroupDesc) -> SubgroupDesc {
    if ctx.k() == 2 {
        // Half-turns about every saturated-lattice coset center share the
        // invariants, and saturation preserves lattice rank.
        return SubgroupDesc::new(ctx, sub.lattice.saturate(), sub.rot);
    }
    match (sub.rot, sub.lattice.is_trivial()) {
        (None, true) => SubgroupDesc::trivial(),
        (None, false) => SubgroupDesc::translations(Lattice::full()),
        (Some(_), false) => SubgroupDesc::full(ctx),
        (Some(g), true) => center_stabilizer(ctx, g),
    }
}

/// All products of at most `radius` factors from `gens` and their inverses,
/// sorted. Brute-force reference used to cross-check descriptor membership.
pub fn word_ball(ctx: GroupCtx, gens: &[Elem], radius: usize) -> Vec<Elem> {
    let mut all: Vec<Elem> = gens.to_vec();
    all.extend(gens.iter().map(|&g| ctx.inverse(g)));
    let mut seen: HashSet<Elem> = HashSet::from([Elem::identity()]);
    let mut frontier = vec![Elem::identity()];
    for _ in 0..radius {
        let mut next = Vec::new();
        for &u in &frontier {
            for &a in &all {
                let s = ctx.compose(u, a);
                if seen.insert(s) {
                    next.push(s);
                }
            }
        }
        frontier = next;
    }
    let mut out: Vec<Elem> = seen.into_iter().collect();
    out.sort_unstable();
    out
}
