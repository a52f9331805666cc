//! The matroid M_{Γₖ,n} on n labeled copies of Γₖ.
//!
//! Purpose:
//! - Ground set: pairs (γ, copy) with γ ∈ Γₖ and 0 ≤ copy < n, materialized
//!   lazily — a state stores only the chosen elements.
//! - Rank function g₁(A) = n + ½·rep_dim(Λ(A)) − ½·Σᵢ t_dim(Γ_{A,i}), where
//!   Γ_{A,i} = ⟨A_i⟩ and Λ(A) is the *join of the per-copy lattices* (not the
//!   translation subgroup generated by ∪A_i, which may be larger).
//! - A is independent iff |A| = g₁(A); tight iff additionally
//!   |A| = c(A) + ½·rep_dim(Λ(Γₖ)); spanning iff g₁(A) = c(A) + ½·rep_dim(Λ(Γₖ)).
//! - Transformations: per-copy conjugation, separation onto an empty copy, and
//!   fusing two non-empty copies.

use crate::group::{Elem, GroupCtx};
use crate::lattice::Lattice;
use crate::subgroup::{rep_dim, t_dim, SubgroupDesc};

#[derive(Clone, Debug)]
pub struct SubsetState {
    ctx: GroupCtx,
    copies: Vec<Vec<Elem>>,
    subs: Vec<SubgroupDesc>,
    lattice: Lattice,
}

impl SubsetState {
    pub fn new(ctx: GroupCtx, n: usize) -> Self {
        assert!(n >= 1);
        SubsetState {
            ctx,
            copies: vec![Vec::new(); n],
            subs: vec![SubgroupDesc::trivial(); n],
            lattice: Lattice::empty(),
        }
    }

    pub fn from_elements(ctx: GroupCtx, n: usize, elems: &[(Elem, usize)]) -> Self {
        let mut state = SubsetState::new(ctx, n);
        for &(g, i) in elems {
            state.insert(g, i);
        }
        state
    }

    pub fn n(&self) -> usize {
        self.copies.len()
    }

    pub fn size(&self) -> usize {
        self.copies.iter().map(Vec::len).sum()
    }

    pub fn copy_elems(&self, i: usize) -> &[Elem] {
        &self.copies[i]
    }

    pub fn copy_subgroup(&self, i: usize) -> &SubgroupDesc {
        &self.subs[i]
    }

    /// Λ(A): join of the per-copy translation lattices.
    pub fn lattice(&self) -> &Lattice {
        &self.lattice
    }

    /// Number of non-empty copies c(A).
    pub fn nonempty_copies(&self) -> usize {
        self.copies.iter().filter(|c| !c.is_empty()).count()
    }

    pub fn insert(&mut self, g: Elem, i: usize) {
        self.copies[i].push(g);
        self.subs[i] = self.subs[i].join_elem(self.ctx, g);
        // Per-copy lattices only grow, so the global join can be accumulated.
        self.lattice = self.lattice.join(self.subs[i].lattice());
    }

    pub fn g1_rank(&self) -> usize {
        let numer = 2 * self.n() + rep_dim(self.ctx, &self.lattice)
            - self.subs.iter().map(t_dim).sum::<usize>();
        debug_assert_eq!(numer % 2, 0, "rep_dim and t_dim are even");
        numer / 2
    }

    pub fn is_independent(&self) -> bool {
        self.size() == self.g1_rank()
    }

    /// Whether inserting (g, ℓ) into an independent state keeps it independent:
    /// true iff g₁ increases by one, evaluated on the augmented copy subgroup
    /// H = ⟨Γ_{A,ℓ}, Λ(A)⟩ without touching the other copies.
    pub fn insert_keeps_independent(&self, g: Elem, l: usize) -> bool {
        debug_assert!(self.is_independent());
        let h = self
            .subs[l]
            .join(self.ctx, &SubgroupDesc::translations(self.lattice.clone()));
        let h2 = h.join_elem(self.ctx, g);
        let before = rep_dim(self.ctx, h.lattice()) as i64 - t_dim(&h) as i64;
        let after = rep_dim(self.ctx, h2.lattice()) as i64 - t_dim(&h2) as i64;
        debug_assert!(after - before == 0 || after - before == 2);
        after - before == 2
    }

    pub fn is_tight(&self) -> bool {
        self.is_independent()
            && self.size() == self.nonempty_copies() + rep_dim(self.ctx, &Lattice::full()) / 2
    }

    pub fn is_spanning(&self) -> bool {
        self.g1_rank() == self.nonempty_copies() + rep_dim(self.ctx, &Lattice::full()) / 2
    }

    /// Replace each A_i by γᵢ⁻¹·A_i·γᵢ.
    pub fn conjugate(&self, by: &[Elem]) -> SubsetState {
        assert_eq!(by.len(), self.n());
        let elems: Vec<(Elem, usize)> = self
            .copies
            .iter()
            .enumerate()
            .flat_map(|(i, c)| {
                c.iter()
                    .map(move |&g| (self.ctx.conjugate(g, by[i]), i))
            })
            .collect();
        SubsetState::from_elements(self.ctx, self.n(), &elems)
    }

    /// Move the listed positions of A_i onto the empty copy j.
    pub fn separate(&self, i: usize, j: usize, positions: &[usize]) -> SubsetState {
        assert!(self.copies[j].is_empty(), "target copy must be empty");
        let elems: Vec<(Elem, usize)> = self
            .copies
            .iter()
            .enumerate()
            .flat_map(|(c, elems)| {
                elems.iter().enumerate().map(move |(p, &g)| {
                    let target = if c == i && positions.contains(&p) { j } else { c };
                    (g, target)
                })
            })
            .collect();
        SubsetState::from_elements(self.ctx, self.n(), &elems)
    }

    /// Merge A_j into A_i, leaving copy j empty.
    pub fn fuse(&self, i: usize, j: usize) -> SubsetState {
        assert!(i != j && !self.copies[i].is_empty() && !self.copies[j].is_empty());
        let elems: Vec<(Elem, usize)> = self
            .copies
            .iter()
            .enumerate()
            .flat_map(|(c, elems)| {
                let target = if c == j { i } else { c };
                elems.iter().map(move |&g| (g, target))
            })
            .collect();
        SubsetState::from_elements(self.ctx, self.n(), &elems)
    }
}

/// Per-copy subgroups recomputed from scratch; used to validate the cached state.
#[cfg(test)]
fn recompute(
    state: &SubsetState,
    ctx: GroupCtx,
) -> (Vec<SubgroupDesc>, Lattice) {
    use crate::subgroup::subgroup_from_generators;
    let subs: Vec<SubgroupDesc> = (0..state.n())
        .map(|i| subgroup_from_generators(ctx, state.copy_elems(i)))
        .collect();
    let mut lattice = Lattice::empty();
    for s in &subs {
        lattice = lattice.join(s.lattice());
    }
    (subs, lattice)
}
