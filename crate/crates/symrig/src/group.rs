//! Exact arithmetic in the orientation-preserving wallpaper groups Γₖ = Z² ⋊ Z/kZ.
//!
//! Purpose:
//! - Represent group elements as (t, r): an integer translation part t in lattice
//!   coordinates and a rotation class r mod k, for k ∈ {2, 3, 4, 6}.
//! - Composition follows (t, r)·(t', r') = (t + Mʳ·t', r + r' mod k), where M is the
//!   integer matrix by which the order-k rotation acts on the translation lattice.
//!
//! Notes:
//! - All operations are total and pure; elements are plain `Copy` data.
//! - The derived `Ord` on [`Elem`] (lexicographic on (t.x, t.y, r)) is the canonical
//!   color order used when serializing colored graphs.

/// 2×2 integer matrix, row major.
pub type Mat2 = [[i64; 2]; 2];

pub const IDENTITY_MAT: Mat2 = [[1, 0], [0, 1]];

/// Rotation orders with a crystallographic restriction in the plane.
pub const SUPPORTED_K: [u8; 4] = [2, 3, 4, 6];

pub fn mat_mul(a: Mat2, b: Mat2) -> Mat2 {
    let mut out = [[0i64; 2]; 2];
    for i in 0..2 {
        for j in 0..2 {
            out[i][j] = a[i][0] * b[0][j] + a[i][1] * b[1][j];
        }
    }
    out
}

pub fn mat_vec(a: Mat2, v: [i64; 2]) -> [i64; 2] {
    [a[0][0] * v[0] + a[0][1] * v[1], a[1][0] * v[0] + a[1][1] * v[1]]
}

pub fn mat_det(a: Mat2) -> i64 {
    a[0][0] * a[1][1] - a[0][1] * a[1][0]
}

/// Adjugate: `a · adj(a) = det(a) · I`.
pub fn mat_adj(a: Mat2) -> Mat2 {
    [[a[1][1], -a[0][1]], [-a[1][0], a[0][0]]]
}

pub fn mat_sub(a: Mat2, b: Mat2) -> Mat2 {
    [
        [a[0][0] - b[0][0], a[0][1] - b[0][1]],
        [a[1][0] - b[1][0], a[1][1] - b[1][1]],
    ]
}

/// One of the four groups Γ₂, Γ₃, Γ₄, Γ₆ (or the Z/kZ cone quotient of the same
/// order, which shares all the class arithmetic).
#[derive(Clone, Copy, PartialEq, Eq, Hash, Debug)]
pub struct GroupCtx {
    k: u8,
}

impl GroupCtx {
    pub fn new(k: u8) -> Option<Self> {
        SUPPORTED_K.contains(&k).then_some(GroupCtx { k })
    }

    pub fn k(self) -> u8 {
        self.k
    }

    /// Integer action of the order-k rotation generator on the translation lattice.
    pub fn action(self) -> Mat2 {
        match self.k {
            2 => [[-1, 0], [0, -1]],
            3 => [[0, -1], [1, -1]],
            4 => [[0, -1], [1, 0]],
            6 => [[0, -1], [1, 1]],
            _ => unreachable!("constructor restricts k"),
        }
    }

    /// Mˢ for s taken mod k.
    pub fn action_pow(self, s: i64) -> Mat2 {
        let s = s.rem_euclid(self.k as i64) as u8;
        let m = self.action();
        let mut out = IDENTITY_MAT;
        for _ in 0..s {
            out = mat_mul(out, m);
        }
        out
    }

    pub fn class(self, r: i64) -> u8 {
        r.rem_euclid(self.k as i64) as u8
    }

    pub fn compose(self, a: Elem, b: Elem) -> Elem {
        let rotated = mat_vec(self.action_pow(a.r as i64), b.t);
        Elem {
            t: [a.t[0] + rotated[0], a.t[1] + rotated[1]],
            r: self.class(a.r as i64 + b.r as i64),
        }
    }

    pub fn inverse(self, a: Elem) -> Elem {
        let r_inv = self.class(-(a.r as i64));
        let back = mat_vec(self.action_pow(r_inv as i64), a.t);
        Elem {
            t: [-back[0], -back[1]],
            r: r_inv,
        }
    }

    /// aᵉ for any integer e (negative exponents via the inverse).
    pub fn pow(self, a: Elem, e: i64) -> Elem {
        let base = if e < 0 { self.inverse(a) } else { a };
        let mut out = Elem::identity();
        for _ in 0..e.abs() {
            out = self.compose(out, base);
        }
        out
    }

    pub fn conjugate(self, g: Elem, by: Elem) -> Elem {
        self.compose(self.compose(self.inverse(by), g), by)
    }
}

/// A group element (t, r): translation part t ∈ Z², rotation class 0 ≤ r < k.
#[derive(Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Debug)]
pub struct Elem {
    pub t: [i64; 2],
    pub r: u8,
}

impl Elem {
    pub fn identity() -> Self {
        Elem { t: [0, 0], r: 0 }
    }

    pub fn translation(x: i64, y: i64) -> Self {
        Elem { t: [x, y], r: 0 }
    }

    pub fn rotation(r: u8) -> Self {
        Elem { t: [0, 0], r }
    }

    pub fn new(x: i64, y: i64, r: u8) -> Self {
        Elem { t: [x, y], r }
    }

    pub fn is_translation(self) -> bool {
        self.r == 0
    }

    pub fn is_identity(self) -> bool {
        self.t == [0, 0] && self.r == 0
    }
}

impl std::fmt::Display for Elem {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        write!(f, "(({},{}),{})", self.t[0], self.t[1], self.r)
    }
}
