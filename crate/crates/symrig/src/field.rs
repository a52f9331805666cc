//! Exact scalar arithmetic for direction-network and rigidity systems.
//!
//! Purpose:
//! - The prime field F_p with p = 2⁶¹ − 1 and its quadratic extension
//!   F_p(√3), which is a genuine field because 3 is a quadratic non-residue
//!   mod p (checked in the tests via Euler's criterion).
//! - The [`Scalar`] abstraction that system assembly and elimination are
//!   generic over; `f64` implements it too for the floating extraction path.
//! - The geometric rotation matrices R_k^r, whose entries all have the form
//!   (a + b√3)/2 with integer a, b, so [`Scalar::from_halves`] is the only
//!   constructor assembly needs.
//!
//! Notes:
//! - Elimination verdicts always come from the exact types; `f64` is used
//!   solely to turn an exact solution into drawable coordinates.
//! - `inv` is only ever called on pivots already known to be nonzero.

use rand::Rng;
use std::fmt::Debug;
use std::ops::{Add, Mul, Neg, Sub};

/// Field operations needed by Gaussian elimination and row assembly.
pub trait Scalar:
    Copy
    + PartialEq
    + Debug
    + Add<Output = Self>
    + Sub<Output = Self>
    + Mul<Output = Self>
    + Neg<Output = Self>
{
    fn zero() -> Self;
    fn one() -> Self;
    fn from_i64(v: i64) -> Self;
    /// (units + sqrt3s·√3) / 2 — the shape of every rotation-matrix entry.
    fn from_halves(units: i64, sqrt3s: i64) -> Self;
    /// Multiplicative inverse; callers must not pass zero.
    fn inv(self) -> Self;
    fn is_zero(self) -> bool;
}

/// The Mersenne prime 2⁶¹ − 1.
pub const P: u64 = (1u64 << 61) - 1;

/// Element of F_p, kept reduced to [0, p).
#[derive(Clone, Copy, PartialEq, Eq, Hash, Debug)]
pub struct Fp(u64);

impl Fp {
    pub fn new(v: u64) -> Self {
        Fp(v % P)
    }

    pub fn value(self) -> u64 {
        self.0
    }

    pub fn pow(self, mut e: u64) -> Self {
        let mut base = self;
        let mut out = Fp(1);
        while e > 0 {
            if e & 1 == 1 {
                out = out * base;
            }
            base = base * base;
            e >>= 1;
        }
        out
    }

    pub fn sample(rng: &mut impl Rng) -> Self {
        Fp(rng.gen_range(0..P))
    }
}

impl Add for Fp {
    type Output = Fp;
    fn add(self, rhs: Fp) -> Fp {
        let s = self.0 + rhs.0; // < 2p < 2⁶³, no overflow
        Fp(if s >= P { s - P } else { s })
    }
}

impl Sub for Fp {
    type Output = Fp;
    fn sub(self, rhs: Fp) -> Fp {
        Fp(if self.0 >= rhs.0 {
            self.0 - rhs.0
        } else {
            self.0 + P - rhs.0
        })
    }
}

impl Neg for Fp {
    type Output = Fp;
    fn neg(self) -> Fp {
        Fp(if self.0 == 0 { 0 } else { P - self.0 })
    }
}

impl Mul for Fp {
    type Output = Fp;
    fn mul(self, rhs: Fp) -> Fp {
        // Mersenne reduction: x = hi·2⁶¹ + lo ≡ hi + lo (mod p).
        let wide = self.0 as u128 * rhs.0 as u128;
        let folded = (wide & P as u128) as u64 + (wide >> 61) as u64;
        Fp(if folded >= P { folded - P } else { folded })
    }
}

impl Scalar for Fp {
    fn zero() -> Self {
        Fp(0)
    }

    fn one() -> Self {
        Fp(1)
    }

    fn from_i64(v: i64) -> Self {
        Fp((v as i128).rem_euclid(P as i128) as u64)
    }

    fn from_halves(units: i64, sqrt3s: i64) -> Self {
        assert_eq!(sqrt3s, 0, "√3 does not lie in F_p; use Fp2");
        Fp::from_i64(units) * Fp(2).inv()
    }

    fn inv(self) -> Self {
        debug_assert!(self.0 != 0, "inverse of zero");
        self.pow(P - 2)
    }

    fn is_zero(self) -> bool {
        self.0 == 0
    }
}

/// Element a + b√3 of F_p(√3).
#[derive(Clone, Copy, PartialEq, Eq, Hash, Debug)]
pub struct Fp2 {
    pub a: Fp,
    pub b: Fp,
}

impl Fp2 {
    pub fn new(a: Fp, b: Fp) -> Self {
        Fp2 { a, b }
    }

    /// Uniform over all p² elements.
    pub fn sample(rng: &mut impl Rng) -> Self {
        Fp2 {
            a: Fp::sample(rng),
            b: Fp::sample(rng),
        }
    }
}

impl Add for Fp2 {
    type Output = Fp2;
    fn add(self, rhs: Fp2) -> Fp2 {
        Fp2 {
            a: self.a + rhs.a,
            b: self.b + rhs.b,
        }
    }
}

impl Sub for Fp2 {
    type Output = Fp2;
    fn sub(self, rhs: Fp2) -> Fp2 {
        Fp2 {
            a: self.a - rhs.a,
            b: self.b - rhs.b,
        }
    }
}

impl Neg for Fp2 {
    type Output = Fp2;
    fn neg(self) -> Fp2 {
        Fp2 {
            a: -self.a,
            b: -self.b,
        }
    }
}

impl Mul for Fp2 {
    type Output = Fp2;
    fn mul(self, rhs: Fp2) -> Fp2 {
        // (a + b√3)(c + d√3) = (ac + 3bd) + (ad + bc)√3
        let three = Fp::new(3);
        Fp2 {
            a: self.a * rhs.a + three * self.b * rhs.b,
            b: self.a * rhs.b + self.b * rhs.a,
        }
    }
}

impl Scalar for Fp2 {
    fn zero() -> Self {
        Fp2 {
            a: Fp::zero(),
            b: Fp::zero(),
        }
    }

    fn one() -> Self {
        Fp2 {
            a: Fp::one(),
            b: Fp::zero(),
        }
    }

    fn from_i64(v: i64) -> Self {
        Fp2 {
            a: Fp::from_i64(v),
            b: Fp::zero(),
        }
    }

    fn from_halves(units: i64, sqrt3s: i64) -> Self {
        let half = Fp::new(2).inv();
        Fp2 {
            a: Fp::from_i64(units) * half,
            b: Fp::from_i64(sqrt3s) * half,
        }
    }

    fn inv(self) -> Self {
        // Norm a² − 3b² vanishes only at zero because 3 is a non-residue.
        let three = Fp::new(3);
        let norm = self.a * self.a - three * self.b * self.b;
        debug_assert!(norm.0 != 0, "inverse of zero");
        let n = norm.inv();
        Fp2 {
            a: self.a * n,
            b: -self.b * n,
        }
    }

    fn is_zero(self) -> bool {
        self.a.0 == 0 && self.b.0 == 0
    }
}

impl Scalar for f64 {
    fn zero() -> Self {
        0.0
    }

    fn one() -> Self {
        1.0
    }

    fn from_i64(v: i64) -> Self {
        v as f64
    }

    fn from_halves(units: i64, sqrt3s: i64) -> Self {
        (units as f64 + sqrt3s as f64 * 3f64.sqrt()) / 2.0
    }

    fn inv(self) -> Self {
        1.0 / self
    }

    fn is_zero(self) -> bool {
        self == 0.0
    }
}

// cos and sin of π·a/6 for a = 0..12, as (units, sqrt3s) half-pairs.
const COS_TWELFTHS: [(i64, i64); 12] = [
    (2, 0),
    (0, 1),
    (1, 0),
    (0, 0),
    (-1, 0),
    (0, -1),
    (-2, 0),
    (0, -1),
    (-1, 0),
    (0, 0),
    (1, 0),
    (0, 1),
];
const SIN_TWELFTHS: [(i64, i64); 12] = [
    (0, 0),
    (1, 0),
    (0, 1),
    (2, 0),
    (0, 1),
    (1, 0),
    (0, 0),
    (-1, 0),
    (0, -1),
    (-2, 0),
    (0, -1),
    (-1, 0),
];

/// Geometric rotation R_k^r = [[cos, −sin], [sin, cos]] of angle 2πr/k.
///
/// All angles are multiples of π/6 for the supported k, so the entries come
/// from a fixed table of half-integer/half-√3 values and are exact in every
/// scalar type (in particular cos(π/2) is exactly zero in `f64`).
pub fn rotation_matrix<S: Scalar>(k: u8, r: i64) -> [[S; 2]; 2] {
    assert!(crate::group::SUPPORTED_K.contains(&k), "unsupported k={k}");
    let r = r.rem_euclid(k as i64) as usize;
    let twelfth = r * 12 / k as usize;
    let (cu, cs) = COS_TWELFTHS[twelfth];
    let (su, ss) = SIN_TWELFTHS[twelfth];
    let c = S::from_halves(cu, cs);
    let s = S::from_halves(su, ss);
    [[c, -s], [s, c]]
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::group::{mat_vec, GroupCtx, SUPPORTED_K};
    use rand::SeedableRng;
    use rand_chacha::ChaCha8Rng;

    fn mul2<S: Scalar>(a: [[S; 2]; 2], b: [[S; 2]; 2]) -> [[S; 2]; 2] {
        let mut out = [[S::zero(); 2]; 2];
        for i in 0..2 {
            for j in 0..2 {
                out[i][j] = a[i][0] * b[0][j] + a[i][1] * b[1][j];
            }
        }
        out
    }

    fn apply2<S: Scalar>(a: [[S; 2]; 2], v: [S; 2]) -> [S; 2] {
        [
            a[0][0] * v[0] + a[0][1] * v[1],
            a[1][0] * v[0] + a[1][1] * v[1],
        ]
    }

    #[test]
    fn prime_field_arithmetic_wraps_at_the_mersenne_modulus() {
        assert_eq!(Fp::from_i64(-1), Fp(P - 1));
        assert_eq!(Fp(P - 1) + Fp(2), Fp(1));
        assert_eq!(Fp(P - 1) * Fp(P - 1), Fp(1)); // (−1)² = 1
        assert_eq!(Fp(3) - Fp(5), Fp(P - 2));
        assert_eq!(-Fp(0), Fp(0));
    }

    #[test]
    fn fermat_and_euler_certify_the_modulus_and_the_extension() {
        // 3^(p−1) = 1 certifies p prime enough for our purposes (p is the
        // well-known Mersenne prime 2⁶¹−1); 3^((p−1)/2) = −1 certifies that
        // 3 is a quadratic non-residue, so F_p(√3) is a field.
        assert_eq!(Fp(3).pow(P - 1), Fp(1));
        assert_eq!(Fp(3).pow((P - 1) / 2), Fp(P - 1));
    }

    #[test]
    fn inverses_round_trip_in_both_exact_fields() {
        let mut rng = ChaCha8Rng::seed_from_u64(7);
        for _ in 0..200 {
            let x = Fp::sample(&mut rng);
            if !x.is_zero() {
                assert_eq!(x * x.inv(), Fp::one());
            }
            let y = Fp2::sample(&mut rng);
            if !y.is_zero() {
                assert_eq!(y * y.inv(), Fp2::one());
            }
        }
    }

    #[test]
    fn extension_multiplication_follows_the_sqrt3_rule() {
        // (1 + √3)(2 + 5√3) = 2 + 5·3 + (5 + 2)√3 = 17 + 7√3
        let x = Fp2::new(Fp(1), Fp(1));
        let y = Fp2::new(Fp(2), Fp(5));
        assert_eq!(x * y, Fp2::new(Fp(17), Fp(7)));
        // ((1+√3)/2)·((1−√3)/2) = (1−3)/4 = −1/2
        let u = Fp2::from_halves(1, 1);
        let v = Fp2::from_halves(1, -1);
        assert_eq!(u * v, Fp2::from_halves(-1, 0));
    }

    #[test]
    fn from_halves_matches_float_evaluation() {
        let x: f64 = Scalar::from_halves(1, 1);
        assert!((x - (1.0 + 3f64.sqrt()) / 2.0).abs() < 1e-15);
        let z: f64 = Scalar::from_halves(0, 0);
        assert_eq!(z, 0.0);
    }

    #[test]
    fn rotation_matrices_have_exact_order_k_and_determinant_one() {
        for &k in &SUPPORTED_K {
            for field in 0..2 {
                // Run the same checks over Fp2 and f64.
                if field == 0 {
                    let r = rotation_matrix::<Fp2>(k, 1);
                    let mut acc = r;
                    for j in 2..=k {
                        acc = mul2(acc, r);
                        assert_eq!(acc, rotation_matrix::<Fp2>(k, j as i64));
                    }
                    assert_eq!(acc, rotation_matrix::<Fp2>(k, 0));
                    let det = r[0][0] * r[1][1] - r[0][1] * r[1][0];
                    assert_eq!(det, Fp2::one());
                } else {
                    let r = rotation_matrix::<f64>(k, 1);
                    let det = r[0][0] * r[1][1] - r[0][1] * r[1][0];
                    assert!((det - 1.0).abs() < 1e-15);
                }
            }
        }
    }

    #[test]
    fn quarter_turn_entries_are_exact_in_floating_point() {
        // The table avoids cos(π/2) ≈ 6.1e−17 from the libm path.
        assert_eq!(rotation_matrix::<f64>(4, 1), [[0.0, -1.0], [1.0, 0.0]]);
        assert_eq!(rotation_matrix::<f64>(2, 1), [[-1.0, 0.0], [0.0, -1.0]]);
        let r6 = rotation_matrix::<f64>(6, 1);
        assert_eq!(r6[0][0], 0.5);
        assert_eq!(r6[1][0], 3f64.sqrt() / 2.0);
    }

    #[test]
    fn frozen_r3_entries_match_the_half_table() {
        let r = rotation_matrix::<Fp2>(3, 1);
        assert_eq!(r[0][0], Fp2::from_halves(-1, 0));
        assert_eq!(r[0][1], Fp2::from_halves(0, -1));
        assert_eq!(r[1][0], Fp2::from_halves(0, 1));
        assert_eq!(r[1][1], Fp2::from_halves(-1, 0));
    }

    #[test]
    fn lattice_action_intertwines_with_the_pinned_representation() {
        // With v₂ = R·v₁ the linear map Φ_v(t) = t₁v₁ + t₂v₂ satisfies
        // Φ_v(M·t) = R·Φ_v(t) for the integer lattice action M, for every k.
        // This is the consistency condition behind the pinned coordinates.
        let mut rng = ChaCha8Rng::seed_from_u64(11);
        for &k in &SUPPORTED_K {
            let ctx = GroupCtx::new(k).unwrap();
            let rot = rotation_matrix::<Fp2>(k, 1);
            let v1 = [Fp2::sample(&mut rng), Fp2::sample(&mut rng)];
            let v2 = apply2(rot, v1);
            let phi = |t: [i64; 2]| {
                [
                    Fp2::from_i64(t[0]) * v1[0] + Fp2::from_i64(t[1]) * v2[0],
                    Fp2::from_i64(t[0]) * v1[1] + Fp2::from_i64(t[1]) * v2[1],
                ]
            };
            for t in [[1i64, 0], [0, 1], [3, -2]] {
                let lhs = phi(mat_vec(ctx.action(), t));
                let rhs = apply2(rot, phi(t));
                assert_eq!(lhs, rhs, "k={k} t={t:?}");
            }
        }
    }

    #[test]
    fn sampling_is_seed_deterministic() {
        let mut a = ChaCha8Rng::seed_from_u64(5);
        let mut b = ChaCha8Rng::seed_from_u64(5);
        for _ in 0..32 {
            assert_eq!(Fp2::sample(&mut a), Fp2::sample(&mut b));
        }
    }
}
