//! Integer sublattices of Z² in Hermite normal form.
//!
//! Purpose:
//! - Canonical representation for translation lattices: 0, 1, or 2 basis rows.
//! - Exact membership, join (lattice generated by a union), and saturation
//!   (smallest subgroup of Z² containing the lattice with torsion-free quotient).
//!
//! Normal form, row style:
//! - rank 2: rows ((a, b), (0, c)) with a > 0, c > 0, 0 ≤ b < c;
//! - rank 1: a single row whose leading nonzero entry is positive;
//! - rank 0: no rows.
//!
//! Equal lattices have equal normal forms, so `PartialEq` is semantic equality.

use crate::group::{mat_vec, Mat2};

fn gcd(a: i64, b: i64) -> i64 {
    let (mut a, mut b) = (a.abs(), b.abs());
    while b != 0 {
        (a, b) = (b, a % b);
    }
    a
}

/// (g, u, w) with u·a + w·b = g = gcd(a, b) ≥ 0.
fn ext_gcd(a: i64, b: i64) -> (i64, i64, i64) {
    if b == 0 {
        return if a < 0 { (-a, -1, 0) } else { (a, 1, 0) };
    }
    let (g, u, w) = ext_gcd(b, a.rem_euclid(b));
    (g, w, u - a.div_euclid(b) * w)
}

#[derive(Clone, PartialEq, Eq, Hash, Debug)]
pub struct Lattice {
    rows: Vec<[i64; 2]>,
}

impl Lattice {
    pub fn empty() -> Self {
        Lattice { rows: Vec::new() }
    }

    pub fn full() -> Self {
        Lattice {
            rows: vec![[1, 0], [0, 1]],
        }
    }

    pub fn from_vectors(vecs: &[[i64; 2]]) -> Self {
        // Fold generators into at most one row with x ≠ 0 and one row (0, y),
        // then fix signs and reduce the off-pivot entry.
        let mut row0: Option<[i64; 2]> = None;
        let mut row1_y: i64 = 0;
        for &v in vecs {
            let mut v = v;
            if v[0] != 0 {
                match row0 {
                    None => {
                        row0 = Some(v);
                        continue;
                    }
                    Some(r0) => {
                        let (g, u, w) = ext_gcd(r0[0], v[0]);
                        row0 = Some([g, u * r0[1] + w * v[1]]);
                        v = [0, (r0[0] / g) * v[1] - (v[0] / g) * r0[1]];
                    }
                }
            }
            if v[1] != 0 {
                row1_y = gcd(row1_y, v[1]);
            }
        }
        let mut rows = Vec::new();
        match (row0, row1_y) {
            (None, 0) => {}
            (None, c) => rows.push([0, c.abs()]),
            (Some([a, b]), 0) => {
                rows.push(if a < 0 { [-a, -b] } else { [a, b] });
            }
            (Some([a, b]), c) => {
                let c = c.abs();
                rows.push([a.abs(), (if a < 0 { -b } else { b }).rem_euclid(c)]);
                rows.push([0, c]);
            }
        }
        Lattice { rows }
    }

    pub fn rank(&self) -> usize {
        self.rows.len()
    }

    pub fn basis(&self) -> &[[i64; 2]] {
        &self.rows
    }

    pub fn is_trivial(&self) -> bool {
        self.rows.is_empty()
    }

    pub fn is_full(&self) -> bool {
        self.rows == [[1, 0], [0, 1]]
    }

    pub fn contains(&self, v: [i64; 2]) -> bool {
        match self.rows.as_slice() {
            [] => v == [0, 0],
            [row] => {
                if row[0] != 0 {
                    v[0] % row[0] == 0 && v[1] == (v[0] / row[0]) * row[1]
                } else {
                    v[0] == 0 && v[1] % row[1] == 0
                }
            }
            [r0, r1] => {
                if v[0] % r0[0] != 0 {
                    return false;
                }
                (v[1] - (v[0] / r0[0]) * r0[1]) % r1[1] == 0
            }
            _ => unreachable!("normal form has at most two rows"),
        }
    }

    /// Smallest lattice containing both operands.
    pub fn join(&self, other: &Lattice) -> Lattice {
        let mut vecs = self.rows.clone();
        vecs.extend_from_slice(&other.rows);
        Lattice::from_vectors(&vecs)
    }

    /// Saturation: all of Z² for rank 2, the primitive vector on the same line
    /// for rank 1, unchanged for rank 0.
    pub fn saturate(&self) -> Lattice {
        match self.rows.as_slice() {
            [] => Lattice::empty(),
            [row] => {
                let g = gcd(row[0], row[1]);
                Lattice {
                    rows: vec![[row[0] / g, row[1] / g]],
                }
            }
            _ => Lattice::full(),
        }
    }

    /// Image under an integer matrix of nonzero determinant.
    pub fn map(&self, m: Mat2) -> Lattice {
        let vecs: Vec<[i64; 2]> = self.rows.iter().map(|&v| mat_vec(m, v)).collect();
        Lattice::from_vectors(&vecs)
    }

    pub fn is_sublattice_of(&self, other: &Lattice) -> bool {
        self.rows.iter().all(|&v| other.contains(v))
    }
}
