//! Dense Gaussian elimination over an exact scalar field.
//!
//! Purpose: rank, reduced row-echelon form, and nullspace bases for the
//! direction-network and rigidity systems. Pivoting is exact (first nonzero
//! entry), so the results are certificates, not estimates.
//!
//! Notes: the floating realization path never goes through this module; it
//! uses SVD with an explicit tolerance instead. Systems here are small
//! (columns ≤ 2n + 4), so dense rows are the simplest correct choice.

use crate::field::Scalar;

/// Reduce `rows` (each of width `cols`) in place to reduced row-echelon form.
/// Returns the pivot columns in order; the rank is their count.
// Indexed loops: the pivot row is read while every other row is written.
#[allow(clippy::needless_range_loop)]
pub fn rref<S: Scalar>(rows: &mut [Vec<S>], cols: usize) -> Vec<usize> {
    let mut pivots = Vec::new();
    let mut row = 0;
    for col in 0..cols {
        let Some(found) = (row..rows.len()).find(|&i| !rows[i][col].is_zero()) else {
            continue;
        };
        rows.swap(row, found);
        let scale = rows[row][col].inv();
        for c in col..cols {
            rows[row][c] = rows[row][c] * scale;
        }
        for i in 0..rows.len() {
            if i != row && !rows[i][col].is_zero() {
                let factor = rows[i][col];
                for c in col..cols {
                    let sub = factor * rows[row][c];
                    rows[i][c] = rows[i][c] - sub;
                }
            }
        }
        pivots.push(col);
        row += 1;
        if row == rows.len() {
            break;
        }
    }
    pivots
}

pub fn rank<S: Scalar>(rows: &[Vec<S>], cols: usize) -> usize {
    let mut work: Vec<Vec<S>> = rows.to_vec();
    rref(&mut work, cols).len()
}

/// Basis of { x : A·x = 0 }, one vector per free column. For each free
/// column j the vector has x_j = 1 and pivot entries read off the rref.
pub fn nullspace<S: Scalar>(rows: &[Vec<S>], cols: usize) -> Vec<Vec<S>> {
    let mut work: Vec<Vec<S>> = rows.to_vec();
    let pivots = rref(&mut work, cols);
    let mut basis = Vec::with_capacity(cols - pivots.len());
    for free in 0..cols {
        if pivots.contains(&free) {
            continue;
        }
        let mut v = vec![S::zero(); cols];
        v[free] = S::one();
        for (r, &pc) in pivots.iter().enumerate() {
            v[pc] = -work[r][free];
        }
        basis.push(v);
    }
    basis
}

/// A·x for a dense row list.
pub fn apply<S: Scalar>(rows: &[Vec<S>], x: &[S]) -> Vec<S> {
    rows.iter()
        .map(|row| {
            row.iter()
                .zip(x)
                .fold(S::zero(), |acc, (&a, &b)| acc + a * b)
        })
        .collect()
}

/// Floating nullspace via SVD: right singular vectors whose singular value
/// is at most `rel_tol` times the largest one. The matrix is padded with
/// zero rows to square so the full set of right singular vectors exists.
pub fn svd_nullspace(rows: &[Vec<f64>], cols: usize, rel_tol: f64) -> Vec<Vec<f64>> {
    let nrows = rows.len().max(cols);
    let a = nalgebra::DMatrix::from_fn(nrows, cols, |i, j| {
        rows.get(i).map_or(0.0, |row| row[j])
    });
    let svd = a.svd(false, true);
    let vt = svd.v_t.expect("requested right singular vectors");
    let sigma = svd.singular_values;
    let smax = sigma.iter().cloned().fold(0.0f64, f64::max);
    (0..vt.nrows())
        .filter(|&i| sigma[i] <= rel_tol * smax)
        .map(|i| vt.row(i).iter().cloned().collect())
        .collect()
}
