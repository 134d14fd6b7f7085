//! Gauss-Jordan elimination over the rationals.
//!
//! Matrices are row-major `Vec<Vector>` with an explicit column count so
//! that empty matrices still carry their shape.

use num_traits::{One, Signed, Zero};

use crate::scalar::{axpy, zero_vector, Scalar, Vector};

/// Reduced row-echelon form with unit pivots. Zero rows are dropped.
/// Returns the nonzero rows and their pivot columns (strictly increasing).
pub fn rref(mut rows: Vec<Vector>, ncols: usize) -> (Vec<Vector>, Vec<usize>) {
    let mut pivots = Vec::new();
    let mut rank = 0;
    for col in 0..ncols {
        if rank == rows.len() {
            break;
        }
        let Some(p) = (rank..rows.len()).find(|&r| !rows[r][col].is_zero()) else {
            continue;
        };
        rows.swap(rank, p);
        let inv = rows[rank][col].recip();
        if !inv.is_one() {
            for x in rows[rank].iter_mut() {
                *x *= &inv;
            }
        }
        let pivot_row = rows[rank].clone();
        for (r, row) in rows.iter_mut().enumerate() {
            if r != rank && !row[col].is_zero() {
                let f = -row[col].clone();
                axpy(row, &f, &pivot_row);
            }
        }
        pivots.push(col);
        rank += 1;
    }
    rows.truncate(rank);
    (rows, pivots)
}

pub fn rank(rows: Vec<Vector>, ncols: usize) -> usize {
    rref(rows, ncols).1.len()
}

/// Basis of `{x : A x = 0}`, one vector per free column, in column order.
pub fn nullspace(rows: Vec<Vector>, ncols: usize) -> Vec<Vector> {
    let (red, pivots) = rref(rows, ncols);
    let mut is_pivot = vec![false; ncols];
    for &p in &pivots {
        is_pivot[p] = true;
    }
    (0..ncols)
        .filter(|&c| !is_pivot[c])
        .map(|free| {
            let mut x = zero_vector(ncols);
            x[free] = Scalar::one();
            for (row, &p) in red.iter().zip(&pivots) {
                x[p] = -row[free].clone();
            }
            x
        })
        .collect()
}

/// Some solution of `A x = b`, or `None` if the system is inconsistent.
/// Free variables are set to zero.
pub fn solve(rows: &[Vector], ncols: usize, rhs: &[Scalar]) -> Option<Vector> {
    assert_eq!(rows.len(), rhs.len());
    let augmented = rows
        .iter()
        .zip(rhs)
        .map(|(r, b)| {
            let mut r = r.clone();
            r.push(b.clone());
            r
        })
        .collect();
    let (red, pivots) = rref(augmented, ncols + 1);
    if pivots.last() == Some(&ncols) {
        return None;
    }
    let mut x = zero_vector(ncols);
    for (row, &p) in red.iter().zip(&pivots) {
        x[p] = row[ncols].clone();
    }
    Some(x)
}

/// Signature `(positive, negative, zero)` of a symmetric rational matrix,
/// by congruence diagonalization.
pub fn inertia(sym: &[Vector]) -> (usize, usize, usize) {
    let n = sym.len();
    let mut a: Vec<Vector> = sym.to_vec();
    let mut diag = Vec::with_capacity(n);
    let mut active: Vec<usize> = (0..n).collect();
    while !active.is_empty() {
        // Prefer a nonzero diagonal pivot.
        let pivot = active.iter().copied().find(|&i| !a[i][i].is_zero());
        let p = match pivot {
            Some(p) => p,
            None => {
                // All remaining diagonal entries vanish; find an off-diagonal
                // entry and replace row/col i by i + j to create one.
                let pair = active.iter().copied().find_map(|i| {
                    active.iter().copied().find(|&j| j != i && !a[i][j].is_zero()).map(|j| (i, j))
                });
                match pair {
                    None => {
                        diag.extend(std::iter::repeat_n(Scalar::zero(), active.len()));
                        break;
                    }
                    Some((i, j)) => {
                        for k in 0..n {
                            let v = a[j][k].clone();
                            a[i][k] += v;
                        }
                        for k in 0..n {
                            let v = a[k][j].clone();
                            a[k][i] += v;
                        }
                        i
                    }
                }
            }
        };
        let d = a[p][p].clone();
        for &i in &active {
            if i == p || a[i][p].is_zero() {
                continue;
            }
            let f = &a[i][p] / &d;
            for &j in &active {
                let v = &f * &a[p][j];
                a[i][j] -= v;
            }
        }
        for &i in &active {
            if i != p {
                a[p][i] = Scalar::zero();
                a[i][p] = Scalar::zero();
            }
        }
        diag.push(d);
        active.retain(|&i| i != p);
    }
    let pos = diag.iter().filter(|d| d.is_positive()).count();
    let neg = diag.iter().filter(|d| d.is_negative()).count();
    (pos, neg, n - pos - neg)
}
