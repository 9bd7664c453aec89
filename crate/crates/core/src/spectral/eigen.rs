//! Cyclic Jacobi eigensolver for dense real symmetric matrices.

use crate::error::{Error, Result};

/// Convergence threshold on the off-diagonal Frobenius norm.
pub const OFF_DIAGONAL_TOLERANCE: f64 = 1e-10;
const MAX_SWEEPS: usize = 100;

#[derive(Clone, Debug, PartialEq)]
pub struct Eigen {
    /// Eigenvalues, descending.
    pub values: Vec<f64>,
    /// `vectors[i]` is a unit eigenvector for `values[i]`.
    pub vectors: Vec<Vec<f64>>,
    pub sweeps: usize,
}

fn off_norm(a: &[f64], n: usize) -> f64 {
    let mut s = 0.0;
    for i in 0..n {
        for j in i + 1..n {
            s += a[i * n + j] * a[i * n + j];
        }
    }
    (2.0 * s).sqrt()
}

/// Diagonalizes the symmetric `n × n` row-major matrix `a` by row-cyclic
/// Jacobi sweeps, re-sorting the diagonal before each sweep.
///
/// Rows of the working matrix are rotated as contiguous slices and the
/// corresponding columns restored by symmetry; eigenvectors are accumulated
/// as rows of `Vᵀ` for the same reason.
pub fn jacobi(a: &[f64], n: usize) -> Result<Eigen> {
    if a.len() != n * n {
        return Err(Error::DimensionMismatch {
            expected: n * n,
            found: a.len(),
        });
    }
    for i in 0..n {
        for j in 0..i {
            if a[i * n + j] != a[j * n + i] {
                return Err(Error::NotSymmetric);
            }
        }
    }
    let mut m = a.to_vec();
    let mut vt = vec![0.0; n * n];
    for i in 0..n {
        vt[i * n + i] = 1.0;
    }
    let mut sweeps = 0;
    let mut rotations: Vec<(usize, f64, f64)> = Vec::with_capacity(n);
    let mut row = vec![0.0; n];
    while off_norm(&m, n) > OFF_DIAGONAL_TOLERANCE {
        if sweeps == MAX_SWEEPS {
            return Err(Error::InvalidParameters(format!(
                "eigensolver did not converge in {MAX_SWEEPS} sweeps"
            )));
        }
        sweeps += 1;
        sort_diagonal(&mut m, &mut vt, n);
        symmetrize(&mut m, n);
        for p in 0..n {
            pivot_row_angles(&m, n, p, &mut row, &mut rotations);
            if rotations.is_empty() {
                continue;
            }
            // right multiplication: columns p and q of every row; four rows
            // at a time so the per-row dependency chains overlap
            let mut chunks = m.chunks_exact_mut(4 * n);
            for block in &mut chunks {
                let (r0, rest) = block.split_at_mut(n);
                let (r1, rest) = rest.split_at_mut(n);
                let (r2, r3) = rest.split_at_mut(n);
                let mut x = [r0[p], r1[p], r2[p], r3[p]];
                for &(q, c, s) in &rotations {
                    let y = [r0[q], r1[q], r2[q], r3[q]];
                    r0[q] = s * x[0] + c * y[0];
                    r1[q] = s * x[1] + c * y[1];
                    r2[q] = s * x[2] + c * y[2];
                    r3[q] = s * x[3] + c * y[3];
                    for l in 0..4 {
                        x[l] = c * x[l] - s * y[l];
                    }
                }
                r0[p] = x[0];
                r1[p] = x[1];
                r2[p] = x[2];
                r3[p] = x[3];
            }
            for mr in chunks.into_remainder().chunks_exact_mut(n) {
                let mut x = mr[p];
                for &(q, c, s) in &rotations {
                    let y = mr[q];
                    mr[q] = s * x + c * y;
                    x = c * x - s * y;
                }
                mr[p] = x;
            }
            // left multiplication: rows p and q, and the same for Vᵀ
            for &(q, c, s) in &rotations {
                rotate_rows(&mut m, n, p, q, c, s);
                rotate_rows(&mut vt, n, p, q, c, s);
            }
        }
    }
    let mut order: Vec<usize> = (0..n).collect();
    order.sort_by(|&i, &j| m[j * n + j].total_cmp(&m[i * n + i]).then(i.cmp(&j)));
    Ok(Eigen {
        values: order.iter().map(|&i| m[i * n + i]).collect(),
        vectors: order
            .iter()
            .map(|&i| vt[i * n..(i + 1) * n].to_vec())
            .collect(),
        sweeps,
    })
}

/// Rotation angles for the pivot row `p` of one row-cyclic pass, i.e. for
/// the pairs `(p, p+1), ..., (p, n-1)` in order, each chosen to annihilate
/// the current `(p, q)` entry.
///
/// Rotation `(p, q)` changes row `p` and row/column `q` only, so entries
/// `(q, i)` with `i > q` and the diagonal entry `(q, q)` are still those of
/// the matrix at the start of the pass when rotation `(p, q)` is reached.
/// Tracking row `p` alone therefore reproduces the sequential angles.
fn pivot_row_angles(
    m: &[f64],
    n: usize,
    p: usize,
    row: &mut [f64],
    rotations: &mut Vec<(usize, f64, f64)>,
) {
    rotations.clear();
    row.copy_from_slice(&m[p * n..(p + 1) * n]);
    let mut app = row[p];
    for q in p + 1..n {
        let apq = row[q];
        if apq == 0.0 {
            continue;
        }
        let aqq = m[q * n + q];
        let theta = (aqq - app) / (2.0 * apq);
        let t = theta.signum() / (theta.abs() + (theta * theta + 1.0).sqrt());
        let c = 1.0 / (t * t + 1.0).sqrt();
        let s = t * c;
        app -= t * apq;
        let rq = &m[q * n..(q + 1) * n];
        for i in q + 1..n {
            row[i] = c * row[i] - s * rq[i];
        }
        rotations.push((q, c, s));
    }
}

/// Copies the upper triangle onto the lower one, removing rounding drift.
fn symmetrize(m: &mut [f64], n: usize) {
    for i in 0..n {
        for j in i + 1..n {
            m[j * n + i] = m[i * n + j];
        }
    }
}

/// Symmetric permutation putting the diagonal in descending order (stable),
/// applied to the rows of `Vᵀ` as well. Grouping nearly equal diagonal
/// entries this way makes convergence fast for spectra with large
/// multiplicities, where plain row-cyclic order converges only linearly.
fn sort_diagonal(m: &mut Vec<f64>, vt: &mut Vec<f64>, n: usize) {
    let mut order: Vec<usize> = (0..n).collect();
    order.sort_by(|&i, &j| m[j * n + j].total_cmp(&m[i * n + i]));
    if order.iter().enumerate().all(|(i, &o)| i == o) {
        return;
    }
    let mut pm = vec![0.0; n * n];
    let mut pv = vec![0.0; n * n];
    for (i, &oi) in order.iter().enumerate() {
        let src = &m[oi * n..(oi + 1) * n];
        let dst = &mut pm[i * n..(i + 1) * n];
        for (d, &oj) in dst.iter_mut().zip(&order) {
            *d = src[oj];
        }
        pv[i * n..(i + 1) * n].copy_from_slice(&vt[oi * n..(oi + 1) * n]);
    }
    *m = pm;
    *vt = pv;
}

/// `(row_p, row_q) ← (c·row_p − s·row_q, s·row_p + c·row_q)`.
fn rotate_rows(m: &mut [f64], n: usize, p: usize, q: usize, c: f64, s: f64) {
    let (head, tail) = m.split_at_mut(q * n);
    let rp = &mut head[p * n..(p + 1) * n];
    let rq = &mut tail[..n];
    for (x, y) in rp.iter_mut().zip(rq.iter_mut()) {
        let (a, b) = (*x, *y);
        *x = c * a - s * b;
        *y = s * a + c * b;
    }
}
