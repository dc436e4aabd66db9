//! Eigenvalues and eigenvectors of real symmetric tridiagonal matrices.
//!
//! Bisection on the Sturm count gives selected eigenvalues to near
//! machine precision in O(n) per bisection step; inverse iteration with
//! a partially pivoted tridiagonal solve recovers the eigenvectors.
//! This is all the finite-difference oscillator grids in this crate
//! need, and it stays fast at a few thousand points.

use crate::error::{Error, Result};

/// Number of eigenvalues of the tridiagonal matrix (diag, offdiag)
/// strictly below `x` (Sturm sequence count).
fn count_below(diag: &[f64], offdiag: &[f64], x: f64) -> usize {
    let mut count = 0;
    let mut q = diag[0] - x;
    if q < 0.0 {
        count += 1;
    }
    for i in 1..diag.len() {
        let e2 = offdiag[i - 1] * offdiag[i - 1];
        let denom = if q == 0.0 { 1e-300 } else { q };
        q = diag[i] - x - e2 / denom;
        if q < 0.0 {
            count += 1;
        }
    }
    count
}

/// The `k` smallest eigenvalues, ascending.
pub fn lowest_eigenvalues(diag: &[f64], offdiag: &[f64], k: usize) -> Result<Vec<f64>> {
    let n = diag.len();
    if n == 0 || offdiag.len() + 1 != n {
        return Err(Error::usage("inconsistent tridiagonal dimensions"));
    }
    if k == 0 || k > n {
        return Err(Error::usage("requested eigenvalue count out of range"));
    }
    // Gershgorin bounds
    let mut lo = f64::INFINITY;
    let mut hi = f64::NEG_INFINITY;
    for i in 0..n {
        let mut radius = 0.0;
        if i > 0 {
            radius += offdiag[i - 1].abs();
        }
        if i < n - 1 {
            radius += offdiag[i].abs();
        }
        lo = lo.min(diag[i] - radius);
        hi = hi.max(diag[i] + radius);
    }
    let scale = hi.abs().max(lo.abs()).max(1.0);

    let mut out = Vec::with_capacity(k);
    for j in 0..k {
        let mut a = lo;
        let mut b = hi;
        // locate the (j+1)-th eigenvalue: smallest x with count(x) > j
        for _ in 0..120 {
            let mid = 0.5 * (a + b);
            if count_below(diag, offdiag, mid) > j {
                b = mid;
            } else {
                a = mid;
            }
            if b - a <= 4.0 * f64::EPSILON * scale {
                break;
            }
        }
        out.push(0.5 * (a + b));
    }
    Ok(out)
}

/// Eigenvector for an isolated eigenvalue `lambda`, by inverse iteration.
/// Returned vector has unit Euclidean norm and a nonnegative value at
/// its largest-magnitude entry.
pub fn eigenvector(diag: &[f64], offdiag: &[f64], lambda: f64) -> Result<Vec<f64>> {
    let n = diag.len();
    if n == 0 || offdiag.len() + 1 != n {
        return Err(Error::usage("inconsistent tridiagonal dimensions"));
    }
    let scale = diag.iter().fold(0.0f64, |m, d| m.max(d.abs())).max(1.0);
    // tiny shift keeps the factorization from going exactly singular
    let shifted = lambda + 16.0 * f64::EPSILON * scale;

    let mut v = vec![1.0; n];
    normalize(&mut v);
    for _ in 0..4 {
        let mut w = solve_shifted(diag, offdiag, shifted, &v)?;
        normalize(&mut w);
        v = w;
    }
    // fix orientation
    let (mut idx, mut best) = (0, 0.0);
    for (i, val) in v.iter().enumerate() {
        if val.abs() > best {
            best = val.abs();
            idx = i;
        }
    }
    if v[idx] < 0.0 {
        for val in &mut v {
            *val = -*val;
        }
    }
    Ok(v)
}

/// Solve (T - shift I) x = rhs by Gaussian elimination with partial
/// pivoting specialized to tridiagonal structure (one fill-in band).
fn solve_shifted(diag: &[f64], offdiag: &[f64], shift: f64, rhs_in: &[f64]) -> Result<Vec<f64>> {
    let n = diag.len();
    let mut d: Vec<f64> = diag.iter().map(|x| x - shift).collect();
    let mut du = offdiag.to_vec(); // length n-1
    let mut dl = offdiag.to_vec(); // length n-1
    let mut du2 = vec![0.0; n.saturating_sub(2)];
    let mut rhs = rhs_in.to_vec();

    for i in 0..n - 1 {
        if dl[i].abs() > d[i].abs() {
            // swap rows i and i+1
            // row i   was (d[i], du[i], 0)        at columns i, i+1, i+2
            // row i+1 was (dl[i], d[i+1], du[i+1]) at the same columns
            let old_d = d[i];
            let old_du = du[i];
            d[i] = dl[i];
            du[i] = d[i + 1];
            if i + 1 < n - 1 {
                du2[i] = du[i + 1];
            }
            rhs.swap(i, i + 1);
            // eliminate old row i against the new pivot row
            let factor = old_d / d[i];
            d[i + 1] = old_du - factor * du[i];
            if i + 1 < n - 1 {
                du[i + 1] = -factor * du2[i];
            }
            rhs[i + 1] -= factor * rhs[i];
        } else {
            let pivot = if d[i] == 0.0 { f64::EPSILON } else { d[i] };
            let factor = dl[i] / pivot;
            d[i + 1] -= factor * du[i];
            rhs[i + 1] -= factor * rhs[i];
            if i + 1 < n - 1 {
                du2[i] = 0.0;
            }
        }
        dl[i] = 0.0;
    }

    let mut x = vec![0.0; n];
    for i in (0..n).rev() {
        let mut acc = rhs[i];
        if i + 1 < n {
            acc -= du[i] * x[i + 1];
        }
        if i + 2 < n {
            acc -= du2[i] * x[i + 2];
        }
        let pivot = if d[i] == 0.0 { f64::EPSILON } else { d[i] };
        x[i] = acc / pivot;
        if !x[i].is_finite() {
            return Err(Error::numerical(
                "inverse iteration produced non-finite values",
            ));
        }
    }
    Ok(x)
}

fn normalize(v: &mut [f64]) {
    let norm = v.iter().map(|x| x * x).sum::<f64>().sqrt();
    if norm > 0.0 {
        for x in v {
            *x /= norm;
        }
    }
}
