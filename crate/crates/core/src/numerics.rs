//! Dense linear algebra helpers and the tolerance policy.
//!
//! Matrices are `nalgebra::DMatrix<f64>`. Every decision that compares a
//! floating value against zero goes through a [`TolerancePolicy`].

use crate::error::{Error, Result};
use nalgebra::DMatrix;
use serde::{Deserialize, Serialize};

/// Dense real matrix.
pub type Mat = DMatrix<f64>;

/// Seed used when the caller does not supply one.
pub const DEFAULT_SEED: u64 = 0xC0FFEE;

/// Relative gap below which eigenvalues are treated as one cluster.
pub const EIGEN_CLUSTER_TOL: f64 = 1e-7;

/// Thresholds for rank decisions, equality tests and zero tests.
#[derive(Clone, Copy, Debug, PartialEq, Serialize, Deserialize)]
pub struct TolerancePolicy {
    /// Singular values below `rank_tol * max_singular_value` count as zero.
    pub rank_tol: f64,
    pub eq_tol: f64,
    pub zero_tol: f64,
}

impl Default for TolerancePolicy {
    fn default() -> Self {
        TolerancePolicy {
            rank_tol: 1e-9,
            eq_tol: 1e-9,
            zero_tol: 1e-9,
        }
    }
}

impl TolerancePolicy {
    /// Policy with all three thresholds set to `t`.
    pub fn uniform(t: f64) -> Self {
        TolerancePolicy {
            rank_tol: t,
            eq_tol: t,
            zero_tol: t,
        }
    }
}

fn check_finite(m: &Mat) -> Result<()> {
    if m.iter().all(|x| x.is_finite()) {
        Ok(())
    } else {
        Err(Error::NonFinite)
    }
}

/// Orthonormal basis (as columns) of the null space of `m`.
///
/// A singular value `s` is treated as zero when `s <= rank_tol * s_max`.
/// The zero matrix has the whole space as null space.
pub fn nullspace(m: &Mat, rank_tol: f64) -> Result<Mat> {
    check_finite(m)?;
    let (rows, cols) = m.shape();
    if cols == 0 {
        return Ok(Mat::zeros(0, 0));
    }
    // The thin SVD only returns min(rows, cols) right singular vectors, so
    // wide matrices are padded with zero rows.
    let a = if rows < cols {
        let mut p = Mat::zeros(cols, cols);
        p.view_mut((0, 0), (rows, cols)).copy_from(m);
        p
    } else {
        m.clone()
    };
    let svd = a.svd(false, true);
    let vt = svd.v_t.ok_or(Error::NonFinite)?;
    let smax = svd.singular_values.iter().cloned().fold(0.0, f64::max);
    let thresh = rank_tol * smax;
    let idx: Vec<usize> = (0..svd.singular_values.len())
        .filter(|&i| smax == 0.0 || svd.singular_values[i] <= thresh)
        .collect();
    let mut out = Mat::zeros(cols, idx.len());
    for (c, &i) in idx.iter().enumerate() {
        for r in 0..cols {
            out[(r, c)] = vt[(i, r)];
        }
    }
    Ok(out)
}

/// Numerical rank with the same relative threshold as [`nullspace`].
pub fn rank(m: &Mat, rank_tol: f64) -> Result<usize> {
    check_finite(m)?;
    if m.nrows() == 0 || m.ncols() == 0 {
        return Ok(0);
    }
    let sv = m.clone().singular_values();
    let smax = sv.iter().cloned().fold(0.0, f64::max);
    if smax == 0.0 {
        return Ok(0);
    }
    Ok(sv.iter().filter(|&&s| s > rank_tol * smax).count())
}

/// Eigen-decomposition of a symmetric matrix, eigenvalues ascending and
/// eigenvectors as matching columns.
///
/// Cyclic Jacobi rotations; the input is symmetrized first.
pub fn sym_eigen(m: &Mat) -> Result<(Vec<f64>, Mat)> {
    check_finite(m)?;
    let n = m.nrows();
    let mut a = (m + m.transpose()) * 0.5;
    let mut v = Mat::identity(n, n);
    let norm = a.norm().max(f64::MIN_POSITIVE);
    for _sweep in 0..100 {
        let off: f64 = (0..n)
            .flat_map(|p| (0..n).filter(move |&q| q != p).map(move |q| (p, q)))
            .map(|(p, q)| a[(p, q)].powi(2))
            .sum();
        if off.sqrt() <= 1e-15 * norm {
            break;
        }
        for p in 0..n {
            for q in p + 1..n {
                let apq = a[(p, q)];
                if apq.abs() <= f64::MIN_POSITIVE {
                    continue;
                }
                let theta = (a[(q, q)] - a[(p, p)]) / (2.0 * apq);
                let t = theta.signum() / (theta.abs() + (theta * theta + 1.0).sqrt());
                let t = if theta == 0.0 { 1.0 } else { t };
                let c = 1.0 / (t * t + 1.0).sqrt();
                let s = t * c;
                for k in 0..n {
                    let (akp, akq) = (a[(k, p)], a[(k, q)]);
                    a[(k, p)] = c * akp - s * akq;
                    a[(k, q)] = s * akp + c * akq;
                }
                for k in 0..n {
                    let (apk, aqk) = (a[(p, k)], a[(q, k)]);
                    a[(p, k)] = c * apk - s * aqk;
                    a[(q, k)] = s * apk + c * aqk;
                }
                for k in 0..n {
                    let (vkp, vkq) = (v[(k, p)], v[(k, q)]);
                    v[(k, p)] = c * vkp - s * vkq;
                    v[(k, q)] = s * vkp + c * vkq;
                }
            }
        }
    }
    let mut order: Vec<usize> = (0..n).collect();
    order.sort_by(|&x, &y| a[(x, x)].total_cmp(&a[(y, y)]));
    let vals = order.iter().map(|&i| a[(i, i)]).collect();
    let mut vecs = Mat::zeros(n, n);
    for (c, &i) in order.iter().enumerate() {
        vecs.set_column(c, &v.column(i));
    }
    Ok((vals, vecs))
}

/// Groups sorted eigenvalues into clusters: consecutive values whose gap is at
/// most `tol * max(1, |largest|)` share a cluster. Returns index ranges.
pub fn eigen_clusters(vals: &[f64], tol: f64) -> Vec<std::ops::Range<usize>> {
    let scale = vals.iter().fold(1.0f64, |m, v| m.max(v.abs()));
    let mut out = Vec::new();
    let mut start = 0;
    for i in 1..=vals.len() {
        if i == vals.len() || vals[i] - vals[i - 1] > tol * scale {
            out.push(start..i);
            start = i;
        }
    }
    out
}

/// Sign of the determinant, or `Singular` when `|det| <= zero_tol`.
pub fn det_sign(m: &Mat, zero_tol: f64) -> Result<i8> {
    check_finite(m)?;
    let d = m.clone().lu().determinant();
    if d.abs() <= zero_tol {
        Err(Error::Singular)
    } else if d > 0.0 {
        Ok(1)
    } else {
        Ok(-1)
    }
}

/// `max |MᵀM - I| <= eq_tol`.
pub fn is_orthogonal(m: &Mat, eq_tol: f64) -> bool {
    if m.nrows() != m.ncols() {
        return false;
    }
    let p = m.transpose() * m;
    let n = m.nrows();
    (0..n).all(|i| (0..n).all(|j| (p[(i, j)] - if i == j { 1.0 } else { 0.0 }).abs() <= eq_tol))
}

/// Largest absolute entry.
pub fn max_abs(m: &Mat) -> f64 {
    m.iter().fold(0.0, |a, x| a.max(x.abs()))
}

/// Orthonormal basis of the column span of `m`.
pub fn orth(m: &Mat, rank_tol: f64) -> Result<Mat> {
    check_finite(m)?;
    if m.ncols() == 0 {
        return Ok(Mat::zeros(m.nrows(), 0));
    }
    let svd = m.clone().svd(true, false);
    let u = svd.u.ok_or(Error::NonFinite)?;
    let smax = svd.singular_values.iter().cloned().fold(0.0, f64::max);
    let idx: Vec<usize> = (0..svd.singular_values.len())
        .filter(|&i| smax > 0.0 && svd.singular_values[i] > rank_tol * smax)
        .collect();
    let mut out = Mat::zeros(m.nrows(), idx.len());
    for (c, &i) in idx.iter().enumerate() {
        out.set_column(c, &u.column(i));
    }
    Ok(out)
}
