//! Derivation algebras and the decomposition of an algebra into irreducible
//! modules under its derivations.

use crate::algebra::Algebra;
use crate::error::{Error, Result};
use crate::numerics::{self, Mat, TolerancePolicy, EIGEN_CLUSTER_TOL};
use crate::random::{self, Rng};
use serde::{Deserialize, Serialize};

/// Isomorphism type of a derivation algebra.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub enum LieType {
    G2,
    SU3,
    SU2xSU2,
    SU2xA1,
    SU2,
    Abelian,
    /// None of the above.
    Other,
}

/// Summary of the module structure of `A` under `Der(A)`.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct Decomposition {
    pub der_dim: usize,
    pub lie_type: LieType,
    /// Dimension of the common kernel `A₀` of all derivations.
    pub trivial_dim: usize,
    /// Dimensions of the irreducible summands, ascending.
    pub partition: Vec<usize>,
    /// Orthonormal bases of the summands, in the order of `partition`.
    #[serde(skip)]
    pub summands: Vec<Mat>,
}

/// Linear system whose kernel is `Der(A)`: rows index `(i, j, l)`, columns `D_{ab}`.
fn leibniz_system(a: &Algebra) -> Mat {
    let n = a.dim();
    let mut m = Mat::zeros(n * n * n, n * n);
    for i in 0..n {
        for j in 0..n {
            let eij = a.product(i, j);
            for l in 0..n {
                let row = (i * n + j) * n + l;
                // D(e_i e_j)_l = Σ_b c_{ijb} D_{lb}
                for b in 0..n {
                    m[(row, l * n + b)] += eij[b];
                }
                // (D e_i) e_j: Σ_a D_{ai} c_{ajl}
                for x in 0..n {
                    m[(row, x * n + i)] -= a.product(x, j)[l];
                    m[(row, x * n + j)] -= a.product(i, x)[l];
                }
            }
        }
    }
    m
}

/// Largest entry of `D(xy) - D(x)y - xD(y)` over basis pairs.
pub fn leibniz_residual(a: &Algebra, d: &Mat) -> f64 {
    let n = a.dim();
    let mut worst = 0.0f64;
    for i in 0..n {
        for j in 0..n {
            let lhs = d * nalgebra::DVector::from_column_slice(a.product(i, j));
            let di: Vec<f64> = d.column(i).iter().cloned().collect();
            let dj: Vec<f64> = d.column(j).iter().cloned().collect();
            let mut ei = vec![0.0; n];
            ei[i] = 1.0;
            let mut ej = vec![0.0; n];
            ej[j] = 1.0;
            let r1 = a.mul(&di, &ej);
            let r2 = a.mul(&ei, &dj);
            for l in 0..n {
                worst = worst.max((lhs[l] - r1[l] - r2[l]).abs());
            }
        }
    }
    worst
}

/// Basis of `Der(A)`, orthonormal for the trace form `tr(XᵀY)`.
pub fn derivation_basis(a: &Algebra, tol: &TolerancePolicy) -> Result<Vec<Mat>> {
    let n = a.dim();
    let ns = numerics::nullspace(&leibniz_system(a), tol.rank_tol)?;
    Ok((0..ns.ncols())
        .map(|c| Mat::from_fn(n, n, |r, s| ns[(r * n + s, c)]))
        .collect())
}

fn bracket(x: &Mat, y: &Mat) -> Mat {
    x * y - y * x
}

fn frob(x: &Mat, y: &Mat) -> f64 {
    x.iter().zip(y.iter()).map(|(a, b)| a * b).sum()
}

/// Structure constants `c[a][b][c] = ⟨[X_a, X_b], X_c⟩` of an orthonormal basis.
fn lie_structure(basis: &[Mat]) -> Vec<Vec<Vec<f64>>> {
    let k = basis.len();
    (0..k)
        .map(|a| {
            (0..k)
                .map(|b| {
                    let br = bracket(&basis[a], &basis[b]);
                    basis.iter().map(|x| frob(&br, x)).collect()
                })
                .collect()
        })
        .collect()
}

/// Dimensions of `[g, g]` and of the center of `g`.
pub fn derived_and_center_dims(basis: &[Mat], tol: &TolerancePolicy) -> Result<(usize, usize)> {
    let k = basis.len();
    if k == 0 {
        return Ok((0, 0));
    }
    let c = lie_structure(basis);
    let brackets = Mat::from_fn(k, k * k, |r, col| c[col / k][col % k][r]);
    let scale = numerics::max_abs(&brackets);
    let derived = if scale <= tol.zero_tol {
        0
    } else {
        numerics::rank(&brackets, tol.rank_tol)?
    };
    // ad(X) = 0 for X = Σ x_a X_a: Σ_a x_a c[a][b][e] = 0 for all b, e
    let ad = Mat::from_fn(k * k, k, |row, a| c[a][row / k][row % k]);
    let center = if scale <= tol.zero_tol {
        k
    } else {
        numerics::nullspace(&ad, tol.rank_tol)?.ncols()
    };
    Ok((derived, center))
}

/// Killing form `tr(ad X_a ad X_b)`.
pub fn killing_form(basis: &[Mat]) -> Mat {
    let k = basis.len();
    let c = lie_structure(basis);
    let ad: Vec<Mat> = (0..k)
        .map(|a| Mat::from_fn(k, k, |e, b| c[a][b][e]))
        .collect();
    Mat::from_fn(k, k, |a, b| (&ad[a] * &ad[b]).trace())
}

/// Classifies a compact derivation algebra by dimension, derived dimension and center.
pub fn lie_type(basis: &[Mat], tol: &TolerancePolicy) -> Result<LieType> {
    let dim = basis.len();
    let (derived, center) = derived_and_center_dims(basis, tol)?;
    let semisimple = center == 0 && derived == dim;
    Ok(match (dim, derived, center) {
        (_, 0, _) => LieType::Abelian,
        (14, _, _) if semisimple => LieType::G2,
        (8, _, _) if semisimple => LieType::SU3,
        (6, 6, 0) => LieType::SU2xSU2,
        (4, 3, 1) => LieType::SU2xA1,
        (3, 3, 0) => LieType::SU2,
        _ => LieType::Other,
    })
}

/// Orthonormal basis (columns) of `A₀ = ∩ ker δ`.
pub fn trivial_submodule(basis: &[Mat], n: usize, tol: &TolerancePolicy) -> Result<Mat> {
    if basis.is_empty() {
        return Ok(Mat::identity(n, n));
    }
    let stacked = Mat::from_fn(n * basis.len(), n, |r, c| basis[r / n][(r % n, c)]);
    numerics::nullspace(&stacked, tol.rank_tol)
}

/// `QᵀDQ` for each `D`, failing when the span of `Q` is not invariant.
fn restrict(basis: &[Mat], q: &Mat, tol: &TolerancePolicy) -> Result<Vec<Mat>> {
    let mut out = Vec::with_capacity(basis.len());
    for d in basis {
        let dq = d * q;
        let r = q.transpose() * &dq;
        if numerics::max_abs(&(&dq - q * &r)) > 1e-7f64.max(tol.eq_tol) {
            return Err(Error::NotInvariant);
        }
        out.push(r);
    }
    Ok(out)
}

/// Basis of `{Y : Y D = D Y for all D}`.
fn commutant(ds: &[Mat], tol: &TolerancePolicy) -> Result<Vec<Mat>> {
    let m = ds.first().map(|d| d.nrows()).unwrap_or(0);
    if m == 0 {
        return Ok(vec![]);
    }
    let mut sys = Mat::zeros(ds.len() * m * m, m * m);
    for (k, d) in ds.iter().enumerate() {
        for r in 0..m {
            for c in 0..m {
                let row = (k * m + r) * m + c;
                for b in 0..m {
                    sys[(row, r * m + b)] += d[(b, c)];
                }
                for a in 0..m {
                    sys[(row, a * m + c)] -= d[(r, a)];
                }
            }
        }
    }
    // An all-zero system (trivial action) has the whole matrix space as kernel.
    let ns = if numerics::max_abs(&sys) <= tol.zero_tol {
        Mat::identity(m * m, m * m)
    } else {
        numerics::nullspace(&sys, tol.rank_tol)?
    };
    Ok((0..ns.ncols())
        .map(|c| Mat::from_fn(m, m, |r, s| ns[(r * m + s, c)]))
        .collect())
}

/// Symmetric parts of the commutant with their scalar part removed.
fn symmetric_traceless(com: &[Mat]) -> Vec<Mat> {
    com.iter()
        .map(|y| {
            let s = (y + y.transpose()) * 0.5;
            let m = s.nrows();
            let t = s.trace() / m as f64;
            s - Mat::identity(m, m) * t
        })
        .collect()
}

/// Dimension of the cyclic submodule generated by `x` in restricted coordinates.
fn cyclic_dim(ds: &[Mat], x: &nalgebra::DVector<f64>, tol: &TolerancePolicy) -> Result<usize> {
    let m = x.len();
    let mut span = Mat::from_column_slice(m, 1, x.as_slice());
    loop {
        let mut cols: Vec<nalgebra::DVector<f64>> =
            span.column_iter().map(|c| c.into_owned()).collect();
        for d in ds {
            for c in span.column_iter() {
                cols.push(d * c);
            }
        }
        let next = numerics::orth(&Mat::from_columns(&cols), tol.rank_tol)?;
        if next.ncols() == span.ncols() {
            return Ok(span.ncols());
        }
        span = next;
    }
}

/// Irreducibility of the invariant subspace spanned by the columns of `q`:
/// random vectors are cyclic and no symmetric commutant element splits it.
pub fn is_irreducible(
    basis: &[Mat],
    q: &Mat,
    rng: &mut Rng,
    tol: &TolerancePolicy,
) -> Result<bool> {
    let ds = restrict(basis, q, tol)?;
    let m = q.ncols();
    for _ in 0..5 {
        let x = nalgebra::DVector::from_fn(m, |_, _| random::angle(rng, -1.0, 1.0));
        if cyclic_dim(&ds, &x, tol)? != m {
            return Ok(false);
        }
    }
    let com = commutant(&ds, tol)?;
    Ok(symmetric_traceless(&com)
        .iter()
        .all(|s| numerics::max_abs(s) <= 1e-7))
}

fn split(
    basis: &[Mat],
    q: Mat,
    rng: &mut Rng,
    tol: &TolerancePolicy,
    out: &mut Vec<Mat>,
) -> Result<()> {
    let ds = restrict(basis, &q, tol)?;
    let sym = symmetric_traceless(&commutant(&ds, tol)?);
    let m = q.ncols();
    let mut y = Mat::zeros(m, m);
    for s in &sym {
        y += s * random::angle(rng, -1.0, 1.0);
    }
    if numerics::max_abs(&y) <= 1e-7 {
        out.push(q);
        return Ok(());
    }
    let (vals, vecs) = numerics::sym_eigen(&y)?;
    let clusters = numerics::eigen_clusters(&vals, EIGEN_CLUSTER_TOL);
    if clusters.len() == 1 {
        out.push(q);
        return Ok(());
    }
    for c in clusters {
        let sub = &q * vecs.columns(c.start, c.len());
        split(basis, sub, rng, tol, out)?;
    }
    Ok(())
}

/// Splits `A` into `A₀` (as one-dimensional summands) and irreducible
/// modules under `Der(A)`.
pub fn decompose(a: &Algebra, rng: &mut Rng, tol: &TolerancePolicy) -> Result<Decomposition> {
    let n = a.dim();
    let basis = derivation_basis(a, tol)?;
    let lt = lie_type(&basis, tol)?;
    if lt == LieType::Abelian {
        return Err(Error::AbelianDerivations);
    }
    let a0 = trivial_submodule(&basis, n, tol)?;
    let rest = numerics::nullspace(&a0.transpose(), tol.rank_tol)?;
    let mut summands: Vec<Mat> = (0..a0.ncols())
        .map(|c| a0.columns(c, 1).into_owned())
        .collect();
    if rest.ncols() > 0 && a0.ncols() < n {
        split(&basis, rest, rng, tol, &mut summands)?;
    }
    summands.sort_by_key(|s| s.ncols());
    Ok(Decomposition {
        der_dim: basis.len(),
        lie_type: lt,
        trivial_dim: a0.ncols(),
        partition: summands.iter().map(|s| s.ncols()).collect(),
        summands,
    })
}
