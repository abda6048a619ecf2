//! Quaternions and octonions by Cayley–Dickson doubling.
//!
//! The octonion basis is `(1, u, v, uv, z, uz, vz, (uv)z)`: coordinates 0..4
//! hold the quaternion part `a` and coordinates 4..8 hold `b` in `a + bz`.
//! The product is
//!
//! ```text
//! (a + bz)(c + dz) = (ac - d̄b) + (da + bc̄)z
//! ```
//!
//! With this rule `(zx)y = z(yx)` for quaternions `x, y`.

use crate::error::{Error, Result};
use serde::{Deserialize, Serialize};
use std::ops::{Add, Mul, Neg, Sub};

/// A quaternion `r0 + r1 u + r2 v + r3 uv` with `u v = uv`.
#[derive(Clone, Copy, Debug, PartialEq, Default, Serialize, Deserialize)]
#[serde(transparent)]
pub struct Quaternion(pub [f64; 4]);

impl Quaternion {
    pub const ONE: Quaternion = Quaternion([1.0, 0.0, 0.0, 0.0]);
    pub const U: Quaternion = Quaternion([0.0, 1.0, 0.0, 0.0]);
    pub const V: Quaternion = Quaternion([0.0, 0.0, 1.0, 0.0]);
    pub const UV: Quaternion = Quaternion([0.0, 0.0, 0.0, 1.0]);

    pub fn new(r0: f64, r1: f64, r2: f64, r3: f64) -> Self {
        Quaternion([r0, r1, r2, r3])
    }

    pub fn scalar(r: f64) -> Self {
        Quaternion([r, 0.0, 0.0, 0.0])
    }

    /// `cos t + u sin t`.
    pub fn exp_u(t: f64) -> Self {
        Quaternion([t.cos(), t.sin(), 0.0, 0.0])
    }

    pub fn conj(&self) -> Self {
        let r = self.0;
        Quaternion([r[0], -r[1], -r[2], -r[3]])
    }

    pub fn re(&self) -> f64 {
        self.0[0]
    }

    pub fn im(&self) -> Self {
        let r = self.0;
        Quaternion([0.0, r[1], r[2], r[3]])
    }

    pub fn dot(&self, o: &Self) -> f64 {
        (0..4).map(|k| self.0[k] * o.0[k]).sum()
    }

    pub fn norm(&self) -> f64 {
        self.dot(self).sqrt()
    }

    pub fn scale(&self, s: f64) -> Self {
        Quaternion(self.0.map(|x| x * s))
    }

    pub fn normalized(&self) -> Self {
        self.scale(1.0 / self.norm())
    }

    pub fn dist(&self, o: &Self) -> f64 {
        (*self - *o).norm()
    }

    /// Inner automorphism `x ↦ q x q̄` for a unit `q`.
    pub fn kappa(&self, x: &Quaternion) -> Quaternion {
        *self * *x * self.conj()
    }

    pub fn to_octonion(&self) -> Octonion {
        let r = self.0;
        Octonion([r[0], r[1], r[2], r[3], 0.0, 0.0, 0.0, 0.0])
    }

    pub fn is_finite(&self) -> bool {
        self.0.iter().all(|x| x.is_finite())
    }
}

impl Mul for Quaternion {
    type Output = Quaternion;
    fn mul(self, b: Quaternion) -> Quaternion {
        let a = self.0;
        let b = b.0;
        Quaternion([
            a[0] * b[0] - a[1] * b[1] - a[2] * b[2] - a[3] * b[3],
            a[0] * b[1] + a[1] * b[0] + a[2] * b[3] - a[3] * b[2],
            a[0] * b[2] - a[1] * b[3] + a[2] * b[0] + a[3] * b[1],
            a[0] * b[3] + a[1] * b[2] - a[2] * b[1] + a[3] * b[0],
        ])
    }
}

impl Add for Quaternion {
    type Output = Quaternion;
    fn add(self, b: Quaternion) -> Quaternion {
        Quaternion(std::array::from_fn(|k| self.0[k] + b.0[k]))
    }
}

impl Sub for Quaternion {
    type Output = Quaternion;
    fn sub(self, b: Quaternion) -> Quaternion {
        Quaternion(std::array::from_fn(|k| self.0[k] - b.0[k]))
    }
}

impl Neg for Quaternion {
    type Output = Quaternion;
    fn neg(self) -> Quaternion {
        Quaternion(self.0.map(|x| -x))
    }
}

/// An octonion in the basis `(1, u, v, uv, z, uz, vz, (uv)z)`.
#[derive(Clone, Copy, Debug, PartialEq, Default, Serialize, Deserialize)]
#[serde(transparent)]
pub struct Octonion(pub [f64; 8]);

/// Basis labels in coordinate order.
pub const BASIS_NAMES: [&str; 8] = ["1", "u", "v", "uv", "z", "uz", "vz", "(uv)z"];

impl Octonion {
    pub const ONE: Octonion = Octonion::basis_const(0);
    pub const U: Octonion = Octonion::basis_const(1);
    pub const V: Octonion = Octonion::basis_const(2);
    pub const UV: Octonion = Octonion::basis_const(3);
    pub const Z: Octonion = Octonion::basis_const(4);
    pub const UZ: Octonion = Octonion::basis_const(5);
    pub const VZ: Octonion = Octonion::basis_const(6);
    pub const UVZ: Octonion = Octonion::basis_const(7);

    const fn basis_const(k: usize) -> Octonion {
        let mut r = [0.0; 8];
        r[k] = 1.0;
        Octonion(r)
    }

    /// The `k`-th basis vector.
    pub fn basis(k: usize) -> Octonion {
        Octonion::basis_const(k)
    }

    pub fn zero() -> Octonion {
        Octonion([0.0; 8])
    }

    pub fn scalar(r: f64) -> Octonion {
        Octonion::ONE.scale(r)
    }

    /// Builds `a + bz`.
    pub fn from_pair(a: Quaternion, b: Quaternion) -> Octonion {
        let mut r = [0.0; 8];
        r[..4].copy_from_slice(&a.0);
        r[4..].copy_from_slice(&b.0);
        Octonion(r)
    }

    /// Quaternion coordinates `(a, b)` of `a + bz`.
    pub fn split(&self) -> (Quaternion, Quaternion) {
        let r = self.0;
        (
            Quaternion([r[0], r[1], r[2], r[3]]),
            Quaternion([r[4], r[5], r[6], r[7]]),
        )
    }

    pub fn from_slice(s: &[f64]) -> Result<Octonion> {
        if s.len() != 8 {
            return Err(Error::Invalid(format!(
                "octonion needs 8 coordinates, got {}",
                s.len()
            )));
        }
        Ok(Octonion(std::array::from_fn(|k| s[k])))
    }

    /// Conjugation `K`: negates coordinates 1..8.
    pub fn conj(&self) -> Octonion {
        let mut r = self.0.map(|x| -x);
        r[0] = self.0[0];
        Octonion(r)
    }

    pub fn re(&self) -> f64 {
        self.0[0]
    }

    /// Projection onto the orthogonal complement of `1`.
    pub fn im(&self) -> Octonion {
        let mut r = self.0;
        r[0] = 0.0;
        Octonion(r)
    }

    pub fn dot(&self, o: &Octonion) -> f64 {
        (0..8).map(|k| self.0[k] * o.0[k]).sum()
    }

    pub fn norm2(&self) -> f64 {
        self.dot(self)
    }

    pub fn norm(&self) -> f64 {
        self.norm2().sqrt()
    }

    pub fn scale(&self, s: f64) -> Octonion {
        Octonion(self.0.map(|x| x * s))
    }

    pub fn normalized(&self) -> Octonion {
        self.scale(1.0 / self.norm())
    }

    /// `x̄ / |x|²`, or `Singular` for zero.
    pub fn inverse(&self) -> Result<Octonion> {
        let n2 = self.norm2();
        if n2 == 0.0 || !n2.is_finite() {
            return Err(Error::Singular);
        }
        Ok(self.conj().scale(1.0 / n2))
    }

    pub fn dist(&self, o: &Octonion) -> f64 {
        (*self - *o).norm()
    }

    pub fn max_abs_diff(&self, o: &Octonion) -> f64 {
        (0..8).fold(0.0, |m, k| f64::max(m, (self.0[k] - o.0[k]).abs()))
    }

    pub fn is_finite(&self) -> bool {
        self.0.iter().all(|x| x.is_finite())
    }

    /// Lies in `⟨1, u, v, uv⟩` within `tol`.
    pub fn in_h(&self, tol: f64) -> bool {
        self.0[4..].iter().all(|x| x.abs() <= tol)
    }

    /// Lies in `⟨1, u⟩` within `tol`.
    pub fn in_c(&self, tol: f64) -> bool {
        self.0[2..].iter().all(|x| x.abs() <= tol)
    }

    /// Quaternion part, failing when the `z` half exceeds `tol`.
    pub fn to_quaternion(&self, tol: f64) -> Result<Quaternion> {
        if !self.in_h(tol) {
            return Err(Error::BadParameter(format!(
                "{:?} is not a quaternion",
                self.0
            )));
        }
        Ok(self.split().0)
    }
}

impl Mul for Octonion {
    type Output = Octonion;
    fn mul(self, y: Octonion) -> Octonion {
        let (a, b) = self.split();
        let (c, d) = y.split();
        Octonion::from_pair(a * c - d.conj() * b, d * a + b * c.conj())
    }
}

impl Add for Octonion {
    type Output = Octonion;
    fn add(self, b: Octonion) -> Octonion {
        Octonion(std::array::from_fn(|k| self.0[k] + b.0[k]))
    }
}

impl Sub for Octonion {
    type Output = Octonion;
    fn sub(self, b: Octonion) -> Octonion {
        Octonion(std::array::from_fn(|k| self.0[k] - b.0[k]))
    }
}

impl Neg for Octonion {
    type Output = Octonion;
    fn neg(self) -> Octonion {
        Octonion(self.0.map(|x| -x))
    }
}

impl From<Quaternion> for Octonion {
    fn from(q: Quaternion) -> Octonion {
        q.to_octonion()
    }
}

/// Structure constants of the octonions: `e_i e_j = Σ_k sc[i][j][k] e_k`.
/// Every entry is `-1`, `0` or `1`.
pub fn structure_constants() -> [[[i8; 8]; 8]; 8] {
    let mut t = [[[0i8; 8]; 8]; 8];
    for i in 0..8 {
        for j in 0..8 {
            let p = Octonion::basis(i) * Octonion::basis(j);
            for k in 0..8 {
                t[i][j][k] = p.0[k] as i8;
            }
        }
    }
    t
}

/// Row-major matrix of `y ↦ a y`.
pub fn left_mul_matrix(a: &Octonion) -> [[f64; 8]; 8] {
    let mut m = [[0.0; 8]; 8];
    for c in 0..8 {
        let col = *a * Octonion::basis(c);
        for r in 0..8 {
            m[r][c] = col.0[r];
        }
    }
    m
}

/// Row-major matrix of `y ↦ y a`.
pub fn right_mul_matrix(a: &Octonion) -> [[f64; 8]; 8] {
    let mut m = [[0.0; 8]; 8];
    for c in 0..8 {
        let col = Octonion::basis(c) * *a;
        for r in 0..8 {
            m[r][c] = col.0[r];
        }
    }
    m
}

/// An orthonormal triple `(a, b, c)` of imaginary units with `c ⊥ ab`.
#[derive(Clone, Copy, Debug, PartialEq, Serialize, Deserialize)]
pub struct CayleyTriple {
    pub a: Octonion,
    pub b: Octonion,
    pub c: Octonion,
}

impl CayleyTriple {
    /// The standard triple `(u, v, z)`.
    pub fn standard() -> CayleyTriple {
        CayleyTriple {
            a: Octonion::U,
            b: Octonion::V,
            c: Octonion::Z,
        }
    }

    /// Validates the triple against `tol`.
    pub fn new(a: Octonion, b: Octonion, c: Octonion, tol: f64) -> Result<CayleyTriple> {
        let t = CayleyTriple { a, b, c };
        if is_cayley_triple(&t, tol) {
            Ok(t)
        } else {
            Err(Error::NotCayleyTriple(format!("{:?}", t)))
        }
    }

    /// `(1, a, b, ab, c, ac, bc, (ab)c)`: an orthonormal basis.
    pub fn product_basis(&self) -> [Octonion; 8] {
        let (a, b, c) = (self.a, self.b, self.c);
        let ab = a * b;
        [Octonion::ONE, a, b, ab, c, a * c, b * c, ab * c]
    }
}

/// Checks unit length, mutual orthogonality, orthogonality to `1`, and `c ⊥ ab`.
pub fn is_cayley_triple(t: &CayleyTriple, tol: f64) -> bool {
    let v = [t.a, t.b, t.c];
    if v.iter().any(|x| !x.is_finite()) {
        return false;
    }
    let unit = v
        .iter()
        .all(|x| (x.norm2() - 1.0).abs() <= tol && x.re().abs() <= tol);
    let orth = t.a.dot(&t.b).abs() <= tol
        && t.a.dot(&t.c).abs() <= tol
        && t.b.dot(&t.c).abs() <= tol
        && (t.a * t.b).dot(&t.c).abs() <= tol;
    unit && orth
}

/// Unit quaternion `q` with `q w_from q̄ = w_to` for unit imaginary inputs.
///
/// Aligned inputs give `1`. Antipodal inputs rotate by `π` about the first of
/// `u, v, uv` that survives Gram–Schmidt against `w_from`.
pub fn rotation_quaternion(w_from: &Quaternion, w_to: &Quaternion, tol: f64) -> Result<Quaternion> {
    for w in [w_from, w_to] {
        if !w.is_finite() || w.re().abs() > tol || (w.norm() - 1.0).abs() > tol {
            return Err(Error::NotImaginaryUnit(format!("{:?}", w.0)));
        }
    }
    let a = w_from.im().normalized();
    let b = w_to.im().normalized();
    let s = a + b;
    let s2 = s.dot(&s);
    if s2.sqrt() <= 1e-12 {
        for e in [Quaternion::U, Quaternion::V, Quaternion::UV] {
            let r = e - a.scale(e.dot(&a));
            if r.norm() > 0.5 {
                return Ok(r.normalized());
            }
        }
        unreachable!("one of u, v, uv survives");
    }
    // q ∝ (1 + a·b) + a×b, written as |a+b|²/2 + a×(a+b) to avoid cancellation.
    let cross = (a * s).im();
    Ok((Quaternion::scalar(s2 / 2.0) + cross).normalized())
}
