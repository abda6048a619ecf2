//! Orthogonal maps of the octonions used to build isotopes.
//!
//! Composition reads right to left: `(f * g)(x) = f(g(x))`.

use crate::error::{Error, Result};
use crate::numerics::{self, Mat};
use crate::octonion::{
    is_cayley_triple, left_mul_matrix, right_mul_matrix, CayleyTriple, Octonion,
};
use serde::{Deserialize, Serialize};
use std::ops::Mul;

const PARAM_TOL: f64 = 1e-9;

/// How a map was built. Metadata only; the matrix is authoritative.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(tag = "family", content = "params")]
pub enum MapLabel {
    Identity,
    /// `K^k`.
    ConjPower {
        k: u8,
    },
    /// `t K^k` on `ℂ`, identity on `ℂ^⊥`.
    Lambda {
        t: Octonion,
        k: u8,
    },
    /// Automorphism `(u, v, z) ↦ (u, v, zp)`.
    Tau {
        p: Octonion,
    },
    /// Automorphism `(u, v, z) ↦ (quq̄, qvq̄, z)`.
    KappaHat {
        q: Octonion,
    },
    /// `a K^k(x) b` on `ℍ`, identity on `ℍ^⊥`.
    T {
        a: Octonion,
        b: Octonion,
        k: u8,
    },
    /// `-1` on the span of the listed orthonormal vectors.
    Sigma {
        vectors: Vec<Octonion>,
    },
    /// `x ↦ a x a`.
    B {
        a: Octonion,
    },
    /// `x ↦ a x ā`.
    C {
        a: Octonion,
    },
    L {
        a: Octonion,
    },
    R {
        a: Octonion,
    },
    /// `(u, v, z) ↦ ((-1)^eps u, v, z)`.
    EpsHat {
        eps: u8,
    },
    G {
        theta: f64,
        gamma: f64,
        k1: u8,
        k2: u8,
    },
    F {
        theta: f64,
        k1: u8,
        k2: u8,
    },
    /// `τ_{p̄} κ̂_q`.
    Delta {
        p: Octonion,
        q: Octonion,
    },
    /// Automorphism sending one Cayley triple to another.
    G2Triples {
        from: CayleyTriple,
        to: CayleyTriple,
    },
}

/// An 8×8 real matrix acting on octonion coordinates, with optional label.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct OrthoMap8 {
    /// Row-major entries.
    pub matrix: [[f64; 8]; 8],
    pub label: Option<MapLabel>,
}

impl OrthoMap8 {
    pub fn from_rows(matrix: [[f64; 8]; 8]) -> OrthoMap8 {
        OrthoMap8 {
            matrix,
            label: None,
        }
    }

    /// Map whose `k`-th column is `cols[k]`.
    pub fn from_columns(cols: &[Octonion; 8]) -> OrthoMap8 {
        let mut m = [[0.0; 8]; 8];
        for c in 0..8 {
            for r in 0..8 {
                m[r][c] = cols[c].0[r];
            }
        }
        OrthoMap8::from_rows(m)
    }

    pub fn from_mat(m: &Mat) -> Result<OrthoMap8> {
        if m.shape() != (8, 8) {
            return Err(Error::BadDimension(m.nrows()));
        }
        Ok(OrthoMap8::from_rows(std::array::from_fn(|r| {
            std::array::from_fn(|c| m[(r, c)])
        })))
    }

    pub fn to_mat(&self) -> Mat {
        Mat::from_fn(8, 8, |r, c| self.matrix[r][c])
    }

    pub fn with_label(mut self, label: MapLabel) -> OrthoMap8 {
        self.label = Some(label);
        self
    }

    pub fn apply(&self, x: &Octonion) -> Octonion {
        Octonion(std::array::from_fn(|r| {
            (0..8).map(|c| self.matrix[r][c] * x.0[c]).sum()
        }))
    }

    pub fn column(&self, c: usize) -> Octonion {
        Octonion(std::array::from_fn(|r| self.matrix[r][c]))
    }

    pub fn transpose(&self) -> OrthoMap8 {
        OrthoMap8::from_rows(std::array::from_fn(|r| {
            std::array::from_fn(|c| self.matrix[c][r])
        }))
    }

    /// Inverse of an orthogonal map (its transpose).
    pub fn inverse(&self) -> OrthoMap8 {
        self.transpose()
    }

    /// `self * other * self⁻¹`.
    pub fn conjugate(&self, other: &OrthoMap8) -> OrthoMap8 {
        &(self * other) * &self.inverse()
    }

    pub fn scale(&self, s: f64) -> OrthoMap8 {
        OrthoMap8::from_rows(self.matrix.map(|row| row.map(|x| x * s)))
    }

    pub fn is_orthogonal(&self, tol: f64) -> bool {
        numerics::is_orthogonal(&self.to_mat(), tol)
    }

    pub fn det_sign(&self, zero_tol: f64) -> Result<i8> {
        numerics::det_sign(&self.to_mat(), zero_tol)
    }

    /// Largest entrywise difference.
    pub fn max_abs_diff(&self, o: &OrthoMap8) -> f64 {
        let mut m = 0.0f64;
        for r in 0..8 {
            for c in 0..8 {
                m = m.max((self.matrix[r][c] - o.matrix[r][c]).abs());
            }
        }
        m
    }

    pub fn is_finite(&self) -> bool {
        self.matrix.iter().flatten().all(|x| x.is_finite())
    }
}

impl<'a> Mul<&'a OrthoMap8> for &'a OrthoMap8 {
    type Output = OrthoMap8;
    fn mul(self, o: &OrthoMap8) -> OrthoMap8 {
        OrthoMap8::from_rows(std::array::from_fn(|r| {
            std::array::from_fn(|c| (0..8).map(|k| self.matrix[r][k] * o.matrix[k][c]).sum())
        }))
    }
}

impl Mul for OrthoMap8 {
    type Output = OrthoMap8;
    fn mul(self, o: OrthoMap8) -> OrthoMap8 {
        &self * &o
    }
}

fn check_unit(x: &Octonion, what: &str) -> Result<()> {
    if !x.is_finite() || (x.norm() - 1.0).abs() > PARAM_TOL {
        return Err(Error::BadParameter(format!(
            "{what} must be a unit, got {:?}",
            x.0
        )));
    }
    Ok(())
}

fn check_unit_in_c(x: &Octonion, what: &str) -> Result<()> {
    check_unit(x, what)?;
    if !x.in_c(PARAM_TOL) {
        return Err(Error::BadParameter(format!("{what} must lie in ⟨1, u⟩")));
    }
    Ok(())
}

fn check_unit_in_h(x: &Octonion, what: &str) -> Result<()> {
    check_unit(x, what)?;
    if !x.in_h(PARAM_TOL) {
        return Err(Error::BadParameter(format!(
            "{what} must lie in ⟨1, u, v, uv⟩"
        )));
    }
    Ok(())
}

fn check_bit(k: u8) -> Result<()> {
    if k > 1 {
        return Err(Error::BadParameter(format!(
            "exponent must be 0 or 1, got {k}"
        )));
    }
    Ok(())
}

fn conj_pow(x: &Octonion, k: u8) -> Octonion {
    if k % 2 == 1 {
        x.conj()
    } else {
        *x
    }
}

pub fn identity() -> OrthoMap8 {
    OrthoMap8::from_columns(&std::array::from_fn(Octonion::basis)).with_label(MapLabel::Identity)
}

/// `K^k`.
pub fn conj_power(k: u8) -> OrthoMap8 {
    let cols = std::array::from_fn(|c| conj_pow(&Octonion::basis(c), k));
    OrthoMap8::from_columns(&cols).with_label(MapLabel::ConjPower { k: k % 2 })
}

/// `λ_t^{(k)}`: `x ↦ t K^k(x)` on `ℂ`, identity on `ℂ^⊥`.
pub fn lambda_map(t: &Octonion, k: u8) -> Result<OrthoMap8> {
    check_unit_in_c(t, "t")?;
    check_bit(k)?;
    let cols = std::array::from_fn(|c| {
        let e = Octonion::basis(c);
        if c < 2 {
            *t * conj_pow(&e, k)
        } else {
            e
        }
    });
    Ok(OrthoMap8::from_columns(&cols).with_label(MapLabel::Lambda { t: *t, k }))
}

/// Automorphism sending the product basis of `from` to that of `to`.
pub fn g2_from_triples(from: &CayleyTriple, to: &CayleyTriple) -> Result<OrthoMap8> {
    for t in [from, to] {
        if !is_cayley_triple(t, PARAM_TOL) {
            return Err(Error::NotCayleyTriple(format!("{:?}", t)));
        }
    }
    let p1 = OrthoMap8::from_columns(&from.product_basis());
    let p2 = OrthoMap8::from_columns(&to.product_basis());
    let m = &p2 * &p1.transpose();
    Ok(m.with_label(MapLabel::G2Triples {
        from: *from,
        to: *to,
    }))
}

/// `τ_p`: fixes `ℍ` and sends `z` to `zp`.
pub fn tau_map(p: &Octonion) -> Result<OrthoMap8> {
    check_unit_in_h(p, "p")?;
    let to = CayleyTriple {
        a: Octonion::U,
        b: Octonion::V,
        c: Octonion::Z * *p,
    };
    Ok(g2_from_triples(&CayleyTriple::standard(), &to)?.with_label(MapLabel::Tau { p: *p }))
}

/// `κ̂_q`: acts as `x ↦ q x q̄` on `ℍ` and fixes `z`.
pub fn kappa_hat(q: &Octonion) -> Result<OrthoMap8> {
    check_unit_in_h(q, "q")?;
    let qc = q.conj();
    let to = CayleyTriple {
        a: (*q * Octonion::U) * qc,
        b: (*q * Octonion::V) * qc,
        c: Octonion::Z,
    };
    Ok(g2_from_triples(&CayleyTriple::standard(), &to)?.with_label(MapLabel::KappaHat { q: *q }))
}

/// `T^{(k)}_{a,b}`: `x ↦ a K^k(x) b` on `ℍ`, identity on `ℍ^⊥`.
pub fn t_map(a: &Octonion, b: &Octonion, k: u8) -> Result<OrthoMap8> {
    check_unit_in_h(a, "a")?;
    check_unit_in_h(b, "b")?;
    check_bit(k)?;
    let cols = std::array::from_fn(|c| {
        let e = Octonion::basis(c);
        if c < 4 {
            (*a * conj_pow(&e, k)) * *b
        } else {
            e
        }
    });
    Ok(OrthoMap8::from_columns(&cols).with_label(MapLabel::T { a: *a, b: *b, k }))
}

/// `σ_S`: `-1` on the span of the orthonormal `vectors`, identity on its complement.
pub fn sigma_span(vectors: &[Octonion]) -> Result<OrthoMap8> {
    for (i, x) in vectors.iter().enumerate() {
        check_unit(x, "reflection vector")?;
        for y in &vectors[..i] {
            if x.dot(y).abs() > PARAM_TOL {
                return Err(Error::BadParameter(
                    "reflection vectors must be orthonormal".into(),
                ));
            }
        }
    }
    let cols = std::array::from_fn(|c| {
        let e = Octonion::basis(c);
        vectors
            .iter()
            .fold(e, |acc, w| acc - w.scale(2.0 * w.dot(&e)))
    });
    Ok(OrthoMap8::from_columns(&cols).with_label(MapLabel::Sigma {
        vectors: vectors.to_vec(),
    }))
}

/// `σ_u`.
pub fn sigma_u() -> OrthoMap8 {
    sigma_span(&[Octonion::U]).expect("u is a unit")
}

/// `σ_{uv} σ_{uz} σ_{(uv)z}`: `-1` on `⟨uv, uz, (uv)z⟩`.
pub fn sigma_uw() -> OrthoMap8 {
    sigma_span(&[Octonion::UV, Octonion::UZ, Octonion::UVZ]).expect("orthonormal")
}

/// `σ_W` for `W = ⟨v, z, vz⟩`.
pub fn sigma_w() -> OrthoMap8 {
    sigma_span(&[Octonion::V, Octonion::Z, Octonion::VZ]).expect("orthonormal")
}

/// `B_a = L_a R_a`: `x ↦ a x a`.
pub fn b_map(a: &Octonion) -> Result<OrthoMap8> {
    check_unit(a, "a")?;
    let cols = std::array::from_fn(|c| *a * (Octonion::basis(c) * *a));
    Ok(OrthoMap8::from_columns(&cols).with_label(MapLabel::B { a: *a }))
}

/// `C_a = L_a R_ā`: `x ↦ a x ā`.
pub fn c_map(a: &Octonion) -> Result<OrthoMap8> {
    check_unit(a, "a")?;
    let ac = a.conj();
    let cols = std::array::from_fn(|c| *a * (Octonion::basis(c) * ac));
    Ok(OrthoMap8::from_columns(&cols).with_label(MapLabel::C { a: *a }))
}

/// `L_a`.
pub fn l_map(a: &Octonion) -> Result<OrthoMap8> {
    check_unit(a, "a")?;
    Ok(OrthoMap8::from_rows(left_mul_matrix(a)).with_label(MapLabel::L { a: *a }))
}

/// `R_a`.
pub fn r_map(a: &Octonion) -> Result<OrthoMap8> {
    check_unit(a, "a")?;
    Ok(OrthoMap8::from_rows(right_mul_matrix(a)).with_label(MapLabel::R { a: *a }))
}

/// `ε̂`: `(u, v, z) ↦ ((-1)^eps u, v, z)`.
pub fn eps_hat(eps: u8) -> OrthoMap8 {
    let s = if eps % 2 == 1 { -1.0 } else { 1.0 };
    let cols = std::array::from_fn(|c| {
        let e = Octonion::basis(c);
        if c % 2 == 1 {
            e.scale(s)
        } else {
            e
        }
    });
    OrthoMap8::from_columns(&cols).with_label(MapLabel::EpsHat { eps: eps % 2 })
}

/// `G^{k1,k2}_{θ,γ} = B_{cos θ + u sin θ} σ_u^{k1} (σ_{uv} σ_{uz} σ_{vz sin γ - (uv)z cos γ})^{k2}`.
pub fn g_map(theta: f64, gamma: f64, k1: u8, k2: u8) -> Result<OrthoMap8> {
    check_bit(k1)?;
    check_bit(k2)?;
    if !theta.is_finite() || !gamma.is_finite() {
        return Err(Error::NonFinite);
    }
    let mut m = b_map(&Octonion::from(crate::octonion::Quaternion::exp_u(theta)))?;
    if k1 == 1 {
        m = &m * &sigma_u();
    }
    if k2 == 1 {
        let w = Octonion::VZ.scale(gamma.sin()) - Octonion::UVZ.scale(gamma.cos());
        m = &m * &sigma_span(&[Octonion::UV, Octonion::UZ, w])?;
    }
    Ok(m.with_label(MapLabel::G {
        theta,
        gamma,
        k1,
        k2,
    }))
}

/// `F^{k1,k2}_θ = C_{cos θ + u sin θ} σ_u^{k1} σ_{uW}^{k2}` with `σ_{uW} = σ_{uv} σ_{uz} σ_{(uv)z}`.
pub fn f_map(theta: f64, k1: u8, k2: u8) -> Result<OrthoMap8> {
    check_bit(k1)?;
    check_bit(k2)?;
    if !theta.is_finite() {
        return Err(Error::NonFinite);
    }
    let mut m = c_map(&Octonion::from(crate::octonion::Quaternion::exp_u(theta)))?;
    if k1 == 1 {
        m = &m * &sigma_u();
    }
    if k2 == 1 {
        m = &m * &sigma_uw();
    }
    Ok(m.with_label(MapLabel::F { theta, k1, k2 }))
}

/// Block-diagonal form of `F^{k1,k2}_θ` on the planes
/// `⟨1⟩, ⟨u⟩, ⟨v, uv⟩, ⟨z, uz⟩, ⟨vz, (uv)z⟩`.
pub fn f_block_matrix(theta: f64, k1: u8, k2: u8) -> OrthoMap8 {
    let rot = |z: f64| {
        let s = if k2 % 2 == 1 { -1.0 } else { 1.0 };
        [[z.cos(), -s * z.sin()], [z.sin(), s * z.cos()]]
    };
    let mut m = [[0.0; 8]; 8];
    m[0][0] = 1.0;
    m[1][1] = if k1 % 2 == 1 { -1.0 } else { 1.0 };
    for (off, ang) in [(2, 2.0 * theta), (4, 2.0 * theta), (6, -2.0 * theta)] {
        let b = rot(ang);
        for r in 0..2 {
            for c in 0..2 {
                m[off + r][off + c] = b[r][c];
            }
        }
    }
    OrthoMap8::from_rows(m)
}

/// `Δ(p, κ_q) = τ_{p̄} κ̂_q`.
pub fn delta_map(p: &Octonion, q: &Octonion) -> Result<OrthoMap8> {
    let m = &tau_map(&p.conj())? * &kappa_hat(q)?;
    Ok(m.with_label(MapLabel::Delta { p: *p, q: *q }))
}

/// Largest deviation of `φ(e_i e_j) - φ(e_i) φ(e_j)` over basis pairs.
pub fn automorphism_residual(phi: &OrthoMap8) -> f64 {
    let img: Vec<Octonion> = (0..8).map(|k| phi.column(k)).collect();
    let mut worst = 0.0f64;
    for i in 0..8 {
        for j in 0..8 {
            let lhs = phi.apply(&(Octonion::basis(i) * Octonion::basis(j)));
            worst = worst.max(lhs.max_abs_diff(&(img[i] * img[j])));
        }
    }
    worst
}

/// `φ(xy) = φ(x) φ(y)` on all basis pairs within `tol`.
pub fn is_automorphism(phi: &OrthoMap8, tol: f64) -> bool {
    phi.is_finite() && automorphism_residual(phi) <= tol
}
