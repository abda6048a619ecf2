//! Finite-dimensional real algebras given by structure constants, and the
//! isotope families of the octonions.
//!
//! An isotope `𝕆_{f,g}` has product `x ∘ y = f(x) g(y)` for orthogonal `f, g`.

use crate::error::{Error, Result};
use crate::maps::{self, MapLabel, OrthoMap8};
use crate::numerics::{self, Mat, TolerancePolicy};
use crate::octonion::{Octonion, Quaternion};
use crate::random::{self, Rng};
use serde::{Deserialize, Serialize};
use std::f64::consts::PI;
use std::fmt;

const PARAM_TOL: f64 = 1e-9;

/// Signs `((-1)^i, (-1)^j)` of `(det L_a, det R_a)` for nonzero `a`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(into = "[i8; 2]", try_from = "[i8; 2]")]
pub struct DoubleSign {
    pub i: u8,
    pub j: u8,
}

impl DoubleSign {
    pub fn new(i: u8, j: u8) -> DoubleSign {
        DoubleSign { i: i % 2, j: j % 2 }
    }

    pub fn all() -> [DoubleSign; 4] {
        [
            DoubleSign::new(0, 0),
            DoubleSign::new(0, 1),
            DoubleSign::new(1, 0),
            DoubleSign::new(1, 1),
        ]
    }

    pub fn signs(&self) -> [i8; 2] {
        [1 - 2 * self.i as i8, 1 - 2 * self.j as i8]
    }
}

impl From<DoubleSign> for [i8; 2] {
    fn from(d: DoubleSign) -> [i8; 2] {
        d.signs()
    }
}

impl TryFrom<[i8; 2]> for DoubleSign {
    type Error = String;
    fn try_from(s: [i8; 2]) -> std::result::Result<DoubleSign, String> {
        let bit = |x: i8| match x {
            1 => Ok(0),
            -1 => Ok(1),
            _ => Err(format!("double sign entries must be ±1, got {x}")),
        };
        Ok(DoubleSign::new(bit(s[0])?, bit(s[1])?))
    }
}

impl fmt::Display for DoubleSign {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let c = |b: u8| if b == 0 { '+' } else { '-' };
        write!(f, "({},{})", c(self.i), c(self.j))
    }
}

/// How an algebra was constructed. Metadata only; the tensor is authoritative.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(tag = "name", content = "params")]
pub enum Family {
    /// `𝕆_{K^j, K^i}`.
    StandardIsotope { i: u8, j: u8 },
    /// `ℍ_{K^j, K^i}`.
    Quat4 { i: u8, j: u8 },
    /// `𝕆_{λ_a^{(j)}, λ_b^{(i)}}` with `a, b` unit in `ℂ`.
    LambdaFamily {
        i: u8,
        j: u8,
        a: Octonion,
        b: Octonion,
    },
    /// `𝕆_{K^j τ_a, K^i τ_b}` with `a, b` unit in `ℍ`.
    TauFamily {
        i: u8,
        j: u8,
        a: Octonion,
        b: Octonion,
    },
    /// `𝕆_{T^{(j)}_{a1,b1}, T^{(i)}_{a2,b2}}` with unit quaternion parameters.
    TFamily {
        i: u8,
        j: u8,
        a1: Octonion,
        b1: Octonion,
        a2: Octonion,
        b2: Octonion,
    },
    /// `𝕆_{Kτ, Kτ⁻¹}` with `τ = τ_{(√3 u - 1)/2}`.
    Okubo,
    /// `𝕆_{K τ σ_W^{1-j}, K τ⁻¹ σ_W^{1-i}}`, `(i, j) ≠ (1, 1)`.
    P35 { i: u8, j: u8 },
    /// `𝕆_{G^{j1,j2}_{α,0}, G^{i1,i2}_{β,0}}` with `i2 = 1` or `j2 = 1`.
    GFamily {
        i1: u8,
        j1: u8,
        i2: u8,
        j2: u8,
        alpha: f64,
        beta: f64,
    },
    /// Generic isotope `𝕆_{f,g}`.
    Isotope { f: [[f64; 8]; 8], g: [[f64; 8]; 8] },
}

/// A real algebra: `e_i e_j = Σ_k sc[(i n + j) n + k] e_k`.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(into = "AlgebraJson", try_from = "AlgebraJson")]
pub struct Algebra {
    dim: usize,
    sc: Vec<f64>,
    /// `None` for raw tensors.
    pub family: Option<Family>,
}

#[derive(Serialize, Deserialize)]
struct AlgebraJson {
    dim: usize,
    sc: Vec<Vec<Vec<f64>>>,
    family: Option<Family>,
}

impl From<Algebra> for AlgebraJson {
    fn from(a: Algebra) -> AlgebraJson {
        let n = a.dim;
        let sc = (0..n)
            .map(|i| (0..n).map(|j| a.product(i, j).to_vec()).collect())
            .collect();
        AlgebraJson {
            dim: n,
            sc,
            family: a.family,
        }
    }
}

impl TryFrom<AlgebraJson> for Algebra {
    type Error = Error;
    fn try_from(j: AlgebraJson) -> Result<Algebra> {
        let n = j.dim;
        let bad = || {
            Error::Invalid(format!(
                "structure constants must have shape [{n}][{n}][{n}]"
            ))
        };
        if j.sc.len() != n {
            return Err(bad());
        }
        let mut sc = Vec::with_capacity(n * n * n);
        for row in &j.sc {
            if row.len() != n {
                return Err(bad());
            }
            for v in row {
                if v.len() != n {
                    return Err(bad());
                }
                sc.extend_from_slice(v);
            }
        }
        Algebra::new(n, sc, j.family)
    }
}

fn bit(k: u8, name: &str) -> Result<u8> {
    if k > 1 {
        return Err(Error::BadParameter(format!(
            "{name} must be 0 or 1, got {k}"
        )));
    }
    Ok(k)
}

fn unit_in_h(x: &Octonion, name: &str) -> Result<()> {
    if !x.is_finite() || (x.norm() - 1.0).abs() > PARAM_TOL || !x.in_h(PARAM_TOL) {
        return Err(Error::BadParameter(format!(
            "{name} must be a unit quaternion"
        )));
    }
    Ok(())
}

fn unit_in_c(x: &Octonion, name: &str) -> Result<()> {
    unit_in_h(x, name)?;
    if !x.in_c(PARAM_TOL) {
        return Err(Error::BadParameter(format!("{name} must lie in ⟨1, u⟩")));
    }
    Ok(())
}

/// `x mod π` in `[0, π)`.
pub fn fold_pi(x: f64) -> f64 {
    let r = x.rem_euclid(PI);
    if r >= PI {
        0.0
    } else {
        r
    }
}

/// The unit `(√3 u - 1)/2`, a primitive cube root of unity.
pub fn okubo_root() -> Octonion {
    Octonion([-0.5, 3f64.sqrt() / 2.0, 0.0, 0.0, 0.0, 0.0, 0.0, 0.0])
}

impl Family {
    /// The pair `(f, g)` with `A = 𝕆_{f,g}`, for the eight-dimensional families.
    pub fn isotope_pair(&self) -> Result<(OrthoMap8, OrthoMap8)> {
        use Family::*;
        Ok(match self {
            StandardIsotope { i, j } => (
                maps::conj_power(bit(*j, "j")?),
                maps::conj_power(bit(*i, "i")?),
            ),
            Quat4 { .. } => return Err(Error::BadDimension(4)),
            LambdaFamily { i, j, a, b } => {
                unit_in_c(a, "a")?;
                unit_in_c(b, "b")?;
                (
                    maps::lambda_map(a, bit(*j, "j")?)?,
                    maps::lambda_map(b, bit(*i, "i")?)?,
                )
            }
            TauFamily { i, j, a, b } => {
                unit_in_h(a, "a")?;
                unit_in_h(b, "b")?;
                (
                    &maps::conj_power(bit(*j, "j")?) * &maps::tau_map(a)?,
                    &maps::conj_power(bit(*i, "i")?) * &maps::tau_map(b)?,
                )
            }
            TFamily {
                i,
                j,
                a1,
                b1,
                a2,
                b2,
            } => {
                for (x, n) in [(a1, "a1"), (b1, "b1"), (a2, "a2"), (b2, "b2")] {
                    unit_in_h(x, n)?;
                }
                (
                    maps::t_map(a1, b1, bit(*j, "j")?)?,
                    maps::t_map(a2, b2, bit(*i, "i")?)?,
                )
            }
            Okubo => {
                let k = maps::conj_power(1);
                let tau = maps::tau_map(&okubo_root())?;
                (&k * &tau, &k * &tau.inverse())
            }
            P35 { i, j } => {
                let (i, j) = (bit(*i, "i")?, bit(*j, "j")?);
                if (i, j) == (1, 1) {
                    return Err(Error::BadParameter("P35 needs (i, j) ≠ (1, 1)".into()));
                }
                let k = maps::conj_power(1);
                let tau = maps::tau_map(&okubo_root())?;
                let s = maps::sigma_w();
                let id = maps::identity();
                let sj = if j == 0 { &s } else { &id };
                let si = if i == 0 { &s } else { &id };
                (&(&k * &tau) * sj, &(&k * &tau.inverse()) * si)
            }
            GFamily {
                i1,
                j1,
                i2,
                j2,
                alpha,
                beta,
            } => {
                let (i1, j1, i2, j2) = (
                    bit(*i1, "i1")?,
                    bit(*j1, "j1")?,
                    bit(*i2, "i2")?,
                    bit(*j2, "j2")?,
                );
                if i2 == 0 && j2 == 0 {
                    return Err(Error::BadParameter(
                        "G family needs i2 = 1 or j2 = 1".into(),
                    ));
                }
                (
                    maps::g_map(*alpha, 0.0, j1, j2)?,
                    maps::g_map(*beta, 0.0, i1, i2)?,
                )
            }
            Isotope { f, g } => {
                let (f, g) = (OrthoMap8::from_rows(*f), OrthoMap8::from_rows(*g));
                if !f.is_orthogonal(1e-8) || !g.is_orthogonal(1e-8) {
                    return Err(Error::NotOrthogonal);
                }
                (f, g)
            }
        })
    }

    /// Builds the algebra this label describes.
    pub fn build(&self) -> Result<Algebra> {
        if let Family::Quat4 { i, j } = self {
            let (i, j) = (bit(*i, "i")?, bit(*j, "j")?);
            let k = |x: Quaternion, p: u8| if p == 1 { x.conj() } else { x };
            let e = |n: usize| {
                let mut r = [0.0; 4];
                r[n] = 1.0;
                Quaternion(r)
            };
            let mut sc = Vec::with_capacity(64);
            for a in 0..4 {
                for b in 0..4 {
                    sc.extend_from_slice(&(k(e(a), j) * k(e(b), i)).0);
                }
            }
            return Algebra::new(4, sc, Some(self.clone()));
        }
        let (f, g) = self.isotope_pair()?;
        let mut a = Algebra::isotope_tensor(&f, &g);
        a.family = Some(self.clone());
        Ok(a)
    }

    /// Parameters after conjugating by the labelled automorphism, when the
    /// family is closed under it.
    fn conjugated_by(&self, phi: &MapLabel) -> Option<Family> {
        use Family::*;
        let kappa = |q: &Octonion, x: &Octonion| (*q * *x) * q.conj();
        let q = match phi {
            MapLabel::KappaHat { q } => Some(*q),
            MapLabel::EpsHat { eps: 1 } => Some(Octonion::V),
            _ => None,
        };
        let automorphism = matches!(
            phi,
            MapLabel::Identity
                | MapLabel::KappaHat { .. }
                | MapLabel::EpsHat { .. }
                | MapLabel::Tau { .. }
                | MapLabel::Delta { .. }
                | MapLabel::G2Triples { .. }
        );
        match (self, q) {
            (StandardIsotope { .. }, _) if automorphism => Some(self.clone()),
            (TauFamily { i, j, a, b }, Some(q)) => Some(TauFamily {
                i: *i,
                j: *j,
                a: kappa(&q, a),
                b: kappa(&q, b),
            }),
            (
                TFamily {
                    i,
                    j,
                    a1,
                    b1,
                    a2,
                    b2,
                },
                Some(q),
            ) => Some(TFamily {
                i: *i,
                j: *j,
                a1: kappa(&q, a1),
                b1: kappa(&q, b1),
                a2: kappa(&q, a2),
                b2: kappa(&q, b2),
            }),
            (LambdaFamily { i, j, a, b }, _) if matches!(phi, MapLabel::EpsHat { eps: 1 }) => {
                Some(LambdaFamily {
                    i: *i,
                    j: *j,
                    a: a.conj(),
                    b: b.conj(),
                })
            }
            (
                GFamily {
                    i1,
                    j1,
                    i2,
                    j2,
                    alpha,
                    beta,
                },
                _,
            ) if matches!(phi, MapLabel::EpsHat { eps: 1 }) => Some(GFamily {
                i1: *i1,
                j1: *j1,
                i2: *i2,
                j2: *j2,
                alpha: fold_pi(PI - alpha),
                beta: fold_pi(PI - beta),
            }),
            _ => None,
        }
    }
}

impl Algebra {
    /// Validates shape and finiteness.
    pub fn new(dim: usize, sc: Vec<f64>, family: Option<Family>) -> Result<Algebra> {
        if dim == 0 {
            return Err(Error::BadDimension(0));
        }
        if sc.len() != dim * dim * dim {
            return Err(Error::Invalid(format!(
                "expected {} structure constants, got {}",
                dim.pow(3),
                sc.len()
            )));
        }
        if sc.iter().any(|x| !x.is_finite()) {
            return Err(Error::NonFinite);
        }
        Ok(Algebra { dim, sc, family })
    }

    /// The octonions themselves.
    pub fn octonions() -> Algebra {
        Family::StandardIsotope { i: 0, j: 0 }
            .build()
            .expect("valid")
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn structure_constants(&self) -> &[f64] {
        &self.sc
    }

    /// Coordinates of `e_i e_j`.
    pub fn product(&self, i: usize, j: usize) -> &[f64] {
        let n = self.dim;
        &self.sc[(i * n + j) * n..(i * n + j + 1) * n]
    }

    pub fn mul(&self, x: &[f64], y: &[f64]) -> Vec<f64> {
        let n = self.dim;
        let mut out = vec![0.0; n];
        for i in 0..n {
            if x[i] == 0.0 {
                continue;
            }
            for j in 0..n {
                let c = x[i] * y[j];
                if c == 0.0 {
                    continue;
                }
                for (o, s) in out.iter_mut().zip(self.product(i, j)) {
                    *o += c * s;
                }
            }
        }
        out
    }

    /// Product of two eight-dimensional elements.
    pub fn mul8(&self, x: &Octonion, y: &Octonion) -> Octonion {
        Octonion::from_slice(&self.mul(&x.0, &y.0)).expect("dimension 8")
    }

    /// Matrix of `y ↦ x y`.
    pub fn left_matrix(&self, x: &[f64]) -> Mat {
        let n = self.dim;
        Mat::from_fn(n, n, |r, c| {
            (0..n).map(|i| x[i] * self.product(i, c)[r]).sum()
        })
    }

    /// Matrix of `y ↦ y x`.
    pub fn right_matrix(&self, x: &[f64]) -> Mat {
        let n = self.dim;
        Mat::from_fn(n, n, |r, c| {
            (0..n).map(|j| x[j] * self.product(c, j)[r]).sum()
        })
    }

    /// Largest entrywise difference of structure constants, `∞` on dimension mismatch.
    pub fn max_abs_diff(&self, o: &Algebra) -> f64 {
        if self.dim != o.dim {
            return f64::INFINITY;
        }
        self.sc
            .iter()
            .zip(&o.sc)
            .fold(0.0, |m, (a, b)| m.max((a - b).abs()))
    }

    fn isotope_tensor(f: &OrthoMap8, g: &OrthoMap8) -> Algebra {
        let fs: Vec<Octonion> = (0..8).map(|k| f.column(k)).collect();
        let gs: Vec<Octonion> = (0..8).map(|k| g.column(k)).collect();
        let mut sc = Vec::with_capacity(512);
        for i in 0..8 {
            for j in 0..8 {
                sc.extend_from_slice(&(fs[i] * gs[j]).0);
            }
        }
        Algebra {
            dim: 8,
            sc,
            family: None,
        }
    }

    /// `𝕆_{f,g}` with product `f(x) g(y)`.
    pub fn from_isotope(f: &OrthoMap8, g: &OrthoMap8) -> Result<Algebra> {
        if !f.is_finite() || !g.is_finite() {
            return Err(Error::NonFinite);
        }
        if !f.is_orthogonal(1e-8) || !g.is_orthogonal(1e-8) {
            return Err(Error::NotOrthogonal);
        }
        let mut a = Algebra::isotope_tensor(f, g);
        a.family = match (&f.label, &g.label) {
            (Some(MapLabel::ConjPower { k: j }), Some(MapLabel::ConjPower { k: i })) => {
                Some(Family::StandardIsotope { i: *i, j: *j })
            }
            _ => Some(Family::Isotope {
                f: f.matrix,
                g: g.matrix,
            }),
        };
        Ok(a)
    }

    /// The algebra `φ(A)` with product `x ∘' y = φ(φ⁻¹x ∘ φ⁻¹y)`; `φ` is an
    /// isomorphism `A → φ(A)`.
    ///
    /// The family label follows the parameters when the family is closed
    /// under `φ`; otherwise isotopes become [`Family::Isotope`] and raw
    /// tensors stay raw.
    pub fn transport(&self, phi: &OrthoMap8) -> Result<Algebra> {
        if self.dim != 8 {
            return Err(Error::BadDimension(self.dim));
        }
        if !phi.is_orthogonal(1e-8) {
            return Err(Error::NotOrthogonal);
        }
        let inv = phi.inverse();
        let pre: Vec<Octonion> = (0..8).map(|k| inv.column(k)).collect();
        let mut sc = Vec::with_capacity(512);
        for i in 0..8 {
            for j in 0..8 {
                sc.extend_from_slice(&phi.apply(&self.mul8(&pre[i], &pre[j])).0);
            }
        }
        let mut out = Algebra {
            dim: 8,
            sc,
            family: None,
        };
        let Some(fam) = &self.family else {
            return Ok(out);
        };
        if let Some(next) = phi.label.as_ref().and_then(|l| fam.conjugated_by(l)) {
            if let Ok(rebuilt) = next.build() {
                if rebuilt.max_abs_diff(&out) <= 1e-9 {
                    return Ok(rebuilt);
                }
            }
        }
        if let Ok((f, g)) = fam.isotope_pair() {
            out.family = Some(Family::Isotope {
                f: phi.conjugate(&f).matrix,
                g: phi.conjugate(&g).matrix,
            });
        }
        Ok(out)
    }

    fn random_element(&self, rng: &mut Rng) -> Vec<f64> {
        match self.dim {
            8 => random::unit_octonion(rng).0.to_vec(),
            4 => random::unit_quaternion(rng).0.to_vec(),
            n => {
                let mut v: Vec<f64> = (0..n).map(|_| random::angle(rng, -1.0, 1.0)).collect();
                let s = v.iter().map(|x| x * x).sum::<f64>().sqrt();
                v.iter_mut().for_each(|x| *x /= s);
                v
            }
        }
    }

    /// Signs of `det L_a` and `det R_a`, checked on four random `a`.
    pub fn double_sign(&self, rng: &mut Rng, tol: &TolerancePolicy) -> Result<DoubleSign> {
        if ![2, 4, 8].contains(&self.dim) {
            return Err(Error::BadDimension(self.dim));
        }
        let mut seen: Option<DoubleSign> = None;
        for _ in 0..4 {
            let a = self.random_element(rng);
            let l = numerics::det_sign(&self.left_matrix(&a), tol.zero_tol)?;
            let r = numerics::det_sign(&self.right_matrix(&a), tol.zero_tol)?;
            let d = DoubleSign::new((l < 0) as u8, (r < 0) as u8);
            match seen {
                Some(s) if s != d => return Err(Error::InconsistentSigns),
                _ => seen = Some(d),
            }
        }
        Ok(seen.expect("four samples"))
    }

    /// `L_a` and `R_a` stay invertible on `trials` random unit `a`.
    pub fn is_division(&self, trials: usize, rng: &mut Rng, tol: &TolerancePolicy) -> bool {
        (0..trials).all(|_| {
            let a = self.random_element(rng);
            let l = self.left_matrix(&a).lu().determinant().abs();
            let r = self.right_matrix(&a).lu().determinant().abs();
            l > tol.zero_tol && r > tol.zero_tol
        })
    }

    /// `|x ∘ y| = |x| |y|` on `trials` random pairs.
    pub fn norm_multiplicative(&self, trials: usize, rng: &mut Rng, tol: &TolerancePolicy) -> bool {
        (0..trials).all(|_| {
            let x = self.random_element(rng);
            let y = self.random_element(rng);
            let p = self.mul(&x, &y);
            let n = p.iter().map(|v| v * v).sum::<f64>().sqrt();
            (n - 1.0).abs() <= 1e-8f64.max(tol.eq_tol)
        })
    }
}

/// `𝕆_{K^j, K^i}`.
pub fn standard_isotope(i: u8, j: u8) -> Result<Algebra> {
    Family::StandardIsotope { i, j }.build()
}

/// `ℍ_{K^j, K^i}`.
pub fn quat4(i: u8, j: u8) -> Result<Algebra> {
    Family::Quat4 { i, j }.build()
}

/// `𝕆_{λ_a^{(j)}, λ_b^{(i)}}`.
pub fn lambda_family(i: u8, j: u8, a: Quaternion, b: Quaternion) -> Result<Algebra> {
    Family::LambdaFamily {
        i,
        j,
        a: a.into(),
        b: b.into(),
    }
    .build()
}

/// `𝕆_{K^j τ_a, K^i τ_b}`.
pub fn j_family(i: u8, j: u8, a: Quaternion, b: Quaternion) -> Result<Algebra> {
    Family::TauFamily {
        i,
        j,
        a: a.into(),
        b: b.into(),
    }
    .build()
}

/// `𝕆_{T^{(j)}_{a1,b1}, T^{(i)}_{a2,b2}}`.
pub fn k_family(
    i: u8,
    j: u8,
    a1: Quaternion,
    b1: Quaternion,
    a2: Quaternion,
    b2: Quaternion,
) -> Result<Algebra> {
    Family::TFamily {
        i,
        j,
        a1: a1.into(),
        b1: b1.into(),
        a2: a2.into(),
        b2: b2.into(),
    }
    .build()
}

/// `𝕆_{Kτ, Kτ⁻¹}` with `τ = τ_{(√3 u - 1)/2}`.
pub fn okubo_p11() -> Algebra {
    Family::Okubo.build().expect("valid")
}

/// `𝕆_{K τ σ_W^{1-j}, K τ⁻¹ σ_W^{1-i}}`.
pub fn p35(i: u8, j: u8) -> Result<Algebra> {
    Family::P35 { i, j }.build()
}

/// `𝕆_{G^{j1,j2}_{α,0}, G^{i1,i2}_{β,0}}`.
pub fn g_family(i1: u8, j1: u8, i2: u8, j2: u8, alpha: f64, beta: f64) -> Result<Algebra> {
    Family::GFamily {
        i1,
        j1,
        i2,
        j2,
        alpha,
        beta,
    }
    .build()
}

fn is_pm1(a: &Quaternion, tol: f64) -> bool {
    a.im().norm() <= tol
}

/// Dimension of the span of the imaginary parts, with an absolute threshold.
pub fn imaginary_span_dim(xs: &[Quaternion], tol: f64) -> usize {
    let m = Mat::from_fn(3, xs.len(), |r, c| xs[c].0[r + 1]);
    m.singular_values().iter().filter(|&&s| s > tol).count()
}

/// `(a, b) ∈ (𝕋×𝕋)_{ij}`: excludes `(1, 1)`, and for `(i, j) = (1, 1)` also
/// the pairs `(a, a²)` with `a² + a + 1 = 0`.
pub fn in_txt_ij(i: u8, j: u8, a: &Quaternion, b: &Quaternion, tol: f64) -> bool {
    if a.dist(&Quaternion::ONE) <= tol && b.dist(&Quaternion::ONE) <= tol {
        return false;
    }
    if (i % 2, j % 2) == (1, 1) {
        let a2 = *a * *a;
        if (a2 + *a + Quaternion::ONE).norm() <= tol && b.dist(&a2) <= tol {
            return false;
        }
    }
    true
}

/// `(a1, b1, a2, b2) ∈ S`: not all four in `{±1}`.
pub fn in_s(a1: &Quaternion, b1: &Quaternion, a2: &Quaternion, b2: &Quaternion, tol: f64) -> bool {
    ![a1, b1, a2, b2].iter().all(|x| is_pm1(x, tol))
}

/// `(a1, b1, a2, b2) ∈ S_{ij}`: in `S`, and not of the form where the imaginary
/// parts span a line with `a1 = (-1)^j b1`, `a2 = (-1)^i b2`.
pub fn in_s_ij(
    i: u8,
    j: u8,
    a1: &Quaternion,
    b1: &Quaternion,
    a2: &Quaternion,
    b2: &Quaternion,
    tol: f64,
) -> bool {
    if !in_s(a1, b1, a2, b2, tol) {
        return false;
    }
    let sj = if j % 2 == 1 { -1.0 } else { 1.0 };
    let si = if i % 2 == 1 { -1.0 } else { 1.0 };
    let line = imaginary_span_dim(&[*a1, *b1, *a2, *b2], tol) == 1;
    !(line && a1.dist(&b1.scale(sj)) <= tol && a2.dist(&b2.scale(si)) <= tol)
}
