//! The two-parameter block `D1133`: algebras `𝕆_{G^{j1,j2}_{α,γ}, G^{i1,i2}_{β,γ}}`,
//! their reparametrization as `𝕆_{F^{j1,j2}_ξ, F^{i1,i2}_η}`, and the
//! fundamental region of the isomorphism relation.

use crate::algebra::{fold_pi, Algebra, DoubleSign, Family};
use crate::error::{Error, Result};
use crate::maps::{self, OrthoMap8};
use crate::octonion::{CayleyTriple, Octonion, Quaternion};
use serde::{Deserialize, Serialize};
use std::f64::consts::{FRAC_PI_2, PI};

/// Parameters of the G family; angles are taken modulo `π`.
#[derive(Clone, Copy, Debug, PartialEq, Serialize, Deserialize)]
pub struct GParams {
    pub i1: u8,
    pub j1: u8,
    pub i2: u8,
    pub j2: u8,
    pub alpha: f64,
    pub beta: f64,
}

impl GParams {
    pub fn new(i1: u8, j1: u8, i2: u8, j2: u8, alpha: f64, beta: f64) -> GParams {
        GParams {
            i1,
            j1,
            i2,
            j2,
            alpha,
            beta,
        }
    }

    pub fn family(&self) -> Family {
        Family::GFamily {
            i1: self.i1,
            j1: self.j1,
            i2: self.i2,
            j2: self.j2,
            alpha: self.alpha,
            beta: self.beta,
        }
    }

    pub fn build(&self) -> Result<Algebra> {
        self.family().build()
    }

    /// Double sign of the whole algebra.
    pub fn double_sign(&self) -> DoubleSign {
        DoubleSign::new(self.i1 + self.i2, self.j1 + self.j2)
    }

    /// Double sign of the subalgebra `A₀ = ℂ`.
    pub fn a0_double_sign(&self) -> DoubleSign {
        DoubleSign::new(self.i1, self.j1)
    }

    fn indices(&self) -> (u8, u8, u8, u8) {
        (self.i1, self.j1, self.i2, self.j2)
    }

    fn validate(&self) -> Result<()> {
        let (i1, j1, i2, j2) = self.indices();
        if [i1, j1, i2, j2].iter().any(|&b| b > 1) {
            return Err(Error::BadParameter("indices must be 0 or 1".into()));
        }
        if i2 == 0 && j2 == 0 {
            return Err(Error::BadParameter("need i2 = 1 or j2 = 1".into()));
        }
        if !self.alpha.is_finite() || !self.beta.is_finite() {
            return Err(Error::NonFinite);
        }
        Ok(())
    }
}

/// `(θ, ζ)` from `(α, β)`; depends on `(i1, j1)`.
pub fn theta_zeta(i1: u8, j1: u8, alpha: f64, beta: f64) -> (f64, f64) {
    let (x, y) = match (i1, j1) {
        (0, 0) => (alpha + 2.0 * beta, 2.0 * alpha + beta),
        (0, 1) => (-alpha, -2.0 * alpha - 3.0 * beta),
        (1, 0) => (-3.0 * alpha - 2.0 * beta, -beta),
        _ => (-alpha, -beta),
    };
    (2.0 * x / 3.0, 2.0 * y / 3.0)
}

/// `(ξ, η)` from `(θ, ζ)` and `γ`; depends on `(i2, j2)`.
pub fn xi_eta(i2: u8, j2: u8, theta: f64, zeta: f64, gamma: f64) -> (f64, f64) {
    let g = 2.0 * gamma / 3.0;
    let (x, y) = match (i2, j2) {
        (0, 1) => (theta - g, zeta - 2.0 * theta),
        (1, 0) => (2.0 * zeta - theta, -zeta - g),
        _ => (theta - g, -zeta - g),
    };
    (x / 2.0, y / 2.0)
}

/// Result of [`g_to_f`].
#[derive(Clone, Debug, PartialEq)]
pub struct FForm {
    pub xi: f64,
    pub eta: f64,
    /// `φ = L_t R_s ρ`, an isomorphism from the G form to the F form.
    pub witness: OrthoMap8,
}

/// `𝕆_{G_{α,γ}, G_{β,γ}} ≅ 𝕆_{F_ξ, F_η}`, with the explicit isomorphism.
pub fn g_to_f(p: &GParams, gamma: f64) -> Result<FForm> {
    p.validate()?;
    let (theta, zeta) = theta_zeta(p.i1, p.j1, p.alpha, p.beta);
    let (xi, eta) = xi_eta(p.i2, p.j2, theta, zeta, gamma);
    let c = Octonion::from(Quaternion::exp_u(-gamma / 3.0));
    let rho = maps::g2_from_triples(
        &CayleyTriple::standard(),
        &CayleyTriple {
            a: Octonion::U,
            b: c * Octonion::V,
            c: c * Octonion::Z,
        },
    )?;
    let t = Octonion::from(Quaternion::exp_u(theta));
    let s = Octonion::from(Quaternion::exp_u(zeta));
    let witness = &(&maps::l_map(&t)? * &maps::r_map(&s)?) * &rho;
    Ok(FForm { xi, eta, witness })
}

/// The isotope pair `(G^{j1,j2}_{α,γ}, G^{i1,i2}_{β,γ})`.
pub fn g_pair(p: &GParams, gamma: f64) -> Result<(OrthoMap8, OrthoMap8)> {
    p.validate()?;
    Ok((
        maps::g_map(p.alpha, gamma, p.j1, p.j2)?,
        maps::g_map(p.beta, gamma, p.i1, p.i2)?,
    ))
}

/// The isotope pair `(F^{j1,j2}_ξ, F^{i1,i2}_η)`.
pub fn f_pair(p: &GParams, xi: f64, eta: f64) -> Result<(OrthoMap8, OrthoMap8)> {
    p.validate()?;
    Ok((maps::f_map(xi, p.j1, p.j2)?, maps::f_map(eta, p.i1, p.i2)?))
}

/// Inverts [`g_to_f`] at `γ = 0`: `(α, β)` in `[0, π)²`.
pub fn f_to_g(i1: u8, j1: u8, i2: u8, j2: u8, xi: f64, eta: f64) -> Result<GParams> {
    let probe = GParams::new(i1, j1, i2, j2, 0.0, 0.0);
    probe.validate()?;
    let image = |a: f64, b: f64| {
        let (t, z) = theta_zeta(i1, j1, a, b);
        xi_eta(i2, j2, t, z, 0.0)
    };
    let (m00, m10) = image(1.0, 0.0);
    let (m01, m11) = image(0.0, 1.0);
    let det = m00 * m11 - m01 * m10;
    if det.abs() < 1e-12 {
        return Err(Error::Singular);
    }
    let alpha = (m11 * xi - m01 * eta) / det;
    let beta = (-m10 * xi + m00 * eta) / det;
    Ok(GParams::new(i1, j1, i2, j2, fold_pi(alpha), fold_pi(beta)))
}

/// The point of `[0, π)²` excluded from the block for these indices.
pub fn excluded_point(p: &GParams) -> (f64, f64) {
    (
        ((p.j1 + p.j2) % 2) as f64 * FRAC_PI_2,
        ((p.i1 + p.i2) % 2) as f64 * FRAC_PI_2,
    )
}

/// Distance on the circle `ℝ/πℤ`.
pub fn circle_dist(x: f64, y: f64) -> f64 {
    let d = (x - y).rem_euclid(PI);
    d.min(PI - d)
}

/// `(cos 2α, cos 2β) ≠ ((-1)^{j1+j2}, (-1)^{i1+i2})`.
pub fn in_d1133(p: &GParams, tol: f64) -> bool {
    if p.validate().is_err() {
        return false;
    }
    let (ea, eb) = excluded_point(p);
    !(circle_dist(p.alpha, ea) <= tol && circle_dist(p.beta, eb) <= tol)
}

fn fold_snap(x: f64, tol: f64) -> f64 {
    let r = fold_pi(x);
    if PI - r <= tol {
        0.0
    } else {
        r
    }
}

/// Fundamental region: `({0} × [0, π/2]) ∪ ((0, π/2) × [0, π)) ∪ ({π/2} × [0, π/2])`.
pub fn in_region(alpha: f64, beta: f64, tol: f64) -> bool {
    let half = |b: f64| b >= -tol && b <= FRAC_PI_2 + tol;
    if alpha.abs() <= tol || (alpha - FRAC_PI_2).abs() <= tol {
        half(beta)
    } else {
        alpha > 0.0 && alpha < FRAC_PI_2 && beta >= -tol && beta < PI
    }
}

/// Canonical representative of the isomorphism class: `(α, β)` or
/// `(π - α, π - β)` folded into `[0, π)²`, whichever lies in the region.
pub fn canonical_1133(p: &GParams, tol: f64) -> Result<GParams> {
    p.validate()?;
    if !in_d1133(p, tol) {
        return Err(Error::NotInD1133);
    }
    let a = fold_snap(p.alpha, tol);
    let b = fold_snap(p.beta, tol);
    let (ia, ib) = (fold_snap(PI - a, tol), fold_snap(PI - b, tol));
    let (a, b) = if in_region(a, b, tol) {
        (a, b)
    } else {
        (ia, ib)
    };
    Ok(GParams {
        alpha: a,
        beta: b,
        ..*p
    })
}

/// Isomorphism test between two G-family parameter sets.
pub fn iso_1133(p: &GParams, q: &GParams, tol: f64) -> Result<bool> {
    if p.indices() != q.indices() {
        return Ok(false);
    }
    let (cp, cq) = (canonical_1133(p, tol)?, canonical_1133(q, tol)?);
    Ok(circle_dist(cp.alpha, cq.alpha) <= 1e-8 && circle_dist(cp.beta, cq.beta) <= 1e-8)
}

/// `ε̂^ε` carrying `p` to `q` when they are isomorphic.
pub fn witness_1133(p: &GParams, q: &GParams, tol: f64) -> Result<Option<OrthoMap8>> {
    if !iso_1133(p, q, tol)? {
        return Ok(None);
    }
    let same = circle_dist(p.alpha, q.alpha) <= 1e-8 && circle_dist(p.beta, q.beta) <= 1e-8;
    Ok(Some(maps::eps_hat(if same { 0 } else { 1 })))
}

/// All admissible index tuples `(i1, j1, i2, j2)`.
pub fn index_tuples() -> Vec<(u8, u8, u8, u8)> {
    let mut v = Vec::new();
    for i1 in 0..2 {
        for j1 in 0..2 {
            for (i2, j2) in [(0, 1), (1, 0), (1, 1)] {
                v.push((i1, j1, i2, j2));
            }
        }
    }
    v
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn worked_reparametrization() {
        // (0,0,0,1): (ξ, η) = ((α + 2β)/3, -β)
        let p = GParams::new(0, 0, 0, 1, 0.4, 1.1);
        let f = g_to_f(&p, 0.0).unwrap();
        assert!((f.xi - (0.4 + 2.2) / 3.0).abs() < 1e-15);
        assert!((f.eta + 1.1).abs() < 1e-15);
    }

    #[test]
    fn excluded_points() {
        assert!(!in_d1133(&GParams::new(0, 0, 0, 1, FRAC_PI_2, 0.0), 1e-9));
        assert!(in_d1133(&GParams::new(0, 0, 0, 1, 0.0, 0.0), 1e-9));
        assert_eq!(
            canonical_1133(&GParams::new(1, 1, 1, 1, 0.0, 0.0), 1e-9),
            Err(Error::NotInD1133)
        );
    }

    #[test]
    fn canonical_examples() {
        let c = canonical_1133(&GParams::new(0, 0, 0, 1, 0.3, 0.2), 1e-9).unwrap();
        assert_eq!((c.alpha, c.beta), (0.3, 0.2));
        let c = canonical_1133(&GParams::new(0, 0, 0, 1, 2.0, 0.2), 1e-9).unwrap();
        assert!((c.alpha - (PI - 2.0)).abs() < 1e-15 && (c.beta - (PI - 0.2)).abs() < 1e-15);
        let c = canonical_1133(&GParams::new(0, 1, 0, 1, 0.0, 2.5), 1e-9).unwrap();
        assert!(c.alpha == 0.0 && (c.beta - (PI - 2.5)).abs() < 1e-15);
    }

    #[test]
    fn index_tuple_count() {
        assert_eq!(index_tuples().len(), 12);
    }
}
