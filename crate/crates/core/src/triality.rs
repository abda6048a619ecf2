//! Triality: for `φ ∈ SO(8)` the pair `(φ₁, φ₂)` with `φ(xy) = φ₁(x) φ₂(y)`.
//!
//! The pair is unique up to a common sign. It is computed exactly by writing
//! `φ` as a product of reflections `σ_a`, grouping them in twos, and using
//! `σ_a σ_b (xy) = (a(b̄x)) ((yb̄)a)` for unit `a, b`.

use crate::error::{Error, Result};
use crate::maps::{self, MapLabel, OrthoMap8};
use crate::numerics::TolerancePolicy;
use crate::octonion::{CayleyTriple, Octonion};

/// Acceptance threshold for a computed pair.
pub const PAIR_TOL: f64 = 1e-8;

/// Largest deviation of `φ(e_i e_j) - φ₁(e_i) φ₂(e_j)`.
pub fn triality_residual(phi: &OrthoMap8, phi1: &OrthoMap8, phi2: &OrthoMap8) -> f64 {
    let mut worst = 0.0f64;
    let p1: Vec<Octonion> = (0..8).map(|k| phi1.column(k)).collect();
    let p2: Vec<Octonion> = (0..8).map(|k| phi2.column(k)).collect();
    for i in 0..8 {
        for j in 0..8 {
            let lhs = phi.apply(&(Octonion::basis(i) * Octonion::basis(j)));
            worst = worst.max(lhs.max_abs_diff(&(p1[i] * p2[j])));
        }
    }
    worst
}

pub fn is_triality_pair(phi: &OrthoMap8, phi1: &OrthoMap8, phi2: &OrthoMap8, tol: f64) -> bool {
    triality_residual(phi, phi1, phi2) <= tol
}

/// Unit vectors `w_1, …, w_m` with `φ = σ_{w_1} ⋯ σ_{w_m}`.
fn householder_factors(phi: &OrthoMap8) -> Vec<Octonion> {
    let mut m = phi.clone();
    let mut out = Vec::new();
    for k in 0..8 {
        // Reflect the column onto -e_k or e_k, whichever avoids cancellation.
        let x = m.column(k);
        let e = Octonion::basis(k);
        let w = if x.0[k] > 0.0 { x + e } else { x - e }.normalized();
        let s = maps::sigma_span(&[w]).expect("unit");
        m = &s * &m;
        out.push(w);
    }
    // `m` is now diagonal with entries ±1.
    for k in 0..8 {
        if m.matrix[k][k] < 0.0 {
            out.push(Octonion::basis(k));
        }
    }
    out
}

/// Flips the common sign so that the first coordinate of `φ₂(1)` above
/// `zero_tol` in magnitude is positive.
fn normalize_sign(p1: OrthoMap8, p2: OrthoMap8, zero_tol: f64) -> (OrthoMap8, OrthoMap8) {
    let s = p2.column(0);
    match s.0.iter().find(|x| x.abs() > zero_tol) {
        Some(x) if *x < 0.0 => (p1.scale(-1.0), p2.scale(-1.0)),
        _ => (p1, p2),
    }
}

fn closed_form(phi: &OrthoMap8) -> Option<(OrthoMap8, OrthoMap8)> {
    match phi.label.as_ref()? {
        MapLabel::Identity
        | MapLabel::Tau { .. }
        | MapLabel::KappaHat { .. }
        | MapLabel::EpsHat { .. }
        | MapLabel::Delta { .. }
        | MapLabel::G2Triples { .. } => Some((phi.clone(), phi.clone())),
        MapLabel::B { a } => Some((maps::l_map(a).ok()?, maps::r_map(a).ok()?)),
        _ => None,
    }
}

/// The triality pair of `φ ∈ SO(8)`, sign-normalized.
pub fn triality_pair(phi: &OrthoMap8, tol: &TolerancePolicy) -> Result<(OrthoMap8, OrthoMap8)> {
    if !phi.is_finite() {
        return Err(Error::NonFinite);
    }
    if !phi.is_orthogonal(1e-8) {
        return Err(Error::NotOrthogonal);
    }
    if phi.det_sign(tol.zero_tol)? < 0 {
        return Err(Error::BadParameter("triality needs det φ = +1".into()));
    }
    if let Some((p1, p2)) = closed_form(phi) {
        if is_triality_pair(phi, &p1, &p2, PAIR_TOL) {
            return Ok(normalize_sign(p1, p2, tol.zero_tol));
        }
    }
    let ws = householder_factors(phi);
    if ws.len() % 2 == 1 {
        return Err(Error::BadParameter("odd number of reflections".into()));
    }
    let mut p1 = maps::identity();
    let mut p2 = maps::identity();
    for pair in ws.chunks(2) {
        let (a, bc) = (pair[0], pair[1].conj());
        p1 = &p1 * &(&maps::l_map(&a)? * &maps::l_map(&bc)?);
        p2 = &p2 * &(&maps::r_map(&a)? * &maps::r_map(&bc)?);
    }
    let res = triality_residual(phi, &p1, &p2);
    if res > PAIR_TOL {
        return Err(Error::NoConvergence(res));
    }
    Ok(normalize_sign(
        p1.with_label_none(),
        p2.with_label_none(),
        tol.zero_tol,
    ))
}

trait NoLabel {
    fn with_label_none(self) -> Self;
}

impl NoLabel for OrthoMap8 {
    fn with_label_none(mut self) -> Self {
        self.label = None;
        self
    }
}

/// `φ: 𝕆_{f,g} → 𝕆_{f',g'}` is an isomorphism iff `φ ∈ SO(8)` and, for its
/// triality pair up to sign, `φ₁ f φ⁻¹ = f'` and `φ₂ g φ⁻¹ = g'`.
pub fn iso_isotopes(
    (f, g): (&OrthoMap8, &OrthoMap8),
    (f2, g2): (&OrthoMap8, &OrthoMap8),
    phi: &OrthoMap8,
    tol: &TolerancePolicy,
) -> Result<bool> {
    let (p1, p2) = match triality_pair(phi, tol) {
        Ok(p) => p,
        Err(Error::BadParameter(_)) | Err(Error::NotOrthogonal) => return Ok(false),
        Err(e) => return Err(e),
    };
    let inv = phi.inverse();
    let lf = &(&p1 * f) * &inv;
    let lg = &(&p2 * g) * &inv;
    let t = 1e-8f64.max(tol.eq_tol);
    let plus = lf.max_abs_diff(f2) <= t && lg.max_abs_diff(g2) <= t;
    let minus = lf.scale(-1.0).max_abs_diff(f2) <= t && lg.scale(-1.0).max_abs_diff(g2) <= t;
    Ok(plus || minus)
}

/// Orthonormal basis of the span of `vectors`.
fn orthonormalize(vectors: &[Octonion]) -> Vec<Octonion> {
    let mut out: Vec<Octonion> = Vec::new();
    for v in vectors {
        let mut x = *v;
        for _ in 0..2 {
            for e in &out {
                x = x - e.scale(e.dot(&x));
            }
        }
        if x.norm() > 1e-9 {
            out.push(x.normalized());
        }
    }
    out
}

/// Isomorphism test for isotopes whose maps all fix the subspace spanned by
/// `fixed` pointwise: `φ` must lie in `G₂`, preserve that subspace, and
/// conjugate `(f, g)` into `(f', g')`.
pub fn g2_iso_fixed_subspace(
    (f, g): (&OrthoMap8, &OrthoMap8),
    (f2, g2): (&OrthoMap8, &OrthoMap8),
    fixed: &[Octonion],
    phi: &OrthoMap8,
) -> Result<bool> {
    let basis = orthonormalize(fixed);
    for m in [f, g, f2, g2] {
        if basis.iter().any(|x| m.apply(x).max_abs_diff(x) > 1e-9) {
            return Err(Error::PreconditionViolated(
                "maps must fix the subspace pointwise".into(),
            ));
        }
    }
    if !phi.is_orthogonal(1e-8) || phi.det_sign(1e-9)? < 0 || !maps::is_automorphism(phi, 1e-8) {
        return Ok(false);
    }
    let stays = basis.iter().all(|x| {
        let y = phi.apply(x);
        let proj = basis
            .iter()
            .fold(Octonion::zero(), |acc, e| acc + e.scale(e.dot(&y)));
        proj.max_abs_diff(&y) <= 1e-8
    });
    Ok(stays
        && phi.conjugate(f).max_abs_diff(f2) <= 1e-8
        && phi.conjugate(g).max_abs_diff(g2) <= 1e-8)
}

/// Automorphism fixing `1` and sending `u` to the unit imaginary `w`; the rest
/// of the triple is completed deterministically.
pub fn g2_aligning_u(w: &Octonion, tol: &TolerancePolicy) -> Result<OrthoMap8> {
    if w.re().abs() > tol.eq_tol || (w.norm() - 1.0).abs() > tol.eq_tol {
        return Err(Error::NotImaginaryUnit(format!("{:?}", w.0)));
    }
    let complete = |against: &[Octonion]| {
        (1..8)
            .map(|k| {
                let mut x = Octonion::basis(k);
                for a in against {
                    x = x - a.scale(a.dot(&x));
                }
                x
            })
            .find(|x| x.norm() > 0.5)
            .map(|x| x.normalized())
            .expect("complement is nonempty")
    };
    let b = complete(&[*w]);
    let c = complete(&[*w, b, *w * b]);
    maps::g2_from_triples(&CayleyTriple::standard(), &CayleyTriple { a: *w, b, c })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::random;

    #[test]
    fn identity_pair() {
        let (p1, p2) = triality_pair(&maps::identity(), &TolerancePolicy::default()).unwrap();
        assert!(p1.max_abs_diff(&maps::identity()) < 1e-15);
        assert!(p2.max_abs_diff(&maps::identity()) < 1e-15);
    }

    #[test]
    fn reflection_is_rejected() {
        let s = maps::sigma_u();
        assert!(matches!(
            triality_pair(&s, &TolerancePolicy::default()),
            Err(Error::BadParameter(_))
        ));
    }

    #[test]
    fn random_so8_pairs_verify() {
        let mut rng = random::seeded(9);
        for _ in 0..20 {
            let phi = random::so8_element(&mut rng);
            let (p1, p2) = triality_pair(&phi, &TolerancePolicy::default()).unwrap();
            assert!(triality_residual(&phi, &p1, &p2) < 1e-12);
        }
    }

    #[test]
    fn aligning_u() {
        let mut rng = random::seeded(2);
        let w = random::imaginary_unit_octonion(&mut rng);
        let g = g2_aligning_u(&w, &TolerancePolicy::default()).unwrap();
        assert!(g.apply(&Octonion::U).dist(&w) < 1e-14);
        assert!(maps::is_automorphism(&g, 1e-12));
    }
}
