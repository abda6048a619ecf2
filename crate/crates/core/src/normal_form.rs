//! Normal forms for the action of `SO(3)` (as `κ_q: x ↦ q x q̄`) on pairs and
//! pairs of brackets of unit quaternions.
//!
//! A bracket `[a, b]` is the class `{(a, b), (-a, -b)}`. Quaternion coordinates
//! are written `r1 + r2 u + r3 v + r4 uv`. Sets named `P_{AB}` contain
//! `cos α + (u cos β + v sin β) sin α` with `α ∈ A`, `β ∈ B`.

use crate::error::{Error, Result};
use crate::octonion::{rotation_quaternion, Quaternion};
use serde::{Deserialize, Serialize};
use std::f64::consts::{FRAC_PI_2, PI};

/// An ordered pair of unit quaternions.
#[derive(Clone, Copy, Debug, PartialEq, Serialize, Deserialize)]
pub struct PairTT {
    pub a: Quaternion,
    pub b: Quaternion,
}

impl PairTT {
    pub fn new(a: Quaternion, b: Quaternion) -> PairTT {
        PairTT { a, b }
    }

    fn act(&self, q: &Quaternion, negate: bool) -> PairTT {
        let s = if negate { -1.0 } else { 1.0 };
        PairTT {
            a: q.kappa(&self.a).scale(s),
            b: q.kappa(&self.b).scale(s),
        }
    }

    fn coords(&self) -> [f64; 8] {
        std::array::from_fn(|k| if k < 4 { self.a.0[k] } else { self.b.0[k - 4] })
    }

    pub fn max_abs_diff(&self, o: &PairTT) -> f64 {
        let (x, y) = (self.coords(), o.coords());
        (0..8).fold(0.0, |m, k| f64::max(m, (x[k] - y[k]).abs()))
    }
}

/// Two brackets `([a1, b1], [a2, b2])`, stored through representatives.
#[derive(Clone, Copy, Debug, PartialEq, Serialize, Deserialize)]
pub struct TwoBrackets {
    pub first: PairTT,
    pub second: PairTT,
}

impl TwoBrackets {
    pub fn new(a1: Quaternion, b1: Quaternion, a2: Quaternion, b2: Quaternion) -> TwoBrackets {
        TwoBrackets {
            first: PairTT::new(a1, b1),
            second: PairTT::new(a2, b2),
        }
    }

    /// `κ_q` on all four entries, with optional sign flips of each bracket.
    pub fn act(&self, q: &Quaternion, negate: [bool; 2]) -> TwoBrackets {
        TwoBrackets {
            first: self.first.act(q, negate[0]),
            second: self.second.act(q, negate[1]),
        }
    }

    /// Distance between the brackets as classes: each bracket is compared with
    /// the closer of the two representatives.
    pub fn bracket_distance(&self, o: &TwoBrackets) -> f64 {
        let d = |x: &PairTT, y: &PairTT| {
            x.max_abs_diff(y)
                .min(x.max_abs_diff(&y.act(&Quaternion::ONE, true)))
        };
        d(&self.first, &o.first).max(d(&self.second, &o.second))
    }
}

/// Normal form of a pair: `κ_q(a, b) = point`.
#[derive(Clone, Copy, Debug, PartialEq, Serialize, Deserialize)]
pub struct NfTT {
    pub point: PairTT,
    pub q: Quaternion,
}

/// Normal form of a bracket: `(-1)^sign κ_q(a, b) = point`.
#[derive(Clone, Copy, Debug, PartialEq, Serialize, Deserialize)]
pub struct NfBracket {
    pub point: PairTT,
    pub q: Quaternion,
    pub negate: bool,
}

/// Normal form of two brackets: `x.act(q, negate) = point`.
#[derive(Clone, Copy, Debug, PartialEq, Serialize, Deserialize)]
pub struct NfPair {
    pub point: TwoBrackets,
    pub q: Quaternion,
    pub negate: [bool; 2],
}

/// Stabilizer of a point of `M₁` in `SO(3)`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub enum StabCase {
    /// Both entries in `⟨1⟩`: all of `SO(3)`.
    Full,
    /// Both in `⟨1, u⟩`, not both in `⟨1⟩` or both in `⟨u⟩`: rotations about `u`.
    CircleU,
    /// Both in `⟨u⟩`: rotations about `u` and half-turns about axes in `⟨v, uv⟩`.
    CircleUPlusVU,
    /// Independent entries of `⟨u, v⟩`: `{Id, κ_{uv}}`.
    TwoElt,
    Trivial,
}

/// The transversal sets.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub enum Transversal {
    M,
    M1,
    M2,
    M3,
    M4,
    N,
    NPrime,
}

/// Interval with open or closed ends.
#[derive(Clone, Copy, Debug)]
struct Iv {
    lo: f64,
    hi: f64,
    lo_closed: bool,
    hi_closed: bool,
}

const fn open(lo: f64, hi: f64) -> Iv {
    Iv {
        lo,
        hi,
        lo_closed: false,
        hi_closed: false,
    }
}

const fn closed(lo: f64, hi: f64) -> Iv {
    Iv {
        lo,
        hi,
        lo_closed: true,
        hi_closed: true,
    }
}

const fn point(x: f64) -> Iv {
    closed(x, x)
}

impl Iv {
    fn contains(&self, x: f64, tol: f64) -> bool {
        let lo = if self.lo_closed {
            x >= self.lo - tol
        } else {
            x > self.lo + tol
        };
        let hi = if self.hi_closed {
            x <= self.hi + tol
        } else {
            x < self.hi - tol
        };
        lo && hi
    }
}

fn rotate_about_u(phi: f64) -> Quaternion {
    Quaternion::exp_u(phi / 2.0)
}

fn vplane_norm(x: &Quaternion) -> f64 {
    x.0[2].hypot(x.0[3])
}

/// Rotation about `u` taking the `⟨v, uv⟩` part of `x` to the positive `v` axis.
fn align_vplane(x: &Quaternion) -> Quaternion {
    rotate_about_u(-x.0[3].atan2(x.0[2]))
}

fn is_one(x: &Quaternion, tol: f64) -> bool {
    x.dist(&Quaternion::ONE) <= tol
}

fn is_pm1(x: &Quaternion, tol: f64) -> bool {
    x.im().norm() <= tol
}

/// Membership in `P_{AB}`.
fn in_p(x: &Quaternion, a: Iv, b: Iv, tol: f64) -> bool {
    let r = x.0;
    let im = x.im().norm();
    if im <= tol || r[3].abs() > tol || r[2] < -tol {
        return false;
    }
    let alpha = im.atan2(r[0]);
    let beta = r[2].max(0.0).atan2(r[1]);
    a.contains(alpha, tol) && b.contains(beta, tol)
}

const FULL_A: Iv = open(0.0, PI);
const FULL_B: Iv = closed(0.0, PI);

fn in_big_p(x: &Quaternion, tol: f64) -> bool {
    in_p(x, FULL_A, FULL_B, tol)
}

fn in_p0(x: &Quaternion, tol: f64) -> bool {
    in_p(x, FULL_A, point(0.0), tol)
}

/// `(x, y) ⪰ (0, 0)` lexicographically, with a deadband.
fn lex_nonneg(x: f64, y: f64, tol: f64) -> bool {
    x > tol || (x.abs() <= tol && y >= -tol)
}

/// `𝕋_{mn}`: `(r_m, r_n) ⪰ (0, 0)`, indices from 1.
fn in_t(x: &Quaternion, m: usize, n: usize, tol: f64) -> bool {
    lex_nonneg(x.0[m - 1], x.0[n - 1], tol)
}

/// Lexicographic comparison with a deadband: `true` when `x` is strictly larger.
fn lex_gt(x: &[f64], y: &[f64], tol: f64) -> bool {
    for (a, b) in x.iter().zip(y) {
        if (a - b).abs() > tol {
            return a > b;
        }
    }
    false
}

pub fn in_m(p: &PairTT, tol: f64) -> bool {
    let (a, b) = (&p.a, &p.b);
    (is_pm1(a, tol) && is_pm1(b, tol))
        || (is_pm1(a, tol) && in_p0(b, tol))
        || (in_p0(a, tol) && is_pm1(b, tol))
        || (in_p0(a, tol) && in_big_p(b, tol))
}

pub fn in_m1(p: &PairTT, tol: f64) -> bool {
    let (a, b) = (&p.a, &p.b);
    (is_one(a, tol) && is_pm1(b, tol))
        || (is_one(a, tol) && in_p0(b, tol))
        || (in_p0(a, tol) && is_one(b, tol))
        || (in_p0(a, tol) && in_big_p(b, tol) && lex_nonneg(a.re(), b.re(), tol))
}

pub fn in_m2(p: &PairTT, tol: f64) -> bool {
    let (a, b) = (&p.a, &p.b);
    ((is_one(a, tol) || in_p0(a, tol)) && (is_pm1(b, tol) || in_big_p(b, tol)))
        || (a.dist(&Quaternion::V) <= tol && in_t(b, 1, 2, tol))
        || in_p(a, open(0.0, FRAC_PI_2), open(0.0, PI), tol)
        || in_p(a, point(FRAC_PI_2), open(0.0, FRAC_PI_2), tol)
}

pub fn in_m3(p: &PairTT, tol: f64) -> bool {
    let (a, b) = (&p.a, &p.b);
    let h = FRAC_PI_2;
    (is_one(a, tol) && (is_pm1(b, tol) || in_p(b, open(0.0, PI), closed(0.0, h), tol)))
        || (in_p(a, open(0.0, h), point(0.0), tol) && (is_pm1(b, tol) || in_big_p(b, tol)))
        || (a.dist(&Quaternion::U) <= tol
            && (is_one(b, tol)
                || in_p(
                    b,
                    Iv {
                        lo: 0.0,
                        hi: h,
                        lo_closed: false,
                        hi_closed: true,
                    },
                    FULL_B,
                    tol,
                )))
        || (a.dist(&Quaternion::V) <= tol && in_t(b, 1, 4, tol) && in_t(b, 2, 4, tol))
        || (in_p(a, point(h), open(0.0, h), tol) && in_t(b, 1, 4, tol))
        || (in_p(a, open(0.0, h), point(h), tol) && in_t(b, 2, 4, tol))
        || in_p(a, open(0.0, h), open(0.0, h), tol)
}

pub fn in_m4(p: &PairTT, tol: f64) -> bool {
    in_t(&p.a, 1, 4, tol) && in_t(&p.a, 2, 3, tol)
}

/// First nonzero coordinate of the concatenated pair is positive.
fn sign_canonical(p: &PairTT, tol: f64) -> bool {
    p.coords()
        .iter()
        .find(|x| x.abs() > tol)
        .is_none_or(|x| *x > 0.0)
}

/// Stabilizer case of a point of `M₁`.
pub fn stabilizer_case(p: &PairTT, tol: f64) -> StabCase {
    let r = |x: &Quaternion, k: usize| x.0[k].abs() <= tol;
    let real = |x: &Quaternion| r(x, 1) && r(x, 2) && r(x, 3);
    let in_u = |x: &Quaternion| r(x, 0) && r(x, 2) && r(x, 3);
    let in_c = |x: &Quaternion| r(x, 2) && r(x, 3);
    let in_uv = |x: &Quaternion| r(x, 0) && r(x, 3);
    let (a, b) = (&p.a, &p.b);
    if real(a) && real(b) {
        StabCase::Full
    } else if in_u(a) && in_u(b) {
        StabCase::CircleUPlusVU
    } else if in_c(a) && in_c(b) {
        StabCase::CircleU
    } else if in_uv(a) && in_uv(b) && (a.0[1] * b.0[2] - a.0[2] * b.0[1]).abs() > tol {
        StabCase::TwoElt
    } else {
        StabCase::Trivial
    }
}

pub fn in_transversal_pair(p: &PairTT, which: Transversal, tol: f64) -> bool {
    match which {
        Transversal::M => in_m(p, tol),
        Transversal::M1 => in_m1(p, tol),
        Transversal::M2 => in_m2(p, tol),
        Transversal::M3 => in_m3(p, tol),
        Transversal::M4 => in_m4(p, tol),
        Transversal::N | Transversal::NPrime => false,
    }
}

/// Membership of two brackets in `N` or `N'` (other sets test the first bracket).
pub fn in_transversal(x: &TwoBrackets, which: Transversal, tol: f64) -> bool {
    match which {
        Transversal::N | Transversal::NPrime => {
            if !in_m1(&x.first, tol) {
                return false;
            }
            let ok = match stabilizer_case(&x.first, tol) {
                StabCase::Full => in_m1(&x.second, tol),
                StabCase::CircleU => in_m2(&x.second, tol),
                StabCase::CircleUPlusVU => in_m3(&x.second, tol),
                StabCase::TwoElt => in_m4(&x.second, tol),
                StabCase::Trivial => true,
            };
            let excluded = which == Transversal::NPrime
                && is_one(&x.first.a, tol)
                && is_pm1(&x.first.b, tol)
                && is_one(&x.second.a, tol)
                && is_pm1(&x.second.b, tol);
            ok && !excluded
        }
        other => in_transversal_pair(&x.first, other, tol),
    }
}

fn check_unit(x: &Quaternion, tol: f64) -> Result<()> {
    if !x.is_finite() {
        return Err(Error::NonFinite);
    }
    if (x.norm() - 1.0).abs() > tol.max(1e-9) {
        return Err(Error::BadParameter(format!(
            "{:?} is not a unit quaternion",
            x.0
        )));
    }
    Ok(())
}

/// Writes `x` as `cos α + (u cos β + v sin β) sin α` exactly when its `uv`
/// part and, for `±1`, its imaginary part are below `tol`.
fn snap(x: &Quaternion, tol: f64) -> Quaternion {
    let im = x.im().norm();
    if im <= tol {
        return Quaternion::scalar(x.re().signum());
    }
    let mut r = x.0;
    if r[3].abs() <= tol {
        r[3] = 0.0;
    }
    if r[2].abs() <= tol {
        r[2] = 0.0;
    }
    if r[1].abs() <= tol {
        r[1] = 0.0;
    }
    if r[0].abs() <= tol {
        r[0] = 0.0;
    }
    Quaternion(r).normalized()
}

/// Normal form of `(a, b)` in `M` under `κ_q`.
pub fn nf_txt(a: &Quaternion, b: &Quaternion, tol: f64) -> Result<NfTT> {
    check_unit(a, tol)?;
    check_unit(b, tol)?;
    let ia = a.im();
    let q = if ia.norm() <= tol {
        let ib = b.im();
        if ib.norm() <= tol {
            Quaternion::ONE
        } else {
            rotation_quaternion(&ib.normalized(), &Quaternion::U, 1e-9)?
        }
    } else {
        let q1 = rotation_quaternion(&ia.normalized(), &Quaternion::U, 1e-9)?;
        let b1 = q1.kappa(b);
        if vplane_norm(&b1) <= tol {
            q1
        } else {
            align_vplane(&b1) * q1
        }
    };
    let p = PairTT::new(*a, *b).act(&q, false);
    Ok(NfTT {
        point: PairTT::new(snap(&p.a, tol), snap(&p.b, tol)),
        q,
    })
}

fn pick_best(cands: Vec<NfBracket>, accept: impl Fn(&PairTT) -> bool, tol: f64) -> NfBracket {
    let valid: Vec<&NfBracket> = cands.iter().filter(|c| accept(&c.point)).collect();
    let pool: Vec<&NfBracket> = if valid.is_empty() {
        cands.iter().collect()
    } else {
        valid
    };
    let mut best = pool[0];
    for c in &pool[1..] {
        if lex_gt(&c.point.coords(), &best.point.coords(), tol) {
            best = c;
        }
    }
    *best
}

/// Normal form of the bracket `[a, b]` in `M₁`.
pub fn nf_m1(a: &Quaternion, b: &Quaternion, tol: f64) -> Result<NfBracket> {
    let plus = nf_txt(a, b, tol)?;
    let minus = nf_txt(&-*a, &-*b, tol)?;
    let cands = vec![
        NfBracket {
            point: plus.point,
            q: plus.q,
            negate: false,
        },
        NfBracket {
            point: minus.point,
            q: minus.q,
            negate: true,
        },
    ];
    Ok(pick_best(cands, |p| in_m1(p, tol), tol))
}

/// Search over `finite × {±1}` after an optional rotation about `u`.
fn reduce_finite(
    x: &PairTT,
    align: Option<Quaternion>,
    finite: &[Quaternion],
    accept: impl Fn(&PairTT) -> bool,
    tol: f64,
) -> NfBracket {
    let q0 = align.unwrap_or(Quaternion::ONE);
    let mut cands = Vec::with_capacity(finite.len() * 2);
    for g in finite {
        let q = *g * q0;
        for negate in [false, true] {
            let p = x.act(&q, negate);
            cands.push(NfBracket {
                point: PairTT::new(snap(&p.a, tol), snap(&p.b, tol)),
                q,
                negate,
            });
        }
    }
    pick_best(cands, accept, tol)
}

fn u_alignment(x: &PairTT, tol: f64) -> Option<Quaternion> {
    if vplane_norm(&x.a) > tol {
        Some(align_vplane(&x.a))
    } else if vplane_norm(&x.b) > tol {
        Some(align_vplane(&x.b))
    } else {
        None
    }
}

/// Reduces a bracket under the stabilizer of the given case.
pub fn reduce_second(case: StabCase, x: &PairTT, tol: f64) -> Result<NfBracket> {
    check_unit(&x.a, tol)?;
    check_unit(&x.b, tol)?;
    let (one, u, v, uv) = (
        Quaternion::ONE,
        Quaternion::U,
        Quaternion::V,
        Quaternion::UV,
    );
    Ok(match case {
        StabCase::Full => nf_m1(&x.a, &x.b, tol)?,
        StabCase::CircleU => {
            reduce_finite(x, u_alignment(x, tol), &[one, u], |p| in_m2(p, tol), tol)
        }
        StabCase::CircleUPlusVU => reduce_finite(
            x,
            u_alignment(x, tol),
            &[one, u, v, uv],
            |p| in_m3(p, tol),
            tol,
        ),
        StabCase::TwoElt => reduce_finite(x, None, &[one, uv], |p| in_m4(p, tol), tol),
        StabCase::Trivial => {
            let negate = !sign_canonical(x, tol);
            NfBracket {
                point: x.act(&one, negate),
                q: one,
                negate,
            }
        }
    })
}

/// Normal form of two brackets in `N`.
pub fn nf_pair(x: &TwoBrackets, tol: f64) -> Result<NfPair> {
    let first = nf_m1(&x.first.a, &x.first.b, tol)?;
    let case = stabilizer_case(&first.point, tol);
    let moved = x.second.act(&first.q, false);
    let second = reduce_second(case, &moved, tol)?;
    let q = second.q * first.q;
    // The stabilizer fixes the first bracket as a class but may swap its
    // representative for the negative one.
    let image = x.first.act(&q, false);
    let negate_first = image.max_abs_diff(&first.point)
        > image.act(&Quaternion::ONE, true).max_abs_diff(&first.point);
    Ok(NfPair {
        point: TwoBrackets {
            first: first.point,
            second: second.point,
        },
        q,
        negate: [negate_first, second.negate],
    })
}

/// Angles `(α, β)` of an element of `P`, or `None` when `x ∉ P`.
pub fn p_angles(x: &Quaternion, tol: f64) -> Option<(f64, f64)> {
    if !in_big_p(x, tol) {
        return None;
    }
    let im = x.im().norm();
    Some((im.atan2(x.re()), x.0[2].max(0.0).atan2(x.0[1])))
}
