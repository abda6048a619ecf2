//! Block detection from invariants, canonical forms for algebras built from a
//! family, and the isomorphism decision.

use crate::algebra::{self, imaginary_span_dim, in_s, in_s_ij, Algebra, DoubleSign, Family};
use crate::d1133::{self, GParams};
use crate::derivations::{self, LieType};
use crate::error::{Error, Result};
use crate::maps::{self, OrthoMap8};
use crate::normal_form::{self, PairTT, Transversal, TwoBrackets};
use crate::numerics::{Mat, TolerancePolicy};
use crate::octonion::{Octonion, Quaternion};
use crate::random::Rng;
use serde::{Deserialize, Serialize};
use std::f64::consts::{FRAC_PI_2, PI};
use std::fmt;
use std::str::FromStr;

/// Tolerance for comparing canonical parameters and verifying witnesses.
pub const MATCH_TOL: f64 = 1e-8;

/// Sub-blocks of the division composition algebras, named by partition.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(tag = "block")]
pub enum BlockKind {
    D17,
    D8,
    D116,
    /// `{1,3,4}` with derivations of type `su2 × su2`.
    D134s,
    /// `{1,3,4}` otherwise.
    D134a,
    D1124,
    D11114,
    D35,
    D1133 {
        i1: u8,
        j1: u8,
        i2: u8,
        j2: u8,
    },
    /// Four-dimensional isotopes of the quaternions, partition `{1,3}`.
    Quat4,
    NotInD,
}

impl BlockKind {
    /// Blocks with one isomorphism class per double sign.
    pub fn is_parameter_free(&self) -> bool {
        matches!(
            self,
            BlockKind::D17 | BlockKind::D8 | BlockKind::D35 | BlockKind::Quat4
        )
    }
}

impl fmt::Display for BlockKind {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            BlockKind::D1133 { i1, j1, i2, j2 } => write!(f, "D1133({i1},{j1},{i2},{j2})"),
            other => write!(f, "{other:?}"),
        }
    }
}

/// Parses a block name; `D1133` without indices means index tuple `(0,0,0,1)`.
impl FromStr for BlockKind {
    type Err = Error;
    fn from_str(s: &str) -> Result<BlockKind> {
        Ok(match s {
            "D17" => BlockKind::D17,
            "D8" => BlockKind::D8,
            "D116" => BlockKind::D116,
            "D134s" => BlockKind::D134s,
            "D134a" => BlockKind::D134a,
            "D1124" => BlockKind::D1124,
            "D11114" => BlockKind::D11114,
            "D35" => BlockKind::D35,
            "D1133" => BlockKind::D1133 {
                i1: 0,
                j1: 0,
                i2: 0,
                j2: 1,
            },
            "Quat4" => BlockKind::Quat4,
            "NotInD" => BlockKind::NotInD,
            _ => return Err(Error::Invalid(format!("unknown block {s}"))),
        })
    }
}

/// A block together with the double sign of its algebras.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct BlockLabel {
    #[serde(flatten)]
    pub kind: BlockKind,
    /// `None` only for algebras outside the division algebras.
    pub double_sign: Option<DoubleSign>,
}

impl BlockLabel {
    pub fn new(kind: BlockKind, sign: DoubleSign) -> BlockLabel {
        BlockLabel {
            kind,
            double_sign: Some(sign),
        }
    }
}

impl fmt::Display for BlockLabel {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self.double_sign {
            Some(s) => write!(f, "{} {}", self.kind, s),
            None => write!(f, "{}", self.kind),
        }
    }
}

/// Invariants computed from the structure constants alone.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct Report {
    pub dim: usize,
    pub double_sign: Option<DoubleSign>,
    pub der_dim: usize,
    pub lie_type: LieType,
    pub trivial_dim: usize,
    pub partition: Vec<usize>,
    pub block: BlockLabel,
}

/// Computes the invariants and the block of `a`.
pub fn analyze(a: &Algebra, rng: &mut Rng, tol: &TolerancePolicy) -> Result<Report> {
    let dim = a.dim();
    if dim != 4 && dim != 8 {
        return Err(Error::BadDimension(dim));
    }
    let double_sign = match a.double_sign(rng, tol) {
        Ok(s) => Some(s),
        Err(Error::Singular) | Err(Error::InconsistentSigns) => None,
        Err(e) => return Err(e),
    };
    let decomposition = match derivations::decompose(a, rng, tol) {
        Ok(d) => d,
        Err(Error::AbelianDerivations) => {
            let basis = derivations::derivation_basis(a, tol)?;
            let trivial_dim = derivations::trivial_submodule(&basis, dim, tol)?.ncols();
            return Ok(Report {
                dim,
                double_sign,
                der_dim: basis.len(),
                lie_type: LieType::Abelian,
                trivial_dim,
                partition: Vec::new(),
                block: BlockLabel {
                    kind: BlockKind::NotInD,
                    double_sign,
                },
            });
        }
        Err(e) => return Err(e),
    };
    let kind = match (double_sign, dim, decomposition.partition.as_slice()) {
        (None, _, _) => BlockKind::NotInD,
        (Some(_), 4, [1, 3]) => BlockKind::Quat4,
        (Some(_), 8, [1, 7]) => BlockKind::D17,
        (Some(_), 8, [8]) => BlockKind::D8,
        (Some(_), 8, [1, 1, 6]) => BlockKind::D116,
        (Some(_), 8, [1, 3, 4]) if decomposition.lie_type == LieType::SU2xSU2 => BlockKind::D134s,
        (Some(_), 8, [1, 3, 4]) => BlockKind::D134a,
        (Some(_), 8, [1, 1, 2, 4]) => BlockKind::D1124,
        (Some(_), 8, [1, 1, 1, 1, 4]) => BlockKind::D11114,
        (Some(_), 8, [3, 5]) => BlockKind::D35,
        (Some(s), 8, [1, 1, 3, 3]) => {
            let a0 = Mat::from_fn(8, 2, |r, c| decomposition.summands[c][(r, 0)]);
            let inner = subalgebra_double_sign(a, &a0, rng, tol)?;
            let (i2, j2) = ((s.i + 2 - inner.i) % 2, (s.j + 2 - inner.j) % 2);
            if (i2, j2) == (0, 0) {
                return Err(Error::Invalid("double sign of A₀ equals that of A".into()));
            }
            BlockKind::D1133 {
                i1: inner.i,
                j1: inner.j,
                i2,
                j2,
            }
        }
        _ => BlockKind::NotInD,
    };
    Ok(Report {
        dim,
        double_sign,
        der_dim: decomposition.der_dim,
        lie_type: decomposition.lie_type,
        trivial_dim: decomposition.trivial_dim,
        partition: decomposition.partition,
        block: BlockLabel { kind, double_sign },
    })
}

/// Double sign of the subalgebra spanned by the orthonormal columns of `basis`.
pub fn subalgebra_double_sign(
    a: &Algebra,
    basis: &Mat,
    rng: &mut Rng,
    tol: &TolerancePolicy,
) -> Result<DoubleSign> {
    let k = basis.ncols();
    let col = |c: usize| basis.column(c).iter().copied().collect::<Vec<f64>>();
    let mut sc = Vec::with_capacity(k * k * k);
    for x in 0..k {
        for y in 0..k {
            let p = a.mul(&col(x), &col(y));
            let coeffs: Vec<f64> = (0..k)
                .map(|c| col(c).iter().zip(&p).map(|(s, t)| s * t).sum())
                .collect();
            let residual = (0..p.len())
                .map(|r| p[r] - (0..k).map(|c| coeffs[c] * basis[(r, c)]).sum::<f64>())
                .fold(0.0f64, |m, v| m.max(v.abs()));
            if residual > 1e-7 {
                return Err(Error::NotInvariant);
            }
            sc.extend(coeffs);
        }
    }
    Algebra::new(k, sc, None)?.double_sign(rng, tol)
}

fn sign_of(k: u8) -> f64 {
    if k % 2 == 1 {
        -1.0
    } else {
        1.0
    }
}

fn quat(x: &Octonion) -> Result<Quaternion> {
    x.to_quaternion(1e-9)
}

/// Block of `𝕆_{K^j τ_a, K^i τ_b}`.
fn j_kind(i: u8, j: u8, a: &Quaternion, b: &Quaternion, tol: f64) -> BlockKind {
    let one = Quaternion::ONE;
    let real = |x: &Quaternion| x.im().norm() <= tol;
    if a.dist(&one) <= tol && b.dist(&one) <= tol {
        BlockKind::D17
    } else if (i, j) == (1, 1) && (*a * *a + *a + one).norm() <= tol && b.dist(&(*a * *a)) <= tol {
        BlockKind::D8
    } else if real(a) && real(b) {
        BlockKind::D134s
    } else {
        BlockKind::D134a
    }
}

/// `𝕆_{T^{(j)}_{a1,b1}, T^{(i)}_{a2,b2}}` with all four entries `±1` equals
/// `𝕆_{s1 K^j τ_{c1}, s2 K^i τ_{c2}}` with `s = ab`, `c = s (-1)^k`. Returns
/// `(c1, c2)` and whether `-Id` is needed to reach `𝕆_{K^j τ_{c1}, K^i τ_{c2}}`.
fn k_outside_s(i: u8, j: u8, x: &TwoBrackets) -> (Quaternion, Quaternion, bool) {
    let s1 = (x.first.a * x.first.b).re().signum();
    let s2 = (x.second.a * x.second.b).re().signum();
    let c1 = Quaternion::scalar(s1 * sign_of(j));
    let c2 = Quaternion::scalar(s2 * sign_of(i));
    (c1, c2, (s1 < 0.0) != (s2 < 0.0))
}

/// Block of `𝕆_{T^{(j)}_{a1,b1}, T^{(i)}_{a2,b2}}`.
fn k_kind(i: u8, j: u8, x: &TwoBrackets, tol: f64) -> BlockKind {
    let (a1, b1, a2, b2) = (&x.first.a, &x.first.b, &x.second.a, &x.second.b);
    if !in_s(a1, b1, a2, b2, tol) {
        let (c1, c2, _) = k_outside_s(i, j, x);
        return j_kind(i, j, &c1, &c2, tol);
    }
    if !in_s_ij(i, j, a1, b1, a2, b2, tol) {
        BlockKind::D116
    } else if imaginary_span_dim(&[*a1, *b1, *a2, *b2], tol) == 1 {
        BlockKind::D1124
    } else {
        BlockKind::D11114
    }
}

/// `λ_e^{(k)} = T^{(k)}_{a, (-1)^k a}` with `a = cos α + u sin α`, `e = e^{u(πk + 2α)}`.
fn lambda_as_t(e: &Quaternion, k: u8) -> (Quaternion, Quaternion) {
    let alpha = ((e.0[1].atan2(e.0[0]) - PI * k as f64) / 2.0).rem_euclid(PI);
    let a = Quaternion::exp_u(alpha);
    (a, a.scale(sign_of(k)))
}

fn lambda_brackets(i: u8, j: u8, a: &Octonion, b: &Octonion) -> Result<TwoBrackets> {
    let (a1, b1) = lambda_as_t(&quat(a)?, j);
    let (a2, b2) = lambda_as_t(&quat(b)?, i);
    Ok(TwoBrackets::new(a1, b1, a2, b2))
}

fn k_brackets(a1: &Octonion, b1: &Octonion, a2: &Octonion, b2: &Octonion) -> Result<TwoBrackets> {
    Ok(TwoBrackets::new(quat(a1)?, quat(b1)?, quat(a2)?, quat(b2)?))
}

impl Family {
    /// The block the family parameters predict, without computing invariants.
    /// `None` for generic isotopes.
    pub fn predicted_block(&self, tol: f64) -> Result<Option<BlockLabel>> {
        use Family::*;
        let label = match self {
            StandardIsotope { i, j } => BlockLabel::new(BlockKind::D17, DoubleSign::new(*i, *j)),
            Quat4 { i, j } => BlockLabel::new(BlockKind::Quat4, DoubleSign::new(*i, *j)),
            Okubo => BlockLabel::new(BlockKind::D8, DoubleSign::new(1, 1)),
            P35 { i, j } => BlockLabel::new(BlockKind::D35, DoubleSign::new(*i, *j)),
            TauFamily { i, j, a, b } => BlockLabel::new(
                j_kind(*i, *j, &quat(a)?, &quat(b)?, tol),
                DoubleSign::new(*i, *j),
            ),
            LambdaFamily { i, j, a, b } => BlockLabel::new(
                k_kind(*i, *j, &lambda_brackets(*i, *j, a, b)?, tol),
                DoubleSign::new(*i, *j),
            ),
            TFamily {
                i,
                j,
                a1,
                b1,
                a2,
                b2,
            } => BlockLabel::new(
                k_kind(*i, *j, &k_brackets(a1, b1, a2, b2)?, tol),
                DoubleSign::new(*i, *j),
            ),
            GFamily {
                i1,
                j1,
                i2,
                j2,
                alpha,
                beta,
            } => {
                let p = GParams::new(*i1, *j1, *i2, *j2, *alpha, *beta);
                let sign = p.double_sign();
                if d1133::in_d1133(&p, tol) {
                    BlockLabel::new(
                        BlockKind::D1133 {
                            i1: *i1,
                            j1: *j1,
                            i2: *i2,
                            j2: *j2,
                        },
                        sign,
                    )
                } else {
                    BlockLabel::new(BlockKind::D134s, sign)
                }
            }
            Isotope { .. } => return Ok(None),
        };
        Ok(Some(label))
    }
}

/// Parameters of a canonical form.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(tag = "params", rename_all = "snake_case")]
pub enum CanonicalParams {
    None,
    /// A point `(a, b)` of the transversal `M`; the algebra is `𝕆_{K^j τ_a, K^i τ_b}`.
    MPoint {
        a: Quaternion,
        b: Quaternion,
    },
    /// A point of `N'`; the algebra is `𝕆_{T^{(j)}_{a1,b1}, T^{(i)}_{a2,b2}}`.
    NPoint {
        first: PairTT,
        second: PairTT,
    },
    /// `(α, β)` in the fundamental region of `D1133`.
    Region {
        alpha: f64,
        beta: f64,
        near_boundary: bool,
    },
}

/// A canonical representative: equal forms mean isomorphic algebras.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct CanonicalForm {
    #[serde(flatten)]
    pub block: BlockLabel,
    #[serde(flatten)]
    pub params: CanonicalParams,
    /// Isomorphism from the input algebra to [`CanonicalForm::reference`].
    #[serde(skip)]
    pub to_reference: Option<OrthoMap8>,
}

impl CanonicalForm {
    fn bare(block: BlockLabel, params: CanonicalParams) -> CanonicalForm {
        CanonicalForm {
            block,
            params,
            to_reference: None,
        }
    }

    /// The algebra this form names.
    pub fn reference(&self) -> Result<Algebra> {
        let sign = self
            .block
            .double_sign
            .ok_or(Error::Invalid("no double sign".into()))?;
        let (i, j) = (sign.i, sign.j);
        match (&self.params, self.block.kind) {
            (CanonicalParams::MPoint { a, b }, _) => algebra::j_family(i, j, *a, *b),
            (CanonicalParams::NPoint { first, second }, _) => {
                algebra::k_family(i, j, first.a, first.b, second.a, second.b)
            }
            (CanonicalParams::Region { alpha, beta, .. }, BlockKind::D1133 { i1, j1, i2, j2 }) => {
                algebra::g_family(i1, j1, i2, j2, *alpha, *beta)
            }
            (CanonicalParams::None, BlockKind::D17) => algebra::standard_isotope(i, j),
            (CanonicalParams::None, BlockKind::D8) => Ok(algebra::okubo_p11()),
            (CanonicalParams::None, BlockKind::D35) => algebra::p35(i, j),
            (CanonicalParams::None, BlockKind::Quat4) => algebra::quat4(i, j),
            _ => Err(Error::Invalid(format!(
                "no reference algebra for {}",
                self.block
            ))),
        }
    }

    /// Same block and, for blocks with moduli, parameters within `tol`.
    pub fn matches(&self, o: &CanonicalForm, tol: f64) -> bool {
        if self.block != o.block {
            return false;
        }
        if self.block.kind.is_parameter_free() {
            return true;
        }
        match (&self.params, &o.params) {
            (CanonicalParams::MPoint { a, b }, CanonicalParams::MPoint { a: c, b: d }) => {
                PairTT::new(*a, *b).max_abs_diff(&PairTT::new(*c, *d)) <= tol
            }
            (
                CanonicalParams::NPoint { first, second },
                CanonicalParams::NPoint {
                    first: f2,
                    second: s2,
                },
            ) => {
                TwoBrackets {
                    first: *first,
                    second: *second,
                }
                .bracket_distance(&TwoBrackets {
                    first: *f2,
                    second: *s2,
                }) <= tol
            }
            (
                CanonicalParams::Region { alpha, beta, .. },
                CanonicalParams::Region {
                    alpha: a2,
                    beta: b2,
                    ..
                },
            ) => d1133::circle_dist(*alpha, *a2) <= tol && d1133::circle_dist(*beta, *b2) <= tol,
            _ => false,
        }
    }
}

fn neg_identity() -> OrthoMap8 {
    maps::identity().scale(-1.0)
}

fn canonical_j(i: u8, j: u8, a: &Quaternion, b: &Quaternion, tol: f64) -> Result<CanonicalForm> {
    let nf = normal_form::nf_txt(a, b, tol)?;
    let kind = j_kind(i, j, a, b, tol);
    Ok(CanonicalForm {
        block: BlockLabel::new(kind, DoubleSign::new(i, j)),
        params: CanonicalParams::MPoint {
            a: nf.point.a,
            b: nf.point.b,
        },
        to_reference: Some(maps::kappa_hat(&nf.q.to_octonion())?),
    })
}

fn canonical_k(i: u8, j: u8, x: &TwoBrackets, tol: f64) -> Result<CanonicalForm> {
    if !in_s(&x.first.a, &x.first.b, &x.second.a, &x.second.b, tol) {
        let (c1, c2, flip) = k_outside_s(i, j, x);
        let mut form = canonical_j(i, j, &c1, &c2, tol)?;
        if flip {
            form.to_reference = form.to_reference.map(|w| &w * &neg_identity());
        }
        return Ok(form);
    }
    let nf = normal_form::nf_pair(x, tol)?;
    Ok(CanonicalForm {
        block: BlockLabel::new(k_kind(i, j, x, tol), DoubleSign::new(i, j)),
        params: CanonicalParams::NPoint {
            first: nf.point.first,
            second: nf.point.second,
        },
        to_reference: Some(maps::kappa_hat(&nf.q.to_octonion())?),
    })
}

fn canonical_g(p: &GParams, tol: f64) -> Result<CanonicalForm> {
    let c = d1133::canonical_1133(p, tol)?;
    let moved = d1133::circle_dist(c.alpha, p.alpha) > MATCH_TOL
        || d1133::circle_dist(c.beta, p.beta) > MATCH_TOL;
    let near = |x: f64| x.abs().min((x - FRAC_PI_2).abs()) <= 10.0 * tol;
    Ok(CanonicalForm {
        block: BlockLabel::new(
            BlockKind::D1133 {
                i1: p.i1,
                j1: p.j1,
                i2: p.i2,
                j2: p.j2,
            },
            p.double_sign(),
        ),
        params: CanonicalParams::Region {
            alpha: c.alpha,
            beta: c.beta,
            near_boundary: near(c.alpha),
        },
        to_reference: Some(maps::eps_hat(moved as u8)),
    })
}

fn parameter_free(kind: BlockKind, sign: DoubleSign) -> CanonicalForm {
    CanonicalForm {
        block: BlockLabel::new(kind, sign),
        params: CanonicalParams::None,
        to_reference: if kind == BlockKind::Quat4 {
            None
        } else {
            Some(maps::identity())
        },
    }
}

/// Canonical form of an algebra built from a family.
///
/// Generic isotopes and raw tensors give [`Error::RawTensorNotSupported`];
/// [`analyze`] still determines their block.
pub fn canonical(a: &Algebra, tol: &TolerancePolicy) -> Result<CanonicalForm> {
    let fam = a.family.as_ref().ok_or(Error::RawTensorNotSupported)?;
    canonical_family(fam, tol.zero_tol)
}

/// Canonical form from family parameters alone.
pub fn canonical_family(fam: &Family, tol: f64) -> Result<CanonicalForm> {
    use Family::*;
    match fam {
        StandardIsotope { i, j } => Ok(parameter_free(BlockKind::D17, DoubleSign::new(*i, *j))),
        Quat4 { i, j } => Ok(parameter_free(BlockKind::Quat4, DoubleSign::new(*i, *j))),
        Okubo => Ok(parameter_free(BlockKind::D8, DoubleSign::new(1, 1))),
        P35 { i, j } => Ok(parameter_free(BlockKind::D35, DoubleSign::new(*i, *j))),
        TauFamily { i, j, a, b } => canonical_j(*i, *j, &quat(a)?, &quat(b)?, tol),
        LambdaFamily { i, j, a, b } => canonical_k(*i, *j, &lambda_brackets(*i, *j, a, b)?, tol),
        TFamily {
            i,
            j,
            a1,
            b1,
            a2,
            b2,
        } => canonical_k(*i, *j, &k_brackets(a1, b1, a2, b2)?, tol),
        GFamily {
            i1,
            j1,
            i2,
            j2,
            alpha,
            beta,
        } => {
            let p = GParams::new(*i1, *j1, *i2, *j2, *alpha, *beta);
            if d1133::in_d1133(&p, tol) {
                canonical_g(&p, tol)
            } else {
                Err(Error::NotInD1133)
            }
        }
        Isotope { .. } => Err(Error::RawTensorNotSupported),
    }
}

/// Outcome of [`isomorphic`].
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(tag = "verdict", rename_all = "snake_case")]
pub enum Verdict {
    /// The witness, when present, maps the first product onto the second
    /// within [`MATCH_TOL`]. It is absent when the block has a single class
    /// per double sign but no explicit map is known.
    Yes {
        #[serde(skip_serializing_if = "Option::is_none")]
        witness: Option<OrthoMap8>,
    },
    No {
        reason: String,
    },
    Unknown {
        reason: String,
    },
}

impl Verdict {
    pub fn is_yes(&self) -> bool {
        matches!(self, Verdict::Yes { .. })
    }
}

fn verified_witness(
    a: &Algebra,
    b: &Algebra,
    ca: &CanonicalForm,
    cb: &CanonicalForm,
) -> Option<OrthoMap8> {
    let (wa, wb) = (ca.to_reference.as_ref()?, cb.to_reference.as_ref()?);
    let w = &wb.inverse() * wa;
    let image = a.transport(&w).ok()?;
    (image.max_abs_diff(b) <= MATCH_TOL).then_some(w)
}

/// Decides whether `a ≅ b`.
///
/// Algebras built from families are compared through canonical forms. Raw
/// tensors are compared through invariants, which settle every block except
/// those with continuous moduli; there the verdict is `Unknown`.
pub fn isomorphic(a: &Algebra, b: &Algebra, rng: &mut Rng, tol: &TolerancePolicy) -> Verdict {
    if a.dim() != b.dim() {
        return Verdict::No {
            reason: format!("dimensions {} and {}", a.dim(), b.dim()),
        };
    }
    if let (Ok(ca), Ok(cb)) = (canonical(a, tol), canonical(b, tol)) {
        if ca.block != cb.block {
            return Verdict::No {
                reason: format!("blocks {} and {}", ca.block, cb.block),
            };
        }
        if !ca.matches(&cb, MATCH_TOL) {
            return Verdict::No {
                reason: "canonical forms differ".into(),
            };
        }
        if let Some(w) = verified_witness(a, b, &ca, &cb) {
            return Verdict::Yes { witness: Some(w) };
        }
        if ca.block.kind.is_parameter_free() {
            return Verdict::Yes { witness: None };
        }
        return Verdict::Unknown {
            reason: "composed witness failed verification".into(),
        };
    }
    let (ra, rb) = match (analyze(a, rng, tol), analyze(b, rng, tol)) {
        (Ok(ra), Ok(rb)) => (ra, rb),
        (Err(e), _) | (_, Err(e)) => {
            return Verdict::Unknown {
                reason: format!("analysis failed: {e}"),
            }
        }
    };
    if ra.block != rb.block {
        return Verdict::No {
            reason: format!("blocks {} and {}", ra.block, rb.block),
        };
    }
    if ra.block.kind == BlockKind::NotInD {
        return Verdict::Unknown {
            reason: "outside the classified blocks".into(),
        };
    }
    if ra.block.kind.is_parameter_free() {
        return Verdict::Yes { witness: None };
    }
    Verdict::Unknown {
        reason: format!("raw tensors in block {} with continuous moduli", ra.block),
    }
}

/// Grid of `cos α + (u cos β + v sin β) sin α`, `α ∈ (0, π)`, `β ∈ [0, π]`.
fn p_grid(n: usize) -> Vec<Quaternion> {
    let mut out = Vec::new();
    for k in 1..=n {
        let alpha = PI * k as f64 / (n + 1) as f64;
        for l in 0..=n {
            let beta = PI * l as f64 / n as f64;
            let (s, c) = alpha.sin_cos();
            out.push(Quaternion([c, s * beta.cos(), s * beta.sin(), 0.0]));
        }
    }
    out
}

fn p0_grid(n: usize) -> Vec<Quaternion> {
    (1..=n)
        .map(|k| Quaternion::exp_u(PI * k as f64 / (n + 1) as f64))
        .collect()
}

/// Canonical representatives of a block, sampled on a grid of the given
/// resolution. Distinct items are pairwise non-isomorphic.
///
/// Parameter-free blocks yield one item per admissible double sign; `D1133`
/// yields every index tuple.
pub fn enumerate_block(kind: BlockKind, resolution: usize, tol: f64) -> Result<Vec<CanonicalForm>> {
    if resolution == 0 {
        return Err(Error::BadParameter("resolution must be at least 1".into()));
    }
    let n = resolution;
    let pm = [Quaternion::ONE, -Quaternion::ONE];
    let mut out = Vec::new();
    match kind {
        BlockKind::D17 | BlockKind::Quat4 => {
            for s in DoubleSign::all() {
                out.push(parameter_free(kind, s).without_witness());
            }
        }
        BlockKind::D8 => out.push(parameter_free(kind, DoubleSign::new(1, 1)).without_witness()),
        BlockKind::D35 => {
            for s in DoubleSign::all()
                .into_iter()
                .filter(|s| (s.i, s.j) != (1, 1))
            {
                out.push(parameter_free(kind, s).without_witness());
            }
        }
        BlockKind::D134s | BlockKind::D134a => {
            let mut pairs: Vec<(Quaternion, Quaternion)> = Vec::new();
            for a in pm {
                for b in pm.iter().copied().chain(p0_grid(n)) {
                    pairs.push((a, b));
                }
            }
            for a in p0_grid(n) {
                for b in pm.iter().copied().chain(p_grid(n)) {
                    pairs.push((a, b));
                }
            }
            for s in DoubleSign::all() {
                for (a, b) in &pairs {
                    let p = PairTT::new(*a, *b);
                    if normal_form::in_m(&p, tol) && j_kind(s.i, s.j, a, b, tol) == kind {
                        let params = CanonicalParams::MPoint { a: *a, b: *b };
                        out.push(CanonicalForm::bare(BlockLabel::new(kind, s), params));
                    }
                }
            }
        }
        BlockKind::D116 | BlockKind::D1124 | BlockKind::D11114 => {
            let all: Vec<Quaternion> = pm.iter().copied().chain(p_grid(n)).collect();
            let firsts: Vec<Quaternion> =
                std::iter::once(Quaternion::ONE).chain(p0_grid(n)).collect();
            for s in DoubleSign::all() {
                for a1 in &firsts {
                    for b1 in &all {
                        for a2 in &all {
                            for b2 in &all {
                                let x = TwoBrackets::new(*a1, *b1, *a2, *b2);
                                if normal_form::in_transversal(&x, Transversal::NPrime, tol)
                                    && k_kind(s.i, s.j, &x, tol) == kind
                                {
                                    let params = CanonicalParams::NPoint {
                                        first: x.first,
                                        second: x.second,
                                    };
                                    out.push(CanonicalForm::bare(BlockLabel::new(kind, s), params));
                                }
                            }
                        }
                    }
                }
            }
        }
        BlockKind::D1133 { .. } => {
            for (i1, j1, i2, j2) in d1133::index_tuples() {
                for k in 0..=n {
                    for l in 0..2 * n {
                        let p = GParams::new(
                            i1,
                            j1,
                            i2,
                            j2,
                            FRAC_PI_2 * k as f64 / n as f64,
                            FRAC_PI_2 * l as f64 / n as f64,
                        );
                        if d1133::in_region(p.alpha, p.beta, tol) && d1133::in_d1133(&p, tol) {
                            out.push(canonical_g(&p, tol)?.without_witness());
                        }
                    }
                }
            }
        }
        BlockKind::NotInD => {}
    }
    Ok(out)
}

impl CanonicalForm {
    fn without_witness(mut self) -> CanonicalForm {
        self.to_reference = None;
        self
    }
}
