//! Named numerical checks of the identities and classification results the
//! crate relies on. Each check seeds its own generator from the suite seed
//! and its name, so the report is independent of evaluation order.

use crate::algebra::{self, Algebra, DoubleSign, Family};
use crate::classify::{self, BlockKind};
use crate::d1133::{self, GParams};
use crate::derivations;
use crate::maps::{self, OrthoMap8};
use crate::normal_form::{self, PairTT, Transversal, TwoBrackets};
use crate::numerics::TolerancePolicy;
use crate::octonion::{Octonion, Quaternion};
use crate::random::{self, Rng};
use crate::sample::{self, Sampler};
use crate::triality;
use serde::{Deserialize, Serialize};
use std::f64::consts::PI;

/// Outcome of one named check.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct Check {
    pub name: String,
    pub passed: bool,
    pub detail: String,
}

type Outcome = (bool, String);

/// FNV-1a, so per-check seeds do not depend on the platform hasher.
fn name_hash(name: &str) -> u64 {
    name.bytes().fold(0xcbf29ce484222325u64, |h, b| {
        (h ^ b as u64).wrapping_mul(0x100000001b3)
    })
}

fn checks() -> Vec<(&'static str, fn(&mut Rng, &TolerancePolicy) -> Outcome)> {
    vec![
        ("Classify:counts", classify_counts),
        ("Classify:detection", classify_detection),
        ("Classify:orbit", classify_orbit),
        ("D1133:epsilon", d1133_epsilon),
        ("D1133:exclusion", d1133_exclusion),
        ("D1133:g_to_f", d1133_g_to_f),
        ("Decomp:partitions", decomp_partitions),
        ("Der:dimensions", der_dimensions),
        ("DoubleSign:families", double_signs),
        ("E:T", e_t),
        ("E:Triality", e_triality),
        ("E:Trick", e_trick),
        ("E:tau", e_tau),
        ("L:Tau", l_tau),
        ("L:xieta", l_xieta),
        ("N:invariance", n_invariance),
        ("Norm:multiplicative", norm_multiplicative),
        ("T2:invariance", t2_invariance),
        ("T2:irredundancy", t2_irredundancy),
        ("Triality:G2", triality_g2),
        ("Triality:LRrho", triality_lr_rho),
    ]
}

/// Names of all checks, sorted.
pub fn check_names() -> Vec<&'static str> {
    checks().into_iter().map(|(n, _)| n).collect()
}

/// Runs one check by name.
pub fn run_check(name: &str, seed: u64, tol: &TolerancePolicy) -> Option<Check> {
    let (n, f) = checks().into_iter().find(|(n, _)| *n == name)?;
    let mut rng = random::seeded(seed ^ name_hash(n));
    let (passed, detail) = f(&mut rng, tol);
    Some(Check {
        name: n.to_string(),
        passed,
        detail,
    })
}

/// Runs every check; the result is sorted by name.
pub fn verify_suite(seed: u64, tol: &TolerancePolicy) -> Vec<Check> {
    check_names()
        .into_iter()
        .filter_map(|n| run_check(n, seed, tol))
        .collect()
}

fn q8(q: &Quaternion) -> Octonion {
    q.to_octonion()
}

fn e_trick(_: &mut Rng, _: &TolerancePolicy) -> Outcome {
    let z = Octonion::Z;
    let mut worst = 0.0f64;
    for a in 0..4 {
        for b in 0..4 {
            let (x, y) = (Octonion::basis(a), Octonion::basis(b));
            worst = worst.max(((z * x) * y).max_abs_diff(&(z * (y * x))));
        }
    }
    (
        worst == 0.0,
        format!("max deviation {worst:.3e} over 16 basis pairs"),
    )
}

fn norm_multiplicative(rng: &mut Rng, _: &TolerancePolicy) -> Outcome {
    let mut worst = 0.0f64;
    for _ in 0..10_000 {
        let x = Octonion(std::array::from_fn(|_| random::angle(rng, -1.0, 1.0)));
        let y = Octonion(std::array::from_fn(|_| random::angle(rng, -1.0, 1.0)));
        worst = worst.max(((x * y).norm() - x.norm() * y.norm()).abs());
    }
    (
        worst < 1e-12,
        format!("max | |xy| - |x||y| | = {worst:.3e} over 10^4 pairs"),
    )
}

fn e_triality(rng: &mut Rng, tol: &TolerancePolicy) -> Outcome {
    let mut worst = 0.0f64;
    for _ in 0..50 {
        let phi = random::so8_element(rng);
        let Ok((p1, p2)) = triality::triality_pair(&phi, tol) else {
            return (false, "triality pair not found".into());
        };
        let r = &maps::r_map(&p2.apply(&Octonion::ONE).conj()).expect("unit") * &phi;
        let l = &maps::l_map(&p1.apply(&Octonion::ONE).conj()).expect("unit") * &phi;
        worst = worst
            .max(triality::triality_residual(&phi, &p1, &p2))
            .max(r.max_abs_diff(&p1))
            .max(l.max_abs_diff(&p2));
    }
    (
        worst < 1e-8,
        format!("max residual {worst:.3e} over 50 random SO(8) elements"),
    )
}

fn unlabelled(phi: &OrthoMap8) -> OrthoMap8 {
    OrthoMap8 {
        matrix: phi.matrix,
        label: None,
    }
}

fn up_to_sign(x: &OrthoMap8, y: &OrthoMap8) -> f64 {
    x.max_abs_diff(y).min(x.scale(-1.0).max_abs_diff(y))
}

fn triality_g2(rng: &mut Rng, tol: &TolerancePolicy) -> Outcome {
    let mut worst = 0.0f64;
    for _ in 0..100 {
        let phi = unlabelled(&random::g2_element(rng));
        let Ok((p1, p2)) = triality::triality_pair(&phi, tol) else {
            return (false, "triality pair not found".into());
        };
        worst = worst.max(up_to_sign(&p1, &phi)).max(up_to_sign(&p2, &phi));
        worst = worst.max(triality::triality_residual(&phi, &p1, &p2));
    }
    (
        worst < 1e-8,
        format!("max deviation from ±(φ, φ) {worst:.3e} over 100 G2 elements"),
    )
}

fn triality_lr_rho(rng: &mut Rng, tol: &TolerancePolicy) -> Outcome {
    let mut worst = 0.0f64;
    for _ in 0..50 {
        let t = q8(&random::unit_complex(rng));
        let s = q8(&random::unit_complex(rng));
        let g = random::angle(rng, 0.0, 2.0 * PI);
        let c = q8(&Quaternion::exp_u(g));
        let rho = maps::g2_from_triples(
            &crate::octonion::CayleyTriple::standard(),
            &crate::octonion::CayleyTriple {
                a: Octonion::U,
                b: c * Octonion::V,
                c: c * Octonion::Z,
            },
        )
        .expect("Cayley triple");
        let phi = &(&maps::l_map(&t).expect("unit") * &maps::r_map(&s).expect("unit")) * &rho;
        let Ok((p1, p2)) = triality::triality_pair(&phi, tol) else {
            return (false, "triality pair not found".into());
        };
        let e1 = &(&maps::b_map(&t).expect("unit") * &maps::r_map(&s.conj()).expect("unit")) * &rho;
        let e2 = &(&maps::l_map(&t.conj()).expect("unit") * &maps::b_map(&s).expect("unit")) * &rho;
        let d = (p1.max_abs_diff(&e1).max(p2.max_abs_diff(&e2))).min(
            p1.scale(-1.0)
                .max_abs_diff(&e1)
                .max(p2.scale(-1.0).max_abs_diff(&e2)),
        );
        worst = worst.max(d);
    }
    (
        worst < 1e-8,
        format!("max deviation from (B_t R_s̄ ρ, L_t̄ B_s ρ) {worst:.3e} over 50 draws"),
    )
}

fn delta(p: &Quaternion, q: &Quaternion) -> OrthoMap8 {
    maps::delta_map(&q8(p), &q8(q)).expect("unit quaternions")
}

fn l_tau(rng: &mut Rng, _: &TolerancePolicy) -> Outcome {
    let mut worst = 0.0f64;
    for _ in 0..100 {
        let (p, q, p2, q2) = (
            random::unit_quaternion(rng),
            random::unit_quaternion(rng),
            random::unit_quaternion(rng),
            random::unit_quaternion(rng),
        );
        let lhs = &delta(&p, &q) * &delta(&p2, &q2);
        let rhs = delta(&(p * q * p2 * q.conj()), &(q * q2));
        worst = worst
            .max(lhs.max_abs_diff(&rhs))
            .max(maps::automorphism_residual(&lhs));
    }
    (
        worst < 1e-10,
        format!("max homomorphism defect {worst:.3e} over 100 pairs"),
    )
}

fn e_tau(rng: &mut Rng, _: &TolerancePolicy) -> Outcome {
    let mut worst = 0.0f64;
    for _ in 0..100 {
        let (p, q, w) = (
            random::unit_quaternion(rng),
            random::unit_quaternion(rng),
            random::unit_quaternion(rng),
        );
        let d = delta(&p, &q);
        let lhs = d.conjugate(&maps::tau_map(&q8(&w)).expect("unit"));
        let pq = p * q;
        let rhs = maps::tau_map(&q8(&(pq * w * pq.conj()))).expect("unit");
        worst = worst.max(lhs.max_abs_diff(&rhs));
    }
    (
        worst < 1e-10,
        format!("max deviation {worst:.3e} over 100 draws"),
    )
}

fn e_t(rng: &mut Rng, _: &TolerancePolicy) -> Outcome {
    let mut worst = 0.0f64;
    for n in 0..100 {
        let (p, q, a, b) = (
            random::unit_quaternion(rng),
            random::unit_quaternion(rng),
            random::unit_quaternion(rng),
            random::unit_quaternion(rng),
        );
        let k = (n % 2) as u8;
        let lhs = delta(&p, &q).conjugate(&maps::t_map(&q8(&a), &q8(&b), k).expect("unit"));
        let rhs = maps::t_map(&q8(&q.kappa(&a)), &q8(&q.kappa(&b)), k).expect("unit");
        worst = worst.max(lhs.max_abs_diff(&rhs));
    }
    (
        worst < 1e-10,
        format!("max deviation {worst:.3e} over 100 draws"),
    )
}

fn der_dim(a: &Algebra, tol: &TolerancePolicy) -> usize {
    derivations::derivation_basis(a, tol)
        .map(|b| b.len())
        .unwrap_or(usize::MAX)
}

fn der_dimensions(_: &mut Rng, tol: &TolerancePolicy) -> Outcome {
    let mut cases: Vec<(String, Algebra, usize)> = vec![
        ("O".into(), Algebra::octonions(), 14),
        ("P11".into(), algebra::okubo_p11(), 8),
        // Non-commuting parameters leave su2 alone; a common axis adds a circle.
        (
            "J00(u,v)".into(),
            algebra::j_family(0, 0, Quaternion::U, Quaternion::V).expect("valid"),
            3,
        ),
        (
            "J00(u,u)".into(),
            algebra::j_family(0, 0, Quaternion::U, Quaternion::U).expect("valid"),
            4,
        ),
        (
            "J00(-1,-1)".into(),
            algebra::j_family(0, 0, -Quaternion::ONE, -Quaternion::ONE).expect("valid"),
            6,
        ),
    ];
    for s in DoubleSign::all() {
        cases.push((
            format!("H{}{}", s.i, s.j),
            algebra::quat4(s.i, s.j).expect("valid"),
            3,
        ));
    }
    let bad: Vec<String> = cases
        .iter()
        .filter_map(|(n, a, d)| {
            let got = der_dim(a, tol);
            (got != *d).then(|| format!("{n}: {got} != {d}"))
        })
        .collect();
    (
        bad.is_empty(),
        if bad.is_empty() {
            format!("{} algebras", cases.len())
        } else {
            bad.join("; ")
        },
    )
}

fn partition_of(a: &Algebra, rng: &mut Rng, tol: &TolerancePolicy) -> Vec<usize> {
    derivations::decompose(a, rng, tol)
        .map(|d| d.partition)
        .unwrap_or_default()
}

/// Families with the partition they must have.
fn partition_cases(rng: &mut Rng) -> Vec<(Family, Vec<usize>)> {
    let mut out = Vec::new();
    for s in DoubleSign::all() {
        out.push((Family::StandardIsotope { i: s.i, j: s.j }, vec![1, 7]));
        out.push((Family::Quat4 { i: s.i, j: s.j }, vec![1, 3]));
        if (s.i, s.j) != (1, 1) {
            out.push((Family::P35 { i: s.i, j: s.j }, vec![3, 5]));
        }
    }
    out.push((Family::Okubo, vec![8]));
    for _ in 0..20 {
        out.push((sample::j_generic(rng), vec![1, 3, 4]));
        out.push((sample::g(rng), vec![1, 1, 3, 3]));
    }
    for _ in 0..5 {
        out.push((sample::k_d116(rng), vec![1, 1, 6]));
        out.push((sample::k_d1124(rng), vec![1, 1, 2, 4]));
        out.push((sample::k_generic(rng), vec![1, 1, 1, 1, 4]));
    }
    out
}

fn decomp_partitions(rng: &mut Rng, tol: &TolerancePolicy) -> Outcome {
    let cases = partition_cases(rng);
    let mut bad = Vec::new();
    for (fam, want) in &cases {
        let got = fam
            .build()
            .map(|a| partition_of(&a, rng, tol))
            .unwrap_or_default();
        if &got != want {
            bad.push(format!("{fam:?}: {got:?}"));
        }
    }
    (
        bad.is_empty(),
        format!("{} mismatches over {} algebras", bad.len(), cases.len()),
    )
}

fn double_signs(rng: &mut Rng, tol: &TolerancePolicy) -> Outcome {
    let mut cases: Vec<(Family, DoubleSign)> = Vec::new();
    for s in DoubleSign::all() {
        cases.push((Family::StandardIsotope { i: s.i, j: s.j }, s));
        if (s.i, s.j) != (1, 1) {
            cases.push((Family::P35 { i: s.i, j: s.j }, s));
        }
    }
    cases.push((Family::Okubo, DoubleSign::new(1, 1)));
    for _ in 0..50 {
        let f = sample::g(rng);
        let Family::GFamily { i1, j1, i2, j2, .. } = f else {
            unreachable!()
        };
        cases.push((f, DoubleSign::new(i1 + i2, j1 + j2)));
    }
    let bad = cases
        .iter()
        .filter(|(f, s)| f.build().and_then(|a| a.double_sign(rng, tol)).ok() != Some(*s))
        .count();
    (
        bad == 0,
        format!("{bad} mismatches over {} algebras", cases.len()),
    )
}

fn t2_invariance(rng: &mut Rng, tol: &TolerancePolicy) -> Outcome {
    let z = tol.zero_tol;
    let mut worst = 0.0f64;
    let mut failures = 0;
    for _ in 0..1000 {
        let (a, b) = (random::unit_quaternion(rng), random::unit_quaternion(rng));
        let q = random::unit_quaternion(rng);
        let (Ok(x), Ok(y)) = (
            normal_form::nf_txt(&a, &b, z),
            normal_form::nf_txt(&q.kappa(&a), &q.kappa(&b), z),
        ) else {
            failures += 1;
            continue;
        };
        let again = normal_form::nf_txt(&x.point.a, &x.point.b, z).map(|n| n.point);
        worst = worst.max(x.point.max_abs_diff(&y.point));
        if !normal_form::in_m(&x.point, z)
            || again.map_or(true, |p| p.max_abs_diff(&x.point) > 1e-8)
        {
            failures += 1;
        }
    }
    (
        worst < 1e-8 && failures == 0,
        format!("max deviation {worst:.3e}, {failures} failures over 1000 trials"),
    )
}

/// Random brackets drawn from the special strata as well as generic ones.
fn special_quaternion(rng: &mut Rng, axis: &Quaternion) -> Quaternion {
    use rand::Rng as _;
    match rng.gen_range(0..5) {
        0 => Quaternion::scalar(if random::bit(rng) == 1 { -1.0 } else { 1.0 }),
        1 => *axis,
        2 => {
            let t = random::angle(rng, 0.0, 2.0 * PI);
            Quaternion::scalar(t.cos()) + axis.scale(t.sin())
        }
        _ => random::unit_quaternion(rng),
    }
}

fn n_invariance(rng: &mut Rng, tol: &TolerancePolicy) -> Outcome {
    let z = tol.zero_tol;
    let mut worst = 0.0f64;
    let mut failures = 0;
    for _ in 0..1000 {
        let w = random::imaginary_unit_quaternion(rng);
        let x = TwoBrackets::new(
            special_quaternion(rng, &w),
            special_quaternion(rng, &w),
            special_quaternion(rng, &w),
            special_quaternion(rng, &w),
        );
        let q = random::unit_quaternion(rng);
        let moved = x.act(&q, [random::bit(rng) == 1, random::bit(rng) == 1]);
        let (Ok(n1), Ok(n2)) = (normal_form::nf_pair(&x, z), normal_form::nf_pair(&moved, z))
        else {
            failures += 1;
            continue;
        };
        worst = worst.max(n1.point.bracket_distance(&n2.point));
        let witness = x.act(&n1.q, n1.negate);
        let idem = normal_form::nf_pair(&n1.point, z).map(|n| n.point.bracket_distance(&n1.point));
        if !normal_form::in_transversal(&n1.point, Transversal::N, z)
            || witness.bracket_distance(&n1.point) > 1e-8
            || idem.map_or(true, |d| d > 1e-8)
        {
            failures += 1;
        }
    }
    (
        worst < 1e-8 && failures == 0,
        format!("max deviation {worst:.3e}, {failures} failures over 1000 trials"),
    )
}

/// Rotations `e^{uψ/2} e^{vθ/2} e^{uφ/2}` on a `25 × 16 × 25` grid.
pub fn rotation_grid() -> Vec<Quaternion> {
    let half = |axis: Quaternion, t: f64| {
        Quaternion::scalar((t / 2.0).cos()) + axis.scale((t / 2.0).sin())
    };
    let mut out = Vec::with_capacity(10_000);
    for a in 0..25 {
        for b in 0..16 {
            for c in 0..25 {
                let psi = 2.0 * PI * a as f64 / 25.0;
                let theta = PI * (b as f64 + 0.5) / 16.0;
                let phi = 2.0 * PI * c as f64 / 25.0;
                out.push(
                    half(Quaternion::U, psi)
                        * half(Quaternion::V, theta)
                        * half(Quaternion::U, phi),
                );
            }
        }
    }
    out
}

fn t2_irredundancy(rng: &mut Rng, tol: &TolerancePolicy) -> Outcome {
    let z = tol.zero_tol;
    let grid = rotation_grid();
    let mut connected = 0;
    let mut pairs = 0;
    while pairs < 200 {
        let draw = |rng: &mut Rng| {
            normal_form::nf_txt(
                &random::unit_quaternion(rng),
                &random::unit_quaternion(rng),
                z,
            )
            .map(|n| n.point)
        };
        let (Ok(x), Ok(y)) = (draw(rng), draw(rng)) else {
            continue;
        };
        if x.max_abs_diff(&y) <= 1e-6 {
            continue;
        }
        pairs += 1;
        if grid
            .iter()
            .any(|q| PairTT::new(q.kappa(&x.a), q.kappa(&x.b)).max_abs_diff(&y) <= 1e-3)
        {
            connected += 1;
        }
    }
    (
        connected == 0,
        format!(
            "{connected} of {pairs} canonical pairs connected on a {}-rotation grid",
            grid.len()
        ),
    )
}

fn d1133_g_to_f(rng: &mut Rng, tol: &TolerancePolicy) -> Outcome {
    let mut bad = 0;
    for _ in 0..50 {
        let Family::GFamily {
            i1,
            j1,
            i2,
            j2,
            alpha,
            beta,
        } = sample::g(rng)
        else {
            unreachable!()
        };
        let p = GParams::new(i1, j1, i2, j2, alpha, beta);
        let gamma = random::angle(rng, 0.0, 2.0 * PI);
        let ok = (|| {
            let f = d1133::g_to_f(&p, gamma)?;
            let (g1, g2) = d1133::g_pair(&p, gamma)?;
            let (f1, f2) = d1133::f_pair(&p, f.xi, f.eta)?;
            triality::iso_isotopes((&g1, &g2), (&f1, &f2), &f.witness, tol)
        })();
        if ok != Ok(true) {
            bad += 1;
        }
    }
    (bad == 0, format!("{bad} failures over 50 draws"))
}

fn d1133_epsilon(rng: &mut Rng, tol: &TolerancePolicy) -> Outcome {
    let mut bad = 0;
    for _ in 0..50 {
        let fam = sample::g(rng);
        let ok = (|| {
            let a = fam.build()?;
            let b = a.transport(&maps::eps_hat(1))?;
            Ok::<bool, crate::error::Error>(
                classify::canonical(&a, tol)?.matches(&classify::canonical(&b, tol)?, 1e-8),
            )
        })();
        if ok != Ok(true) {
            bad += 1;
        }
    }
    (bad == 0, format!("{bad} failures over 50 draws"))
}

fn d1133_exclusion(_: &mut Rng, tol: &TolerancePolicy) -> Outcome {
    let mut bad = Vec::new();
    for (i1, j1, i2, j2) in d1133::index_tuples() {
        let mut excluded = 0;
        for k in 0..100 {
            for l in 0..100 {
                let p = GParams::new(i1, j1, i2, j2, PI * k as f64 / 100.0, PI * l as f64 / 100.0);
                if !d1133::in_d1133(&p, tol.zero_tol) {
                    excluded += 1;
                }
            }
        }
        if excluded != 1 {
            bad.push(format!("({i1},{j1},{i2},{j2}): {excluded}"));
        }
    }
    (
        bad.is_empty(),
        if bad.is_empty() {
            "one excluded point per index tuple".into()
        } else {
            bad.join("; ")
        },
    )
}

/// Membership of `x` in `step · ℤ`.
fn on_lattice(x: f64, step: f64) -> bool {
    let r = x / step;
    (r - r.round()).abs() < 1e-7
}

/// Whether `(ξ', η')` is related to `(ξ, η)` by the lattice conditions.
pub fn xieta_related(p: &GParams, (xi, eta): (f64, f64), (xi2, eta2): (f64, f64)) -> bool {
    let third = PI / 3.0;
    [1.0, -1.0].iter().any(|s| {
        let (d1, d2) = (s * xi2 - xi, s * eta2 - eta);
        let m = (d1 / third).round();
        match ((p.i1, p.j1) == (1, 1), (p.i2, p.j2)) {
            (false, (0, 1)) => on_lattice(d1, third) && on_lattice(d2, PI),
            (false, (1, 0)) => on_lattice(d1, PI) && on_lattice(d2, third),
            (false, _) => on_lattice(d1, third) && on_lattice(d2 - m * third, PI),
            (true, _) => on_lattice(d1, third) && on_lattice(d2, third),
        }
    })
}

fn l_xieta(rng: &mut Rng, tol: &TolerancePolicy) -> Outcome {
    use rand::Rng as _;
    let mut bad = 0;
    let mut related = 0;
    for _ in 0..100 {
        let Family::GFamily {
            i1,
            j1,
            i2,
            j2,
            alpha,
            beta,
        } = sample::g(rng)
        else {
            unreachable!()
        };
        let p = GParams::new(i1, j1, i2, j2, alpha, beta);
        let q = match rng.gen_range(0..3) {
            0 => GParams {
                alpha: PI - alpha,
                beta: PI - beta,
                ..p
            },
            1 => GParams {
                alpha: (alpha + PI) % (2.0 * PI),
                ..p
            },
            _ => GParams {
                alpha: random::angle(rng, 0.0, PI),
                beta: random::angle(rng, 0.0, PI),
                ..p
            },
        };
        let fp = d1133::g_to_f(&p, 0.0).map(|f| (f.xi, f.eta));
        let fq = d1133::g_to_f(&q, 0.0).map(|f| (f.xi, f.eta));
        let (Ok(fp), Ok(fq)) = (fp, fq) else {
            bad += 1;
            continue;
        };
        let lattice = xieta_related(&p, fp, fq);
        related += lattice as usize;
        if d1133::iso_1133(&p, &q, tol.zero_tol) != Ok(lattice) {
            bad += 1;
        }
    }
    (
        bad == 0,
        format!("{bad} disagreements over 100 pairs ({related} isomorphic)"),
    )
}

fn classify_counts(_: &mut Rng, tol: &TolerancePolicy) -> Outcome {
    let count = |k: BlockKind| {
        classify::enumerate_block(k, 1, tol.zero_tol)
            .map(|v| v.len())
            .unwrap_or(0)
    };
    let got = (
        count(BlockKind::D17),
        count(BlockKind::D8),
        count(BlockKind::D35),
    );
    let d35_11 = algebra::p35(1, 1).is_err();
    (
        got == (4, 1, 3) && d35_11,
        format!(
            "D17 {}, D8 {}, D35 {}; D35 at (1,1) empty: {d35_11}",
            got.0, got.1, got.2
        ),
    )
}

fn classify_detection(rng: &mut Rng, tol: &TolerancePolicy) -> Outcome {
    let mut bad = Vec::new();
    for n in 0..200 {
        let fam = Sampler::ALL[n % Sampler::ALL.len()].draw(rng);
        let ok = (|| {
            let predicted = fam.predicted_block(tol.zero_tol)?;
            let report = classify::analyze(&fam.build()?, rng, tol)?;
            Ok::<bool, crate::error::Error>(predicted == Some(report.block))
        })();
        if ok != Ok(true) {
            bad.push(format!("{fam:?}"));
        }
    }
    (
        bad.is_empty(),
        format!("{} disagreements over 200 draws", bad.len()),
    )
}

fn classify_orbit(rng: &mut Rng, tol: &TolerancePolicy) -> Outcome {
    let mut bad = 0;
    let mut n = 0;
    while n < 200 {
        let fam = sample::any_family(rng);
        if matches!(
            fam,
            Family::Quat4 { .. }
                | Family::Okubo
                | Family::P35 { .. }
                | Family::StandardIsotope { .. }
        ) {
            continue;
        }
        n += 1;
        let phi = match fam {
            Family::GFamily { .. } | Family::LambdaFamily { .. } => maps::eps_hat(1),
            _ => maps::kappa_hat(&q8(&random::unit_quaternion(rng))).expect("unit"),
        };
        let ok = (|| {
            let a = fam.build()?;
            let b = a.transport(&phi)?;
            let (ca, cb) = (classify::canonical(&a, tol)?, classify::canonical(&b, tol)?);
            let verdict = classify::isomorphic(&a, &b, rng, tol);
            Ok::<bool, crate::error::Error>(ca.matches(&cb, 1e-8) && verdict.is_yes())
        })();
        if ok != Ok(true) {
            bad += 1;
        }
    }
    (bad == 0, format!("{bad} failures over 200 transports"))
}
