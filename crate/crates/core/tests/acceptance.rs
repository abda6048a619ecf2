//! Acceptance criteria. Each prints one PASS/FAIL line; the process exits
//! nonzero if any criterion fails.
//!
//! Oracles here are written against the definitions, not against the library
//! helpers that compute the same quantity.

use compalg::algebra::{self, Algebra, DoubleSign, Family};
use compalg::classify::{self, BlockKind, BlockLabel};
use compalg::d1133::{self, GParams};
use compalg::derivations;
use compalg::maps::{self, OrthoMap8};
use compalg::normal_form::{self, PairTT, Transversal, TwoBrackets};
use compalg::numerics::{Mat, TolerancePolicy, DEFAULT_SEED};
use compalg::octonion::{CayleyTriple, Octonion, Quaternion};
use compalg::random::{self, Rng};
use compalg::sample::{self, Sampler};
use compalg::triality;
use rand::Rng as _;
use std::f64::consts::{FRAC_PI_2, PI};
use std::process::ExitCode;

type Outcome = (bool, String);

fn rng_for(criterion: u64) -> Rng {
    random::seeded(DEFAULT_SEED.wrapping_add(criterion.wrapping_mul(0x9E37_79B9_7F4A_7C15)))
}

fn tol() -> TolerancePolicy {
    TolerancePolicy::default()
}

fn main() -> ExitCode {
    let criteria: [(&str, fn() -> Outcome); 10] = [
        ("1 structure sanity", structure_sanity),
        ("2 derivation dimensions", der_dimensions),
        ("3 partitions", partitions),
        ("4 double signs", double_signs),
        ("5 normal-form invariance", nf_invariance),
        ("6 irredundancy", irredundancy),
        ("7 triality", triality_pairs),
        ("8 D1133 pipeline", d1133_pipeline),
        ("9 classification counts", classification_counts),
        ("10 end-to-end detection", detection),
    ];
    let mut failed = 0;
    for (name, f) in criteria {
        let (ok, detail) = f();
        println!(
            "{} criterion {name}: {detail}",
            if ok { "PASS" } else { "FAIL" }
        );
        failed += usize::from(!ok);
    }
    if failed == 0 {
        ExitCode::SUCCESS
    } else {
        println!("{failed} of 10 criteria failed");
        ExitCode::FAILURE
    }
}

// Reference arithmetic, basis (1, u, v, uv) and (a + b z).

fn qmul(a: [f64; 4], b: [f64; 4]) -> [f64; 4] {
    [
        a[0] * b[0] - a[1] * b[1] - a[2] * b[2] - a[3] * b[3],
        a[0] * b[1] + a[1] * b[0] + a[2] * b[3] - a[3] * b[2],
        a[0] * b[2] - a[1] * b[3] + a[2] * b[0] + a[3] * b[1],
        a[0] * b[3] + a[1] * b[2] - a[2] * b[1] + a[3] * b[0],
    ]
}

fn qconj(a: [f64; 4]) -> [f64; 4] {
    [a[0], -a[1], -a[2], -a[3]]
}

fn omul(x: [f64; 8], y: [f64; 8]) -> [f64; 8] {
    let split = |v: [f64; 8]| ([v[0], v[1], v[2], v[3]], [v[4], v[5], v[6], v[7]]);
    let ((a, b), (c, d)) = (split(x), split(y));
    let (ac, db) = (qmul(a, c), qmul(qconj(d), b));
    let (da, bc) = (qmul(d, a), qmul(b, qconj(c)));
    std::array::from_fn(|k| {
        if k < 4 {
            ac[k] - db[k]
        } else {
            da[k - 4] + bc[k - 4]
        }
    })
}

fn max_diff(x: &[f64], y: &[f64]) -> f64 {
    x.iter()
        .zip(y)
        .fold(0.0, |m, (a, b)| f64::max(m, (a - b).abs()))
}

fn random_octonion(rng: &mut Rng) -> Octonion {
    Octonion(std::array::from_fn(|_| rng.gen_range(-1.0..1.0)))
}

fn q8(q: &Quaternion) -> Octonion {
    q.to_octonion()
}

fn structure_sanity() -> Outcome {
    let mut rng = rng_for(1);
    let mut table = 0.0f64;
    let mut trick = 0.0f64;
    for a in 0..8 {
        for b in 0..8 {
            let (x, y) = (Octonion::basis(a), Octonion::basis(b));
            table = table.max(max_diff(&(x * y).0, &omul(x.0, y.0)));
            if a < 4 && b < 4 {
                let z = Octonion::Z;
                trick = trick.max(((z * x) * y).max_abs_diff(&(z * (y * x))));
            }
        }
    }
    let mut norm = 0.0f64;
    for _ in 0..10_000 {
        let (x, y) = (random_octonion(&mut rng), random_octonion(&mut rng));
        norm = norm.max(((x * y).norm() - x.norm() * y.norm()).abs());
    }
    (
        table == 0.0 && trick == 0.0 && norm < 1e-12,
        format!(
            "basis table deviation {table:e}, trick deviation {trick:e}, norm error {norm:.2e}"
        ),
    )
}

/// `dim Der(A)` from the Leibniz system, independently of the library solver.
fn leibniz_nullity(a: &Algebra) -> usize {
    let n = a.dim();
    let c = |i: usize, j: usize, k: usize| a.product(i, j)[k];
    let mut m = Mat::zeros(n * n * n, n * n);
    for i in 0..n {
        for j in 0..n {
            for k in 0..n {
                let row = (i * n + j) * n + k;
                for l in 0..n {
                    m[(row, k * n + l)] += c(i, j, l);
                    m[(row, l * n + i)] -= c(l, j, k);
                    m[(row, l * n + j)] -= c(i, l, k);
                }
            }
        }
    }
    let sv = m.singular_values();
    let top = sv.iter().cloned().fold(0.0, f64::max);
    n * n - sv.iter().filter(|&&s| s > 1e-9 * top).count()
}

fn der_dimensions() -> Outcome {
    let mut cases: Vec<(String, Algebra, usize)> = vec![
        ("O".into(), Algebra::octonions(), 14),
        ("P11".into(), algebra::okubo_p11(), 8),
        (
            "J00(u,v)".into(),
            algebra::j_family(0, 0, Quaternion::U, Quaternion::V).unwrap(),
            4,
        ),
        (
            "J00(-1,-1)".into(),
            algebra::j_family(0, 0, -Quaternion::ONE, -Quaternion::ONE).unwrap(),
            6,
        ),
    ];
    for s in DoubleSign::all() {
        cases.push((
            format!("H{}{}", s.i, s.j),
            algebra::quat4(s.i, s.j).unwrap(),
            3,
        ));
    }
    let mut bad = Vec::new();
    let mut seen = Vec::new();
    for (name, a, want) in &cases {
        let oracle = leibniz_nullity(a);
        let lib = derivations::derivation_basis(a, &tol())
            .map(|b| b.len())
            .unwrap_or(usize::MAX);
        seen.push(format!("{name}={lib}"));
        if lib != oracle || lib != *want {
            bad.push(format!(
                "{name}: library {lib}, Leibniz rank {oracle}, expected {want}"
            ));
        }
    }
    if bad.is_empty() {
        (true, seen.join(" "))
    } else {
        (false, bad.join("; "))
    }
}

fn on_axis(w: &Quaternion, t: f64) -> Quaternion {
    Quaternion::scalar(t.cos()) + w.scale(t.sin())
}

fn sign(k: u8) -> f64 {
    if k % 2 == 1 {
        -1.0
    } else {
        1.0
    }
}

fn k_point(rng: &mut Rng, which: usize) -> Family {
    let (i, j) = (random::bit(rng), random::bit(rng));
    let w = random::imaginary_unit_quaternion(rng);
    let angle = |rng: &mut Rng| rng.gen_range(0.3..2.8);
    let x: [Quaternion; 4] = match which {
        // a1 = (-1)^j b1, a2 = (-1)^i b2 on one axis: outside S_ij.
        0 => {
            let (a1, a2) = (on_axis(&w, angle(rng)), on_axis(&w, angle(rng)));
            [a1, a1.scale(sign(j)), a2, a2.scale(sign(i))]
        }
        1 => std::array::from_fn(|_| on_axis(&w, angle(rng))),
        _ => std::array::from_fn(|_| random::unit_quaternion(rng)),
    };
    Family::TFamily {
        i,
        j,
        a1: q8(&x[0]),
        b1: q8(&x[1]),
        a2: q8(&x[2]),
        b2: q8(&x[3]),
    }
}

fn partitions() -> Outcome {
    let mut rng = rng_for(3);
    let mut cases: Vec<(Family, Vec<usize>)> = Vec::new();
    for s in DoubleSign::all() {
        cases.push((Family::StandardIsotope { i: s.i, j: s.j }, vec![1, 7]));
        if (s.i, s.j) != (1, 1) {
            cases.push((Family::P35 { i: s.i, j: s.j }, vec![3, 5]));
        }
    }
    cases.push((Family::Okubo, vec![8]));
    for _ in 0..20 {
        let (i, j) = (random::bit(&mut rng), random::bit(&mut rng));
        let (a, b) = (
            random::unit_quaternion(&mut rng),
            random::unit_quaternion(&mut rng),
        );
        cases.push((
            Family::TauFamily {
                i,
                j,
                a: q8(&a),
                b: q8(&b),
            },
            vec![1, 3, 4],
        ));
        cases.push((sample::g(&mut rng), vec![1, 1, 3, 3]));
    }
    for _ in 0..5 {
        cases.push((k_point(&mut rng, 0), vec![1, 1, 6]));
        cases.push((k_point(&mut rng, 1), vec![1, 1, 2, 4]));
        cases.push((k_point(&mut rng, 2), vec![1, 1, 1, 1, 4]));
    }
    let mut bad = Vec::new();
    for (fam, want) in &cases {
        let got = fam
            .build()
            .and_then(|a| derivations::decompose(&a, &mut rng, &tol()))
            .map(|d| d.partition)
            .unwrap_or_default();
        if &got != want {
            bad.push(format!("{fam:?} gave {got:?}"));
        }
    }
    (
        bad.is_empty(),
        format!(
            "{} mismatches over {} algebras {}",
            bad.len(),
            cases.len(),
            bad.join("; ")
        ),
    )
}

/// `(sgn det L_x, sgn det R_x)` at a random `x`, from determinants.
fn det_signs(a: &Algebra, rng: &mut Rng) -> (f64, f64) {
    let x = random_octonion(rng);
    let x = &x.0[..a.dim()];
    (
        a.left_matrix(x).determinant().signum(),
        a.right_matrix(x).determinant().signum(),
    )
}

fn double_signs() -> Outcome {
    let mut rng = rng_for(4);
    let mut cases: Vec<(Family, DoubleSign)> = Vec::new();
    for s in DoubleSign::all() {
        cases.push((Family::StandardIsotope { i: s.i, j: s.j }, s));
        if (s.i, s.j) != (1, 1) {
            cases.push((Family::P35 { i: s.i, j: s.j }, s));
        }
    }
    cases.push((Family::Okubo, DoubleSign::new(1, 1)));
    for _ in 0..50 {
        let f = sample::g(&mut rng);
        let Family::GFamily { i1, j1, i2, j2, .. } = f else {
            unreachable!()
        };
        cases.push((f, DoubleSign::new(i1 + i2, j1 + j2)));
    }
    let mut bad = Vec::new();
    for (fam, want) in &cases {
        let a = fam.build().unwrap();
        let lib = a.double_sign(&mut rng, &tol()).ok();
        let dets = det_signs(&a, &mut rng);
        if lib != Some(*want) || dets != (sign(want.i), sign(want.j)) {
            bad.push(format!("{fam:?}: library {lib:?}, determinants {dets:?}"));
        }
    }
    (
        bad.is_empty(),
        format!(
            "{} mismatches over {} algebras {}",
            bad.len(),
            cases.len(),
            bad.join("; ")
        ),
    )
}

/// Generic and degenerate brackets: ±1, the axis itself, and points on it.
fn bracket_entry(rng: &mut Rng, w: &Quaternion) -> Quaternion {
    match rng.gen_range(0..5) {
        0 => Quaternion::scalar(sign(random::bit(rng))),
        1 => *w,
        2 => on_axis(w, rng.gen_range(0.0..2.0 * PI)),
        _ => random::unit_quaternion(rng),
    }
}

fn nf_invariance() -> Outcome {
    let mut rng = rng_for(5);
    let z = tol().zero_tol;
    let mut worst = 0.0f64;
    let mut failures = 0;
    for _ in 0..1000 {
        let (a, b, q) = (
            random::unit_quaternion(&mut rng),
            random::unit_quaternion(&mut rng),
            random::unit_quaternion(&mut rng),
        );
        match (
            normal_form::nf_txt(&a, &b, z),
            normal_form::nf_txt(&q.kappa(&a), &q.kappa(&b), z),
        ) {
            (Ok(x), Ok(y)) => {
                worst = worst.max(x.point.max_abs_diff(&y.point));
                let again = normal_form::nf_txt(&x.point.a, &x.point.b, z)
                    .map(|n| n.point.max_abs_diff(&x.point));
                if !normal_form::in_transversal_pair(&x.point, Transversal::M, z)
                    || again.map_or(true, |d| d > 1e-8)
                {
                    failures += 1;
                }
            }
            _ => failures += 1,
        }
    }
    for _ in 0..1000 {
        let w = random::imaginary_unit_quaternion(&mut rng);
        let x = TwoBrackets::new(
            bracket_entry(&mut rng, &w),
            bracket_entry(&mut rng, &w),
            bracket_entry(&mut rng, &w),
            bracket_entry(&mut rng, &w),
        );
        let q = random::unit_quaternion(&mut rng);
        let moved = x.act(&q, [random::bit(&mut rng) == 1, random::bit(&mut rng) == 1]);
        match (normal_form::nf_pair(&x, z), normal_form::nf_pair(&moved, z)) {
            (Ok(n1), Ok(n2)) => {
                worst = worst.max(n1.point.bracket_distance(&n2.point));
                let again =
                    normal_form::nf_pair(&n1.point, z).map(|n| n.point.bracket_distance(&n1.point));
                if !normal_form::in_transversal(&n1.point, Transversal::N, z)
                    || again.map_or(true, |d| d > 1e-8)
                {
                    failures += 1;
                }
            }
            _ => failures += 1,
        }
    }
    (
        worst < 1e-8 && failures == 0,
        format!("max deviation {worst:.2e}, {failures} failures over 2000 trials"),
    )
}

/// Axis-angle grid: 400 Fibonacci-sphere axes times 25 angles in `(0, π]`.
fn axis_angle_grid() -> Vec<Quaternion> {
    let golden = PI * (3.0 - 5f64.sqrt());
    let mut out = Vec::with_capacity(10_000);
    for k in 0..400 {
        let y = 1.0 - 2.0 * (k as f64 + 0.5) / 400.0;
        let r = (1.0 - y * y).sqrt();
        let t = golden * k as f64;
        let axis = Quaternion::new(0.0, r * t.cos(), y, r * t.sin());
        for m in 1..=25 {
            out.push(on_axis(&axis, PI * m as f64 / 25.0));
        }
    }
    out
}

fn irredundancy() -> Outcome {
    let mut rng = rng_for(6);
    let z = tol().zero_tol;
    let grid = axis_angle_grid();
    let (mut pairs, mut connected) = (0, 0);
    while pairs < 200 {
        let mut draw = || {
            let (a, b) = (
                random::unit_quaternion(&mut rng),
                random::unit_quaternion(&mut rng),
            );
            normal_form::nf_txt(&a, &b, z).map(|n| n.point)
        };
        let (Ok(x), Ok(y)) = (draw(), draw()) else {
            continue;
        };
        if x.max_abs_diff(&y) < 1e-6 || !normal_form::in_m(&x, z) || !normal_form::in_m(&y, z) {
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
            "{connected} of {pairs} pairs connected on a {}-rotation grid",
            grid.len()
        ),
    )
}

/// Largest `|φ(xy) - φ₁(x)φ₂(y)|` over random pairs, with the product computed locally.
fn triality_defect(
    phi: &dyn Fn(Octonion) -> Octonion,
    p1: &dyn Fn(Octonion) -> Octonion,
    p2: &dyn Fn(Octonion) -> Octonion,
    rng: &mut Rng,
) -> f64 {
    (0..20)
        .map(|_| {
            let (x, y) = (random_octonion(rng), random_octonion(rng));
            max_diff(&phi(Octonion(omul(x.0, y.0))).0, &omul(p1(x).0, p2(y).0))
        })
        .fold(0.0, f64::max)
}

fn up_to_sign(x: &OrthoMap8, y: &OrthoMap8) -> f64 {
    x.max_abs_diff(y).min(x.scale(-1.0).max_abs_diff(y))
}

fn triality_pairs() -> Outcome {
    let mut rng = rng_for(7);
    let t = tol();
    let mut g2 = 0.0f64;
    for _ in 0..100 {
        let mut phi = random::g2_element(&mut rng);
        phi.label = None;
        let Ok((p1, p2)) = triality::triality_pair(&phi, &t) else {
            return (false, "no triality pair for a G2 element".into());
        };
        g2 = g2.max(up_to_sign(&p1, &phi)).max(up_to_sign(&p2, &phi));
    }
    let mut closed = 0.0f64;
    for _ in 0..50 {
        let tt = q8(&random::unit_complex(&mut rng));
        let s = q8(&random::unit_complex(&mut rng));
        let c = q8(&Quaternion::exp_u(rng.gen_range(0.0..2.0 * PI)));
        let rho = maps::g2_from_triples(
            &CayleyTriple::standard(),
            &CayleyTriple {
                a: Octonion::U,
                b: c * Octonion::V,
                c: c * Octonion::Z,
            },
        )
        .unwrap();
        let phi_f = |x: Octonion| tt * (rho.apply(&x) * s);
        // (B_t R_s̄ ρ, L_t̄ B_s ρ)
        let e1 = |x: Octonion| tt * (rho.apply(&x) * s.conj()) * tt;
        let e2 = |x: Octonion| tt.conj() * (s * rho.apply(&x) * s);
        let defect = triality_defect(&phi_f, &e1, &e2, &mut rng);
        let phi = OrthoMap8::from_columns(&std::array::from_fn(|k| phi_f(Octonion::basis(k))));
        let Ok((p1, p2)) = triality::triality_pair(&phi, &t) else {
            return (false, "no triality pair for L_t R_s ρ".into());
        };
        let m1 = OrthoMap8::from_columns(&std::array::from_fn(|k| e1(Octonion::basis(k))));
        let m2 = OrthoMap8::from_columns(&std::array::from_fn(|k| e2(Octonion::basis(k))));
        let plus = p1.max_abs_diff(&m1).max(p2.max_abs_diff(&m2));
        let minus = p1
            .scale(-1.0)
            .max_abs_diff(&m1)
            .max(p2.scale(-1.0).max_abs_diff(&m2));
        closed = closed.max(defect).max(plus.min(minus));
    }
    // φ₁ = R_{\overline{φ₂(1)}} φ and φ₂ = L_{\overline{φ₁(1)}} φ for any SO(8) element.
    let mut ident = 0.0f64;
    for _ in 0..50 {
        let phi = random::so8_element(&mut rng);
        let Ok((p1, p2)) = triality::triality_pair(&phi, &t) else {
            return (false, "no triality pair for an SO(8) element".into());
        };
        let (c1, c2) = (
            p1.apply(&Octonion::ONE).conj(),
            p2.apply(&Octonion::ONE).conj(),
        );
        ident = ident.max(triality_defect(
            &|x| phi.apply(&x),
            &|x| p1.apply(&x),
            &|x| p2.apply(&x),
            &mut rng,
        ));
        for k in 0..8 {
            let x = Octonion::basis(k);
            let fx = phi.apply(&x);
            ident = ident
                .max((fx * c2).max_abs_diff(&p1.apply(&x)))
                .max((c1 * fx).max_abs_diff(&p2.apply(&x)));
        }
    }
    (
        g2 < 1e-8 && closed < 1e-8 && ident < 1e-8,
        format!("G2 deviation {g2:.2e}, closed-form deviation {closed:.2e}, identity residual {ident:.2e}"),
    )
}

fn random_g(rng: &mut Rng) -> GParams {
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
    GParams::new(i1, j1, i2, j2, alpha, beta)
}

/// `x ≈ k·step` for some integer `k` in `range`.
fn multiple_of(x: f64, step: f64, range: i32) -> Option<i32> {
    (-range..=range).find(|k| (x - *k as f64 * step).abs() < 1e-7)
}

/// The lattice conditions relating `(ξ, η)` to `(ξ', η')`, by exhaustive search over the integers.
fn lattice_related(p: &GParams, (xi, eta): (f64, f64), (xi2, eta2): (f64, f64)) -> bool {
    let third = PI / 3.0;
    let n_range = -40..=40;
    [1.0f64, -1.0].iter().any(|s| {
        let (x2, e2) = (s * xi2, s * eta2);
        (-40..=40).any(|m: i32| {
            if (p.i1, p.j1) != (1, 1) {
                n_range.clone().any(|n: i32| {
                    let (dx, de) = match (p.i2, p.j2) {
                        (0, 1) => (m as f64 * third, n as f64 * PI),
                        (1, 0) => (m as f64 * PI, n as f64 * third),
                        _ => (m as f64 * third, (m + 3 * n) as f64 * third),
                    };
                    (x2 - xi - dx).abs() < 1e-7 && (e2 - eta - de).abs() < 1e-7
                })
            } else {
                // 2k + m + 3n runs over all integers, as does n alone.
                (x2 - xi - m as f64 * third).abs() < 1e-7
                    && multiple_of(e2 - eta, third, 200).is_some()
            }
        })
    })
}

fn d1133_pipeline() -> Outcome {
    let mut rng = rng_for(8);
    let t = tol();
    let mut notes = Vec::new();

    let mut witness_bad = 0;
    let mut product_defect = 0.0f64;
    for _ in 0..50 {
        let p = random_g(&mut rng);
        let gamma = rng.gen_range(0.0..2.0 * PI);
        let f = d1133::g_to_f(&p, gamma).unwrap();
        let (g1, g2) = d1133::g_pair(&p, gamma).unwrap();
        let (f1, f2) = d1133::f_pair(&p, f.xi, f.eta).unwrap();
        if triality::iso_isotopes((&g1, &g2), (&f1, &f2), &f.witness, &t) != Ok(true) {
            witness_bad += 1;
        }
        let (a, b) = (
            Algebra::from_isotope(&g1, &g2).unwrap(),
            Algebra::from_isotope(&f1, &f2).unwrap(),
        );
        for _ in 0..5 {
            let (x, y) = (random_octonion(&mut rng), random_octonion(&mut rng));
            let lhs = f.witness.apply(&a.mul8(&x, &y));
            let rhs = b.mul8(&f.witness.apply(&x), &f.witness.apply(&y));
            product_defect = product_defect.max(lhs.max_abs_diff(&rhs));
        }
    }
    notes.push(format!(
        "g_to_f: {witness_bad} failed witnesses, product defect {product_defect:.1e}"
    ));

    let mut orbit_bad = 0;
    for _ in 0..50 {
        let p = random_g(&mut rng);
        let ok = (|| {
            let a = p.build()?;
            let b = a.transport(&maps::eps_hat(1))?;
            Ok::<bool, compalg::error::Error>(
                classify::canonical(&a, &t)?
                    .matches(&classify::canonical(&b, &t)?, classify::MATCH_TOL),
            )
        })();
        if ok != Ok(true) {
            orbit_bad += 1;
        }
    }
    notes.push(format!("ε̂ orbit: {orbit_bad} failures"));

    let (mut lattice_bad, mut related) = (0, 0);
    for _ in 0..100 {
        let p = random_g(&mut rng);
        let q = match rng.gen_range(0..4) {
            0 => GParams {
                alpha: PI - p.alpha,
                beta: PI - p.beta,
                ..p
            },
            1 => GParams {
                alpha: p.alpha + PI,
                beta: p.beta - 2.0 * PI,
                ..p
            },
            2 => GParams {
                alpha: PI - p.alpha,
                ..p
            },
            _ => GParams {
                alpha: rng.gen_range(0.0..PI),
                beta: rng.gen_range(0.0..PI),
                ..p
            },
        };
        let (fp, fq) = (
            d1133::g_to_f(&p, 0.0).unwrap(),
            d1133::g_to_f(&q, 0.0).unwrap(),
        );
        let oracle = lattice_related(&p, (fp.xi, fp.eta), (fq.xi, fq.eta));
        related += usize::from(oracle);
        if d1133::iso_1133(&p, &q, t.zero_tol) != Ok(oracle) {
            lattice_bad += 1;
        }
    }
    notes.push(format!(
        "iso_1133 vs lattice: {lattice_bad} disagreements ({related} related)"
    ));

    let mut exclusion_bad = Vec::new();
    for (i1, j1, i2, j2) in d1133::index_tuples() {
        let mut excluded = Vec::new();
        for k in 0..100 {
            for l in 0..100 {
                let p = GParams::new(i1, j1, i2, j2, PI * k as f64 / 100.0, PI * l as f64 / 100.0);
                if !d1133::in_d1133(&p, t.zero_tol) {
                    excluded.push((p.alpha, p.beta));
                }
            }
        }
        let want = (
            FRAC_PI_2 * ((j1 + j2) % 2) as f64,
            FRAC_PI_2 * ((i1 + i2) % 2) as f64,
        );
        let at_want = excluded.len() == 1
            && (excluded[0].0 - want.0).abs() < 1e-12
            && (excluded[0].1 - want.1).abs() < 1e-12;
        // At that point the algebra must actually leave the block.
        let leaves = GParams::new(i1, j1, i2, j2, want.0, want.1)
            .build()
            .and_then(|a| classify::analyze(&a, &mut rng, &t))
            .map(|r| !matches!(r.block.kind, BlockKind::D1133 { .. }))
            .unwrap_or(false);
        if !at_want || !leaves {
            exclusion_bad.push(format!("({i1},{j1},{i2},{j2}): {excluded:?}"));
        }
    }
    notes.push(format!("exclusion: {} bad tuples", exclusion_bad.len()));

    let ok = witness_bad == 0
        && product_defect < 1e-8
        && orbit_bad == 0
        && lattice_bad == 0
        && exclusion_bad.is_empty();
    (ok, notes.join("; "))
}

fn classification_counts() -> Outcome {
    let mut rng = rng_for(9);
    let t = tol();
    let forms = |k| classify::enumerate_block(k, 1, t.zero_tol).unwrap_or_default();
    let (d17, d8, d35) = (
        forms(BlockKind::D17),
        forms(BlockKind::D8),
        forms(BlockKind::D35),
    );
    let counts = (d17.len(), d8.len(), d35.len());
    let d35_11_empty = algebra::p35(1, 1).is_err()
        && d35
            .iter()
            .all(|c| c.block.double_sign != Some(DoubleSign::new(1, 1)));
    let all: Vec<_> = d17.iter().chain(&d8).chain(&d35).collect();
    let mut labels = Vec::new();
    let mut clashes = 0;
    for c in &all {
        let report = c
            .reference()
            .and_then(|a| classify::analyze(&a, &mut rng, &t));
        match report {
            Ok(r) if r.block == c.block => labels.push((r.block, r.partition)),
            _ => clashes += 1,
        }
    }
    for x in 0..labels.len() {
        for y in x + 1..labels.len() {
            if labels[x] == labels[y] {
                clashes += 1;
            }
        }
    }
    let ok = counts == (4, 1, 3) && d35_11_empty && clashes == 0;
    (ok, format!("D17 {}, D8 {}, D35 {}; D35 at (1,1) empty: {d35_11_empty}; {clashes} invariant clashes", counts.0, counts.1, counts.2))
}

fn is_pm1(x: &Quaternion) -> bool {
    x.dist(&Quaternion::ONE) < 1e-9 || x.dist(&-Quaternion::ONE) < 1e-9
}

/// Imaginary parts lie on one line through the origin.
fn on_one_line(xs: &[Quaternion]) -> bool {
    let im: Vec<[f64; 3]> = xs.iter().map(|x| [x.0[1], x.0[2], x.0[3]]).collect();
    im.iter().all(|a| {
        im.iter().all(|b| {
            let c = [
                a[1] * b[2] - a[2] * b[1],
                a[2] * b[0] - a[0] * b[2],
                a[0] * b[1] - a[1] * b[0],
            ];
            c.iter().all(|v| v.abs() < 1e-9)
        })
    })
}

fn j_block(i: u8, j: u8, a: &Quaternion, b: &Quaternion) -> BlockKind {
    let one = Quaternion::ONE;
    let real = |x: &Quaternion| x.im().norm() < 1e-9;
    if a.dist(&one) < 1e-9 && b.dist(&one) < 1e-9 {
        BlockKind::D17
    } else if (i, j) == (1, 1) && (*a * *a + *a + one).norm() < 1e-9 && b.dist(&(*a * *a)) < 1e-9 {
        BlockKind::D8
    } else if real(a) && real(b) {
        BlockKind::D134s
    } else {
        BlockKind::D134a
    }
}

fn k_block(i: u8, j: u8, x: [Quaternion; 4]) -> BlockKind {
    let [a1, b1, a2, b2] = x;
    if x.iter().all(is_pm1) {
        // O_{T(a1,b1), T(a2,b2)} = O_{s1 K^j τ_{c1}, s2 K^i τ_{c2}} with s = ab, c = s (-1)^k.
        let (s1, s2) = ((a1 * b1).re(), (a2 * b2).re());
        return j_block(
            i,
            j,
            &Quaternion::scalar(s1 * sign(j)),
            &Quaternion::scalar(s2 * sign(i)),
        );
    }
    let line = on_one_line(&x);
    if line && a1.dist(&b1.scale(sign(j))) < 1e-9 && a2.dist(&b2.scale(sign(i))) < 1e-9 {
        BlockKind::D116
    } else if line {
        BlockKind::D1124
    } else {
        BlockKind::D11114
    }
}

/// `λ_e^{(k)} = T^{(k)}_{a, (-1)^k a}` with `e = e^{u(πk + 2α)}`, `a = e^{uα}`.
fn lambda_pair(e: &Octonion, k: u8) -> (Quaternion, Quaternion) {
    let alpha = (e.0[1].atan2(e.0[0]) - PI * k as f64) / 2.0;
    let a = Quaternion::exp_u(alpha);
    (a, a.scale(sign(k)))
}

fn expected_block(fam: &Family) -> BlockLabel {
    let q = |x: &Octonion| Quaternion::new(x.0[0], x.0[1], x.0[2], x.0[3]);
    let (kind, s) = match fam {
        Family::StandardIsotope { i, j } => (BlockKind::D17, (*i, *j)),
        Family::Quat4 { i, j } => (BlockKind::Quat4, (*i, *j)),
        Family::Okubo => (BlockKind::D8, (1, 1)),
        Family::P35 { i, j } => (BlockKind::D35, (*i, *j)),
        Family::TauFamily { i, j, a, b } => (j_block(*i, *j, &q(a), &q(b)), (*i, *j)),
        Family::LambdaFamily { i, j, a, b } => {
            let ((a1, b1), (a2, b2)) = (lambda_pair(a, *j), lambda_pair(b, *i));
            (k_block(*i, *j, [a1, b1, a2, b2]), (*i, *j))
        }
        Family::TFamily {
            i,
            j,
            a1,
            b1,
            a2,
            b2,
        } => (k_block(*i, *j, [q(a1), q(b1), q(a2), q(b2)]), (*i, *j)),
        Family::GFamily {
            i1,
            j1,
            i2,
            j2,
            alpha,
            beta,
        } => {
            let want = (
                FRAC_PI_2 * ((j1 + j2) % 2) as f64,
                FRAC_PI_2 * ((i1 + i2) % 2) as f64,
            );
            let near = |x: f64, y: f64| {
                let d = (x - y).rem_euclid(PI);
                d.min(PI - d) < 1e-9
            };
            let kind = if near(*alpha, want.0) && near(*beta, want.1) {
                BlockKind::D134s
            } else {
                BlockKind::D1133 {
                    i1: *i1,
                    j1: *j1,
                    i2: *i2,
                    j2: *j2,
                }
            };
            (kind, ((i1 + i2) % 2, (j1 + j2) % 2))
        }
        Family::Isotope { .. } => unreachable!("samplers draw named families"),
    };
    BlockLabel::new(kind, DoubleSign::new(s.0, s.1))
}

fn detection() -> Outcome {
    let mut rng = rng_for(10);
    let t = tol();
    let mut bad = Vec::new();
    for n in 0..200 {
        let fam = Sampler::ALL[n % Sampler::ALL.len()].draw(&mut rng);
        let want = expected_block(&fam);
        let got = fam
            .build()
            .and_then(|a| classify::analyze(&a, &mut rng, &t))
            .map(|r| r.block);
        if got.as_ref().ok() != Some(&want) {
            bad.push(format!("{fam:?}: expected {want}, got {got:?}"));
        }
    }
    (
        bad.is_empty(),
        format!("{} of 200 draws disagree {}", bad.len(), bad.join("; ")),
    )
}
