mod common;

use common::{octonion, unit_octonion, unit_quaternion};
use compalg::maps;
use compalg::numerics::{self, Mat};
use compalg::octonion::{self as oct, is_cayley_triple, CayleyTriple, Octonion, Quaternion};
use proptest::prelude::*;

fn mat(rows: [[f64; 8]; 8]) -> Mat {
    Mat::from_fn(8, 8, |r, c| rows[r][c])
}

#[test]
fn basis_examples() {
    assert_eq!(Octonion::U * Octonion::V, Octonion::UV);
    assert_eq!(Octonion::Z * Octonion::Z, Octonion::scalar(-1.0));
    let (z, u, v) = (Octonion::Z, Octonion::U, Octonion::V);
    assert_eq!((z * u) * v, z * (v * u));
}

#[test]
fn conjugation_examples() {
    assert_eq!(Octonion::ONE.conj(), Octonion::ONE);
    assert_eq!(Octonion::U.conj(), -Octonion::U);
}

#[test]
fn left_multiplication_matrices() {
    let one = mat(oct::left_mul_matrix(&Octonion::ONE));
    assert_eq!(one, Mat::identity(8, 8));
    let lu = mat(oct::left_mul_matrix(&Octonion::U));
    let col: Vec<f64> = lu.column(2).iter().copied().collect();
    assert_eq!(col, Octonion::UV.0.to_vec());
}

#[test]
fn cayley_triple_examples() {
    let t = |a, b, c| CayleyTriple { a, b, c };
    assert!(is_cayley_triple(
        &t(Octonion::U, Octonion::V, Octonion::Z),
        1e-9
    ));
    assert!(!is_cayley_triple(
        &t(Octonion::U, Octonion::V, Octonion::UV),
        1e-9
    ));
    assert!(is_cayley_triple(
        &t(Octonion::V, Octonion::U, Octonion::Z),
        1e-9
    ));
}

#[test]
fn real_and_imaginary_parts() {
    let x = Octonion::scalar(1.0) + Octonion::U.scale(2.0);
    assert_eq!(x.re(), 1.0);
    assert_eq!(Octonion::scalar(3.0).im(), Octonion::zero());
    let w = compalg::algebra::okubo_root();
    assert!(w.im().max_abs_diff(&Octonion::U.scale(3f64.sqrt() / 2.0)) < 1e-15);
}

#[test]
fn rotation_quaternion_examples() {
    let (u, v) = (Quaternion::U, Quaternion::V);
    assert_eq!(
        oct::rotation_quaternion(&u, &u, 1e-9).unwrap(),
        Quaternion::ONE
    );
    let q = oct::rotation_quaternion(&v, &u, 1e-9).unwrap();
    assert!(q.kappa(&v).dist(&u) < 1e-12);
    let q = oct::rotation_quaternion(&u, &-u, 1e-9).unwrap();
    assert!(q.re().abs() < 1e-12 && q.0[1].abs() < 1e-12);
    assert!(q.kappa(&u).dist(&-u) < 1e-12);
}

#[test]
fn rotation_quaternion_rejects_non_imaginary() {
    assert!(oct::rotation_quaternion(&Quaternion::ONE, &Quaternion::U, 1e-9).is_err());
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(256))]

    #[test]
    fn norm_is_multiplicative(x in octonion(), y in octonion()) {
        prop_assert!(((x * y).norm() - x.norm() * y.norm()).abs() < 1e-12);
    }

    #[test]
    fn alternative_laws(x in octonion(), y in octonion()) {
        prop_assert!((x * (x * y)).max_abs_diff(&((x * x) * y)) < 1e-12);
        prop_assert!(((y * x) * x).max_abs_diff(&(y * (x * x))) < 1e-12);
    }

    #[test]
    fn conjugation_reverses_products(x in octonion(), y in octonion()) {
        prop_assert!((x * y).conj().max_abs_diff(&(y.conj() * x.conj())) < 1e-12);
    }

    #[test]
    fn conjugate_sum_is_twice_real_part(x in octonion()) {
        prop_assert!((x + x.conj()).max_abs_diff(&Octonion::scalar(2.0 * x.re())) < 1e-15);
    }

    #[test]
    fn kappa_hat_acts_on_the_z_half(q in unit_quaternion(), x in unit_quaternion()) {
        let k = maps::kappa_hat(&q.to_octonion()).unwrap();
        let lhs = k.apply(&(x.to_octonion() * Octonion::Z));
        let rhs = q.kappa(&x).to_octonion() * Octonion::Z;
        prop_assert!(lhs.max_abs_diff(&rhs) < 1e-12);
    }

    #[test]
    fn left_multiplications_share_a_determinant_sign(a in unit_octonion(), b in unit_octonion()) {
        let s = |x: &Octonion| numerics::det_sign(&mat(oct::left_mul_matrix(x)), 1e-9).unwrap();
        prop_assert_eq!(s(&a), s(&b));
    }

    #[test]
    fn rotation_quaternion_aligns(a in common::imaginary_unit_quaternion(), b in common::imaginary_unit_quaternion()) {
        let q = oct::rotation_quaternion(&a, &b, 1e-9).unwrap();
        prop_assert!(q.kappa(&a).dist(&b) < 1e-9);
    }
}
