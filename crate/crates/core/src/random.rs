//! Seeded sampling of unit elements, automorphisms and orthogonal maps.

use crate::maps::{g2_from_triples, OrthoMap8};
use crate::octonion::{CayleyTriple, Octonion, Quaternion};
use rand::{Rng as _, SeedableRng};
use rand_distr::StandardNormal;

/// Deterministic generator used throughout the crate.
pub type Rng = rand_chacha::ChaCha8Rng;

pub fn seeded(seed: u64) -> Rng {
    Rng::seed_from_u64(seed)
}

fn gauss<const N: usize>(rng: &mut Rng) -> [f64; N] {
    std::array::from_fn(|_| rng.sample(StandardNormal))
}

pub fn unit_octonion(rng: &mut Rng) -> Octonion {
    Octonion(gauss(rng)).normalized()
}

pub fn imaginary_unit_octonion(rng: &mut Rng) -> Octonion {
    let mut x = gauss::<8>(rng);
    x[0] = 0.0;
    Octonion(x).normalized()
}

pub fn unit_quaternion(rng: &mut Rng) -> Quaternion {
    Quaternion(gauss(rng)).normalized()
}

pub fn imaginary_unit_quaternion(rng: &mut Rng) -> Quaternion {
    let mut x = gauss::<4>(rng);
    x[0] = 0.0;
    Quaternion(x).normalized()
}

/// Uniform point of the unit circle in `⟨1, u⟩`.
pub fn unit_complex(rng: &mut Rng) -> Quaternion {
    Quaternion::exp_u(rng.gen_range(0.0..std::f64::consts::TAU))
}

/// Uniform angle in `[lo, hi)`.
pub fn angle(rng: &mut Rng, lo: f64, hi: f64) -> f64 {
    rng.gen_range(lo..hi)
}

pub fn bit(rng: &mut Rng) -> u8 {
    rng.gen_range(0..2)
}

fn orthogonalize(mut x: Octonion, against: &[Octonion]) -> Octonion {
    for _ in 0..2 {
        for a in against {
            x = x - a.scale(a.dot(&x));
        }
    }
    x.normalized()
}

pub fn cayley_triple(rng: &mut Rng) -> CayleyTriple {
    let a = imaginary_unit_octonion(rng);
    let b = orthogonalize(imaginary_unit_octonion(rng), &[a]);
    let c = orthogonalize(imaginary_unit_octonion(rng), &[a, b, a * b]);
    CayleyTriple { a, b, c }
}

/// Automorphism sending `(u, v, z)` to a random Cayley triple.
pub fn g2_element(rng: &mut Rng) -> OrthoMap8 {
    g2_from_triples(&CayleyTriple::standard(), &cayley_triple(rng)).expect("valid triple")
}

/// Random element of `SO(8)` from Gram–Schmidt on Gaussian columns.
pub fn so8_element(rng: &mut Rng) -> OrthoMap8 {
    let mut cols: Vec<Octonion> = Vec::with_capacity(8);
    for _ in 0..8 {
        let x = orthogonalize(Octonion(gauss(rng)), &cols);
        cols.push(x);
    }
    let mut m = OrthoMap8::from_columns(&std::array::from_fn(|k| cols[k]));
    if m.det_sign(1e-9) == Ok(-1) {
        for r in 0..8 {
            m.matrix[r][7] = -m.matrix[r][7];
        }
    }
    m
}
