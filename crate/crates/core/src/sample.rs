//! Seeded draws of family parameters, including the special strata of each
//! family.

use crate::algebra::Family;
use crate::octonion::Quaternion;
use crate::random::{self, Rng};
use rand::Rng as _;
use serde::{Deserialize, Serialize};
use std::f64::consts::PI;

/// The samplers below, by name.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub enum Sampler {
    Standard,
    Quat4,
    Okubo,
    P35,
    JGeneric,
    JSpecial,
    Lambda,
    KD116,
    KD1124,
    KGeneric,
    KOutsideS,
    G,
}

impl Sampler {
    pub const ALL: [Sampler; 12] = [
        Sampler::Standard,
        Sampler::Quat4,
        Sampler::Okubo,
        Sampler::P35,
        Sampler::JGeneric,
        Sampler::JSpecial,
        Sampler::Lambda,
        Sampler::KD116,
        Sampler::KD1124,
        Sampler::KGeneric,
        Sampler::KOutsideS,
        Sampler::G,
    ];

    pub fn draw(self, rng: &mut Rng) -> Family {
        match self {
            Sampler::Standard => Family::StandardIsotope {
                i: random::bit(rng),
                j: random::bit(rng),
            },
            Sampler::Quat4 => Family::Quat4 {
                i: random::bit(rng),
                j: random::bit(rng),
            },
            Sampler::Okubo => Family::Okubo,
            Sampler::P35 => {
                let (i, j) = [(0, 0), (0, 1), (1, 0)][rng.gen_range(0..3)];
                Family::P35 { i, j }
            }
            Sampler::JGeneric => j_generic(rng),
            Sampler::JSpecial => j_special(rng),
            Sampler::Lambda => lambda(rng),
            Sampler::KD116 => k_d116(rng),
            Sampler::KD1124 => k_d1124(rng),
            Sampler::KGeneric => k_generic(rng),
            Sampler::KOutsideS => k_outside_s(rng),
            Sampler::G => g(rng),
        }
    }
}

/// Uniform over [`Sampler::ALL`].
pub fn any_family(rng: &mut Rng) -> Family {
    let s = Sampler::ALL[rng.gen_range(0..Sampler::ALL.len())];
    s.draw(rng)
}

fn ij(rng: &mut Rng) -> (u8, u8) {
    (random::bit(rng), random::bit(rng))
}

fn pm1(rng: &mut Rng) -> Quaternion {
    Quaternion::scalar(if random::bit(rng) == 1 { -1.0 } else { 1.0 })
}

/// `cos θ + w sin θ`.
fn on_axis(w: &Quaternion, theta: f64) -> Quaternion {
    let (s, c) = theta.sin_cos();
    Quaternion::scalar(c) + w.scale(s)
}

pub fn j_generic(rng: &mut Rng) -> Family {
    let (i, j) = ij(rng);
    let (a, b) = (random::unit_quaternion(rng), random::unit_quaternion(rng));
    Family::TauFamily {
        i,
        j,
        a: a.into(),
        b: b.into(),
    }
}

/// `(1, 1)`, pairs in `{±1}`, cube roots `(t, t²)`, and pairs on a common axis.
pub fn j_special(rng: &mut Rng) -> Family {
    let (mut i, mut j) = ij(rng);
    let w = random::imaginary_unit_quaternion(rng);
    let (a, b) = match rng.gen_range(0..5) {
        0 => (Quaternion::ONE, Quaternion::ONE),
        1 => (pm1(rng), pm1(rng)),
        2 => {
            // Half of these land on the Okubo point.
            if random::bit(rng) == 1 {
                (i, j) = (1, 1);
            }
            let t = on_axis(&w, 2.0 * PI / 3.0);
            (t, t * t)
        }
        3 => (
            on_axis(&w, random::angle(rng, 0.0, 2.0 * PI)),
            on_axis(&w, random::angle(rng, 0.0, 2.0 * PI)),
        ),
        _ => (pm1(rng), on_axis(&w, random::angle(rng, 0.0, 2.0 * PI))),
    };
    Family::TauFamily {
        i,
        j,
        a: a.into(),
        b: b.into(),
    }
}

pub fn lambda(rng: &mut Rng) -> Family {
    let (i, j) = ij(rng);
    let (a, b) = if rng.gen_range(0..10) == 0 {
        let s = |k: u8| Quaternion::scalar(if k == 1 { -1.0 } else { 1.0 });
        (s(j), s(i))
    } else {
        (random::unit_complex(rng), random::unit_complex(rng))
    };
    Family::LambdaFamily {
        i,
        j,
        a: a.into(),
        b: b.into(),
    }
}

fn t_family(i: u8, j: u8, x: [Quaternion; 4]) -> Family {
    Family::TFamily {
        i,
        j,
        a1: x[0].into(),
        b1: x[1].into(),
        a2: x[2].into(),
        b2: x[3].into(),
    }
}

pub fn k_d116(rng: &mut Rng) -> Family {
    let (i, j) = ij(rng);
    let w = random::imaginary_unit_quaternion(rng);
    let a1 = on_axis(&w, random::angle(rng, 0.0, 2.0 * PI));
    let a2 = on_axis(&w, random::angle(rng, 0.0, 2.0 * PI));
    let sj = if j == 1 { -1.0 } else { 1.0 };
    let si = if i == 1 { -1.0 } else { 1.0 };
    t_family(i, j, [a1, a1.scale(sj), a2, a2.scale(si)])
}

pub fn k_d1124(rng: &mut Rng) -> Family {
    let (i, j) = ij(rng);
    let w = random::imaginary_unit_quaternion(rng);
    let x = std::array::from_fn(|_| on_axis(&w, random::angle(rng, 0.0, 2.0 * PI)));
    t_family(i, j, x)
}

pub fn k_generic(rng: &mut Rng) -> Family {
    let (i, j) = ij(rng);
    let x = std::array::from_fn(|_| random::unit_quaternion(rng));
    t_family(i, j, x)
}

pub fn k_outside_s(rng: &mut Rng) -> Family {
    let (i, j) = ij(rng);
    let x = std::array::from_fn(|_| pm1(rng));
    t_family(i, j, x)
}

pub fn g(rng: &mut Rng) -> Family {
    let (i1, j1) = ij(rng);
    let (i2, j2) = [(0, 1), (1, 0), (1, 1)][rng.gen_range(0..3)];
    Family::GFamily {
        i1,
        j1,
        i2,
        j2,
        alpha: random::angle(rng, 0.0, PI),
        beta: random::angle(rng, 0.0, PI),
    }
}
