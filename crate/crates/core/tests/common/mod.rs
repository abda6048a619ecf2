//! Strategies shared by the integration tests.

#![allow(dead_code)]

use compalg::octonion::{Octonion, Quaternion};
use compalg::random::{self, Rng};
use proptest::prelude::*;

pub fn unit_quaternion() -> impl Strategy<Value = Quaternion> {
    prop::array::uniform4(-1.0f64..1.0)
        .prop_filter("away from zero", |c| {
            c.iter().map(|x| x * x).sum::<f64>() > 1e-2
        })
        .prop_map(|c| Quaternion(c).normalized())
}

pub fn imaginary_unit_quaternion() -> impl Strategy<Value = Quaternion> {
    prop::array::uniform3(-1.0f64..1.0)
        .prop_filter("away from zero", |c| {
            c.iter().map(|x| x * x).sum::<f64>() > 1e-2
        })
        .prop_map(|c| Quaternion::new(0.0, c[0], c[1], c[2]).normalized())
}

pub fn octonion() -> impl Strategy<Value = Octonion> {
    prop::array::uniform8(-1.0f64..1.0).prop_map(Octonion)
}

pub fn unit_octonion() -> impl Strategy<Value = Octonion> {
    octonion()
        .prop_filter("away from zero", |x| x.norm() > 1e-1)
        .prop_map(|x| x.normalized())
}

pub fn bit() -> impl Strategy<Value = u8> {
    0u8..2
}

/// A seeded generator, for draws the library samplers already cover.
pub fn rng() -> impl Strategy<Value = Rng> {
    any::<u64>().prop_map(random::seeded)
}
