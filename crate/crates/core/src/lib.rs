//! Real division composition algebras with large derivation algebras.
//!
//! Algebras are orthogonal isotopes `𝕆_{f,g}` of the octonions, stored as
//! structure constants ([`algebra::Algebra`]). The modules build them from
//! parametric families, compute their derivations and module partition,
//! decide membership in the blocks, and compute canonical forms and
//! isomorphism witnesses.
//!
//! ```
//! use compalg::algebra;
//! use compalg::classify::{self, BlockKind};
//! use compalg::numerics::TolerancePolicy;
//! use compalg::random;
//!
//! let a = algebra::p35(1, 0).unwrap();
//! let r = classify::analyze(&a, &mut random::seeded(1), &TolerancePolicy::default()).unwrap();
//! assert_eq!(r.block.kind, BlockKind::D35);
//! ```

pub mod algebra;
pub mod classify;
pub mod d1133;
pub mod derivations;
pub mod error;
pub mod maps;
pub mod normal_form;
pub mod numerics;
pub mod octonion;
pub mod random;
pub mod sample;
pub mod triality;
pub mod verify;

#[cfg(doctest)]
mod book {
    #[doc = include_str!("../../../book/src/introduction.md")]
    mod introduction {}
    #[doc = include_str!("../../../book/src/octonions.md")]
    mod octonions {}
    #[doc = include_str!("../../../book/src/isotopes.md")]
    mod isotopes {}
    #[doc = include_str!("../../../book/src/derivations.md")]
    mod derivations {}
    #[doc = include_str!("../../../book/src/triality.md")]
    mod triality {}
    #[doc = include_str!("../../../book/src/normal-forms.md")]
    mod normal_forms {}
    #[doc = include_str!("../../../book/src/d1133.md")]
    mod d1133 {}
    #[doc = include_str!("../../../book/src/classification.md")]
    mod classification {}
    #[doc = include_str!("../../../book/src/cli.md")]
    mod cli {}
}
