//! Galois groups of linear difference systems over Q(x).

pub mod error;
pub mod field;
pub mod difference;
pub mod elements;
pub mod groebner;
pub mod hyper;
pub mod lattice;
pub mod linalg;
pub mod pipeline;
pub mod relations;
pub mod scalar;
pub mod structure;

pub use error::{Error, Result};
pub use field::Field;
pub use scalar::{RatFunc, Rational, UniPoly};

#[cfg(doctest)]
mod book {
    #[doc = include_str!("../../../book/src/overview.md")]
    mod overview {}
    #[doc = include_str!("../../../book/src/arithmetic.md")]
    mod arithmetic {}
    #[doc = include_str!("../../../book/src/ideals.md")]
    mod ideals {}
    #[doc = include_str!("../../../book/src/relations.md")]
    mod relations {}
    #[doc = include_str!("../../../book/src/hypergeometric.md")]
    mod hypergeometric {}
    #[doc = include_str!("../../../book/src/lattices.md")]
    mod lattices {}
    #[doc = include_str!("../../../book/src/components.md")]
    mod components {}
    #[doc = include_str!("../../../book/src/stabilizer.md")]
    mod stabilizer {}
    #[doc = include_str!("../../../book/src/bounds.md")]
    mod bounds {}
    #[doc = include_str!("../../../book/src/cli.md")]
    mod cli {}
}

#[cfg(doctest)]
#[doc = include_str!("../README.md")]
mod readme {}
