//! Exact-arithmetic combinatorics of symplectic duality at desk scale.
//!
//! Everything here is computed over `BigRational`/`BigInt`; there is no
//! floating point anywhere in the crate, so every identity that is supposed
//! to hold, holds on the nose and tests need no tolerances.
//!
//! The crate is organised around five largely independent toolkits:
//!
//! * [`exactlin`] — rational row reduction, integer kernels (Hermite normal
//!   form), Gale complements, unimodularity tests;
//! * [`arrangement`] — polarized hyperplane arrangements: Tutte polynomials,
//!   sign-vector/LP fixed points, closure order, leaf flats, Gale duality and
//!   the shuffling/twisting hyperplane collections;
//! * [`typea`] — partitions, dominance, Namikawa/Hamiltonian Weyl-group
//!   shapes, leaf intervals and Kostka/Pieri enumeration;
//! * [`abacus`] — charged multipartition abaci and the e×ℓ rectangle flip;
//! * [`kgroup`] — fixed-point localization packages: the equivariant
//!   intersection form, orthonormal classes, chamber classes, leaf
//!   filtrations and standard-module characters.
//!
//! The companion `duality-cli` crate adds file formats and a command-line
//! driver; this crate is `no_std` (with `alloc`) and purely functional.

#![no_std]

extern crate alloc;

pub mod abacus;
pub mod arrangement;
pub mod exactlin;
pub mod kgroup;
pub mod poly;
pub mod typea;

pub use num_bigint::BigInt;
pub use num_rational::BigRational;

/// Shorthand used throughout the crate.
pub type Rat = num_rational::BigRational;

pub(crate) fn rat_int(n: i64) -> Rat {
    Rat::from_integer(BigInt::from(n))
}
