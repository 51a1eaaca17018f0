//! Delta-matroids on small ground sets.
//!
//! A delta-matroid is a nonempty family of subsets of a finite ground set
//! satisfying the symmetric exchange axiom. This crate stores families as
//! bitsets indexed by subset mask (ground sets of up to 16 elements) and
//! provides:
//!
//! * the operation algebra: [`DeltaMatroid::twist`], deletion, contraction,
//!   restriction, duality and direct sums ([`dm`]);
//! * symmetric GF(2) matrices, looped simple graphs and the delta-matroids
//!   they represent ([`gf2`]);
//! * two independent tests for being binary, by matrix representation and by
//!   excluded minors ([`binary`]);
//! * twist polynomials and the classification of twist monomials
//!   ([`twistpoly`]);
//! * canonical forms up to relabeling and twisting, and a census of all
//!   classes on up to five elements ([`census`]).
//!
//! ```
//! use delta_matroid::{twistpoly, DeltaMatroid, Subset};
//!
//! // ({1,2,3}, {∅, {1,2}, {1,3}, {2,3}})
//! let d = DeltaMatroid::from_sets(3, [vec![], vec![0, 1], vec![0, 2], vec![1, 2]])?;
//! assert_eq!(d.twist(Subset::from_elements([0, 1])), d);
//! assert_eq!(twistpoly::twist_polynomial(&d).to_string(), "8*z^2");
//! # Ok::<(), delta_matroid::Error>(())
//! ```
//!
//! A narrative guide with runnable examples lives in the `book/` directory
//! of the repository; its code blocks are compiled as doc-tests of this
//! crate.

pub mod binary;
pub mod census;
pub mod dm;
mod error;
pub mod gf2;
pub mod iso;
pub mod random;
pub mod subset;
pub mod text;
pub mod twistpoly;

pub use dm::{check_symmetric_exchange, DeltaMatroid, ExchangeWitness, Matroid};
pub use error::{Error, Result};
pub use gf2::SymMatrixGf2;
pub use subset::{ElementId, Family, SetSystem, Subset, MAX_ELEMENTS};
pub use twistpoly::TwistPolynomial;

// Book chapters and the README, compiled by `cargo test --doc`.
#[cfg(doctest)]
mod book {
    #[doc = include_str!("../../../book/src/introduction.md")]
    mod introduction {}
    #[doc = include_str!("../../../book/src/operations.md")]
    mod operations {}
    #[doc = include_str!("../../../book/src/binary.md")]
    mod binary {}
    #[doc = include_str!("../../../book/src/twist-polynomials.md")]
    mod twist_polynomials {}
    #[doc = include_str!("../../../book/src/minors.md")]
    mod minors {}
    #[doc = include_str!("../../../book/src/census.md")]
    mod census {}
    #[doc = include_str!("../../../book/src/formats.md")]
    mod formats {}
    #[doc = include_str!("../../../README.md")]
    mod readme {}
}
