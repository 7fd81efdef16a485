//! Coxeter elements, Coxeter links, growth series of polygonal reflection
//! groups, and Mahler measures of integer polynomials.
//!
//! The modules meet at Lehmer's polynomial. It is the characteristic
//! polynomial of the `E10` Coxeter element ([`coxeter`]) and the growth
//! denominator of the `(2,3,7)` triangle group ([`growth`]). Up to `t -> -t`
//! it is also the Alexander polynomial of the link of a positive chord
//! system realizing `E10` ([`chords`], [`seifert`]). [`search`] runs the
//! exhaustive minimality experiments over each family.

pub mod chords;
pub mod coxeter;
pub mod error;
pub mod graphs;
pub mod growth;
pub mod intpoly;
pub mod matrix;
pub mod search;
pub mod seifert;

pub use error::{Error, ErrorClass, Result};
pub use intpoly::IntPolynomial;
pub use matrix::IntMatrix;
