//! The chapters of the guide in `book/`, included as documentation so that
//! `cargo test` runs their code blocks.

#[doc = include_str!("../../../book/src/introduction.md")]
pub mod introduction {}

#[doc = include_str!("../../../book/src/polynomials.md")]
pub mod polynomials {}

#[doc = include_str!("../../../book/src/coxeter.md")]
pub mod coxeter {}

#[doc = include_str!("../../../book/src/chords.md")]
pub mod chords {}

#[doc = include_str!("../../../book/src/links.md")]
pub mod links {}

#[doc = include_str!("../../../book/src/growth.md")]
pub mod growth {}

#[doc = include_str!("../../../book/src/search.md")]
pub mod search {}

#[doc = include_str!("../../../book/src/cli.md")]
pub mod cli {}
