//! Finite 2-colimits of categories internal to finite sets.
//!
//! The base category is finite sets ([`finset`]). Internal categories,
//! functors and natural transformations live in [`graphcat`]; coproducts,
//! copowers, coequalisers, coequifiers, free categories and cocommas in
//! [`colimits`]; discrete Conduché fibrations and pullback-stability
//! experiments in [`fibrations`]. [`oracle`] re-derives universal properties
//! by exhaustive search, independently of the constructions.

pub mod cli;
pub mod colimits;
pub mod error;
pub mod fibrations;
pub mod finset;
pub mod graphcat;
pub mod oracle;

pub use error::{Error, LawViolation, Result};
