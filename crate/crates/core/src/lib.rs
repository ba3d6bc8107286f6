//! Exact signature, residue and transfer calculus on Witt groups and real
//! spectra, and Gersten complexes of curves over the rationals and the real
//! algebraic numbers.

#![allow(clippy::needless_range_loop)]

pub mod abelian;
pub mod arith;
pub mod bm;
pub mod error;
pub mod gersten;
pub mod real;
pub mod spectrum;
pub mod verify;
pub mod witt;

pub use error::{Error, Result};
