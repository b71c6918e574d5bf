//! Fisher's random-turns vicious walkers, the Bessel-Toeplitz determinants
//! that count them, and Monte Carlo over truncated Haar unitaries.
//!
//! Exact identities are checked with big-integer and big-rational arithmetic
//! in [`enumeration`], [`operators`] and [`series`]; the random-matrix side
//! lives in [`rmt`] and is checked statistically with reported standard
//! errors. [`cli`] wires everything to the `vicious` binary.

pub mod cli;
pub mod decimal;
pub mod enumeration;
pub mod error;
pub mod lattice;
pub mod operators;
pub mod rmt;
pub mod series;

pub use error::{Error, Result};
