//! Design toolkit for ultra-low-rate protograph LDPC codes.
//!
//! The crate is organised along the design flow:
//!
//! * [`protograph`] holds protomatrices, type descriptions (a compressed
//!   representation where rows and columns are grouped into node types with
//!   occurrence counts), their expansion and lifting, and exact rate
//!   arithmetic.
//! * [`pexit`] implements the Gauss-Hermite J-function, protograph EXIT
//!   analysis on both full protomatrices and type descriptions, and threshold
//!   bisection.
//! * [`optimize`] searches occurrence vectors with differential evolution and
//!   provides an exhaustive enumerator for small spaces.
//! * [`sim`] lifts a protomatrix to a sparse parity-check matrix, removes
//!   4-cycles, and measures frame/bit error rates with sum-product decoding.
//!   It also carries the secret-key-rate arithmetic used for CV-QKD
//!   reconciliation.

pub mod error;
pub mod optimize;
pub mod pexit;
pub mod protograph;
pub mod sim;

pub use error::{Error, Result};
