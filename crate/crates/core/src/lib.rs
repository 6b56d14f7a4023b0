//! Cheeger-deformed metrics on biquotients of SO(8) and U(n+1).
//!
//! The crate builds the Cayley numbers and g2, deforms bi-invariant metrics
//! along symmetric-pair chains, decides freeness of the relevant two-sided
//! actions, certifies that distinguished points carry no horizontal flat
//! planes, and redoes the first Pontrjagin class arithmetic.

pub mod action;
pub mod angle;
pub mod cayley;
pub mod charclass;
pub mod config;
pub mod error;
pub mod lie;
pub mod matrix;
pub mod metric;
pub mod scalar;
pub mod scan;
pub mod verify;

pub use error::{Error, Result};
