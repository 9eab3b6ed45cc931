//! Exact abstract convex analysis over finite families of elementary
//! functions.
//!
//! Functions live either on the rational line, as exact piecewise-linear
//! functions, or on a finite point set, as value tables. Everything is
//! computed with arbitrary-precision rationals.

pub mod calculus;
pub mod domain;
pub mod error;
pub mod expr;
pub mod family;
pub mod function;
pub mod hull;
pub mod monotone;
pub mod numeric;
pub mod report;

pub use error::{Error, Result};
