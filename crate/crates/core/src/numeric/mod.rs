//! Exact scalars and one-dimensional exact geometry.

pub mod ext_real;
pub mod interval;
pub mod pl;
pub mod rational;

pub use ext_real::ExtReal;
pub use interval::{Interval, IntervalSet};
pub use pl::PlFunction;
pub use rational::{int, ratio, Rational};
