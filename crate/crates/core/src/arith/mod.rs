//! Exact scalars and the ordinal termination measure.

mod ordinal;
mod rational;

pub use ordinal::OrdinalPoly;
pub use rational::{denominator_lcm, q, ParseRationalError, Rational};
