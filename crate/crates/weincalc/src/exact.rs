//! Exact arithmetic: arbitrary-precision rationals, polynomials in the formal
//! dimension symbol `n`, and reduced rational functions of `n`.

pub mod poly;
pub mod ratfunc;
pub mod rational;
pub mod scalar;

pub use poly::Poly;
pub use ratfunc::RatFunc;
pub use rational::{binomial, factorial, falling_factorial, parse_rat, rat, ratio, rising_factorial, Rat};
pub use scalar::{falling, power, rising, Dimension, Scalar};
