//! Exact Weingarten calculus on the unitary group.
//!
//! The crate computes the objects of unitary Weingarten calculus exactly —
//! over arbitrary-precision rationals for a concrete dimension, or over
//! rational functions of a formal dimension symbol `n`:
//!
//! - the class functions G_{k,n}, Wg_{k,n} (three independent routes), the
//!   pseudo-Weingarten W_{k,n} for degrees above the dimension, and the
//!   ascension/descension functions linking dimensions n and n−1;
//! - exact moments of complex-reflection matrix entries and of Haar-unitary
//!   matrix entries, including a dimension-recursive evaluation route;
//! - a Monte Carlo Haar sampler built from products of complex reflections
//!   (virtual isometries), used to cross-check every exact formula.

pub mod algebra;
pub mod engine;
pub mod error;
pub mod exact;
pub mod moments;
pub mod sampler;
pub mod sym;
pub mod verify;

pub use error::{Error, Result};
