//! The scalar abstraction shared by the numeric and symbolic engines.
//!
//! Every class-function computation runs over a field of exact scalars: plain
//! rationals when the dimension is a concrete integer, rational functions of
//! `n` when it is formal. Mixing the two domains is forbidden by construction
//! (the type parameter fixes the domain for a whole computation).

use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

use num_traits::{One, Zero};

use super::ratfunc::RatFunc;
use super::rational::{rat, Rat};

pub trait Scalar:
    Clone
    + PartialEq
    + Eq
    + fmt::Debug
    + fmt::Display
    + Send
    + Sync
    + 'static
    + Add<Output = Self>
    + Sub<Output = Self>
    + Mul<Output = Self>
    + Neg<Output = Self>
{
    fn zero() -> Self;
    fn one() -> Self;
    fn is_zero(&self) -> bool;
    fn from_int(v: i64) -> Self;
    fn from_rat(v: &Rat) -> Self;
    /// Multiplicative inverse; `None` exactly on zero.
    fn inverse(&self) -> Option<Self>;
    /// Domain tag used in serialized tables.
    fn domain() -> &'static str;
}

impl Scalar for Rat {
    fn zero() -> Self {
        <Rat as Zero>::zero()
    }
    fn one() -> Self {
        <Rat as One>::one()
    }
    fn is_zero(&self) -> bool {
        Zero::is_zero(self)
    }
    fn from_int(v: i64) -> Self {
        rat(v)
    }
    fn from_rat(v: &Rat) -> Self {
        v.clone()
    }
    fn inverse(&self) -> Option<Self> {
        if Zero::is_zero(self) {
            None
        } else {
            Some(<Rat as One>::one() / self.clone())
        }
    }
    fn domain() -> &'static str {
        "rational"
    }
}

impl Scalar for RatFunc {
    fn zero() -> Self {
        RatFunc::zero()
    }
    fn one() -> Self {
        RatFunc::one()
    }
    fn is_zero(&self) -> bool {
        RatFunc::is_zero(self)
    }
    fn from_int(v: i64) -> Self {
        RatFunc::constant(rat(v))
    }
    fn from_rat(v: &Rat) -> Self {
        RatFunc::constant(v.clone())
    }
    fn inverse(&self) -> Option<Self> {
        RatFunc::inverse(self)
    }
    fn domain() -> &'static str {
        "rational-function"
    }
}

/// Rising factorial a^{↑k} over any scalar domain.
pub fn rising<S: Scalar>(a: &S, k: usize) -> S {
    let mut acc = S::one();
    for j in 0..k {
        acc = acc * (a.clone() + S::from_int(j as i64));
    }
    acc
}

/// Falling factorial a^{↓k} over any scalar domain.
pub fn falling<S: Scalar>(a: &S, k: usize) -> S {
    let mut acc = S::one();
    for j in 0..k {
        acc = acc * (a.clone() - S::from_int(j as i64));
    }
    acc
}

/// a^e for nonnegative e.
pub fn power<S: Scalar>(a: &S, e: usize) -> S {
    let mut acc = S::one();
    for _ in 0..e {
        acc = acc * a.clone();
    }
    acc
}

/// Either a concrete dimension or the formal symbol `n`.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Dimension {
    Concrete(i64),
    Symbolic,
}

impl Dimension {
    pub fn concrete(&self) -> Option<i64> {
        match self {
            Dimension::Concrete(n) => Some(*n),
            Dimension::Symbolic => None,
        }
    }
}

impl fmt::Display for Dimension {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Dimension::Concrete(n) => write!(f, "{n}"),
            Dimension::Symbolic => write!(f, "n"),
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn rising_and_falling_over_both_domains() {
        assert_eq!(rising(&rat(3), 4), rat(360));
        assert_eq!(falling(&rat(5), 3), rat(60));
        let n = RatFunc::var();
        let up2 = rising(&n, 2);
        assert_eq!(up2.to_string(), "n*(n+1)");
        let down2 = falling(&n, 2);
        assert_eq!(down2.eval_at(5).unwrap(), rat(20));
    }

    #[test]
    fn inverse_detects_zero() {
        assert!(Scalar::inverse(&rat(0)).is_none());
        assert_eq!(Scalar::inverse(&rat(4)).unwrap(), crate::exact::rational::ratio(1, 4));
        assert!(RatFunc::zero().inverse().is_none());
    }
}
