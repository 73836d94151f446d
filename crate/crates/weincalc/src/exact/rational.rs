//! Arbitrary-precision rational scalars.
//!
//! `Rat` is a reduced fraction of big integers with a positive denominator;
//! `num_rational` maintains exactly the normal form we need (gcd 1, zero as
//! 0/1), so the type is a plain alias plus a handful of constructors and the
//! factorial family used throughout the moment formulas.

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};

use crate::error::{Error, Result};

pub type Rat = BigRational;

/// Shorthand for an integer-valued rational.
pub fn rat(v: i64) -> Rat {
    Rat::from_integer(BigInt::from(v))
}

/// `p/q` as an exact rational. Panics on `q == 0`.
pub fn ratio(p: i64, q: i64) -> Rat {
    Rat::new(BigInt::from(p), BigInt::from(q))
}

/// Parses "p/q" or "p" with optional sign.
pub fn parse_rat(s: &str) -> Result<Rat> {
    s.trim()
        .parse::<Rat>()
        .map_err(|e| Error::Parse(format!("bad rational '{s}': {e}")))
}

/// k! as a big integer.
pub fn factorial(k: usize) -> BigInt {
    (1..=k).fold(BigInt::one(), |acc, j| acc * BigInt::from(j))
}

/// Binomial coefficient C(n, k).
pub fn binomial(n: usize, k: usize) -> BigInt {
    if k > n {
        return BigInt::zero();
    }
    let k = k.min(n - k);
    let mut num = BigInt::one();
    let mut den = BigInt::one();
    for j in 0..k {
        num *= BigInt::from(n - j);
        den *= BigInt::from(j + 1);
    }
    num / den
}

/// Rising factorial a^{↑k} = a(a+1)⋯(a+k−1), with a^{↑0} = 1.
pub fn rising_factorial(a: &Rat, k: usize) -> Rat {
    let mut acc = Rat::one();
    for j in 0..k {
        acc *= a + rat(j as i64);
    }
    acc
}

/// Falling factorial a^{↓k} = a(a−1)⋯(a−k+1), with a^{↓0} = 1.
pub fn falling_factorial(a: &Rat, k: usize) -> Rat {
    let mut acc = Rat::one();
    for j in 0..k {
        acc *= a - rat(j as i64);
    }
    acc
}

/// Best-effort f64 rendering for the `--decimal` flag.
pub fn to_f64(x: &Rat) -> f64 {
    // Scale down in tandem so huge numerators/denominators still divide sanely.
    let mut num = x.numer().clone();
    let mut den = x.denom().clone();
    let limit = BigInt::from(u64::MAX);
    while num.abs() > limit || den.abs() > limit {
        num /= 2;
        den /= 2;
        if den.is_zero() {
            return f64::NAN;
        }
    }
    bigint_f64(&num) / bigint_f64(&den)
}

fn bigint_f64(v: &BigInt) -> f64 {
    let (sign, digits) = v.to_u64_digits();
    let mut out = 0.0f64;
    for d in digits.iter().rev() {
        out = out * 2f64.powi(64) + *d as f64;
    }
    match sign {
        num_bigint::Sign::Minus => -out,
        _ => out,
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn rising_factorial_matches_definition() {
        assert_eq!(rising_factorial(&rat(3), 4), rat(360));
        assert_eq!(rising_factorial(&rat(5), 0), rat(1));
        assert_eq!(rising_factorial(&ratio(1, 2), 2), ratio(3, 4));
    }

    #[test]
    fn falling_factorial_matches_definition() {
        assert_eq!(falling_factorial(&rat(5), 3), rat(60));
        assert_eq!(falling_factorial(&rat(2), 3), rat(0));
        // full factorial when a = k
        assert_eq!(falling_factorial(&rat(6), 6), Rat::from_integer(factorial(6)));
    }

    #[test]
    fn falling_is_signed_rising() {
        // a^{↓k} = (−1)^k (−a)^{↑k}
        for a in -3..6 {
            for k in 0..6usize {
                let lhs = falling_factorial(&rat(a), k);
                let sign = if k % 2 == 0 { rat(1) } else { rat(-1) };
                let rhs = sign * rising_factorial(&rat(-a), k);
                assert_eq!(lhs, rhs);
            }
        }
    }

    #[test]
    fn binomial_row_sums() {
        let total: BigInt = (0..=7).map(|j| binomial(7, j)).sum();
        assert_eq!(total, BigInt::from(128));
    }

    #[test]
    fn parse_round_trip() {
        for s in ["3/4", "-1/6", "24", "0"] {
            let v = parse_rat(s).unwrap();
            assert_eq!(v.to_string(), s);
        }
        assert!(parse_rat("n+1").is_err());
    }
}
