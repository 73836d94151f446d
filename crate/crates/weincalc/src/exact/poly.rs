//! Dense univariate polynomials in the formal dimension symbol `n`.
//!
//! Coefficients are exact rationals, index = degree, trailing zeros trimmed;
//! the zero polynomial is the empty coefficient list. Division, gcd, and
//! integer-root extraction are all we need: the rational functions built on
//! top stay at desk-scale degrees.

use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, Zero};

use super::rational::{rat, Rat};

#[derive(Clone, PartialEq, Eq, Hash)]
pub struct Poly {
    coeffs: Vec<Rat>,
}

impl Poly {
    pub fn new(mut coeffs: Vec<Rat>) -> Self {
        while coeffs.last().is_some_and(|c| c.is_zero()) {
            coeffs.pop();
        }
        Poly { coeffs }
    }

    pub fn zero() -> Self {
        Poly { coeffs: vec![] }
    }

    pub fn one() -> Self {
        Poly::constant(Rat::one())
    }

    pub fn constant(c: Rat) -> Self {
        Poly::new(vec![c])
    }

    /// The variable `n` itself.
    pub fn var() -> Self {
        Poly::new(vec![Rat::zero(), Rat::one()])
    }

    pub fn coeffs(&self) -> &[Rat] {
        &self.coeffs
    }

    pub fn coeff(&self, d: usize) -> Rat {
        self.coeffs.get(d).cloned().unwrap_or_else(Rat::zero)
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    pub fn is_one(&self) -> bool {
        self.coeffs.len() == 1 && self.coeffs[0].is_one()
    }

    pub fn is_constant(&self) -> bool {
        self.coeffs.len() <= 1
    }

    /// Degree; the zero polynomial reports degree 0 by convention.
    pub fn degree(&self) -> usize {
        self.coeffs.len().saturating_sub(1)
    }

    pub fn leading(&self) -> Rat {
        self.coeffs.last().cloned().unwrap_or_else(Rat::zero)
    }

    pub fn eval(&self, x: &Rat) -> Rat {
        let mut acc = Rat::zero();
        for c in self.coeffs.iter().rev() {
            acc = acc * x.clone() + c.clone();
        }
        acc
    }

    pub fn scale(&self, c: &Rat) -> Self {
        if c.is_zero() {
            return Poly::zero();
        }
        Poly::new(self.coeffs.iter().map(|a| a * c).collect())
    }

    /// Leading coefficient forced to 1 (no-op on zero).
    pub fn monic(&self) -> Self {
        if self.is_zero() {
            return Poly::zero();
        }
        let inv = Rat::one() / self.leading();
        self.scale(&inv)
    }

    /// Substitutes `n ↦ a·n + b`.
    pub fn compose_linear(&self, a: &Rat, b: &Rat) -> Self {
        let arg = Poly::new(vec![b.clone(), a.clone()]);
        let mut acc = Poly::zero();
        for c in self.coeffs.iter().rev() {
            acc = acc * arg.clone() + Poly::constant(c.clone());
        }
        acc
    }

    /// Rising factorial p^{↑k} = p(p+1)⋯(p+k−1).
    pub fn rising_factorial(&self, k: usize) -> Self {
        let mut acc = Poly::one();
        for j in 0..k {
            acc = acc * (self.clone() + Poly::constant(rat(j as i64)));
        }
        acc
    }

    /// Euclidean division: self = q·d + r with deg r < deg d. Panics on d = 0.
    pub fn div_rem(&self, d: &Poly) -> (Poly, Poly) {
        assert!(!d.is_zero(), "polynomial division by zero");
        let mut rem = self.clone();
        let mut q = vec![Rat::zero(); self.coeffs.len().saturating_sub(d.coeffs.len()) + 1];
        let dlead = d.leading();
        while !rem.is_zero() && rem.coeffs.len() >= d.coeffs.len() {
            let shift = rem.coeffs.len() - d.coeffs.len();
            let c = rem.leading() / dlead.clone();
            q[shift] = c.clone();
            let mut sub = vec![Rat::zero(); shift];
            sub.extend(d.coeffs.iter().map(|a| a * &c));
            rem = rem - Poly::new(sub);
        }
        (Poly::new(q), rem)
    }

    /// Exact quotient; panics if the division leaves a remainder.
    pub fn div_exact(&self, d: &Poly) -> Poly {
        let (q, r) = self.div_rem(d);
        assert!(r.is_zero(), "inexact polynomial division");
        q
    }

    /// Monic gcd over the rationals (Euclid).
    pub fn gcd(&self, other: &Poly) -> Poly {
        let mut a = self.clone();
        let mut b = other.clone();
        while !b.is_zero() {
            let (_, r) = a.div_rem(&b);
            a = b;
            b = r;
        }
        a.monic()
    }

    /// Clears denominators and the content: returns `(c, prim)` with
    /// `self = c · prim`, `prim` having coprime integer coefficients and a
    /// positive leading coefficient.
    pub fn primitive(&self) -> (Rat, Poly) {
        if self.is_zero() {
            return (Rat::zero(), Poly::zero());
        }
        let mut denom_lcm = BigInt::one();
        for c in &self.coeffs {
            denom_lcm = denom_lcm.lcm(c.denom());
        }
        let ints: Vec<BigInt> = self
            .coeffs
            .iter()
            .map(|c| c.numer() * (&denom_lcm / c.denom()))
            .collect();
        let mut content = BigInt::zero();
        for v in &ints {
            content = content.gcd(v);
        }
        if ints.last().is_some_and(|v| v.is_negative()) {
            content = -content;
        }
        let prim = Poly::new(
            ints.iter()
                .map(|v| Rat::from_integer(v / &content))
                .collect(),
        );
        (Rat::new(content, denom_lcm), prim)
    }

    /// Splits off integer roots: returns `(roots, residual)` so that
    /// `self = leading · ∏(n − r) · residual_monic`, roots with multiplicity.
    /// Only attempted on primitive integer polynomials; the residual keeps
    /// whatever does not factor.
    pub fn integer_roots(&self) -> (Vec<i64>, Poly) {
        let mut roots = Vec::new();
        let (_, mut p) = self.primitive();
        if p.is_zero() || p.is_constant() {
            return (roots, p);
        }
        loop {
            if p.is_constant() {
                break;
            }
            // root 0: constant term vanishes
            if p.coeff(0).is_zero() {
                roots.push(0);
                p = p.div_exact(&Poly::var());
                continue;
            }
            // candidate integer roots divide the constant term
            let c0 = p.coeff(0);
            let lead = p.leading();
            if !c0.is_integer() || !lead.is_integer() {
                break;
            }
            let mut found = None;
            for d in divisors_for_roots(c0.numer()) {
                let cand = rat(d);
                if p.eval(&cand).is_zero() {
                    found = Some(d);
                    break;
                }
            }
            match found {
                Some(r) => {
                    roots.push(r);
                    p = p.div_exact(&Poly::new(vec![rat(-r), rat(1)]));
                }
                None => break,
            }
        }
        roots.sort_unstable_by(|a, b| b.cmp(a));
        (roots, p)
    }

    /// Renders as an expanded sum, highest degree first, e.g. "n^2 + n - 1".
    pub fn expanded_string(&self) -> String {
        if self.is_zero() {
            return "0".to_string();
        }
        let mut out = String::new();
        for d in (0..self.coeffs.len()).rev() {
            let c = self.coeff(d);
            if c.is_zero() {
                continue;
            }
            let neg = c < Rat::zero();
            let mag = if neg { -c.clone() } else { c.clone() };
            if out.is_empty() {
                if neg {
                    out.push('-');
                }
            } else {
                out.push_str(if neg { " - " } else { " + " });
            }
            let coeff_part = if mag.is_one() && d > 0 {
                String::new()
            } else {
                mag.to_string()
            };
            out.push_str(&coeff_part);
            if d > 0 {
                if !coeff_part.is_empty() {
                    out.push('*');
                }
                out.push('n');
                if d > 1 {
                    out.push_str(&format!("^{d}"));
                }
            }
        }
        out
    }
}

/// Small signed divisors of v, both signs, ascending magnitude. Bounded so a
/// huge constant term cannot stall display-path factoring.
fn divisors_for_roots(v: &BigInt) -> Vec<i64> {
    let mut out = Vec::new();
    let av = v.abs();
    let cap = BigInt::from(u32::MAX);
    let bound = if av > cap { cap } else { av.clone() };
    let mut d = BigInt::one();
    while &d * &d <= bound {
        if (&av % &d).is_zero() {
            let lo: i64 = match (&d).try_into() {
                Ok(x) => x,
                Err(_) => break,
            };
            out.push(lo);
            out.push(-lo);
            if let Ok(hi) = i64::try_from(&av / &d) {
                out.push(hi);
                out.push(-hi);
            }
        }
        d += 1;
    }
    out.sort_unstable_by_key(|x| (x.unsigned_abs(), *x < 0));
    out.dedup();
    out
}

impl Add for Poly {
    type Output = Poly;
    fn add(self, rhs: Poly) -> Poly {
        let len = self.coeffs.len().max(rhs.coeffs.len());
        let mut out = Vec::with_capacity(len);
        for d in 0..len {
            out.push(self.coeff(d) + rhs.coeff(d));
        }
        Poly::new(out)
    }
}

impl Sub for Poly {
    type Output = Poly;
    fn sub(self, rhs: Poly) -> Poly {
        self + (-rhs)
    }
}

impl Neg for Poly {
    type Output = Poly;
    fn neg(self) -> Poly {
        Poly::new(self.coeffs.into_iter().map(|c| -c).collect())
    }
}

impl Mul for Poly {
    type Output = Poly;
    fn mul(self, rhs: Poly) -> Poly {
        if self.is_zero() || rhs.is_zero() {
            return Poly::zero();
        }
        let mut out = vec![Rat::zero(); self.coeffs.len() + rhs.coeffs.len() - 1];
        for (i, a) in self.coeffs.iter().enumerate() {
            if a.is_zero() {
                continue;
            }
            for (j, b) in rhs.coeffs.iter().enumerate() {
                out[i + j] += a * b;
            }
        }
        Poly::new(out)
    }
}

impl fmt::Debug for Poly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.expanded_string())
    }
}

impl fmt::Display for Poly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.expanded_string())
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exact::rational::ratio;

    fn p(coeffs: &[i64]) -> Poly {
        Poly::new(coeffs.iter().map(|&c| rat(c)).collect())
    }

    #[test]
    fn rising_factorial_of_n() {
        // n(n+1) = n^2 + n
        assert_eq!(Poly::var().rising_factorial(2), p(&[0, 1, 1]));
        assert_eq!(Poly::var().rising_factorial(0), Poly::one());
    }

    #[test]
    fn div_rem_reconstructs() {
        let a = p(&[-1, 0, 0, 1]); // n^3 - 1
        let d = p(&[-1, 1]); // n - 1
        let (q, r) = a.div_rem(&d);
        assert!(r.is_zero());
        assert_eq!(q, p(&[1, 1, 1]));
    }

    #[test]
    fn gcd_cancels_common_factor() {
        let a = p(&[-1, 0, 1]); // (n-1)(n+1)
        let b = p(&[-1, 1]) * p(&[0, 1]); // (n-1)n
        assert_eq!(a.gcd(&b), p(&[-1, 1]));
    }

    #[test]
    fn primitive_extracts_content() {
        let q = Poly::new(vec![ratio(2, 3), ratio(4, 3)]); // (2/3)(2n + 1)
        let (c, prim) = q.primitive();
        assert_eq!(c, ratio(2, 3));
        assert_eq!(prim, p(&[1, 2]));
    }

    #[test]
    fn integer_roots_found_with_multiplicity() {
        // n(n+1)(n+2)^2
        let q = p(&[0, 1]) * p(&[1, 1]) * p(&[2, 1]) * p(&[2, 1]);
        let (roots, rest) = q.integer_roots();
        assert_eq!(roots, vec![0, -1, -2, -2]);
        assert!(rest.is_one());
    }

    #[test]
    fn expanded_string_format() {
        assert_eq!(p(&[-1, -1, 1]).expanded_string(), "n^2 - n - 1");
        assert_eq!(p(&[0, 0, 0, 1]).expanded_string(), "n^3");
        assert_eq!(Poly::zero().expanded_string(), "0");
        assert_eq!(
            Poly::new(vec![ratio(1, 2), ratio(1, 2)]).expanded_string(),
            "1/2*n + 1/2"
        );
    }

    #[test]
    fn compose_linear_shifts() {
        let q = p(&[0, 0, 1]); // n^2
        assert_eq!(q.compose_linear(&rat(1), &rat(-1)), p(&[1, -2, 1]));
        assert_eq!(q.compose_linear(&rat(-1), &rat(0)), p(&[0, 0, 1]));
        let lin = p(&[3, 1]);
        assert_eq!(lin.compose_linear(&rat(-1), &rat(0)), p(&[3, -1]));
    }
}
