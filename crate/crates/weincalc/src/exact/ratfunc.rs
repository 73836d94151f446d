//! Rational functions of the formal dimension symbol `n`.
//!
//! Canonical form: numerator and denominator coprime over the rationals and
//! the denominator monic, so equality is structural. Display prefers the
//! factored shape the Weingarten tables are usually written in, e.g.
//! `-1/((n-1)*n*(n+1))`; `parse` accepts everything the renderer emits.

use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

use num_traits::{One, Signed, Zero};

use super::poly::Poly;
use super::rational::{rat, Rat};
use crate::error::{Error, Result};

#[derive(Clone, PartialEq, Eq, Hash)]
pub struct RatFunc {
    num: Poly,
    den: Poly,
}

impl RatFunc {
    /// Reduced, monic-denominator representative of `num/den`.
    pub fn new(num: Poly, den: Poly) -> Result<Self> {
        if den.is_zero() {
            return Err(Error::ZeroDenominator);
        }
        if num.is_zero() {
            return Ok(RatFunc {
                num: Poly::zero(),
                den: Poly::one(),
            });
        }
        let g = num.gcd(&den);
        let mut num = num.div_exact(&g);
        let mut den = den.div_exact(&g);
        let lead = den.leading();
        if !lead.is_one() {
            let inv = Rat::one() / lead;
            num = num.scale(&inv);
            den = den.scale(&inv);
        }
        Ok(RatFunc { num, den })
    }

    pub fn from_poly(p: Poly) -> Self {
        RatFunc {
            num: p,
            den: Poly::one(),
        }
    }

    pub fn constant(c: Rat) -> Self {
        RatFunc::from_poly(Poly::constant(c))
    }

    /// The formal symbol `n`.
    pub fn var() -> Self {
        RatFunc::from_poly(Poly::var())
    }

    pub fn zero() -> Self {
        RatFunc::from_poly(Poly::zero())
    }

    pub fn one() -> Self {
        RatFunc::from_poly(Poly::one())
    }

    pub fn numerator(&self) -> &Poly {
        &self.num
    }

    pub fn denominator(&self) -> &Poly {
        &self.den
    }

    pub fn is_zero(&self) -> bool {
        self.num.is_zero()
    }

    pub fn inverse(&self) -> Option<Self> {
        if self.is_zero() {
            None
        } else {
            Some(RatFunc::new(self.den.clone(), self.num.clone()).expect("nonzero numerator"))
        }
    }

    /// Exact value at an integer point; a vanishing denominator is a pole.
    pub fn eval_at(&self, n0: i64) -> Result<Rat> {
        let x = rat(n0);
        let d = self.den.eval(&x);
        if d.is_zero() {
            return Err(Error::Pole {
                at: n0,
                denominator: self.den.expanded_string(),
            });
        }
        Ok(self.num.eval(&x) / d)
    }

    /// Substitutes `n ↦ a·n + b` (used for the n ↦ n−1 and n ↦ −n symmetries).
    pub fn compose_linear(&self, a: &Rat, b: &Rat) -> Self {
        RatFunc::new(
            self.num.compose_linear(a, b),
            self.den.compose_linear(a, b),
        )
        .expect("denominator composition stays nonzero")
    }

    fn factored_side(p: &Poly) -> (Rat, String) {
        // p = content · ∏(n - r) · residual, rendered as a product
        let (content, prim) = p.primitive();
        let (roots, residual) = prim.integer_roots();
        let mut parts: Vec<String> = Vec::new();
        let mut i = 0;
        while i < roots.len() {
            let r = roots[i];
            let mult = roots[i..].iter().take_while(|&&x| x == r).count();
            let base = match r.cmp(&0) {
                std::cmp::Ordering::Equal => "n".to_string(),
                std::cmp::Ordering::Greater => format!("(n-{r})"),
                std::cmp::Ordering::Less => format!("(n+{})", -r),
            };
            if mult > 1 {
                parts.push(format!("{base}^{mult}"));
            } else {
                parts.push(base);
            }
            i += mult;
        }
        if !residual.is_one() {
            parts.push(format!("({})", residual.expanded_string()));
        }
        (content, parts.join("*"))
    }
}

impl fmt::Display for RatFunc {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.num.is_zero() {
            return write!(f, "0");
        }
        let (cn, num_factors) = RatFunc::factored_side(&self.num);
        let (cd, den_factors) = RatFunc::factored_side(&self.den);

        // combined content c = p/q: p scales the numerator, q the denominator
        let c = cn / cd;
        let p = c.numer();
        let q = c.denom();

        let mut num_str = String::new();
        if p.is_negative() {
            num_str.push('-');
        }
        let pa = p.abs();
        if !pa.is_one() || num_factors.is_empty() {
            num_str.push_str(&pa.to_string());
            if !num_factors.is_empty() {
                num_str.push('*');
            }
        }
        num_str.push_str(&num_factors);

        let mut den_parts: Vec<String> = Vec::new();
        if !q.is_one() {
            den_parts.push(q.to_string());
        }
        if !self.den.is_one() {
            den_parts.push(den_factors);
        }
        if den_parts.is_empty() {
            return write!(f, "{num_str}");
        }
        let den_str = den_parts.join("*");
        // products need outer parentheses; single factors carry their own
        let den_wrapped = if den_str.contains('*') {
            format!("({den_str})")
        } else {
            den_str
        };
        write!(f, "{num_str}/{den_wrapped}")
    }
}

impl fmt::Debug for RatFunc {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{self}")
    }
}

impl Add for RatFunc {
    type Output = RatFunc;
    fn add(self, rhs: RatFunc) -> RatFunc {
        RatFunc::new(
            self.num * rhs.den.clone() + rhs.num * self.den.clone(),
            self.den * rhs.den,
        )
        .expect("nonzero denominators")
    }
}

impl Sub for RatFunc {
    type Output = RatFunc;
    fn sub(self, rhs: RatFunc) -> RatFunc {
        self + (-rhs)
    }
}

impl Neg for RatFunc {
    type Output = RatFunc;
    fn neg(self) -> RatFunc {
        RatFunc {
            num: -self.num,
            den: self.den,
        }
    }
}

impl Mul for RatFunc {
    type Output = RatFunc;
    fn mul(self, rhs: RatFunc) -> RatFunc {
        RatFunc::new(self.num * rhs.num, self.den * rhs.den).expect("nonzero denominators")
    }
}

/// Parses the renderer's grammar: integers, `n`, `+ - * / ^`, parentheses.
pub fn parse(input: &str) -> Result<RatFunc> {
    let mut p = Parser {
        src: input.as_bytes(),
        pos: 0,
    };
    let v = p.expr()?;
    p.skip_ws();
    if p.pos != p.src.len() {
        return Err(Error::Parse(format!(
            "trailing input at byte {} of '{input}'",
            p.pos
        )));
    }
    Ok(v)
}

struct Parser<'a> {
    src: &'a [u8],
    pos: usize,
}

impl<'a> Parser<'a> {
    fn skip_ws(&mut self) {
        while self.pos < self.src.len() && self.src[self.pos].is_ascii_whitespace() {
            self.pos += 1;
        }
    }

    fn peek(&mut self) -> Option<u8> {
        self.skip_ws();
        self.src.get(self.pos).copied()
    }

    fn expr(&mut self) -> Result<RatFunc> {
        let mut acc = self.term()?;
        while let Some(c) = self.peek() {
            match c {
                b'+' => {
                    self.pos += 1;
                    acc = acc + self.term()?;
                }
                b'-' => {
                    self.pos += 1;
                    acc = acc - self.term()?;
                }
                _ => break,
            }
        }
        Ok(acc)
    }

    fn term(&mut self) -> Result<RatFunc> {
        let mut acc = self.factor()?;
        while let Some(c) = self.peek() {
            match c {
                b'*' => {
                    self.pos += 1;
                    acc = acc * self.factor()?;
                }
                b'/' => {
                    self.pos += 1;
                    let d = self.factor()?;
                    let inv = d.inverse().ok_or_else(|| {
                        Error::Parse("division by zero in expression".to_string())
                    })?;
                    acc = acc * inv;
                }
                _ => break,
            }
        }
        Ok(acc)
    }

    fn factor(&mut self) -> Result<RatFunc> {
        let neg = if self.peek() == Some(b'-') {
            self.pos += 1;
            true
        } else {
            false
        };
        let mut base = self.atom()?;
        if self.peek() == Some(b'^') {
            self.pos += 1;
            let e = self.integer()? as u32;
            let b = base.clone();
            base = RatFunc::one();
            for _ in 0..e {
                base = base * b.clone();
            }
        }
        Ok(if neg { -base } else { base })
    }

    fn atom(&mut self) -> Result<RatFunc> {
        match self.peek() {
            Some(b'(') => {
                self.pos += 1;
                let v = self.expr()?;
                if self.peek() != Some(b')') {
                    return Err(Error::Parse("expected ')'".to_string()));
                }
                self.pos += 1;
                Ok(v)
            }
            Some(b'n') => {
                self.pos += 1;
                Ok(RatFunc::var())
            }
            Some(c) if c.is_ascii_digit() => {
                let v = self.integer()?;
                Ok(RatFunc::constant(rat(v)))
            }
            other => Err(Error::Parse(format!(
                "unexpected token {:?} at byte {}",
                other.map(|c| c as char),
                self.pos
            ))),
        }
    }

    fn integer(&mut self) -> Result<i64> {
        self.skip_ws();
        let start = self.pos;
        while self.pos < self.src.len() && self.src[self.pos].is_ascii_digit() {
            self.pos += 1;
        }
        if start == self.pos {
            return Err(Error::Parse(format!("expected integer at byte {start}")));
        }
        std::str::from_utf8(&self.src[start..self.pos])
            .unwrap()
            .parse::<i64>()
            .map_err(|e| Error::Parse(e.to_string()))
    }
}
