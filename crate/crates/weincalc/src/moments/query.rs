//! Moment queries over matrix entries.
//!
//! A query is a product of entry tokens like `p[1,2]^2 p~[n,2]^2 r[2,2]^3`
//! (`~` marks the conjugate). Indices are either small concrete labels or
//! offsets from the dimension (`n`, `n-1`, …): the answer to a generic-n
//! query depends on whether an index equals n, so the marker is kept
//! distinct until the dimension is known.

use std::cmp::Ordering;
use std::fmt;

use crate::error::{Error, Result};

/// A matrix-entry index: a concrete label or an offset below the dimension.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Idx {
    /// The literal index j (1-based).
    Lo(u32),
    /// The index n − c; `Hi(0)` is n itself.
    Hi(u32),
}

impl Idx {
    /// Concrete value at dimension n, checked against 1..=n.
    pub fn resolve(&self, n: i64) -> Result<u32> {
        let v = match self {
            Idx::Lo(j) => *j as i64,
            Idx::Hi(c) => n - *c as i64,
        };
        if v < 1 || v > n {
            return Err(Error::Query(format!(
                "index {self} out of range 1..={n}"
            )));
        }
        Ok(v as u32)
    }
}

impl fmt::Display for Idx {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Idx::Lo(j) => write!(f, "{j}"),
            Idx::Hi(0) => write!(f, "n"),
            Idx::Hi(c) => write!(f, "n-{c}"),
        }
    }
}

/// Which matrix the entries come from.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Target {
    /// The rank-one matrix P = I − R.
    P,
    /// The complex reflection R.
    R,
    /// The Haar-distributed unitary U.
    U,
}

impl Target {
    fn letter(&self) -> char {
        match self {
            Target::P => 'p',
            Target::R => 'r',
            Target::U => 'u',
        }
    }
}

/// One token of a query: entry^power, possibly conjugated.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Factor {
    pub target: Target,
    pub row: Idx,
    pub col: Idx,
    pub conj: bool,
    pub power: u32,
}

impl fmt::Display for Factor {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(
            f,
            "{}{}[{},{}]",
            self.target.letter(),
            if self.conj { "~" } else { "" },
            self.row,
            self.col
        )?;
        if self.power != 1 {
            write!(f, "^{}", self.power)?;
        }
        Ok(())
    }
}

/// A product of entry tokens; the dimension is supplied at evaluation time.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct MomentQuery {
    factors: Vec<Factor>,
}

impl MomentQuery {
    pub fn new(factors: Vec<Factor>) -> Self {
        MomentQuery { factors }
    }

    pub fn factors(&self) -> &[Factor] {
        &self.factors
    }

    /// The evaluation family: U queries stand alone, p and r tokens mix.
    pub fn target(&self) -> Result<Target> {
        let has_u = self.factors.iter().any(|f| f.target == Target::U);
        if has_u && self.factors.iter().any(|f| f.target != Target::U) {
            return Err(Error::Query(
                "u-entries cannot mix with p/r entries in one query".into(),
            ));
        }
        if has_u {
            Ok(Target::U)
        } else if self.factors.iter().any(|f| f.target == Target::R) {
            Ok(Target::R)
        } else {
            Ok(Target::P)
        }
    }

    /// Builds a query from index words: entries (i_a, j_a) plain and
    /// (i'_b, j'_b) conjugated, all against one target matrix.
    pub fn from_words(
        target: Target,
        i: &[Idx],
        j: &[Idx],
        ip: &[Idx],
        jp: &[Idx],
    ) -> Result<Self> {
        if i.len() != j.len() || ip.len() != jp.len() {
            return Err(Error::Query(
                "row and column words must have equal length".into(),
            ));
        }
        let mut factors = Vec::with_capacity(i.len() + ip.len());
        for (&row, &col) in i.iter().zip(j) {
            factors.push(Factor {
                target,
                row,
                col,
                conj: false,
                power: 1,
            });
        }
        for (&row, &col) in ip.iter().zip(jp) {
            factors.push(Factor {
                target,
                row,
                col,
                conj: true,
                power: 1,
            });
        }
        Ok(MomentQuery { factors })
    }

    /// Parses the `p[1,2]^2 p~[n,2]^2 r[2,2]^3` format.
    pub fn parse(text: &str) -> Result<Self> {
        let mut factors = Vec::new();
        for token in text.split_whitespace() {
            factors.push(parse_factor(token)?);
        }
        Ok(MomentQuery { factors })
    }
}

impl fmt::Display for MomentQuery {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let parts: Vec<String> = self.factors.iter().map(|x| x.to_string()).collect();
        write!(f, "{}", parts.join(" "))
    }
}

fn parse_factor(token: &str) -> Result<Factor> {
    let bad = |msg: &str| Error::Query(format!("bad token '{token}': {msg}"));
    let mut chars = token.char_indices().peekable();
    let target = match chars.next() {
        Some((_, 'p')) => Target::P,
        Some((_, 'r')) => Target::R,
        Some((_, 'u')) => Target::U,
        _ => return Err(bad("expected p, r, or u")),
    };
    let conj = matches!(chars.peek(), Some((_, '~')));
    if conj {
        chars.next();
    }
    match chars.next() {
        Some((_, '[')) => {}
        _ => return Err(bad("expected '['")),
    }
    let rest_start = chars.peek().map(|&(i, _)| i).ok_or_else(|| bad("truncated"))?;
    let rest = &token[rest_start..];
    let close = rest.find(']').ok_or_else(|| bad("missing ']'"))?;
    let inner = &rest[..close];
    let mut split = inner.splitn(2, ',');
    let row = parse_idx(split.next().unwrap_or(""), token)?;
    let col = parse_idx(
        split
            .next()
            .ok_or_else(|| bad("expected 'row,col' inside brackets"))?,
        token,
    )?;
    let tail = &rest[close + 1..];
    let power = if tail.is_empty() {
        1
    } else if let Some(stripped) = tail.strip_prefix('^') {
        stripped
            .parse::<u32>()
            .map_err(|e| bad(&format!("bad exponent: {e}")))?
    } else {
        return Err(bad("unexpected trailing characters"));
    };
    if power == 0 {
        return Err(bad("exponent must be positive"));
    }
    Ok(Factor {
        target,
        row,
        col,
        conj,
        power,
    })
}

fn parse_idx(text: &str, token: &str) -> Result<Idx> {
    let t = text.trim();
    if let Some(rest) = t.strip_prefix('n') {
        if rest.is_empty() {
            return Ok(Idx::Hi(0));
        }
        if let Some(c) = rest.strip_prefix('-') {
            let off = c
                .parse::<u32>()
                .map_err(|e| Error::Query(format!("bad index in '{token}': {e}")))?;
            return Ok(Idx::Hi(off));
        }
        return Err(Error::Query(format!("bad index '{t}' in '{token}'")));
    }
    let j = t
        .parse::<u32>()
        .map_err(|e| Error::Query(format!("bad index in '{token}': {e}")))?;
    if j == 0 {
        return Err(Error::Query(format!("indices are 1-based in '{token}'")));
    }
    Ok(Idx::Lo(j))
}

/// Orders tokens for canonical memo keys.
pub fn canonical_sort(factors: &mut [Factor]) {
    factors.sort_by(|a, b| {
        (a.target, a.conj, a.row, a.col, a.power)
            .partial_cmp(&(b.target, b.conj, b.row, b.col, b.power))
            .unwrap_or(Ordering::Equal)
    });
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn parse_and_display() {
        let q = MomentQuery::parse("p[1,2]^2 p~[n,2]^2 r[2,2]^3").unwrap();
        assert_eq!(q.factors().len(), 3);
        assert_eq!(q.to_string(), "p[1,2]^2 p~[n,2]^2 r[2,2]^3");
        assert_eq!(q.target().unwrap(), Target::R);

        let u = MomentQuery::parse("u[n-1,n-1] u[n,n] u~[n-1,n] u~[n,n-1]").unwrap();
        assert_eq!(u.target().unwrap(), Target::U);
        assert_eq!(u.to_string(), "u[n-1,n-1] u[n,n] u~[n-1,n] u~[n,n-1]");

        assert!(MomentQuery::parse("u[1,1] p[1,1]").unwrap().target().is_err());
        assert!(MomentQuery::parse("q[1,1]").is_err());
        assert!(MomentQuery::parse("p[0,1]").is_err());
        assert!(MomentQuery::parse("p[1,1]^0").is_err());
        assert!(MomentQuery::parse("p[1]").is_err());
    }

    #[test]
    fn word_constructor() {
        let lo = |v: u32| Idx::Lo(v);
        let q = MomentQuery::from_words(
            Target::P,
            &[lo(1), lo(2)],
            &[lo(2), lo(1)],
            &[lo(3)],
            &[lo(3)],
        )
        .unwrap();
        assert_eq!(q.to_string(), "p[1,2] p[2,1] p~[3,3]");
        assert!(MomentQuery::from_words(Target::P, &[lo(1)], &[], &[], &[]).is_err());
    }

    #[test]
    fn index_resolution() {
        assert_eq!(Idx::Hi(1).resolve(4).unwrap(), 3);
        assert_eq!(Idx::Lo(2).resolve(4).unwrap(), 2);
        assert!(Idx::Hi(4).resolve(4).is_err());
        assert!(Idx::Lo(5).resolve(4).is_err());
        // collisions are legitimate at small n
        assert_eq!(Idx::Hi(1).resolve(2).unwrap(), 1);
    }
}
