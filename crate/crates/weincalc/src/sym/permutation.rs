//! Permutations of {1..k} in one-line notation.
//!
//! All I/O is 1-based; internally images are stored 0-based. Input accepts
//! both "2 1 3" and cycle notation "(1 2)(3)".

use std::fmt;
use std::str::FromStr;

use crate::error::{Error, Result};
use crate::sym::partition::CycleType;

#[derive(Clone, PartialEq, Eq, Hash)]
pub struct Permutation {
    // images[i] = σ(i+1) − 1
    images: Vec<usize>,
}

impl Permutation {
    /// From 1-based one-line images.
    pub fn from_one_line(images: &[usize]) -> Result<Self> {
        let k = images.len();
        let mut seen = vec![false; k];
        for &v in images {
            if v < 1 || v > k || seen[v - 1] {
                return Err(Error::Parse(format!(
                    "not a bijection on 1..{k}: {images:?}"
                )));
            }
            seen[v - 1] = true;
        }
        Ok(Permutation {
            images: images.iter().map(|&v| v - 1).collect(),
        })
    }

    pub fn identity(k: usize) -> Self {
        Permutation {
            images: (0..k).collect(),
        }
    }

    /// Transposition (a b) in S_k, 1-based.
    pub fn transposition(k: usize, a: usize, b: usize) -> Self {
        let mut images: Vec<usize> = (0..k).collect();
        images.swap(a - 1, b - 1);
        Permutation { images }
    }

    pub fn degree(&self) -> usize {
        self.images.len()
    }

    /// σ(i) with 1-based i.
    pub fn apply(&self, i: usize) -> usize {
        self.images[i - 1] + 1
    }

    /// Function composition: (self ∘ other)(i) = self(other(i)).
    pub fn compose(&self, other: &Permutation) -> Permutation {
        debug_assert_eq!(self.degree(), other.degree());
        Permutation {
            images: other.images.iter().map(|&j| self.images[j]).collect(),
        }
    }

    pub fn inverse(&self) -> Permutation {
        let mut images = vec![0; self.images.len()];
        for (i, &j) in self.images.iter().enumerate() {
            images[j] = i;
        }
        Permutation { images }
    }

    pub fn is_identity(&self) -> bool {
        self.images.iter().enumerate().all(|(i, &j)| i == j)
    }

    pub fn fixed_points(&self) -> usize {
        self.images.iter().enumerate().filter(|&(i, &j)| i == j).count()
    }

    pub fn cycle_type(&self) -> CycleType {
        let k = self.degree();
        let mut seen = vec![false; k];
        let mut lens = Vec::new();
        for start in 0..k {
            if seen[start] {
                continue;
            }
            let mut len = 0u32;
            let mut cur = start;
            while !seen[cur] {
                seen[cur] = true;
                cur = self.images[cur];
                len += 1;
            }
            lens.push(len);
        }
        CycleType::new(lens)
    }

    pub fn sign(&self) -> i64 {
        self.cycle_type().sign()
    }

    /// Lexicographic rank of the one-line word among all of S_k.
    pub fn lex_rank(&self) -> usize {
        let k = self.degree();
        let mut rank = 0usize;
        let mut fact: usize = (1..k.max(1)).product();
        let mut remaining: Vec<usize> = (0..k).collect();
        for i in 0..k {
            let pos = remaining.iter().position(|&v| v == self.images[i]).unwrap();
            rank += pos * fact;
            remaining.remove(pos);
            if k - i > 1 {
                fact /= k - i - 1;
            }
        }
        rank
    }

    /// Inverse of `lex_rank`.
    pub fn from_lex_rank(k: usize, mut rank: usize) -> Permutation {
        let mut fact: usize = (1..k.max(1)).product();
        let mut remaining: Vec<usize> = (0..k).collect();
        let mut images = Vec::with_capacity(k);
        for i in 0..k {
            let pos = rank / fact;
            rank %= fact;
            images.push(remaining.remove(pos));
            if k - i > 1 {
                fact /= k - i - 1;
            }
        }
        Permutation { images }
    }

    /// Cycle notation, fixed points included, e.g. "(1 2)(3)".
    pub fn cycle_string(&self) -> String {
        let k = self.degree();
        if k == 0 {
            return "()".to_string();
        }
        let mut seen = vec![false; k];
        let mut out = String::new();
        for start in 0..k {
            if seen[start] {
                continue;
            }
            let mut cyc = vec![start];
            seen[start] = true;
            let mut cur = self.images[start];
            while cur != start {
                seen[cur] = true;
                cyc.push(cur);
                cur = self.images[cur];
            }
            out.push('(');
            out.push_str(
                &cyc.iter()
                    .map(|v| (v + 1).to_string())
                    .collect::<Vec<_>>()
                    .join(" "),
            );
            out.push(')');
        }
        out
    }
}

/// All k! permutations in lexicographic one-line order.
pub fn all_permutations(k: usize) -> Vec<Permutation> {
    let count: usize = (1..=k.max(1)).product();
    (0..count).map(|r| Permutation::from_lex_rank(k, r)).collect()
}

impl fmt::Display for Permutation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let s: Vec<String> = self.images.iter().map(|v| (v + 1).to_string()).collect();
        write!(f, "{}", s.join(" "))
    }
}

impl fmt::Debug for Permutation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "[{self}]")
    }
}

impl FromStr for Permutation {
    type Err = Error;
    fn from_str(s: &str) -> Result<Self> {
        let t = s.trim();
        if t.starts_with('(') {
            parse_cycles(t)
        } else {
            let images = t
                .split_whitespace()
                .map(|w| {
                    w.parse::<usize>()
                        .map_err(|e| Error::Parse(format!("bad image '{w}': {e}")))
                })
                .collect::<Result<Vec<_>>>()?;
            Permutation::from_one_line(&images)
        }
    }
}

fn parse_cycles(s: &str) -> Result<Permutation> {
    let mut cycles: Vec<Vec<usize>> = Vec::new();
    let mut rest = s.trim();
    while !rest.is_empty() {
        if !rest.starts_with('(') {
            return Err(Error::Parse(format!("expected '(' in cycles: '{s}'")));
        }
        let close = rest
            .find(')')
            .ok_or_else(|| Error::Parse(format!("unbalanced cycles: '{s}'")))?;
        let body = &rest[1..close];
        let entries = body
            .split(|c: char| c.is_whitespace() || c == ',')
            .filter(|w| !w.is_empty())
            .map(|w| {
                w.parse::<usize>()
                    .map_err(|e| Error::Parse(format!("bad cycle entry '{w}': {e}")))
            })
            .collect::<Result<Vec<_>>>()?;
        cycles.push(entries);
        rest = rest[close + 1..].trim_start();
    }
    let k = cycles
        .iter()
        .flat_map(|c| c.iter())
        .copied()
        .max()
        .unwrap_or(0);
    let mut images: Vec<usize> = (1..=k).collect();
    let mut touched = vec![false; k];
    for cyc in &cycles {
        for &v in cyc {
            if v < 1 || v > k || touched[v - 1] {
                return Err(Error::Parse(format!("invalid or repeated entry {v} in '{s}'")));
            }
            touched[v - 1] = true;
        }
        for w in cyc.windows(2) {
            images[w[0] - 1] = w[1];
        }
        if cyc.len() > 1 {
            images[cyc[cyc.len() - 1] - 1] = cyc[0];
        }
    }
    Permutation::from_one_line(&images)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::sym::partition::Partition;

    #[test]
    fn cycle_types() {
        let id = Permutation::identity(4);
        assert_eq!(id.cycle_type(), Partition::column(4));
        let t = Permutation::transposition(4, 1, 2);
        assert_eq!(t.cycle_type(), Partition::new(vec![2, 1, 1]));
        let four: Permutation = "2 3 4 1".parse().unwrap();
        assert_eq!(four.cycle_type(), Partition::row(4));
    }

    #[test]
    fn compose_applies_right_first() {
        let a = Permutation::transposition(3, 1, 2);
        let b: Permutation = "(2 3)".parse().unwrap();
        let c = a.compose(&b);
        // c(i) = a(b(i)): 1→1→2, 2→3→3, 3→2→1
        assert_eq!(c, "2 3 1".parse().unwrap());
        assert!(a.compose(&a).is_identity());
    }

    #[test]
    fn rank_round_trip_lex_order() {
        let all = all_permutations(4);
        assert_eq!(all.len(), 24);
        for (r, p) in all.iter().enumerate() {
            assert_eq!(p.lex_rank(), r);
            assert_eq!(&Permutation::from_lex_rank(4, r), p);
        }
        assert_eq!(all[0], Permutation::identity(4));
        assert_eq!(all[0].to_string(), "1 2 3 4");
        assert_eq!(all[1].to_string(), "1 2 4 3");
        assert_eq!(all[23].to_string(), "4 3 2 1");
    }

    #[test]
    fn sign_matches_cycle_count_parity() {
        for p in all_permutations(5) {
            let ct = p.cycle_type();
            let parity = (5 - ct.len()) % 2;
            assert_eq!(p.sign(), if parity == 0 { 1 } else { -1 });
        }
    }

    #[test]
    fn parse_both_formats() {
        let a: Permutation = "2 1 3".parse().unwrap();
        let b: Permutation = "(1 2)(3)".parse().unwrap();
        assert_eq!(a, b);
        assert_eq!(b.cycle_string(), "(1 2)(3)");
        assert!("2 2 3".parse::<Permutation>().is_err());
    }
}
