//! Integer partitions and Young-diagram combinatorics.

use std::fmt;
use std::str::FromStr;

use num_bigint::BigInt;
use num_traits::{One, ToPrimitive};

use crate::error::{Error, Result};
use crate::exact::rational::factorial;
use crate::exact::scalar::Scalar;

/// A weakly decreasing list of positive parts. Doubles as a cycle type.
#[derive(Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Partition {
    parts: Vec<u32>,
}

pub type CycleType = Partition;

impl Partition {
    pub fn new(mut parts: Vec<u32>) -> Self {
        parts.retain(|&p| p > 0);
        parts.sort_unstable_by(|a, b| b.cmp(a));
        Partition { parts }
    }

    pub fn empty() -> Self {
        Partition { parts: vec![] }
    }

    /// The one-row partition (k).
    pub fn row(k: u32) -> Self {
        Partition::new(vec![k])
    }

    /// The one-column partition (1^k).
    pub fn column(k: u32) -> Self {
        Partition::new(vec![1; k as usize])
    }

    pub fn parts(&self) -> &[u32] {
        &self.parts
    }

    /// Weight |λ|.
    pub fn weight(&self) -> usize {
        self.parts.iter().map(|&p| p as usize).sum()
    }

    /// Number of parts ℓ(λ).
    pub fn len(&self) -> usize {
        self.parts.len()
    }

    pub fn is_empty(&self) -> bool {
        self.parts.is_empty()
    }

    pub fn part(&self, i: usize) -> u32 {
        self.parts.get(i).copied().unwrap_or(0)
    }

    /// Multiplicity of `m` among the parts.
    pub fn multiplicity(&self, m: u32) -> usize {
        self.parts.iter().filter(|&&p| p == m).count()
    }

    /// Conjugate partition λ′ (transpose of the Young diagram).
    pub fn transpose(&self) -> Partition {
        if self.parts.is_empty() {
            return Partition::empty();
        }
        let cols = self.parts[0] as usize;
        let mut out = Vec::with_capacity(cols);
        for j in 1..=cols {
            out.push(self.parts.iter().filter(|&&p| p as usize >= j).count() as u32);
        }
        Partition { parts: out }
    }

    /// Diagonal length d(λ) = |{i : λ_i ≥ i+1}| with 1-based rows.
    pub fn diagonal(&self) -> usize {
        self.parts
            .iter()
            .enumerate()
            .filter(|&(i, &p)| p as usize > i)
            .count()
    }

    /// Content product (z↑λ) = ∏_{(i,j)∈λ} (z + j − i), rows and columns 1-based.
    pub fn content_product<S: Scalar>(&self, z: &S) -> S {
        let mut acc = S::one();
        for (i, &p) in self.parts.iter().enumerate() {
            for j in 1..=p as i64 {
                acc = acc * (z.clone() + S::from_int(j - 1 - i as i64));
            }
        }
        acc
    }

    /// Hook-length dimension f^λ = |λ|!/∏ hooks.
    pub fn dimension(&self) -> i64 {
        if self.parts.is_empty() {
            return 1;
        }
        let conj = self.transpose();
        let mut hooks = BigInt::one();
        for (i, &p) in self.parts.iter().enumerate() {
            for j in 1..=p as usize {
                let hook = (p as usize - j) + (conj.part(j - 1) as usize - (i + 1)) + 1;
                hooks *= BigInt::from(hook);
            }
        }
        let f = factorial(self.weight()) / hooks;
        f.to_i64().expect("dimension fits i64 at desk scale")
    }

    /// Size of the conjugacy class with this cycle type: k!/z_μ.
    pub fn class_size(&self) -> i64 {
        let k = self.weight();
        let mut z = BigInt::one();
        let mut m = 1u32;
        let max = self.parts.first().copied().unwrap_or(0);
        while m <= max {
            let c = self.multiplicity(m);
            if c > 0 {
                for _ in 0..c {
                    z *= BigInt::from(m);
                }
                z *= factorial(c);
            }
            m += 1;
        }
        (factorial(k) / z).to_i64().expect("class size fits i64")
    }

    /// Sign of any permutation with this cycle type: (−1)^{k − ℓ}.
    pub fn sign(&self) -> i64 {
        if (self.weight() - self.len()).is_multiple_of(2) {
            1
        } else {
            -1
        }
    }

    /// Number of fixed points of any permutation with this cycle type.
    pub fn fixed_points(&self) -> usize {
        self.multiplicity(1)
    }
}

impl fmt::Display for Partition {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let s: Vec<String> = self.parts.iter().map(|p| p.to_string()).collect();
        write!(f, "{}", s.join(","))
    }
}

impl fmt::Debug for Partition {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "({self})")
    }
}

impl FromStr for Partition {
    type Err = Error;
    fn from_str(s: &str) -> Result<Self> {
        let trimmed = s.trim().trim_start_matches('(').trim_end_matches(')');
        if trimmed.is_empty() {
            return Ok(Partition::empty());
        }
        let parts = trimmed
            .split(',')
            .map(|p| {
                p.trim()
                    .parse::<u32>()
                    .map_err(|e| Error::Parse(format!("bad partition part '{p}': {e}")))
            })
            .collect::<Result<Vec<_>>>()?;
        if parts.contains(&0) {
            return Err(Error::Parse("partition parts must be positive".into()));
        }
        Ok(Partition::new(parts))
    }
}

/// All partitions of `k` in reverse-lexicographic order, (k) first, (1^k) last.
pub fn partitions_of(k: usize) -> Vec<Partition> {
    let mut out = Vec::new();
    let mut current = Vec::new();
    fn rec(remaining: u32, max: u32, current: &mut Vec<u32>, out: &mut Vec<Partition>) {
        if remaining == 0 {
            out.push(Partition {
                parts: current.clone(),
            });
            return;
        }
        let top = max.min(remaining);
        for next in (1..=top).rev() {
            current.push(next);
            rec(remaining - next, next, current, out);
            current.pop();
        }
    }
    rec(k as u32, k as u32, &mut current, &mut out);
    out
}
