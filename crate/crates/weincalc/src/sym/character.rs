//! Irreducible characters of S_k via the Murnaghan–Nakayama rule, plus a
//! per-degree cache of class data (cycle types, sizes, the character table)
//! shared by every engine above.

use std::collections::HashMap;
use std::sync::{Arc, LazyLock, RwLock};

use crate::error::{Error, Result};
use crate::sym::partition::{partitions_of, CycleType, Partition};

/// χ^λ(μ). Errors when the weights differ.
pub fn character(lambda: &Partition, mu: &CycleType) -> Result<i64> {
    if lambda.weight() != mu.weight() {
        return Err(Error::DegreeMismatch {
            expected: lambda.weight(),
            got: mu.weight(),
        });
    }
    let mut memo = HashMap::new();
    // consume cycles largest first so the memo keys stay canonical
    let mut cycles: Vec<u32> = mu.parts().to_vec();
    cycles.sort_unstable_by(|a, b| b.cmp(a));
    Ok(mn(lambda.parts(), &cycles, &mut memo))
}

type Memo = HashMap<(Vec<u32>, usize), i64>;

fn mn(shape: &[u32], cycles: &[u32], memo: &mut Memo) -> i64 {
    if cycles.is_empty() {
        return 1; // shape is empty too when the weights matched
    }
    let key = (shape.to_vec(), cycles.len());
    if let Some(&v) = memo.get(&key) {
        return v;
    }
    let t = cycles[0];
    let rest = &cycles[1..];

    // Border strips via beta-numbers: β_i = λ_i + (ℓ − 1 − i). Removing a
    // strip of length t replaces some β by β − t when that slot is free; the
    // height is the number of betas jumped over.
    let l = shape.len();
    let betas: Vec<u32> = shape
        .iter()
        .enumerate()
        .map(|(i, &p)| p + (l - 1 - i) as u32)
        .collect();
    let mut total = 0i64;
    for (i, &b) in betas.iter().enumerate() {
        if b < t {
            continue;
        }
        let nb = b - t;
        if betas.contains(&nb) {
            continue;
        }
        let height = betas.iter().filter(|&&x| nb < x && x < b).count();
        let sign = if height % 2 == 0 { 1 } else { -1 };
        // rebuild the shape from the updated beta set
        let mut new_betas: Vec<u32> = betas.clone();
        new_betas[i] = nb;
        new_betas.sort_unstable_by(|a, b| b.cmp(a));
        let m = new_betas.len();
        let mut new_shape: Vec<u32> = new_betas
            .iter()
            .enumerate()
            .map(|(j, &x)| x - (m - 1 - j) as u32)
            .collect();
        new_shape.retain(|&p| p > 0);
        total += sign * mn(&new_shape, rest, memo);
    }
    memo.insert(key, total);
    total
}

/// Precomputed class data for one symmetric group S_k.
pub struct SymmetricGroup {
    k: usize,
    classes: Vec<CycleType>,
    index: HashMap<Vec<u32>, usize>,
    class_sizes: Vec<i64>,
    /// chars[λ index][class index], partitions in reverse-lex order.
    chars: Vec<Vec<i64>>,
    dims: Vec<i64>,
}

impl SymmetricGroup {
    fn build(k: usize) -> Self {
        let classes = partitions_of(k);
        let index = classes
            .iter()
            .enumerate()
            .map(|(i, p)| (p.parts().to_vec(), i))
            .collect();
        let class_sizes = classes.iter().map(|c| c.class_size()).collect();
        let lambdas = &classes; // same list indexes the irreducibles
        let chars: Vec<Vec<i64>> = lambdas
            .iter()
            .map(|lam| {
                classes
                    .iter()
                    .map(|mu| character(lam, mu).expect("weights match"))
                    .collect()
            })
            .collect();
        let dims = lambdas.iter().map(|l| l.dimension()).collect();
        SymmetricGroup {
            k,
            classes,
            index,
            class_sizes,
            chars,
            dims,
        }
    }

    pub fn degree(&self) -> usize {
        self.k
    }

    /// Cycle types in reverse-lexicographic order; also the irreducible labels.
    pub fn classes(&self) -> &[CycleType] {
        &self.classes
    }

    pub fn class_count(&self) -> usize {
        self.classes.len()
    }

    pub fn class_index(&self, mu: &CycleType) -> Option<usize> {
        self.index.get(mu.parts()).copied()
    }

    pub fn class_size(&self, idx: usize) -> i64 {
        self.class_sizes[idx]
    }

    /// Index of the identity class (1^k).
    pub fn identity_index(&self) -> usize {
        self.classes.len() - 1
    }

    pub fn character_value(&self, lambda_idx: usize, class_idx: usize) -> i64 {
        self.chars[lambda_idx][class_idx]
    }

    pub fn dimension(&self, lambda_idx: usize) -> i64 {
        self.dims[lambda_idx]
    }

    pub fn factorial(&self) -> i64 {
        (1..=self.k as i64).product()
    }
}

static GROUPS: LazyLock<RwLock<HashMap<usize, Arc<SymmetricGroup>>>> =
    LazyLock::new(|| RwLock::new(HashMap::new()));

/// Shared class data for S_k, built once per degree.
pub fn symmetric_group(k: usize) -> Arc<SymmetricGroup> {
    if let Some(g) = GROUPS.read().expect("group cache lock").get(&k) {
        return Arc::clone(g);
    }
    let built = Arc::new(SymmetricGroup::build(k));
    let mut w = GROUPS.write().expect("group cache lock");
    Arc::clone(w.entry(k).or_insert(built))
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn s3_character_table() {
        // classes in reverse-lex order: (3), (2,1), (1,1,1)
        let g = symmetric_group(3);
        let expect = [
            vec![1, 1, 1],   // trivial λ=(3)
            vec![-1, 0, 2],  // standard λ=(2,1)
            vec![1, -1, 1],  // sign λ=(1,1,1)
        ];
        for (li, row) in expect.iter().enumerate() {
            for (ci, &v) in row.iter().enumerate() {
                assert_eq!(g.character_value(li, ci), v, "λ#{li} class#{ci}");
            }
        }
    }

    #[test]
    fn known_values() {
        let sign = Partition::column(3);
        let transposition = Partition::new(vec![2, 1]);
        assert_eq!(character(&sign, &transposition).unwrap(), -1);
        let std = Partition::new(vec![2, 1]);
        assert_eq!(character(&std, &Partition::row(3)).unwrap(), -1);
        for mu in partitions_of(6) {
            assert_eq!(character(&Partition::row(6), &mu).unwrap(), 1);
        }
        assert!(character(&Partition::row(3), &Partition::row(4)).is_err());
    }

    #[test]
    fn first_orthogonality_up_to_7() {
        for k in 1..=7usize {
            let g = symmetric_group(k);
            let fact = g.factorial();
            for a in 0..g.class_count() {
                for b in 0..g.class_count() {
                    let mut sum = 0i64;
                    for c in 0..g.class_count() {
                        sum += g.class_size(c) * g.character_value(a, c) * g.character_value(b, c);
                    }
                    assert_eq!(sum, if a == b { fact } else { 0 }, "k={k} a={a} b={b}");
                }
            }
        }
    }

    #[test]
    fn identity_column_is_hook_dimension() {
        for k in 1..=7usize {
            let g = symmetric_group(k);
            let id = g.identity_index();
            for (li, lam) in g.classes().iter().enumerate() {
                assert_eq!(g.character_value(li, id), lam.dimension(), "λ={lam} k={k}");
            }
        }
    }
}
