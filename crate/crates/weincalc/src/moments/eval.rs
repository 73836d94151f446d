//! Exact moment evaluators for sphere coordinates, reflection entries (via
//! the rank-one matrix P = I − R), and Haar-unitary entries.
//!
//! P-moments come from the closed product formula over balanced exponent
//! matrices; R-moments reduce to P-moments by binomial expansion of the
//! diagonal entries; U-moments are computed two independent ways — the
//! Weingarten sum over S_k × S_k, and a dimension recursion through the
//! reflection decomposition U = R·(V ⊕ 1).

use std::collections::{BTreeMap, HashMap};

use crate::algebra::DENSE_BOUND;
use crate::engine::{pseudo_weingarten, weingarten_rat, WgRoute};
use crate::error::{Error, Result};
use crate::exact::ratfunc::RatFunc;
use crate::exact::rational::{binomial, factorial, rat, Rat};
use crate::exact::scalar::{rising, Scalar};
use crate::moments::query::{canonical_sort, Factor, Idx, MomentQuery, Target};
use crate::sym::character::symmetric_group;
use crate::sym::permutation::Permutation;

/// Default cap on binomial-expansion terms in an R-moment.
pub const R_TERM_BUDGET: u64 = 1_000_000;
/// Default cap on accumulated expansion branches in the recursive U-moment.
pub const U_RECURSIVE_BUDGET: u64 = 10_000_000;

// ---------------------------------------------------------------------------
// Sphere moments

/// E[x₁^{m₁}⋯x_n^{m_n} conj(x₁^{l₁}⋯x_n^{l_n})] for a uniform unit vector:
/// zero unless m = l componentwise, else m₁!⋯m_n!/n^{↑Σm}.
pub fn sphere_moment(m: &[u64], l: &[u64], n: i64) -> Result<Rat> {
    if m.len() != n as usize || l.len() != n as usize {
        return Err(Error::Query(format!(
            "multi-indices must have length n = {n}"
        )));
    }
    if m != l {
        return Ok(<Rat as Scalar>::zero());
    }
    let total: u64 = m.iter().sum();
    let mut num = <Rat as Scalar>::one();
    for &mi in m {
        num *= Rat::from_integer(factorial(mi as usize));
    }
    let den = rising(&rat(n), total as usize);
    Ok(num * Scalar::inverse(&den).expect("positive rising factorial"))
}

// ---------------------------------------------------------------------------
// P-moments: the exponent-matrix product formula

fn factorial_s<S: Scalar>(m: u64) -> S {
    S::from_rat(&Rat::from_integer(factorial(m as usize)))
}

/// Core of the exponent-matrix formula, generic over the index key so the
/// same code serves concrete indices (u32) and formal tokens (`Idx`).
fn moment_p_core<S: Scalar, K: Ord + Copy>(
    a: &BTreeMap<(K, K), u64>,
    b: &BTreeMap<(K, K), u64>,
    n: &S,
    is_dim: impl Fn(&K) -> bool,
) -> Result<S> {
    let mut row_a: BTreeMap<K, u64> = BTreeMap::new();
    let mut col_a: BTreeMap<K, u64> = BTreeMap::new();
    let mut row_b: BTreeMap<K, u64> = BTreeMap::new();
    let mut col_b: BTreeMap<K, u64> = BTreeMap::new();
    let mut sigma_a = 0u64;
    let mut sigma_b = 0u64;
    for (&(r, c), &e) in a {
        *row_a.entry(r).or_default() += e;
        *col_a.entry(c).or_default() += e;
        sigma_a += e;
    }
    for (&(r, c), &e) in b {
        *row_b.entry(r).or_default() += e;
        *col_b.entry(c).or_default() += e;
        sigma_b += e;
    }
    let mut keys: Vec<K> = Vec::new();
    for k in row_a
        .keys()
        .chain(col_a.keys())
        .chain(row_b.keys())
        .chain(col_b.keys())
    {
        if !keys.contains(k) {
            keys.push(*k);
        }
    }
    let mut alpha_dim = 0u64;
    let mut fact_part = S::one();
    for k in keys {
        let get = |m: &BTreeMap<K, u64>| m.get(&k).copied().unwrap_or(0);
        let alpha = get(&col_a) + get(&row_b);
        if alpha != get(&row_a) + get(&col_b) {
            return Ok(S::zero());
        }
        if is_dim(&k) {
            alpha_dim = alpha;
        } else {
            fact_part = fact_part * factorial_s::<S>(alpha);
        }
    }
    let num = fact_part * rising(n, alpha_dim as usize);
    let den = rising(n, sigma_a as usize) * rising(n, sigma_b as usize);
    Ok(num * den.inverse().expect("rising factorial of the dimension is nonzero"))
}

/// Word form of the P-moment: sequences i, j (plain factors) and i′, j′
/// (conjugated factors). Vanishes unless i ⊔ j′ is a permutation of j ⊔ i′;
/// otherwise the multiplicities give the α's directly.
fn moment_p_words_core<S: Scalar, K: Ord + Copy>(
    i: &[K],
    j: &[K],
    ip: &[K],
    jp: &[K],
    n: &S,
    is_dim: impl Fn(&K) -> bool,
) -> Result<S> {
    if i.len() != j.len() || ip.len() != jp.len() {
        return Err(Error::Query(
            "row and column words must have equal length".into(),
        ));
    }
    let mut left: BTreeMap<K, u64> = BTreeMap::new();
    let mut right: BTreeMap<K, u64> = BTreeMap::new();
    for k in i.iter().chain(jp.iter()) {
        *left.entry(*k).or_default() += 1;
    }
    for k in j.iter().chain(ip.iter()) {
        *right.entry(*k).or_default() += 1;
    }
    if left != right {
        return Ok(S::zero());
    }
    let mut alpha_dim = 0u64;
    let mut fact_part = S::one();
    for (k, alpha) in &left {
        if is_dim(k) {
            alpha_dim = *alpha;
        } else {
            fact_part = fact_part * factorial_s::<S>(*alpha);
        }
    }
    let num = fact_part * rising(n, alpha_dim as usize);
    let den = rising(n, i.len()) * rising(n, ip.len());
    Ok(num * den.inverse().expect("rising factorial of the dimension is nonzero"))
}

/// Word-form P-moment at a concrete dimension.
pub fn moment_p_words_rat(i: &[Idx], j: &[Idx], ip: &[Idx], jp: &[Idx], n: i64) -> Result<Rat> {
    let res = |w: &[Idx]| -> Result<Vec<u32>> { w.iter().map(|x| x.resolve(n)).collect() };
    moment_p_words_core(&res(i)?, &res(j)?, &res(ip)?, &res(jp)?, &rat(n), |k| {
        *k as i64 == n
    })
}

/// Word-form P-moment of the formal dimension (tokens treated as distinct).
pub fn moment_p_words_sym(i: &[Idx], j: &[Idx], ip: &[Idx], jp: &[Idx]) -> Result<RatFunc> {
    moment_p_words_core(i, j, ip, jp, &RatFunc::var(), |k| *k == Idx::Hi(0))
}

// ---------------------------------------------------------------------------
// R-moments: binomial reduction to P-moments

struct PrParts<K> {
    a: BTreeMap<(K, K), u64>,
    b: BTreeMap<(K, K), u64>,
    diag: Vec<(K, u64, bool)>,
    negate: bool,
}

fn split_pr_factors<K: Ord + Copy>(
    factors: &[Factor],
    mut key: impl FnMut(&Idx) -> Result<K>,
) -> Result<PrParts<K>> {
    let mut parts = PrParts {
        a: BTreeMap::new(),
        b: BTreeMap::new(),
        diag: Vec::new(),
        negate: false,
    };
    let mut sign_flips = 0u64;
    for f in factors {
        let row = key(&f.row)?;
        let col = key(&f.col)?;
        let e = f.power as u64;
        match f.target {
            Target::U => {
                return Err(Error::Query(
                    "u-entries are not part of a p/r moment".into(),
                ))
            }
            Target::P => {
                let side = if f.conj { &mut parts.b } else { &mut parts.a };
                *side.entry((row, col)).or_default() += e;
            }
            Target::R => {
                if row == col {
                    parts.diag.push((row, e, f.conj));
                } else {
                    // off-diagonal r_ij = −p_ij exactly
                    sign_flips += e;
                    let side = if f.conj { &mut parts.b } else { &mut parts.a };
                    *side.entry((row, col)).or_default() += e;
                }
            }
        }
    }
    parts.negate = sign_flips % 2 == 1;
    Ok(parts)
}

fn moment_r_core<S: Scalar, K: Ord + Copy>(
    parts: &PrParts<K>,
    n: &S,
    is_dim: impl Fn(&K) -> bool + Copy,
    budget: u64,
) -> Result<S> {
    let mut term_count: u128 = 1;
    for (_, e, _) in &parts.diag {
        term_count = term_count.saturating_mul(*e as u128 + 1);
        if term_count > budget as u128 {
            return Err(Error::TermBudget { limit: budget });
        }
    }
    // mixed-radix enumeration of binomial choices for each diagonal factor
    let radices: Vec<u64> = parts.diag.iter().map(|(_, e, _)| e + 1).collect();
    let mut counter = vec![0u64; radices.len()];
    let mut acc = S::zero();
    loop {
        let mut coeff = Rat::from_integer(1.into());
        let mut a = parts.a.clone();
        let mut b = parts.b.clone();
        for (slot, &c) in counter.iter().enumerate() {
            let (s, e, conj) = parts.diag[slot];
            let mut w = Rat::from_integer(binomial(e as usize, c as usize));
            if c % 2 == 1 {
                w = -w;
            }
            coeff *= w;
            if c > 0 {
                let side = if conj { &mut b } else { &mut a };
                *side.entry((s, s)).or_default() += c;
            }
        }
        let value = moment_p_core(&a, &b, n, is_dim)?;
        acc = acc + S::from_rat(&coeff) * value;
        // increment
        let mut slot = 0;
        loop {
            if slot == counter.len() {
                let result = if parts.negate { -acc } else { acc };
                return Ok(result);
            }
            counter[slot] += 1;
            if counter[slot] < radices[slot] {
                break;
            }
            counter[slot] = 0;
            slot += 1;
        }
    }
}

// ---------------------------------------------------------------------------
// Public p/r evaluators

/// Exact value of a p/r query at a concrete dimension.
pub fn moment_pr_rat(q: &MomentQuery, n: i64) -> Result<Rat> {
    moment_pr_rat_with_budget(q, n, R_TERM_BUDGET)
}

pub fn moment_pr_rat_with_budget(q: &MomentQuery, n: i64, budget: u64) -> Result<Rat> {
    if n < 1 {
        return Err(Error::Domain(format!("dimension must be >= 1, got {n}")));
    }
    let parts = split_pr_factors(q.factors(), |idx| idx.resolve(n))?;
    moment_r_core(&parts, &rat(n), |k: &u32| *k as i64 == n, budget)
}

/// Exact value of a p/r query as a rational function of the dimension.
pub fn moment_pr_sym(q: &MomentQuery) -> Result<RatFunc> {
    moment_pr_sym_with_budget(q, R_TERM_BUDGET)
}

pub fn moment_pr_sym_with_budget(q: &MomentQuery, budget: u64) -> Result<RatFunc> {
    let parts = split_pr_factors(q.factors(), |idx| Ok(*idx))?;
    moment_r_core(&parts, &RatFunc::var(), |k: &Idx| *k == Idx::Hi(0), budget)
}

/// Dispatches a query on its target family (U goes through the Weingarten
/// sum; p/r through the product formula).
pub fn moment_rat(q: &MomentQuery, n: i64) -> Result<Rat> {
    match q.target()? {
        Target::U => moment_u_weingarten(q, n),
        _ => moment_pr_rat(q, n),
    }
}

/// Symbolic dispatch; U-moments need a concrete dimension.
pub fn moment_sym(q: &MomentQuery) -> Result<RatFunc> {
    match q.target()? {
        Target::U => Err(Error::Query(
            "u-moments need a concrete dimension; pass -n".into(),
        )),
        _ => moment_pr_sym(q),
    }
}

/// E[r_{1σ(1)}⋯r_{kσ(k)}] by the fixed-point closed form, valid for k < n.
pub fn permutation_r_moment(sigma: &Permutation, n: i64) -> Result<Rat> {
    let k = sigma.degree();
    if (k as i64) >= n {
        return Err(Error::Domain(format!(
            "permutation r-moment needs k < n, got k={k}, n={n}"
        )));
    }
    let fix = sigma.fixed_points();
    let n_rat = rat(n);
    let mut acc = <Rat as Scalar>::zero();
    for t in 0..=fix {
        let mut term = Rat::from_integer(binomial(fix, t))
            * Scalar::inverse(&rising(&n_rat, k - t)).expect("positive rising factorial");
        if (k - t) % 2 == 1 {
            term = -term;
        }
        acc += term;
    }
    Ok(acc)
}

// ---------------------------------------------------------------------------
// U-moments, route 1: the Weingarten sum

type EntryWords = (Vec<(u32, u32)>, Vec<(u32, u32)>);

fn u_unit_factors(q: &MomentQuery, n: i64) -> Result<EntryWords> {
    let mut plain = Vec::new();
    let mut conj = Vec::new();
    for f in q.factors() {
        if f.target != Target::U {
            return Err(Error::Query("expected a pure u-query".into()));
        }
        let row = f.row.resolve(n)?;
        let col = f.col.resolve(n)?;
        for _ in 0..f.power {
            if f.conj {
                conj.push((row, col));
            } else {
                plain.push((row, col));
            }
        }
    }
    Ok((plain, conj))
}

/// All bijections σ of positions with source[σ(a)] = target[a], as image
/// vectors (0-based positions).
fn value_matchings(source: &[u32], target: &[u32]) -> Vec<Vec<usize>> {
    let k = source.len();
    let mut used = vec![false; k];
    let mut current = vec![0usize; k];
    let mut out = Vec::new();
    fn rec(
        a: usize,
        source: &[u32],
        target: &[u32],
        used: &mut [bool],
        current: &mut [usize],
        out: &mut Vec<Vec<usize>>,
    ) {
        if a == target.len() {
            out.push(current.to_vec());
            return;
        }
        for p in 0..source.len() {
            if !used[p] && source[p] == target[a] {
                used[p] = true;
                current[a] = p;
                rec(a + 1, source, target, used, current, out);
                used[p] = false;
            }
        }
    }
    rec(0, source, target, &mut used, &mut current, &mut out);
    out
}

/// U-moment by the Weingarten sum over matching pairs (σ, τ), with the
/// pseudo-Weingarten standing in when the degree exceeds the dimension.
pub fn moment_u_weingarten(q: &MomentQuery, n: i64) -> Result<Rat> {
    if n < 1 {
        return Err(Error::Domain(format!("dimension must be >= 1, got {n}")));
    }
    let (plain, conj) = u_unit_factors(q, n)?;
    if plain.len() != conj.len() {
        return Ok(<Rat as Scalar>::zero());
    }
    let k = plain.len();
    if k == 0 {
        return Ok(<Rat as Scalar>::one());
    }
    if k > DENSE_BOUND {
        return Err(Error::DenseBound { k, bound: DENSE_BOUND });
    }
    let rows: Vec<u32> = plain.iter().map(|&(r, _)| r).collect();
    let cols: Vec<u32> = plain.iter().map(|&(_, c)| c).collect();
    let rows_c: Vec<u32> = conj.iter().map(|&(r, _)| r).collect();
    let cols_c: Vec<u32> = conj.iter().map(|&(_, c)| c).collect();
    let sigmas = value_matchings(&rows, &rows_c);
    if sigmas.is_empty() {
        return Ok(<Rat as Scalar>::zero());
    }
    let taus = value_matchings(&cols, &cols_c);
    if taus.is_empty() {
        return Ok(<Rat as Scalar>::zero());
    }
    let wg = if (k as i64) <= n {
        weingarten_rat(k, n, WgRoute::CharacterExpansion)?
    } else {
        pseudo_weingarten(k, n)?
    };
    let group = symmetric_group(k);
    let mut counts = vec![0i64; group.class_count()];
    let tau_inverses: Vec<Vec<usize>> = taus
        .iter()
        .map(|t| {
            let mut inv = vec![0usize; k];
            for (a, &p) in t.iter().enumerate() {
                inv[p] = a;
            }
            inv
        })
        .collect();
    for sigma in &sigmas {
        for tau_inv in &tau_inverses {
            // στ⁻¹ as a cycle structure, counted per class
            let mut seen = vec![false; k];
            let mut lens: Vec<u32> = Vec::new();
            for start in 0..k {
                if seen[start] {
                    continue;
                }
                let mut len = 0u32;
                let mut cur = start;
                while !seen[cur] {
                    seen[cur] = true;
                    cur = sigma[tau_inv[cur]];
                    len += 1;
                }
                lens.push(len);
            }
            let ct = crate::sym::partition::Partition::new(lens);
            counts[group.class_index(&ct).expect("cycle type of S_k")] += 1;
        }
    }
    let mut acc = <Rat as Scalar>::zero();
    for (ci, &count) in counts.iter().enumerate() {
        if count != 0 {
            acc += rat(count) * wg.value_at_index(ci);
        }
    }
    Ok(acc)
}

// ---------------------------------------------------------------------------
// U-moments, route 2: recursion through the reflection decomposition

type RecursiveKey = (i64, Vec<(u32, u32, bool)>);

struct RecursiveCtx {
    memo: HashMap<RecursiveKey, Rat>,
    used: u64,
    budget: u64,
}

/// U-moment by the dimension recursion: split U = R·(V ⊕ 1), evaluate the
/// reflection factor exactly, and recurse on the (n−1)-dimensional moment.
pub fn moment_u_recursive(q: &MomentQuery, n: i64) -> Result<Rat> {
    moment_u_recursive_with_budget(q, n, U_RECURSIVE_BUDGET)
}

pub fn moment_u_recursive_with_budget(q: &MomentQuery, n: i64, budget: u64) -> Result<Rat> {
    if n < 1 {
        return Err(Error::Domain(format!("dimension must be >= 1, got {n}")));
    }
    let (plain, conj) = u_unit_factors(q, n)?;
    let mut factors: Vec<(u32, u32, bool)> = plain.iter().map(|&(r, c)| (r, c, false)).collect();
    factors.extend(conj.iter().map(|&(r, c)| (r, c, true)));
    let mut ctx = RecursiveCtx {
        memo: HashMap::new(),
        used: 0,
        budget,
    };
    u_recurse(&factors, n, &mut ctx)
}

fn u_recurse(factors: &[(u32, u32, bool)], n: i64, ctx: &mut RecursiveCtx) -> Result<Rat> {
    let plain = factors.iter().filter(|f| !f.2).count();
    let conj = factors.len() - plain;
    if plain != conj {
        return Ok(<Rat as Scalar>::zero());
    }
    if n == 1 {
        // a single uniform phase: equal degrees integrate to 1
        return Ok(<Rat as Scalar>::one());
    }
    let mut key_factors = factors.to_vec();
    key_factors.sort_unstable();
    let key = (n, key_factors);
    if let Some(v) = ctx.memo.get(&key) {
        return Ok(v.clone());
    }

    let nu = n as u32;
    // column n entries are reflection entries outright; the rest expand over
    // an intermediate index p < n
    let fixed: Vec<(u32, u32, bool)> = factors
        .iter()
        .copied()
        .filter(|&(_, c, _)| c == nu)
        .collect();
    let expand: Vec<(u32, u32, bool)> = factors
        .iter()
        .copied()
        .filter(|&(_, c, _)| c != nu)
        .collect();
    let branches = (n as u128 - 1).pow(expand.len() as u32);
    ctx.used = ctx.used.saturating_add(branches.min(u64::MAX as u128) as u64);
    if ctx.used > ctx.budget {
        return Err(Error::TermBudget { limit: ctx.budget });
    }

    let mut acc = <Rat as Scalar>::zero();
    let mut assignment = vec![1u32; expand.len()];
    loop {
        // reflection moment at dimension n for this assignment
        let mut r_entries: Vec<Factor> = Vec::with_capacity(factors.len());
        for &(row, _, cj) in &fixed {
            r_entries.push(Factor {
                target: Target::R,
                row: Idx::Lo(row),
                col: Idx::Lo(nu),
                conj: cj,
                power: 1,
            });
        }
        for (slot, &(row, _, cj)) in expand.iter().enumerate() {
            r_entries.push(Factor {
                target: Target::R,
                row: Idx::Lo(row),
                col: Idx::Lo(assignment[slot]),
                conj: cj,
                power: 1,
            });
        }
        let parts = split_pr_factors(&r_entries, |idx| idx.resolve(n))?;
        let r_val = moment_r_core(&parts, &rat(n), |k: &u32| *k as i64 == n, R_TERM_BUDGET)?;
        if !Scalar::is_zero(&r_val) {
            let v_factors: Vec<(u32, u32, bool)> = expand
                .iter()
                .enumerate()
                .map(|(slot, &(_, col, cj))| (assignment[slot], col, cj))
                .collect();
            let v_val = u_recurse(&v_factors, n - 1, ctx)?;
            acc += r_val * v_val;
        }
        // next assignment in [1, n-1]^|expand|
        let mut slot = 0;
        loop {
            if slot == assignment.len() {
                ctx.memo.insert(key, acc.clone());
                return Ok(acc);
            }
            assignment[slot] += 1;
            if assignment[slot] < nu {
                break;
            }
            assignment[slot] = 1;
            slot += 1;
        }
    }
}

/// Canonical text for a factor list (used by reports and memo diagnostics).
pub fn canonical_query(mut factors: Vec<Factor>) -> MomentQuery {
    canonical_sort(&mut factors);
    MomentQuery::new(factors)
}
