//! Named verification suites over the engine's identities. Each suite runs a
//! batch of exact checks and reports one pass/fail line per instance; the CLI
//! `verify` subcommand and the acceptance tests are thin wrappers around
//! these.

use std::collections::BTreeMap;

use rand::rngs::StdRng;
use rand::{Rng, SeedableRng};

use crate::algebra::ClassFunction;
use crate::engine::{
    ascension, descension, gram_function, pseudo_weingarten, shift_dimension, weingarten_rat,
    weingarten_sym, WgRoute,
};
use crate::error::{Error, Result};
use crate::exact::ratfunc::RatFunc;
use crate::exact::rational::{factorial, rat, Rat};
use crate::exact::scalar::{rising, Scalar};
use crate::moments::eval::{moment_pr_rat, moment_u_recursive, moment_u_weingarten, permutation_r_moment};
use crate::moments::query::{Factor, Idx, MomentQuery, Target};
use crate::sym::permutation::all_permutations;

/// One verified identity instance.
#[derive(Clone, Debug)]
pub struct Check {
    pub name: String,
    pub pass: bool,
    pub detail: String,
}

impl Check {
    fn ok(name: impl Into<String>, detail: impl Into<String>) -> Self {
        Check {
            name: name.into(),
            pass: true,
            detail: detail.into(),
        }
    }

    fn fail(name: impl Into<String>, detail: impl Into<String>) -> Self {
        Check {
            name: name.into(),
            pass: false,
            detail: detail.into(),
        }
    }

    fn eq<T: PartialEq + std::fmt::Debug>(name: impl Into<String>, got: T, expected: T) -> Self {
        if got == expected {
            Check::ok(name, format!("{expected:?}"))
        } else {
            Check::fail(name, format!("got {got:?}, expected {expected:?}"))
        }
    }
}

/// Bound overrides for a suite run; suites fill in their own defaults.
#[derive(Clone, Copy, Debug, Default)]
pub struct VerifyOptions {
    pub k_max: Option<usize>,
    pub n_max: Option<i64>,
    pub count: Option<usize>,
    pub seed: Option<u64>,
}

pub const SUITE_NAMES: &[&str] = &[
    "recursion",
    "descension",
    "routes",
    "pseudo",
    "negative-control",
    "moments",
    "bridge",
    "u-routes",
];

/// Runs one named suite.
pub fn run_suite(name: &str, opts: &VerifyOptions) -> Result<Vec<Check>> {
    match name {
        "recursion" => Ok(recursion_suite(opts)),
        "descension" => Ok(descension_suite(opts)),
        "routes" => Ok(routes_suite(opts)),
        "pseudo" => Ok(pseudo_suite(opts)),
        "negative-control" => Ok(negative_control_suite()),
        "moments" => Ok(moments_suite(opts)),
        "bridge" => Ok(bridge_suite(opts)),
        "u-routes" => Ok(u_routes_suite(opts)),
        other => Err(Error::Query(format!(
            "unknown suite '{other}'; known suites: {}",
            SUITE_NAMES.join(", ")
        ))),
    }
}

/// Runs every suite in declaration order.
pub fn run_all(opts: &VerifyOptions) -> Vec<(String, Vec<Check>)> {
    SUITE_NAMES
        .iter()
        .map(|name| {
            (
                name.to_string(),
                run_suite(name, opts).expect("known suite"),
            )
        })
        .collect()
}

/// Wg_{k,n} = Raise_{k,n} * Wg_{k,n−1} for all k < n in range, plus the
/// symbolic form for small k.
fn recursion_suite(opts: &VerifyOptions) -> Vec<Check> {
    let k_max = opts.k_max.unwrap_or(5);
    let n_max = opts.n_max.unwrap_or(8);
    let mut out = Vec::new();
    for k in 1..=k_max {
        for n in (k as i64 + 1)..=n_max {
            let lhs = weingarten_rat(k, n, WgRoute::CharacterExpansion).expect("k <= n");
            let rhs = ascension(k, &rat(n))
                .expect("n >= 1")
                .convolve(&weingarten_rat(k, n - 1, WgRoute::CharacterExpansion).expect("k <= n-1"))
                .expect("same degree");
            out.push(Check::eq(
                format!("recursion k={k} n={n}"),
                lhs.values().to_vec(),
                rhs.values().to_vec(),
            ));
        }
    }
    let sym_cap = k_max.min(4);
    for k in 1..=sym_cap {
        let n = RatFunc::var();
        let lhs = weingarten_sym(k, WgRoute::CharacterExpansion).expect("symbolic");
        let rhs = ascension(k, &n)
            .expect("symbolic")
            .convolve(&shift_dimension(&lhs, -1))
            .expect("same degree");
        out.push(Check::eq(
            format!("recursion symbolic k={k}"),
            lhs.values().to_vec(),
            rhs.values().to_vec(),
        ));
    }
    out
}

/// Raise_{k,n+1} * Lower_{k,n} = δ and Wg_{k,n} = Lower_{k,n} * Wg_{k,n+1}.
fn descension_suite(opts: &VerifyOptions) -> Vec<Check> {
    let k_max = opts.k_max.unwrap_or(5);
    let n_max = opts.n_max.unwrap_or(7);
    let mut out = Vec::new();
    for k in 1..=k_max {
        for n in k as i64..=n_max {
            let raise = ascension(k, &rat(n + 1)).expect("n+1 >= 1");
            let lower = descension(k, &rat(n)).expect("k <= n");
            out.push(Check::eq(
                format!("inverse pair k={k} n={n}"),
                raise.convolve(&lower).expect("same degree").values().to_vec(),
                ClassFunction::<Rat>::dirac(k).values().to_vec(),
            ));
            let lhs = weingarten_rat(k, n, WgRoute::CharacterExpansion).expect("k <= n");
            let rhs = lower
                .convolve(&weingarten_rat(k, n + 1, WgRoute::CharacterExpansion).expect("k <= n+1"))
                .expect("same degree");
            out.push(Check::eq(
                format!("descent k={k} n={n}"),
                lhs.values().to_vec(),
                rhs.values().to_vec(),
            ));
        }
    }
    out
}

/// The three Weingarten routes agree exactly, numerically and symbolically.
fn routes_suite(opts: &VerifyOptions) -> Vec<Check> {
    let k_max = opts.k_max.unwrap_or(5);
    let n_max = opts.n_max.unwrap_or(8);
    let mut out = Vec::new();
    for k in 1..=k_max {
        for n in k as i64..=n_max {
            let a = weingarten_rat(k, n, WgRoute::CharacterExpansion).expect("k <= n");
            let b = weingarten_rat(k, n, WgRoute::GramInverse).expect("k <= n");
            let c = weingarten_rat(k, n, WgRoute::RecursiveAscension).expect("k <= n");
            let pass = a == b && a == c;
            out.push(if pass {
                Check::ok(format!("routes k={k} n={n}"), format!("{a:?}"))
            } else {
                Check::fail(
                    format!("routes k={k} n={n}"),
                    format!("char={a:?} gram={b:?} ladder={c:?}"),
                )
            });
        }
    }
    for k in 1..=k_max.min(4) {
        let a = weingarten_sym(k, WgRoute::CharacterExpansion).expect("symbolic");
        let b = weingarten_sym(k, WgRoute::GramInverse).expect("symbolic");
        let c = weingarten_sym(k, WgRoute::RecursiveAscension).expect("symbolic");
        let pass = a == b && a == c;
        out.push(if pass {
            Check::ok(format!("routes symbolic k={k}"), format!("{a:?}"))
        } else {
            Check::fail(
                format!("routes symbolic k={k}"),
                format!("char={a:?} gram={b:?} recursive={c:?}"),
            )
        });
    }
    out
}

/// G*W*G = G and W*G*W = W for the canonical pseudo-Weingarten.
fn pseudo_suite(opts: &VerifyOptions) -> Vec<Check> {
    let pairs: Vec<(usize, i64)> = match (opts.k_max, opts.n_max) {
        (Some(k), Some(n)) => vec![(k, n)],
        _ => vec![(3, 2), (4, 2), (4, 3)],
    };
    let mut out = Vec::new();
    for (k, n) in pairs {
        let g = gram_function(k, &rat(n));
        let w = match pseudo_weingarten(k, n) {
            Ok(w) => w,
            Err(e) => {
                out.push(Check::fail(format!("pseudo k={k} n={n}"), e.to_string()));
                continue;
            }
        };
        let gwg = g
            .convolve(&w)
            .and_then(|x| x.convolve(&g))
            .expect("same degree");
        out.push(Check::eq(
            format!("G*W*G = G k={k} n={n}"),
            gwg.values().to_vec(),
            g.values().to_vec(),
        ));
        let wgw = w
            .convolve(&g)
            .and_then(|x| x.convolve(&w))
            .expect("same degree");
        out.push(Check::eq(
            format!("W*G*W = W k={k} n={n}"),
            wgw.values().to_vec(),
            w.values().to_vec(),
        ));
        if k as i64 <= n {
            out.push(Check::eq(
                format!("W = Wg on k={k} n={n}"),
                w.values().to_vec(),
                weingarten_rat(k, n, WgRoute::CharacterExpansion)
                    .expect("k <= n")
                    .values()
                    .to_vec(),
            ));
        }
    }
    out
}

/// The dimension recursion is false at k = n: reproduce the 1/12 ≠ 1/3
/// counterexample.
fn negative_control_suite() -> Vec<Check> {
    let raise = ascension(2, &rat(2)).expect("n >= 1");
    let w21 = pseudo_weingarten(2, 1).expect("valid");
    let wrong = raise.convolve(&w21).expect("same degree");
    let at_identity = wrong
        .value(&"1,1".parse().expect("cycle type"))
        .expect("class of S_2")
        .clone();
    let right = weingarten_rat(2, 2, WgRoute::CharacterExpansion).expect("k <= n");
    let right_val = right
        .value(&"1,1".parse().expect("cycle type"))
        .expect("class of S_2")
        .clone();
    let mut out = vec![
        Check::eq("Raise_{2,2}*w_{2,1} at identity", at_identity.clone(), crate::exact::rational::ratio(1, 12)),
        Check::eq("Wg_{2,2} at identity", right_val.clone(), crate::exact::rational::ratio(1, 3)),
    ];
    out.push(if at_identity != right_val {
        Check::ok("counterexample distinguishes", "1/12 != 1/3")
    } else {
        Check::fail("counterexample distinguishes", "values coincide")
    });
    out
}

// ---------------------------------------------------------------------------
// Closed-form references for the diagonal reflection moments. These are the
// displayed formulas, coded directly from their statements; the general
// evaluator must reproduce them term for term.

fn word_alphas(
    i: &[u32],
    j: &[u32],
    ip: &[u32],
    jp: &[u32],
) -> Option<BTreeMap<u32, u64>> {
    let mut left: BTreeMap<u32, u64> = BTreeMap::new();
    let mut right: BTreeMap<u32, u64> = BTreeMap::new();
    for v in i.iter().chain(jp.iter()) {
        *left.entry(*v).or_default() += 1;
    }
    for v in j.iter().chain(ip.iter()) {
        *right.entry(*v).or_default() += 1;
    }
    if left == right {
        Some(left)
    } else {
        None
    }
}

fn alpha_prefactor(alphas: &BTreeMap<u32, u64>, n: i64) -> (Rat, u64) {
    let mut fact_part = <Rat as Scalar>::one();
    let mut alpha_n = 0u64;
    for (&idx, &alpha) in alphas {
        if idx as i64 == n {
            alpha_n = alpha;
        } else {
            fact_part *= Rat::from_integer(factorial(alpha as usize));
        }
    }
    (fact_part, alpha_n)
}

/// Closed form for E[p-word × r_ss^q].
fn closed_form_single_diagonal(
    i: &[u32],
    j: &[u32],
    ip: &[u32],
    jp: &[u32],
    s: u32,
    q: u64,
    n: i64,
) -> Rat {
    let Some(alphas) = word_alphas(i, j, ip, jp) else {
        return <Rat as Scalar>::zero();
    };
    let (fact_part, alpha_n) = alpha_prefactor(&alphas, n);
    let m = i.len();
    let l = ip.len();
    let nr = rat(n);
    let denom = rising(&nr, m + q as usize) * rising(&nr, l);
    let alpha_s = alphas.get(&s).copied().unwrap_or(0);
    let tail = if (s as i64) < n {
        rising(&rat(n + m as i64 - alpha_s as i64 - 1), q as usize)
    } else {
        rising(&rat(m as i64 - alpha_n as i64), q as usize)
    };
    fact_part * rising(&nr, alpha_n as usize) * Scalar::inverse(&denom).expect("nonzero") * tail
}

/// Closed form for E[p-word × |r_ss|²].
fn closed_form_squared_diagonal(
    i: &[u32],
    j: &[u32],
    ip: &[u32],
    jp: &[u32],
    s: u32,
    n: i64,
) -> Rat {
    let Some(alphas) = word_alphas(i, j, ip, jp) else {
        return <Rat as Scalar>::zero();
    };
    let (fact_part, alpha_n) = alpha_prefactor(&alphas, n);
    let m = i.len() as i64;
    let l = ip.len() as i64;
    let nr = rat(n);
    let denom = rising(&nr, m as usize + 1) * rising(&nr, l as usize + 1);
    let alpha_s = alphas.get(&s).copied().unwrap_or(0) as i64;
    let tail = if (s as i64) < n {
        rat((n + m) * (n + l) - (alpha_s + 1) * (2 * n + m + l) + (alpha_s + 1) * (alpha_s + 2))
    } else {
        let an = alpha_n as i64;
        rat(n + (m - an) * (l - an) + an)
    };
    fact_part * rising(&nr, alpha_n as usize) * Scalar::inverse(&denom).expect("nonzero") * tail
}

fn p_word_factors(i: &[u32], j: &[u32], ip: &[u32], jp: &[u32]) -> Vec<Factor> {
    let tok = |w: &[u32]| -> Vec<Idx> { w.iter().map(|&v| Idx::Lo(v)).collect() };
    MomentQuery::from_words(Target::P, &tok(i), &tok(j), &tok(ip), &tok(jp))
        .expect("equal word lengths")
        .factors()
        .to_vec()
}

/// Worked moment formulas and randomized closed-form comparisons.
fn moments_suite(opts: &VerifyOptions) -> Vec<Check> {
    let count = opts.count.unwrap_or(200);
    let seed = opts.seed.unwrap_or(2024);
    let mut out = Vec::new();

    // the three worked P-moment examples, symbolically
    let sym = |text: &str| {
        crate::moments::eval::moment_pr_sym(&MomentQuery::parse(text).expect("query"))
            .expect("evaluates")
    };
    out.push(Check::eq(
        "E[|p11|^4 |pnn|^2]",
        sym("p[1,1]^2 p[n,n] p~[1,1]^2 p~[n,n]").to_string(),
        "24/(n*(n+1)*(n+2)^2)".to_string(),
    ));
    out.push(Check::eq(
        "E[p12^2 pn1^2 pnn^3 conj(pn2)^2]",
        sym("p[1,2]^2 p[n,1]^2 p[n,n]^3 p~[n,2]^2").to_string(),
        "4/(n*(n+1)*(n+5)*(n+6))".to_string(),
    ));
    out.push(Check::eq(
        "E[p12 p21 pnn^4 conj(p33^2 pnn^3)]",
        sym("p[1,2] p[2,1] p[n,n]^4 p~[3,3]^2 p~[n,n]^3").to_string(),
        "2*(n+6)/(n*(n+1)*(n+2)*(n+3)*(n+4))".to_string(),
    ));

    // E[|p11 ⋯ pkk|^2] = 2^k/(n^{↑k})² for k ≤ 4
    for k in 1..=4u32 {
        let text: Vec<String> = (1..=k)
            .flat_map(|idx| [format!("p[{idx},{idx}]"), format!("p~[{idx},{idx}]")])
            .collect();
        let got = sym(&text.join(" "));
        let up = rising(&RatFunc::var(), k as usize);
        let expected = RatFunc::from_int(1 << k) * (up.clone() * up).inverse().expect("nonzero");
        out.push(Check::eq(
            format!("E[|p11..p{k}{k}|^2] diagonal product"),
            got,
            expected,
        ));
    }

    // diagonal powers of R, both branches
    for q in 1..=3u32 {
        let got = sym(&format!("r[1,1]^{q}"));
        let nv = RatFunc::var();
        let expected = (nv.clone() - RatFunc::one())
            * (nv + RatFunc::from_int(q as i64 - 1)).inverse().expect("nonzero");
        out.push(Check::eq(format!("E[r_ss^{q}], s<n"), got, expected));
        out.push(Check::eq(
            format!("E[r_nn^{q}] vanishes"),
            sym(&format!("r[n,n]^{q}")).is_zero(),
            true,
        ));
    }
    out.push(Check::eq(
        "E[|r11 rnn|^2]",
        sym("r[1,1] r~[1,1] r[n,n] r~[n,n]").to_string(),
        "(n^2 - n + 2)/(n^2*(n+1))".to_string(),
    ));

    // randomized closed-form comparisons
    let mut rng = StdRng::seed_from_u64(seed);
    let mut single_fail = 0usize;
    let mut squared_fail = 0usize;
    for trial in 0..count {
        let n = rng.random_range(2..=7i64);
        let m = rng.random_range(0..=4usize);
        let l = rng.random_range(0..=4usize);
        let word = |len: usize, rng: &mut StdRng| -> Vec<u32> {
            (0..len).map(|_| rng.random_range(1..=n as u32)).collect()
        };
        let (i, j) = (word(m, &mut rng), word(m, &mut rng));
        let (ipr, jpr) = (word(l, &mut rng), word(l, &mut rng));
        let s = rng.random_range(1..=n as u32);
        if trial % 2 == 0 {
            let q = rng.random_range(1..=4u32);
            let mut factors = p_word_factors(&i, &j, &ipr, &jpr);
            factors.push(Factor {
                target: Target::R,
                row: Idx::Lo(s),
                col: Idx::Lo(s),
                conj: false,
                power: q,
            });
            let got = moment_pr_rat(&MomentQuery::new(factors), n).expect("evaluates");
            let expected = closed_form_single_diagonal(&i, &j, &ipr, &jpr, s, q as u64, n);
            if got != expected {
                single_fail += 1;
            }
        } else {
            let mut factors = p_word_factors(&i, &j, &ipr, &jpr);
            factors.push(Factor {
                target: Target::R,
                row: Idx::Lo(s),
                col: Idx::Lo(s),
                conj: false,
                power: 1,
            });
            factors.push(Factor {
                target: Target::R,
                row: Idx::Lo(s),
                col: Idx::Lo(s),
                conj: true,
                power: 1,
            });
            let got = moment_pr_rat(&MomentQuery::new(factors), n).expect("evaluates");
            let expected = closed_form_squared_diagonal(&i, &j, &ipr, &jpr, s, n);
            if got != expected {
                squared_fail += 1;
            }
        }
    }
    out.push(if single_fail == 0 {
        Check::ok(
            format!("randomized single-diagonal closed form x{}", count.div_ceil(2)),
            "all agree",
        )
    } else {
        Check::fail(
            "randomized single-diagonal closed form",
            format!("{single_fail} mismatches"),
        )
    });
    out.push(if squared_fail == 0 {
        Check::ok(
            format!("randomized squared-diagonal closed form x{}", count / 2),
            "all agree",
        )
    } else {
        Check::fail(
            "randomized squared-diagonal closed form",
            format!("{squared_fail} mismatches"),
        )
    });
    out
}

/// Permutation reflection moments equal the ascension function — the bridge
/// that powers the dimension recursion.
fn bridge_suite(opts: &VerifyOptions) -> Vec<Check> {
    let k_max = opts.k_max.unwrap_or(5);
    let n_max = opts.n_max.unwrap_or(8);
    let mut out = Vec::new();
    for k in 1..=k_max {
        for n in (k as i64 + 1)..=n_max {
            let raise = ascension(k, &rat(n)).expect("n >= 1");
            let mut mismatches = Vec::new();
            for sigma in all_permutations(k) {
                let direct = permutation_r_moment(&sigma, n).expect("k < n");
                let from_class = raise.value_of(&sigma).expect("degree matches").clone();
                if direct != from_class {
                    mismatches.push(sigma.to_string());
                }
            }
            out.push(if mismatches.is_empty() {
                Check::ok(
                    format!("bridge k={k} n={n}"),
                    format!("all {} permutations agree", factorial(k)),
                )
            } else {
                Check::fail(
                    format!("bridge k={k} n={n}"),
                    format!("mismatch at {}", mismatches.join(", ")),
                )
            });
        }
    }
    out
}

/// The recursive and Weingarten U-moment routes agree, including the two
/// worked degree-2 moments on the trailing 2×2 block.
fn u_routes_suite(opts: &VerifyOptions) -> Vec<Check> {
    let dims: Vec<i64> = match opts.n_max {
        Some(n) => vec![n],
        None => vec![3, 4],
    };
    let mut out = Vec::new();
    for n in dims {
        let entries = [(Idx::Hi(1), Idx::Hi(1)), (Idx::Hi(1), Idx::Hi(0)), (Idx::Hi(0), Idx::Hi(1)), (Idx::Hi(0), Idx::Hi(0))];
        // all degree-1 and degree-2 queries over the trailing 2×2 block
        let mut queries: Vec<Vec<Factor>> = Vec::new();
        let factor = |(row, col): (Idx, Idx), conj: bool| Factor {
            target: Target::U,
            row,
            col,
            conj,
            power: 1,
        };
        for &a in &entries {
            for &b in &entries {
                queries.push(vec![factor(a, false), factor(b, true)]);
            }
        }
        for ai in 0..entries.len() {
            for bi in ai..entries.len() {
                for ci in 0..entries.len() {
                    for di in ci..entries.len() {
                        queries.push(vec![
                            factor(entries[ai], false),
                            factor(entries[bi], false),
                            factor(entries[ci], true),
                            factor(entries[di], true),
                        ]);
                    }
                }
            }
        }
        let mut mismatches = Vec::new();
        for factors in &queries {
            let q = MomentQuery::new(factors.clone());
            let a = moment_u_weingarten(&q, n).expect("evaluates");
            let b = moment_u_recursive(&q, n).expect("evaluates");
            if a != b {
                mismatches.push(format!("{q} ({a} vs {b})"));
            }
        }
        out.push(if mismatches.is_empty() {
            Check::ok(
                format!("u-routes n={n}"),
                format!("{} queries agree", queries.len()),
            )
        } else {
            Check::fail(format!("u-routes n={n}"), mismatches.join("; "))
        });

        // the worked values on the trailing block
        let q1 = MomentQuery::parse("u[n-1,n-1] u[n,n] u~[n-1,n] u~[n,n-1]").expect("query");
        let expect1 = weingarten_sym(2, WgRoute::CharacterExpansion)
            .expect("symbolic")
            .value(&"2".parse().expect("cycle type"))
            .expect("class")
            .eval_at(n)
            .expect("no pole");
        out.push(Check::eq(
            format!("swap moment equals Wg_2({n})((1 2))"),
            moment_u_recursive(&q1, n).expect("evaluates"),
            expect1,
        ));
        let q2 = MomentQuery::parse("u[n-1,n-1] u[n,n] u~[n-1,n-1] u~[n,n]").expect("query");
        let expect2 = weingarten_sym(2, WgRoute::CharacterExpansion)
            .expect("symbolic")
            .value(&"1,1".parse().expect("cycle type"))
            .expect("class")
            .eval_at(n)
            .expect("no pole");
        out.push(Check::eq(
            format!("identity moment equals Wg_2({n})(e)"),
            moment_u_recursive(&q2, n).expect("evaluates"),
            expect2,
        ));
    }

    // exhaustive degree <= 2 over every entry at small dimensions
    for n in [2i64, 3] {
        let mut entries = Vec::new();
        for r in 1..=n as u32 {
            for c in 1..=n as u32 {
                entries.push((Idx::Lo(r), Idx::Lo(c)));
            }
        }
        let factor = |(row, col): (Idx, Idx), conj: bool| Factor {
            target: Target::U,
            row,
            col,
            conj,
            power: 1,
        };
        let mut mismatches = 0usize;
        let mut total = 0usize;
        let mut pairs: Vec<Vec<(Idx, Idx)>> = vec![];
        for ai in 0..entries.len() {
            pairs.push(vec![entries[ai]]);
            for bi in ai..entries.len() {
                pairs.push(vec![entries[ai], entries[bi]]);
            }
        }
        for plain in &pairs {
            for conj in &pairs {
                if plain.len() != conj.len() {
                    continue;
                }
                let mut factors: Vec<Factor> =
                    plain.iter().map(|&e| factor(e, false)).collect();
                factors.extend(conj.iter().map(|&e| factor(e, true)));
                let q = MomentQuery::new(factors);
                total += 1;
                if moment_u_weingarten(&q, n).expect("evaluates")
                    != moment_u_recursive(&q, n).expect("evaluates")
                {
                    mismatches += 1;
                }
            }
        }
        out.push(if mismatches == 0 {
            Check::ok(
                format!("u-routes exhaustive n={n}"),
                format!("{total} queries agree"),
            )
        } else {
            Check::fail(
                format!("u-routes exhaustive n={n}"),
                format!("{mismatches} of {total} disagree"),
            )
        });
    }

    // randomized degree-2 coverage over all entries at n = 4, plus degree-3
    // spot checks
    {
        let n = 4i64;
        let mut rng = StdRng::seed_from_u64(opts.seed.unwrap_or(404));
        let mut mismatches = 0usize;
        let count = opts.count.unwrap_or(200);
        for _ in 0..count {
            let mut factors = Vec::new();
            for conj in [false, false, true, true] {
                factors.push(Factor {
                    target: Target::U,
                    row: Idx::Lo(rng.random_range(1..=n as u32)),
                    col: Idx::Lo(rng.random_range(1..=n as u32)),
                    conj,
                    power: 1,
                });
            }
            let q = MomentQuery::new(factors);
            if moment_u_weingarten(&q, n).expect("evaluates")
                != moment_u_recursive(&q, n).expect("evaluates")
            {
                mismatches += 1;
            }
        }
        out.push(if mismatches == 0 {
            Check::ok(
                format!("u-routes random n={n} x{count}"),
                "all agree",
            )
        } else {
            Check::fail(
                format!("u-routes random n={n}"),
                format!("{mismatches} of {count} disagree"),
            )
        });
        for text in [
            "u[1,1] u[2,2] u[3,3] u~[1,1] u~[2,2] u~[3,3]",
            "u[1,2] u[2,3] u[3,4] u~[1,3] u~[2,4] u~[3,2]",
            "u[4,4] u[3,3] u[2,2] u~[4,3] u~[3,4] u~[2,2]",
        ] {
            let q = MomentQuery::parse(text).expect("query");
            out.push(Check::eq(
                format!("u-routes degree-3 {text}"),
                moment_u_recursive(&q, 4).expect("evaluates"),
                moment_u_weingarten(&q, 4).expect("evaluates"),
            ));
        }
    }
    out
}
