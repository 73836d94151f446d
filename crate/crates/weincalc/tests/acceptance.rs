//! Acceptance suite: one test per criterion, each printing a pass line with
//! its runtime. Every tolerance is pinned here.

use std::time::{Duration, Instant};

use weincalc::algebra::ClassFunction;
use weincalc::engine::{
    ascension_kernel, gram_function, pseudo_weingarten, weingarten_equal_degree,
    weingarten_rat, weingarten_sym, WgRoute,
};
use weincalc::exact::rational::{rat, ratio, to_f64, Rat};
use weincalc::moments::query::MomentQuery;
use weincalc::sampler::{
    build_reflection, estimate_moment, neretin_project, sample_haar_unitary, sample_sphere,
    worker_rng, ComplexMatrix, SamplerConfig, C64, DEFAULT_RESAMPLE_EPSILON,
};
use weincalc::sym::partition::Partition;
use weincalc::sym::permutation::Permutation;
use weincalc::verify::{run_suite, VerifyOptions};

fn assert_suite_passes(name: &str, opts: &VerifyOptions) -> usize {
    let checks = run_suite(name, opts).expect("suite exists");
    for c in &checks {
        assert!(c.pass, "{name}: {} failed: {}", c.name, c.detail);
    }
    checks.len()
}

fn within(elapsed: Duration, limit: Duration, what: &str) {
    assert!(
        elapsed <= limit,
        "{what} took {elapsed:?}, limit {limit:?}"
    );
}

fn ct(text: &str) -> Partition {
    text.parse().expect("cycle type")
}

#[test]
fn acceptance_01_symbolic_weingarten_degree_two() {
    let start = Instant::now();
    let wg = weingarten_sym(2, WgRoute::CharacterExpansion).expect("symbolic Wg");
    let identity = wg.value(&ct("1,1")).expect("class").to_string();
    let swap = wg.value(&ct("2")).expect("class").to_string();
    assert_eq!(identity, "1/((n-1)*(n+1))");
    assert_eq!(swap, "-1/((n-1)*n*(n+1))");
    let elapsed = start.elapsed();
    within(elapsed, Duration::from_secs(1), "criterion 1");
    println!("ACCEPTANCE 1 PASS: symbolic Wg_2 in canonical form ({elapsed:?})");
}

#[test]
fn acceptance_02_equal_degree_ladder_values() {
    let start = Instant::now();
    let wg22 = weingarten_equal_degree(2).expect("kernel chain");
    assert_eq!(wg22.value(&ct("1,1")).unwrap(), &ratio(1, 3));
    let a2 = ascension_kernel(&Permutation::identity(2), &Permutation::identity(1)).unwrap();
    assert_eq!(a2, ratio(1, 3));

    let a3_id = ascension_kernel(&Permutation::identity(3), &Permutation::identity(2)).unwrap();
    let a3_swap =
        ascension_kernel(&Permutation::identity(3), &Permutation::transposition(2, 1, 2)).unwrap();
    assert_eq!(a3_id, ratio(11, 60));
    assert_eq!(a3_swap, ratio(1, 60));
    let assembled = a3_id * wg22.value(&ct("1,1")).unwrap() + a3_swap * wg22.value(&ct("2")).unwrap();
    assert_eq!(assembled, ratio(7, 120));
    let wg33 = weingarten_equal_degree(3).expect("kernel chain");
    assert_eq!(wg33.value(&ct("1,1,1")).unwrap(), &ratio(7, 120));
    let elapsed = start.elapsed();
    within(elapsed, Duration::from_secs(1), "criterion 2");
    println!("ACCEPTANCE 2 PASS: equal-degree ladder reproduces 1/3 and 7/120 ({elapsed:?})");
}

#[test]
fn acceptance_03_route_agreement() {
    let start = Instant::now();
    let count = assert_suite_passes(
        "routes",
        &VerifyOptions {
            k_max: Some(5),
            n_max: Some(8),
            ..Default::default()
        },
    );
    let elapsed = start.elapsed();
    within(elapsed, Duration::from_secs(300), "criterion 3");
    println!("ACCEPTANCE 3 PASS: {count} route-agreement instances, k<=5, n<=8 ({elapsed:?})");
}

#[test]
fn acceptance_04_recursion_and_descension_suites() {
    let start = Instant::now();
    let rec = assert_suite_passes(
        "recursion",
        &VerifyOptions {
            k_max: Some(5),
            n_max: Some(8),
            ..Default::default()
        },
    );
    let desc = assert_suite_passes(
        "descension",
        &VerifyOptions {
            k_max: Some(5),
            n_max: Some(7),
            ..Default::default()
        },
    );
    let elapsed = start.elapsed();
    println!(
        "ACCEPTANCE 4 PASS: {rec} recursion + {desc} descension identities ({elapsed:?})"
    );
}

#[test]
fn acceptance_05_negative_control() {
    let start = Instant::now();
    assert_suite_passes("negative-control", &VerifyOptions::default());
    // the wrong value is exactly 1/12
    let raise = weincalc::engine::ascension(2, &rat(2)).unwrap();
    let wrong = raise.convolve(&pseudo_weingarten(2, 1).unwrap()).unwrap();
    assert_eq!(wrong.value(&ct("1,1")).unwrap(), &ratio(1, 12));
    assert_ne!(
        wrong.value(&ct("1,1")).unwrap(),
        weingarten_rat(2, 2, WgRoute::CharacterExpansion)
            .unwrap()
            .value(&ct("1,1"))
            .unwrap()
    );
    let elapsed = start.elapsed();
    println!("ACCEPTANCE 5 PASS: k = n recursion counterexample is 1/12, not 1/3 ({elapsed:?})");
}

#[test]
fn acceptance_06_pseudo_weingarten_projector_identities() {
    let start = Instant::now();
    for (k, n) in [(3usize, 2i64), (4, 2), (4, 3)] {
        let g = gram_function(k, &rat(n));
        let w = pseudo_weingarten(k, n).expect("defined for every k, n >= 1");
        let gwg = g.convolve(&w).unwrap().convolve(&g).unwrap();
        assert_eq!(gwg, g, "G*W*G = G at k={k}, n={n}");
        let wgw = w.convolve(&g).unwrap().convolve(&w).unwrap();
        assert_eq!(wgw, w, "W*G*W = W at k={k}, n={n}");
    }
    let elapsed = start.elapsed();
    within(elapsed, Duration::from_secs(30), "criterion 6");
    println!("ACCEPTANCE 6 PASS: pseudo-Weingarten projector identities at (3,2),(4,2),(4,3) ({elapsed:?})");
}

#[test]
fn acceptance_07_moment_closed_forms() {
    let start = Instant::now();
    let count = assert_suite_passes(
        "moments",
        &VerifyOptions {
            count: Some(200),
            seed: Some(2024),
            ..Default::default()
        },
    );
    let elapsed = start.elapsed();
    println!(
        "ACCEPTANCE 7 PASS: worked moment formulas + 200 randomized closed-form checks ({count} checks, {elapsed:?})"
    );
}

#[test]
fn acceptance_08_bridge_identity() {
    let start = Instant::now();
    let count = assert_suite_passes(
        "bridge",
        &VerifyOptions {
            k_max: Some(5),
            n_max: Some(8),
            ..Default::default()
        },
    );
    let elapsed = start.elapsed();
    println!(
        "ACCEPTANCE 8 PASS: permutation reflection moments equal ascension, k<=5, n<=8 ({count} instances, {elapsed:?})"
    );
}

#[test]
fn acceptance_09_u_moment_route_agreement() {
    let start = Instant::now();
    let count = assert_suite_passes("u-routes", &VerifyOptions::default());
    let elapsed = start.elapsed();
    within(elapsed, Duration::from_secs(120), "criterion 9");
    println!(
        "ACCEPTANCE 9 PASS: recursive and Weingarten u-moment routes agree at n=3,4 ({count} batches, {elapsed:?})"
    );
}

#[test]
fn acceptance_10_monte_carlo_cross_checks() {
    let start = Instant::now();
    let config = SamplerConfig {
        seed: 20240,
        samples: 200_000,
        workers: 4,
        resample_epsilon: DEFAULT_RESAMPLE_EPSILON,
    };
    let cases = [
        ("r[1,n] r~[1,n] r[2,n] r~[2,n]", 3i64, ratio(1, 12)),
        ("r[1,1]^3", 3, ratio(2, 5)),
        ("p[1,1]^2 p~[1,1]^2 p[3,3] p~[3,3]", 3, ratio(2, 25)),
        ("u[2,2] u[3,3] u~[2,3] u~[3,2]", 3, ratio(-1, 24)),
    ];
    for (text, n, exact) in cases {
        let q = MomentQuery::parse(text).unwrap();
        // the exact engine agrees with the frozen value
        assert_eq!(weincalc::moments::eval::moment_rat(&q, n).unwrap(), exact);
        let est = estimate_moment(&q, n, &config).unwrap();
        let z = est.z_score(to_f64(&exact));
        assert!(z <= 5.0, "query {text}: z = {z}");
        println!("  estimate {text}: mean {:.6}, z = {z:.2}", est.mean_re);
    }
    let elapsed = start.elapsed();
    within(elapsed, Duration::from_secs(120), "criterion 10");
    println!("ACCEPTANCE 10 PASS: four Monte Carlo estimates within 5 SE ({elapsed:?})");
}

#[test]
fn acceptance_11_sampler_structure() {
    let start = Instant::now();
    let mut rng = worker_rng(77, 0);
    for _ in 0..1000 {
        let x = sample_sphere(6, &mut rng);
        let r = build_reflection(&x, DEFAULT_RESAMPLE_EPSILON).unwrap();
        let defect = (r.adjoint() * &r - ComplexMatrix::identity(6, 6))
            .iter()
            .map(|z| z.norm())
            .fold(0.0f64, f64::max);
        assert!(defect <= 1e-10, "unitarity defect {defect:e}");
        let p = ComplexMatrix::identity(6, 6) - &r;
        let sv = p.svd(false, false).singular_values;
        assert!(sv[1] <= 1e-10, "second singular value {:e}", sv[1]);
        for i in 0..6 {
            assert!((r[(i, 5)] - x[i]).norm() <= 1e-10, "last column mismatch");
        }
    }
    for _ in 0..1000 {
        let v = sample_haar_unitary(4, &mut rng, DEFAULT_RESAMPLE_EPSILON);
        let x = loop {
            let cand = sample_sphere(5, &mut rng);
            if (C64::new(1.0, 0.0) - cand[4]).norm() >= DEFAULT_RESAMPLE_EPSILON {
                break cand;
            }
        };
        let r = build_reflection(&x, DEFAULT_RESAMPLE_EPSILON).unwrap();
        let mut embedded = ComplexMatrix::identity(5, 5);
        embedded.view_mut((0, 0), (4, 4)).copy_from(&v);
        let g = r * embedded;
        let back = neretin_project(&g, DEFAULT_RESAMPLE_EPSILON).unwrap();
        let dist = (back - &v).iter().map(|z| z.norm()).fold(0.0f64, f64::max);
        assert!(dist <= 1e-8, "projection defect {dist:e}");
    }
    let elapsed = start.elapsed();
    println!("ACCEPTANCE 11 PASS: 1000 reflections rank-one to 1e-10, 1000 projections recover V to 1e-8 ({elapsed:?})");
}

// Shared sanity: the exact values referenced above stay pinned to the engine.
#[test]
fn frozen_reference_values() {
    assert_eq!(
        weingarten_rat(2, 4, WgRoute::CharacterExpansion)
            .unwrap()
            .value(&ct("2"))
            .unwrap(),
        &ratio(-1, 60)
    );
    assert_eq!(
        pseudo_weingarten(3, 2).unwrap().value(&ct("1,1,1")).unwrap(),
        &ratio(17, 144)
    );
    assert_eq!(
        ClassFunction::<Rat>::dirac(3)
            .value(&ct("1,1,1"))
            .unwrap(),
        &rat(1)
    );
}
