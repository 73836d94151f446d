//! Property tests for the exact arithmetic layer and the group algebra.

use proptest::prelude::*;

use weincalc::algebra::ClassFunction;
use weincalc::exact::poly::Poly;
use weincalc::exact::ratfunc::RatFunc;
use weincalc::exact::rational::{rat, ratio, rising_factorial, Rat};
use weincalc::sym::character::symmetric_group;

fn small_rat() -> impl Strategy<Value = Rat> {
    (-12i64..=12, 1i64..=6).prop_map(|(p, q)| ratio(p, q))
}

fn small_poly() -> impl Strategy<Value = Poly> {
    prop::collection::vec(-6i64..=6, 0..4).prop_map(|coeffs| {
        Poly::new(coeffs.into_iter().map(rat).collect())
    })
}

fn nonzero_poly() -> impl Strategy<Value = Poly> {
    small_poly().prop_filter("nonzero", |p| !p.is_zero())
}

fn ratfunc() -> impl Strategy<Value = RatFunc> {
    (small_poly(), nonzero_poly()).prop_map(|(n, d)| RatFunc::new(n, d).expect("nonzero denom"))
}

fn class_function(k: usize) -> impl Strategy<Value = ClassFunction<Rat>> {
    let classes = symmetric_group(k).class_count();
    prop::collection::vec(small_rat(), classes..=classes)
        .prop_map(move |values| ClassFunction::from_values(k, values))
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    #[test]
    fn ratfunc_field_ops_commute_with_evaluation(f in ratfunc(), g in ratfunc(), n0 in -9i64..=9) {
        let defined = |h: &RatFunc| h.eval_at(n0).is_ok();
        if defined(&f) && defined(&g) {
            let fv = f.eval_at(n0).unwrap();
            let gv = g.eval_at(n0).unwrap();
            let sum = f.clone() + g.clone();
            // the sum can only lose poles, never gain them
            prop_assert_eq!(sum.eval_at(n0).unwrap(), fv.clone() + gv.clone());
            let prod = f.clone() * g.clone();
            prop_assert_eq!(prod.eval_at(n0).unwrap(), fv.clone() * gv.clone());
            let diff = f.clone() - g.clone();
            prop_assert_eq!(diff.eval_at(n0).unwrap(), fv - gv);
        }
    }

    #[test]
    fn ratfunc_normal_form_is_canonical(f in ratfunc(), scale in nonzero_poly()) {
        // multiplying numerator and denominator by a common factor is invisible
        let rescaled = RatFunc::new(
            f.numerator().clone() * scale.clone(),
            f.denominator().clone() * scale,
        ).unwrap();
        prop_assert_eq!(rescaled, f);
    }

    #[test]
    fn ratfunc_display_parses_back(f in ratfunc()) {
        let text = f.to_string();
        let back = weincalc::exact::ratfunc::parse(&text).unwrap();
        prop_assert_eq!(back, f);
    }

    #[test]
    fn rising_factorial_recurrence(p in -20i64..=20, q in 1i64..=5, k in 0usize..=6) {
        let a = ratio(p, q);
        let left = rising_factorial(&a, k + 1);
        let right = rising_factorial(&a, k) * (a + rat(k as i64));
        prop_assert_eq!(left, right);
    }

    #[test]
    fn convolution_is_associative_degree_4(
        f in class_function(4),
        g in class_function(4),
        h in class_function(4),
    ) {
        let left = f.convolve(&g).unwrap().convolve(&h).unwrap();
        let right = f.convolve(&g.convolve(&h).unwrap()).unwrap();
        prop_assert_eq!(left, right);
    }

    #[test]
    fn character_basis_convolution_matches_dense(
        f in class_function(4),
        g in class_function(4),
    ) {
        let by_class = f.convolve(&g).unwrap();
        let by_dense = f
            .lift_to_dense()
            .unwrap()
            .convolve(&g.lift_to_dense().unwrap())
            .unwrap()
            .project_to_class()
            .unwrap();
        prop_assert_eq!(by_class, by_dense);
    }

    #[test]
    fn inversion_round_trip_when_defined(f in class_function(3)) {
        match f.convolution_inverse() {
            Ok(inv) => {
                let dirac = ClassFunction::<Rat>::dirac(3);
                prop_assert_eq!(f.convolve(&inv).unwrap(), dirac);
            }
            Err(_) => {
                // some Fourier coefficient vanished; nothing to check
            }
        }
    }

    #[test]
    fn p_moment_vanishes_on_forced_multiset_mismatch(
        n in 2i64..=6,
        rows in prop::collection::vec(1u32..=6, 1..4),
        cols in prop::collection::vec(1u32..=6, 1..4),
    ) {
        use weincalc::moments::query::{Factor, Idx, MomentQuery, Target};
        // plain factors only, with one row index pushed out of every other
        // word: the combined multisets cannot balance
        let clamp = |v: u32| ((v - 1) % (n as u32 - 1)) + 2; // values in 2..=n
        let mut factors: Vec<Factor> = rows
            .iter()
            .zip(&cols)
            .map(|(&r, &c)| Factor {
                target: Target::P,
                row: Idx::Lo(clamp(r)),
                col: Idx::Lo(clamp(c)),
                conj: false,
                power: 1,
            })
            .collect();
        factors.push(Factor {
            target: Target::P,
            row: Idx::Lo(1),
            col: Idx::Lo(clamp(cols[0])),
            conj: false,
            power: 1,
        });
        // index 1 appears exactly once across i ⊔ j' (in i), never in j ⊔ i'
        let value = weincalc::moments::eval::moment_pr_rat(&MomentQuery::new(factors), n).unwrap();
        prop_assert_eq!(value, rat(0));
    }

    #[test]
    fn symbolic_and_numeric_content_products_agree(
        parts in prop::collection::vec(1u32..=4, 1..4),
        n0 in 1i64..=9,
    ) {
        let lam = weincalc::sym::partition::Partition::new(parts);
        let sym = lam.content_product(&RatFunc::var());
        let num = lam.content_product(&rat(n0));
        prop_assert_eq!(sym.eval_at(n0).unwrap(), num);
    }
}
