mod common;

use common::*;
use germ_lct::algebra::{q, qi, GermDivisor, Rational};
use germ_lct::formulas::{
    cor38_bound, prop33_lct, thm18_bound, thm_a2_bound, varchenko_upper_bound,
};
use germ_lct::lctpoly::{convexity_bound, thm18_certify, Component, LctPolytopeInstance};
use germ_lct::resolve::lct_exact;
use germ_lct::{CertKind, QPoly};
use num_traits::Zero;
use proptest::prelude::*;

fn lct_of(b: &GermDivisor) -> Rational {
    lct_exact(&GermDivisor::zero(), b).unwrap().value
}

/// A branch `x^m + y^n` and a smooth curve with their intersection number.
fn branch_and_curve() -> impl Strategy<Value = (u32, u32, QPoly, u32)> {
    (2u32..6, 3u32..9, 0u32..4)
        .prop_filter("coprime m < n", |&(m, n, _)| {
            m < n && num_integer::gcd(m, n) == 1
        })
        .prop_map(|(m, n, pick)| {
            let (c, i) = match pick {
                0 => (poly("x"), n),
                1 => (poly("y"), m),
                // Largest p with p m < n.
                _ => {
                    let p = (n - 1) / m;
                    (poly(&format!("x - y^{p}")), p * m)
                }
            };
            (m, n, c, i)
        })
}

fn positive_rational(max_num: i64, den: i64) -> impl Strategy<Value = Rational> {
    (1..=max_num).prop_map(move |k| q(k, den))
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    #[test]
    fn monomial_binomial_formula_matches_resolution(n in 1u32..6, k in 1u32..4, m1 in 1u32..7, m2 in 1u32..7) {
        let b = div1(&format!("x^{n}*(x^{m1} + y^{m2})^{k}"));
        prop_assert_eq!(prop33_lct(n, k, m1, m2).unwrap(), lct_of(&b));
    }

    #[test]
    fn corollary_bound_is_a_lower_bound((m, n, c, i) in branch_and_curve(), lambda in positive_rational(24, 12)) {
        let Ok((bound, _)) = cor38_bound(m, Some(n), i, &lambda) else { return Ok(()) };
        let b = GermDivisor::single(lambda.clone(), poly(&format!("x^{m} + y^{n}"))).unwrap();
        let target = GermDivisor::single(qi(1), c.clone()).unwrap();
        let oracle = lct_exact(&b, &target).unwrap().value;
        prop_assert!(oracle >= bound, "lambda = {}, C = {}: {} < {}", lambda, c, oracle, bound);
    }

    #[test]
    fn general_bound_is_non_increasing(m in positive_rational(12, 12), i in positive_rational(48, 6), dm in positive_rational(6, 12), di in positive_rational(12, 6)) {
        let base = thm18_bound(&m, &i).unwrap();
        prop_assert!(thm18_bound(&m, &(&i + &di)).unwrap() <= base);
        if let Ok(smaller) = thm18_bound(&(&m + &dm), &i) {
            prop_assert!(smaller <= base);
        }
        prop_assert!(base <= qi(1));
    }

    #[test]
    fn weak_bound_agrees_where_defined(m in positive_rational(12, 12), i in positive_rational(48, 6)) {
        if let Ok(weak) = thm_a2_bound(&m, &i) {
            prop_assert_eq!(weak, thm18_bound(&m, &i).unwrap());
        }
    }

    #[test]
    fn weight_search_never_undercuts(seed in any::<u64>()) {
        let mut r = rng(seed);
        let b = GermDivisor::single(qi(1), random_germ(&mut r, 5)).unwrap();
        let oracle = lct_of(&b);
        let upper = varchenko_upper_bound(&b, 8, &[]).unwrap();
        prop_assert!(upper.value >= oracle);
        prop_assert_eq!(upper.kind == CertKind::Exact, upper.value == oracle);
    }

    #[test]
    fn convex_combination_is_a_lower_bound(seed in any::<u64>(), lambda in (1i64..8).prop_map(|k| q(k, 8))) {
        let mut r = rng(seed);
        let c = random_smooth(&mut r);
        let (b1, b2) = (random_lc_divisor(&mut r, &c), random_lc_divisor(&mut r, &c));
        let target = GermDivisor::single(qi(1), c).unwrap();
        let combined = convexity_bound(&[(b1.clone(), lambda.clone()), (b2.clone(), qi(1) - &lambda)], &target).unwrap();
        let blend = b1.scale(&lambda).plus(&b2.scale(&(qi(1) - &lambda)));
        prop_assert!(lct_exact(&blend, &target).unwrap().value >= combined);
    }

    #[test]
    fn certificate_brackets_the_threshold(
        comps in prop::collection::btree_set((1u32..=3, 1u32..=6), 1..4),
        num in prop::collection::vec(1i64..=4, 4),
    ) {
        let comps: Vec<(u32, u32)> = comps.into_iter().filter(|&(m, i)| m <= i).collect();
        prop_assume!(!comps.is_empty());
        let total: u32 = comps.iter().map(|c| c.0).sum();
        let parts: Vec<Component> = comps
            .iter()
            .zip(&num)
            .map(|(&(m, i), &k)| Component { m, i, b: q(k, 4 * total as i64) })
            .collect();
        let inst = LctPolytopeInstance::new(parts).unwrap();
        let cert = thm18_certify(&inst).unwrap();
        prop_assert!(cert.bound >= thm18_bound(&inst.m(), &inst.i()).unwrap());
        for v in &cert.vertices {
            prop_assert!(v.vertex.iter().filter(|t| !t.is_zero()).count() <= 2);
        }
        let b = GermDivisor::new(inst.components().iter().map(|c| (c.b.clone(), realize_branch(c.m, c.i))).collect()).unwrap();
        let oracle = lct_exact(&b, &div1("x")).unwrap().value;
        prop_assert!(cert.bound <= oracle, "{} > {}", cert.bound, oracle);
    }
}
