mod common;

use common::*;
use germ_lct::algebra::{q, qi, GermDivisor, Poly2, Rational, WeightVector};
use germ_lct::blowup::{lct_via_weight, leading_form, weighted_blowup};
use germ_lct::newton::{lower_hull, minkowski_sum, newton_data};
use germ_lct::resolve::{first_puiseux_pair, lct_exact, PuiseuxPair};
use germ_lct::{CertKind, QPoly};
use proptest::prelude::*;

fn germ() -> impl Strategy<Value = QPoly> {
    prop::collection::vec((0u32..5, 0u32..5, prop_oneof![-3i64..=-1, 1i64..=3]), 1..4)
        .prop_map(|t| germ_from(&t))
        .prop_filter("nonzero", |f| !f.is_zero())
}

fn weight(bound: u32) -> impl Strategy<Value = WeightVector> {
    (1..bound, 1..bound).prop_filter_map("coprime, a1 + a2 <= bound", move |(a, b)| {
        (a + b <= bound)
            .then(|| WeightVector::new(a, b).ok())
            .flatten()
    })
}

fn coprime_pair() -> impl Strategy<Value = (u32, u32)> {
    (2u32..6, 3u32..10).prop_filter("coprime m < n", |&(m, n)| {
        m < n && num_integer::gcd(m, n) == 1
    })
}

fn support(f: &QPoly) -> Vec<(i64, i64)> {
    f.terms().map(|(&(i, j), _)| (i as i64, j as i64)).collect()
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(96))]

    #[test]
    fn newton_polygon_is_minkowski_additive(f in germ(), g in germ()) {
        let sum = minkowski_sum(&lower_hull(&support(&f)), &lower_hull(&support(&g)));
        prop_assert_eq!(lower_hull(&support(&f.mul(&g))), lower_hull(&sum));
    }

    #[test]
    fn monomial_newton_distance(p in 0u32..8, q in 0u32..8) {
        prop_assume!(p + q > 0);
        let nd = newton_data(&Poly2::monomial(qi(1), p, q)).unwrap().nd;
        prop_assert_eq!(nd, Rational::new(1.into(), p.max(q).into()));
    }

    #[test]
    fn weight_candidate_bounds_the_threshold(f in germ(), w in weight(12)) {
        let b = GermDivisor::single(qi(1), f).unwrap();
        let oracle = lct_exact(&GermDivisor::zero(), &b).unwrap().value;
        let cand = lct_via_weight(&b, w).unwrap();
        prop_assert!(cand.value >= oracle, "{} < {}", cand.value, oracle);
        if cand.kind == CertKind::Exact {
            prop_assert_eq!(cand.value, oracle);
        }
    }

    #[test]
    fn weight_candidate_bounds_corpus_divisors(seed in any::<u64>(), w in weight(12)) {
        let case = random_case(&mut rng(seed));
        let oracle = lct_exact(&GermDivisor::zero(), &case.b).unwrap().value;
        let cand = lct_via_weight(&case.b, w).unwrap();
        prop_assert!(cand.value >= oracle, "{} < {}", cand.value, oracle);
        if cand.kind == CertKind::Exact {
            prop_assert_eq!(cand.value, oracle);
        }
        for (_, f) in case.b.parts() {
            let lf = leading_form(f, w).unwrap();
            let ord = f.weighted_multiplicity(w).unwrap() as i64;
            let lhs = q(lf.s as i64, w.a2 as i64) + q(lf.t as i64, w.a1 as i64) + qi(lf.d as i64);
            prop_assert_eq!(lhs, q(ord, (w.a1 * w.a2) as i64));
        }
    }

    #[test]
    fn exceptional_discrepancy_of_empty_boundary(f in germ(), w in weight(12)) {
        let b = GermDivisor::single(qi(1), f).unwrap();
        let data = weighted_blowup(&b, w).unwrap();
        let a = data.log_discrepancy(&b.scale(&qi(0)));
        prop_assert_eq!(a.clone(), qi((w.a1 + w.a2) as i64));
        prop_assert!(a >= qi(2));
    }

    #[test]
    fn restriction_degrees_add_up(f in germ(), w in weight(12)) {
        let lf = leading_form(&f, w).unwrap();
        let ord = f.weighted_multiplicity(w).unwrap();
        let (a1, a2) = (w.a1 as i64, w.a2 as i64);
        let lhs = Rational::new((lf.s as i64).into(), a2.into())
            + Rational::new((lf.t as i64).into(), a1.into())
            + qi(lf.d as i64);
        prop_assert_eq!(lhs, Rational::new((ord as i64).into(), (a1 * a2).into()));
    }

    #[test]
    fn puiseux_pair_is_valid_when_defined(f in germ()) {
        if let Ok(p) = first_puiseux_pair(&f) {
            prop_assert!(p.is_valid(), "{}", p);
        }
    }

    #[test]
    fn puiseux_pair_survives_coordinate_changes((m, n) in coprime_pair(), k in 1u32..4, c in 1i64..4) {
        let f = poly(&format!("x^{m} + y^{n} + x^{m}*y"));
        let moved = f.substitute(&poly(&format!("x + {c}*y^{k}")), &Poly2::y());
        let want = PuiseuxPair { m, n: Some(n) };
        prop_assert_eq!(first_puiseux_pair(&f).unwrap(), want);
        prop_assert_eq!(first_puiseux_pair(&moved).unwrap(), want);
        prop_assert_eq!(first_puiseux_pair(&f.swap()).unwrap(), want);
    }
}
