//! Randomized algebra properties of the series and factored-form layers.

use ascgf_core::factored::{factored_from, FactoredGf};
use ascgf_core::poly::Poly;
use ascgf_core::series::TruncatedSeries;
use ascgf_core::zeta::euler_product;
use ascgf_core::BigRat;
use num_bigint::{BigInt, BigUint};
use proptest::prelude::*;

fn rat(n: i64, d: i64) -> BigRat {
    BigRat::new(BigInt::from(n), BigInt::from(d))
}

fn arb_factored() -> impl Strategy<Value = FactoredGf> {
    let factor = (0u64..4, 1u64..4, prop_oneof![-2i64..0, 1i64..3]);
    (prop_oneof![Just(2u64), Just(3), Just(4), Just(5)], proptest::collection::vec(factor, 0..4))
        .prop_map(|(q, triples)| factored_from(BigUint::from(q), &triples))
}

fn arb_unit_series() -> impl Strategy<Value = TruncatedSeries> {
    proptest::collection::vec((-9i64..10, 1i64..5), 5)
        .prop_map(|tail| {
            let mut coeffs = vec![BigRat::from_integer(BigInt::from(1))];
            coeffs.extend(tail.into_iter().map(|(n, d)| rat(n, d)));
            TruncatedSeries::from_coeffs(coeffs)
        })
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    #[test]
    fn expansion_is_multiplicative(f in arb_factored(), g in arb_factored()) {
        let g = factored_from(f.base().clone(), &g.factors().collect::<Vec<_>>());
        let order = 10;
        let product = f.mul(&g).expand(order);
        let pointwise = f.expand(order).mul(&g.expand(order));
        prop_assert_eq!(product, pointwise);
    }

    #[test]
    fn expansion_of_inverse_multiplies_to_one(f in arb_factored()) {
        let order = 10;
        let s = f.expand(order).mul(&f.inverse().expand(order));
        prop_assert!(s.is_one());
    }

    #[test]
    fn pow_big_is_additive_in_the_exponent(
        s in arb_unit_series(),
        b1 in any::<u64>(),
        b2 in any::<u64>(),
        negate in any::<bool>(),
    ) {
        let b1 = if negate { -BigInt::from(b1) } else { BigInt::from(b1) };
        let b2 = BigInt::from(b2);
        let both = s.pow_big(&(&b1 + &b2)).unwrap();
        let split = s.pow_big(&b1).unwrap().mul(&s.pow_big(&b2).unwrap());
        prop_assert_eq!(both, split);
    }

    #[test]
    fn exp_log_round_trips(s in arb_unit_series()) {
        prop_assert_eq!(s.log().unwrap().exp().unwrap(), s.clone());
        let mut zeroed = s.coeffs().to_vec();
        zeroed[0] = BigRat::from_integer(BigInt::from(0));
        let u = TruncatedSeries::from_coeffs(zeroed);
        prop_assert_eq!(u.exp().unwrap().log().unwrap(), u);
    }

    #[test]
    fn factored_equality_matches_expansion_equality(
        f in arb_factored(),
        g in arb_factored(),
    ) {
        let g = factored_from(f.base().clone(), &g.factors().collect::<Vec<_>>());
        let degree = |h: &FactoredGf| -> usize {
            h.factors().map(|(_, b, e)| b as usize * e.unsigned_abs() as usize).sum()
        };
        // cross-multiplied difference has degree ≤ deg f + deg g, so
        // agreement to that order forces equality of rational functions
        let order = (degree(&f) + degree(&g)).max(1);
        let equal_maps = f == g;
        let equal_series = f.expand(order) == g.expand(order);
        prop_assert_eq!(equal_maps, equal_series);
    }

    #[test]
    fn euler_product_is_multiplicative(
        c1 in -3i64..4,
        c2 in -3i64..4,
        d1 in -3i64..4,
        d2 in -3i64..4,
    ) {
        let poly_series = |a: i64, b: i64, order: usize| {
            TruncatedSeries::from_poly(
                &Poly::from_coeffs(vec![
                    BigRat::from_integer(BigInt::from(1)),
                    BigRat::from_integer(BigInt::from(a)),
                    BigRat::from_integer(BigInt::from(b)),
                ]),
                order,
            )
        };
        let order = 8;
        let f = |_: &BigUint, n: usize| Ok(poly_series(c1, c2, n));
        let g = |_: &BigUint, n: usize| Ok(poly_series(d1, d2, n));
        let fg = |_: &BigUint, n: usize| Ok(poly_series(c1, c2, n).mul(&poly_series(d1, d2, n)));
        let lhs = euler_product(fg, 2, order).unwrap();
        let rhs = euler_product(f, 2, order).unwrap().mul(&euler_product(g, 2, order).unwrap());
        prop_assert_eq!(lhs, rhs);
    }
}
