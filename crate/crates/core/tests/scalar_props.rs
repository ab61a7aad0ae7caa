use proptest::prelude::*;
use tauforge::scalars::{
    bracket, expand_u, expand_v_adic, int, rat, Field, LaurentSeries, LaurentV, RatFunV, Rational, Scalar,
};

fn rational() -> impl Strategy<Value = Rational> {
    (-20i64..=20, 1i64..=9).prop_map(|(n, d)| rat(n, d))
}

fn laurent() -> impl Strategy<Value = LaurentV> {
    prop::collection::vec((-3i64..=3, -4i64..=4), 0..4)
        .prop_map(|t| LaurentV::from_terms(t.into_iter().map(|(e, c)| (e, int(c)))))
}

fn ratfun() -> impl Strategy<Value = RatFunV> {
    (laurent(), laurent()).prop_filter_map("zero denominator", |(n, d)| RatFunV::new(n, d).ok())
}

fn cfg() -> ProptestConfig {
    ProptestConfig { cases: 1000, ..ProptestConfig::default() }
}

proptest! {
    #![proptest_config(cfg())]

    #[test]
    fn rational_field_axioms(a in rational(), b in rational(), c in rational()) {
        prop_assert_eq!(a.add(&b).add(&c), a.add(&b.add(&c)));
        prop_assert_eq!(a.mul(&b).mul(&c), a.mul(&b.mul(&c)));
        prop_assert_eq!(a.mul(&b.add(&c)), a.mul(&b).add(&a.mul(&c)));
        if !a.is_zero() {
            prop_assert_eq!(a.mul(&a.try_inv().unwrap()), Rational::one());
        }
    }

    #[test]
    fn ratfun_field_axioms(a in ratfun(), b in ratfun(), c in ratfun()) {
        prop_assert_eq!(a.add(&b).add(&c), a.add(&b.add(&c)));
        prop_assert_eq!(a.mul(&b).mul(&c), a.mul(&b.mul(&c)));
        prop_assert_eq!(a.mul(&b.add(&c)), a.mul(&b).add(&a.mul(&c)));
        prop_assert_eq!(a.add(&b), b.add(&a));
        if !a.is_zero() {
            prop_assert_eq!(a.mul(&a.try_inv().unwrap()), RatFunV::one());
            prop_assert_eq!(b.mul(&a).try_div(&a).unwrap(), b);
        }
    }
}

proptest! {
    #![proptest_config(ProptestConfig { cases: 200, ..ProptestConfig::default() })]

    #[test]
    fn expand_u_is_multiplicative(a in ratfun(), b in ratfun()) {
        prop_assume!(!a.is_zero() && !b.is_zero());
        let n = 4;
        let xa = expand_u(&a, n).unwrap();
        let xb = expand_u(&b, n).unwrap();
        let prod = expand_u(&a.mul(&b), n).unwrap();
        let direct = xa.mul(&xb);
        let common = direct.high().min(prod.high());
        prop_assert!(direct.agrees_through(&prod, common));
    }

    #[test]
    fn v_adic_is_multiplicative(a in ratfun(), b in ratfun()) {
        let n = 6;
        let sa = LaurentSeries::new(expand_v_adic(&a, n + 10), n + 10);
        let sb = LaurentSeries::new(expand_v_adic(&b, n + 10), n + 10);
        let prod = LaurentSeries::new(expand_v_adic(&a.mul(&b), n), n);
        let direct = sa.mul(&sb).truncate(n);
        prop_assert_eq!(direct.terms().collect::<Vec<_>>(), prod.terms().collect::<Vec<_>>());
    }
}

#[test]
fn bracket_bar_antisymmetry() {
    for m in 1..=10 {
        let b = RatFunV::from_laurent(bracket(m));
        assert_eq!(b.bar(), b.neg());
    }
}
