use bmwsq::coeff::{qint, specialize, Cyclotomic, Field, LaurentPoly, ModPrime, RationalFunction};
use proptest::prelude::*;

fn laurent() -> impl Strategy<Value = LaurentPoly> {
    prop::collection::vec((-6i64..=6, -4i64..=4), 0..6).prop_map(LaurentPoly::from_terms)
}

fn nonzero_laurent() -> impl Strategy<Value = LaurentPoly> {
    laurent().prop_filter("nonzero", |p| !p.is_zero())
}

fn ratfunc() -> impl Strategy<Value = RationalFunction> {
    (laurent(), nonzero_laurent()).prop_map(|(n, d)| RationalFunction::new(n, d).unwrap())
}

fn level() -> impl Strategy<Value = (u32, i8)> {
    (3u32..=12, prop_oneof![Just(1i8), Just(-1i8)])
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(96))]

    #[test]
    fn laurent_ring_axioms(a in laurent(), b in laurent(), c in laurent()) {
        prop_assert_eq!(&(&a * &b) * &c, &a * &(&b * &c));
        prop_assert_eq!(&a * &(&b + &c), &(&a * &b) + &(&a * &c));
        prop_assert_eq!(&a * &b, &b * &a);
        prop_assert!((&(&a + &b) - &b) == a);
    }

    #[test]
    fn laurent_text_reparses(a in laurent()) {
        let back: LaurentPoly = a.to_string().parse().unwrap();
        prop_assert_eq!(back, a);
    }

    #[test]
    fn ratfunc_field_axioms(a in ratfunc(), b in ratfunc(), c in ratfunc()) {
        prop_assert_eq!(a.mul(&b.add(&c)), a.mul(&b).add(&a.mul(&c)));
        prop_assert_eq!(a.add(&b).sub(&b), a.clone());
        if !a.is_zero() {
            prop_assert!(a.mul(&a.inv().unwrap()).is_one());
        }
    }

    // Equal fractions written differently reduce to the same representative.
    #[test]
    fn ratfunc_canonical_form(n in laurent(), d in nonzero_laurent(), k in nonzero_laurent(), s in -3i64..=3) {
        let a = RationalFunction::new(n.clone(), d.clone()).unwrap();
        let b = RationalFunction::new((&n * &k).shift(s), (&d * &k).shift(s)).unwrap();
        prop_assert_eq!(a, b);
    }

    #[test]
    fn specialization_is_a_homomorphism(a in ratfunc(), b in ratfunc(), (ell, sign) in level()) {
        let (sa, sb) = match (specialize(&a, ell, sign), specialize(&b, ell, sign)) {
            (Ok(x), Ok(y)) => (x, y),
            _ => return Ok(()),
        };
        prop_assert_eq!(specialize(&a.add(&b), ell, sign).unwrap(), &sa + &sb);
        if let Ok(p) = specialize(&a.mul(&b), ell, sign) {
            prop_assert_eq!(p, &sa * &sb);
        }
    }

    #[test]
    fn quantum_integers_reflect(d in 0i64..=12, (ell, sign) in level()) {
        let l = ell as i64;
        prop_assume!(d <= l);
        let lhs = specialize(&qint(l - d), ell, sign).unwrap();
        prop_assert_eq!(lhs, specialize(&qint(d), ell, sign).unwrap());
    }

    #[test]
    fn cyclotomic_inverse(a in laurent(), (ell, sign) in level()) {
        let x = Cyclotomic::eval_laurent(2 * ell, &a, sign as i64);
        prop_assume!(!x.is_zero());
        prop_assert!((&x * &x.inv().unwrap()).is_one());
    }

    // Reduction mod p commutes with products, consistent with the exact value.
    #[test]
    fn modular_reduction_multiplies(a in laurent(), b in laurent(), ell in 3u32..=10) {
        let m = ModPrime::root_of_unity(ell, 1 << 20);
        let ab = &a * &b;
        prop_assert_eq!(m.eval_laurent(&ab).unwrap(), m.eval_laurent(&a).unwrap().mul(m.eval_laurent(&b).unwrap()));
    }
}
