//! Property-based checks of the rational-function field: canonical form,
//! display/parse round trips, and the field axioms.

use std::str::FromStr;

use num_traits::One;
use proptest::prelude::*;
use qeuler::{QPolynomial, QRationalFunction};

fn poly_strategy() -> impl Strategy<Value = QPolynomial> {
    prop::collection::vec(-9i64..=9, 0..5).prop_map(|c| QPolynomial::from_ints(&c))
}

fn nonzero_poly_strategy() -> impl Strategy<Value = QPolynomial> {
    poly_strategy().prop_filter("nonzero", |p| !p.is_zero())
}

fn rf_strategy() -> impl Strategy<Value = QRationalFunction> {
    (poly_strategy(), nonzero_poly_strategy())
        .prop_map(|(n, d)| QRationalFunction::new(n, d).unwrap())
}

proptest! {
    #[test]
    fn display_parse_round_trip(a in rf_strategy()) {
        let text = a.to_string();
        let back = QRationalFunction::from_str(&text).unwrap();
        prop_assert_eq!(back, a);
    }

    #[test]
    fn canonical_form_invariants(a in rf_strategy()) {
        // Monic denominator.
        prop_assert!(a.denominator().leading().is_one());
        // Numerator and denominator share no factor.
        let g = a.numerator().gcd(a.denominator());
        prop_assert!(g.degree() == Some(0) || a.numerator().is_zero());
    }

    #[test]
    fn addition_commutes(a in rf_strategy(), b in rf_strategy()) {
        prop_assert_eq!(&a + &b, &b + &a);
    }

    #[test]
    fn addition_associates(a in rf_strategy(), b in rf_strategy(), c in rf_strategy()) {
        prop_assert_eq!(&(&a + &b) + &c, &a + &(&b + &c));
    }

    #[test]
    fn multiplication_distributes(a in rf_strategy(), b in rf_strategy(), c in rf_strategy()) {
        prop_assert_eq!(&a * &(&b + &c), &(&a * &b) + &(&a * &c));
    }

    #[test]
    fn subtraction_cancels(a in rf_strategy(), b in rf_strategy()) {
        prop_assert_eq!(&(&a + &b) - &b, a);
    }

    #[test]
    fn inverse_multiplies_to_one(a in rf_strategy()) {
        prop_assume!(!a.is_zero());
        let inv = a.inverse().unwrap();
        prop_assert_eq!(&a * &inv, QRationalFunction::one());
    }

    #[test]
    fn evaluation_is_a_homomorphism(a in rf_strategy(), b in rf_strategy()) {
        let t = qeuler::BigRational::new(1.into(), 3.into());
        let (ea, eb) = (a.eval_rational(&t), b.eval_rational(&t));
        prop_assume!(ea.is_ok() && eb.is_ok());
        let (ea, eb) = (ea.unwrap(), eb.unwrap());
        let sum = (&a + &b).eval_rational(&t);
        let prod = (&a * &b).eval_rational(&t);
        // A pole can only cancel, never appear, in the canonical sum.
        prop_assert_eq!(sum.unwrap(), &ea + &eb);
        prop_assert_eq!(prod.unwrap(), &ea * &eb);
    }
}
