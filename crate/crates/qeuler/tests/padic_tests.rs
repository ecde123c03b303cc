//! Finite-level fermionic integrals against hand-derived values, direct
//! summation oracles, and frozen valuation tables.

mod common;

use common::rat;
use num_rational::BigRational;
use num_traits::{One, Zero};
use qeuler::{
    euler_number, fermionic_integral_level, integral_equation_check, level_power_sums,
    rational_valuation, witt_check, IntegrandPoly,
};

fn monomial(degree: usize) -> IntegrandPoly {
    let mut coeffs = vec![BigRational::zero(); degree + 1];
    coeffs[degree] = BigRational::one();
    IntegrandPoly::new(coeffs).unwrap()
}

#[test]
fn level_one_integral_by_hand() {
    // p = 3, q = 4, g = x^4:
    //   (1+q)/(1+q^3) * (0 - 4 + 16*16) = 5 * 252 / 65 = 252/13.
    let q = rat(4, 1);
    let value = fermionic_integral_level(&monomial(4), 3, &q, 1).unwrap();
    assert_eq!(value, rat(252, 13));
}

#[test]
fn power_sums_match_direct_summation() {
    // Independent oracle: literal summation of x^m (-q)^x over one level.
    let p = 3u64;
    let level = 2u32;
    let q = rat(4, 1);
    let sums = level_power_sums(p, &q, level, 4).unwrap();
    let points = p.pow(level);
    for (m, got) in sums.iter().enumerate() {
        let mut acc = BigRational::zero();
        let mut sign_q = BigRational::one();
        for x in 0..points {
            if x > 0 {
                sign_q *= -&q;
            }
            let xm = rat(x as i64, 1);
            let mut pow = BigRational::one();
            for _ in 0..m {
                pow *= &xm;
            }
            acc += pow * &sign_q;
        }
        assert_eq!(got, &acc, "power {m}");
    }
}

#[test]
fn witt_valuations_for_a_frozen_cell() {
    // p = 5, q = 6, n = 2: the residual valuations at levels 1..4 are
    // exactly 1, 2, 3, 4.
    let q = rat(6, 1);
    let entries = witt_check(2, &BigRational::zero(), 5, &q, 4, 8).unwrap();
    let vals: Vec<Option<i64>> = entries.iter().map(|e| e.difference_valuation).collect();
    assert_eq!(vals, vec![Some(1), Some(2), Some(3), Some(4)]);

    // The same residuals recomputed here from the exact integrals.
    let target = euler_number(2).eval_rational(&q).unwrap();
    assert_eq!(target, rat(30, 49));
    for e in &entries {
        assert_eq!(
            rational_valuation(&(&e.integral - &target), 5),
            e.difference_valuation
        );
    }
}

#[test]
fn translation_identity_exact_for_constants() {
    let q = rat(8, 1);
    for n in 1..=3usize {
        let entries = integral_equation_check(&monomial(0), n, 7, &q, 4, 8).unwrap();
        for e in &entries {
            assert!(e.residual.is_zero(), "n={n} level={}", e.level);
            assert_eq!(e.valuation, None);
        }
    }
}

#[test]
fn translation_identity_residuals_shrink() {
    let q = rat(6, 1);
    for degree in 1..=2usize {
        let entries = integral_equation_check(&monomial(degree), 2, 5, &q, 5, 8).unwrap();
        for e in &entries {
            let v = e.valuation.unwrap_or(i64::MAX);
            assert!(
                v >= e.level as i64 - 1,
                "degree {degree} level {} valuation {v}",
                e.level
            );
        }
    }
}

#[test]
fn level_budget_is_enforced() {
    let q = rat(8, 1);
    let err = fermionic_integral_level(&monomial(1), 7, &q, 9).unwrap_err();
    assert!(matches!(err, qeuler::Error::Budget(_)), "{err}");
}

#[test]
fn q_congruence_is_validated() {
    // q must satisfy v_p(1 - q) >= 1 (or be 1 itself).
    let bad = rat(3, 1);
    assert!(fermionic_integral_level(&monomial(1), 5, &bad, 1).is_err());
    let good = BigRational::one();
    assert!(fermionic_integral_level(&monomial(1), 5, &good, 1).is_ok());
    // p = 2 is excluded with a dedicated message.
    let err = fermionic_integral_level(&monomial(1), 2, &rat(3, 1), 1).unwrap_err();
    assert!(err.to_string().contains("p = 2"), "{err}");
}

#[test]
fn integral_at_q_equal_one_by_hand() {
    // q = 1, p = 3, level 1: the prefactor is 2/(1+1) = 1 and
    // sum_{x<3} x (-1)^x = 0 - 1 + 2 = 1.
    let one = BigRational::one();
    let value = fermionic_integral_level(&monomial(1), 3, &one, 1).unwrap();
    assert_eq!(value, rat(1, 1));
}

#[test]
fn padic_display_of_an_integral() {
    let q = rat(4, 1);
    let entries = witt_check(1, &BigRational::zero(), 3, &q, 2, 6).unwrap();
    // E_{1,q} at q=4 is -4/5; the level values are p-integral here.
    let shown = entries[0].integral_padic.to_string();
    assert!(shown.contains("O(3^"), "{shown}");
}
