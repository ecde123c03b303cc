//! Exact checks of the core tables against independently derived closed
//! forms and the classical limit.

mod common;

use std::str::FromStr;

use common::{classical_euler_at_zero, rat};
use num_rational::BigRational;
use qeuler::{
    euler_number, euler_polynomial, euler_polynomial_at, generalized_euler_number,
    higher_order_euler, q_one_limit, QRationalFunction,
};

fn rf(s: &str) -> QRationalFunction {
    QRationalFunction::from_str(s).unwrap()
}

#[test]
fn low_degree_numbers_match_closed_forms() {
    assert_eq!(euler_number(0), rf("1"));
    assert_eq!(euler_number(1), rf("-q/(1 + q)"));
    assert_eq!(euler_number(2), rf("q*(q - 1)/(1 + q)^2"));
    assert_eq!(euler_number(3), rf("-q*(q^2 - 4*q + 1)/(1 + q)^3"));
    assert_eq!(euler_number(4), rf("q*(q - 1)*(q^2 - 10*q + 1)/(1 + q)^4"));
    assert_eq!(
        euler_number(5),
        rf("-q*(q^4 - 26*q^3 + 66*q^2 - 26*q + 1)/(1 + q)^5")
    );
    assert_eq!(
        euler_number(6),
        rf("q*(q - 1)*(q^4 - 56*q^3 + 246*q^2 - 56*q + 1)/(1 + q)^6")
    );
}

#[test]
fn classical_limit_matches_independent_recurrence() {
    let oracle = classical_euler_at_zero(20);
    for (n, expected) in oracle.iter().enumerate() {
        assert_eq!(&q_one_limit(n), expected, "degree {n}");
    }
    // Spot values, hand-checkable.
    assert_eq!(q_one_limit(1), rat(-1, 2));
    assert_eq!(q_one_limit(7), rat(17, 8));
    assert_eq!(q_one_limit(9), rat(-31, 2));
}

#[test]
fn quadratic_polynomial_coefficients() {
    let p = euler_polynomial(2);
    assert_eq!(p.coeff(2), rf("1"));
    assert_eq!(p.coeff(1), rf("-2*q/(1 + q)"));
    assert_eq!(p.coeff(0), rf("q*(q - 1)/(1 + q)^2"));
}

#[test]
fn cubic_polynomial_at_one_half() {
    let value = euler_polynomial_at(3, &rat(1, 2));
    assert_eq!(value, rf("(1 - q)*(q^2 - 22*q + 1)/(8*(1 + q)^3)"));
    assert_eq!(value.eval_rational(&rat(1, 3)).unwrap(), rat(-7, 32));
}

#[test]
fn polynomials_at_zero_are_the_numbers() {
    for n in 0..12 {
        assert_eq!(
            euler_polynomial_at(n, &BigRational::from_integer(0.into())),
            euler_number(n)
        );
    }
}

#[test]
fn generalized_coefficients_sum_to_the_plain_numbers() {
    for f in [1u64, 3, 5] {
        for n in 0..8 {
            let gen = generalized_euler_number(n, f).unwrap();
            assert_eq!(gen.sum_coeffs(), euler_number(n), "f={f} n={n}");
        }
    }
}

#[test]
fn generalized_coefficient_pin() {
    let gen = generalized_euler_number(2, 3).unwrap();
    assert_eq!(gen.coeff(1).eval_rational(&rat(1, 2)).unwrap(), rat(8, 27));
}

#[test]
fn higher_order_pins() {
    assert_eq!(higher_order_euler(0, 4), QRationalFunction::one());
    assert_eq!(
        higher_order_euler(3, 2),
        rf("-2*q*(4*q^2 - 7*q + 1)/(1 + q)^3")
    );
    assert_eq!(higher_order_euler(2, 3), rf("3*q*(3*q - 1)/(1 + q)^2"));
}
