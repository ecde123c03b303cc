//! Exact arithmetic in the field Q(q) of rational functions over the
//! rationals.
//!
//! Everything downstream (Euler number tables, distribution identities, the
//! p-adic level sums) reduces to arithmetic here, so the invariants are kept
//! strict: a [`QRationalFunction`] is always stored with numerator and
//! denominator coprime and the denominator monic. Two values are equal iff
//! their stored forms are identical, which makes symbolic identity checks a
//! plain structural comparison.

mod parse;
mod poly;
mod ratfunc;

pub use poly::QPolynomial;
pub use ratfunc::QRationalFunction;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{Signed, ToPrimitive, Zero};

/// Shorthand for building a rational from an integer pair.
pub fn rat(numer: i64, denom: i64) -> BigRational {
    BigRational::new(BigInt::from(numer), BigInt::from(denom))
}

/// Shorthand for an integer rational.
pub fn rat_int(n: i64) -> BigRational {
    BigRational::from_integer(BigInt::from(n))
}

/// `x^k` with the convention `0^0 = 1`.
pub fn rat_pow(x: &BigRational, k: usize) -> BigRational {
    let mut acc = BigRational::from_integer(BigInt::from(1));
    for _ in 0..k {
        acc *= x;
    }
    acc
}

/// The q-bracket `[n]_q = (1 - q^n)/(1 - q)`, as an exact polynomial
/// `1 + q + ... + q^{n-1}`. `[0]_q = 0`.
pub fn q_bracket(n: usize) -> QPolynomial {
    QPolynomial::new(vec![BigRational::from_integer(BigInt::from(1)); n])
}

/// Convert a rational to `f64`, falling back to a scaled path when the parts
/// overflow a double on their own.
pub fn rational_to_f64(r: &BigRational) -> f64 {
    if let (Some(n), Some(d)) = (r.numer().to_f64(), r.denom().to_f64()) {
        if n.is_finite() && d.is_finite() && d != 0.0 {
            return n / d;
        }
    }
    if r.is_zero() {
        return 0.0;
    }
    // Shift both parts down so each fits comfortably in a double, preserving
    // the quotient exactly up to the final rounding.
    let nb = r.numer().magnitude().bits() as i64;
    let db = r.denom().magnitude().bits() as i64;
    let shift_n = (nb - 900).max(0) as u64;
    let shift_d = (db - 900).max(0) as u64;
    let n = (r.numer() >> shift_n).to_f64().unwrap_or(f64::NAN);
    let d = (r.denom() >> shift_d).to_f64().unwrap_or(f64::NAN);
    let mut x = n / d;
    let net = shift_n as i64 - shift_d as i64;
    x *= 2f64.powi(net.clamp(i32::MIN as i64, i32::MAX as i64) as i32);
    if r.is_negative() && x > 0.0 {
        x = -x;
    }
    x
}
