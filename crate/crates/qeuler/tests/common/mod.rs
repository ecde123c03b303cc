//! Shared oracles for the integration tests.  Everything here is computed
//! with its own independent arithmetic so the library is never checked
//! against itself.

use num_bigint::BigInt;
use num_rational::BigRational;

#[allow(dead_code)]
pub fn rat(n: i64, d: i64) -> BigRational {
    BigRational::new(BigInt::from(n), BigInt::from(d))
}

/// Classical Euler polynomial values at zero, from their own recurrence
/// `2 E_n(0) = -sum_{k<n} C(n,k) E_k(0)` with `E_0(0) = 1`.  This touches
/// none of the library's q-machinery.
#[allow(dead_code)]
pub fn classical_euler_at_zero(n_max: usize) -> Vec<BigRational> {
    let mut values = vec![BigRational::from_integer(BigInt::from(1))];
    for n in 1..=n_max {
        let mut sum = BigRational::from_integer(BigInt::from(0));
        let mut binom = BigInt::from(1);
        for (k, value) in values.iter().enumerate() {
            sum += value * BigRational::from_integer(binom.clone());
            binom = binom * (n - k) / (k + 1);
        }
        values.push(-sum / BigRational::from_integer(BigInt::from(2)));
    }
    values
}
