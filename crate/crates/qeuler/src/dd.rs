//! Minimal double-double arithmetic (roughly 31 significant decimal digits).
//!
//! The q-series evaluated by the analytic layer at negative integer `s`
//! suffer massive cancellation: partial sums can exceed the final value by
//! nine to ten orders of magnitude, which eats more than half of an `f64`
//! mantissa. Accumulating in double-double keeps the certified error bounds
//! honest at the 1e-9 scale without pulling in an arbitrary-precision float
//! dependency for what is a fixed, small workload.
//!
//! Only the operations the series loops need are implemented: field ops,
//! integer powers, and sine/cosine of rational multiples of 2*pi for root of
//! unity weights.

use num_rational::BigRational;
use num_traits::{ToPrimitive, Zero};

/// Unevaluated sum `hi + lo` with `|lo| <= ulp(hi)/2`.
#[derive(Clone, Copy, Debug, Default)]
pub(crate) struct Dd {
    pub hi: f64,
    pub lo: f64,
}

/// 2*pi to double-double precision: the `lo` limb is the rounding error of
/// the `f64` constant itself.
const TWO_PI: Dd = Dd {
    hi: std::f64::consts::TAU,
    lo: 2.4492935982947064e-16,
};

#[inline]
fn two_sum(a: f64, b: f64) -> (f64, f64) {
    let s = a + b;
    let bb = s - a;
    let err = (a - (s - bb)) + (b - bb);
    (s, err)
}

#[inline]
fn quick_two_sum(a: f64, b: f64) -> (f64, f64) {
    let s = a + b;
    let err = b - (s - a);
    (s, err)
}

#[inline]
fn two_prod(a: f64, b: f64) -> (f64, f64) {
    let p = a * b;
    // f64::mul_add rounds once, so this recovers the exact low part.
    let err = a.mul_add(b, -p);
    (p, err)
}

impl Dd {
    pub const ZERO: Dd = Dd { hi: 0.0, lo: 0.0 };
    pub const ONE: Dd = Dd { hi: 1.0, lo: 0.0 };

    pub fn from_f64(x: f64) -> Dd {
        Dd { hi: x, lo: 0.0 }
    }

    /// Best double-double approximation of an exact rational.
    pub fn from_rational(r: &BigRational) -> Dd {
        let hi = crate::field::rational_to_f64(r);
        if !hi.is_finite() {
            return Dd { hi, lo: 0.0 };
        }
        // lo = r - hi, computed exactly in rational arithmetic first.
        let hi_rat = BigRational::from_float(hi).unwrap_or_else(BigRational::zero);
        let lo = crate::field::rational_to_f64(&(r - hi_rat));
        Dd { hi, lo }
    }

    pub fn to_f64(self) -> f64 {
        self.hi + self.lo
    }

    pub fn add(self, rhs: Dd) -> Dd {
        let (s, e) = two_sum(self.hi, rhs.hi);
        let e = e + self.lo + rhs.lo;
        let (hi, lo) = quick_two_sum(s, e);
        Dd { hi, lo }
    }

    pub fn sub(self, rhs: Dd) -> Dd {
        self.add(-rhs)
    }

    pub fn mul(self, rhs: Dd) -> Dd {
        let (p, e) = two_prod(self.hi, rhs.hi);
        let e = e + self.hi * rhs.lo + self.lo * rhs.hi;
        let (hi, lo) = quick_two_sum(p, e);
        Dd { hi, lo }
    }

    pub fn div(self, rhs: Dd) -> Dd {
        // One Newton refinement of the f64 quotient.
        let q1 = self.hi / rhs.hi;
        let r = self.sub(rhs.mul(Dd::from_f64(q1)));
        let q2 = r.hi / rhs.hi;
        let r2 = r.sub(rhs.mul(Dd::from_f64(q2)));
        let q3 = r2.hi / rhs.hi;
        let (hi, lo) = quick_two_sum(q1, q2);
        Dd { hi, lo }.add(Dd::from_f64(q3))
    }

    /// Integer power, `powi(0) = 1` for every base including zero.
    pub fn powi(self, e: i64) -> Dd {
        if e == 0 {
            return Dd::ONE;
        }
        let mut base = if e < 0 { Dd::ONE.div(self) } else { self };
        let mut n = e.unsigned_abs();
        let mut acc = Dd::ONE;
        while n > 0 {
            if n & 1 == 1 {
                acc = acc.mul(base);
            }
            n >>= 1;
            if n > 0 {
                base = base.mul(base);
            }
        }
        acc
    }
}

impl std::ops::Neg for Dd {
    type Output = Dd;
    fn neg(self) -> Dd {
        Dd {
            hi: -self.hi,
            lo: -self.lo,
        }
    }
}

/// `(sin, cos)` of `2*pi*t` for exact rational `t`, via quadrant reduction in
/// rational arithmetic followed by a Taylor expansion on `[0, pi/2)`.
pub(crate) fn sincos_two_pi(t: &BigRational) -> (Dd, Dd) {
    // Reduce t to [0, 1); floor works for negative inputs too.
    let frac = t - t.floor();
    // Quadrant index and remainder: frac = (quad + r)/4 with r in [0, 1).
    let four = BigRational::from_integer(4.into());
    let scaled = &frac * &four;
    let quad = scaled.floor();
    let r = &scaled - &quad;
    let quad = quad.to_integer().to_i64().unwrap_or(0) & 3;
    let theta = TWO_PI.mul(Dd::from_rational(&(r / four)));
    let (s, c) = sincos_taylor(theta);
    match quad {
        0 => (s, c),
        1 => (c, -s),
        2 => (-s, -c),
        _ => (-c, s),
    }
}

/// Taylor series for sin and cos, valid for small non-negative angles
/// (here always below pi/2).
fn sincos_taylor(theta: Dd) -> (Dd, Dd) {
    let x2 = theta.mul(theta);
    let mut sin = Dd::ZERO;
    let mut cos = Dd::ZERO;
    // sin: term_k = (-1)^k x^(2k+1)/(2k+1)!, cos likewise with even powers.
    let mut term = theta;
    let mut k = 0u64;
    loop {
        sin = sin.add(term);
        term = term
            .mul(x2)
            .div(Dd::from_f64(-(((2 * k + 2) * (2 * k + 3)) as f64)));
        k += 1;
        if term.hi.abs() < 1e-35 || k > 40 {
            break;
        }
    }
    let mut term = Dd::ONE;
    let mut k = 0u64;
    loop {
        cos = cos.add(term);
        term = term
            .mul(x2)
            .div(Dd::from_f64(-(((2 * k + 1) * (2 * k + 2)) as f64)));
        k += 1;
        if term.hi.abs() < 1e-35 || k > 40 {
            break;
        }
    }
    (sin, cos)
}
