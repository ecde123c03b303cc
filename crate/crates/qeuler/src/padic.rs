//! Finite-level fermionic integrals and fixed-precision p-adic reporting.
//!
//! The measure behind the q-Euler family assigns mass
//! `(-1)^x q^x (1+q)/(1+q^(p^N))` to `x + p^N Z_p`, and the level-N integral
//! of a polynomial `g` is the finite sum
//!
//! ```text
//! I_N(g) = (1+q)/(1+q^(p^N)) * sum_{x=0}^{p^N - 1} g(x) (-1)^x q^x .
//! ```
//!
//! As `N` grows these sums converge p-adically to the exact values
//! (`I_N((x0+x)^n) -> E_{n,q}(x0)` for `q` in `1 + pZ_p`), and the point of
//! this module is to watch that convergence with certainty. All level sums
//! are therefore computed in exact rational arithmetic and only reduced
//! p-adically at the end; the [`PadicNumber`] carrier tracks precision but
//! never decides a valuation that the exact arithmetic could settle.
//!
//! `p = 2` is rejected throughout: the alternating weight `(-1)^x` collides
//! with the residue structure at 2 and the family is developed for odd
//! primes only.

use std::fmt;

use num_bigint::{BigInt, BigUint};
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Zero};

use crate::error::{Error, Result};
use crate::euler::euler_polynomial_at;
use crate::field::rat_pow;

/// Largest admissible `p^N` for a level sum.
const LEVEL_CAP: u64 = 10_000_000;
/// Largest admissible integrand degree.
pub const MAX_INTEGRAND_DEGREE: usize = 32;

/// A p-adic number at fixed precision: `unit * p^valuation + O(p^abs_prec)`.
///
/// A value that is indistinguishable from zero at the working precision is
/// stored with `unit = None`; its valuation is unknown except for the lower
/// bound `abs_prec`.
#[derive(Clone, Debug)]
pub struct PadicNumber {
    prime: u64,
    valuation: i64,
    unit: Option<BigUint>,
    abs_prec: i64,
}

impl PadicNumber {
    /// Reduce an exact rational to `precision` significant p-adic digits.
    pub fn from_rational(r: &BigRational, p: u64, precision: u32) -> Result<PadicNumber> {
        check_odd_prime(p)?;
        if precision == 0 {
            return Err(Error::Domain("precision must be at least one digit".into()));
        }
        if r.is_zero() {
            return Ok(PadicNumber::zero(p, precision as i64));
        }
        let v = rational_valuation(r, p).expect("nonzero rational");
        let p_big = BigInt::from(p);
        // Strip p^v, then reduce unit numerator over unit denominator.
        let mut numer = r.numer().clone();
        let mut denom = r.denom().clone();
        if v >= 0 {
            numer /= p_big.pow(v as u32);
        } else {
            denom /= p_big.pow((-v) as u32);
        }
        let modulus = BigUint::from(p).pow(precision);
        let nu = bigint_mod(&numer, &modulus);
        let du = bigint_mod(&denom, &modulus);
        let unit = nu * mod_inverse(&du, &modulus) % &modulus;
        Ok(PadicNumber {
            prime: p,
            valuation: v,
            unit: Some(unit),
            abs_prec: v + precision as i64,
        })
    }

    fn zero(p: u64, abs_prec: i64) -> PadicNumber {
        PadicNumber {
            prime: p,
            valuation: 0,
            unit: None,
            abs_prec,
        }
    }

    pub fn prime(&self) -> u64 {
        self.prime
    }

    /// `None` when the value cannot be told apart from zero at this
    /// precision; its true valuation is then at least `abs_precision()`.
    pub fn valuation(&self) -> Option<i64> {
        self.unit.as_ref().map(|_| self.valuation)
    }

    /// The value is known modulo `p^abs_precision()`.
    pub fn abs_precision(&self) -> i64 {
        self.abs_prec
    }

    pub fn is_zero_at_precision(&self) -> bool {
        self.unit.is_none()
    }

    /// Number of known significant digits (nonzero values only).
    pub fn digits(&self) -> Option<u32> {
        self.unit
            .as_ref()
            .map(|_| (self.abs_prec - self.valuation) as u32)
    }

    pub fn unit_part(&self) -> Option<&BigUint> {
        self.unit.as_ref()
    }

    fn modulus(&self, digits: i64) -> BigUint {
        BigUint::from(self.prime).pow(digits.max(0) as u32)
    }

    fn check_same_prime(&self, rhs: &PadicNumber) -> Result<()> {
        if self.prime != rhs.prime {
            return Err(Error::Domain(format!(
                "mixed primes {} and {}",
                self.prime, rhs.prime
            )));
        }
        Ok(())
    }

    pub fn add(&self, rhs: &PadicNumber) -> Result<PadicNumber> {
        self.check_same_prime(rhs)?;
        match (&self.unit, &rhs.unit) {
            (None, None) => Ok(PadicNumber::zero(
                self.prime,
                self.abs_prec.min(rhs.abs_prec),
            )),
            (None, Some(_)) => Ok(rhs.truncate_abs(self.abs_prec)),
            (Some(_), None) => Ok(self.truncate_abs(rhs.abs_prec)),
            (Some(u1), Some(u2)) => {
                let abs = self.abs_prec.min(rhs.abs_prec);
                let vmin = self.valuation.min(rhs.valuation);
                let width = abs - vmin;
                if width <= 0 {
                    return Ok(PadicNumber::zero(self.prime, abs));
                }
                let modulus = self.modulus(width);
                let p_big = BigUint::from(self.prime);
                let a = u1 * p_big.pow((self.valuation - vmin) as u32) % &modulus;
                let b = u2 * p_big.pow((rhs.valuation - vmin) as u32) % &modulus;
                let c = (a + b) % &modulus;
                Ok(PadicNumber::from_scaled(self.prime, vmin, c, abs))
            }
        }
    }

    pub fn neg(&self) -> PadicNumber {
        match &self.unit {
            None => self.clone(),
            Some(u) => {
                let modulus = self.modulus(self.abs_prec - self.valuation);
                PadicNumber {
                    prime: self.prime,
                    valuation: self.valuation,
                    unit: Some((modulus.clone() - u % &modulus) % modulus),
                    abs_prec: self.abs_prec,
                }
            }
        }
    }

    pub fn sub(&self, rhs: &PadicNumber) -> Result<PadicNumber> {
        self.add(&rhs.neg())
    }

    pub fn mul(&self, rhs: &PadicNumber) -> Result<PadicNumber> {
        self.check_same_prime(rhs)?;
        match (&self.unit, &rhs.unit) {
            (None, None) => Ok(PadicNumber::zero(self.prime, self.abs_prec + rhs.abs_prec)),
            (None, Some(_)) => Ok(PadicNumber::zero(self.prime, self.abs_prec + rhs.valuation)),
            (Some(_), None) => Ok(PadicNumber::zero(self.prime, rhs.abs_prec + self.valuation)),
            (Some(u1), Some(u2)) => {
                let digits = (self.abs_prec - self.valuation).min(rhs.abs_prec - rhs.valuation);
                let modulus = self.modulus(digits);
                let v = self.valuation + rhs.valuation;
                Ok(PadicNumber {
                    prime: self.prime,
                    valuation: v,
                    unit: Some(u1 * u2 % modulus),
                    abs_prec: v + digits,
                })
            }
        }
    }

    /// Division; dividing by something indistinguishable from zero is a
    /// precision failure, not a value.
    pub fn div(&self, rhs: &PadicNumber) -> Result<PadicNumber> {
        self.check_same_prime(rhs)?;
        let (v2, u2) = match &rhs.unit {
            None => {
                return Err(Error::Precision(format!(
                    "divisor is O({}^{}); its inverse is undetermined",
                    rhs.prime, rhs.abs_prec
                )))
            }
            Some(u) => (rhs.valuation, u),
        };
        match &self.unit {
            None => Ok(PadicNumber::zero(self.prime, self.abs_prec - v2)),
            Some(u1) => {
                let digits = (self.abs_prec - self.valuation).min(rhs.abs_prec - v2);
                let modulus = self.modulus(digits);
                let v = self.valuation - v2;
                Ok(PadicNumber {
                    prime: self.prime,
                    valuation: v,
                    unit: Some(u1 * mod_inverse(&(u2 % &modulus), &modulus) % &modulus),
                    abs_prec: v + digits,
                })
            }
        }
    }

    /// Same value, reported modulo the smaller `p^abs_prec`.
    fn truncate_abs(&self, abs_prec: i64) -> PadicNumber {
        let abs = self.abs_prec.min(abs_prec);
        match &self.unit {
            None => PadicNumber::zero(self.prime, abs),
            Some(u) => {
                if self.valuation >= abs {
                    return PadicNumber::zero(self.prime, abs);
                }
                let modulus = self.modulus(abs - self.valuation);
                PadicNumber {
                    prime: self.prime,
                    valuation: self.valuation,
                    unit: Some(u % modulus),
                    abs_prec: abs,
                }
            }
        }
    }

    /// Normalise a digit string `c * p^base_val` known mod `p^(abs - base_val)`.
    fn from_scaled(prime: u64, base_val: i64, c: BigUint, abs: i64) -> PadicNumber {
        if c.is_zero() {
            return PadicNumber::zero(prime, abs);
        }
        let p_big = BigUint::from(prime);
        let mut shift = 0i64;
        let mut unit = c;
        while (&unit % &p_big).is_zero() {
            unit /= &p_big;
            shift += 1;
        }
        let v = base_val + shift;
        if v >= abs {
            return PadicNumber::zero(prime, abs);
        }
        PadicNumber {
            prime,
            valuation: v,
            unit: Some(unit),
            abs_prec: abs,
        }
    }
}

impl fmt::Display for PadicNumber {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match &self.unit {
            None => write!(f, "O({}^{})", self.prime, self.abs_prec),
            Some(u) => {
                if self.valuation == 0 {
                    write!(f, "{} + O({}^{})", u, self.prime, self.abs_prec)
                } else {
                    write!(
                        f,
                        "{}*{}^{} + O({}^{})",
                        u, self.prime, self.valuation, self.prime, self.abs_prec
                    )
                }
            }
        }
    }
}

/// `v_p` of a nonzero rational; `None` for zero (valuation +infinity).
pub fn rational_valuation(r: &BigRational, p: u64) -> Option<i64> {
    if r.is_zero() {
        return None;
    }
    Some(int_valuation(r.numer(), p) - int_valuation(r.denom(), p))
}

fn int_valuation(n: &BigInt, p: u64) -> i64 {
    let p_big = BigInt::from(p);
    let mut v = 0i64;
    let mut rest = n.clone();
    loop {
        let (q, r) = rest.div_rem(&p_big);
        if !r.is_zero() {
            return v;
        }
        rest = q;
        v += 1;
    }
}

fn bigint_mod(n: &BigInt, modulus: &BigUint) -> BigUint {
    let m = BigInt::from(modulus.clone());
    let r = ((n % &m) + &m) % &m;
    r.to_biguint().expect("nonnegative remainder")
}

/// Inverse of `a` modulo `m` for `gcd(a, m) = 1`, by extended Euclid.
fn mod_inverse(a: &BigUint, m: &BigUint) -> BigUint {
    let (mut r0, mut r1) = (BigInt::from(m.clone()), BigInt::from(a.clone()));
    let (mut t0, mut t1) = (BigInt::zero(), BigInt::one());
    while !r1.is_zero() {
        let q = &r0 / &r1;
        let r2 = &r0 - &q * &r1;
        r0 = std::mem::replace(&mut r1, r2);
        let t2 = &t0 - &q * &t1;
        t0 = std::mem::replace(&mut t1, t2);
    }
    assert!(r0.is_one(), "unit inversion requires coprimality");
    bigint_mod(&t0, m)
}

fn check_odd_prime(p: u64) -> Result<()> {
    if p == 2 {
        return Err(Error::Domain(
            "p = 2 is excluded: the alternating fermionic weight degenerates there".into(),
        ));
    }
    if p < 3 || (p > 2 && p.is_multiple_of(2)) {
        return Err(Error::Domain(format!("{p} is not an odd prime")));
    }
    let mut d = 3u64;
    while d * d <= p {
        if p.is_multiple_of(d) {
            return Err(Error::Domain(format!("{p} is not prime ({d} divides it)")));
        }
        d += 2;
    }
    Ok(())
}

/// `q` must lie in `1 + pZ_p` so that `q^(p^N) -> 1`; equivalently
/// `v_p(1 - q) >= 1`, with `q = 1` allowed.
fn check_q(q: &BigRational, p: u64) -> Result<()> {
    let one_minus = BigRational::one() - q;
    match rational_valuation(&one_minus, p) {
        None => Ok(()),
        Some(v) if v >= 1 => Ok(()),
        Some(v) => Err(Error::Domain(format!(
            "q must satisfy v_p(1 - q) >= 1, got valuation {v}"
        ))),
    }
}

fn level_size(p: u64, level: u32) -> Result<u64> {
    if level == 0 {
        return Err(Error::Domain("level must be at least 1".into()));
    }
    match p.checked_pow(level) {
        Some(n) if n <= LEVEL_CAP => Ok(n),
        _ => Err(Error::Budget(format!(
            "p^N = {p}^{level} exceeds the level cap of {LEVEL_CAP} points"
        ))),
    }
}

/// A polynomial integrand with exact rational coefficients, ascending in x.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct IntegrandPoly {
    coeffs: Vec<BigRational>,
}

impl IntegrandPoly {
    pub fn new(mut coeffs: Vec<BigRational>) -> Result<IntegrandPoly> {
        while coeffs.last().is_some_and(|c| c.is_zero()) {
            coeffs.pop();
        }
        if coeffs.len() > MAX_INTEGRAND_DEGREE + 1 {
            return Err(Error::Domain(format!(
                "integrand degree {} exceeds the cap of {MAX_INTEGRAND_DEGREE}",
                coeffs.len() - 1
            )));
        }
        Ok(IntegrandPoly { coeffs })
    }

    pub fn one() -> IntegrandPoly {
        IntegrandPoly {
            coeffs: vec![BigRational::one()],
        }
    }

    /// `x^n`.
    pub fn monomial(n: usize) -> Result<IntegrandPoly> {
        if n > MAX_INTEGRAND_DEGREE {
            return Err(Error::Domain(format!(
                "integrand degree {n} exceeds the cap of {MAX_INTEGRAND_DEGREE}"
            )));
        }
        let mut coeffs = vec![BigRational::zero(); n + 1];
        coeffs[n] = BigRational::one();
        Ok(IntegrandPoly { coeffs })
    }

    /// `(x + x0)^n`, expanded.
    pub fn shifted_power(n: usize, x0: &BigRational) -> Result<IntegrandPoly> {
        if n > MAX_INTEGRAND_DEGREE {
            return Err(Error::Domain(format!(
                "integrand degree {n} exceeds the cap of {MAX_INTEGRAND_DEGREE}"
            )));
        }
        let mut coeffs = vec![BigRational::zero(); n + 1];
        let mut binom = BigInt::one();
        for (m, c) in coeffs.iter_mut().enumerate() {
            // coefficient of x^m is C(n,m) x0^(n-m)
            *c = BigRational::from_integer(binom.clone()) * rat_pow(x0, n - m);
            binom = binom.clone() * (n - m) / (m + 1);
        }
        IntegrandPoly::new(coeffs)
    }

    pub fn degree(&self) -> usize {
        self.coeffs.len().saturating_sub(1)
    }

    pub fn coeffs(&self) -> &[BigRational] {
        &self.coeffs
    }

    pub fn eval(&self, x: &BigRational) -> BigRational {
        let mut acc = BigRational::zero();
        for c in self.coeffs.iter().rev() {
            acc = acc * x + c;
        }
        acc
    }

    /// `g(x + c)` by binomial expansion.
    pub fn shift(&self, c: &BigRational) -> IntegrandPoly {
        let n = self.coeffs.len();
        let mut out = vec![BigRational::zero(); n];
        for (j, a) in self.coeffs.iter().enumerate() {
            if a.is_zero() {
                continue;
            }
            let mut binom = BigInt::one();
            for (m, o) in out.iter_mut().enumerate().take(j + 1) {
                *o += a * BigRational::from_integer(binom.clone()) * rat_pow(c, j - m);
                binom = binom.clone() * (j - m) / (m + 1);
            }
        }
        IntegrandPoly { coeffs: out }
    }
}

/// The power sums `T_m = sum_{x=0}^{p^N - 1} x^m (-q)^x` for `m` up to
/// `max_power`, computed exactly. These are the shared backbone of every
/// level integral: an integrand contributes through its coefficients only.
pub fn level_power_sums(
    p: u64,
    q: &BigRational,
    level: u32,
    max_power: usize,
) -> Result<Vec<BigRational>> {
    check_odd_prime(p)?;
    check_q(q, p)?;
    let points = level_size(p, level)?;
    if max_power > MAX_INTEGRAND_DEGREE {
        return Err(Error::Domain(format!(
            "power {max_power} exceeds the integrand degree cap"
        )));
    }

    if q.denom().is_one() {
        // Integer q: pure big-integer Horner, much faster than rational ops.
        let z = -q.numer().clone();
        let mut acc = vec![BigInt::zero(); max_power + 1];
        for x in (0..points).rev() {
            let xb = BigInt::from(x);
            let mut xp = BigInt::one();
            for a in acc.iter_mut() {
                *a = &*a * &z + &xp;
                xp *= &xb;
            }
        }
        return Ok(acc.into_iter().map(BigRational::from_integer).collect());
    }

    let z = -q.clone();
    let mut acc = vec![BigRational::zero(); max_power + 1];
    for x in (0..points).rev() {
        let xb = BigInt::from(x);
        let mut xp = BigRational::one();
        for a in acc.iter_mut() {
            *a = &*a * &z + &xp;
            xp *= BigRational::from_integer(xb.clone());
        }
    }
    Ok(acc)
}

fn prefactor(p: u64, q: &BigRational, level: u32) -> Result<BigRational> {
    let points = level_size(p, level)?;
    let one = BigRational::one();
    let q_pow = q.pow(points as i32);
    Ok((&one + q) / (one + q_pow))
}

fn integral_from_sums(g: &IntegrandPoly, sums: &[BigRational], pref: &BigRational) -> BigRational {
    let mut total = BigRational::zero();
    for (m, c) in g.coeffs().iter().enumerate() {
        if !c.is_zero() {
            total += c * &sums[m];
        }
    }
    pref * total
}

/// The level-N fermionic integral `I_N(g)`, exactly.
pub fn fermionic_integral_level(
    g: &IntegrandPoly,
    p: u64,
    q: &BigRational,
    level: u32,
) -> Result<BigRational> {
    let sums = level_power_sums(p, q, level, g.degree())?;
    let pref = prefactor(p, q, level)?;
    Ok(integral_from_sums(g, &sums, &pref))
}

/// One row of a Witt-style convergence table.
#[derive(Clone, Debug)]
pub struct WittEntry {
    pub level: u32,
    /// `I_N((x0+x)^n)`, exactly.
    pub integral: BigRational,
    /// `v_p(I_N - E_{n,q}(x0))`; `None` when the difference is exactly zero.
    pub difference_valuation: Option<i64>,
    /// The integral reduced to the reporting precision.
    pub integral_padic: PadicNumber,
}

/// Convergence of `I_N((x0+x)^n)` towards `E_{n,q}(x0)` for all degrees up
/// to `n_max` at once. Power sums are shared across degrees, which is what
/// makes dense grids affordable. `x0` must be p-integral.
pub fn witt_grid(
    n_max: usize,
    x0: &BigRational,
    p: u64,
    q: &BigRational,
    max_level: u32,
    precision: u32,
) -> Result<Vec<Vec<WittEntry>>> {
    check_odd_prime(p)?;
    check_q(q, p)?;
    if rational_valuation(x0, p).is_some_and(|v| v < 0) {
        return Err(Error::Domain(format!(
            "x0 = {x0} is not p-integral at p = {p}"
        )));
    }
    if max_level == 0 {
        return Err(Error::Domain("need at least one level".into()));
    }
    // Exact targets E_{n,q}(x0) at the given q.
    let targets: Vec<BigRational> = (0..=n_max)
        .map(|n| {
            euler_polynomial_at(n, x0)
                .eval_rational(q)
                .expect("1 + q^j does not vanish for q in 1 + pZ_p")
        })
        .collect();
    let integrands: Vec<IntegrandPoly> = (0..=n_max)
        .map(|n| IntegrandPoly::shifted_power(n, x0))
        .collect::<Result<_>>()?;

    let mut rows = vec![Vec::with_capacity(max_level as usize); n_max + 1];
    for level in 1..=max_level {
        let sums = level_power_sums(p, q, level, n_max)?;
        let pref = prefactor(p, q, level)?;
        for (n, g) in integrands.iter().enumerate() {
            let integral = integral_from_sums(g, &sums, &pref);
            let diff = &integral - &targets[n];
            rows[n].push(WittEntry {
                level,
                difference_valuation: rational_valuation(&diff, p),
                integral_padic: PadicNumber::from_rational(&integral, p, precision)?,
                integral,
            });
        }
    }
    Ok(rows)
}

/// Single-degree convenience wrapper around [`witt_grid`].
pub fn witt_check(
    n: usize,
    x0: &BigRational,
    p: u64,
    q: &BigRational,
    max_level: u32,
    precision: u32,
) -> Result<Vec<WittEntry>> {
    Ok(witt_grid(n, x0, p, q, max_level, precision)?.pop().unwrap())
}

/// One level of the translation identity check.
#[derive(Clone, Debug)]
pub struct IntegralEquationEntry {
    pub level: u32,
    /// `q^n I_N(g(x+n)) + (-1)^(n-1) I_N(g) - [2]_q sum_{l<n} (-1)^(n-1-l) q^l g(l)`.
    pub residual: BigRational,
    /// `None` when the residual is exactly zero at this level.
    pub valuation: Option<i64>,
    pub residual_padic: PadicNumber,
}

/// The translation identity
///
/// ```text
/// q^n I(g(x+n)) + (-1)^(n-1) I(g) = [2]_q sum_{l=0}^{n-1} (-1)^(n-1-l) q^l g(l)
/// ```
///
/// holds exactly for the limit integral; at finite level the residual is a
/// boundary term that shrinks p-adically as the level grows. The entries
/// report that residual per level, exactly.
pub fn integral_equation_check(
    g: &IntegrandPoly,
    n: usize,
    p: u64,
    q: &BigRational,
    max_level: u32,
    precision: u32,
) -> Result<Vec<IntegralEquationEntry>> {
    check_odd_prime(p)?;
    check_q(q, p)?;
    if n == 0 {
        return Err(Error::Domain(
            "the translation step n must be at least 1".into(),
        ));
    }
    if max_level == 0 {
        return Err(Error::Domain("need at least one level".into()));
    }
    let shifted = g.shift(&BigRational::from_integer(n.into()));
    // The right side does not depend on the level.
    let mut rhs = BigRational::zero();
    for l in 0..n {
        let sign = if (n - 1 - l).is_multiple_of(2) {
            BigRational::one()
        } else {
            -BigRational::one()
        };
        rhs += sign * q.pow(l as i32) * g.eval(&BigRational::from_integer(l.into()));
    }
    rhs *= BigRational::one() + q;
    let q_n = q.pow(n as i32);
    let flip = if n % 2 == 1 {
        BigRational::one()
    } else {
        -BigRational::one()
    };

    let mut out = Vec::with_capacity(max_level as usize);
    for level in 1..=max_level {
        let sums = level_power_sums(p, q, level, g.degree().max(shifted.degree()))?;
        let pref = prefactor(p, q, level)?;
        let lhs = &q_n * integral_from_sums(&shifted, &sums, &pref)
            + &flip * integral_from_sums(g, &sums, &pref);
        let residual = &lhs - &rhs;
        out.push(IntegralEquationEntry {
            level,
            valuation: rational_valuation(&residual, p),
            residual_padic: PadicNumber::from_rational(&residual, p, precision)?,
            residual,
        });
    }
    Ok(out)
}

/// The rank-r level integral
///
/// ```text
/// I_N^(r) = ((1+q)/(1+q^(p^N)))^r
///           sum_{x_1..x_r} (x0 + sum w_i x_i)^n prod (-q)^(x_i),
/// ```
///
/// computed by multinomial expansion over the shared power sums, so the cost
/// is polynomial in the level size rather than `p^(rN)`. Rank is capped at 2.
pub fn multivariate_integral_level(
    n: usize,
    weights: &[BigRational],
    x0: &BigRational,
    p: u64,
    q: &BigRational,
    level: u32,
) -> Result<BigRational> {
    if weights.is_empty() || weights.len() > 2 {
        return Err(Error::Domain(format!(
            "rank must be 1 or 2, got {}",
            weights.len()
        )));
    }
    if n > MAX_INTEGRAND_DEGREE {
        return Err(Error::Domain(format!(
            "degree {n} exceeds the cap of {MAX_INTEGRAND_DEGREE}"
        )));
    }
    let sums = level_power_sums(p, q, level, n)?;
    let pref = prefactor(p, q, level)?;
    let mut fact = vec![BigInt::one(); n + 1];
    for i in 1..=n {
        fact[i] = &fact[i - 1] * BigInt::from(i);
    }
    let mut total = BigRational::zero();
    match weights {
        [w] => {
            // sum_m C(n,m) x0^(n-m) w^m T_m
            for m in 0..=n {
                let c = BigRational::new(fact[n].clone(), &fact[m] * &fact[n - m]);
                total += c * rat_pow(x0, n - m) * rat_pow(w, m) * &sums[m];
            }
        }
        [w1, w2] => {
            for i in 0..=n {
                for j in 0..=(n - i) {
                    let k = n - i - j;
                    let c = BigRational::new(fact[n].clone(), &(&fact[i] * &fact[j]) * &fact[k]);
                    total +=
                        c * rat_pow(x0, k) * rat_pow(w1, i) * rat_pow(w2, j) * &sums[i] * &sums[j];
                }
            }
        }
        _ => unreachable!(),
    }
    let mut scale = BigRational::one();
    for _ in 0..weights.len() {
        scale *= &pref;
    }
    Ok(scale * total)
}
