use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};

use crate::error::{Error, Result};

/// A polynomial in `q` with rational coefficients, stored dense in ascending
/// order with no trailing zero coefficients.
#[derive(Clone, Debug, PartialEq, Eq, Hash, Default)]
pub struct QPolynomial {
    coeffs: Vec<BigRational>,
}

impl QPolynomial {
    /// Build from ascending coefficients, trimming trailing zeros.
    pub fn new(mut coeffs: Vec<BigRational>) -> Self {
        while coeffs.last().is_some_and(|c| c.is_zero()) {
            coeffs.pop();
        }
        QPolynomial { coeffs }
    }

    pub fn zero() -> Self {
        QPolynomial { coeffs: Vec::new() }
    }

    pub fn one() -> Self {
        QPolynomial::constant(BigRational::one())
    }

    /// The variable `q` itself.
    pub fn var() -> Self {
        QPolynomial::monomial(BigRational::one(), 1)
    }

    pub fn constant(c: BigRational) -> Self {
        QPolynomial::new(vec![c])
    }

    pub fn monomial(c: BigRational, degree: usize) -> Self {
        if c.is_zero() {
            return QPolynomial::zero();
        }
        let mut coeffs = vec![BigRational::zero(); degree + 1];
        coeffs[degree] = c;
        QPolynomial { coeffs }
    }

    /// Convenience constructor from integer coefficients, ascending.
    pub fn from_ints(coeffs: &[i64]) -> Self {
        QPolynomial::new(
            coeffs
                .iter()
                .map(|&c| BigRational::from_integer(BigInt::from(c)))
                .collect(),
        )
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    pub fn is_one(&self) -> bool {
        self.coeffs.len() == 1 && self.coeffs[0].is_one()
    }

    pub fn is_constant(&self) -> bool {
        self.coeffs.len() <= 1
    }

    /// `None` for the zero polynomial.
    pub fn degree(&self) -> Option<usize> {
        self.coeffs.len().checked_sub(1)
    }

    pub fn coeff(&self, k: usize) -> BigRational {
        self.coeffs
            .get(k)
            .cloned()
            .unwrap_or_else(BigRational::zero)
    }

    pub fn coeffs(&self) -> &[BigRational] {
        &self.coeffs
    }

    /// Leading coefficient; zero for the zero polynomial.
    pub fn leading(&self) -> BigRational {
        self.coeffs
            .last()
            .cloned()
            .unwrap_or_else(BigRational::zero)
    }

    pub fn mul_scalar(&self, c: &BigRational) -> Self {
        if c.is_zero() {
            return QPolynomial::zero();
        }
        QPolynomial {
            coeffs: self.coeffs.iter().map(|a| a * c).collect(),
        }
    }

    pub fn pow(&self, mut e: u32) -> Self {
        let mut base = self.clone();
        let mut acc = QPolynomial::one();
        while e > 0 {
            if e & 1 == 1 {
                acc = &acc * &base;
            }
            e >>= 1;
            if e > 0 {
                base = &base * &base;
            }
        }
        acc
    }

    /// Substitute `q -> q^k`. Requires `k >= 1`.
    pub fn substitute_power(&self, k: u32) -> Self {
        assert!(k >= 1, "substitution exponent must be positive");
        if self.is_zero() || k == 1 {
            return self.clone();
        }
        let k = k as usize;
        let mut coeffs = vec![BigRational::zero(); (self.coeffs.len() - 1) * k + 1];
        for (i, c) in self.coeffs.iter().enumerate() {
            coeffs[i * k] = c.clone();
        }
        QPolynomial { coeffs }
    }

    /// Divide with remainder over Q. Errors on a zero divisor.
    pub fn divrem(&self, divisor: &QPolynomial) -> Result<(QPolynomial, QPolynomial)> {
        if divisor.is_zero() {
            return Err(Error::DivisionByZero);
        }
        let dd = divisor.coeffs.len() - 1;
        if self.coeffs.len() <= dd {
            return Ok((QPolynomial::zero(), self.clone()));
        }
        let mut rem = self.coeffs.clone();
        let mut quot = vec![BigRational::zero(); self.coeffs.len() - dd];
        let lead = divisor.leading();
        for i in (dd..rem.len()).rev() {
            if rem[i].is_zero() {
                continue;
            }
            let f = &rem[i] / &lead;
            for (j, c) in divisor.coeffs.iter().enumerate() {
                let t = c * &f;
                rem[i - dd + j] -= t;
            }
            quot[i - dd] = f;
        }
        Ok((QPolynomial::new(quot), QPolynomial::new(rem)))
    }

    /// Exact division; panics if the division leaves a remainder, which would
    /// indicate a broken gcd invariant upstream.
    pub(crate) fn exact_div(&self, divisor: &QPolynomial) -> QPolynomial {
        let (q, r) = self
            .divrem(divisor)
            .expect("exact division by zero polynomial");
        assert!(r.is_zero(), "division was expected to be exact");
        q
    }

    /// Monic associate (zero stays zero).
    pub fn monic(&self) -> QPolynomial {
        if self.is_zero() {
            return QPolynomial::zero();
        }
        let lead = self.leading();
        if lead.is_one() {
            return self.clone();
        }
        self.mul_scalar(&lead.recip())
    }

    /// Monic gcd. Computed fraction-free: both operands are scaled to
    /// primitive integer polynomials and run through a pseudo-remainder
    /// sequence, which keeps the intermediate coefficients integral instead
    /// of letting rational arithmetic blow up.
    pub fn gcd(&self, other: &QPolynomial) -> QPolynomial {
        if self.is_zero() {
            return other.monic();
        }
        if other.is_zero() {
            return self.monic();
        }
        if self.is_constant() || other.is_constant() {
            return QPolynomial::one();
        }
        let mut a = to_primitive_int(self);
        let mut b = to_primitive_int(other);
        if a.len() < b.len() {
            std::mem::swap(&mut a, &mut b);
        }
        loop {
            let r = pseudo_rem(&a, &b);
            if r.is_empty() {
                return from_int(&b).monic();
            }
            if r.len() == 1 {
                return QPolynomial::one();
            }
            a = b;
            b = primitive_part(r);
        }
    }

    /// Horner evaluation at a rational point.
    pub fn eval(&self, x: &BigRational) -> BigRational {
        let mut acc = BigRational::zero();
        for c in self.coeffs.iter().rev() {
            acc = acc * x + c;
        }
        acc
    }

    /// Horner evaluation in double precision.
    pub fn eval_f64(&self, x: f64) -> f64 {
        let mut acc = 0.0;
        for c in self.coeffs.iter().rev() {
            acc = acc * x + super::rational_to_f64(c);
        }
        acc
    }
}

/// Clear denominators and remove the integer content, normalising the sign of
/// the leading coefficient to be positive.
fn to_primitive_int(p: &QPolynomial) -> Vec<BigInt> {
    let mut lcm = BigInt::one();
    for c in p.coeffs() {
        lcm = lcm.lcm(c.denom());
    }
    let ints: Vec<BigInt> = p
        .coeffs()
        .iter()
        .map(|c| c.numer() * (&lcm / c.denom()))
        .collect();
    primitive_part(ints)
}

fn primitive_part(mut v: Vec<BigInt>) -> Vec<BigInt> {
    while v.last().is_some_and(|c| c.is_zero()) {
        v.pop();
    }
    if v.is_empty() {
        return v;
    }
    let mut content = BigInt::zero();
    for c in &v {
        content = content.gcd(c);
        if content.is_one() {
            break;
        }
    }
    if v.last().unwrap().is_negative() {
        content = -content;
    }
    if !content.is_one() {
        for c in &mut v {
            *c /= &content;
        }
    }
    v
}

/// Pseudo-remainder of primitive integer polynomials: the remainder of
/// `lc(b)^(deg a - deg b + 1) * a` by `b`, computed without fractions.
fn pseudo_rem(a: &[BigInt], b: &[BigInt]) -> Vec<BigInt> {
    let db = b.len() - 1;
    let lead = b.last().unwrap().clone();
    let mut rem: Vec<BigInt> = a.to_vec();
    while rem.len() > db {
        let da = rem.len() - 1;
        let top = rem.pop().unwrap();
        for c in rem.iter_mut() {
            *c *= &lead;
        }
        if !top.is_zero() {
            for j in 0..db {
                rem[da - db + j] -= &top * &b[j];
            }
        }
        while rem.last().is_some_and(|c| c.is_zero()) {
            rem.pop();
        }
    }
    rem
}

fn from_int(v: &[BigInt]) -> QPolynomial {
    QPolynomial::new(
        v.iter()
            .map(|c| BigRational::from_integer(c.clone()))
            .collect(),
    )
}

impl Add for &QPolynomial {
    type Output = QPolynomial;
    fn add(self, rhs: &QPolynomial) -> QPolynomial {
        let (long, short) = if self.coeffs.len() >= rhs.coeffs.len() {
            (self, rhs)
        } else {
            (rhs, self)
        };
        let mut coeffs = long.coeffs.clone();
        for (i, c) in short.coeffs.iter().enumerate() {
            coeffs[i] += c;
        }
        QPolynomial::new(coeffs)
    }
}

impl Sub for &QPolynomial {
    type Output = QPolynomial;
    fn sub(self, rhs: &QPolynomial) -> QPolynomial {
        let mut coeffs = self.coeffs.clone();
        coeffs.resize(coeffs.len().max(rhs.coeffs.len()), BigRational::zero());
        for (i, c) in rhs.coeffs.iter().enumerate() {
            coeffs[i] -= c;
        }
        QPolynomial::new(coeffs)
    }
}

impl Mul for &QPolynomial {
    type Output = QPolynomial;
    fn mul(self, rhs: &QPolynomial) -> QPolynomial {
        if self.is_zero() || rhs.is_zero() {
            return QPolynomial::zero();
        }
        let mut coeffs = vec![BigRational::zero(); self.coeffs.len() + rhs.coeffs.len() - 1];
        for (i, a) in self.coeffs.iter().enumerate() {
            if a.is_zero() {
                continue;
            }
            for (j, b) in rhs.coeffs.iter().enumerate() {
                if b.is_zero() {
                    continue;
                }
                coeffs[i + j] += a * b;
            }
        }
        QPolynomial::new(coeffs)
    }
}

impl Neg for &QPolynomial {
    type Output = QPolynomial;
    fn neg(self) -> QPolynomial {
        QPolynomial {
            coeffs: self.coeffs.iter().map(|c| -c).collect(),
        }
    }
}

macro_rules! forward_owned_binop {
    ($trait:ident, $method:ident) => {
        impl $trait for QPolynomial {
            type Output = QPolynomial;
            fn $method(self, rhs: QPolynomial) -> QPolynomial {
                (&self).$method(&rhs)
            }
        }
        impl $trait<&QPolynomial> for QPolynomial {
            type Output = QPolynomial;
            fn $method(self, rhs: &QPolynomial) -> QPolynomial {
                (&self).$method(rhs)
            }
        }
    };
}

forward_owned_binop!(Add, add);
forward_owned_binop!(Sub, sub);
forward_owned_binop!(Mul, mul);

impl Neg for QPolynomial {
    type Output = QPolynomial;
    fn neg(self) -> QPolynomial {
        -&self
    }
}

/// Render one monomial `c * q^k`, omitting redundant factors. `sign_space`
/// selects the `" + "` / `" - "` separators used after the first term.
fn fmt_term(f: &mut fmt::Formatter<'_>, c: &BigRational, k: usize, first: bool) -> fmt::Result {
    let neg = c.is_negative();
    if first {
        if neg {
            write!(f, "-")?;
        }
    } else if neg {
        write!(f, " - ")?;
    } else {
        write!(f, " + ")?;
    }
    let mag = c.abs();
    if k == 0 {
        write!(f, "{mag}")
    } else {
        if !mag.is_one() {
            write!(f, "{mag}*")?;
        }
        if k == 1 {
            write!(f, "q")
        } else {
            write!(f, "q^{k}")
        }
    }
}

impl fmt::Display for QPolynomial {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero() {
            return write!(f, "0");
        }
        let mut first = true;
        for (k, c) in self.coeffs.iter().enumerate() {
            if c.is_zero() {
                continue;
            }
            fmt_term(f, c, k, first)?;
            first = false;
        }
        Ok(())
    }
}
