use std::fmt;
use std::ops::{Add, Div, Mul, Neg, Sub};
use std::str::FromStr;

use num_complex::Complex64;
use num_rational::BigRational;
use num_traits::{One, Zero};

use crate::error::{Error, Result};
use crate::field::poly::QPolynomial;

/// An element of Q(q), kept in canonical form: numerator and denominator
/// coprime, denominator monic and never zero. Structural equality is
/// therefore mathematical equality.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct QRationalFunction {
    num: QPolynomial,
    den: QPolynomial,
}

impl QRationalFunction {
    /// Build `num/den`, reducing to canonical form. Errors when `den` is the
    /// zero polynomial.
    pub fn new(num: QPolynomial, den: QPolynomial) -> Result<Self> {
        if den.is_zero() {
            return Err(Error::DivisionByZero);
        }
        Ok(Self::reduce(num, den))
    }

    fn reduce(num: QPolynomial, den: QPolynomial) -> Self {
        if num.is_zero() {
            return QRationalFunction {
                num: QPolynomial::zero(),
                den: QPolynomial::one(),
            };
        }
        let (mut num, mut den) = (num, den);
        if !den.is_constant() {
            let g = num.gcd(&den);
            if !g.is_one() {
                num = num.exact_div(&g);
                den = den.exact_div(&g);
            }
        }
        let lead = den.leading();
        if !lead.is_one() {
            let inv = lead.recip();
            num = num.mul_scalar(&inv);
            den = den.mul_scalar(&inv);
        }
        QRationalFunction { num, den }
    }

    /// Wrap two parts already known to be coprime with a monic denominator.
    fn from_canonical(num: QPolynomial, den: QPolynomial) -> Self {
        QRationalFunction { num, den }
    }

    pub fn from_poly(p: QPolynomial) -> Self {
        QRationalFunction {
            num: p,
            den: QPolynomial::one(),
        }
    }

    pub fn from_rational(c: BigRational) -> Self {
        QRationalFunction::from_poly(QPolynomial::constant(c))
    }

    pub fn from_int(n: i64) -> Self {
        QRationalFunction::from_rational(BigRational::from_integer(n.into()))
    }

    pub fn zero() -> Self {
        QRationalFunction::from_poly(QPolynomial::zero())
    }

    pub fn one() -> Self {
        QRationalFunction::from_poly(QPolynomial::one())
    }

    /// The variable `q`.
    pub fn var() -> Self {
        QRationalFunction::from_poly(QPolynomial::var())
    }

    pub fn is_zero(&self) -> bool {
        self.num.is_zero()
    }

    pub fn is_one(&self) -> bool {
        self.num.is_one() && self.den.is_one()
    }

    pub fn numerator(&self) -> &QPolynomial {
        &self.num
    }

    pub fn denominator(&self) -> &QPolynomial {
        &self.den
    }

    /// `None` when the value is a polynomial (denominator 1); otherwise the
    /// pair of degrees.
    pub fn as_polynomial(&self) -> Option<&QPolynomial> {
        if self.den.is_one() {
            Some(&self.num)
        } else {
            None
        }
    }

    pub fn mul_rational(&self, c: &BigRational) -> Self {
        if c.is_zero() {
            return QRationalFunction::zero();
        }
        QRationalFunction::from_canonical(self.num.mul_scalar(c), self.den.clone())
    }

    /// Multiplicative inverse. Errors on zero.
    pub fn inverse(&self) -> Result<Self> {
        if self.is_zero() {
            return Err(Error::DivisionByZero);
        }
        let lead = self.num.leading();
        let inv = lead.recip();
        Ok(QRationalFunction::from_canonical(
            self.den.mul_scalar(&inv),
            self.num.mul_scalar(&inv),
        ))
    }

    /// Division that surfaces a zero divisor as an error instead of a panic.
    pub fn checked_div(&self, rhs: &QRationalFunction) -> Result<Self> {
        Ok(self * &rhs.inverse()?)
    }

    pub fn pow(&self, e: u32) -> Self {
        // Numerator and denominator stay coprime under powers.
        QRationalFunction::from_canonical(self.num.pow(e), self.den.pow(e))
    }

    /// Substitute `q -> q^k` for `k >= 1`. Coprimality survives the
    /// substitution (a common root of the images would power down to a common
    /// root of the originals) and so does monicity, so no reduction is run.
    pub fn substitute_power(&self, k: u32) -> Self {
        QRationalFunction::from_canonical(
            self.num.substitute_power(k),
            self.den.substitute_power(k),
        )
    }

    /// Exact evaluation at a rational point; a vanishing denominator is
    /// reported as a pole.
    pub fn eval_rational(&self, x: &BigRational) -> Result<BigRational> {
        let d = self.den.eval(x);
        if d.is_zero() {
            return Err(Error::Pole {
                denominator: self.den.to_string(),
            });
        }
        Ok(self.num.eval(x) / d)
    }

    pub fn eval_f64(&self, x: f64) -> Result<f64> {
        let d = self.den.eval_f64(x);
        if d == 0.0 {
            return Err(Error::Pole {
                denominator: self.den.to_string(),
            });
        }
        Ok(self.num.eval_f64(x) / d)
    }

    pub fn eval_complex(&self, x: Complex64) -> Result<Complex64> {
        let horner = |p: &QPolynomial| {
            let mut acc = Complex64::new(0.0, 0.0);
            for c in p.coeffs().iter().rev() {
                acc = acc * x + Complex64::new(super::rational_to_f64(c), 0.0);
            }
            acc
        };
        let d = horner(&self.den);
        if d.norm() == 0.0 {
            return Err(Error::Pole {
                denominator: self.den.to_string(),
            });
        }
        Ok(horner(&self.num) / d)
    }
}

impl Add for &QRationalFunction {
    type Output = QRationalFunction;
    fn add(self, rhs: &QRationalFunction) -> QRationalFunction {
        if self.is_zero() {
            return rhs.clone();
        }
        if rhs.is_zero() {
            return self.clone();
        }
        if self.den == rhs.den {
            // Same denominator: only a factor of that denominator can cancel.
            return QRationalFunction::reduce(&self.num + &rhs.num, self.den.clone());
        }
        let g = self.den.gcd(&rhs.den);
        if g.is_one() {
            // Coprime denominators: the cross sum is already reduced.
            let num = &(&self.num * &rhs.den) + &(&rhs.num * &self.den);
            if num.is_zero() {
                return QRationalFunction::zero();
            }
            return QRationalFunction::from_canonical(num, &self.den * &rhs.den);
        }
        let da = self.den.exact_div(&g);
        let db = rhs.den.exact_div(&g);
        let num = &(&self.num * &db) + &(&rhs.num * &da);
        // Any common factor with the denominator must divide g.
        let h = num.gcd(&g);
        let den = &(&da * &db) * &g;
        if h.is_one() {
            QRationalFunction::from_canonical(num, den)
        } else {
            QRationalFunction::from_canonical(num.exact_div(&h), den.exact_div(&h))
        }
    }
}

impl Sub for &QRationalFunction {
    type Output = QRationalFunction;
    fn sub(self, rhs: &QRationalFunction) -> QRationalFunction {
        self + &(-rhs)
    }
}

impl Mul for &QRationalFunction {
    type Output = QRationalFunction;
    fn mul(self, rhs: &QRationalFunction) -> QRationalFunction {
        if self.is_zero() || rhs.is_zero() {
            return QRationalFunction::zero();
        }
        // Cancel across the product first so the result needs no further
        // reduction: (a/b)(c/d) = (a/g1)(c/g2) / ((b/g2)(d/g1)) with
        // g1 = gcd(a, d), g2 = gcd(c, b).
        let g1 = self.num.gcd(&rhs.den);
        let g2 = rhs.num.gcd(&self.den);
        let a = if g1.is_one() {
            self.num.clone()
        } else {
            self.num.exact_div(&g1)
        };
        let d = if g1.is_one() {
            rhs.den.clone()
        } else {
            rhs.den.exact_div(&g1)
        };
        let c = if g2.is_one() {
            rhs.num.clone()
        } else {
            rhs.num.exact_div(&g2)
        };
        let b = if g2.is_one() {
            self.den.clone()
        } else {
            self.den.exact_div(&g2)
        };
        QRationalFunction::from_canonical(&a * &c, &b * &d)
    }
}

impl Div for &QRationalFunction {
    type Output = QRationalFunction;
    /// Panics on a zero divisor; use [`QRationalFunction::checked_div`] to
    /// get an error instead.
    fn div(self, rhs: &QRationalFunction) -> QRationalFunction {
        self.checked_div(rhs)
            .expect("division by zero rational function")
    }
}

impl Neg for &QRationalFunction {
    type Output = QRationalFunction;
    fn neg(self) -> QRationalFunction {
        QRationalFunction::from_canonical(-&self.num, self.den.clone())
    }
}

macro_rules! forward_owned_binop {
    ($trait:ident, $method:ident) => {
        impl $trait for QRationalFunction {
            type Output = QRationalFunction;
            fn $method(self, rhs: QRationalFunction) -> QRationalFunction {
                (&self).$method(&rhs)
            }
        }
        impl $trait<&QRationalFunction> for QRationalFunction {
            type Output = QRationalFunction;
            fn $method(self, rhs: &QRationalFunction) -> QRationalFunction {
                (&self).$method(rhs)
            }
        }
    };
}

forward_owned_binop!(Add, add);
forward_owned_binop!(Sub, sub);
forward_owned_binop!(Mul, mul);
forward_owned_binop!(Div, div);

impl Neg for QRationalFunction {
    type Output = QRationalFunction;
    fn neg(self) -> QRationalFunction {
        -&self
    }
}

impl std::iter::Sum for QRationalFunction {
    fn sum<I: Iterator<Item = QRationalFunction>>(iter: I) -> Self {
        iter.fold(QRationalFunction::zero(), |acc, x| &acc + &x)
    }
}

impl fmt::Display for QRationalFunction {
    /// Canonical string form, e.g. `-q/(1 + q)` or `(1 - q)/(1 + 2*q + q^2)`.
    /// The denominator is always parenthesised when present, numerators only
    /// when they have more than one term, so the output parses back
    /// unambiguously.
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.den.is_one() {
            return write!(f, "{}", self.num);
        }
        let nterms = self.num.coeffs().iter().filter(|c| !c.is_zero()).count();
        if nterms > 1 {
            write!(f, "({})/({})", self.num, self.den)
        } else {
            write!(f, "{}/({})", self.num, self.den)
        }
    }
}

impl FromStr for QRationalFunction {
    type Err = Error;
    fn from_str(s: &str) -> Result<Self> {
        super::parse::parse_rational_function(s)
    }
}
