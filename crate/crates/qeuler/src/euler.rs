//! The q-Euler numbers `E_{n,q}`, the attached polynomials `E_{n,q}(x)`,
//! their higher-order versions, and the weighted (Barnes-type) polynomials.
//!
//! All values live in Q(q). The numbers are defined through
//!
//! ```text
//! E_{0,q} = 1,
//! E_{n,q} = -(q/(1+q)) * sum_{k=0}^{n-1} C(n,k) E_{k,q}   for n >= 1,
//! ```
//!
//! which is the coefficient recurrence of the generating function
//! `[2]_q / (q e^t + 1)`. Setting q = 1 recovers the classical Euler
//! polynomial values `E_n(0)` up to the usual normalisation `[2]_1 = 2`.

use std::fmt;
use std::sync::{OnceLock, RwLock};

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Zero};

use crate::error::{Error, Result};
use crate::field::{q_bracket, rat_pow, QPolynomial, QRationalFunction};

/// Memoised table of the numbers `E_{n,q}`. Rows are computed once and shared
/// process-wide; `euler_number` is the convenience entry point.
pub struct EulerNumberTable {
    entries: RwLock<Vec<QRationalFunction>>,
}

static GLOBAL_TABLE: OnceLock<EulerNumberTable> = OnceLock::new();

impl EulerNumberTable {
    pub fn new() -> Self {
        EulerNumberTable {
            entries: RwLock::new(vec![QRationalFunction::one()]),
        }
    }

    pub fn global() -> &'static EulerNumberTable {
        GLOBAL_TABLE.get_or_init(EulerNumberTable::new)
    }

    /// Number of rows computed so far.
    pub fn computed(&self) -> usize {
        self.entries.read().unwrap().len()
    }

    pub fn get(&self, n: usize) -> QRationalFunction {
        {
            let table = self.entries.read().unwrap();
            if n < table.len() {
                return table[n].clone();
            }
        }
        let mut table = self.entries.write().unwrap();
        while table.len() <= n {
            let next = Self::next_row(&table);
            table.push(next);
        }
        table[n].clone()
    }

    /// One recurrence step: the row for `n = len(table)`.
    fn next_row(table: &[QRationalFunction]) -> QRationalFunction {
        let n = table.len();
        let mut sum = QRationalFunction::zero();
        let mut binom = BigInt::one();
        for (k, e_k) in table.iter().enumerate() {
            sum = &sum + &e_k.mul_rational(&BigRational::from_integer(binom.clone()));
            binom = binom * (n - k) / (k + 1);
        }
        let factor =
            QRationalFunction::new(QPolynomial::monomial(-BigRational::one(), 1), q_bracket(2))
                .unwrap();
        &factor * &sum
    }
}

impl Default for EulerNumberTable {
    fn default() -> Self {
        EulerNumberTable::new()
    }
}

/// The q-Euler number `E_{n,q}` as an exact element of Q(q).
pub fn euler_number(n: usize) -> QRationalFunction {
    EulerNumberTable::global().get(n)
}

/// `[2]_q = 1 + q` as a rational function; the normalising factor of the
/// whole family.
pub fn two_bracket() -> QRationalFunction {
    QRationalFunction::from_poly(q_bracket(2))
}

/// The classical limit `E_{n,q}|_{q=1}`, an exact rational. For the first few
/// n this gives 1, -1/2, 0, 1/4, 0, -1/2, ...
pub fn q_one_limit(n: usize) -> BigRational {
    euler_number(n)
        .eval_rational(&BigRational::one())
        .expect("E_{n,q} has no pole at q = 1")
}

/// A polynomial in `x` whose coefficients live in Q(q); the carrier type for
/// `E_{n,q}(x)`. Coefficients are stored ascending in `x`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct XPolynomial {
    coeffs: Vec<QRationalFunction>,
}

impl XPolynomial {
    pub fn new(mut coeffs: Vec<QRationalFunction>) -> Self {
        while coeffs.last().is_some_and(|c| c.is_zero()) {
            coeffs.pop();
        }
        XPolynomial { coeffs }
    }

    pub fn zero() -> Self {
        XPolynomial { coeffs: Vec::new() }
    }

    pub fn monomial(c: QRationalFunction, degree: usize) -> Self {
        if c.is_zero() {
            return XPolynomial::zero();
        }
        let mut coeffs = vec![QRationalFunction::zero(); degree + 1];
        coeffs[degree] = c;
        XPolynomial { coeffs }
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    pub fn degree(&self) -> Option<usize> {
        self.coeffs.len().checked_sub(1)
    }

    pub fn coeff(&self, k: usize) -> QRationalFunction {
        self.coeffs
            .get(k)
            .cloned()
            .unwrap_or_else(QRationalFunction::zero)
    }

    pub fn coeffs(&self) -> &[QRationalFunction] {
        &self.coeffs
    }

    pub fn add(&self, rhs: &XPolynomial) -> XPolynomial {
        let len = self.coeffs.len().max(rhs.coeffs.len());
        let mut coeffs = Vec::with_capacity(len);
        for i in 0..len {
            coeffs.push(&self.coeff(i) + &rhs.coeff(i));
        }
        XPolynomial::new(coeffs)
    }

    pub fn sub(&self, rhs: &XPolynomial) -> XPolynomial {
        let len = self.coeffs.len().max(rhs.coeffs.len());
        let mut coeffs = Vec::with_capacity(len);
        for i in 0..len {
            coeffs.push(&self.coeff(i) - &rhs.coeff(i));
        }
        XPolynomial::new(coeffs)
    }

    pub fn scale(&self, c: &QRationalFunction) -> XPolynomial {
        if c.is_zero() {
            return XPolynomial::zero();
        }
        XPolynomial::new(self.coeffs.iter().map(|a| a * c).collect())
    }

    /// Horner evaluation at a rational `x`, landing back in Q(q).
    pub fn eval_rational(&self, x: &BigRational) -> QRationalFunction {
        let mut acc = QRationalFunction::zero();
        for c in self.coeffs.iter().rev() {
            acc = &acc.mul_rational(x) + c;
        }
        acc
    }

    /// Substitute `q -> q^k` in every coefficient.
    pub fn substitute_q_power(&self, k: u32) -> XPolynomial {
        XPolynomial {
            coeffs: self.coeffs.iter().map(|c| c.substitute_power(k)).collect(),
        }
    }
}

impl fmt::Display for XPolynomial {
    /// Descending powers of `x`; coefficients from Q(q) are parenthesised
    /// whenever they are not a plain one-term numerator.
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero() {
            return write!(f, "0");
        }
        let mut first = true;
        for k in (0..self.coeffs.len()).rev() {
            let c = &self.coeffs[k];
            if c.is_zero() {
                continue;
            }
            let mut rendered = c.to_string();
            let single_term = c
                .numerator()
                .coeffs()
                .iter()
                .filter(|t| !t.is_zero())
                .count()
                == 1;
            // Pull a leading minus out of one-term coefficients so terms join
            // with " - " instead of " + -".
            let mut negative = false;
            if single_term && rendered.starts_with('-') {
                negative = true;
                rendered.remove(0);
            }
            if first {
                if negative {
                    write!(f, "-")?;
                }
            } else if negative {
                write!(f, " - ")?;
            } else {
                write!(f, " + ")?;
            }
            first = false;
            if k == 0 {
                write!(f, "{rendered}")?;
            } else {
                let var = if k == 1 {
                    "x".to_string()
                } else {
                    format!("x^{k}")
                };
                // Multi-term coefficients over denominator 1 render as bare
                // sums and need parentheses; quotients are already bracketed.
                let needs_parens = !single_term && c.denominator().is_one();
                if rendered == "1" {
                    write!(f, "{var}")?;
                } else if needs_parens {
                    write!(f, "({rendered})*{var}")?;
                } else {
                    write!(f, "{rendered}*{var}")?;
                }
            }
        }
        Ok(())
    }
}

/// The q-Euler polynomial `E_{n,q}(x) = sum_m C(n,m) E_{m,q} x^{n-m}`.
pub fn euler_polynomial(n: usize) -> XPolynomial {
    let mut coeffs = vec![QRationalFunction::zero(); n + 1];
    let mut binom = BigInt::one();
    for m in 0..=n {
        // coefficient of x^{n-m} is C(n,m) E_{m,q}
        coeffs[n - m] = euler_number(m).mul_rational(&BigRational::from_integer(binom.clone()));
        binom = binom * (n - m) / (m + 1);
    }
    XPolynomial::new(coeffs)
}

/// `E_{n,q}(x)` evaluated at a rational point, exactly.
pub fn euler_polynomial_at(n: usize, x: &BigRational) -> QRationalFunction {
    euler_polynomial(n).eval_rational(x)
}

/// Higher-order numbers `E^{(r)}_{n,q}`: coefficients of
/// `([2]_q/(q e^t + 1))^r`. `r = 1` recovers `E_{n,q}`; the order-(r+1) row
/// is the binomial convolution of the order-r row with the base row.
///
/// Requires `r >= 1` (the order-0 family is identically the constant 1 and is
/// not exposed).
pub fn higher_order_euler(n: usize, r: usize) -> QRationalFunction {
    assert!(r >= 1, "order must be at least 1");
    higher_order_table(n, r)[r - 1][n].clone()
}

/// All rows `E^{(j)}_{m,q}` for `1 <= j <= r_max`, `0 <= m <= n_max`.
pub fn higher_order_table(n_max: usize, r_max: usize) -> Vec<Vec<QRationalFunction>> {
    assert!(r_max >= 1, "order must be at least 1");
    let base: Vec<QRationalFunction> = (0..=n_max).map(euler_number).collect();
    let mut rows = vec![base.clone()];
    for _ in 1..r_max {
        let prev = rows.last().unwrap();
        let mut next = Vec::with_capacity(n_max + 1);
        for n in 0..=n_max {
            let mut sum = QRationalFunction::zero();
            let mut binom = BigInt::one();
            for k in 0..=n {
                let term = &prev[k] * &base[n - k];
                sum = &sum + &term.mul_rational(&BigRational::from_integer(binom.clone()));
                binom = binom * (n - k) / (k + 1);
            }
            next.push(sum);
        }
        rows.push(next);
    }
    rows
}

/// Weighted polynomial of Barnes type,
/// `E_{n,q}(w_1,...,w_r | x) = sum multinomial(n; m, l_1..l_r) x^m
///  * prod_i w_i^{l_i} E_{l_i,q}`, the sum running over all compositions
/// `m + l_1 + ... + l_r = n`.
///
/// With every weight equal to 1 and `x = 0` this collapses to the
/// sums-of-products expansion of `E^{(r)}_{n,q}`; with `r = 1`, `w = 1` it is
/// `E_{n,q}(x)`.
pub fn barnes_euler_polynomial(
    n: usize,
    weights: &[BigRational],
    x: &BigRational,
) -> Result<QRationalFunction> {
    if weights.is_empty() {
        return Err(Error::Domain("at least one weight is required".into()));
    }
    let r = weights.len();
    let base: Vec<QRationalFunction> = (0..=n).map(euler_number).collect();
    // factorials up to n for the multinomial coefficients
    let mut fact = vec![BigInt::one(); n + 1];
    for i in 1..=n {
        fact[i] = &fact[i - 1] * BigInt::from(i);
    }
    let mut acc = QRationalFunction::zero();
    // exponents[0] = m (the x exponent), exponents[1..] = l_i
    let mut exponents = vec![0usize; r + 1];
    compose(n, 0, &mut exponents, &mut |expo: &[usize]| {
        let mut denom = BigInt::one();
        for &e in expo {
            denom *= &fact[e];
        }
        let mut scalar = BigRational::new(fact[n].clone(), denom);
        scalar *= rat_pow(x, expo[0]);
        for (w, &l) in weights.iter().zip(&expo[1..]) {
            scalar *= rat_pow(w, l);
        }
        if scalar.is_zero() {
            return;
        }
        let mut term = QRationalFunction::from_rational(scalar);
        for &l in &expo[1..] {
            term = &term * &base[l];
        }
        acc = &acc + &term;
    });
    Ok(acc)
}

/// Enumerate all ways to distribute `remaining` across `expo[idx..]`,
/// invoking `f` for each complete assignment.
fn compose(remaining: usize, idx: usize, expo: &mut Vec<usize>, f: &mut impl FnMut(&[usize])) {
    if idx == expo.len() - 1 {
        expo[idx] = remaining;
        f(expo);
        return;
    }
    for v in 0..=remaining {
        expo[idx] = v;
        compose(remaining - v, idx + 1, expo, f);
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::field::{rat, rat_int};

    #[test]
    fn first_numbers_closed_forms() {
        assert!(euler_number(0).is_one());
        assert_eq!(euler_number(1).to_string(), "-q/(1 + q)");
        // E_2 = q(q - 1)/(1+q)^2, E_3 = -q(q^2 - 4q + 1)/(1+q)^3
        let q = QRationalFunction::var();
        let d = two_bracket();
        let e2 = &(&q * &(&q - &QRationalFunction::one())) / &(&d * &d);
        assert_eq!(euler_number(2), e2);
        let num = QPolynomial::from_ints(&[1, -4, 1]);
        let e3 = &(-&(&q * &QRationalFunction::from_poly(num))) / &d.pow(3);
        assert_eq!(euler_number(3), e3);
    }

    #[test]
    fn classical_limits() {
        let expected = [
            rat_int(1),
            rat(-1, 2),
            rat_int(0),
            rat(1, 4),
            rat_int(0),
            rat(-1, 2),
            rat_int(0),
            rat(17, 8),
        ];
        for (n, want) in expected.iter().enumerate() {
            assert_eq!(&q_one_limit(n), want, "n = {n}");
        }
    }

    #[test]
    fn polynomial_low_degrees() {
        assert_eq!(euler_polynomial(0).to_string(), "1");
        assert_eq!(euler_polynomial(1).to_string(), "x - q/(1 + q)");
        // E_{n,q}(0) = E_{n,q}
        for n in 0..6 {
            assert_eq!(
                euler_polynomial_at(n, &BigRational::zero()),
                euler_number(n)
            );
        }
    }

    #[test]
    fn higher_order_first_row_is_base() {
        for n in 0..6 {
            assert_eq!(higher_order_euler(n, 1), euler_number(n));
        }
    }

    #[test]
    fn barnes_degenerations() {
        let one = [BigRational::one()];
        for n in 0..6 {
            // r = 1, w = 1: the ordinary polynomial.
            let x = rat(1, 3);
            assert_eq!(
                barnes_euler_polynomial(n, &one, &x).unwrap(),
                euler_polynomial_at(n, &x)
            );
        }
        // r = 2, weights 1, x = 0: order-2 numbers.
        let ones = [BigRational::one(), BigRational::one()];
        for n in 0..5 {
            assert_eq!(
                barnes_euler_polynomial(n, &ones, &BigRational::zero()).unwrap(),
                higher_order_euler(n, 2)
            );
        }
        assert!(barnes_euler_polynomial(3, &[], &BigRational::zero()).is_err());
    }

    #[test]
    fn table_is_memoised() {
        let t = EulerNumberTable::new();
        let a = t.get(6);
        assert!(t.computed() >= 7);
        assert_eq!(a, t.get(6));
    }
}
