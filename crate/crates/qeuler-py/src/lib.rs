//! Python bindings for the q-Euler toolkit.
//!
//! Exact quantities cross the language boundary as canonical strings —
//! rational functions of `q` like `"-q/(1 + q)"`, or rationals `"a/b"` —
//! so nothing is rounded. Analytic evaluations return `(value, bound)`
//! pairs where `bound` is a certified absolute error bound, and
//! verification reports come back as JSON strings ready for `json.loads`.

use std::str::FromStr;

use num_complex::Complex64;
use num_rational::BigRational;
use num_traits::{One, Zero};
use pyo3::exceptions::PyValueError;
use pyo3::prelude::*;

use qeuler::{IdentityCase, IdentityId, IntegrandPoly, QRationalFunction, SuiteConfig};

fn lib_err(e: qeuler::Error) -> PyErr {
    PyValueError::new_err(e.to_string())
}

fn parse_rat(text: &str) -> PyResult<BigRational> {
    BigRational::from_str(text.trim())
        .map_err(|e| PyValueError::new_err(format!("cannot parse '{text}' as a rational a/b: {e}")))
}

/// An element of Q(q) in canonical form: reduced fraction of polynomials
/// with a monic denominator. Construct from a string like
/// `"(1 - q)/(1 + q)^2"`; arithmetic stays exact.
#[pyclass(module = "qeuler_py", skip_from_py_object)]
#[derive(Clone, PartialEq)]
struct RationalFunction {
    inner: QRationalFunction,
}

#[pymethods]
impl RationalFunction {
    #[new]
    fn new(text: &str) -> PyResult<Self> {
        let inner =
            QRationalFunction::from_str(text).map_err(|e| PyValueError::new_err(e.to_string()))?;
        Ok(RationalFunction { inner })
    }

    /// The indeterminate q itself.
    #[staticmethod]
    fn var() -> Self {
        RationalFunction {
            inner: QRationalFunction::var(),
        }
    }

    fn __str__(&self) -> String {
        self.inner.to_string()
    }

    fn __repr__(&self) -> String {
        format!("RationalFunction({:?})", self.inner.to_string())
    }

    fn __eq__(&self, other: &RationalFunction) -> bool {
        self.inner == other.inner
    }

    fn __add__(&self, other: &RationalFunction) -> Self {
        RationalFunction {
            inner: &self.inner + &other.inner,
        }
    }

    fn __sub__(&self, other: &RationalFunction) -> Self {
        RationalFunction {
            inner: &self.inner - &other.inner,
        }
    }

    fn __mul__(&self, other: &RationalFunction) -> Self {
        RationalFunction {
            inner: &self.inner * &other.inner,
        }
    }

    fn __truediv__(&self, other: &RationalFunction) -> PyResult<Self> {
        Ok(RationalFunction {
            inner: self.inner.checked_div(&other.inner).map_err(lib_err)?,
        })
    }

    fn __neg__(&self) -> Self {
        RationalFunction {
            inner: -&self.inner,
        }
    }

    /// Exact value at a rational q, as a rational string.
    fn eval(&self, q: &str) -> PyResult<String> {
        let q = parse_rat(q)?;
        Ok(self.inner.eval_rational(&q).map_err(lib_err)?.to_string())
    }
}

/// The number E_{n,q} as a canonical rational function of q.
#[pyfunction]
fn euler_number(n: usize) -> RationalFunction {
    RationalFunction {
        inner: qeuler::euler_number(n),
    }
}

/// E_{n,q} evaluated exactly at rational q, as a rational string.
#[pyfunction]
fn euler_number_at(n: usize, q: &str) -> PyResult<String> {
    let q = parse_rat(q)?;
    Ok(qeuler::euler_number(n)
        .eval_rational(&q)
        .map_err(lib_err)?
        .to_string())
}

/// The classical value lim_{q->1} E_{n,q}, as a rational string.
#[pyfunction]
fn classical_euler(n: usize) -> String {
    qeuler::q_one_limit(n).to_string()
}

/// The polynomial E_{n,q}(x) as a string in x with coefficients in Q(q).
#[pyfunction]
fn euler_polynomial(n: usize) -> String {
    qeuler::euler_polynomial(n).to_string()
}

/// E_{n,q}(x) at rational x, as a rational function of q.
#[pyfunction]
fn euler_polynomial_at(n: usize, x: &str) -> PyResult<RationalFunction> {
    let x = parse_rat(x)?;
    Ok(RationalFunction {
        inner: qeuler::euler_polynomial_at(n, &x),
    })
}

/// The order-r number E^(r)_{n,q} as a rational function of q.
#[pyfunction]
fn higher_order_euler(n: usize, r: usize) -> RationalFunction {
    RationalFunction {
        inner: qeuler::higher_order_euler(n, r),
    }
}

/// Coefficient vector [c_0, ..., c_{f-1}] of the generalized number for
/// modulus f: pairing against any character chi mod f gives E_{n,chi,q}.
#[pyfunction]
fn generalized_coeffs(n: usize, f: u64) -> PyResult<Vec<RationalFunction>> {
    let gen = qeuler::generalized_euler_number(n, f).map_err(lib_err)?;
    Ok(gen
        .coeffs()
        .iter()
        .map(|c| RationalFunction { inner: c.clone() })
        .collect())
}

/// Certified evaluation of zeta_q(s, x); returns (value, abs_error_bound).
#[pyfunction]
#[pyo3(signature = (s, x, q, tol = 1e-12))]
fn zeta_q(s: Complex64, x: f64, q: f64, tol: f64) -> PyResult<(Complex64, f64)> {
    let approx = qeuler::zeta_q(s, x, q, tol).map_err(lib_err)?;
    Ok((approx.value, approx.abs_error_bound))
}

/// Certified evaluation of l_q(s, chi) for a character addressed as
/// "f.index", "f.trivial", or "f.nontrivial"; returns (value, bound).
#[pyfunction]
#[pyo3(signature = (s, chi, q, tol = 1e-12))]
fn l_q(s: Complex64, chi: &str, q: f64, tol: f64) -> PyResult<(Complex64, f64)> {
    let character = qeuler::character_from_spec(chi).map_err(lib_err)?;
    let approx = qeuler::l_q(s, &character, q, tol).map_err(lib_err)?;
    Ok((approx.value, approx.abs_error_bound))
}

/// Certified evaluation of the Barnes-type multiple zeta with positive
/// weights; returns (value, bound).
#[pyfunction]
#[pyo3(signature = (s, weights, x, q, tol = 1e-12))]
fn barnes_zeta(
    s: Complex64,
    weights: Vec<f64>,
    x: f64,
    q: f64,
    tol: f64,
) -> PyResult<(Complex64, f64)> {
    let approx = qeuler::barnes_zeta(s, &weights, x, q, tol).map_err(lib_err)?;
    Ok((approx.value, approx.abs_error_bound))
}

/// The level-N fermionic integral I_N(g) for g given by rational
/// coefficients [c_0, c_1, ...] (constant term first), as a rational string.
#[pyfunction]
fn fermionic_integral(coeffs: Vec<String>, p: u64, q: &str, level: u32) -> PyResult<String> {
    let coeffs = coeffs
        .iter()
        .map(|c| parse_rat(c))
        .collect::<PyResult<Vec<_>>>()?;
    let g = IntegrandPoly::new(coeffs).map_err(lib_err)?;
    let q = parse_rat(q)?;
    Ok(qeuler::fermionic_integral_level(&g, p, &q, level)
        .map_err(lib_err)?
        .to_string())
}

/// p-adic valuations of I_N((x0+x)^n) - E_{n,q}(x0) for N = 1..=max_level;
/// None marks an exactly zero difference.
#[pyfunction]
#[pyo3(signature = (n, p, q, max_level = 5, x0 = "0"))]
fn witt_valuations(
    n: usize,
    p: u64,
    q: &str,
    max_level: u32,
    x0: &str,
) -> PyResult<Vec<Option<i64>>> {
    let q = parse_rat(q)?;
    let x0 = parse_rat(x0)?;
    let entries = qeuler::witt_check(n, &x0, p, &q, max_level, 12).map_err(lib_err)?;
    Ok(entries.iter().map(|e| e.difference_valuation).collect())
}

/// Residual valuations of the level-N translation identity for g = x^degree
/// and step n; None marks an exactly zero residual.
#[pyfunction]
#[pyo3(signature = (degree, n, p, q, max_level = 5))]
fn inteq_valuations(
    degree: usize,
    n: usize,
    p: u64,
    q: &str,
    max_level: u32,
) -> PyResult<Vec<Option<i64>>> {
    let q = parse_rat(q)?;
    let mut coeffs = vec![BigRational::zero(); degree + 1];
    coeffs[degree] = BigRational::one();
    let g = IntegrandPoly::new(coeffs).map_err(lib_err)?;
    let entries = qeuler::integral_equation_check(&g, n, p, &q, max_level, 12).map_err(lib_err)?;
    Ok(entries.iter().map(|e| e.valuation).collect())
}

/// Run the canonical verification case for one identity id (THM1..THM6,
/// EQ2.15, SEC4.SUMPROD, WITT, INTEQ); returns the report as JSON.
#[pyfunction]
fn verify_identity(id: &str) -> PyResult<String> {
    let id: IdentityId = id.parse().map_err(lib_err)?;
    let report = qeuler::verify(&IdentityCase::canonical(id)).map_err(lib_err)?;
    serde_json::to_string_pretty(&report).map_err(|e| PyValueError::new_err(e.to_string()))
}

/// Run the whole default verification suite; returns a JSON array of
/// reports (use all_passed to fold it to a boolean).
#[pyfunction]
fn run_default_suite() -> PyResult<String> {
    let reports = qeuler::run_all(&SuiteConfig::default_suite()).map_err(lib_err)?;
    qeuler::reports_to_json(&reports).map_err(lib_err)
}

#[pymodule]
fn qeuler_py(m: &Bound<'_, PyModule>) -> PyResult<()> {
    m.add_class::<RationalFunction>()?;
    m.add_function(wrap_pyfunction!(euler_number, m)?)?;
    m.add_function(wrap_pyfunction!(euler_number_at, m)?)?;
    m.add_function(wrap_pyfunction!(classical_euler, m)?)?;
    m.add_function(wrap_pyfunction!(euler_polynomial, m)?)?;
    m.add_function(wrap_pyfunction!(euler_polynomial_at, m)?)?;
    m.add_function(wrap_pyfunction!(higher_order_euler, m)?)?;
    m.add_function(wrap_pyfunction!(generalized_coeffs, m)?)?;
    m.add_function(wrap_pyfunction!(zeta_q, m)?)?;
    m.add_function(wrap_pyfunction!(l_q, m)?)?;
    m.add_function(wrap_pyfunction!(barnes_zeta, m)?)?;
    m.add_function(wrap_pyfunction!(fermionic_integral, m)?)?;
    m.add_function(wrap_pyfunction!(witt_valuations, m)?)?;
    m.add_function(wrap_pyfunction!(inteq_valuations, m)?)?;
    m.add_function(wrap_pyfunction!(verify_identity, m)?)?;
    m.add_function(wrap_pyfunction!(run_default_suite, m)?)?;
    Ok(())
}
