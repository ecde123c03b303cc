//! Exact and numerical toolkit for q-extensions of the Euler numbers and
//! polynomials.

pub mod analytic;
mod dd;
pub mod dirichlet;
pub mod error;
pub mod euler;
pub mod field;
pub mod padic;
pub mod verify;

pub use analytic::{barnes_zeta, l_q, zeta_q, ComplexApprox};
pub use dirichlet::{
    character_from_spec, characters_mod, generalized_euler_number, DirichletCharacter,
    GeneralizedEulerNumber,
};
pub use error::{Error, Result};
pub use euler::{
    barnes_euler_polynomial, euler_number, euler_polynomial, euler_polynomial_at,
    higher_order_euler, higher_order_table, q_one_limit, EulerNumberTable, XPolynomial,
};
pub use field::{q_bracket, QPolynomial, QRationalFunction};
pub use num_rational::BigRational;
pub use padic::{
    fermionic_integral_level, integral_equation_check, level_power_sums,
    multivariate_integral_level, rational_valuation, witt_check, witt_grid, IntegralEquationEntry,
    IntegrandPoly, PadicNumber, WittEntry,
};
pub use verify::{
    all_passed, reports_to_json, run_all, verify, IdentityCase, IdentityId, ParamGrid, Residual,
    Status, SuiteConfig, VerificationReport, VerifyMode, ALL_IDENTITIES,
};
