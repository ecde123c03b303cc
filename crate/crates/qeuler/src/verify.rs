//! Declarative verification engine for the identity catalogue.
//!
//! An [`IdentityCase`] names one identity family, a parameter grid, and a
//! verification mode.  [`verify`] checks every grid point and produces a
//! [`VerificationReport`]; [`run_all`] executes a whole [`SuiteConfig`] in
//! declaration order and can deliberately perturb one family as a
//! self-test of the engine (a broken identity must come back `fail`, with
//! a counterexample).
//!
//! Modes:
//!
//! * **exact** cases are decided entirely in `Q(q)` arithmetic — no
//!   floating point is consulted anywhere on the decision path;
//! * **numeric** cases compare certified series evaluations against exact
//!   targets under an explicit tolerance;
//! * **p-adic** cases check valuations of finite-level integral residuals.
//!
//! Three families are checked in repaired form because their customary
//! statements contain slips: `THM2` (the inner summation index), `THM3`
//! (the `[2]_q^r` prefactor on the zeta side), and `WITT` (the argument of
//! the limit formula).  Reports carry a `corrected_form` flag for these.
//!
//! Reports are plain data and serialise to JSON; grids are part of the
//! report so a run can be reproduced from its output alone.  Identical
//! configurations always produce identical reports.

use std::fmt;
use std::str::FromStr;
use std::time::Instant;

use num_bigint::BigInt;
use num_complex::Complex64;
use num_rational::BigRational;
use num_traits::{One, Zero};
use serde::{Deserialize, Serialize};

use crate::analytic::{barnes_zeta, l_q, zeta_q};
use crate::dirichlet::{characters_mod, generalized_euler_number};
use crate::error::{Error, Result};
use crate::euler::{
    barnes_euler_polynomial, euler_number, euler_polynomial, euler_polynomial_at,
    higher_order_table, XPolynomial,
};
use crate::field::{q_bracket, rat_int, rat_pow, rational_to_f64, QPolynomial, QRationalFunction};
use crate::padic::{integral_equation_check, rational_valuation, witt_grid, IntegrandPoly};

/// Stable identifiers for the verifiable identity families.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub enum IdentityId {
    /// Series interpolation of the polynomials at negative integers:
    /// `zeta_q(-k, x) = E_{k,q}(x)`.
    #[serde(rename = "THM1")]
    Thm1,
    /// Finite alternating power sums:
    /// `E_{k,q} - (-1)^n q^n E_{k,q}(n) = [2]_q sum_{l<n} (-1)^l q^l l^k`
    /// (checked with the repaired inner summation index).
    #[serde(rename = "THM2")]
    Thm2,
    /// Barnes-type interpolation:
    /// `zeta_{r,q}(w | -k, x) = E_{k,q}(w | x)` (checked with the
    /// `[2]_q^r` prefactor restored on the series side).
    #[serde(rename = "THM3")]
    Thm3,
    /// l-function interpolation of the generalized numbers:
    /// `l_q(-k, chi) = E_{k,chi,q}`.
    #[serde(rename = "THM4")]
    Thm4,
    /// Distribution relation over odd moduli:
    /// `E_{n,q}(x) = f^n [2]_q/[2]_{q^f} sum_a (-1)^a q^a E_{n,q^f}((a+x)/f)`.
    #[serde(rename = "THM5")]
    Thm5,
    /// Even-shift rearrangement of the alternating power sums:
    /// `[2]_q sum_{l<n} (-1)^(l-1) q^l l^k
    ///  = q^n sum_{m<k} C(k,m) E_{m,q} n^(k-m) + (q^n - 1) E_{k,q}`.
    #[serde(rename = "THM6")]
    Thm6,
    /// The defining recurrence of the numbers together with dual-route
    /// construction of the polynomials (binomial expansion versus the
    /// functional-equation recurrence).
    #[serde(rename = "EQ2.15")]
    Eq215,
    /// Sums of products: the multinomial expansion of the order-`r`
    /// polynomials against the convolution route.
    #[serde(rename = "SEC4.SUMPROD")]
    Sec4SumProd,
    /// Finite-level fermionic integrals of `x^n` converge to `E_{n,q}`
    /// (checked with the repaired argument of the limit formula).
    #[serde(rename = "WITT")]
    Witt,
    /// Translation identity for finite-level integrals:
    /// `q^n I(g(x+n)) + (-1)^(n-1) I(g) = [2]_q sum_{l<n} (-1)^(n-1-l) q^l g(l)`,
    /// exact for constant `g` and with residual valuation at least `N - 1`
    /// at level `N` otherwise.
    #[serde(rename = "INTEQ")]
    IntEq,
}

/// Catalogue order; also the execution order of the default suite.
pub const ALL_IDENTITIES: [IdentityId; 10] = [
    IdentityId::Thm1,
    IdentityId::Thm2,
    IdentityId::Thm3,
    IdentityId::Thm4,
    IdentityId::Thm5,
    IdentityId::Thm6,
    IdentityId::Eq215,
    IdentityId::Sec4SumProd,
    IdentityId::Witt,
    IdentityId::IntEq,
];

impl IdentityId {
    /// True for families whose checked statement repairs a slip in the
    /// customary formulation.
    pub fn corrected_form(self) -> bool {
        matches!(self, IdentityId::Thm2 | IdentityId::Thm3 | IdentityId::Witt)
    }

    /// One-line human description.
    pub fn description(self) -> &'static str {
        match self {
            IdentityId::Thm1 => "series interpolation of the polynomials at negative integers",
            IdentityId::Thm2 => "finite alternating power sums (corrected summation index)",
            IdentityId::Thm3 => "Barnes-type interpolation (corrected prefactor)",
            IdentityId::Thm4 => "l-function interpolation of the generalized numbers",
            IdentityId::Thm5 => "distribution relation over odd moduli",
            IdentityId::Thm6 => "even-shift rearrangement of the alternating power sums",
            IdentityId::Eq215 => "defining recurrence and dual-route polynomial construction",
            IdentityId::Sec4SumProd => "sums of products versus convolution for higher order",
            IdentityId::Witt => {
                "finite-level integral convergence to the numbers (corrected argument)"
            }
            IdentityId::IntEq => "translation identity residuals at finite level",
        }
    }
}

impl fmt::Display for IdentityId {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let s = match self {
            IdentityId::Thm1 => "THM1",
            IdentityId::Thm2 => "THM2",
            IdentityId::Thm3 => "THM3",
            IdentityId::Thm4 => "THM4",
            IdentityId::Thm5 => "THM5",
            IdentityId::Thm6 => "THM6",
            IdentityId::Eq215 => "EQ2.15",
            IdentityId::Sec4SumProd => "SEC4.SUMPROD",
            IdentityId::Witt => "WITT",
            IdentityId::IntEq => "INTEQ",
        };
        f.write_str(s)
    }
}

impl FromStr for IdentityId {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s.trim().to_ascii_uppercase().as_str() {
            "THM1" => Ok(IdentityId::Thm1),
            "THM2" => Ok(IdentityId::Thm2),
            "THM3" => Ok(IdentityId::Thm3),
            "THM4" => Ok(IdentityId::Thm4),
            "THM5" => Ok(IdentityId::Thm5),
            "THM6" => Ok(IdentityId::Thm6),
            "EQ2.15" => Ok(IdentityId::Eq215),
            "SEC4.SUMPROD" => Ok(IdentityId::Sec4SumProd),
            "WITT" => Ok(IdentityId::Witt),
            "INTEQ" => Ok(IdentityId::IntEq),
            other => Err(Error::UnknownIdentity(other.to_string())),
        }
    }
}

/// How a case is decided.
#[derive(Clone, Copy, Debug, PartialEq, Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "kebab-case")]
pub enum VerifyMode {
    /// Rational-function arithmetic only.
    Exact,
    /// Certified evaluation against an exact target; the observed absolute
    /// error must stay at or below `tolerance`.
    Numeric { tolerance: f64 },
    /// Valuation thresholds on finite-level residuals.  Valuations must be
    /// nondecreasing between consecutive levels from `monotone_from_level`
    /// on (`0` disables the monotonicity check), and the deepest level must
    /// reach `min_final_valuation`.  Family-specific floors (the level-one
    /// floor for `WITT`, the `N - 1` law for `INTEQ`) are always enforced.
    Padic {
        monotone_from_level: u32,
        min_final_valuation: i64,
    },
}

/// Parameter grid for one case.  Unused fields are ignored by families
/// that do not consume them; empty grids verify vacuously.  Rational
/// entries (`x_values`, `q_samples`, `weights`) are exact strings such as
/// `"1/2"` or `"3"`.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(default)]
#[derive(Default)]
pub struct ParamGrid {
    pub n_max: usize,
    pub k_max: usize,
    pub r_max: usize,
    pub moduli: Vec<u64>,
    pub primes: Vec<u64>,
    pub level_max: u32,
    pub x_values: Vec<String>,
    pub q_samples: Vec<String>,
    pub weights: Vec<String>,
}

impl ParamGrid {
    fn parse_list(items: &[String], what: &str) -> Result<Vec<BigRational>> {
        items
            .iter()
            .map(|s| {
                BigRational::from_str(s.trim())
                    .map_err(|e| Error::Parse(format!("bad {what} entry '{s}': {e}")))
            })
            .collect()
    }

    fn x_rationals(&self) -> Result<Vec<BigRational>> {
        Self::parse_list(&self.x_values, "x_values")
    }

    fn q_rationals(&self) -> Result<Vec<BigRational>> {
        let qs = Self::parse_list(&self.q_samples, "q_samples")?;
        for q in &qs {
            if q <= &BigRational::zero() || q >= &BigRational::one() {
                return Err(Error::Domain(format!(
                    "q sample {q} is outside the open interval (0, 1)"
                )));
            }
        }
        Ok(qs)
    }

    fn weight_rationals(&self) -> Result<Vec<BigRational>> {
        let ws = Self::parse_list(&self.weights, "weights")?;
        for w in &ws {
            if w <= &BigRational::zero() {
                return Err(Error::Domain(format!("weight {w} is not positive")));
            }
        }
        Ok(ws)
    }
}

/// One identity family plus the grid and mode to check it under.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct IdentityCase {
    pub id: IdentityId,
    pub mode: VerifyMode,
    pub grid: ParamGrid,
}

impl IdentityCase {
    /// The canonical case for `id`: the default grid and mode used by the
    /// default suite.
    pub fn canonical(id: IdentityId) -> IdentityCase {
        let (mode, grid) = match id {
            IdentityId::Thm1 => (
                VerifyMode::Numeric { tolerance: 1e-9 },
                ParamGrid {
                    k_max: 8,
                    x_values: strs(&["1", "1/2", "2"]),
                    q_samples: strs(&["1/2", "1/4"]),
                    ..ParamGrid::default()
                },
            ),
            IdentityId::Thm2 => (
                VerifyMode::Exact,
                ParamGrid {
                    n_max: 6,
                    k_max: 10,
                    ..ParamGrid::default()
                },
            ),
            IdentityId::Thm3 => (
                VerifyMode::Numeric { tolerance: 1e-8 },
                ParamGrid {
                    k_max: 6,
                    weights: strs(&["1", "2"]),
                    x_values: strs(&["1"]),
                    q_samples: strs(&["1/2"]),
                    ..ParamGrid::default()
                },
            ),
            IdentityId::Thm4 => (
                VerifyMode::Numeric { tolerance: 1e-8 },
                ParamGrid {
                    k_max: 8,
                    moduli: vec![3, 5],
                    q_samples: strs(&["1/3"]),
                    ..ParamGrid::default()
                },
            ),
            IdentityId::Thm5 => (
                VerifyMode::Exact,
                ParamGrid {
                    n_max: 12,
                    moduli: vec![1, 3, 5],
                    x_values: strs(&["0", "1", "1/2"]),
                    ..ParamGrid::default()
                },
            ),
            IdentityId::Thm6 => (
                VerifyMode::Exact,
                ParamGrid {
                    n_max: 10,
                    k_max: 10,
                    ..ParamGrid::default()
                },
            ),
            IdentityId::Eq215 => (
                VerifyMode::Exact,
                ParamGrid {
                    n_max: 20,
                    ..ParamGrid::default()
                },
            ),
            IdentityId::Sec4SumProd => (
                VerifyMode::Exact,
                ParamGrid {
                    n_max: 10,
                    r_max: 4,
                    x_values: strs(&["0", "1/2"]),
                    ..ParamGrid::default()
                },
            ),
            IdentityId::Witt => (
                VerifyMode::Padic {
                    monotone_from_level: 2,
                    min_final_valuation: 3,
                },
                ParamGrid {
                    n_max: 8,
                    primes: vec![3, 5, 7],
                    level_max: 5,
                    ..ParamGrid::default()
                },
            ),
            IdentityId::IntEq => (
                VerifyMode::Padic {
                    monotone_from_level: 0,
                    min_final_valuation: 4,
                },
                ParamGrid {
                    n_max: 3,
                    k_max: 2,
                    primes: vec![3, 5, 7],
                    level_max: 5,
                    ..ParamGrid::default()
                },
            ),
        };
        IdentityCase { id, mode, grid }
    }
}

fn strs(items: &[&str]) -> Vec<String> {
    items.iter().map(|s| s.to_string()).collect()
}

/// A whole suite run: cases execute in declaration order.  `mutate`
/// perturbs the left-hand side of the named family before comparison, as a
/// self-test that the engine actually detects broken identities.
#[derive(Clone, Debug, Default, PartialEq, Serialize, Deserialize)]
pub struct SuiteConfig {
    pub cases: Vec<IdentityCase>,
    #[serde(skip_serializing_if = "Option::is_none", default)]
    pub mutate: Option<IdentityId>,
}

impl SuiteConfig {
    /// No cases, no checks: `run_all` returns an empty (vacuously passing)
    /// report list.
    pub fn empty() -> SuiteConfig {
        SuiteConfig::default()
    }

    /// Every identity family under its canonical grid.
    pub fn default_suite() -> SuiteConfig {
        SuiteConfig {
            cases: ALL_IDENTITIES
                .iter()
                .map(|&id| IdentityCase::canonical(id))
                .collect(),
            mutate: None,
        }
    }
}

/// Outcome of one case.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Status {
    Pass,
    Fail,
}

/// Worst residual observed while scanning the grid, in the scale natural
/// to the mode.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "kebab-case")]
pub enum Residual {
    /// Exact comparisons: the number of grid points where the two sides
    /// differed (zero on a pass).
    Exact { mismatches: usize },
    /// Numeric comparisons: the largest absolute deviation seen, and the
    /// tolerance it was held against.
    MaxAbsError { value: f64, tolerance: f64 },
    /// p-adic comparisons: the smallest finite residual valuation seen
    /// (`None` when every residual was exactly zero).
    MinValuation { value: Option<i64> },
}

/// The result of verifying one [`IdentityCase`].
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct VerificationReport {
    pub id: IdentityId,
    pub description: String,
    /// The checked statement repairs a slip in the customary formulation.
    pub corrected_form: bool,
    pub mode: VerifyMode,
    pub params: ParamGrid,
    pub status: Status,
    /// Grid points actually compared.
    pub cases_checked: usize,
    pub residual: Residual,
    /// First failing grid point, with both sides' data.
    #[serde(skip_serializing_if = "Option::is_none")]
    pub counterexample: Option<String>,
    /// True when the run was deliberately perturbed via `SuiteConfig::mutate`.
    pub perturbed: bool,
    pub time_ms: f64,
}

/// Serialise reports as a JSON array.
pub fn reports_to_json(reports: &[VerificationReport]) -> Result<String> {
    serde_json::to_string_pretty(reports)
        .map_err(|e| Error::Parse(format!("report serialisation failed: {e}")))
}

/// True when every report passed.
pub fn all_passed(reports: &[VerificationReport]) -> bool {
    reports.iter().all(|r| r.status == Status::Pass)
}

/// Verify a single case.
pub fn verify(case: &IdentityCase) -> Result<VerificationReport> {
    verify_case(case, false)
}

/// Run every case of `config` in declaration order.
pub fn run_all(config: &SuiteConfig) -> Result<Vec<VerificationReport>> {
    config
        .cases
        .iter()
        .map(|case| verify_case(case, config.mutate == Some(case.id)))
        .collect()
}

// ---------------------------------------------------------------------------
// Engine internals
// ---------------------------------------------------------------------------

/// Reporting precision for p-adic values carried in entries (display only;
/// decisions use exact rationals).
const PADIC_PRECISION: u32 = 12;

/// Scratch state accumulated while scanning a grid.
struct Checker {
    perturb: bool,
    checked: usize,
    mismatches: usize,
    worst_abs: f64,
    min_valuation: Option<i64>,
    counterexample: Option<String>,
}

impl Checker {
    fn new(perturb: bool) -> Checker {
        Checker {
            perturb,
            checked: 0,
            mismatches: 0,
            worst_abs: 0.0,
            min_valuation: None,
            counterexample: None,
        }
    }

    fn fail(&mut self, describe: impl FnOnce() -> String) {
        self.mismatches += 1;
        if self.counterexample.is_none() {
            self.counterexample = Some(describe());
        }
    }

    fn note_exact(&mut self, equal: bool, describe: impl FnOnce() -> String) {
        self.checked += 1;
        if !equal {
            self.fail(describe);
        }
    }

    fn note_numeric(&mut self, err: f64, tol: f64, describe: impl FnOnce() -> String) {
        self.checked += 1;
        if err > self.worst_abs || !err.is_finite() {
            self.worst_abs = err;
        }
        if err.is_nan() || err > tol {
            self.fail(describe);
        }
    }

    fn observe_valuation(&mut self, v: Option<i64>) {
        if let Some(v) = v {
            self.min_valuation = Some(match self.min_valuation {
                Some(m) => m.min(v),
                None => v,
            });
        }
    }
}

/// Clip long exact residuals so counterexamples stay readable.
fn clip(s: String) -> String {
    const LIMIT: usize = 160;
    if s.len() <= LIMIT {
        s
    } else {
        let mut cut = LIMIT;
        while !s.is_char_boundary(cut) {
            cut -= 1;
        }
        format!("{}...", &s[..cut])
    }
}

fn q_monomial(n: usize) -> QRationalFunction {
    QRationalFunction::from_poly(QPolynomial::monomial(BigRational::one(), n))
}

fn two_bracket_rf() -> QRationalFunction {
    QRationalFunction::from_poly(q_bracket(2))
}

/// Numeric cases call the certified evaluators with a request tolerance
/// well below the comparison tolerance, so series truncation never
/// dominates the observed deviation.
fn request_tolerance(tolerance: f64) -> f64 {
    (tolerance * 1e-3).max(1e-13)
}

fn verify_case(case: &IdentityCase, perturb: bool) -> Result<VerificationReport> {
    let started = Instant::now();
    let mut ck = Checker::new(perturb);

    match (case.id, case.mode) {
        (IdentityId::Thm1, VerifyMode::Numeric { tolerance }) => {
            check_thm1(&case.grid, tolerance, &mut ck)?
        }
        (IdentityId::Thm2, VerifyMode::Exact) => check_thm2(&case.grid, &mut ck)?,
        (IdentityId::Thm3, VerifyMode::Numeric { tolerance }) => {
            check_thm3(&case.grid, tolerance, &mut ck)?
        }
        (IdentityId::Thm4, VerifyMode::Numeric { tolerance }) => {
            check_thm4(&case.grid, tolerance, &mut ck)?
        }
        (IdentityId::Thm5, VerifyMode::Exact) => check_thm5(&case.grid, &mut ck)?,
        (IdentityId::Thm6, VerifyMode::Exact) => check_thm6(&case.grid, &mut ck)?,
        (IdentityId::Eq215, VerifyMode::Exact) => check_eq215(&case.grid, &mut ck)?,
        (IdentityId::Sec4SumProd, VerifyMode::Exact) => check_sec4(&case.grid, &mut ck)?,
        (
            IdentityId::Witt,
            VerifyMode::Padic {
                monotone_from_level,
                min_final_valuation,
            },
        ) => check_witt(
            &case.grid,
            monotone_from_level,
            min_final_valuation,
            &mut ck,
        )?,
        (
            IdentityId::IntEq,
            VerifyMode::Padic {
                monotone_from_level,
                min_final_valuation,
            },
        ) => check_inteq(
            &case.grid,
            monotone_from_level,
            min_final_valuation,
            &mut ck,
        )?,
        (id, mode) => {
            return Err(Error::Domain(format!(
                "identity {id} cannot be verified under mode {mode:?}"
            )));
        }
    }

    let residual = match case.mode {
        VerifyMode::Exact => Residual::Exact {
            mismatches: ck.mismatches,
        },
        VerifyMode::Numeric { tolerance } => Residual::MaxAbsError {
            value: ck.worst_abs,
            tolerance,
        },
        VerifyMode::Padic { .. } => Residual::MinValuation {
            value: ck.min_valuation,
        },
    };
    let status = if ck.mismatches == 0 {
        Status::Pass
    } else {
        Status::Fail
    };
    let time_ms = (started.elapsed().as_secs_f64() * 1e6).round() / 1e3;

    Ok(VerificationReport {
        id: case.id,
        description: case.id.description().to_string(),
        corrected_form: case.id.corrected_form(),
        mode: case.mode,
        params: case.grid.clone(),
        status,
        cases_checked: ck.checked,
        residual,
        counterexample: ck.counterexample,
        perturbed: perturb,
        time_ms,
    })
}

/// THM1: `zeta_q(-k, x) = E_{k,q}(x)` at every grid point.
fn check_thm1(grid: &ParamGrid, tolerance: f64, ck: &mut Checker) -> Result<()> {
    let request = request_tolerance(tolerance);
    let xs = grid.x_rationals()?;
    let qs = grid.q_rationals()?;
    for x in &xs {
        let xf = rational_to_f64(x);
        for q in &qs {
            let qf = rational_to_f64(q);
            for k in 0..=grid.k_max {
                let target = rational_to_f64(&euler_polynomial_at(k, x).eval_rational(q)?);
                let s = Complex64::new(-(k as f64), 0.0);
                let z = zeta_q(s, xf, qf, request)?;
                let mut value = z.value;
                if ck.perturb {
                    value += Complex64::new(1.0, 0.0);
                }
                let err = (value - Complex64::new(target, 0.0)).norm();
                ck.note_numeric(err, tolerance, || {
                    format!(
                        "k={k} x={x} q={q}: |series - polynomial| = {err:.3e} exceeds {tolerance:.1e} \
                         (series {value:.15e}, polynomial {target:.15e})"
                    )
                });
            }
        }
    }
    Ok(())
}

/// THM2: for every `n >= 1` and `k >= 0`,
/// `E_{k,q} - (-1)^n q^n E_{k,q}(n) = [2]_q sum_{l=0}^{n-1} (-1)^l q^l l^k`.
fn check_thm2(grid: &ParamGrid, ck: &mut Checker) -> Result<()> {
    let two = two_bracket_rf();
    for n in 1..=grid.n_max {
        let qn = q_monomial(n);
        let n_rat = rat_int(n as i64);
        for k in 0..=grid.k_max {
            let shifted = euler_polynomial_at(k, &n_rat);
            let signed = if n % 2 == 0 { shifted } else { -&shifted };
            let mut lhs = &euler_number(k) - &(&qn * &signed);
            if ck.perturb {
                lhs = &lhs + &QRationalFunction::one();
            }
            let mut sum = QRationalFunction::zero();
            for l in 0..n {
                let term = q_monomial(l).mul_rational(&rat_pow(&rat_int(l as i64), k));
                sum = if l % 2 == 0 {
                    &sum + &term
                } else {
                    &sum - &term
                };
            }
            let rhs = &two * &sum;
            ck.note_exact(lhs == rhs, || {
                clip(format!("n={n} k={k}: difference {}", &lhs - &rhs))
            });
        }
    }
    Ok(())
}

/// THM3: `zeta_{r,q}(w | -k, x) = E_{k,q}(w | x)` at every grid point.
fn check_thm3(grid: &ParamGrid, tolerance: f64, ck: &mut Checker) -> Result<()> {
    let request = request_tolerance(tolerance);
    let ws = grid.weight_rationals()?;
    let wf: Vec<f64> = ws.iter().map(rational_to_f64).collect();
    let xs = grid.x_rationals()?;
    let qs = grid.q_rationals()?;
    for x in &xs {
        let xf = rational_to_f64(x);
        for q in &qs {
            let qf = rational_to_f64(q);
            for k in 0..=grid.k_max {
                let target =
                    rational_to_f64(&barnes_euler_polynomial(k, &ws, x)?.eval_rational(q)?);
                let s = Complex64::new(-(k as f64), 0.0);
                let z = barnes_zeta(s, &wf, xf, qf, request)?;
                let mut value = z.value;
                if ck.perturb {
                    value += Complex64::new(1.0, 0.0);
                }
                let err = (value - Complex64::new(target, 0.0)).norm();
                ck.note_numeric(err, tolerance, || {
                    format!(
                        "k={k} w={ws:?} x={x} q={q}: |series - polynomial| = {err:.3e} \
                         exceeds {tolerance:.1e}"
                    )
                });
            }
        }
    }
    Ok(())
}

/// THM4: `l_q(-k, chi) = E_{k,chi,q}` for every character of every grid
/// modulus.  For modulus 1 the `k = 0` point is excluded: the series'
/// summation starts at `n = 1`, so its value there is `-q` while the
/// coefficient target is `1`; the identity genuinely holds only for
/// `k >= 1` in that degenerate case.
fn check_thm4(grid: &ParamGrid, tolerance: f64, ck: &mut Checker) -> Result<()> {
    let request = request_tolerance(tolerance);
    let qs = grid.q_rationals()?;
    for &f in &grid.moduli {
        let chars = characters_mod(f)?;
        for k in 0..=grid.k_max {
            if f == 1 && k == 0 {
                continue;
            }
            let gen = generalized_euler_number(k, f)?;
            for chi in &chars {
                for q in &qs {
                    let qf = rational_to_f64(q);
                    let target = gen.value_complex(chi, qf)?;
                    let s = Complex64::new(-(k as f64), 0.0);
                    let z = l_q(s, chi, qf, request)?;
                    let mut value = z.value;
                    if ck.perturb {
                        value += Complex64::new(1.0, 0.0);
                    }
                    let err = (value - target).norm();
                    ck.note_numeric(err, tolerance, || {
                        format!(
                            "chi={chi} k={k} q={q}: |series - coefficient sum| = {err:.3e} \
                             exceeds {tolerance:.1e}"
                        )
                    });
                }
            }
        }
    }
    Ok(())
}

/// THM5: `E_{n,q}(x) = f^n [2]_q/[2]_{q^f} sum_{a<f} (-1)^a q^a
/// E_{n,q^f}((a+x)/f)` for odd `f`.
fn check_thm5(grid: &ParamGrid, ck: &mut Checker) -> Result<()> {
    let xs = grid.x_rationals()?;
    let two = two_bracket_rf();
    for &f in &grid.moduli {
        if f == 0 || f % 2 == 0 {
            return Err(Error::Domain(format!(
                "distribution modulus must be odd and positive, got {f}"
            )));
        }
        let two_f = QRationalFunction::from_poly(q_bracket(2).substitute_power(f as u32));
        let ratio = &two / &two_f;
        let f_rat = rat_int(f as i64);
        for n in 0..=grid.n_max {
            let substituted = euler_polynomial(n).substitute_q_power(f as u32);
            let scale = ratio.mul_rational(&rat_pow(&f_rat, n));
            for x in &xs {
                let mut lhs = euler_polynomial_at(n, x).clone();
                if ck.perturb {
                    lhs = &lhs + &QRationalFunction::one();
                }
                let mut sum = QRationalFunction::zero();
                for a in 0..f {
                    let arg = (rat_int(a as i64) + x) / &f_rat;
                    let term = &q_monomial(a as usize) * &substituted.eval_rational(&arg);
                    sum = if a % 2 == 0 {
                        &sum + &term
                    } else {
                        &sum - &term
                    };
                }
                let rhs = &scale * &sum;
                ck.note_exact(lhs == rhs, || {
                    clip(format!("f={f} n={n} x={x}: difference {}", &lhs - &rhs))
                });
            }
        }
    }
    Ok(())
}

/// THM6: for even `n` and `k >= 1`,
/// `[2]_q sum_{l<n} (-1)^(l-1) q^l l^k
///  = q^n sum_{m<k} C(k,m) E_{m,q} n^(k-m) + (q^n - 1) E_{k,q}`.
fn check_thm6(grid: &ParamGrid, ck: &mut Checker) -> Result<()> {
    let two = two_bracket_rf();
    for n in (2..=grid.n_max).step_by(2) {
        let qn = q_monomial(n);
        let n_rat = rat_int(n as i64);
        for k in 1..=grid.k_max {
            let mut sum = QRationalFunction::zero();
            for l in 0..n {
                let term = q_monomial(l).mul_rational(&rat_pow(&rat_int(l as i64), k));
                // (-1)^(l-1) is negative for even l.
                sum = if l % 2 == 0 {
                    &sum - &term
                } else {
                    &sum + &term
                };
            }
            let mut lhs = &two * &sum;
            if ck.perturb {
                lhs = &lhs + &QRationalFunction::one();
            }
            let mut weighted = QRationalFunction::zero();
            let mut binom = BigInt::one();
            for m in 0..k {
                let coeff = BigRational::from_integer(binom.clone()) * rat_pow(&n_rat, k - m);
                weighted = &weighted + &euler_number(m).mul_rational(&coeff);
                binom = binom * (k - m) / (m + 1);
            }
            let tail = &(&qn - &QRationalFunction::one()) * &euler_number(k);
            let rhs = &(&qn * &weighted) + &tail;
            ck.note_exact(lhs == rhs, || {
                clip(format!("n={n} k={k}: difference {}", &lhs - &rhs))
            });
        }
    }
    Ok(())
}

/// EQ2.15: the defining recurrence of the numbers,
/// `(1+q) E_{n,q} + q sum_{k<n} C(n,k) E_{k,q} = 0` with `E_{0,q} = 1`,
/// and agreement of the two polynomial routes: the binomial expansion
/// `sum_m C(n,m) E_{m,q} x^(n-m)` against the functional-equation
/// recurrence `(1+q) E_n(x) = [2]_q x^n - q sum_{k<n} C(n,k) E_k(x)`.
fn check_eq215(grid: &ParamGrid, ck: &mut Checker) -> Result<()> {
    let two = two_bracket_rf();
    let inv_two = two.inverse()?;
    let q_rf = QRationalFunction::var();

    // Degree zero: the number is 1 and both routes are the constant 1.
    let mut base = euler_number(0);
    if ck.perturb {
        base = &base + &QRationalFunction::one();
    }
    ck.note_exact(base == QRationalFunction::one(), || {
        format!("n=0: E_0 = {base} instead of 1")
    });

    // Recurrence for the numbers.
    for n in 1..=grid.n_max {
        let mut sum = QRationalFunction::zero();
        let mut binom = BigInt::one();
        for k in 0..n {
            sum = &sum + &euler_number(k).mul_rational(&BigRational::from_integer(binom.clone()));
            binom = binom * (n - k) / (k + 1);
        }
        let mut lhs = &(&two * &euler_number(n)) + &(&q_rf * &sum);
        if ck.perturb {
            lhs = &lhs + &QRationalFunction::one();
        }
        ck.note_exact(lhs.is_zero(), || {
            clip(format!("n={n}: recurrence residual {lhs}"))
        });
    }

    // Dual-route polynomials.  `route` is built only from lower-degree
    // route polynomials, never from the binomial expansion under test.
    let mut route: Vec<XPolynomial> = vec![XPolynomial::monomial(QRationalFunction::one(), 0)];
    for n in 1..=grid.n_max {
        let mut acc = XPolynomial::monomial(two.clone(), n);
        let mut binom = BigInt::one();
        for (k, rk) in route.iter().enumerate() {
            let coeff = q_rf.mul_rational(&BigRational::from_integer(binom.clone()));
            acc = acc.sub(&rk.scale(&coeff));
            binom = binom * (n - k) / (k + 1);
        }
        route.push(acc.scale(&inv_two));
    }
    for (n, via_recurrence) in route.iter().enumerate() {
        let mut binomial_route = euler_polynomial(n).clone();
        if ck.perturb {
            binomial_route =
                binomial_route.add(&XPolynomial::monomial(QRationalFunction::one(), 0));
        }
        ck.note_exact(&binomial_route == via_recurrence, || {
            format!("n={n}: binomial route {binomial_route} differs from recurrence route {via_recurrence}")
        });
    }
    Ok(())
}

/// SEC4.SUMPROD: the multinomial sums-of-products expansion of the
/// order-`r` polynomials agrees with the convolution route,
/// `E^(r)_{n,q}(x) = sum_m C(n,m) x^(n-m) E^(r)_{m,q}`.
fn check_sec4(grid: &ParamGrid, ck: &mut Checker) -> Result<()> {
    if grid.r_max == 0 {
        return Ok(());
    }
    let xs = grid.x_rationals()?;
    let table = higher_order_table(grid.n_max, grid.r_max);
    for r in 1..=grid.r_max {
        let ones = vec![BigRational::one(); r];
        for x in &xs {
            for n in 0..=grid.n_max {
                let mut lhs = barnes_euler_polynomial(n, &ones, x)?;
                if ck.perturb {
                    lhs = &lhs + &QRationalFunction::one();
                }
                let mut rhs = QRationalFunction::zero();
                let mut binom = BigInt::one();
                for (m, entry) in table[r - 1].iter().enumerate().take(n + 1) {
                    let coeff = BigRational::from_integer(binom.clone()) * rat_pow(x, n - m);
                    rhs = &rhs + &entry.mul_rational(&coeff);
                    binom = binom * (n - m) / (m + 1);
                }
                ck.note_exact(lhs == rhs, || {
                    clip(format!("r={r} n={n} x={x}: difference {}", &lhs - &rhs))
                });
            }
        }
    }
    Ok(())
}

/// WITT: finite-level integrals of `x^n` at `q = 1 + p` approach
/// `E_{n,q}`.  The degree-zero integrand is exact at every level; for
/// `n >= 1` the level-one residual already has valuation at least 1, the
/// valuations are nondecreasing between consecutive levels from
/// `monotone_from_level` on, and the deepest level reaches
/// `min_final_valuation`.
fn check_witt(
    grid: &ParamGrid,
    monotone_from_level: u32,
    min_final_valuation: i64,
    ck: &mut Checker,
) -> Result<()> {
    if grid.level_max == 0 {
        return Ok(());
    }
    for &p in &grid.primes {
        let q = rat_int(1 + p as i64);
        let rows = witt_grid(
            grid.n_max,
            &BigRational::zero(),
            p,
            &q,
            grid.level_max,
            PADIC_PRECISION,
        )?;
        for (n, row) in rows.iter().enumerate() {
            let target = euler_number(n).eval_rational(&q)?;
            let mut prev: Option<i64> = None;
            for entry in row {
                let mut diff = &entry.integral - &target;
                if ck.perturb {
                    diff += BigRational::one();
                }
                let v = rational_valuation(&diff, p);
                ck.observe_valuation(v);
                let level = entry.level;
                let v_eff = v.unwrap_or(i64::MAX);
                let prev_eff = prev.unwrap_or(i64::MAX);

                let mut problem: Option<String> = None;
                if n == 0 && v.is_some() {
                    problem = Some(format!(
                        "p={p} n=0 level={level}: residual valuation {v_eff} but the \
                         constant integrand must integrate exactly"
                    ));
                } else if n >= 1 && level == 1 && v_eff < 1 {
                    problem = Some(format!(
                        "p={p} n={n} level=1: residual valuation {v_eff} is below the \
                         level-one floor 1"
                    ));
                } else if monotone_from_level > 0 && level > monotone_from_level && v_eff < prev_eff
                {
                    problem = Some(format!(
                        "p={p} n={n} level={level}: residual valuation {v_eff} dropped below \
                         the previous level's {prev_eff} (monotone from level {monotone_from_level})"
                    ));
                } else if level == grid.level_max && v_eff < min_final_valuation {
                    problem = Some(format!(
                        "p={p} n={n} level={level}: final residual valuation {v_eff} is below \
                         the required {min_final_valuation}"
                    ));
                }

                ck.note_exact(problem.is_none(), || problem.unwrap());
                prev = v;
            }
        }
    }
    Ok(())
}

/// INTEQ: the translation identity at finite level.  Constant integrands
/// satisfy it exactly at every level; for higher-degree monomials the
/// residual valuation at level `N` is at least `N - 1`.
fn check_inteq(
    grid: &ParamGrid,
    monotone_from_level: u32,
    min_final_valuation: i64,
    ck: &mut Checker,
) -> Result<()> {
    if grid.level_max == 0 {
        return Ok(());
    }
    for &p in &grid.primes {
        let q = rat_int(1 + p as i64);
        for degree in 0..=grid.k_max {
            let g = IntegrandPoly::new(monomial_coeffs(degree))?;
            for n in 1..=grid.n_max {
                let entries =
                    integral_equation_check(&g, n, p, &q, grid.level_max, PADIC_PRECISION)?;
                let mut prev: Option<i64> = None;
                for entry in &entries {
                    let mut residual = entry.residual.clone();
                    if ck.perturb {
                        residual += BigRational::one();
                    }
                    let v = rational_valuation(&residual, p);
                    ck.observe_valuation(v);
                    let level = entry.level;
                    let v_eff = v.unwrap_or(i64::MAX);
                    let prev_eff = prev.unwrap_or(i64::MAX);

                    let mut problem: Option<String> = None;
                    if degree == 0 && v.is_some() {
                        problem = Some(format!(
                            "p={p} g=1 n={n} level={level}: residual valuation {v_eff} but the \
                             identity is exact for constant integrands"
                        ));
                    } else if degree >= 1 && v_eff < level as i64 - 1 {
                        problem = Some(format!(
                            "p={p} g=x^{degree} n={n} level={level}: residual valuation {v_eff} \
                             is below level - 1 = {}",
                            level as i64 - 1
                        ));
                    } else if monotone_from_level > 0
                        && level > monotone_from_level
                        && v_eff < prev_eff
                    {
                        problem = Some(format!(
                            "p={p} g=x^{degree} n={n} level={level}: residual valuation {v_eff} \
                             dropped below the previous level's {prev_eff}"
                        ));
                    } else if level == grid.level_max && v_eff < min_final_valuation {
                        problem = Some(format!(
                            "p={p} g=x^{degree} n={n} level={level}: final residual valuation \
                             {v_eff} is below the required {min_final_valuation}"
                        ));
                    }

                    ck.note_exact(problem.is_none(), || problem.unwrap());
                    prev = v;
                }
            }
        }
    }
    Ok(())
}

fn monomial_coeffs(degree: usize) -> Vec<BigRational> {
    let mut coeffs = vec![BigRational::zero(); degree + 1];
    coeffs[degree] = BigRational::one();
    coeffs
}

#[cfg(test)]
mod tests {
    use super::*;

    fn small(id: IdentityId) -> IdentityCase {
        let mut case = IdentityCase::canonical(id);
        match id {
            IdentityId::Thm1 => {
                case.grid.k_max = 3;
                case.grid.x_values = strs(&["1"]);
                case.grid.q_samples = strs(&["1/2"]);
            }
            IdentityId::Thm2 => {
                case.grid.n_max = 3;
                case.grid.k_max = 4;
            }
            IdentityId::Thm3 => {
                case.grid.k_max = 2;
            }
            IdentityId::Thm4 => {
                case.grid.k_max = 2;
                case.grid.moduli = vec![3];
            }
            IdentityId::Thm5 => {
                case.grid.n_max = 4;
                case.grid.moduli = vec![1, 3];
                case.grid.x_values = strs(&["0", "1/2"]);
            }
            IdentityId::Thm6 => {
                case.grid.n_max = 4;
                case.grid.k_max = 4;
            }
            IdentityId::Eq215 => {
                case.grid.n_max = 6;
            }
            IdentityId::Sec4SumProd => {
                case.grid.n_max = 4;
                case.grid.r_max = 3;
                case.grid.x_values = strs(&["1/2"]);
            }
            IdentityId::Witt => {
                case.grid.n_max = 2;
                case.grid.primes = vec![3];
                case.grid.level_max = 3;
                case.mode = VerifyMode::Padic {
                    monotone_from_level: 2,
                    min_final_valuation: 1,
                };
            }
            IdentityId::IntEq => {
                case.grid.n_max = 2;
                case.grid.k_max = 2;
                case.grid.primes = vec![3];
                case.grid.level_max = 3;
                case.mode = VerifyMode::Padic {
                    monotone_from_level: 0,
                    min_final_valuation: 2,
                };
            }
        }
        case
    }

    #[test]
    fn id_strings_round_trip() {
        for id in ALL_IDENTITIES {
            let s = id.to_string();
            assert_eq!(s.parse::<IdentityId>().unwrap(), id);
        }
        assert_eq!("eq2.15".parse::<IdentityId>().unwrap(), IdentityId::Eq215);
        assert!("THM9".parse::<IdentityId>().is_err());
    }

    #[test]
    fn id_serialises_to_its_display_form() {
        let json = serde_json::to_string(&IdentityId::Sec4SumProd).unwrap();
        assert_eq!(json, "\"SEC4.SUMPROD\"");
        let back: IdentityId = serde_json::from_str(&json).unwrap();
        assert_eq!(back, IdentityId::Sec4SumProd);
    }

    #[test]
    fn exact_families_pass_on_small_grids() {
        for id in [
            IdentityId::Thm2,
            IdentityId::Thm5,
            IdentityId::Thm6,
            IdentityId::Eq215,
            IdentityId::Sec4SumProd,
        ] {
            let report = verify(&small(id)).unwrap();
            assert_eq!(
                report.status,
                Status::Pass,
                "{id}: {:?}",
                report.counterexample
            );
            assert!(report.cases_checked > 0);
            assert_eq!(report.residual, Residual::Exact { mismatches: 0 });
        }
    }

    #[test]
    fn numeric_families_pass_on_small_grids() {
        for id in [IdentityId::Thm1, IdentityId::Thm3, IdentityId::Thm4] {
            let report = verify(&small(id)).unwrap();
            assert_eq!(
                report.status,
                Status::Pass,
                "{id}: {:?}",
                report.counterexample
            );
            match report.residual {
                Residual::MaxAbsError { value, tolerance } => {
                    assert!(value <= tolerance, "{id}: worst {value}");
                }
                ref other => panic!("unexpected residual {other:?}"),
            }
        }
    }

    #[test]
    fn padic_families_pass_on_small_grids() {
        for id in [IdentityId::Witt, IdentityId::IntEq] {
            let report = verify(&small(id)).unwrap();
            assert_eq!(
                report.status,
                Status::Pass,
                "{id}: {:?}",
                report.counterexample
            );
            assert!(report.cases_checked > 0);
        }
    }

    #[test]
    fn empty_config_passes_vacuously() {
        let reports = run_all(&SuiteConfig::empty()).unwrap();
        assert!(reports.is_empty());
        assert!(all_passed(&reports));
    }

    #[test]
    fn mutation_is_detected_per_family() {
        for id in [
            IdentityId::Thm2,
            IdentityId::Thm1,
            IdentityId::Witt,
            IdentityId::IntEq,
        ] {
            let config = SuiteConfig {
                cases: vec![small(IdentityId::Thm6), small(id)],
                mutate: Some(id),
            };
            let reports = run_all(&config).unwrap();
            assert_eq!(reports.len(), 2);
            assert_eq!(reports[0].status, Status::Pass);
            assert_eq!(reports[1].status, Status::Fail, "{id} mutation undetected");
            assert!(reports[1].perturbed);
            assert!(reports[1].counterexample.is_some());
            assert!(!all_passed(&reports));
        }
    }

    #[test]
    fn reports_serialise_with_stable_ids() {
        let report = verify(&small(IdentityId::Thm2)).unwrap();
        let json = reports_to_json(std::slice::from_ref(&report)).unwrap();
        assert!(json.contains("\"id\": \"THM2\""));
        assert!(json.contains("\"status\": \"pass\""));
        assert!(json.contains("\"corrected_form\": true"));
        let back: Vec<VerificationReport> = serde_json::from_str(&json).unwrap();
        assert_eq!(back[0], report);
    }

    #[test]
    fn mode_mismatch_is_rejected() {
        let mut case = small(IdentityId::Thm2);
        case.mode = VerifyMode::Numeric { tolerance: 1e-6 };
        assert!(verify(&case).is_err());
    }

    #[test]
    fn canonical_cases_cover_the_catalogue() {
        let suite = SuiteConfig::default_suite();
        assert_eq!(suite.cases.len(), ALL_IDENTITIES.len());
        for (case, id) in suite.cases.iter().zip(ALL_IDENTITIES) {
            assert_eq!(case.id, id);
        }
    }
}
