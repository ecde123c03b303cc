//! Command-line front end for the q-Euler toolkit: exact tables, certified
//! series evaluation, the identity verification suite, and finite-level
//! p-adic experiments.
//!
//! Exit codes: 0 success, 1 verification failure, 2 usage or domain error.

use std::collections::BTreeMap;
use std::fs;
use std::path::PathBuf;
use std::str::FromStr;

use clap::{Args, Parser, Subcommand, ValueEnum};
use num_complex::Complex64;
use num_rational::BigRational;
use num_traits::{One, Zero};
use serde::Serialize;

use qeuler::{
    all_passed, barnes_zeta, character_from_spec, euler_number, euler_polynomial,
    generalized_euler_number, higher_order_table, integral_equation_check, l_q, run_all,
    witt_check, zeta_q, ComplexApprox, IdentityCase, IdentityId, IntegrandPoly, Residual, Status,
    SuiteConfig, VerificationReport,
};

/// Largest degree any table subcommand will compute.
const TABLE_CAP: usize = 64;
/// Largest order for higher-order tables.
const ORDER_CAP: usize = 8;

#[derive(Parser)]
#[command(
    name = "qeuler",
    version,
    about = "Exact q-Euler numbers and polynomials, certified zeta/l evaluation, \
             identity verification, and p-adic convergence tables"
)]
struct Cli {
    /// Output format for records and reports.
    #[arg(long, global = true, value_enum, default_value_t = Format::Csv)]
    format: Format,
    /// Write output to this file instead of stdout.
    #[arg(long, global = true)]
    out: Option<PathBuf>,
    /// Working precision: analytic tolerances default to 10^-M and p-adic
    /// values display M digits.
    #[arg(long, global = true, default_value_t = 12)]
    precision: u32,
    #[command(subcommand)]
    command: Command,
}

#[derive(Copy, Clone, PartialEq, Eq, ValueEnum)]
enum Format {
    Csv,
    Json,
}

#[derive(Subcommand)]
enum Command {
    /// Exact tables of numbers and polynomials.
    Table {
        #[command(subcommand)]
        kind: TableKind,
    },
    /// Certified evaluation of the series.
    Eval {
        #[command(subcommand)]
        kind: EvalKind,
    },
    /// Run the identity verification suite.
    Verify(VerifyArgs),
    /// Finite-level p-adic integral experiments.
    Padic {
        #[command(subcommand)]
        kind: PadicKind,
    },
}

#[derive(Subcommand)]
enum TableKind {
    /// The numbers E_{n,q} as canonical rational functions of q.
    Numbers {
        #[arg(long, default_value_t = 8)]
        n_max: usize,
        /// Evaluate each entry exactly at this rational q (e.g. "1" or "2/3").
        #[arg(long, allow_hyphen_values = true)]
        at_q: Option<String>,
    },
    /// The polynomials E_{n,q}(x) with rational-function coefficients.
    Polynomials {
        #[arg(long, default_value_t = 8)]
        n_max: usize,
    },
    /// Higher-order numbers E^(r)_{n,q} for all orders up to r-max.
    HigherOrder {
        #[arg(long, default_value_t = 8)]
        n_max: usize,
        #[arg(long, default_value_t = 2)]
        r_max: usize,
    },
    /// Coefficient vectors of the generalized numbers for modulus f.
    Generalized {
        #[arg(long, default_value_t = 8)]
        n_max: usize,
        #[arg(long, default_value_t = 3)]
        f: u64,
    },
}

#[derive(Subcommand)]
enum EvalKind {
    /// zeta_q(s, x) at real or complex s.
    Zeta {
        /// s as "-3", "2.5", or "1+2i".
        #[arg(long, allow_hyphen_values = true)]
        s: String,
        #[arg(long, default_value_t = 1.0)]
        x: f64,
        #[arg(long)]
        q: f64,
        /// Request tolerance; defaults to 10^-precision.
        #[arg(long)]
        tol: Option<f64>,
    },
    /// l_q(s, chi) for a character addressed as "f.index",
    /// "f.trivial", or "f.nontrivial".
    Lfun {
        #[arg(long, allow_hyphen_values = true)]
        s: String,
        #[arg(long)]
        chi: String,
        #[arg(long)]
        q: f64,
        #[arg(long)]
        tol: Option<f64>,
    },
    /// Barnes-type multiple zeta with positive weights.
    Barnes {
        #[arg(long, allow_hyphen_values = true)]
        s: String,
        /// Comma-separated weights, e.g. "1,2".
        #[arg(long, value_delimiter = ',', required = true)]
        weights: Vec<f64>,
        #[arg(long, default_value_t = 1.0)]
        x: f64,
        #[arg(long)]
        q: f64,
        #[arg(long)]
        tol: Option<f64>,
    },
}

#[derive(Args)]
struct VerifyArgs {
    /// Run the whole default suite (the default when no selector is given).
    #[arg(long, conflicts_with_all = ["only", "config"])]
    all: bool,
    /// Run a single identity family by id (THM1..THM6, EQ2.15,
    /// SEC4.SUMPROD, WITT, INTEQ).
    #[arg(long)]
    only: Option<String>,
    /// Load a full suite configuration (JSON) instead of flags.
    #[arg(long, conflicts_with = "only")]
    config: Option<PathBuf>,
    /// Override the moduli grid (comma-separated odd moduli).
    #[arg(long, value_delimiter = ',')]
    f: Option<Vec<u64>>,
    /// Override the primes grid for p-adic families.
    #[arg(long, value_delimiter = ',')]
    p: Option<Vec<u64>>,
    #[arg(long)]
    n_max: Option<usize>,
    #[arg(long)]
    k_max: Option<usize>,
    #[arg(long)]
    r_max: Option<usize>,
    #[arg(long)]
    level_max: Option<u32>,
}

#[derive(Subcommand)]
enum PadicKind {
    /// Valuations of I_N((x0+x)^n) - E_{n,q}(x0) per level N.
    Witt {
        #[arg(long)]
        p: u64,
        /// q as an integer or rational "a/b" with v_p(1-q) >= 1.
        #[arg(long, allow_hyphen_values = true)]
        q: String,
        #[arg(long)]
        n: usize,
        #[arg(long = "N-max", default_value_t = 5)]
        n_levels: u32,
        #[arg(long, default_value = "0", allow_hyphen_values = true)]
        x0: String,
    },
    /// Residual valuations of the translation identity per level.
    Inteq {
        #[arg(long)]
        p: u64,
        #[arg(long, allow_hyphen_values = true)]
        q: String,
        /// Translation step.
        #[arg(long)]
        n: usize,
        #[arg(long = "N-max", default_value_t = 5)]
        n_levels: u32,
        /// Integrand degree d for g(x) = x^d.
        #[arg(long, default_value_t = 1)]
        degree: usize,
    },
}

/// One rendered row, in both output formats.
#[derive(Serialize)]
struct OutputRecord {
    kind: String,
    params: BTreeMap<String, String>,
    /// Exact canonical string (tables, p-adic) or decimal (eval).
    value: String,
    #[serde(skip_serializing_if = "Option::is_none")]
    error_bound: Option<f64>,
}

fn main() {
    let cli = Cli::parse();
    let code = match execute(cli) {
        Ok(code) => code,
        Err(message) => {
            eprintln!("error: {message}");
            2
        }
    };
    std::process::exit(code);
}

fn execute(cli: Cli) -> Result<i32, String> {
    if !(1..=25).contains(&cli.precision) {
        return Err(format!(
            "--precision must be between 1 and 25, got {}",
            cli.precision
        ));
    }
    let default_tol = 10f64.powi(-(cli.precision as i32));

    match cli.command {
        Command::Table { ref kind } => {
            let records = table_records(kind)?;
            emit_records(&records, cli.format, cli.out.as_ref())?;
            Ok(0)
        }
        Command::Eval { ref kind } => {
            let record = eval_record(kind, default_tol)?;
            emit_records(std::slice::from_ref(&record), cli.format, cli.out.as_ref())?;
            Ok(0)
        }
        Command::Verify(ref args) => {
            let config = build_suite_config(args)?;
            let reports = run_all(&config).map_err(|e| e.to_string())?;
            emit_reports(&reports, cli.format, cli.out.as_ref())?;
            Ok(if all_passed(&reports) { 0 } else { 1 })
        }
        Command::Padic { ref kind } => {
            let records = padic_records(kind, cli.precision)?;
            emit_records(&records, cli.format, cli.out.as_ref())?;
            Ok(0)
        }
    }
}

// ---------------------------------------------------------------------------
// table
// ---------------------------------------------------------------------------

fn check_caps(n_max: usize, r_max: usize) -> Result<(), String> {
    if n_max > TABLE_CAP {
        return Err(format!(
            "--n-max {n_max} exceeds the cap of {TABLE_CAP}; reduce the degree"
        ));
    }
    if r_max > ORDER_CAP {
        return Err(format!(
            "--r-max {r_max} exceeds the cap of {ORDER_CAP}; reduce the order"
        ));
    }
    Ok(())
}

fn table_records(kind: &TableKind) -> Result<Vec<OutputRecord>, String> {
    let mut records = Vec::new();
    match kind {
        TableKind::Numbers { n_max, at_q } => {
            check_caps(*n_max, 0)?;
            let at = at_q.as_deref().map(parse_rational).transpose()?;
            for n in 0..=*n_max {
                let mut params = BTreeMap::new();
                params.insert("n".into(), n.to_string());
                let value = match &at {
                    None => euler_number(n).to_string(),
                    Some(q) => {
                        params.insert("q".into(), q.to_string());
                        euler_number(n)
                            .eval_rational(q)
                            .map_err(|e| e.to_string())?
                            .to_string()
                    }
                };
                records.push(OutputRecord {
                    kind: "euler-number".into(),
                    params,
                    value,
                    error_bound: None,
                });
            }
        }
        TableKind::Polynomials { n_max } => {
            check_caps(*n_max, 0)?;
            for n in 0..=*n_max {
                let mut params = BTreeMap::new();
                params.insert("n".into(), n.to_string());
                records.push(OutputRecord {
                    kind: "euler-polynomial".into(),
                    params,
                    value: euler_polynomial(n).to_string(),
                    error_bound: None,
                });
            }
        }
        TableKind::HigherOrder { n_max, r_max } => {
            check_caps(*n_max, *r_max)?;
            if *r_max == 0 {
                return Err("--r-max must be at least 1".into());
            }
            let table = higher_order_table(*n_max, *r_max);
            for (r_index, row) in table.iter().enumerate() {
                for (n, value) in row.iter().enumerate() {
                    let mut params = BTreeMap::new();
                    params.insert("r".into(), (r_index + 1).to_string());
                    params.insert("n".into(), n.to_string());
                    records.push(OutputRecord {
                        kind: "higher-order".into(),
                        params,
                        value: value.to_string(),
                        error_bound: None,
                    });
                }
            }
        }
        TableKind::Generalized { n_max, f } => {
            check_caps(*n_max, 0)?;
            for n in 0..=*n_max {
                let gen = generalized_euler_number(n, *f).map_err(|e| e.to_string())?;
                for (a, coeff) in gen.coeffs().iter().enumerate() {
                    let mut params = BTreeMap::new();
                    params.insert("n".into(), n.to_string());
                    params.insert("f".into(), f.to_string());
                    params.insert("a".into(), a.to_string());
                    records.push(OutputRecord {
                        kind: "generalized".into(),
                        params,
                        value: coeff.to_string(),
                        error_bound: None,
                    });
                }
            }
        }
    }
    Ok(records)
}

// ---------------------------------------------------------------------------
// eval
// ---------------------------------------------------------------------------

fn eval_record(kind: &EvalKind, default_tol: f64) -> Result<OutputRecord, String> {
    let (name, approx, params) = match kind {
        EvalKind::Zeta { s, x, q, tol } => {
            let s = parse_complex(s)?;
            let tol = tol.unwrap_or(default_tol);
            let approx = zeta_q(s, *x, *q, tol).map_err(|e| e.to_string())?;
            let mut params = BTreeMap::new();
            params.insert("s".into(), format_complex(s));
            params.insert("x".into(), x.to_string());
            params.insert("q".into(), q.to_string());
            params.insert("tol".into(), format!("{tol:e}"));
            ("zeta", approx, params)
        }
        EvalKind::Lfun { s, chi, q, tol } => {
            let s = parse_complex(s)?;
            let tol = tol.unwrap_or(default_tol);
            let character = character_from_spec(chi).map_err(|e| e.to_string())?;
            let approx = l_q(s, &character, *q, tol).map_err(|e| e.to_string())?;
            let mut params = BTreeMap::new();
            params.insert("s".into(), format_complex(s));
            params.insert("chi".into(), character.label());
            params.insert("q".into(), q.to_string());
            params.insert("tol".into(), format!("{tol:e}"));
            ("lfun", approx, params)
        }
        EvalKind::Barnes {
            s,
            weights,
            x,
            q,
            tol,
        } => {
            let s = parse_complex(s)?;
            let tol = tol.unwrap_or(default_tol);
            let approx = barnes_zeta(s, weights, *x, *q, tol).map_err(|e| e.to_string())?;
            let mut params = BTreeMap::new();
            params.insert("s".into(), format_complex(s));
            params.insert(
                "weights".into(),
                weights
                    .iter()
                    .map(f64::to_string)
                    .collect::<Vec<_>>()
                    .join(","),
            );
            params.insert("x".into(), x.to_string());
            params.insert("q".into(), q.to_string());
            params.insert("tol".into(), format!("{tol:e}"));
            ("barnes", approx, params)
        }
    };
    let ComplexApprox {
        value,
        abs_error_bound,
    } = approx;
    Ok(OutputRecord {
        kind: name.into(),
        params,
        value: format_complex(value),
        error_bound: Some(abs_error_bound),
    })
}

// ---------------------------------------------------------------------------
// verify
// ---------------------------------------------------------------------------

fn build_suite_config(args: &VerifyArgs) -> Result<SuiteConfig, String> {
    if let Some(path) = &args.config {
        let text =
            fs::read_to_string(path).map_err(|e| format!("cannot read {}: {e}", path.display()))?;
        return serde_json::from_str(&text)
            .map_err(|e| format!("malformed suite config {}: {e}", path.display()));
    }
    let mut cases: Vec<IdentityCase> = if let Some(only) = &args.only {
        let id: IdentityId = only.parse().map_err(|e: qeuler::Error| e.to_string())?;
        vec![IdentityCase::canonical(id)]
    } else {
        SuiteConfig::default_suite().cases
    };
    for case in &mut cases {
        if let Some(f) = &args.f {
            case.grid.moduli = f.clone();
        }
        if let Some(p) = &args.p {
            case.grid.primes = p.clone();
        }
        if let Some(n_max) = args.n_max {
            case.grid.n_max = n_max;
        }
        if let Some(k_max) = args.k_max {
            case.grid.k_max = k_max;
        }
        if let Some(r_max) = args.r_max {
            case.grid.r_max = r_max;
        }
        if let Some(level_max) = args.level_max {
            case.grid.level_max = level_max;
        }
    }
    Ok(SuiteConfig {
        cases,
        mutate: None,
    })
}

// ---------------------------------------------------------------------------
// padic
// ---------------------------------------------------------------------------

fn padic_records(kind: &PadicKind, precision: u32) -> Result<Vec<OutputRecord>, String> {
    let mut records = Vec::new();
    match kind {
        PadicKind::Witt {
            p,
            q,
            n,
            n_levels,
            x0,
        } => {
            let q = parse_rational(q)?;
            let x0 = parse_rational(x0)?;
            let entries =
                witt_check(*n, &x0, *p, &q, *n_levels, precision).map_err(|e| e.to_string())?;
            for entry in entries {
                let mut params = BTreeMap::new();
                params.insert("p".into(), p.to_string());
                params.insert("q".into(), q.to_string());
                params.insert("n".into(), n.to_string());
                params.insert("x0".into(), x0.to_string());
                params.insert("level".into(), entry.level.to_string());
                params.insert(
                    "valuation".into(),
                    entry
                        .difference_valuation
                        .map_or("exact".into(), |v| v.to_string()),
                );
                params.insert("padic".into(), entry.integral_padic.to_string());
                records.push(OutputRecord {
                    kind: "witt-level".into(),
                    params,
                    value: entry.integral.to_string(),
                    error_bound: None,
                });
            }
        }
        PadicKind::Inteq {
            p,
            q,
            n,
            n_levels,
            degree,
        } => {
            let q = parse_rational(q)?;
            let mut coeffs = vec![BigRational::zero(); degree + 1];
            coeffs[*degree] = BigRational::one();
            let g = IntegrandPoly::new(coeffs).map_err(|e| e.to_string())?;
            let entries = integral_equation_check(&g, *n, *p, &q, *n_levels, precision)
                .map_err(|e| e.to_string())?;
            for entry in entries {
                let mut params = BTreeMap::new();
                params.insert("p".into(), p.to_string());
                params.insert("q".into(), q.to_string());
                params.insert("n".into(), n.to_string());
                params.insert("g".into(), format!("x^{degree}"));
                params.insert("level".into(), entry.level.to_string());
                params.insert(
                    "valuation".into(),
                    entry.valuation.map_or("exact".into(), |v| v.to_string()),
                );
                records.push(OutputRecord {
                    kind: "inteq-level".into(),
                    params,
                    value: entry.residual.to_string(),
                    error_bound: None,
                });
            }
        }
    }
    Ok(records)
}

// ---------------------------------------------------------------------------
// parsing and rendering
// ---------------------------------------------------------------------------

fn parse_rational(text: &str) -> Result<BigRational, String> {
    BigRational::from_str(text.trim())
        .map_err(|e| format!("cannot parse '{text}' as a rational a/b: {e}"))
}

fn parse_complex(text: &str) -> Result<Complex64, String> {
    let t: String = text.trim().replace(' ', "");
    if let Ok(re) = t.parse::<f64>() {
        return Ok(Complex64::new(re, 0.0));
    }
    let body = t
        .strip_suffix('i')
        .ok_or_else(|| format!("cannot parse '{text}' as a real or complex number"))?;
    let bytes = body.as_bytes();
    let mut split = None;
    for idx in (1..bytes.len()).rev() {
        let b = bytes[idx];
        if (b == b'+' || b == b'-') && !matches!(bytes[idx - 1], b'e' | b'E') {
            split = Some(idx);
            break;
        }
    }
    match split {
        None => {
            let im = match body {
                "" | "+" => 1.0,
                "-" => -1.0,
                other => other
                    .parse()
                    .map_err(|e| format!("bad imaginary part in '{text}': {e}"))?,
            };
            Ok(Complex64::new(0.0, im))
        }
        Some(idx) => {
            let re: f64 = body[..idx]
                .parse()
                .map_err(|e| format!("bad real part in '{text}': {e}"))?;
            let sign = if bytes[idx] == b'-' { -1.0 } else { 1.0 };
            let rest = &body[idx + 1..];
            let magnitude: f64 = if rest.is_empty() {
                1.0
            } else {
                rest.parse()
                    .map_err(|e| format!("bad imaginary part in '{text}': {e}"))?
            };
            Ok(Complex64::new(re, sign * magnitude))
        }
    }
}

fn format_complex(v: Complex64) -> String {
    if v.im == 0.0 {
        format!("{}", v.re)
    } else if v.im >= 0.0 {
        format!("{}+{}i", v.re, v.im)
    } else {
        format!("{}-{}i", v.re, -v.im)
    }
}

fn join_params(params: &BTreeMap<String, String>) -> String {
    params
        .iter()
        .map(|(k, v)| format!("{k}={v}"))
        .collect::<Vec<_>>()
        .join(";")
}

fn emit_records(
    records: &[OutputRecord],
    format: Format,
    out: Option<&PathBuf>,
) -> Result<(), String> {
    let text = match format {
        Format::Json => serde_json::to_string_pretty(records)
            .map_err(|e| format!("serialisation failed: {e}"))?,
        Format::Csv => {
            let mut writer = csv::Writer::from_writer(Vec::new());
            writer
                .write_record(["kind", "params", "value", "error_bound"])
                .map_err(|e| e.to_string())?;
            for record in records {
                writer
                    .write_record([
                        record.kind.as_str(),
                        &join_params(&record.params),
                        record.value.as_str(),
                        &record
                            .error_bound
                            .map_or(String::new(), |b| format!("{b:e}")),
                    ])
                    .map_err(|e| e.to_string())?;
            }
            finish_csv(writer)?
        }
    };
    write_output(&text, out)
}

fn emit_reports(
    reports: &[VerificationReport],
    format: Format,
    out: Option<&PathBuf>,
) -> Result<(), String> {
    let text = match format {
        Format::Json => qeuler::reports_to_json(reports).map_err(|e| e.to_string())?,
        Format::Csv => {
            let mut writer = csv::Writer::from_writer(Vec::new());
            writer
                .write_record([
                    "id",
                    "status",
                    "corrected_form",
                    "cases_checked",
                    "residual",
                    "counterexample",
                    "time_ms",
                ])
                .map_err(|e| e.to_string())?;
            for report in reports {
                let status = match report.status {
                    Status::Pass => "pass",
                    Status::Fail => "fail",
                };
                let residual = match &report.residual {
                    Residual::Exact { mismatches } => format!("mismatches={mismatches}"),
                    Residual::MaxAbsError { value, tolerance } => {
                        format!("max_abs_error={value:.3e} (tolerance {tolerance:.1e})")
                    }
                    Residual::MinValuation { value } => format!(
                        "min_valuation={}",
                        value.map_or("exact".to_string(), |v| v.to_string())
                    ),
                };
                writer
                    .write_record([
                        &report.id.to_string(),
                        status,
                        &report.corrected_form.to_string(),
                        &report.cases_checked.to_string(),
                        &residual,
                        report.counterexample.as_deref().unwrap_or(""),
                        &format!("{:.3}", report.time_ms),
                    ])
                    .map_err(|e| e.to_string())?;
            }
            finish_csv(writer)?
        }
    };
    write_output(&text, out)
}

fn finish_csv(writer: csv::Writer<Vec<u8>>) -> Result<String, String> {
    let bytes = writer
        .into_inner()
        .map_err(|e| format!("csv finalisation failed: {e}"))?;
    String::from_utf8(bytes).map_err(|e| e.to_string())
}

fn write_output(text: &str, out: Option<&PathBuf>) -> Result<(), String> {
    match out {
        None => {
            println!("{text}");
            Ok(())
        }
        Some(path) => fs::write(path, text.as_bytes())
            .map_err(|e| format!("cannot write {}: {e}", path.display())),
    }
}
