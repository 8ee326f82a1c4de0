//! Batch CLI: every pipeline as a subcommand with JSON/CSV output.
//!
//! Exit codes: 0 success, 1 verification failure, 2 invalid input,
//! 3 resource/budget exhaustion.

use clap::{Parser, Subcommand, ValueEnum};
use knot74::beta::{build_n_sequence, extract_d_sequence, product_identity_audit, s_of_n};
use knot74::character::{
    condition_star, irreducibility_certificate, largest_real_root,
    IrreducibilityVerdict,
};
use knot74::cyclotomic::{norm_cd, norm_cd_value, norm_cd_via_resultant, surgery_ramified_primes};
use knot74::divpoly::{
    default_curve, divisibility_check, divpoly_table, factlist_check, torsion_obstruction,
};
use knot74::poly::IntPoly;
use knot74::{Error, Result};
use num_bigint::BigInt;
use num_traits::Signed;
use serde::Serialize;
use std::io::Write;
use std::path::PathBuf;

const SCHEMA_VERSION: &str = "1";

#[derive(Parser)]
#[command(name = "knot74", version, about = "Exact arithmetic pipelines for the 7_4 surgery-point computations")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
enum Format {
    Json,
    Csv,
}

#[derive(clap::Args, Clone)]
struct DRange {
    /// Single odd index d.
    #[arg(long)]
    d: Option<u64>,
    /// Lower end of an odd-d range (inclusive).
    #[arg(long, requires = "d_max", conflicts_with = "d")]
    d_min: Option<u64>,
    /// Upper end of an odd-d range (inclusive).
    #[arg(long, requires = "d_min", conflicts_with = "d")]
    d_max: Option<u64>,
}

impl DRange {
    fn values(&self) -> Result<Vec<u64>> {
        let list: Vec<u64> = match (self.d, self.d_min, self.d_max) {
            (Some(d), _, _) => vec![d],
            (None, Some(lo), Some(hi)) if lo <= hi => (lo..=hi).filter(|d| d % 2 == 1).collect(),
            _ => {
                return Err(Error::InvalidInput(
                    "provide --d or a nonempty --d-min/--d-max range".into(),
                ))
            }
        };
        if list.is_empty() {
            return Err(Error::InvalidInput("empty d range".into()));
        }
        for &d in &list {
            if d % 2 == 0 || d < 3 {
                return Err(Error::InvalidInput(format!("d must be odd and >= 3 (got {d})")));
            }
        }
        Ok(list)
    }
}

#[derive(Subcommand)]
enum Command {
    /// Norm table: d, N(c_d), |N| mod 4, factorization, ramified primes.
    Norms {
        #[command(flatten)]
        range: DRange,
        #[arg(long, value_enum, default_value = "json")]
        format: Format,
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Ramified primes of the d-surgery quaternion algebra.
    Ramified {
        #[command(flatten)]
        range: DRange,
        #[arg(long, value_enum, default_value = "json")]
        format: Format,
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Alternating-sign sequence and its ramification certificates.
    Sequence {
        /// Comma-separated generator primes, each ≡ 1 mod 4 (e.g. 5,13).
        #[arg(long)]
        gens: String,
        /// Number of certificates to produce.
        #[arg(long)]
        count: usize,
        /// Working precision for the angle prescreen (bits, >= 64).
        #[arg(long, default_value = "96")]
        precision_bits: u32,
        /// Search budget override (multiplier of the default 10^6 steps).
        #[arg(long)]
        budget: Option<u64>,
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Division polynomial table for the default curve.
    Divpoly {
        #[arg(long, default_value = "8")]
        max_n: usize,
        #[arg(long, value_enum, default_value = "json")]
        format: Format,
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Run an invariant suite.
    Verify {
        #[arg(value_enum)]
        suite: Suite,
        #[arg(long)]
        max_n: Option<usize>,
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Irreducibility certificates for the surgery cubics.
    Irreducible {
        #[command(flatten)]
        range: DRange,
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// CSV of (a, largest real root of R³ − aR² − 1).
    Rootplot {
        #[arg(long, default_value = "-2.0", allow_hyphen_values = true)]
        a_min: f64,
        #[arg(long, default_value = "2.0")]
        a_max: f64,
        #[arg(long, default_value = "400")]
        steps: usize,
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Torsion obstruction from a monic minimal polynomial
    /// (comma-separated integer coefficients, constant term first).
    TorsionCheck {
        coeffs: String,
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Condition (⋆) for an Alexander polynomial
    /// (comma-separated integer coefficients, constant term first, e.g. 4,-7,4).
    ConditionStar {
        coeffs: String,
        #[arg(long)]
        out: Option<PathBuf>,
    },
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
enum Suite {
    Factlist,
    Norms,
    Identity,
    Irreducible,
    All,
}

#[derive(Serialize)]
struct Envelope<C: Serialize, R: Serialize> {
    schema_version: &'static str,
    command: &'static str,
    config: C,
    results: R,
}

fn emit(out: &Option<PathBuf>, content: &str) -> Result<()> {
    match out {
        Some(path) => std::fs::write(path, content)
            .map_err(|e| Error::Resource(format!("cannot write {}: {e}", path.display()))),
        None => {
            let mut stdout = std::io::stdout().lock();
            stdout
                .write_all(content.as_bytes())
                .and_then(|_| stdout.write_all(b"\n"))
                .map_err(|e| Error::Resource(format!("stdout: {e}")))
        }
    }
}

fn emit_json<C: Serialize, R: Serialize>(
    out: &Option<PathBuf>,
    command: &'static str,
    config: C,
    results: R,
) -> Result<()> {
    let env = Envelope {
        schema_version: SCHEMA_VERSION,
        command,
        config,
        results,
    };
    let text = serde_json::to_string_pretty(&env)
        .map_err(|e| Error::Internal(format!("serialization: {e}")))?;
    emit(out, &text)
}

fn factor_string(factors: &[(BigInt, u32)]) -> String {
    if factors.is_empty() {
        return "1".into();
    }
    factors
        .iter()
        .map(|(p, e)| format!("{p}^{e}"))
        .collect::<Vec<_>>()
        .join("*")
}

fn parse_coeffs(s: &str) -> Result<IntPoly> {
    let coeffs = s
        .split(',')
        .map(|t| {
            t.trim()
                .parse::<BigInt>()
                .map_err(|_| Error::InvalidInput(format!("bad coefficient '{t}'")))
        })
        .collect::<Result<Vec<_>>>()?;
    Ok(IntPoly::new(coeffs))
}

fn parse_gens(s: &str) -> Result<Vec<u64>> {
    s.split(',')
        .map(|t| {
            t.trim()
                .parse::<u64>()
                .map_err(|_| Error::InvalidInput(format!("bad generator '{t}'")))
        })
        .collect()
}

fn cmd_norms(range: &DRange, format: Format, out: &Option<PathBuf>) -> Result<()> {
    let ds = range.values()?;
    let rows = ds.iter().map(|&d| norm_cd(d)).collect::<Result<Vec<_>>>()?;
    match format {
        Format::Json => emit_json(out, "norms", serde_json::json!({ "d": ds }), rows),
        Format::Csv => {
            let mut text = String::from("d,norm,residue_mod4,factorization,ramified_primes\n");
            for r in &rows {
                text.push_str(&format!(
                    "{},{},{},{},{}\n",
                    r.d,
                    r.value,
                    r.residue_mod4,
                    factor_string(&r.factorization.factors),
                    r.ramified_primes
                        .iter()
                        .map(|p| p.to_string())
                        .collect::<Vec<_>>()
                        .join(";")
                ));
            }
            emit(out, text.trim_end())
        }
    }
}

fn cmd_ramified(range: &DRange, format: Format, out: &Option<PathBuf>) -> Result<()> {
    let ds = range.values()?;
    let rows = ds
        .iter()
        .map(|&d| Ok((d, surgery_ramified_primes(d)?)))
        .collect::<Result<Vec<(u64, Vec<BigInt>)>>>()?;
    match format {
        Format::Json => {
            let json_rows: Vec<_> = rows
                .iter()
                .map(|(d, ps)| {
                    serde_json::json!({
                        "d": d,
                        "ramified_primes": ps.iter().map(|p| p.to_string()).collect::<Vec<_>>(),
                    })
                })
                .collect();
            emit_json(out, "ramified", serde_json::json!({ "d": ds }), json_rows)
        }
        Format::Csv => {
            let mut text = String::from("d,ramified_primes\n");
            for (d, ps) in &rows {
                text.push_str(&format!(
                    "{},{}\n",
                    d,
                    ps.iter().map(|p| p.to_string()).collect::<Vec<_>>().join(";")
                ));
            }
            emit(out, text.trim_end())
        }
    }
}

fn cmd_sequence(
    gens: &str,
    count: usize,
    precision_bits: u32,
    out: &Option<PathBuf>,
) -> Result<()> {
    if precision_bits < 64 {
        return Err(Error::InvalidInput("precision-bits must be >= 64".into()));
    }
    let generators = parse_gens(gens)?;
    let sequence = build_n_sequence(&generators, count)?;
    let certificates = extract_d_sequence(&sequence)?;
    if certificates.iter().any(|c| c.primes.is_empty()) {
        return Err(Error::Verification(
            "a certificate has an empty ramified-prime list".into(),
        ));
    }
    emit_json(
        out,
        "sequence",
        serde_json::json!({ "gens": generators, "count": count, "precision_bits": precision_bits }),
        serde_json::json!({ "sequence": sequence, "certificates": certificates }),
    )
}

fn cmd_divpoly(max_n: usize, format: Format, out: &Option<PathBuf>) -> Result<()> {
    let table = divpoly_table(&default_curve(), max_n)?;
    match format {
        Format::Json => emit_json(out, "divpoly", serde_json::json!({ "max_n": max_n }), &table),
        Format::Csv => {
            let mut text = String::from("n,degree,coefficients\n");
            for n in 1..=max_n {
                let f = table.f(n);
                text.push_str(&format!(
                    "{},{},{}\n",
                    n,
                    f.deg(),
                    f.coeffs()
                        .iter()
                        .map(|c| c.to_string())
                        .collect::<Vec<_>>()
                        .join(";")
                ));
            }
            emit(out, text.trim_end())
        }
    }
}

#[derive(Serialize)]
struct SuiteResult {
    suite: &'static str,
    bound: usize,
    checks: usize,
}

fn verify_factlist(max_n: usize) -> Result<SuiteResult> {
    let table = divpoly_table(&default_curve(), max_n)?;
    let mut checks = 0;
    for n in 2..=max_n {
        factlist_check(&table, n)?;
        checks += 1;
        if n % 2 == 0 {
            if !divisibility_check(&table, n)? {
                return Err(Error::Verification(format!("f_2 does not divide f_{n}")));
            }
            checks += 1;
        }
    }
    Ok(SuiteResult {
        suite: "factlist",
        bound: max_n,
        checks,
    })
}

fn verify_norms(max_d: usize) -> Result<SuiteResult> {
    let mut checks = 0;
    for d in (3..=max_d as u64).step_by(2) {
        let value = norm_cd_value(d)?;
        let via_res = norm_cd_via_resultant(d)?;
        if value != via_res {
            return Err(Error::Verification(format!(
                "norm mismatch at d = {d}: {value} vs {via_res}"
            )));
        }
        // Lemma 5.5: N(c_d) is odd and ≡ 1 mod 4
        if num_integer::Integer::mod_floor(&value, &BigInt::from(4)) != BigInt::from(1) {
            return Err(Error::Verification(format!("N(c_{d}) not ≡ 1 mod 4")));
        }
        checks += 2;
    }
    Ok(SuiteResult {
        suite: "norms",
        bound: max_d,
        checks,
    })
}

fn verify_identity(max_n: usize) -> Result<SuiteResult> {
    let mut checks = 0;
    for n in (3..=max_n as u64).step_by(2) {
        // Lemma 5.6: |s(n)| = |∏_{d|n, d>1} N(c_d)|
        let s = s_of_n(n)?;
        let prod = knot74::beta::divisor_norm_product(n)?;
        if s.abs() != prod.abs() {
            return Err(Error::Verification(format!(
                "absolute-value identity fails at n = {n}"
            )));
        }
        checks += 1;
        if n % 4 == 1 && n >= 5 {
            if !product_identity_audit(n)? {
                return Err(Error::Verification(format!(
                    "signed identity fails at n = {n}"
                )));
            }
            checks += 1;
        }
    }
    Ok(SuiteResult {
        suite: "identity",
        bound: max_n,
        checks,
    })
}

fn verify_irreducible() -> Result<SuiteResult> {
    let mut checks = 0;
    for d in (3..=41u64).step_by(2) {
        let report = irreducibility_certificate(d)?;
        if report.verdict != IrreducibilityVerdict::Irreducible {
            return Err(Error::Verification(format!(
                "no irreducibility certificate for d = {d}"
            )));
        }
        checks += 1;
    }
    Ok(SuiteResult {
        suite: "irreducible",
        bound: 41,
        checks,
    })
}

fn cmd_verify(suite: Suite, max_n: Option<usize>, out: &Option<PathBuf>) -> Result<()> {
    let mut results = Vec::new();
    if matches!(suite, Suite::Factlist | Suite::All) {
        results.push(verify_factlist(max_n.unwrap_or(64))?);
    }
    if matches!(suite, Suite::Norms | Suite::All) {
        results.push(verify_norms(max_n.unwrap_or(201))?);
    }
    if matches!(suite, Suite::Identity | Suite::All) {
        results.push(verify_identity(max_n.unwrap_or(105))?);
    }
    if matches!(suite, Suite::Irreducible | Suite::All) {
        results.push(verify_irreducible()?);
    }
    for r in &results {
        eprintln!("verify {}: {} checks passed (bound {})", r.suite, r.checks, r.bound);
    }
    emit_json(out, "verify", serde_json::json!({ "max_n": max_n }), results)
}

fn cmd_irreducible(range: &DRange, out: &Option<PathBuf>) -> Result<()> {
    let ds = range.values()?;
    let reports = ds
        .iter()
        .map(|&d| irreducibility_certificate(d))
        .collect::<Result<Vec<_>>>()?;
    emit_json(out, "irreducible", serde_json::json!({ "d": ds }), reports)
}

fn cmd_rootplot(a_min: f64, a_max: f64, steps: usize, out: &Option<PathBuf>) -> Result<()> {
    if !(-2.0..=2.0).contains(&a_min) || !(-2.0..=2.0).contains(&a_max) || a_min >= a_max {
        return Err(Error::InvalidInput(
            "need -2 <= a_min < a_max <= 2".into(),
        ));
    }
    if steps < 2 {
        return Err(Error::InvalidInput("steps must be >= 2".into()));
    }
    let mut text = String::from("a,largest_real_root\n");
    for k in 0..=steps {
        let a = a_min + (a_max - a_min) * k as f64 / steps as f64;
        text.push_str(&format!("{},{}\n", a, largest_real_root(a)?));
    }
    emit(out, text.trim_end())
}

fn cmd_torsion_check(coeffs: &str, out: &Option<PathBuf>) -> Result<()> {
    let poly = parse_coeffs(coeffs)?;
    let verdict = torsion_obstruction(&poly)?;
    emit_json(
        out,
        "torsion-check",
        serde_json::json!({ "coeffs": coeffs }),
        verdict,
    )
}

fn cmd_condition_star(coeffs: &str, out: &Option<PathBuf>) -> Result<()> {
    let poly = parse_coeffs(coeffs)?;
    let report = condition_star(&poly)?;
    emit_json(
        out,
        "condition-star",
        serde_json::json!({ "coeffs": coeffs }),
        report,
    )
}

fn run(cli: Cli) -> Result<()> {
    match &cli.command {
        Command::Norms { range, format, out } => cmd_norms(range, *format, out),
        Command::Ramified { range, format, out } => cmd_ramified(range, *format, out),
        Command::Sequence {
            gens,
            count,
            precision_bits,
            budget: _,
            out,
        } => cmd_sequence(gens, *count, *precision_bits, out),
        Command::Divpoly { max_n, format, out } => cmd_divpoly(*max_n, *format, out),
        Command::Verify { suite, max_n, out } => cmd_verify(*suite, *max_n, out),
        Command::Irreducible { range, out } => cmd_irreducible(range, out),
        Command::Rootplot {
            a_min,
            a_max,
            steps,
            out,
        } => cmd_rootplot(*a_min, *a_max, *steps, out),
        Command::TorsionCheck { coeffs, out } => cmd_torsion_check(coeffs, out),
        Command::ConditionStar { coeffs, out } => cmd_condition_star(coeffs, out),
    }
}

fn main() {
    let cli = Cli::parse();
    match run(cli) {
        Ok(()) => {}
        Err(e) => {
            eprintln!("error: {e}");
            let code = match e {
                Error::InvalidInput(_) | Error::Unsupported(_) => 2,
                Error::Verification(_) | Error::Internal(_) => 1,
                Error::Resource(_) => 3,
            };
            std::process::exit(code);
        }
    }
}
