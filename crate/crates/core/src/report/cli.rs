//! `gammaprox` command line interface.

use std::ffi::OsString;
use std::io::Write;

use clap::{Parser, Subcommand};
use rayon::prelude::*;

use super::format::format_value;
use super::table::{render_table, OutputFormat, TableRequest};
use crate::analysis::{estimate_a, estimate_order, percentage_error, theta_of_n};
use crate::approx::MethodId;
use crate::error::{Error, Result};
use crate::mpcore::{HpReal, PrecisionContext, Validation};
use crate::selftest;

pub const EXIT_OK: i32 = 0;
pub const EXIT_USAGE: i32 = 2;
pub const EXIT_NUMERIC: i32 = 3;

/// Environment variable holding the default working precision in bits.
pub const BITS_ENV: &str = "GAMMAPROX_BITS";

#[derive(Debug, Parser)]
#[command(
    name = "gammaprox",
    version,
    about = "Closed-form approximations to n! at arbitrary precision"
)]
struct Cli {
    /// Working precision in bits (at least 128).
    #[arg(long, global = true, env = BITS_ENV, default_value_t = PrecisionContext::DEFAULT_BITS)]
    bits: u32,

    /// Validation policy: `none` or `double`.
    #[arg(long, global = true, default_value = "double", value_parser = parse_validation)]
    validate: Validation,

    /// Ceiling for automatic precision raising, in bits.
    #[arg(long, global = true, default_value_t = PrecisionContext::DEFAULT_MAX_BITS)]
    max_bits: u32,

    #[command(subcommand)]
    command: Command,
}

#[derive(Debug, Subcommand)]
enum Command {
    /// Reproduce one of the reference tables, or a custom one.
    Table {
        /// Preset table 1, 2 or 3.
        #[arg(long, value_parser = clap::value_parser!(u8).range(1..=3), required_unless_present = "methods")]
        which: Option<u8>,
        /// Custom method list, e.g. `S,R,C` (requires --ns).
        #[arg(long, value_delimiter = ',', value_parser = parse_method, conflicts_with = "which", requires = "ns")]
        methods: Option<Vec<MethodId>>,
        /// Custom n list, e.g. `2,10,10^6`.
        #[arg(long, value_delimiter = ',', value_parser = parse_n)]
        ns: Option<Vec<u64>>,
        #[arg(long, default_value = "markdown", value_parser = parse_format)]
        format: OutputFormat,
        /// Significant figures.
        #[arg(long, default_value_t = 2, value_parser = clap::value_parser!(u16).range(1..=200))]
        digits: u16,
    },
    /// Percentage error of one method at one n.
    Error {
        #[arg(long, value_parser = parse_method)]
        method: MethodId,
        #[arg(long, value_parser = parse_n)]
        n: u64,
        #[arg(long, default_value_t = 2, value_parser = clap::value_parser!(u16).range(1..=200))]
        digits: u16,
    },
    /// Ramanujan's θ_n with both bound checks.
    Theta {
        #[arg(long, value_parser = parse_n)]
        n: u64,
    },
    /// Empirical convergence order over a list of n.
    Order {
        #[arg(long, value_parser = parse_method)]
        method: MethodId,
        #[arg(long, value_delimiter = ',', value_parser = parse_n, required = true)]
        ns: Vec<u64>,
    },
    /// The sequence A_n converging to the tweak constant.
    FitA {
        #[arg(long, value_delimiter = ',', value_parser = parse_n, required = true)]
        ns: Vec<u64>,
    },
    /// Run the invariant suite.
    Selftest,
}

fn parse_validation(s: &str) -> std::result::Result<Validation, String> {
    s.parse().map_err(|e: Error| e.to_string())
}

fn parse_format(s: &str) -> std::result::Result<OutputFormat, String> {
    s.parse().map_err(|e: Error| e.to_string())
}

fn parse_method(s: &str) -> std::result::Result<MethodId, String> {
    s.parse().map_err(|e: Error| e.to_string())
}

/// Accepts `1000`, `10^6` and `1e6`.
fn parse_n(s: &str) -> std::result::Result<u64, String> {
    let s = s.trim();
    let bad = || format!("`{s}` is not a positive integer");
    let n = if let Some((base, exp)) = s.split_once('^') {
        let base: u64 = base.parse().map_err(|_| bad())?;
        let exp: u32 = exp.parse().map_err(|_| bad())?;
        base.checked_pow(exp).ok_or_else(bad)?
    } else if let Some((mant, exp)) = s.split_once(['e', 'E']) {
        let mant: u64 = mant.parse().map_err(|_| bad())?;
        let exp: u32 = exp.parse().map_err(|_| bad())?;
        10u64
            .checked_pow(exp)
            .and_then(|p| p.checked_mul(mant))
            .ok_or_else(bad)?
    } else {
        s.parse().map_err(|_| bad())?
    };
    if n == 0 {
        return Err(bad());
    }
    Ok(n)
}

fn pass(ok: bool) -> &'static str {
    if ok {
        "PASS"
    } else {
        "FAIL"
    }
}

fn execute(cli: Cli, out: &mut dyn Write) -> Result<bool> {
    let ctx = PrecisionContext::new(cli.bits)?
        .with_validation(cli.validate)
        .with_max_bits(cli.max_bits);
    let io = |e: std::io::Error| Error::Format(format!("write failed: {e}"));
    match cli.command {
        Command::Table {
            which,
            methods,
            ns,
            format,
            digits,
        } => {
            let req = match (which, methods) {
                (Some(t), _) => {
                    let mut req = TableRequest::preset(t, format)?;
                    if let Some(ns) = ns {
                        req.ns = ns;
                    }
                    req
                }
                (None, Some(methods)) => {
                    TableRequest::custom(methods, ns.unwrap_or_default(), format)
                }
                (None, None) => {
                    return Err(Error::Parse(
                        "either --which or --methods is required".into(),
                    ))
                }
            }
            .with_sig_figs(usize::from(digits));
            let text = render_table(&req, &ctx)?;
            write!(out, "{text}").map_err(io)?;
            if !text.ends_with('\n') {
                writeln!(out).map_err(io)?;
            }
            Ok(true)
        }
        Command::Error { method, n, digits } => {
            let rec = percentage_error(method, n, &ctx)?;
            writeln!(
                out,
                "{}",
                format_value(&rec.magnitude(), usize::from(digits))?
            )
            .map_err(io)?;
            Ok(true)
        }
        Command::Theta { n } => {
            let rec = theta_of_n(n, &ctx)?;
            let theta = &rec.theta;
            writeln!(out, "n = {n}").map_err(io)?;
            writeln!(out, "theta = {}", theta.to_sci_string_digits(25)).map_err(io)?;
            let ram_lo = HpReal::from_rational(&rec.ram_lo, ctx.bits());
            let ram_hi = HpReal::from_rational(&rec.ram_hi, ctx.bits());
            let lines = [
                ("Ramanujan lower 3/10", &ram_lo, *theta > ram_lo),
                ("Ramanujan upper 1", &ram_hi, *theta < ram_hi),
                (
                    "HV lower 1 - 11/(8n) + 79/(112n^2)",
                    &rec.hv_lo,
                    *theta > rec.hv_lo,
                ),
                (
                    "HV upper lower + 20/(33n^3)",
                    &rec.hv_hi,
                    *theta < rec.hv_hi,
                ),
            ];
            for (name, bound, ok) in lines {
                writeln!(
                    out,
                    "{name} = {}: {}",
                    bound.to_sci_string_digits(25),
                    pass(ok)
                )
                .map_err(io)?;
            }
            writeln!(out, "Ramanujan bounds: {}", pass(rec.in_ram_bounds)).map_err(io)?;
            writeln!(out, "HV bounds: {}", pass(rec.in_hv_bounds)).map_err(io)?;
            Ok(rec.in_ram_bounds && rec.in_hv_bounds)
        }
        Command::Order { method, ns } => {
            let fit = estimate_order(method, &ns, &ctx)?;
            let list: Vec<String> = ns.iter().map(u64::to_string).collect();
            writeln!(out, "method = {method}").map_err(io)?;
            writeln!(out, "ns = {}", list.join(",")).map_err(io)?;
            writeln!(out, "slope = {:.6}", fit.slope.to_f64()).map_err(io)?;
            writeln!(out, "intercept = {:.6}", fit.intercept.to_f64()).map_err(io)?;
            writeln!(out, "order = {:.4}", fit.order()).map_err(io)?;
            Ok(true)
        }
        Command::FitA { ns } => {
            let values = ns
                .par_iter()
                .map(|&n| estimate_a(n, &ctx))
                .collect::<Result<Vec<_>>>()?;
            for (n, a) in ns.iter().zip(&values) {
                writeln!(out, "A_{n} = {}", a.to_sci_string_digits(20)).map_err(io)?;
            }
            for (pair, vals) in ns.windows(2).zip(values.windows(2)) {
                let gap = (&vals[1] - &vals[0]).abs();
                writeln!(
                    out,
                    "|A_{} - A_{}| = {}",
                    pair[1],
                    pair[0],
                    gap.to_sci_string_digits(3)
                )
                .map_err(io)?;
            }
            let spec = MethodId::Sam.spec();
            let a = spec.constants.last().expect("SAM carries A");
            writeln!(
                out,
                "A = {a} = {}",
                HpReal::from_rational(a, ctx.bits()).to_sci_string_digits(20)
            )
            .map_err(io)?;
            Ok(true)
        }
        Command::Selftest => {
            let checks = selftest::run(&ctx);
            for c in &checks {
                writeln!(out, "{} {}: {}", pass(c.passed), c.name, c.detail).map_err(io)?;
            }
            Ok(checks.iter().all(|c| c.passed))
        }
    }
}

/// Parses `args` (including the program name) and runs the command, writing
/// results to `out` and diagnostics to `err`. Returns the process exit code:
/// 0 on success, 2 on usage errors, 3 when a numeric result could not be
/// certified or a check failed.
pub fn run<I, T>(args: I, out: &mut dyn Write, err: &mut dyn Write) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(cli) => cli,
        Err(e) => {
            let code = if e.use_stderr() { EXIT_USAGE } else { EXIT_OK };
            let text = e.render().to_string();
            let _ = if e.use_stderr() {
                write!(err, "{text}")
            } else {
                write!(out, "{text}")
            };
            return code;
        }
    };
    match execute(cli, out) {
        Ok(true) => EXIT_OK,
        Ok(false) => EXIT_NUMERIC,
        Err(e) => {
            let _ = writeln!(err, "gammaprox: {e}");
            match e {
                Error::Parse(_) | Error::Domain(_) | Error::Precision(_) => EXIT_USAGE,
                Error::InsufficientPrecision { .. } | Error::Format(_) => EXIT_NUMERIC,
            }
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn n_lists() {
        assert_eq!(parse_n("1000"), Ok(1000));
        assert_eq!(parse_n("10^6"), Ok(1_000_000));
        assert_eq!(parse_n("1e6"), Ok(1_000_000));
        assert_eq!(parse_n("5e2"), Ok(500));
        assert!(parse_n("0").is_err());
        assert!(parse_n("-3").is_err());
        assert!(parse_n("ten").is_err());
        assert!(parse_n("10^99").is_err());
    }

    fn run_args(args: &[&str]) -> (i32, String, String) {
        let mut out = Vec::new();
        let mut err = Vec::new();
        let mut full = vec!["gammaprox"];
        full.extend_from_slice(args);
        let code = run(full, &mut out, &mut err);
        (
            code,
            String::from_utf8(out).unwrap(),
            String::from_utf8(err).unwrap(),
        )
    }

    #[test]
    fn usage_errors_use_exit_two() {
        assert_eq!(
            run_args(&["error", "--method", "XYZ", "--n", "10"]).0,
            EXIT_USAGE
        );
        assert_eq!(
            run_args(&["order", "--method", "R", "--ns", "10,abc"]).0,
            EXIT_USAGE
        );
        assert_eq!(
            run_args(&["--bits", "64", "error", "--method", "R", "--n", "10"]).0,
            EXIT_USAGE
        );
        assert_eq!(run_args(&["frobnicate"]).0, EXIT_USAGE);
        // domain: fewer than three points
        assert_eq!(
            run_args(&["order", "--method", "R", "--ns", "10,100"]).0,
            EXIT_USAGE
        );
    }

    #[test]
    fn help_is_success() {
        let (code, out, _) = run_args(&["--help"]);
        assert_eq!(code, EXIT_OK);
        assert!(out.contains("table"));
    }

    #[test]
    fn error_command() {
        let (code, out, _) = run_args(&["error", "--method", "R", "--n", "10"]);
        assert_eq!(code, EXIT_OK);
        assert_eq!(out.trim(), "8.6e-6");
        let (_, out, _) = run_args(&["error", "--method", "C", "--n", "1000", "--digits", "3"]);
        assert_eq!(out.trim(), "4.17e-23");
    }
}
