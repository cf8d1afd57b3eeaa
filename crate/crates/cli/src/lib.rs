//! Command-line front end: `cfrac`, `strata`, `enumerate`, `bundle` and `verify`.
//!
//! [`dispatch`] runs one command line against a writer and returns the exit
//! code: `0` on success, `1` when a verification fails, `2` on a usage error.
//! Every command is deterministic: the same arguments and seed give
//! byte-identical output.
//!
//! ```
//! let mut out = Vec::new();
//! let code = sklyanin_cli::dispatch(["sklyanin", "cfrac", "17/2"], &mut out, &mut std::io::sink());
//! assert_eq!(code, 0);
//! assert_eq!(String::from_utf8(out).unwrap(), "{\"terms\":[9,2]}\n");
//! ```

use std::ffi::OsString;
use std::io::Write;

use clap::{Args, Parser, Subcommand, ValueEnum};
use elliptic_sklyanin::bundles::{self, BundleSum, CurvePoint, IndecType};
use elliptic_sklyanin::exact::{to_cfrac, Slope};
use elliptic_sklyanin::strata::{admissible_sequences, reachable_poset, to_dot, to_json, SlopeSeq};
use elliptic_sklyanin::Error;
use num_bigint::BigInt;
use serde_json::{json, Value};

mod verify;

pub use verify::{run_check, CaseResult, Check, Report, RunConfig};

pub const EXIT_OK: i32 = 0;
pub const EXIT_FAILED: i32 = 1;
pub const EXIT_USAGE: i32 = 2;

#[derive(Parser, Debug)]
#[command(name = "sklyanin", version, about = "Strata of bundles on elliptic curves and checks of Sklyanin algebras")]
struct Cli {
    /// Write output to this file instead of standard output.
    #[arg(long, global = true)]
    output: Option<std::path::PathBuf>,
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand, Debug)]
enum Command {
    /// Negative continued fraction of a slope greater than 1.
    Cfrac { slope: String },
    /// Degeneration poset of a slope sequence.
    Strata(StrataArgs),
    /// All sequences below `{0, n/k}` from the inequality system.
    Enumerate {
        #[arg(long)]
        degree: u64,
        #[arg(long)]
        rank: u64,
    },
    /// Bundle calculus on indecomposable types `n,k` or `n,k@x,y`.
    Bundle {
        #[command(subcommand)]
        op: BundleOp,
    },
    /// Numerical checks of the Sklyanin algebras and shuffle realizations.
    Verify(VerifyArgs),
}

#[derive(Args, Debug)]
#[command(group = clap::ArgGroup::new("source").required(true))]
struct StrataArgs {
    /// Two slopes `τ1 τ2`.
    #[arg(long, num_args = 2, value_names = ["S1", "S2"], group = "source", allow_hyphen_values = true)]
    pair: Option<Vec<String>>,
    /// Comma-separated slopes.
    #[arg(long, group = "source", allow_hyphen_values = true)]
    seq: Option<String>,
    #[arg(long, value_enum, default_value_t = Format::Json)]
    format: Format,
}

#[derive(ValueEnum, Clone, Copy, Debug, PartialEq, Eq)]
enum Format {
    Dot,
    Json,
}

#[derive(Subcommand, Debug)]
enum BundleOp {
    /// `dim Hom(a, b)`.
    Hom { a: String, b: String },
    /// `dim Ext^i(a, b)`.
    Ext {
        #[arg(long, default_value_t = 1)]
        i: u8,
        a: String,
        b: String,
    },
    /// Dual type.
    Dual { a: String },
    /// Fourier–Mukai image (positive degree only).
    Fm { a: String },
    /// Semistability and stability of a direct sum.
    Stable {
        #[arg(required = true)]
        components: Vec<String>,
    },
}

#[derive(Args, Debug)]
struct VerifyArgs {
    #[arg(value_enum)]
    check: Check,
    #[arg(long)]
    n: Option<usize>,
    #[arg(long)]
    k: Option<usize>,
    #[arg(long, default_value_t = 0)]
    seed: u64,
    /// Modular parameter as `re,im`.
    #[arg(long, default_value = "0,1", allow_hyphen_values = true)]
    omega: String,
    /// Finite-difference step for `poisson` (default `1e-4`).
    #[arg(long)]
    h: Option<f64>,
    /// Random evaluation points (or τ draws for `flatness`).
    #[arg(long)]
    samples: Option<usize>,
}

/// Runs one command line (including the program name) and returns the exit code.
///
/// Results go to `out` (or to `--output`); diagnostics and usage text go to `err`.
pub fn dispatch<I, T>(argv: I, out: &mut dyn Write, err: &mut dyn Write) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let cli = match Cli::try_parse_from(argv) {
        Ok(cli) => cli,
        Err(e) => {
            let code = if e.use_stderr() { EXIT_USAGE } else { EXIT_OK };
            let target: &mut dyn Write = if e.use_stderr() { err } else { out };
            let _ = write!(target, "{}", e.render());
            return code;
        }
    };
    let (text, code) = match run(&cli.command) {
        Ok(v) => v,
        Err(e) => {
            let _ = writeln!(err, "error: {e}");
            return exit_code_for(&e);
        }
    };
    let written = match &cli.output {
        Some(path) => std::fs::write(path, &text).map_err(|e| e.to_string()),
        None => out.write_all(text.as_bytes()).map_err(|e| e.to_string()),
    };
    if let Err(e) = written {
        let _ = writeln!(err, "error: cannot write output: {e}");
        return EXIT_FAILED;
    }
    code
}

fn exit_code_for(e: &Error) -> i32 {
    match e {
        Error::Parse(_) | Error::Domain(_) | Error::ZeroRank | Error::Unspecified(_) => EXIT_USAGE,
        _ => EXIT_FAILED,
    }
}

fn line(v: Value) -> String {
    format!("{v}\n")
}

fn run(cmd: &Command) -> elliptic_sklyanin::Result<(String, i32)> {
    match cmd {
        Command::Cfrac { slope } => {
            let s: Slope = slope.parse()?;
            let terms: Vec<Value> = to_cfrac(&s)?.terms().iter().map(bigint_json).collect();
            Ok((line(json!({ "terms": terms })), EXIT_OK))
        }
        Command::Strata(args) => {
            let root = match (&args.pair, &args.seq) {
                (Some(p), None) => SlopeSeq::new(vec![p[0].parse()?, p[1].parse()?])?,
                (None, Some(s)) => s.parse()?,
                _ => return Err(Error::Parse("give exactly one of --pair and --seq".into())),
            };
            let poset = reachable_poset(&root)?;
            let text = match args.format {
                Format::Dot => to_dot(&poset),
                Format::Json => format!("{}\n", to_json(&poset)),
            };
            Ok((text, EXIT_OK))
        }
        Command::Enumerate { degree, rank } => {
            let found = admissible_sequences(*degree, *rank)?;
            let seqs: Vec<&SlopeSeq> = found.iter().collect();
            Ok((line(json!({ "degree": degree, "rank": rank, "sequences": seqs })), EXIT_OK))
        }
        Command::Bundle { op } => Ok((line(bundle(op)?), EXIT_OK)),
        Command::Verify(args) => {
            let cfg = RunConfig {
                seed: args.seed,
                omega: parse_omega(&args.omega)?,
                n: args.n,
                k: args.k,
                h: args.h,
                samples: args.samples,
            };
            let report = run_check(args.check, &cfg)?;
            let code = if report.pass { EXIT_OK } else { EXIT_FAILED };
            let text = serde_json::to_string_pretty(&report).expect("report serializes");
            Ok((format!("{text}\n"), code))
        }
    }
}

fn bigint_json(b: &BigInt) -> Value {
    match i64::try_from(b) {
        Ok(v) => json!(v),
        Err(_) => json!(b.to_string()),
    }
}

/// Parses `n,k` or `n,k@x,y`.
fn parse_type(s: &str) -> elliptic_sklyanin::Result<IndecType> {
    let (nk, point) = match s.split_once('@') {
        Some((a, b)) => (a, b.parse::<CurvePoint>()?),
        None => (s, CurvePoint::origin()),
    };
    let (n, k) = nk.split_once(',').ok_or_else(|| Error::Parse(format!("bundle type must be n,k: {s:?}")))?;
    let int = |t: &str| t.trim().parse::<i64>().map_err(|_| Error::Parse(format!("not an integer: {t:?}")));
    IndecType::new(int(n)?, int(k)?, point)
}

fn parse_omega(s: &str) -> elliptic_sklyanin::Result<num_complex::Complex64> {
    let (re, im) = s.split_once(',').ok_or_else(|| Error::Parse(format!("omega must be re,im: {s:?}")))?;
    let f = |t: &str| t.trim().parse::<f64>().map_err(|_| Error::Parse(format!("not a number: {t:?}")));
    Ok(num_complex::Complex64::new(f(re)?, f(im)?))
}

fn bundle(op: &BundleOp) -> elliptic_sklyanin::Result<Value> {
    Ok(match op {
        BundleOp::Hom { a, b } => {
            let (a, b) = (parse_type(a)?, parse_type(b)?);
            json!({ "a": a, "b": b, "hom": bundles::hom_dim(&a, &b)? })
        }
        BundleOp::Ext { i, a, b } => {
            let (a, b) = (parse_type(a)?, parse_type(b)?);
            json!({ "a": a, "b": b, "i": i, "ext": bundles::ext_dim(*i, &a, &b)? })
        }
        BundleOp::Dual { a } => {
            let a = parse_type(a)?;
            json!({ "a": a, "dual": bundles::dual(&a) })
        }
        BundleOp::Fm { a } => {
            let a = parse_type(a)?;
            json!({ "a": a, "fm": bundles::fourier_mukai(&a)? })
        }
        BundleOp::Stable { components } => {
            let sum = BundleSum::new(components.iter().map(|c| parse_type(c)).collect::<Result<_, _>>()?)?;
            json!({
                "sum": sum,
                "semistable": bundles::is_semistable(&sum),
                "stable": bundles::is_stable(&sum),
            })
        }
    })
}

#[cfg(doctest)]
#[doc = include_str!("../../../book/src/cli.md")]
mod book_cli {}
