//! Command-line front end.
//!
//! Exit codes: 0 ok, 1 verification failure, 2 usage, 3 undefined moduli
//! space, 4 I/O. Results go to standard output, diagnostics to standard error.

use std::ffi::OsString;
use std::io::{self, Write};
use std::path::{Path, PathBuf};

use clap::{Args, Parser, Subcommand};
use rayon::prelude::*;
use serde::Serialize;

use crate::brackets::{
    canonical_key, eval_bracket, BracketError, BracketKey, CanonicalKey, MemoCache,
};
use crate::cache::{cache_load, cache_store, CacheError};
use crate::oracle::{
    verify_bases, verify_confluence, verify_corollary, verify_strata, VerificationReport,
};
use crate::Rational;

pub const EXIT_OK: i32 = 0;
pub const EXIT_VERIFY_FAILED: i32 = 1;
pub const EXIT_USAGE: i32 = 2;
pub const EXIT_UNDEFINED: i32 = 3;
pub const EXIT_IO: i32 = 4;

#[derive(Debug, Parser)]
#[command(
    name = "tautrec",
    version,
    about = "Exact genus-one tautological brackets"
)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Debug, Subcommand)]
enum Command {
    /// Evaluate a single bracket.
    Eval(EvalArgs),
    /// Print every nonvanishing bracket up to a dimension as CSV.
    Table(TableArgs),
    /// Run a verification suite and print its report.
    Verify {
        #[command(subcommand)]
        suite: Suite,
    },
}

#[derive(Debug, Args)]
struct CacheArg {
    /// JSON-lines result cache, read before and written after evaluation.
    #[arg(long, env = "TAUTREC_CACHE")]
    cache: Option<PathBuf>,
}

#[derive(Debug, Args)]
struct EvalArgs {
    /// Number of I-points.
    #[arg(long = "i-points")]
    i_points: u32,
    /// Exponent of the lambda/psi class at the I-points.
    #[arg(long = "c-tilde", allow_hyphen_values = true)]
    c_tilde: i64,
    /// Comma-separated J-point exponents; may be empty.
    #[arg(long, num_args = 0..=1, default_value = "", default_missing_value = "",
          allow_hyphen_values = true, value_parser = parse_exps)]
    psi: Exps,
    #[command(flatten)]
    cache: CacheArg,
}

#[derive(Debug, Args)]
struct TableArgs {
    #[arg(long = "max-dim")]
    max_dim: u32,
    #[command(flatten)]
    cache: CacheArg,
}

#[derive(Debug, Subcommand)]
enum Suite {
    Corollary {
        #[arg(long = "max-i", default_value_t = 6, value_parser = clap::value_parser!(u32).range(1..))]
        max_i: u32,
        #[arg(long = "max-j", default_value_t = 6)]
        max_j: u32,
    },
    Confluence {
        #[arg(long, default_value_t = 200)]
        samples: usize,
        #[arg(long, default_value_t = 42)]
        seed: u64,
        #[arg(long = "max-dim", default_value_t = 10, value_parser = clap::value_parser!(u32).range(1..))]
        max_dim: u32,
    },
    Strata {
        #[arg(long = "max-size", default_value_t = 6)]
        max_size: u32,
    },
    Bases {
        #[arg(long, default_value_t = 8)]
        limit: u32,
    },
}

#[derive(Clone, Debug)]
struct Exps(Vec<i64>);

fn parse_exps(s: &str) -> Result<Exps, String> {
    if s.trim().is_empty() {
        return Ok(Exps(Vec::new()));
    }
    s.split(',')
        .map(|t| t.trim().parse::<i64>().map_err(|e| format!("{t:?}: {e}")))
        .collect::<Result<_, _>>()
        .map(Exps)
}

#[derive(Serialize)]
struct EvalOutput {
    m: u32,
    ctilde: i64,
    exps: Vec<i64>,
    num: String,
    den: String,
}

#[derive(Serialize)]
struct TableRow<'a> {
    m: u32,
    ctilde: u32,
    exps: String,
    num: &'a str,
    den: &'a str,
}

/// Failure of a subcommand after argument parsing.
#[derive(Debug)]
enum Fail {
    Undefined(BracketError),
    Io(String),
}

impl From<CacheError> for Fail {
    fn from(e: CacheError) -> Self {
        Fail::Io(e.to_string())
    }
}

impl From<io::Error> for Fail {
    fn from(e: io::Error) -> Self {
        Fail::Io(e.to_string())
    }
}

pub fn main() -> i32 {
    let stdout = io::stdout();
    let mut out = stdout.lock();
    run(std::env::args_os(), &mut out)
}

/// Parses `args` (program name first), runs the command and returns the exit
/// code. Standard output is written to `out`.
pub fn run<I, T>(args: I, out: &mut dyn Write) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(cli) => cli,
        Err(e) => {
            let _ = e.print();
            return if e.use_stderr() { EXIT_USAGE } else { EXIT_OK };
        }
    };
    let result = match cli.command {
        Command::Eval(a) => cmd_eval(&a, out),
        Command::Table(a) => cmd_table(&a, out),
        Command::Verify { suite } => cmd_verify(&suite, out),
    };
    match result {
        Ok(code) => code,
        Err(Fail::Undefined(e)) => {
            eprintln!("tautrec: {e}");
            EXIT_UNDEFINED
        }
        Err(Fail::Io(msg)) => {
            eprintln!("tautrec: {msg}");
            EXIT_IO
        }
    }
}

fn open_cache(path: Option<&Path>) -> Result<MemoCache, Fail> {
    match path {
        Some(p) if p.exists() => Ok(cache_load(p)?),
        _ => Ok(MemoCache::new()),
    }
}

fn save_cache(path: Option<&Path>, cache: &MemoCache) -> Result<(), Fail> {
    if let Some(p) = path {
        cache_store(p, cache)?;
    }
    Ok(())
}

fn cmd_eval(a: &EvalArgs, out: &mut dyn Write) -> Result<i32, Fail> {
    let path = a.cache.cache.as_deref();
    let key = canonical_key(a.i_points, a.c_tilde, &a.psi.0).map_err(Fail::Undefined)?;
    let cache = open_cache(path)?;
    let value = match &key {
        CanonicalKey::Key(k) => eval_bracket(k, &cache),
        CanonicalKey::Zero => Rational::from_integer(0.into()),
    };
    save_cache(path, &cache)?;

    let mut exps = a.psi.0.clone();
    exps.sort_unstable_by(|x, y| y.cmp(x));
    let shown = EvalOutput {
        m: a.i_points,
        ctilde: a.c_tilde,
        exps,
        num: value.numer().to_string(),
        den: value.denom().to_string(),
    };
    serde_json::to_writer(&mut *out, &shown).map_err(io::Error::from)?;
    writeln!(out)?;
    Ok(EXIT_OK)
}

/// Every gate-passing key with `1 <= dim <= max_dim`, ordered by `m`, then
/// `n`, then the descending exponent list compared lexicographically.
pub fn table_keys(max_dim: u32) -> Vec<BracketKey> {
    fn descending(
        len: usize,
        cap: u32,
        budget: u32,
        prefix: &mut Vec<u32>,
        out: &mut Vec<Vec<u32>>,
    ) {
        if prefix.len() == len {
            out.push(prefix.clone());
            return;
        }
        for v in 0..=cap.min(budget) {
            prefix.push(v);
            descending(len, v, budget - v, prefix, out);
            prefix.pop();
        }
    }

    let mut keys = Vec::new();
    for m in 0..=max_dim {
        for n in 0..=max_dim - m {
            let dim = m + n;
            if dim == 0 {
                continue;
            }
            let mut lists = Vec::new();
            descending(n as usize, dim, dim, &mut Vec::new(), &mut lists);
            lists.sort();
            for exps in lists {
                let c_tilde = dim - exps.iter().sum::<u32>();
                keys.push(BracketKey::new(m, c_tilde, exps).expect("dim >= 1"));
            }
        }
    }
    keys
}

fn cmd_table(a: &TableArgs, out: &mut dyn Write) -> Result<i32, Fail> {
    let path = a.cache.cache.as_deref();
    let cache = open_cache(path)?;
    let keys = table_keys(a.max_dim);
    let values: Vec<Rational> = keys.par_iter().map(|k| eval_bracket(k, &cache)).collect();
    save_cache(path, &cache)?;

    let mut w = csv::Writer::from_writer(out);
    for (key, value) in keys.iter().zip(&values) {
        let (num, den) = (value.numer().to_string(), value.denom().to_string());
        w.serialize(TableRow {
            m: key.m,
            ctilde: key.c_tilde,
            exps: join(key.exps.as_slice()),
            num: &num,
            den: &den,
        })
        .map_err(|e| Fail::Io(e.to_string()))?;
    }
    w.flush()?;
    Ok(EXIT_OK)
}

fn join(exps: &[u32]) -> String {
    exps.iter()
        .map(u32::to_string)
        .collect::<Vec<_>>()
        .join(",")
}

fn cmd_verify(suite: &Suite, out: &mut dyn Write) -> Result<i32, Fail> {
    let report: VerificationReport = match *suite {
        Suite::Corollary { max_i, max_j } => verify_corollary(max_i, max_j),
        Suite::Confluence {
            samples,
            seed,
            max_dim,
        } => verify_confluence(samples, seed, max_dim),
        Suite::Strata { max_size } => verify_strata(max_size),
        Suite::Bases { limit } => verify_bases(limit),
    };
    writeln!(out, "{}", report.to_json())?;
    if report.passed() {
        return Ok(EXIT_OK);
    }
    for f in &report.failures {
        eprintln!(
            "FAIL {}: expected {}, got {}",
            f.input, f.expected, f.actual
        );
    }
    Ok(EXIT_VERIFY_FAILED)
}
