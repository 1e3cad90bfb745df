//! The `iet` command-line tool: JSON documents, command wrappers over
//! `iet-core`, and the randomized verification runner.

pub mod doc;
pub mod verify;

use std::fs;
use std::path::{Path, PathBuf};

use clap::{Parser, Subcommand, ValueEnum};
use iet_core::factor::{
    balanced_rotations_factorization, conjugate_same_type_small, refine_swap,
    rotations_factorization, simplicity_witness, zero_saf_to_commutators, zero_saf_to_swaps,
    FactorError, Factorization,
};
use iet_core::iet::DEFAULT_MAX_ORDER;
use iet_core::{saf, Iet, OrderResult, SurdReal, TensorQQ};
use serde::de::DeserializeOwned;
use serde::Serialize;
use thiserror::Error;

use doc::{
    from_json, to_json, CertificateDocument, CheckableDocument, ConjugationDocument, DocError,
    IetDocument, SimplicityDocument, SwapDocument,
};
use verify::Suite;

pub const MAX_ORDER_ENV: &str = "IET_MAX_ORDER";

#[derive(Debug, Error)]
pub enum CliError {
    /// Report text, printed to stdout.
    #[error("verification failed")]
    VerifyFailed(String),
    #[error("{path}: {source}")]
    Read {
        path: PathBuf,
        source: std::io::Error,
    },
    #[error("{path}: {source}")]
    Write {
        path: PathBuf,
        source: std::io::Error,
    },
    #[error("{0}")]
    Parse(String),
    #[error("precondition violated: {0}")]
    Precondition(String),
    #[error("SAF invariant is nonzero: {0}")]
    NonzeroSaf(TensorQQ),
}

impl CliError {
    pub fn exit_code(&self) -> i32 {
        match self {
            CliError::VerifyFailed(_) => 1,
            CliError::Read { .. } | CliError::Write { .. } | CliError::Parse(_) => 2,
            CliError::Precondition(_) => 3,
            CliError::NonzeroSaf(_) => 4,
        }
    }
}

impl From<FactorError> for CliError {
    fn from(e: FactorError) -> Self {
        match e {
            FactorError::NonzeroSaf(t) => CliError::NonzeroSaf(t),
            FactorError::EpsTooLarge { eps0 } => {
                CliError::Precondition(format!("eps must be smaller than eps1 = {eps0}"))
            }
            other => CliError::Precondition(other.to_string()),
        }
    }
}

fn parse_error(path: &Path, e: DocError) -> CliError {
    CliError::Parse(format!("{}: {e}", path.display()))
}

#[derive(Debug, Parser)]
#[command(
    name = "iet",
    version,
    about = "Exact interval exchange transformations"
)]
pub struct Cli {
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum Mode {
    Rotations,
    Balanced,
    Swaps,
    Commutators,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Compose maps in written order: the last file acts first.
    Compose {
        #[arg(required = true, num_args = 2..)]
        inputs: Vec<PathBuf>,
        #[arg(short, long)]
        out: Option<PathBuf>,
    },
    /// Inverse map.
    Invert {
        input: PathBuf,
        #[arg(short, long)]
        out: Option<PathBuf>,
    },
    /// Re-emit a map in canonical form.
    Canon {
        input: PathBuf,
        #[arg(short, long)]
        out: Option<PathBuf>,
    },
    /// Evaluate a map at a point given as surd text.
    Apply { input: PathBuf, x: String },
    /// Finite order, infinite, or unknown within the bound.
    Order {
        input: PathBuf,
        /// Iteration bound; defaults to $IET_MAX_ORDER, then 4096.
        #[arg(long)]
        max: Option<u64>,
    },
    /// Print the SAF invariant as entries (d, d', q) of Σ q·√d⊗√d'.
    Saf { input: PathBuf },
    /// Factor a map and print the certificate.
    Factor {
        input: PathBuf,
        #[arg(long, value_enum)]
        mode: Mode,
        #[arg(short, long)]
        out: Option<PathBuf>,
    },
    /// Split a swap into swaps of type below eps.
    Refine {
        input: PathBuf,
        #[arg(long)]
        eps: String,
        #[arg(short, long)]
        out: Option<PathBuf>,
    },
    /// Conjugate one small swap to another of the same type.
    Conjugate {
        first: PathBuf,
        second: PathBuf,
        #[arg(short, long)]
        out: Option<PathBuf>,
    },
    /// Certificate chain showing a zero-SAF map normally generates every swap.
    Simplicity {
        input: PathBuf,
        #[arg(long)]
        eps: String,
        #[arg(short, long)]
        out: Option<PathBuf>,
    },
    /// Run the randomized suites, or re-check certificate documents.
    Verify {
        #[arg(long, default_value_t = 0)]
        seed: u64,
        #[arg(long, default_value_t = 100)]
        cases: u64,
        #[arg(long, value_enum, default_value_t = Suite::All)]
        suite: Suite,
        /// Re-verify these certificate documents instead of running suites.
        #[arg(long, num_args = 1..)]
        certificate: Vec<PathBuf>,
    },
}

/// What a successful command produces.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Output {
    pub text: String,
    pub out: Option<PathBuf>,
}

impl Output {
    fn print(text: String) -> Self {
        Output { text, out: None }
    }

    fn document<T: Serialize>(doc: &T, out: Option<PathBuf>) -> Self {
        Output {
            text: to_json(doc),
            out,
        }
    }

    /// Writes to the target file, or returns the text for stdout.
    pub fn emit(self) -> Result<Option<String>, CliError> {
        match self.out {
            Some(path) => fs::write(&path, &self.text)
                .map(|_| None)
                .map_err(|source| CliError::Write { path, source }),
            None => Ok(Some(self.text)),
        }
    }
}

fn read_doc<T: DeserializeOwned>(path: &Path) -> Result<T, CliError> {
    let text = fs::read_to_string(path).map_err(|source| CliError::Read {
        path: path.to_path_buf(),
        source,
    })?;
    from_json(&text).map_err(|e| parse_error(path, e))
}

fn read_iet(path: &Path) -> Result<Iet, CliError> {
    read_doc::<IetDocument>(path)?
        .to_iet()
        .map_err(|e| parse_error(path, e))
}

fn parse_surd(what: &str, text: &str) -> Result<SurdReal, CliError> {
    text.parse()
        .map_err(|e| CliError::Parse(format!("{what} {text:?}: {e}")))
}

/// `--max`, then `$IET_MAX_ORDER`, then the library default.
pub fn order_bound(flag: Option<u64>) -> Result<u64, CliError> {
    if let Some(n) = flag {
        return Ok(n);
    }
    match std::env::var(MAX_ORDER_ENV) {
        Ok(v) => v.trim().parse().map_err(|_| {
            CliError::Parse(format!(
                "{MAX_ORDER_ENV}={v:?} is not a nonnegative integer"
            ))
        }),
        Err(_) => Ok(DEFAULT_MAX_ORDER),
    }
}

fn certificate(cert: &Factorization, out: Option<PathBuf>) -> Result<Output, CliError> {
    let doc = CertificateDocument::from_factorization(cert);
    if !doc.verified {
        return Err(CliError::VerifyFailed(
            "certificate does not recompose to its target\n".to_string(),
        ));
    }
    Ok(Output::document(&doc, out))
}

#[derive(Serialize)]
struct SafDoc {
    entries: Vec<(u64, u64, String)>,
}

pub fn run(cli: Cli) -> Result<Output, CliError> {
    match cli.command {
        Command::Compose { inputs, out } => {
            let maps = inputs
                .iter()
                .map(|p| read_iet(p))
                .collect::<Result<Vec<_>, _>>()?;
            let mut acc = maps[0].clone();
            for g in &maps[1..] {
                acc = acc
                    .compose(g)
                    .map_err(|e| CliError::Precondition(e.to_string()))?;
            }
            Ok(Output::document(&IetDocument::from_iet(&acc), out))
        }
        Command::Invert { input, out } => {
            let f = read_iet(&input)?;
            Ok(Output::document(&IetDocument::from_iet(&f.inverse()), out))
        }
        Command::Canon { input, out } => {
            let f = read_iet(&input)?;
            Ok(Output::document(&IetDocument::from_iet(&f), out))
        }
        Command::Apply { input, x } => {
            let f = read_iet(&input)?;
            let x = parse_surd("point", &x)?;
            let y = f
                .apply(&x)
                .map_err(|e| CliError::Precondition(e.to_string()))?;
            Ok(Output::print(format!("{y}\n")))
        }
        Command::Order { input, max } => {
            let bound = order_bound(max)?;
            let f = read_iet(&input)?;
            let text = match f.order(bound) {
                OrderResult::Finite(n) => format!("finite {n}"),
                OrderResult::Infinite => "infinite".to_string(),
                OrderResult::BoundExceeded(n) => {
                    format!("unknown: no return within {n} iterations")
                }
            };
            Ok(Output::print(text + "\n"))
        }
        Command::Saf { input } => {
            let f = read_iet(&input)?;
            let entries = saf(&f)
                .entries()
                .map(|(&(d, e), q)| (d, e, q.to_string()))
                .collect();
            Ok(Output::print(to_json(&SafDoc { entries })))
        }
        Command::Factor { input, mode, out } => {
            let f = read_iet(&input)?;
            let cert = match mode {
                Mode::Rotations => rotations_factorization(&f),
                Mode::Balanced => balanced_rotations_factorization(&f)?,
                Mode::Swaps => zero_saf_to_swaps(&f)?,
                Mode::Commutators => zero_saf_to_commutators(&f)?,
            };
            certificate(&cert, out)
        }
        Command::Refine { input, eps, out } => {
            let (base, s) = read_doc::<SwapDocument>(&input)?
                .to_swap()
                .map_err(|e| parse_error(&input, e))?;
            let eps = parse_surd("eps", &eps)?;
            certificate(&refine_swap(&s, &eps, &base)?, out)
        }
        Command::Conjugate { first, second, out } => {
            let (base, s1) = read_doc::<SwapDocument>(&first)?
                .to_swap()
                .map_err(|e| parse_error(&first, e))?;
            let (base2, s2) = read_doc::<SwapDocument>(&second)?
                .to_swap()
                .map_err(|e| parse_error(&second, e))?;
            if base != base2 {
                return Err(CliError::Precondition(
                    "swaps must share a base interval".to_string(),
                ));
            }
            let doc = ConjugationDocument::new(&conjugate_same_type_small(&s1, &s2, &base)?, &base);
            if !doc.verified {
                return Err(CliError::VerifyFailed(
                    "conjugation does not verify\n".to_string(),
                ));
            }
            Ok(Output::document(&doc, out))
        }
        Command::Simplicity { input, eps, out } => {
            let f = read_iet(&input)?;
            let eps = parse_surd("eps", &eps)?;
            let doc = SimplicityDocument::new(&simplicity_witness(&f, &eps)?);
            if !doc.verified {
                return Err(CliError::VerifyFailed(
                    "simplicity chain does not verify\n".to_string(),
                ));
            }
            Ok(Output::document(&doc, out))
        }
        Command::Verify {
            seed,
            cases,
            suite,
            certificate,
        } => {
            if !certificate.is_empty() {
                return check_documents(&certificate);
            }
            let report = verify::run(suite, seed, cases);
            let mut text = report.to_string();
            for r in &report.reproducers {
                text.push_str(&to_json(r));
            }
            if report.ok() {
                Ok(Output::print(text))
            } else {
                Err(CliError::VerifyFailed(text))
            }
        }
    }
}

fn check_documents(paths: &[PathBuf]) -> Result<Output, CliError> {
    let mut text = String::new();
    let mut failed = 0;
    for path in paths {
        let doc: CheckableDocument = read_doc(path)?;
        let ok = doc.check().map_err(|e| parse_error(path, e))?;
        if !ok {
            failed += 1;
        }
        let verdict = if ok { "verified" } else { "FAILED" };
        text.push_str(&format!("{}: {verdict}\n", path.display()));
    }
    if failed == 0 {
        Ok(Output::print(text))
    } else {
        Err(CliError::VerifyFailed(text))
    }
}
