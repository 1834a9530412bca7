//! Command-line front end: argument parsing, dispatch and rendering.

pub mod render;
pub mod table;

use std::path::PathBuf;

use clap::{Parser, Subcommand};
use qform_core::{
    excluded_squareclasses, family_lr, minimal_cover, regularity_report, DiagonalForm,
    ProgressionUnion,
};
use serde::Serialize;

pub const DEFAULT_BOUND: u64 = 100_000;
/// Default bound for `family` with `r >= 3`.
pub const DEFAULT_FAMILY_BOUND_LARGE: u64 = 1_000_000;

#[derive(Debug, Parser)]
#[command(
    name = "qform",
    version,
    about = "Excluded sets of diagonal quaternary forms"
)]
pub struct Cli {
    /// Emit JSON instead of text.
    #[arg(long, global = true)]
    pub json: bool,
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Genus excluded set, minimal cover and bounded regularity check.
    Analyze {
        /// Four coefficients, e.g. "1,3,9,9".
        coeffs: String,
        #[arg(long, default_value_t = DEFAULT_BOUND)]
        bound: u64,
    },
    /// Audit a table of forms claimed to miss exactly one progression.
    Table {
        /// Fixture path; the bundled table when omitted.
        fixture: Option<PathBuf>,
        #[arg(long, default_value_t = DEFAULT_BOUND)]
        bound: u64,
    },
    /// Minimal number of admissible progressions with the given union.
    Cover {
        /// Union as "a1,m1;a2,m2;..."; empty for the empty union.
        #[arg(default_value = "")]
        union: String,
    },
    /// Locally excluded square classes at one prime.
    Local {
        coeffs: String,
        #[arg(short = 'p', long = "prime")]
        prime: u64,
    },
    /// The family <1,3,9,9^r>, 1 <= r <= 4.
    Family {
        r: u32,
        /// Defaults to 100000 for r <= 2 and 1000000 for r >= 3.
        #[arg(long)]
        bound: Option<u64>,
    },
}

/// Reasons the tool stops without a report.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Failure {
    /// Bad input; exit status 1.
    Usage(String),
    /// An invariant of the library failed; exit status 2.
    Internal(String),
}

impl Failure {
    pub fn exit_code(&self) -> i32 {
        match self {
            Failure::Usage(_) => 1,
            Failure::Internal(_) => 2,
        }
    }

    pub fn message(&self) -> &str {
        match self {
            Failure::Usage(m) | Failure::Internal(m) => m,
        }
    }
}

impl From<qform_core::Error> for Failure {
    fn from(e: qform_core::Error) -> Self {
        match e {
            qform_core::Error::Invariant(_) => Failure::Internal(e.to_string()),
            _ => Failure::Usage(e.to_string()),
        }
    }
}

fn parse_quaternary(coeffs: &str) -> Result<DiagonalForm, Failure> {
    let form: DiagonalForm = coeffs.parse()?;
    if form.rank() != 4 {
        return Err(qform_core::Error::RankNotFour(form.rank()).into());
    }
    if !form.has_unit_scale() {
        return Err(qform_core::Error::ScaleNotOne(form.content()).into());
    }
    Ok(form)
}

/// Pretty JSON with keys in sorted order, integers only.
pub fn to_canonical_json<T: Serialize>(value: &T) -> String {
    let v = serde_json::to_value(value).expect("reports serialize");
    let mut s = serde_json::to_string_pretty(&v).expect("values serialize");
    s.push('\n');
    s
}

/// Runs one command and returns what should be printed on stdout.
pub fn run(cli: &Cli) -> Result<String, Failure> {
    let json = cli.json;
    match &cli.command {
        Command::Analyze { coeffs, bound } => {
            let form = parse_quaternary(coeffs)?;
            let report = regularity_report(&form, *bound)?;
            Ok(if json {
                to_canonical_json(&report)
            } else {
                render::regularity(&report)
            })
        }
        Command::Table { fixture, bound } => {
            let rows = table::load_table(fixture.as_deref())?;
            let report = table::audit(&rows, *bound)?;
            Ok(if json {
                to_canonical_json(&report)
            } else {
                render::audit(&report)
            })
        }
        Command::Cover { union } => {
            let union: ProgressionUnion = union.parse()?;
            let result = minimal_cover(&union)?;
            Ok(if json {
                to_canonical_json(&result)
            } else {
                render::cover(&union, &result)
            })
        }
        Command::Local { coeffs, prime } => {
            let form = parse_quaternary(coeffs)?;
            let report = excluded_squareclasses(&form, *prime)?;
            let trace = report.excluded_union()?;
            Ok(if json {
                #[derive(Serialize)]
                struct LocalOut<'a> {
                    report: &'a qform_core::LocalReport,
                    trace: &'a ProgressionUnion,
                }
                to_canonical_json(&LocalOut {
                    report: &report,
                    trace: &trace,
                })
            } else {
                render::local(&report)?
            })
        }
        Command::Family { r, bound } => {
            let bound = bound.unwrap_or(if *r >= 3 {
                DEFAULT_FAMILY_BOUND_LARGE
            } else {
                DEFAULT_BOUND
            });
            let report = family_lr(*r, bound)?;
            Ok(if json {
                to_canonical_json(&report)
            } else {
                render::regularity(&report)
            })
        }
    }
}

/// Parses `args` (including the program name) and runs; clap's own usage
/// errors map to exit status 1, `--help` and `--version` to 0.
pub fn main_with_args<I, T>(args: I) -> (i32, String, String)
where
    I: IntoIterator<Item = T>,
    T: Into<std::ffi::OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(cli) => cli,
        Err(e) => {
            let code = if e.use_stderr() { 1 } else { 0 };
            let text = e.render().to_string();
            return if code == 0 {
                (0, text, String::new())
            } else {
                (1, String::new(), text)
            };
        }
    };
    match run(&cli) {
        Ok(out) => (0, out, String::new()),
        Err(f) => (
            f.exit_code(),
            String::new(),
            format!("error: {}\n", f.message()),
        ),
    }
}
