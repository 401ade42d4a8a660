//! `orbichar`: command-line driver.
//!
//! One JSON document is read from `--input` (or standard input) and one JSON
//! document is written to standard output. With `--format pretty` a
//! human-readable summary also goes to standard error.
//!
//! Exit status: 0 on success, 1 when a checked identity fails, 2 on bad input.

mod commands;

use std::io::{Read, Write};
use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Parser, Subcommand, ValueEnum};
use orbichar::{Error, Limits};

#[derive(Parser, Debug)]
#[command(name = "orbichar", version, about = "Higher-order orbifold Euler characteristics and power structures")]
pub struct Cli {
    #[command(subcommand)]
    pub command: Command,

    /// Input document (JSON); standard input when omitted.
    #[arg(long, global = true)]
    pub input: Option<PathBuf>,

    /// Order of the Euler characteristic.
    #[arg(long, global = true)]
    pub k: Option<usize>,

    /// Truncation order of series.
    #[arg(long = "N", global = true)]
    pub n: Option<usize>,

    /// Weights as a comma-separated list of fractions, e.g. `1,1/2`.
    #[arg(long, global = true, allow_hyphen_values = true)]
    pub phi: Option<String>,

    #[arg(long, global = true, value_enum, default_value_t = Format::Json)]
    pub format: Format,

    /// Largest group any construction may produce (overrides
    /// ORBICHAR_MAX_GROUP).
    #[arg(long, global = true)]
    pub max_group_order: Option<usize>,

    /// Largest accepted `--N`.
    #[arg(long, global = true, default_value_t = 8)]
    pub max_n: usize,

    /// Seed for randomized suites.
    #[arg(long, global = true)]
    pub seed: Option<u64>,
}

#[derive(Copy, Clone, Debug, PartialEq, Eq, ValueEnum)]
pub enum Format {
    Json,
    Pretty,
}

#[derive(Subcommand, Debug, Clone, Copy, PartialEq, Eq)]
pub enum Command {
    /// chi^(k) of a G-set.
    Chi {
        #[arg(long, value_enum, default_value_t = Definition::Both)]
        definition: Definition,
    },
    /// Normal form of a G-set (or bundle) class.
    Class,
    /// Kapranov zeta series of a G-set (or bundle).
    ZetaSeries,
    /// Configuration series of a G-set (or bundle).
    LambdaSeries,
    /// Geometric power `{"series":[...], "exponent": ...}` of G-sets.
    Power,
    /// Generalized Euler characteristic of a bundle.
    Generalized,
    /// Macdonald-type identity for chi^(k) of wreath powers.
    VerifyTamanoi,
    /// Macdonald-type identity for wreath powers of a bundle.
    VerifyWreathBundle,
    /// Power-structure axioms on random series.
    VerifyPowerAxioms {
        #[arg(long, default_value_t = 100)]
        trials: usize,
    },
    /// Induction invariance `{"set": ..., "into": <group>}`.
    VerifyInduction,
    /// The t^2 classes separating the zeta and configuration powers.
    Divergence,
    /// Every acceptance check.
    Selftest {
        /// Negative control: replace the wreath action by a wrong one.
        #[arg(long, hide = true)]
        corrupt_wreath_convention: bool,
    },
}

#[derive(Copy, Clone, Debug, PartialEq, Eq, ValueEnum)]
pub enum Definition {
    Tuples,
    Recursive,
    Both,
}

impl Command {
    pub fn name(self) -> &'static str {
        match self {
            Command::Chi { .. } => "chi",
            Command::Class => "class",
            Command::ZetaSeries => "zeta-series",
            Command::LambdaSeries => "lambda-series",
            Command::Power => "power",
            Command::Generalized => "generalized",
            Command::VerifyTamanoi => "verify-tamanoi",
            Command::VerifyWreathBundle => "verify-wreath-bundle",
            Command::VerifyPowerAxioms { .. } => "verify-power-axioms",
            Command::VerifyInduction => "verify-induction",
            Command::Divergence => "divergence",
            Command::Selftest { .. } => "selftest",
        }
    }

    fn needs_input(self) -> bool {
        !matches!(self, Command::VerifyPowerAxioms { .. } | Command::Selftest { .. })
    }
}

/// Result of one command: the machine document, the human summary and
/// whether the checked identities held (`None` when nothing was checked).
pub struct Report {
    pub json: serde_json::Value,
    pub human: String,
    pub passed: Option<bool>,
}

fn limits(cli: &Cli) -> Result<Limits, Error> {
    let mut l = Limits::default();
    if let Ok(v) = std::env::var("ORBICHAR_MAX_GROUP") {
        let n = v.trim().parse().map_err(|_| Error::Descriptor {
            field: "ORBICHAR_MAX_GROUP".into(),
            message: format!("{v:?} is not a positive integer"),
        })?;
        l = l.with_max_group_order(n);
    }
    if let Some(n) = cli.max_group_order {
        l = l.with_max_group_order(n);
    }
    Ok(l)
}

fn read_input(cli: &Cli) -> Result<Option<serde_json::Value>, Error> {
    if !cli.command.needs_input() {
        return Ok(None);
    }
    let text = match &cli.input {
        Some(p) => std::fs::read_to_string(p)
            .map_err(|e| Error::Descriptor { field: "--input".into(), message: format!("{}: {e}", p.display()) })?,
        None => {
            let mut s = String::new();
            std::io::stdin()
                .read_to_string(&mut s)
                .map_err(|e| Error::Descriptor { field: "stdin".into(), message: e.to_string() })?;
            s
        }
    };
    orbichar::descriptor::from_json(&text).map(Some)
}

fn run(cli: &Cli) -> Result<Report, Error> {
    limits(cli)?.install();
    if let Some(k) = cli.k {
        if k > 4 {
            return Err(Error::Descriptor { field: "--k".into(), message: "at most 4".into() });
        }
    }
    if let Some(n) = cli.n {
        if n > cli.max_n {
            return Err(Error::Descriptor {
                field: "--N".into(),
                message: format!("{n} exceeds the maximum {}; reduce n/N or raise --max-n", cli.max_n),
            });
        }
    }
    let input = read_input(cli)?;
    commands::dispatch(cli, input)
}

/// Writes the machine document; a closed stdout is not an error.
fn emit(doc: &serde_json::Value) {
    let mut out = std::io::stdout().lock();
    let _ = serde_json::to_writer_pretty(&mut out, doc).map_err(std::io::Error::from).and_then(|()| writeln!(out));
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match run(&cli) {
        Ok(report) => {
            emit(&report.json);
            if cli.format == Format::Pretty {
                let _ = std::io::stderr().write_all(report.human.as_bytes());
            }
            match report.passed {
                Some(false) => ExitCode::from(1),
                _ => ExitCode::SUCCESS,
            }
        }
        Err(e) => {
            let doc = serde_json::json!({ "command": cli.command.name(), "error": e.to_string() });
            emit(&doc);
            let _ = writeln!(std::io::stderr(), "error: {e}");
            ExitCode::from(2)
        }
    }
}
