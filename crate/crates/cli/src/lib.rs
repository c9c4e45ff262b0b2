//! The `sphtrop` batch front-end.
//!
//! [`execute`] runs one command line against a lazily read standard input
//! and returns what would be printed, so the binary, scripts and tests share
//! one code path.

pub mod commands;
pub mod context;
pub mod doc;
pub mod plot;

use std::path::PathBuf;

use clap::{Parser, Subcommand, ValueEnum};
use sphtrop::registry::DEFAULT_RANGE;

#[derive(Parser, Debug)]
#[command(name = "sphtrop", version, about = "Spherical tropicalization toolkit")]
pub struct Cli {
    /// Output format; `examples` defaults to json, everything else to text.
    #[arg(long, global = true, value_enum)]
    pub format: Option<Format>,
    /// Input document files, read in order; `-` is standard input, which is
    /// also read when no file is given and the command needs documents.
    #[arg(short = 'i', long = "input", global = true)]
    pub inputs: Vec<PathBuf>,
    /// Use a registry entry (`torus(n)`, `sl2_h`, `gl2`) as the spherical data.
    #[arg(long, global = true)]
    pub entry: Option<String>,
    /// Restrict to the named fans.
    #[arg(long = "fan", global = true)]
    pub fans: Vec<String>,
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Subcommand, Debug)]
pub enum Command {
    /// Check the colored cone axioms and the fan conditions.
    Validate,
    /// List the colored faces of every member.
    Faces,
    /// The quotient fan Star(tau).
    Star {
        /// Rays of tau, e.g. "(1, 0)"; empty for the zero cone.
        #[arg(long, allow_hyphen_values = true)]
        tau: String,
        /// Comma-separated colors of tau.
        #[arg(long, default_value = "")]
        tau_colors: String,
        /// Comma-separated colors mapping dominantly onto the orbit.
        #[arg(long)]
        dominant: Option<String>,
    },
    /// Whether every cone lies in the valuation cone.
    CheckStar {
        /// Fans to check (all when omitted).
        fans: Vec<String>,
    },
    /// Tropicalize points.
    Trop {
        #[arg(long, value_enum)]
        mode: Option<TropMode>,
        /// A point such as "(u^2, 1 + u)"; may be repeated.
        #[arg(long = "point", allow_hyphen_values = true)]
        points: Vec<String>,
        #[arg(long, default_value_t = 8)]
        samples: usize,
        #[arg(long, default_value_t = 0)]
        seed: u64,
        /// Entries of sampled group elements lie in [-range, range].
        #[arg(long, default_value_t = DEFAULT_RANGE)]
        range: i64,
        /// Rays of the smooth chart cone for `--mode extended`.
        #[arg(long, allow_hyphen_values = true)]
        chart: Option<String>,
    },
    /// Evaluate a retraction seminorm family.
    Retract {
        #[arg(long, value_enum, default_value_t = FamilyArg::Monomial)]
        family: FamilyArg,
        /// A nonnegative rational or "inf".
        #[arg(long, default_value = "0")]
        mu: String,
        /// A Laurent polynomial in t1..tn; may be repeated.
        #[arg(long = "poly", required = true, allow_hyphen_values = true)]
        polys: Vec<String>,
        #[arg(long = "point", allow_hyphen_values = true)]
        points: Vec<String>,
    },
    /// Strata of the canonical compactification of cones.
    Compactify {
        #[arg(long, value_enum)]
        mode: Option<CompactMode>,
        /// Rays of a single cone; otherwise every maximal cone of each fan.
        #[arg(long, allow_hyphen_values = true)]
        cone: Option<String>,
    },
    /// The image of the retraction, one piece per maximal cone.
    PImage {
        /// Always describe pieces as closures of sigma ∩ V.
        #[arg(long)]
        closure: bool,
    },
    /// The limit of v0 + s w as s grows, in the compactification of sigma.
    Limits {
        #[arg(long, allow_hyphen_values = true)]
        sigma: String,
        #[arg(long, allow_hyphen_values = true)]
        v0: String,
        #[arg(long, allow_hyphen_values = true)]
        w: String,
        #[arg(long, value_enum, default_value_t = CompactMode::Toric)]
        mode: CompactMode,
    },
    /// Dump registry entries.
    Examples {
        /// Entry names (default: torus(2), sl2_h, gl2).
        names: Vec<String>,
    },
    /// Draw two-dimensional fans as SVG.
    Plot {
        /// Output file, or a directory when several fans are drawn.
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Run the commands of a command_script document.
    Run { script: PathBuf },
}

#[derive(ValueEnum, Clone, Copy, PartialEq, Eq, Debug)]
pub enum Format {
    Text,
    Json,
}

#[derive(ValueEnum, Clone, Copy, PartialEq, Eq, Debug)]
pub enum TropMode {
    Torus,
    Extended,
    Generic,
}

#[derive(ValueEnum, Clone, Copy, PartialEq, Eq, Debug)]
pub enum FamilyArg {
    Monomial,
    Homotopy,
}

#[derive(ValueEnum, Clone, Copy, PartialEq, Eq, Debug)]
pub enum CompactMode {
    Toric,
    Colored,
}

/// Severity of a report; the exit code is that of the worst one.
#[derive(Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Debug)]
pub enum Status {
    Ok,
    /// Some validation failed.
    Invalid,
    /// A computation raised an error.
    Failed,
    /// Input could not be parsed.
    ParseError,
}

impl Status {
    pub fn code(self) -> i32 {
        match self {
            Status::Ok => 0,
            Status::Failed => 1,
            Status::ParseError => 2,
            Status::Invalid => 3,
        }
    }
}

/// What a run prints and how it exits.
#[derive(Clone, PartialEq, Eq, Debug, Default)]
pub struct Outcome {
    pub stdout: String,
    pub stderr: String,
    pub code: i32,
}

/// Runs `argv` (including the program name). `stdin` is called at most once,
/// and only when the command needs documents and no file was given.
pub fn execute(argv: &[String], stdin: impl FnOnce() -> std::io::Result<String>) -> Outcome {
    let cli = match Cli::try_parse_from(argv) {
        Ok(cli) => cli,
        Err(e) => {
            let text = e.render().to_string();
            return if e.use_stderr() {
                Outcome {
                    stderr: text,
                    code: Status::ParseError.code(),
                    ..Outcome::default()
                }
            } else {
                Outcome {
                    stdout: text,
                    ..Outcome::default()
                }
            };
        }
    };
    commands::dispatch(&cli, stdin)
}
