//! `coxlink`: command-line front end for the coxlink library.
//!
//! Every subcommand prints either human-oriented text or, with
//! `--format json`, a single JSON document. Failures print
//! `{"error": {"code", "message", "location"}}`; the exit status follows the
//! error class (see [`exit_code`]).

mod commands;
mod input;

use std::io::Write;
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand, ValueEnum};
use coxlink::ErrorClass;
use serde_json::{json, Value};

use input::Failure;

#[derive(Parser, Debug)]
#[command(name = "coxlink", version, about = "Coxeter elements, Coxeter links and Mahler measures")]
pub struct Cli {
    /// Output format.
    #[arg(long, value_enum, global = true, default_value_t = Format::Text)]
    pub format: Format,

    /// Tolerance for numerical results (each command has its own default).
    #[arg(long, global = true)]
    pub tol: Option<f64>,

    #[command(subcommand)]
    pub command: Command,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
pub enum Format {
    Text,
    Json,
}

#[derive(Args, Debug)]
pub struct GraphArgs {
    /// Graph JSON file: {"n": .., "edges": [[i, j] or [i, j, label]]}, 1-based, label 0 for infinity.
    pub graph: String,
    /// Vertex order of the reflections, 1-based and comma-separated (default 1,2,..,n).
    #[arg(long, value_delimiter = ',')]
    pub order: Vec<usize>,
}

#[derive(Subcommand, Debug)]
pub enum Command {
    /// Mahler measure of a polynomial (symbolic like "x^3 - x + 1" or CSV coefficients "1,-1,0,1").
    Mahler {
        #[arg(allow_hyphen_values = true)]
        poly: String,
    },
    /// Whether a monic polynomial has the shape of a Salem polynomial.
    Salem {
        #[arg(allow_hyphen_values = true)]
        poly: String,
    },
    /// Spherical, affine or indefinite, with a certificate.
    Classify { graph: String },
    /// Characteristic polynomial of the Coxeter element.
    Charpoly(GraphArgs),
    /// Spectral radius of the Coxeter element.
    Spectral(GraphArgs),
    /// Matrix of the Coxeter element.
    Element(GraphArgs),
    /// Growth-series denominator of the polygonal reflection group with angles pi/p_i.
    Delta {
        #[arg(required = true, num_args = 2..)]
        ps: Vec<u32>,
    },
    /// Alexander polynomial of an ordered chord system or a Seifert matrix.
    Alexander {
        /// File or literal: chord-system JSON, `<word> | order ..`, or a JSON matrix.
        #[arg(allow_hyphen_values = true)]
        input: String,
    },
    /// A chord diagram whose intersection graph is the given graph.
    Realize {
        graph: String,
        /// Search budget in nodes.
        #[arg(long, default_value_t = coxlink::chords::DEFAULT_BUDGET)]
        budget: u64,
    },
    /// A certificate that the graph is not an intersection graph of chords.
    Obstruct { graph: String },
    /// A positive orientation and order of a chord diagram, and the classes of all of them.
    Positive {
        /// File or literal: diagram JSON or tokens like `+1 -2 -1 +2`.
        #[arg(allow_hyphen_values = true)]
        diagram: String,
    },
    /// Exhaustive minimality searches.
    #[command(subcommand)]
    Search(SearchCommand),
    /// Checks the identities around Lehmer's polynomial across modules.
    LehmerVerify,
}

#[derive(Subcommand, Debug)]
pub enum SearchCommand {
    /// Least Mahler measure of growth denominators over tuples.
    Tuples {
        #[arg(long)]
        kmax: usize,
        #[arg(long)]
        pmax: u32,
    },
    /// Least spectral radius over indefinite trees.
    Trees {
        #[arg(long)]
        nmax: usize,
    },
    /// Least spectral radius over indefinite connected graphs and all orderings.
    Graphs {
        #[arg(long)]
        nmax: usize,
    },
    /// Alexander polynomials over all positive orders of a chord diagram.
    Orderings {
        #[arg(allow_hyphen_values = true)]
        diagram: String,
    },
}

/// 1 for bad input, 2 when a computation could not finish, 3 when an
/// identity that must hold was found broken.
fn exit_code(f: &Failure) -> u8 {
    match f.error.class() {
        ErrorClass::Validation => 1,
        ErrorClass::Computation => 2,
        ErrorClass::Invariant => 3,
    }
}

fn error_json(code: &str, message: &str, location: Value) -> Value {
    json!({"error": {"code": code, "message": message, "location": location}})
}

/// Writes a line to stdout; a closed pipe is not an error worth reporting.
fn emit(text: &str) {
    let _ = writeln!(std::io::stdout().lock(), "{text}");
}

fn report_error(format: Format, value: &Value, message: &str) {
    match format {
        Format::Json => emit(&value.to_string()),
        Format::Text => eprintln!("error: {message}"),
    }
}

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(cli) => cli,
        Err(e) => {
            use clap::error::ErrorKind;
            if matches!(e.kind(), ErrorKind::DisplayHelp | ErrorKind::DisplayVersion) {
                print!("{e}");
                return ExitCode::SUCCESS;
            }
            let json_wanted = std::env::args().any(|a| a == "json" || a == "--format=json");
            let msg = e.kind().to_string();
            if json_wanted {
                emit(&error_json("usage", &msg, Value::Null).to_string());
            } else {
                eprint!("{e}");
            }
            return ExitCode::from(1);
        }
    };
    match commands::run(&cli) {
        Ok(out) => {
            match cli.format {
                Format::Json => emit(&serde_json::to_string_pretty(&out.json).expect("values serialize")),
                Format::Text => emit(out.text.trim_end()),
            }
            ExitCode::SUCCESS
        }
        Err(f) => {
            let message = f.error.to_string();
            report_error(cli.format, &error_json(f.error.code(), &message, f.location.clone()), &message);
            ExitCode::from(exit_code(&f))
        }
    }
}
