//! Command-line front end. `run` is what the `z2q` binary calls.

use std::io::Write;
use std::path::Path;

use clap::{Parser, Subcommand, ValueEnum};

use crate::engine::{check_local_confluence, Presentation, BUILTIN_NAMES};
use crate::error::Error;
use crate::expr::{eval_str, Value};
use crate::grading::Degree;
use crate::verify::run_suite;

pub const EXIT_OK: i32 = 0;
pub const EXIT_FAILED: i32 = 1;
pub const EXIT_USAGE: i32 = 2;

#[derive(Parser, Debug)]
#[command(name = "z2q", version, about = "Normal forms and structure checks for the double-graded quantum superplane")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand, Debug)]
enum Command {
    /// Print the normal form of an expression.
    Normalize {
        #[arg(long, default_value = "dqsp")]
        algebra: String,
        expr: String,
    },
    /// Print the degree of a homogeneous expression.
    Degree {
        #[arg(long, default_value = "dqsp")]
        algebra: String,
        expr: String,
    },
    /// Run verification suites.
    Verify {
        #[arg(long, value_enum, default_value_t = Suite::All)]
        suite: Suite,
        #[arg(long, default_value_t = 4)]
        bound: u32,
        #[arg(long, value_enum, default_value_t = Format::Text)]
        format: Format,
    },
    /// Inspect presentations.
    Presentations {
        #[command(subcommand)]
        action: PresentationsAction,
    },
}

#[derive(Subcommand, Debug)]
enum PresentationsAction {
    /// List the builtin presentations.
    List,
    /// Print a presentation as JSON.
    Show { name: String },
    /// Load a presentation file and check it.
    Load { file: String },
}

#[derive(Clone, Copy, Debug, ValueEnum)]
enum Suite {
    Engine,
    Hopf,
    Calculus,
    Operators,
    All,
}

impl Suite {
    fn name(self) -> &'static str {
        match self {
            Suite::Engine => "engine",
            Suite::Hopf => "hopf",
            Suite::Calculus => "calculus",
            Suite::Operators => "operators",
            Suite::All => "all",
        }
    }
}

#[derive(Clone, Copy, Debug, ValueEnum)]
enum Format {
    Text,
    Json,
}

fn value_degree(v: &Value, p: &Presentation) -> Option<Degree> {
    match v {
        Value::Scalar(_) => Some(Degree::zero(p.degree_len())),
        Value::Element(e) => e.homogeneous_degree(),
        Value::Tensor(t) => t.homogeneous_degree(),
    }
}

fn presentation_summary(p: &Presentation) -> String {
    let symbols: Vec<&str> = p.generators().iter().map(|g| g.symbol.as_str()).collect();
    format!(
        "{}: {} generators [{}], {} rules, degree length {}",
        p.name(),
        p.num_generators(),
        symbols.join(", "),
        p.rules().len(),
        p.degree_len()
    )
}

fn execute(cmd: Command, out: &mut dyn Write) -> Result<i32, Error> {
    let io = |e: std::io::Error| Error::Io { path: "<stdout>".into(), source: e };
    match cmd {
        Command::Normalize { algebra, expr } => {
            let p = Presentation::load(&algebra)?;
            let v = eval_str(&expr, &p)?;
            writeln!(out, "{v}").map_err(io)?;
            Ok(EXIT_OK)
        }
        Command::Degree { algebra, expr } => {
            let p = Presentation::load(&algebra)?;
            let v = eval_str(&expr, &p)?;
            match value_degree(&v, &p) {
                Some(d) => writeln!(out, "{d}"),
                None => writeln!(out, "inhomogeneous"),
            }
            .map_err(io)?;
            Ok(EXIT_OK)
        }
        Command::Verify { suite, bound, format } => {
            let report = run_suite(suite.name(), bound)?;
            let text = match format {
                Format::Text => report.to_text(),
                Format::Json => report.to_json(),
            };
            writeln!(out, "{}", text.trim_end()).map_err(io)?;
            Ok(if report.all_passed() { EXIT_OK } else { EXIT_FAILED })
        }
        Command::Presentations { action } => match action {
            PresentationsAction::List => {
                for name in BUILTIN_NAMES {
                    let p = Presentation::builtin(name)?;
                    writeln!(out, "{}", presentation_summary(&p)).map_err(io)?;
                }
                Ok(EXIT_OK)
            }
            PresentationsAction::Show { name } => {
                let p = Presentation::load(&name)?;
                let json = serde_json::to_string_pretty(&p.to_spec())
                    .map_err(|e| Error::Malformed(e.to_string()))?;
                writeln!(out, "{json}").map_err(io)?;
                Ok(EXIT_OK)
            }
            PresentationsAction::Load { file } => {
                let p = Presentation::load_file(Path::new(&file))?;
                let report = check_local_confluence(&p);
                writeln!(out, "{}", presentation_summary(&p)).map_err(io)?;
                writeln!(out, "confluent: {} overlaps checked", report.overlaps_checked).map_err(io)?;
                Ok(EXIT_OK)
            }
        },
    }
}

/// Runs the CLI on `args` (including the program name) and returns the exit
/// code. Diagnostics go to `err`.
pub fn run<I, T>(args: I, out: &mut dyn Write, err: &mut dyn Write) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<std::ffi::OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(cli) => cli,
        Err(e) => {
            let code = if e.use_stderr() { EXIT_USAGE } else { EXIT_OK };
            let rendered = e.render().to_string();
            if e.use_stderr() {
                let _ = write!(err, "{rendered}");
            } else {
                let _ = write!(out, "{rendered}");
            }
            return code;
        }
    };
    match execute(cli.command, out) {
        Ok(code) => code,
        Err(Error::Io { source, .. }) if source.kind() == std::io::ErrorKind::BrokenPipe => EXIT_OK,
        Err(e) => {
            let _ = writeln!(err, "error: {e}");
            EXIT_USAGE
        }
    }
}
