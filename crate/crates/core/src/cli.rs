//! Command-line front end. [`run_cli`] returns the exit code and both output
//! streams so it can be driven from tests.

use std::path::PathBuf;

use clap::{Args, Parser, Subcommand, ValueEnum};

use crate::diagram::Diagram;
use crate::examples;
use crate::io::{emit_document, parse_document};
use crate::report::{Report, Sections};

/// Success.
pub const EXIT_OK: i32 = 0;
/// Input could not be read, parsed or understood.
pub const EXIT_USAGE: i32 = 1;
/// The diagram has violations.
pub const EXIT_VIOLATIONS: i32 = 2;

#[derive(Debug, Parser)]
#[command(
    name = "morse-smale",
    version,
    about = "Invariants and energy functions of Morse-Smale diagrams"
)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Debug, Subcommand)]
enum Command {
    /// Check every structural invariant.
    Validate(InputArgs),
    /// Smale order, behaviour and the canonical dynamical numbering.
    Order(InputArgs),
    /// Attractor and repeller rows (c, r, s, g).
    Filtration(InputArgs),
    /// Ambient manifold of a diagram without heteroclinic curves.
    Classify(InputArgs),
    /// Existence of a dynamically ordered energy function.
    Energy(InputArgs),
    /// Every section.
    Report(InputArgs),
    /// List the built-in diagrams, or print one as a document.
    Examples {
        #[arg(long)]
        example: Option<String>,
    },
}

#[derive(Debug, Args)]
struct InputArgs {
    /// Diagram document (JSON).
    #[arg(long, conflicts_with = "example", required_unless_present = "example")]
    input: Option<PathBuf>,
    /// Built-in diagram name, e.g. `pixton` or `chain-4`.
    #[arg(long)]
    example: Option<String>,
    #[arg(long, value_enum, default_value_t = Format::Text)]
    format: Format,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
enum Format {
    Text,
    Json,
    Dot,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct CliOutput {
    pub code: i32,
    pub stdout: String,
    pub stderr: String,
}

impl CliOutput {
    fn usage(message: impl Into<String>) -> Self {
        let mut stderr = message.into();
        if !stderr.ends_with('\n') {
            stderr.push('\n');
        }
        CliOutput {
            code: EXIT_USAGE,
            stdout: String::new(),
            stderr,
        }
    }
}

/// Runs one invocation. `args` includes the program name.
pub fn run_cli<I, T>(args: I) -> CliOutput
where
    I: IntoIterator<Item = T>,
    T: Into<std::ffi::OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(cli) => cli,
        Err(e) => {
            let text = e.render().to_string();
            return if e.use_stderr() {
                CliOutput::usage(text)
            } else {
                CliOutput {
                    code: EXIT_OK,
                    stdout: text,
                    stderr: String::new(),
                }
            };
        }
    };

    let (input, sections) = match cli.command {
        Command::Examples { example } => return list_examples(example.as_deref()),
        Command::Validate(a) => (a, Sections::default()),
        Command::Order(a) => (
            a,
            Sections {
                order: true,
                ..Sections::default()
            },
        ),
        Command::Filtration(a) => (
            a,
            Sections {
                filtration: true,
                ..Sections::default()
            },
        ),
        Command::Classify(a) => (
            a,
            Sections {
                classification: true,
                ..Sections::default()
            },
        ),
        Command::Energy(a) => (
            a,
            Sections {
                energy: true,
                ..Sections::default()
            },
        ),
        Command::Report(a) => (a, Sections::ALL),
    };

    let diagram = match load(&input) {
        Ok(d) => d,
        Err(message) => return CliOutput::usage(message),
    };
    let report = Report::build(&diagram, sections);
    let stdout = match input.format {
        Format::Text => report.to_text(),
        Format::Json => report.to_json(),
        Format::Dot => report.to_dot(&diagram),
    };
    let (code, stderr) = if report.has_violations() {
        (EXIT_VIOLATIONS, format!("{}: diagram has violations\n", diagram.name))
    } else {
        (EXIT_OK, String::new())
    };
    CliOutput { code, stdout, stderr }
}

fn load(input: &InputArgs) -> Result<Diagram, String> {
    match (&input.input, &input.example) {
        (Some(path), _) => {
            let bytes = std::fs::read(path).map_err(|e| format!("cannot read {}: {e}", path.display()))?;
            parse_document(&bytes).map_err(|e| format!("{}: {e}", path.display()))
        }
        (None, Some(name)) => examples::by_name(name).ok_or_else(|| unknown_example(name)),
        (None, None) => Err(String::from("either --input or --example is required")),
    }
}

fn unknown_example(name: &str) -> String {
    format!(
        "unknown example `{name}`; available: {}",
        examples::BUILTIN_NAMES.join(", ")
    )
}

fn list_examples(name: Option<&str>) -> CliOutput {
    match name {
        None => CliOutput {
            code: EXIT_OK,
            stdout: examples::BUILTIN_NAMES.iter().map(|n| format!("{n}\n")).collect(),
            stderr: String::new(),
        },
        Some(name) => match examples::by_name(name) {
            Some(d) => CliOutput {
                code: EXIT_OK,
                stdout: emit_document(&d) + "\n",
                stderr: String::new(),
            },
            None => CliOutput::usage(unknown_example(name)),
        },
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn run(args: &[&str]) -> CliOutput {
        run_cli(std::iter::once("morse-smale").chain(args.iter().copied()))
    }

    #[test]
    fn validate_builtin() {
        let out = run(&["validate", "--example", "pixton"]);
        assert_eq!(out.code, EXIT_OK, "{out:?}");
        assert!(out.stdout.contains("validation: ok"));
    }

    #[test]
    fn missing_input_is_usage_error() {
        assert_eq!(run(&["validate"]).code, EXIT_USAGE);
        assert_eq!(run(&["validate", "--example", "nope"]).code, EXIT_USAGE);
        assert_eq!(run(&["frobnicate"]).code, EXIT_USAGE);
        assert_eq!(run(&["validate", "--input", "/nonexistent.json"]).code, EXIT_USAGE);
    }

    #[test]
    fn help_exits_zero() {
        let out = run(&["--help"]);
        assert_eq!(out.code, EXIT_OK);
        assert!(out.stdout.contains("filtration"));
    }

    #[test]
    fn examples_lists_and_emits() {
        let out = run(&["examples"]);
        assert!(out.stdout.lines().any(|l| l == "pixton-strong"));
        let out = run(&["examples", "--example", "chain-3"]);
        assert_eq!(out.code, EXIT_OK);
        assert!(parse_document(out.stdout.as_bytes()).is_ok());
    }
}
