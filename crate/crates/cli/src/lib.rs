//! The `rbx` command line: build or load an algebra, run exact checks, and
//! report verdicts as aligned text or deterministic JSON.
//!
//! Exit status is 0 when every verdict passes, 1 when a mathematical verdict
//! fails, and 2 on input or usage errors.

pub mod args;
mod commands;
pub mod report;
mod target;

use std::ffi::OsString;
use std::time::Instant;

use clap::Parser;
use rbx_core::{CheckPolicy, Side};
use thiserror::Error;

use crate::args::{Cli, Command, Format, SideArg};
use crate::commands::RbOptions;
use crate::report::{Report, VerdictLine};
use crate::target::Target;

pub use crate::commands::export_document;

pub const EXIT_PASS: i32 = 0;
pub const EXIT_VERDICT: i32 = 1;
pub const EXIT_INPUT: i32 = 2;

#[derive(Debug, Error)]
pub enum CliError {
    /// Malformed or unusable input.
    #[error("{0}")]
    Input(String),
    /// A builtin family failed its own certification.
    #[error("{0}")]
    Verdict(String),
}

/// Captured result of one invocation.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Outcome {
    pub code: i32,
    pub stdout: String,
    pub stderr: String,
}

impl Outcome {
    fn error(code: i32, msg: &str) -> Self {
        Outcome {
            code,
            stdout: String::new(),
            stderr: format!("rbx: error: {msg}\n"),
        }
    }
}

/// Runs `rbx` with the given arguments (the first is the program name).
pub fn run<I, T>(args: I) -> Outcome
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let args: Vec<OsString> = args.into_iter().map(Into::into).collect();
    let cli = match Cli::try_parse_from(&args) {
        Ok(cli) => cli,
        Err(e) => {
            let text = e.render().to_string();
            let code = e.exit_code();
            return if e.use_stderr() {
                Outcome {
                    code,
                    stdout: String::new(),
                    stderr: text,
                }
            } else {
                Outcome {
                    code,
                    stdout: text,
                    stderr: String::new(),
                }
            };
        }
    };
    let echo = std::iter::once("rbx".to_string())
        .chain(args.iter().skip(1).map(|a| quote(&a.to_string_lossy())))
        .collect::<Vec<_>>()
        .join(" ");
    let policy = CheckPolicy {
        budget: cli.budget,
        seed: cli.seed,
        ..CheckPolicy::default()
    };
    let start = Instant::now();
    let mut report = Report::new(echo);
    let result = execute(&cli.command, &mut report, &policy);
    match result {
        Ok(Some(raw)) => Outcome {
            code: EXIT_PASS,
            stdout: raw,
            stderr: String::new(),
        },
        Ok(None) => {
            report.elapsed = Some(start.elapsed());
            let code = if report.all_pass() { EXIT_PASS } else { EXIT_VERDICT };
            let stdout = match cli.format {
                Format::Json => report.to_json(),
                Format::Text => report.to_text(),
            };
            Outcome {
                code,
                stdout,
                stderr: String::new(),
            }
        }
        Err(CliError::Verdict(msg)) => {
            report.verdict(VerdictLine::flag("family self-check", false, Some(msg.clone())));
            let stdout = match cli.format {
                Format::Json => report.to_json(),
                Format::Text => report.to_text(),
            };
            Outcome {
                code: EXIT_VERDICT,
                stdout,
                stderr: format!("rbx: {msg}\n"),
            }
        }
        Err(CliError::Input(msg)) => Outcome::error(EXIT_INPUT, &msg),
    }
}

/// Runs one command. `Ok(Some(text))` is raw output that bypasses the
/// report (an exported document on standard output).
fn execute(cmd: &Command, report: &mut Report, policy: &CheckPolicy) -> Result<Option<String>, CliError> {
    match cmd {
        Command::Check { target } => commands::check(report, &Target::load(target, policy)?, policy),
        Command::TraceElement { target } => commands::trace_element(report, &Target::load(target, policy)?)?,
        Command::Integrals { target, side } => {
            let side = match side {
                SideArg::Left => Side::Left,
                SideArg::Right => Side::Right,
            };
            commands::integrals(report, &Target::load(target, policy)?, side)?
        }
        Command::Rb {
            target,
            element,
            table,
            matrix,
            save,
        } => {
            let opts = RbOptions {
                table: *table,
                matrix: *matrix,
                save: save.as_deref(),
            };
            commands::rb(report, &Target::load(target, policy)?, element, opts, policy)?
        }
        Command::Tridend { target, element } => {
            commands::tridend(report, &Target::load(target, policy)?, element, policy)?
        }
        Command::CheckOperator { target, operator } => {
            commands::check_operator(report, &Target::load(target, policy)?, operator, policy)?
        }
        Command::Export { target, output } => {
            let t = Target::load(target, policy)?;
            match output {
                Some(path) => commands::export(report, &t, path)?,
                None => return Ok(Some(commands::export_document(&t))),
            }
        }
    }
    Ok(None)
}

fn quote(arg: &str) -> String {
    if !arg.is_empty() && arg.chars().all(|c| c.is_ascii_alphanumeric() || "-_:./=[]".contains(c)) {
        arg.to_string()
    } else {
        format!("\"{}\"", arg.replace('\\', "\\\\").replace('"', "\\\""))
    }
}
