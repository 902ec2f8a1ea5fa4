//! Command-line front end for `emergent_space`.
//!
//! Results go to stdout as JSON, diagnostics to stderr as a JSON object.
//! Exit codes: 0 ok, 1 input error, 2 domain error, 3 golden mismatch.

pub mod commands;
pub mod error;
pub mod input;
pub mod json;
pub mod registry;
pub mod scenarios;

use std::ffi::OsString;

use clap::Parser;

pub use commands::Cli;
pub use error::{CliError, CliResult, EXIT_DOMAIN, EXIT_GOLDEN, EXIT_INPUT, EXIT_OK};

/// Everything an invocation printed, plus its exit code.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Invocation {
    pub code: i32,
    pub stdout: String,
    pub stderr: String,
}

/// Parses `args` (program name first) and runs the command. Side files
/// (`--out`) are written here; nothing is printed.
pub fn execute<I, T>(args: I) -> Invocation
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(cli) => cli,
        Err(e) => {
            let code = if e.use_stderr() { EXIT_INPUT } else { EXIT_OK };
            let text = e.render().to_string();
            return if e.use_stderr() {
                Invocation { code, stdout: String::new(), stderr: text }
            } else {
                Invocation { code, stdout: text, stderr: String::new() }
            };
        }
    };
    match run(&cli) {
        Ok(stdout) => Invocation { code: EXIT_OK, stdout, stderr: String::new() },
        Err(e) => Invocation { code: e.exit_code(), stdout: String::new(), stderr: json::render(&e.to_json()) },
    }
}

fn write_file(path: &std::path::Path, text: &str) -> CliResult<()> {
    std::fs::write(path, text).map_err(|e| CliError::Io(format!("{}: {e}", path.display())))
}

fn run(cli: &Cli) -> CliResult<String> {
    let out = commands::run(cli)?;
    let text = out.text.unwrap_or_else(|| json::render(&out.json));
    if let Some((path, body)) = &out.side_file {
        write_file(path, body)?;
        return Ok(text);
    }
    match &cli.out {
        Some(path) => {
            write_file(path, &text)?;
            Ok(String::new())
        }
        None => Ok(text),
    }
}
