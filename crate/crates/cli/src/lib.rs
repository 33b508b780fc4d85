//! Command-line front end for `qkit`.

pub mod args;
pub mod commands;
pub mod output;
pub mod verify;

use std::ffi::OsString;

use clap::error::ErrorKind;
use clap::Parser;
use serde_json::json;

use args::Cli;
use commands::{command_name, dispatch, CliError, Context};
pub use output::{CommandResult, Status};

pub const EXIT_OK: i32 = 0;
pub const EXIT_DOMAIN: i32 = 1;
pub const EXIT_USAGE: i32 = 2;

/// Captured process result.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Outcome {
    pub code: i32,
    pub stdout: String,
    pub stderr: String,
}

fn error_json(command: &str, kind: &str, message: &str) -> String {
    serde_json::to_string_pretty(&json!({
        "status": "error",
        "command": command,
        "kind": kind,
        "message": message,
    }))
    .expect("JSON values serialize")
}

/// Parses `argv` (including the program name) and runs the command.
pub fn run<I, T>(argv: I) -> Outcome
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let argv: Vec<OsString> = argv.into_iter().map(Into::into).collect();
    let json_requested = argv.iter().any(|a| a == "--json");
    let cli = match Cli::try_parse_from(&argv) {
        Ok(cli) => cli,
        Err(e) => {
            return match e.kind() {
                ErrorKind::DisplayHelp | ErrorKind::DisplayVersion => Outcome {
                    code: EXIT_OK,
                    stdout: e.render().to_string(),
                    stderr: String::new(),
                },
                _ if json_requested => Outcome {
                    code: EXIT_USAGE,
                    stdout: error_json("", "usage", e.render().to_string().trim()) + "\n",
                    stderr: String::new(),
                },
                _ => Outcome {
                    code: EXIT_USAGE,
                    stdout: String::new(),
                    stderr: e.render().to_string(),
                },
            };
        }
    };
    let name = command_name(&cli.command);
    let ctx = Context {
        seed: cli.seed,
        tol: cli.tol,
    };
    match dispatch(&cli.command, &ctx) {
        Ok(result) => {
            let code = if result.status == Status::Ok { EXIT_OK } else { EXIT_DOMAIN };
            let stdout = if cli.json { result.to_json(&name) } else { result.to_human() };
            Outcome {
                code,
                stdout: stdout + "\n",
                stderr: String::new(),
            }
        }
        Err(err) => {
            let (code, kind, message) = match err {
                CliError::Usage(m) => (EXIT_USAGE, "usage", m),
                CliError::Domain(e) => (EXIT_DOMAIN, "domain", e.to_string()),
            };
            if cli.json {
                Outcome {
                    code,
                    stdout: error_json(&name, kind, &message) + "\n",
                    stderr: String::new(),
                }
            } else {
                Outcome {
                    code,
                    stdout: String::new(),
                    stderr: format!("error: {message}\n"),
                }
            }
        }
    }
}
