//! Command-line front end for the `pifactor-core` algorithms.
//!
//! [`run`] executes one invocation against caller-supplied streams, so the
//! binary and the integration tests share the same code path.

pub mod commands;
pub mod docs;
pub mod error;
pub mod json;
pub mod report;

use std::ffi::OsString;
use std::io::{Read, Write};

use clap::error::ErrorKind;
use clap::Parser;

use crate::commands::{error_report, execute, Cli, Io};
use crate::report::Status;

pub use crate::error::{CliError, CliResult};

/// Runs one command line and returns the process exit code.
///
/// Exit codes: 0 success, 1 usage, parse or I/O error, 2 mathematical violation.
pub fn run<I, T>(
    args: I,
    stdin: &mut dyn Read,
    stdout: &mut dyn Write,
    stderr: &mut dyn Write,
) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(cli) => cli,
        Err(e) => {
            let rendered = e.render().to_string();
            return match e.kind() {
                ErrorKind::DisplayHelp | ErrorKind::DisplayVersion => {
                    let _ = write!(stdout, "{rendered}");
                    0
                }
                _ => {
                    let _ = write!(stderr, "{rendered}");
                    1
                }
            };
        }
    };
    let format = cli.report_format;
    let mut io = Io {
        stdin,
        stdout,
        stderr,
    };
    match execute(&cli, &mut io) {
        Ok(outcome) => {
            let text = outcome.report.render(format);
            let sink = if outcome.wrote_stdout {
                &mut *io.stderr
            } else {
                &mut *io.stdout
            };
            let _ = sink.write_all(text.as_bytes());
            match outcome.report.status {
                Status::Ok => 0,
                Status::Violation => 2,
                Status::Error => 1,
            }
        }
        Err(e) => {
            let _ = io.stderr.write_all(
                error_report(cli.command.name(), &e)
                    .render(format)
                    .as_bytes(),
            );
            e.exit_code()
        }
    }
}
