//! Command-line surface for the qhodge pipelines.

pub mod args;
pub mod cache;
pub mod commands;
pub mod config;
pub mod error;
pub mod output;

use std::ffi::OsString;
use std::io::Write;
use std::process::ExitCode;

use clap::Parser;

pub use error::CliError;

/// Parses `args`, runs the command and writes the report to stdout.
/// Exit codes: 0 success, 1 invariant failure, 2 usage or config error.
pub fn main_with<I, T>(args: I) -> ExitCode
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let cli = match args::Cli::try_parse_from(args) {
        Ok(cli) => cli,
        Err(e) => {
            let _ = e.print();
            return if e.use_stderr() { ExitCode::from(2) } else { ExitCode::SUCCESS };
        }
    };
    let result = config::RunConfig::from_args(&cli.global)
        .and_then(|cfg| commands::run(&cli.command, &cfg));
    match result {
        Ok(outcome) => {
            let rendered = match outcome.output.render(outcome.format) {
                Ok(s) => s,
                Err(e) => return report_error(&e),
            };
            let mut stdout = std::io::stdout().lock();
            let _ = stdout.write_all(rendered.as_bytes());
            match outcome.failure {
                None => ExitCode::SUCCESS,
                Some(first) => {
                    eprintln!("invariant failure: {first}");
                    ExitCode::from(1)
                }
            }
        }
        Err(e) => report_error(&e),
    }
}

fn report_error(e: &CliError) -> ExitCode {
    eprintln!("error: {e}");
    ExitCode::from(e.exit_code())
}
