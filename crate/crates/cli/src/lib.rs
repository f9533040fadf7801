//! Command-line front end for the `twospin` library.
//!
//! Exit codes: 0 success, 1 validation or usage error, 2 oracle-suite
//! failure.

pub mod args;
pub mod commands;
pub mod config;
pub mod error;

use std::ffi::OsString;
use std::io::Write;

use clap::Parser;

use args::{Cli, Command, Format};
use commands::Outcome;
use error::CliError;

pub const EXIT_OK: i32 = 0;
pub const EXIT_VALIDATION: i32 = 1;
pub const EXIT_SUITE_FAILURE: i32 = 2;

pub fn run<I, T>(argv: I) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let cli = match Cli::try_parse_from(argv) {
        Ok(cli) => cli,
        Err(e) => {
            let code = if e.use_stderr() {
                EXIT_VALIDATION
            } else {
                EXIT_OK
            };
            let _ = e.print();
            return code;
        }
    };
    match dispatch(&cli.command) {
        Ok(code) => code,
        Err(e) => {
            eprintln!("error: {e}");
            EXIT_VALIDATION
        }
    }
}

fn dispatch(command: &Command) -> Result<i32, CliError> {
    let (outcome, out) = match command {
        Command::Verify(a) => (commands::verify(a)?, a.common.out.as_deref()),
        Command::Evolve(a) => (commands::evolve_cmd(a)?, a.common.out.as_deref()),
        Command::Propagator(a) => (commands::propagator_cmd(a)?, a.common.out.as_deref()),
        Command::Metric(a) => (commands::metric(a)?, a.out.as_deref()),
        Command::Classify(a) => (commands::classify(a)?, a.out.as_deref()),
        Command::Scan(a) => {
            let several = a.alphas.as_deref().is_some_and(|s| s.contains(','));
            let out_is_dir = several && a.common.format == Format::Csv;
            (
                commands::scan(a)?,
                a.common.out.as_deref().filter(|_| !out_is_dir),
            )
        }
        Command::FigureData(a) => (commands::figure_data(a)?, None),
    };
    emit(&outcome, out)?;
    Ok(if outcome.suite_failure {
        EXIT_SUITE_FAILURE
    } else {
        EXIT_OK
    })
}

fn emit(outcome: &Outcome, out: Option<&std::path::Path>) -> Result<(), CliError> {
    match out {
        Some(path) => {
            if let Some(dir) = path.parent().filter(|d| !d.as_os_str().is_empty()) {
                std::fs::create_dir_all(dir)?;
            }
            std::fs::write(path, &outcome.body)?;
        }
        None => {
            let mut stdout = std::io::stdout().lock();
            stdout.write_all(outcome.body.as_bytes())?;
            stdout.flush()?;
        }
    }
    Ok(())
}
