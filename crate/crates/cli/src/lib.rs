//! Command-line front end and file formats for `dbtorus-core`.
//!
//! [`run`] is the whole program; the binary only forwards `argv` and the
//! standard streams to it, which keeps every command testable in-process.
//!
//! Exit codes: 0 success, 1 usage or I/O error, 2 violated mathematical
//! precondition (the message starts with the precondition's name).

use std::ffi::OsString;
use std::fmt;
use std::io::Write;

use clap::Parser;

pub mod args;
mod commands;
pub mod formats;

/// Why a command failed.
#[derive(Debug)]
pub enum CliError {
    Usage(String),
    Math(dbtorus_core::Error),
    /// A loaded file disagrees with what its parameters produce.
    Mismatch(String),
    Io(std::io::Error),
}

impl CliError {
    pub fn exit_code(&self) -> i32 {
        match self {
            CliError::Usage(_) | CliError::Io(_) => 1,
            CliError::Math(_) | CliError::Mismatch(_) => 2,
        }
    }
}

impl fmt::Display for CliError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            CliError::Usage(m) => write!(f, "usage: {m}"),
            CliError::Math(e) => write!(f, "{e}"),
            CliError::Mismatch(m) => write!(f, "ValuesMismatch: {m}"),
            CliError::Io(e) => write!(f, "io: {e}"),
        }
    }
}

impl From<dbtorus_core::Error> for CliError {
    fn from(e: dbtorus_core::Error) -> Self {
        match e {
            dbtorus_core::Error::Parse(m) => CliError::Usage(m),
            other => CliError::Math(other),
        }
    }
}

impl From<std::io::Error> for CliError {
    fn from(e: std::io::Error) -> Self {
        CliError::Io(e)
    }
}

/// Parses `argv` (program name first), runs the command and returns the exit code.
pub fn run<I, T>(argv: I, out: &mut dyn Write, err: &mut dyn Write) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let cli = match args::Cli::try_parse_from(argv) {
        Ok(cli) => cli,
        Err(e) => {
            use clap::error::ErrorKind;
            let text = e.render().to_string();
            return match e.kind() {
                ErrorKind::DisplayHelp | ErrorKind::DisplayVersion => {
                    let _ = out.write_all(text.as_bytes());
                    0
                }
                _ => {
                    let _ = err.write_all(text.as_bytes());
                    1
                }
            };
        }
    };
    match commands::execute(cli.command, out) {
        Ok(()) => 0,
        Err(e) => {
            let _ = writeln!(err, "error: {e}");
            e.exit_code()
        }
    }
}
