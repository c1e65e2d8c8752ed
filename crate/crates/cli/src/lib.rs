//! Command-line front end for `srg-core`: JSON inputs, CSV boundary
//! tables and SVG figures.
//!
//! Exit codes: 0 success, 1 parse or IO error, 2 numerical failure,
//! 3 failed `--check`.

pub mod args;
pub mod commands;
pub mod error;
pub mod input;
pub mod svg;
pub mod table;

use std::ffi::OsString;

use clap::Parser;

pub use args::{Cli, Command, Format};
pub use error::{CliError, CliResult};
pub use input::{MatrixFile, TFFile};

/// Caps the worker pool when `SRG_THREADS` is set to a positive integer.
fn configure_threads() -> CliResult<()> {
    let Ok(v) = std::env::var("SRG_THREADS") else {
        return Ok(());
    };
    let n: usize = v
        .trim()
        .parse()
        .ok()
        .filter(|&n| n > 0)
        .ok_or_else(|| CliError::Input(format!("SRG_THREADS must be a positive integer, got {v:?}")))?;
    // a pool built earlier in the same process wins; that only happens in tests
    let _ = rayon::ThreadPoolBuilder::new().num_threads(n).build_global();
    Ok(())
}

pub fn dispatch(cli: &Cli) -> CliResult<()> {
    configure_threads()?;
    match &cli.command {
        Command::SrgMatrix(a) => commands::srg_matrix(a),
        Command::SrgLti(a) => commands::srg_lti(a),
        Command::Nrange(a) => commands::nrange(a),
    }
}

/// Parses `argv`, runs the command and returns the process exit code.
/// Messages go to stderr; data goes to stdout only for `--out -`.
pub fn run<I, T>(argv: I) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let cli = match Cli::try_parse_from(argv) {
        Ok(cli) => cli,
        Err(e) => {
            let _ = e.print();
            return if e.use_stderr() { 1 } else { 0 };
        }
    };
    match dispatch(&cli) {
        Ok(()) => 0,
        Err(e) => {
            eprintln!("srgtool: {e}");
            e.exit_code()
        }
    }
}
