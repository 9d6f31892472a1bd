//! Library half of the `coarse-embed` binary, so commands can be driven from
//! tests without a subprocess.

pub mod args;
pub mod commands;
pub mod error;
pub mod suites;

use args::{Cli, Command};
use commands::Outcome;
use error::CliResult;

/// Exit status: every requested certificate passed.
pub const EXIT_PASS: u8 = 0;
/// Exit status: a certificate failed.
pub const EXIT_FAIL: u8 = 1;
/// Exit status: bad input or configuration.
pub const EXIT_INPUT: u8 = 2;

pub fn run(cli: &Cli) -> CliResult<Outcome> {
    match &cli.command {
        Command::Gen(a) => commands::gen(a),
        Command::Embed(a) => commands::embed(a),
        Command::Group(a) => commands::group(a),
        Command::Expander(a) => commands::expander(a),
        Command::Verify(a) => suites::verify(a),
    }
}

/// Reads `COARSE_EMBED_THREADS` and sizes the global rayon pool from it.
pub fn configure_threads() -> CliResult<()> {
    let Ok(raw) = std::env::var("COARSE_EMBED_THREADS") else {
        return Ok(());
    };
    let n: usize = raw
        .trim()
        .parse()
        .ok()
        .filter(|&n| n >= 1)
        .ok_or_else(|| error::CliError::Config(format!("COARSE_EMBED_THREADS must be a positive integer, got `{raw}`")))?;
    rayon::ThreadPoolBuilder::new()
        .num_threads(n)
        .build_global()
        .map_err(|e| error::CliError::Config(e.to_string()))
}
