use std::io::Write;
use std::process::ExitCode;

use clap::error::ErrorKind;
use clap::Parser;
use coarse_embed_cli::args::Cli;
use coarse_embed_cli::error::CliError;
use coarse_embed_cli::{configure_threads, run, EXIT_FAIL, EXIT_INPUT, EXIT_PASS};

fn fail(err: &CliError) -> ExitCode {
    eprintln!("{}", err.to_json());
    ExitCode::from(EXIT_INPUT)
}

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(cli) => cli,
        Err(e) if matches!(e.kind(), ErrorKind::DisplayHelp | ErrorKind::DisplayVersion) => {
            let _ = e.print();
            return ExitCode::from(EXIT_PASS);
        }
        Err(e) => return fail(&CliError::Config(e.kind().to_string() + ": " + e.to_string().lines().next().unwrap_or(""))),
    };
    if let Err(e) = configure_threads() {
        return fail(&e);
    }
    match run(&cli) {
        Ok(out) => {
            let mut stdout = std::io::stdout().lock();
            if stdout.write_all(out.stdout.as_bytes()).and_then(|_| stdout.flush()).is_err() {
                return ExitCode::from(EXIT_INPUT);
            }
            ExitCode::from(if out.passed { EXIT_PASS } else { EXIT_FAIL })
        }
        Err(e) => fail(&e),
    }
}
