//! `veritree` command-line pipeline.

mod args;
mod pipeline;
mod settings;

use std::process::ExitCode;

use clap::Parser;

use args::Cli;

#[derive(Debug, thiserror::Error)]
pub enum CliError {
    #[error("{0}")]
    Usage(String),
    #[error(transparent)]
    Core(#[from] veritree::Error),
}

impl CliError {
    /// 1 for usage errors, 2 for bad input data, 3 for anything else.
    fn exit_code(&self) -> u8 {
        match self {
            CliError::Usage(_) | CliError::Core(veritree::Error::InvalidArgument(_)) => 1,
            CliError::Core(e) if e.is_data_error() => 2,
            CliError::Core(_) => 3,
        }
    }
}

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(cli) => cli,
        Err(e) => {
            let _ = e.print();
            return if e.use_stderr() {
                ExitCode::from(1)
            } else {
                ExitCode::SUCCESS
            };
        }
    };
    match pipeline::run(cli) {
        Ok(()) => ExitCode::SUCCESS,
        Err(e) => {
            eprintln!("error: {e}");
            ExitCode::from(e.exit_code())
        }
    }
}
