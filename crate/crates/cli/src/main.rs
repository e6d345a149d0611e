mod args;
mod commands;
mod output;
mod plot;

use std::process::ExitCode;

use clap::error::ErrorKind;
use clap::Parser;

use crate::args::Cli;
use crate::commands::CliError;

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(cli) => cli,
        Err(e) if matches!(e.kind(), ErrorKind::DisplayHelp | ErrorKind::DisplayVersion) => {
            let _ = e.print();
            return ExitCode::SUCCESS;
        }
        Err(e) => {
            // clap's report spans several lines; keep the first.
            let text = e.to_string();
            let first = text.lines().next().unwrap_or("invalid arguments");
            let first = first.strip_prefix("error: ").unwrap_or(first);
            return fail(&CliError::Usage(first.to_string()));
        }
    };
    match commands::run(&cli.command) {
        Ok((bytes, path)) => match output::emit(&bytes, path) {
            Ok(()) => ExitCode::SUCCESS,
            Err(e) => fail(&CliError::Compute(format!("writing output: {e}"))),
        },
        Err(e) => fail(&e),
    }
}

fn fail(e: &CliError) -> ExitCode {
    eprintln!("hyperlaplace: {e}");
    ExitCode::from(e.exit_code())
}
