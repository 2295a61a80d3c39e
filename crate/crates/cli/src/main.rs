use std::fs;
use std::io::{self, Write};
use std::process::ExitCode;

use clap::Parser;

use revorder_cli::{run, Cli, Command, EXIT_IO};

fn main() -> ExitCode {
    let cli = Cli::parse();
    let outcome = match run(&cli) {
        Ok(outcome) => outcome,
        Err(e) => {
            eprintln!("{e}");
            return ExitCode::from(e.exit_code());
        }
    };
    // synth already wrote its dataset to --out; its summary goes to stdout
    let written = match (&cli.out, &cli.command) {
        (Some(path), c) if !matches!(c, Command::Synth(_)) => fs::write(path, &outcome.text),
        _ => io::stdout().write_all(outcome.text.as_bytes()),
    };
    if let Err(e) = written {
        eprintln!("I/O error: {e}");
        return ExitCode::from(EXIT_IO);
    }
    ExitCode::from(outcome.code)
}
