use std::io::Write;
use std::process::ExitCode;

use clap::error::ErrorKind;
use clap::Parser;

mod args;
mod commands;
mod error;
mod scenario;

use args::{Cli, Command};
use commands::{Output, Status};
use error::CliError;

fn run(cli: &Cli) -> Result<Output, CliError> {
    match &cli.command {
        Command::Solve(a) => commands::solve(a),
        Command::Table(a) => commands::table(a),
        Command::Curve(a) => commands::curve(a),
        Command::Validate(a) => commands::validate(a),
    }
}

fn out_path(cli: &Cli) -> Option<&std::path::Path> {
    match &cli.command {
        Command::Solve(a) | Command::Validate(a) => a.out.as_deref(),
        Command::Table(a) => a.common.out.as_deref(),
        Command::Curve(a) => a.common.out.as_deref(),
    }
}

fn fail(code: &str, msg: &str) -> ExitCode {
    let msg = msg.lines().next().unwrap_or("").trim();
    eprintln!("error[{code}]: {msg}");
    ExitCode::from(2)
}

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(cli) => cli,
        Err(e) if matches!(e.kind(), ErrorKind::DisplayHelp | ErrorKind::DisplayVersion) => {
            let _ = e.print();
            return ExitCode::SUCCESS;
        }
        Err(e) => {
            let rendered = e.render().to_string();
            let first = rendered
                .lines()
                .find(|l| !l.trim().is_empty())
                .unwrap_or("invalid arguments");
            return fail("USAGE", first.trim_start_matches("error: "));
        }
    };

    let output = match run(&cli) {
        Ok(o) => o,
        Err(e) => return fail(e.code(), &e.to_string()),
    };

    let written = match out_path(&cli) {
        Some(path) => {
            std::fs::write(path, &output.body).map_err(|e| format!("{}: {e}", path.display()))
        }
        None => std::io::stdout()
            .write_all(output.body.as_bytes())
            .map_err(|e| e.to_string()),
    };
    if let Err(msg) = written {
        return fail("IO", &msg);
    }
    match output.status {
        Status::Ok => ExitCode::SUCCESS,
        Status::Warnings => ExitCode::from(1),
    }
}
