mod args;
mod commands;
mod error;

use std::process::ExitCode;

use clap::Parser;

use args::{Cli, Command};

fn main() -> ExitCode {
    let cli = Cli::parse();
    let out = &cli.out_dir;
    let result = match &cli.command {
        Command::Coherence(a) => commands::coherence(a, out),
        Command::Surface(a) => commands::surface(a, out),
        Command::Dynamics(a) => commands::dynamics(a, out),
        Command::Verify(a) => commands::verify(a),
        Command::Curve(a) => commands::curve(a, out),
        Command::Bases(a) => commands::bases(a),
    };
    match result {
        Ok(()) => ExitCode::SUCCESS,
        Err(e) => {
            eprintln!("error: {e}");
            ExitCode::from(e.exit_code())
        }
    }
}
