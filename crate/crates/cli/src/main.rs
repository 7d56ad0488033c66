use std::process::ExitCode;

use anyhow::Result;
use clap::Parser;
use dqw_cli::{commands, validate, Cli, Command, Output};

fn run(cli: Cli) -> Result<ExitCode> {
    match cli.command {
        Command::Levels { params, output, levels } => {
            commands::levels(&params.resolve()?, levels)?.emit(&output)?;
        }
        Command::Sweep { params, output, sweep } => {
            let Output { table, warnings } = commands::sweep(params.raw()?, &sweep)?;
            for w in warnings {
                eprintln!("warning: {w}");
            }
            table.emit(&output)?;
        }
        Command::Wavefunction { params, output, level, samples, pad_nm } => {
            commands::wavefunction(&params.resolve()?, level, samples, pad_nm)?.emit(&output)?;
        }
        Command::Dipole { params, output, transition } => {
            commands::dipole(&params.resolve()?, transition)?.emit(&output)?;
        }
        Command::Validate { params, corrupt_constant } => {
            let report = validate::run(&params.resolve()?, corrupt_constant)?;
            println!("{report}");
            if !report.passed() {
                return Ok(ExitCode::FAILURE);
            }
        }
    }
    Ok(ExitCode::SUCCESS)
}

fn main() -> ExitCode {
    match run(Cli::parse()) {
        Ok(code) => code,
        Err(e) => {
            eprintln!("error: {e:#}");
            ExitCode::from(2)
        }
    }
}
