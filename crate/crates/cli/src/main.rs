mod args;
mod commands;
mod golden;
mod report;

use std::io::Write;
use std::process::ExitCode;

use clap::Parser;

use args::{Cli, Command};
use commands::{CliError, CliResult, Ctx};

fn write_output(ctx: &Ctx, text: &str) -> CliResult<()> {
    match &ctx.global.out {
        Some(path) => std::fs::write(path, text)?,
        None => std::io::stdout().write_all(text.as_bytes())?,
    }
    Ok(())
}

/// Exit status: 0 ok, 2 no convergence, 3 a golden check failed.
fn run(cli: Cli, command: String) -> CliResult<u8> {
    let ctx = Ctx {
        global: cli.global,
        command,
    };
    let report = match &cli.command {
        Command::Region { action } => commands::region::run(&ctx, action)?,
        Command::Witness(args) => commands::witness::run(&ctx, args)?,
        Command::State { action } => commands::state::run(&ctx, action)?,
        Command::Decompose(args) => commands::witness::run_decompose(&ctx, args)?,
        Command::Reproduce { section } => commands::reproduce::run(&ctx, *section)?,
        Command::Plotdata(args) => {
            let plot = commands::plotdata::run(&ctx, args)?;
            write_output(&ctx, &plot.csv)?;
            if plot.violations > 0 {
                eprintln!("wf: {} samples lie beyond 3(p1+p2)+p3 = 1", plot.violations);
                return Ok(3);
            }
            return Ok(0);
        }
    };
    write_output(&ctx, &report.render())?;
    Ok(if report.all_pass() { 0 } else { 3 })
}

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(cli) => cli,
        Err(e) => {
            let _ = e.print();
            return ExitCode::from(if e.use_stderr() { 1 } else { 0 });
        }
    };
    let command = std::env::args().skip(1).collect::<Vec<_>>().join(" ");
    match run(cli, command) {
        Ok(code) => ExitCode::from(code),
        Err(e) => {
            eprintln!("wf: {e}");
            ExitCode::from(CliError::exit_code(&e))
        }
    }
}
