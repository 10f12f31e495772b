use std::fs::File;
use std::io::{self, BufWriter, Write};
use std::process::ExitCode;

use clap::Parser;

mod commands;
mod config;
mod error;
mod output;

use config::{Cli, Params, RunConfig};
use error::CliError;

fn run(cli: Cli) -> Result<(), CliError> {
    let params = match &cli.params.config {
        Some(path) => {
            let file = Params::from_file(path)?;
            cli.params.clone().over(file)
        }
        None => cli.params.clone(),
    };
    let cfg = RunConfig::resolve(cli.command, params)?;
    let pool = rayon::ThreadPoolBuilder::new()
        .num_threads(cfg.jobs)
        .build()
        .map_err(|e| CliError::Config(format!("thread pool: {e}")))?;
    let outcome = pool.install(|| commands::run(&cfg))?;

    let mut sink: Box<dyn Write> = match &cfg.out {
        Some(path) => Box::new(BufWriter::new(File::create(path)?)),
        None => Box::new(BufWriter::new(io::stdout().lock())),
    };
    output::write_table(&cfg, &outcome.table, &mut sink)?;
    sink.flush()?;

    if outcome.failures.is_empty() {
        Ok(())
    } else {
        Err(CliError::Verification(outcome.failures.join("; ")))
    }
}

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(cli) => cli,
        Err(e) => {
            let _ = e.print();
            return ExitCode::from(if e.use_stderr() { 2 } else { 0 });
        }
    };
    match run(cli) {
        Ok(()) => ExitCode::SUCCESS,
        Err(e) => {
            eprintln!("mirror-radiance: {e}");
            ExitCode::from(e.exit_code())
        }
    }
}
