mod args;
mod commands;
mod error;
mod experiment;

use std::process::ExitCode;

use clap::Parser;

use args::{Cli, Command};
use commands::{Artifact, Context};
use error::CliError;

fn dispatch(cli: &Cli, ctx: &Context) -> Result<Artifact, CliError> {
    match &cli.command {
        Command::Canonicalize(a) => commands::canonicalize(a, ctx),
        Command::Compare(a) => commands::compare(a, ctx),
        Command::Generate(a) => commands::generate(a, ctx),
        Command::Count(a) => commands::count(a, ctx),
        Command::SweepCount(a) => commands::sweep_count(a, ctx),
        Command::BoxMeasure(a) => commands::box_measure_cmd(a, ctx),
        Command::NuL2(a) => commands::nu_l2(a, ctx),
        Command::LpSlopes(a) => commands::lp_slopes(a, ctx),
        Command::Run(_) => Err(CliError::config("experiment files cannot nest `run`")),
    }
}

/// Resolves `run FILE` into the command it describes. Options given on the
/// command line fill in whatever the file leaves unset.
fn resolve(cli: Cli) -> Result<Cli, CliError> {
    let Command::Run(run) = &cli.command else { return Ok(cli) };
    let argv = experiment::to_argv(&experiment::load(&run.file)?)?;
    let inner = Cli::try_parse_from(&argv)
        .map_err(|e| CliError::config(format!("{}: {}", run.file.display(), e.render())))?;
    Ok(Cli {
        threads: inner.threads.or(cli.threads),
        seed: inner.seed.or(cli.seed),
        format: inner.format.or(cli.format),
        output: inner.output.or(cli.output),
        command: inner.command,
    })
}

fn run(cli: Cli) -> Result<(), CliError> {
    let cli = resolve(cli)?;
    if cli.command.is_stochastic() && cli.seed.is_none() {
        return Err(CliError::config(format!("`{}` is stochastic and needs --seed", cli.command.name())));
    }
    if let Some(threads) = cli.threads {
        if threads == 0 {
            return Err(CliError::config("--threads must be >= 1"));
        }
        rayon::ThreadPoolBuilder::new()
            .num_threads(threads)
            .build_global()
            .map_err(|e| CliError::config(format!("thread pool: {e}")))?;
    }
    let ctx = Context {
        seed: cli.seed,
        format: cli.format,
        output: cli.output.clone(),
        budget: commands::budget_from_env()?,
    };
    let artifact = dispatch(&cli, &ctx)?;
    if !artifact.bytes.is_empty() {
        match &cli.output {
            Some(path) => std::fs::write(path, &artifact.bytes)
                .map_err(|e| CliError::io(format!("{}: {e}", path.display())))?,
            None => {
                use std::io::Write;
                let mut out = std::io::stdout().lock();
                out.write_all(&artifact.bytes)?;
                out.flush()?;
            }
        }
    }
    eprintln!("{}", artifact.summary);
    Ok(())
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match run(cli) {
        Ok(()) => ExitCode::SUCCESS,
        Err(e) => {
            eprintln!("error: {e}");
            ExitCode::from(e.code as u8)
        }
    }
}
