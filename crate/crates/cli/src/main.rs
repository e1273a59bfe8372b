//! `opfractal`: evaluate μ̂, list the spectrum, export matrices of U and run
//! the structural verification suites.

mod commands;
mod config;

use std::process::ExitCode;

use clap::{Parser, Subcommand};

use config::{GlobalArgs, RunConfig};

#[derive(Debug, Parser)]
#[command(
    name = "opfractal",
    version,
    about = "Spectra of Bernoulli convolutions and the operator-fractal U"
)]
struct Cli {
    #[command(flatten)]
    global: GlobalArgs,

    #[command(subcommand)]
    command: Command,
}

#[derive(Debug, Subcommand)]
enum Command {
    /// Evaluate μ̂(t) with a certified error bound.
    Muhat(commands::MuhatArgs),
    /// List the canonical spectrum truncated to --max-digits digits.
    Spectrum(commands::SpectrumArgs),
    /// Build the strata-major matrix of U and export it.
    Matrix(commands::MatrixArgs),
    /// Run a verification suite; exits 1 if any check fails.
    Verify(commands::VerifyArgs),
    /// Parseval partial sums of e_t over Γ or pΓ by digit length.
    Parseval(commands::ParsevalArgs),
    /// Chaos-game Monte-Carlo estimates of μ̂ against the product.
    Chaos(commands::ChaosArgs),
}

fn run(cli: Cli) -> anyhow::Result<bool> {
    let config = RunConfig::from_args(&cli.global)?;
    match cli.command {
        Command::Muhat(args) => commands::muhat(&config, &args),
        Command::Spectrum(args) => commands::spectrum(&config, &args),
        Command::Matrix(args) => commands::matrix(&config, &args),
        Command::Verify(args) => commands::verify(&config, &args),
        Command::Parseval(args) => commands::parseval(&config, &args),
        Command::Chaos(args) => commands::chaos(&config, &args),
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match run(cli) {
        Ok(true) => ExitCode::SUCCESS,
        Ok(false) => ExitCode::from(1),
        Err(err) => {
            eprintln!("error: {err:#}");
            ExitCode::from(2)
        }
    }
}
