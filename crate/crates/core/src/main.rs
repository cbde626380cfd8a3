use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand};

use nubound::config::parse_config;
use nubound::report;
use nubound::Error;

#[derive(Parser)]
#[command(
    name = "nubound",
    version,
    about = "Planar ring-shaped potential bound states: closed forms, NU engine, and finite-difference cross-checks"
)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Args)]
struct CommonArgs {
    /// Path to the `key = value` run configuration.
    #[arg(long)]
    config: PathBuf,
    /// Write output here instead of standard output.
    #[arg(long)]
    out: Option<PathBuf>,
}

#[derive(Subcommand)]
enum Command {
    /// Tabulate M^2 and energy columns as CSV.
    Spectrum {
        #[command(flatten)]
        common: CommonArgs,
    },
    /// Sample one bound state on a grid as CSV.
    Wavefunction {
        #[command(flatten)]
        common: CommonArgs,
        /// Angular quantum number.
        #[arg(long, default_value_t = 0)]
        n0: u32,
        /// Radial quantum number.
        #[arg(long, default_value_t = 0)]
        nr: u32,
        /// Grid as `nr,nphi` (polar) or `nx,ny` (cartesian).
        #[arg(long, default_value = "32,64", value_parser = parse_grid)]
        grid: (usize, usize),
        /// Sample on a cartesian grid instead of a polar one.
        #[arg(long)]
        cartesian: bool,
    },
    /// Run the three-way verification and emit the key-value report.
    Verify {
        #[command(flatten)]
        common: CommonArgs,
    },
}

fn parse_grid(s: &str) -> Result<(usize, usize), String> {
    let (a, b) = s
        .split_once(',')
        .ok_or_else(|| format!("expected `na,nb`, got `{s}`"))?;
    let na = a
        .trim()
        .parse()
        .map_err(|e| format!("bad grid dimension `{a}`: {e}"))?;
    let nb = b
        .trim()
        .parse()
        .map_err(|e| format!("bad grid dimension `{b}`: {e}"))?;
    if na == 0 || nb == 0 {
        return Err("grid dimensions must be positive".into());
    }
    Ok((na, nb))
}

fn emit(common: &CommonArgs, text: &str) -> Result<(), Error> {
    match &common.out {
        Some(path) => std::fs::write(path, text)?,
        None => print!("{text}"),
    }
    Ok(())
}

fn exit_code_for(err: &Error) -> ExitCode {
    match err {
        Error::Config { .. } | Error::Io(_) => ExitCode::from(2),
        _ => ExitCode::from(3),
    }
}

fn run() -> Result<ExitCode, Error> {
    match Cli::parse().command {
        Command::Spectrum { common } => {
            let (cfg, _) = parse_config(&common.config)?;
            let rows = report::spectrum_rows(&cfg)?;
            emit(&common, &report::render_spectrum_csv(&rows))?;
            Ok(ExitCode::SUCCESS)
        }
        Command::Wavefunction {
            common,
            n0,
            nr,
            grid,
            cartesian,
        } => {
            let (cfg, _) = parse_config(&common.config)?;
            let gf = report::wavefunction_grid(&cfg, n0, nr, grid, cartesian)?;
            emit(&common, &report::render_grid_csv(&gf))?;
            Ok(ExitCode::SUCCESS)
        }
        Command::Verify { common } => {
            let (cfg, raw) = parse_config(&common.config)?;
            let verdict = report::run_verify(&cfg, &raw)?;
            emit(&common, &verdict.render())?;
            Ok(if verdict.passed() {
                ExitCode::SUCCESS
            } else {
                ExitCode::from(1)
            })
        }
    }
}

fn main() -> ExitCode {
    match run() {
        Ok(code) => code,
        Err(err) => {
            eprintln!("nubound: {err}");
            exit_code_for(&err)
        }
    }
}
