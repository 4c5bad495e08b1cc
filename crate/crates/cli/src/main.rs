use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand};

use pfield_cli::config::{load, manifest_path};
use pfield_cli::{output, resolve, run, Experiment, Overrides};

/// Capacity and spectral outage in Poisson interference fields.
#[derive(Parser)]
#[command(name = "pfield", version)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Capacity outage probability over a parameter sweep.
    CapacityOutage(Common),
    /// Spectral outage probability versus frequency, power or density.
    Sop(Common),
    /// Per-node received PSD versus frequency.
    Psd(Common),
    /// Field simulator against the stable law (KS test).
    ValidateStable(Common),
    /// Capacity closed forms against quadrature and Monte Carlo.
    ValidateCapacity(Common),
}

#[derive(Args)]
struct Common {
    /// JSON config; keys not given take the experiment defaults.
    #[arg(long)]
    config: Option<PathBuf>,
    #[arg(long)]
    seed: Option<u64>,
    /// Monte Carlo trials per point.
    #[arg(long)]
    trials: Option<usize>,
    #[arg(long)]
    workers: Option<usize>,
    /// Output CSV path.
    #[arg(long)]
    out: Option<PathBuf>,
    /// Also write an SVG chart next to the CSV.
    #[arg(long)]
    plot: bool,
}

const EXIT_CONFIG: u8 = 1;
const EXIT_VALIDATION: u8 = 2;

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(cli) => cli,
        Err(e) if !e.use_stderr() => {
            let _ = e.print();
            return ExitCode::SUCCESS;
        }
        Err(e) => {
            let text = e.to_string();
            eprintln!("{}", text.lines().next().unwrap_or("error: invalid arguments"));
            return ExitCode::from(EXIT_CONFIG);
        }
    };
    let (experiment, args) = match cli.command {
        Command::CapacityOutage(a) => (Experiment::CapacityOutage, a),
        Command::Sop(a) => (Experiment::Sop, a),
        Command::Psd(a) => (Experiment::Psd, a),
        Command::ValidateStable(a) => (Experiment::ValidateStable, a),
        Command::ValidateCapacity(a) => (Experiment::ValidateCapacity, a),
    };
    match execute(experiment, args) {
        Ok(code) => code,
        Err(e) => {
            eprintln!("error: {e:#}");
            ExitCode::from(EXIT_CONFIG)
        }
    }
}

fn execute(experiment: Experiment, args: Common) -> anyhow::Result<ExitCode> {
    let user = args.config.as_deref().map(load).transpose()?;
    let overrides = Overrides {
        seed: args.seed,
        n_trials: args.trials,
        workers: args.workers,
        output: args.out,
        plot: args.plot,
    };
    let cfg = resolve(experiment, user, &overrides)?;
    let table = run(&cfg)?;
    output::write_outputs(&cfg, &table)?;
    println!(
        "wrote {} ({} rows), manifest {}",
        cfg.output.display(),
        table.rows.len(),
        manifest_path(&cfg.output).display()
    );
    match table.validation {
        Some(false) => {
            eprintln!("validation failed; see {}", cfg.output.display());
            Ok(ExitCode::from(EXIT_VALIDATION))
        }
        _ => Ok(ExitCode::SUCCESS),
    }
}
