use std::io::stdout;
use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand};
use log::info;
use qunaught::cli::{run_command, write_artifacts, Command, RunConfig};

/// Breeding binomial code states into GKP qunaught states.
#[derive(Parser)]
#[command(name = "qunaught", version)]
struct Cli {
    #[command(subcommand)]
    command: Cmd,
}

#[derive(Subcommand)]
enum Cmd {
    /// Outcome distribution of the first measurement, or of the second given `--condition`.
    Distribution(Flags),
    /// Post-selected chain, one row per iteration count.
    Chain(Flags),
    /// Every outcome sequence of two iterations with cumulative curves.
    Enumerate(Flags),
    /// Fidelity against iterations over binomial inputs and target widths.
    Sweep(Flags),
    /// Wigner grid and position density of one state.
    Wigner(Flags),
}

/// Every flag overrides the same key from `--config`.
#[derive(Args)]
struct Flags {
    /// Flat key=value file.
    #[arg(long)]
    config: Option<PathBuf>,
    #[arg(long)]
    dim: Option<String>,
    #[arg(long)]
    delta_target: Option<String>,
    /// Binomial rotation order N.
    #[arg(long = "n")]
    n: Option<String>,
    /// Binomial truncation K.
    #[arg(long = "k")]
    k: Option<String>,
    /// Measurement axes, e.g. qpqp.
    #[arg(long)]
    schedule: Option<String>,
    /// Comma-separated indices or labels (C, S1, S2, S, mirror-C, ...).
    #[arg(long)]
    postselect: Option<String>,
    #[arg(long)]
    t_max: Option<String>,
    /// csv or json.
    #[arg(long)]
    output_format: Option<String>,
    /// File, or directory when a command writes several files. Default: stdout.
    #[arg(long, visible_alias = "output")]
    output_path: Option<String>,
    #[arg(long)]
    parallelism: Option<String>,
    /// Two first-level outcomes, e.g. 24,24 or C,S1.
    #[arg(long)]
    condition: Option<String>,
    #[arg(long)]
    max_iterations: Option<String>,
    #[arg(long)]
    n_list: Option<String>,
    #[arg(long)]
    k_list: Option<String>,
    #[arg(long)]
    sweep_deltas: Option<String>,
    /// input, target or chain.
    #[arg(long)]
    state: Option<String>,
    #[arg(long, allow_hyphen_values = true)]
    grid_min: Option<String>,
    #[arg(long, allow_hyphen_values = true)]
    grid_max: Option<String>,
    #[arg(long)]
    grid_points: Option<String>,
    #[arg(long)]
    max_leaves: Option<String>,
}

impl Flags {
    fn resolve(&self) -> qunaught::Result<RunConfig> {
        let mut cfg = match &self.config {
            Some(path) => RunConfig::from_file(path)?,
            None => RunConfig::default(),
        };
        let pairs = [
            ("dim", &self.dim),
            ("delta-target", &self.delta_target),
            ("n", &self.n),
            ("k", &self.k),
            ("schedule", &self.schedule),
            ("postselect", &self.postselect),
            ("t-max", &self.t_max),
            ("output-format", &self.output_format),
            ("output-path", &self.output_path),
            ("parallelism", &self.parallelism),
            ("condition", &self.condition),
            ("max-iterations", &self.max_iterations),
            ("n-list", &self.n_list),
            ("k-list", &self.k_list),
            ("sweep-deltas", &self.sweep_deltas),
            ("state", &self.state),
            ("grid-min", &self.grid_min),
            ("grid-max", &self.grid_max),
            ("grid-points", &self.grid_points),
            ("max-leaves", &self.max_leaves),
        ];
        for (key, value) in pairs {
            if let Some(v) = value {
                cfg.set(key, v)?;
            }
        }
        Ok(cfg)
    }
}

fn run(cli: Cli) -> qunaught::Result<()> {
    let (command, flags) = match &cli.command {
        Cmd::Distribution(f) => (Command::Distribution, f),
        Cmd::Chain(f) => (Command::Chain, f),
        Cmd::Enumerate(f) => (Command::Enumerate, f),
        Cmd::Sweep(f) => (Command::Sweep, f),
        Cmd::Wigner(f) => (Command::Wigner, f),
    };
    let cfg = flags.resolve()?;
    let artifacts = run_command(command, &cfg)?;
    for path in write_artifacts(&artifacts, cfg.output_path.as_deref(), &mut stdout().lock())? {
        info!("wrote {}", path.display());
    }
    Ok(())
}

fn main() -> ExitCode {
    env_logger::Builder::from_env(env_logger::Env::default().default_filter_or("warn")).init();
    match run(Cli::parse()) {
        Ok(()) => ExitCode::SUCCESS,
        Err(e) => {
            eprintln!("error: {e}");
            ExitCode::from(e.exit_code() as u8)
        }
    }
}
