use std::collections::BTreeMap;
use std::io::Write;
use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand};
use sparsetri::bench::{error_exit_code, parse_pairs, run_command, ExperimentConfig};
use sparsetri::Error;

/// Query-ledgered triangle finding: runs, scaling sweeps, verification
/// suites and the exponent curve.
#[derive(Parser)]
#[command(name = "sparsetri", version)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Run the pipeline on generated (or given) graphs and print CSV rows.
    Run(Flags),
    /// Fit log-log slopes of the mean total charge over a range of n.
    Sweep(Flags),
    /// Run the randomized verification suites.
    Verify(Flags),
    /// Solve the exponent curve and check the closed-form parameters.
    Optimize(Flags),
    /// Write a generated graph as an edge list.
    Generate(Flags),
}

/// Every flag overrides the config-file key of the same name.
#[derive(Args, Default)]
struct Flags {
    /// Flat `key = value` config file.
    #[arg(long)]
    config: Option<PathBuf>,
    /// Vertex count: `256`, `64,128` or a doubling range `64..2048`.
    #[arg(long)]
    n: Option<String>,
    /// Sparsity exponent(s), comma separated.
    #[arg(long)]
    ell: Option<String>,
    #[arg(long)]
    trials: Option<String>,
    /// Falls back to `QTRI_SEED`, then 0.
    #[arg(long)]
    seed: Option<String>,
    #[arg(long)]
    plan_file: Option<String>,
    #[arg(long)]
    out: Option<String>,
    #[arg(long)]
    grid_step: Option<String>,
    /// `gnm`, `skewed:<exponent>` or `c5-blowup`.
    #[arg(long)]
    family: Option<String>,
    /// Plant a triangle (`true` or `false`).
    #[arg(long, num_args = 0..=1, default_missing_value = "true")]
    planted: Option<String>,
    /// Edge-list file to run on instead of a generated graph.
    #[arg(long)]
    graph: Option<String>,
    #[arg(long)]
    sample_scale: Option<String>,
}

impl Flags {
    fn pairs(&self) -> BTreeMap<String, String> {
        let all = [
            ("n", &self.n),
            ("ell", &self.ell),
            ("trials", &self.trials),
            ("seed", &self.seed),
            ("plan_file", &self.plan_file),
            ("out", &self.out),
            ("grid_step", &self.grid_step),
            ("family", &self.family),
            ("planted", &self.planted),
            ("graph", &self.graph),
            ("sample_scale", &self.sample_scale),
        ];
        all.into_iter()
            .filter_map(|(k, v)| v.clone().map(|v| (k.to_string(), v)))
            .collect()
    }
}

fn build_config(mode: &str, flags: &Flags) -> Result<ExperimentConfig, Error> {
    let mut pairs = match &flags.config {
        Some(p) => {
            let text = std::fs::read_to_string(p)
                .map_err(|e| Error::Config(format!("cannot read config {}: {e}", p.display())))?;
            parse_pairs(&text)?
        }
        None => BTreeMap::new(),
    };
    if !pairs.contains_key("seed") {
        if let Ok(s) = std::env::var("QTRI_SEED") {
            pairs.insert("seed".into(), s);
        }
    }
    pairs.extend(flags.pairs());
    pairs.insert("mode".into(), mode.into());
    ExperimentConfig::from_pairs(&pairs)
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    let (mode, flags) = match &cli.command {
        Command::Run(f) => ("run", f),
        Command::Sweep(f) => ("sweep", f),
        Command::Verify(f) => ("verify", f),
        Command::Optimize(f) => ("optimize", f),
        Command::Generate(f) => ("generate", f),
    };
    let stdout = std::io::stdout();
    let mut out = stdout.lock();
    let result = build_config(mode, flags).and_then(|cfg| run_command(&cfg, &mut out));
    let _ = out.flush();
    match result {
        Ok(status) => ExitCode::from(status.exit_code() as u8),
        Err(e) => {
            eprintln!("error: {e}");
            ExitCode::from(error_exit_code(&e) as u8)
        }
    }
}
