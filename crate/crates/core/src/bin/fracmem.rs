//! `fracmem <experiment> [--config FILE] [--alpha A] [--dt DT]
//! [--memory-length T] [--policy P] [--t-end TE] [--out PATH]`

use std::path::PathBuf;
use std::process::ExitCode;

use clap::Parser;
use fracmem::experiment::{run_experiment, ExperimentConfig, ExperimentKind};
use fracmem::FracError;

#[derive(Debug, Parser)]
#[command(name = "fracmem", version, about = "Accuracy and cost experiments for bounded-memory Caputo derivatives")]
struct Cli {
    /// derivative-error | order-study | diffusion | kelvin-voigt | cost-model
    experiment: String,
    /// Flat `key = value` configuration file.
    #[arg(long)]
    config: Option<PathBuf>,
    /// Order(s), comma separated.
    #[arg(long)]
    alpha: Option<String>,
    /// Base time step(s), comma separated.
    #[arg(long)]
    dt: Option<String>,
    #[arg(long = "memory-length")]
    memory_length: Option<String>,
    /// full | fixed | adaptive-present | adaptive-gl, comma separated.
    #[arg(long)]
    policy: Option<String>,
    #[arg(long = "t-end")]
    t_end: Option<String>,
    /// CSV path; several runs write `{stem}-{label}.csv`.
    #[arg(long)]
    out: Option<PathBuf>,
}

fn resolve(cli: &Cli) -> Result<ExperimentConfig, FracError> {
    let kind: ExperimentKind = cli.experiment.parse()?;
    let mut cfg = match &cli.config {
        Some(p) => ExperimentConfig::from_file(kind, p)?,
        None => ExperimentConfig::new(kind),
    };
    let flags = [
        ("alpha", &cli.alpha),
        ("dt", &cli.dt),
        ("memory_length", &cli.memory_length),
        ("policy", &cli.policy),
        ("t_end", &cli.t_end),
    ];
    for (key, value) in flags {
        if let Some(v) = value {
            cfg.set(key, v)?;
        }
    }
    if let Some(out) = &cli.out {
        cfg.out = Some(out.clone());
    }
    cfg.validate()?;
    Ok(cfg)
}

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(c) => c,
        Err(e) => {
            let _ = e.print();
            return if e.use_stderr() { ExitCode::from(2) } else { ExitCode::SUCCESS };
        }
    };
    let cfg = match resolve(&cli) {
        Ok(c) => c,
        Err(e) => {
            eprintln!("fracmem: config error: {e}");
            return ExitCode::from(2);
        }
    };
    let result = run_experiment(&cfg).and_then(|out| {
        for line in out.summary_lines() {
            println!("{line}");
        }
        if let Some(path) = &cfg.out {
            for p in out.write(path)? {
                println!("wrote {}", p.display());
            }
        }
        Ok(())
    });
    match result {
        Ok(()) => ExitCode::SUCCESS,
        Err(FracError::Config(msg)) => {
            eprintln!("fracmem: config error: {msg}");
            ExitCode::from(2)
        }
        Err(e) => {
            eprintln!("fracmem: {e}");
            ExitCode::from(1)
        }
    }
}
