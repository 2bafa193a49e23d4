mod certify;
mod config;
mod horseshoe;
mod orbit;
mod output;

use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Parser, Subcommand};
use hyperchaos_core::certify::Certificate;

use config::{RunConfig, Settings};

#[derive(Debug, thiserror::Error)]
pub enum CliError {
    #[error("invalid configuration: {0}")]
    Config(String),
    #[error("{0}")]
    Input(String),
    #[error("check failed: {0}")]
    Failed(String),
    #[error("i/o error: {0}")]
    Io(#[from] std::io::Error),
}

impl CliError {
    fn exit_code(&self) -> u8 {
        match self {
            CliError::Failed(_) => 1,
            _ => 2,
        }
    }
}

#[derive(Parser, Debug)]
#[command(name = "hyperchaos", version, about = "Chaos certificates for symbolic shifts and the Smale horseshoe")]
struct Cli {
    /// Flat `key = value` configuration file.
    #[arg(long, global = true)]
    config: Option<PathBuf>,
    /// Output directory.
    #[arg(long, global = true)]
    out: Option<PathBuf>,
    /// Comma-separated subset of json,csv,svg.
    #[arg(long, global = true)]
    format: Option<String>,
    /// Seed for randomized suites.
    #[arg(long, global = true)]
    seed: Option<u64>,
    /// Override any configuration key.
    #[arg(long = "set", value_name = "KEY=VALUE", global = true)]
    set: Vec<String>,
    /// Re-verify certificate files and exit.
    #[arg(long, value_name = "FILE", num_args = 1..)]
    verify: Vec<PathBuf>,
    #[command(subcommand)]
    command: Option<Command>,
}

#[derive(Subcommand, Debug)]
enum Command {
    /// Run the certification suite and write one certificate per check.
    Certify,
    /// Emit horseshoe rectangles and condition reports.
    Horseshoe,
    /// Write the orbit of a sequence or plane point as CSV.
    Orbit {
        /// periodic:<word>, universal, universal:<past block>,
        /// padded:<cylinder>:<pad>, eventual:<left>/<center>/<right>/<start>, point:<x>,<y>
        descriptor: String,
        #[arg(long, default_value_t = 100)]
        steps: u64,
    },
}

fn settings(cli: &Cli) -> Result<RunConfig, CliError> {
    let mut s = Settings::default();
    if let Some(path) = &cli.config {
        s.load_file(path)?;
    }
    if let Some(out) = &cli.out {
        s.set("out", &out.to_string_lossy())?;
    }
    if let Some(format) = &cli.format {
        s.set("format", format)?;
    }
    if let Some(seed) = cli.seed {
        s.set("seed", &seed.to_string())?;
    }
    for assignment in &cli.set {
        s.assign(assignment)?;
    }
    s.build()
}

fn verify_files(paths: &[PathBuf]) -> Result<(), CliError> {
    let mut failures = Vec::new();
    for path in paths {
        let text = std::fs::read_to_string(path)?;
        let cert: Certificate = serde_json::from_str(&text)
            .map_err(|e| CliError::Input(format!("{}: not a certificate: {e}", path.display())))?;
        match cert.verify() {
            Ok(()) => println!("ok        {:<22} {}", cert.kind(), path.display()),
            Err(e) => {
                println!("rejected  {:<22} {}: {e}", cert.kind(), path.display());
                failures.push(path.display().to_string());
            }
        }
    }
    if failures.is_empty() {
        Ok(())
    } else {
        Err(CliError::Failed(format!("rejected certificates: {}", failures.join(", "))))
    }
}

fn run(cli: Cli) -> Result<(), CliError> {
    if !cli.verify.is_empty() {
        return verify_files(&cli.verify);
    }
    let Some(command) = &cli.command else {
        return Err(CliError::Input("no command given; try --help".into()));
    };
    let config = settings(&cli)?;
    match command {
        Command::Certify => certify::run(&config),
        Command::Horseshoe => horseshoe::run(&config),
        Command::Orbit { descriptor, steps } => orbit::run(&config, descriptor, *steps),
    }
}

fn main() -> ExitCode {
    match run(Cli::parse()) {
        Ok(()) => ExitCode::SUCCESS,
        Err(e) => {
            eprintln!("error: {e}");
            ExitCode::from(e.exit_code())
        }
    }
}
