//! `qfourier`: audit tables, spectra, coefficient extraction, fitting runs and
//! the property demos, driven by flags and a strict JSON run config.

pub mod commands;
pub mod config;
pub mod demos;
mod output;

use std::path::PathBuf;

use clap::{Parser, Subcommand, ValueEnum};
use qudit_fourier::circuits::AnsatzKind;
use thiserror::Error;

#[derive(Debug, Error)]
pub enum CliError {
    #[error(transparent)]
    Core(#[from] qudit_fourier::Error),
    #[error("config: {0}")]
    Config(String),
    #[error("{path}: {source}")]
    Io {
        path: PathBuf,
        source: std::io::Error,
    },
}

impl CliError {
    pub fn exit_code(&self) -> i32 {
        match self {
            CliError::Core(e) if e.is_capability() => 3,
            _ => 2,
        }
    }
}

pub type CliResult<T> = std::result::Result<T, CliError>;

#[derive(Debug, Parser)]
#[command(name = "qfourier", version, about = "Fourier analysis of qudit re-uploading models")]
pub struct Cli {
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
pub enum Method {
    Analytic,
    Sampling,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
pub enum Demo {
    Collapsed,
    Product,
    Noncommuting,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Parameter count versus coefficient count, layer by layer.
    Audit {
        #[arg(long, value_parser = parse_kind)]
        kind: AnsatzKind,
        #[arg(long)]
        d: u64,
        #[arg(long)]
        m: u64,
        /// Qudits of the mixed ansatz.
        #[arg(long)]
        p: Option<u64>,
        #[arg(long)]
        lmax: u64,
        #[arg(long, default_value = "audit.csv")]
        output: PathBuf,
    },
    /// Single-feature frequency spectrum with degeneracies.
    Spectrum {
        #[arg(long)]
        d: usize,
        #[arg(long)]
        l: usize,
        /// Scale the frequencies by a rescaling factor.
        #[arg(long)]
        eta: Option<f64>,
        #[arg(long, default_value = "spectrum.csv")]
        output: PathBuf,
    },
    /// Fourier coefficients of a configured circuit.
    Extract {
        #[arg(long)]
        config: PathBuf,
        #[arg(long, value_enum, default_value_t = Method::Analytic)]
        method: Method,
        /// Run both methods and report their largest coefficient difference.
        #[arg(long)]
        verify: bool,
        #[arg(long)]
        seed: Option<u64>,
        #[arg(long, default_value = "series.json")]
        output: PathBuf,
    },
    /// Train a circuit on a target and write result, prediction grid and trace.
    Fit {
        #[arg(long)]
        config: PathBuf,
        #[arg(long)]
        seed: Option<u64>,
        /// Output directory.
        #[arg(long, default_value = "fit")]
        output: PathBuf,
    },
    /// Structural property experiments.
    Demo {
        #[arg(value_enum)]
        name: Demo,
        #[arg(long, default_value_t = 0)]
        seed: u64,
        #[arg(long, default_value = "demo.json")]
        output: PathBuf,
    },
}

fn parse_kind(s: &str) -> std::result::Result<AnsatzKind, String> {
    s.parse().map_err(|e: qudit_fourier::Error| e.to_string())
}

pub fn run(cli: Cli) -> CliResult<()> {
    match cli.command {
        Command::Audit {
            kind,
            d,
            m,
            p,
            lmax,
            output,
        } => commands::audit(kind, d, m, p, lmax, &output),
        Command::Spectrum { d, l, eta, output } => commands::spectrum(d, l, eta, &output),
        Command::Extract {
            config,
            method,
            verify,
            seed,
            output,
        } => commands::extract(&config, method, verify, seed, &output),
        Command::Fit { config, seed, output } => commands::fit(&config, seed, &output),
        Command::Demo { name, seed, output } => demos::run(name, seed, &output),
    }
}
