use std::path::PathBuf;

use clap::{Args, Parser, Subcommand};
use purimetrics_core::MeasureId;

use crate::io::{parse_grid, parse_reals};

/// A comma-separated list of reals taken as one flag value.
#[derive(Debug, Clone, PartialEq)]
pub struct Reals(pub Vec<f64>);

fn reals(text: &str) -> Result<Reals, String> {
    parse_reals(text).map(Reals)
}

fn grid(text: &str) -> Result<Reals, String> {
    parse_grid(text).map(Reals)
}

#[derive(Debug, Parser)]
#[command(
    name = "purimetrics",
    version,
    about = "Purity and degree-of-polarization measures"
)]
pub struct Cli {
    #[command(subcommand)]
    pub command: Command,
}

/// A state given either as a matrix file or as its eigenvalues.
#[derive(Debug, Args)]
#[group(required = true, multiple = false)]
pub struct StateInput {
    /// Density matrix JSON: {"dim": N, "entries": [[[re, im], ...], ...]}
    #[arg(long)]
    pub matrix: Option<PathBuf>,
    /// Comma-separated eigenvalues, e.g. 0.75,0.125,0.125
    #[arg(long, value_parser = reals, allow_hyphen_values = true)]
    pub spectrum: Option<Reals>,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Every purity measure of one state
    Report {
        #[command(flatten)]
        input: StateInput,
        /// Divide a matrix by its trace first (polarization matrices)
        #[arg(long, requires = "matrix")]
        normalize: bool,
        #[arg(long)]
        json: bool,
    },
    /// Measures on the six reference spectra P, E, F, C, D, M
    Table1 {
        #[arg(long)]
        json: bool,
    },
    /// Fixed-lambda1 sweep of a three-level spectrum as CSV
    Sweep {
        #[arg(long)]
        lambda1: f64,
        #[arg(long, default_value_t = purimetrics_core::analysis::DEFAULT_SWEEP_POINTS)]
        points: usize,
        /// Output file; standard output when omitted
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Depolarizing channel: measures of the output and their ratio to the input, as CSV
    Channel {
        #[command(flatten)]
        input: StateInput,
        /// Survival probability
        #[arg(long, required_unless_present = "profile")]
        p: Option<f64>,
        /// Evaluate along --grid instead of a single --p
        #[arg(long, conflicts_with = "p")]
        profile: bool,
        #[arg(long, value_parser = grid, default_value = "0:1:0.1", requires = "profile")]
        grid: Reals,
        /// Restrict to one measure
        #[arg(long)]
        measure: Option<MeasureId>,
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Entanglement of a bipartite pure state
    Entangle {
        /// State JSON: {"dims": [dA, dB], "amplitudes": [[[re, im], ...], ...]}
        #[arg(long)]
        state: PathBuf,
        /// Restrict to one measure
        #[arg(long)]
        measure: Option<MeasureId>,
        #[arg(long)]
        json: bool,
    },
    /// Orthogonal traceless basis of dimension N as a JSON array of matrices
    Basis {
        #[arg(long)]
        dim: usize,
    },
    /// Whether a Bloch vector describes a physical state
    Classify {
        /// Bloch JSON: {"dim": N, "r": [...]}
        #[arg(long)]
        bloch: PathBuf,
        #[arg(long)]
        json: bool,
    },
    /// Convert between a 2x2 polarization matrix and its Stokes vector
    Stokes {
        #[arg(long, conflicts_with = "stokes", required_unless_present = "stokes")]
        matrix: Option<PathBuf>,
        /// S0,S1,S2,S3
        #[arg(long, value_parser = reals, allow_hyphen_values = true)]
        stokes: Option<Reals>,
        #[arg(long)]
        json: bool,
    },
}
