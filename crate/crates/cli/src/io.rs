//! File formats and argument parsing shared by the subcommands.
//!
//! Complex numbers are `[re, im]` pairs throughout.

use std::fs;
use std::path::{Path, PathBuf};

use purimetrics_core::bloch::BlochVector;
use purimetrics_core::{BipartitePureState, ComplexMatrix, Spectrum, Tolerances, C64};
use serde::{Deserialize, Serialize};

/// Spectra given on the command line may miss unit sum by this much.
pub const SPECTRUM_SUM_SLACK: f64 = 1e-6;

/// Environment variable holding a uniform tolerance override.
pub const TOLERANCE_ENV: &str = "PURIMETRICS_TOL";

#[derive(Debug, thiserror::Error)]
pub enum CliError {
    #[error(transparent)]
    Domain(#[from] purimetrics_core::Error),
    #[error("{path}: {source}")]
    Io {
        path: PathBuf,
        source: std::io::Error,
    },
    #[error("{path}: {source}")]
    Json {
        path: PathBuf,
        source: serde_json::Error,
    },
    #[error("{0}")]
    Input(String),
    #[error("writing output: {0}")]
    Output(#[from] std::io::Error),
    #[error("writing CSV: {0}")]
    Csv(#[from] csv::Error),
}

pub type CliResult<T> = Result<T, CliError>;

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct MatrixFile {
    pub dim: usize,
    pub entries: Vec<Vec<[f64; 2]>>,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct BlochFile {
    pub dim: usize,
    pub r: Vec<f64>,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct StateFile {
    pub dims: [usize; 2],
    pub amplitudes: Vec<Vec<[f64; 2]>>,
}

fn to_c64(rows: &[Vec<[f64; 2]>]) -> Vec<Vec<C64>> {
    rows.iter()
        .map(|row| row.iter().map(|&[re, im]| C64::new(re, im)).collect())
        .collect()
}

fn from_c64(rows: Vec<Vec<C64>>) -> Vec<Vec<[f64; 2]>> {
    rows.into_iter()
        .map(|row| row.into_iter().map(|z| [z.re, z.im]).collect())
        .collect()
}

impl MatrixFile {
    pub fn from_matrix(m: &ComplexMatrix) -> Self {
        Self {
            dim: m.dim(),
            entries: from_c64(m.rows()),
        }
    }

    pub fn to_matrix(&self) -> CliResult<ComplexMatrix> {
        if self.entries.len() != self.dim {
            return Err(CliError::Input(format!(
                "matrix declares dim {} but has {} rows",
                self.dim,
                self.entries.len()
            )));
        }
        Ok(ComplexMatrix::from_rows(&to_c64(&self.entries))?)
    }
}

impl BlochFile {
    pub fn to_bloch(&self) -> CliResult<BlochVector> {
        Ok(BlochVector::new(self.dim, self.r.clone())?)
    }
}

impl StateFile {
    pub fn to_state(&self) -> CliResult<BipartitePureState> {
        let [d_a, d_b] = self.dims;
        if self.amplitudes.len() != d_a {
            return Err(CliError::Input(format!(
                "state declares d_A = {d_a} but has {} rows",
                self.amplitudes.len()
            )));
        }
        if let Some((i, row)) = self
            .amplitudes
            .iter()
            .enumerate()
            .find(|(_, r)| r.len() != d_b)
        {
            return Err(CliError::Input(format!(
                "row {i} of the state has {} amplitudes, expected d_B = {d_b}",
                row.len()
            )));
        }
        Ok(BipartitePureState::from_grid(&to_c64(&self.amplitudes))?)
    }
}

pub fn read_json<T: for<'de> Deserialize<'de>>(path: &Path) -> CliResult<T> {
    let text = fs::read_to_string(path).map_err(|source| CliError::Io {
        path: path.to_path_buf(),
        source,
    })?;
    serde_json::from_str(&text).map_err(|source| CliError::Json {
        path: path.to_path_buf(),
        source,
    })
}

/// Comma-separated reals, as given to `--spectrum` and `--stokes`.
pub fn parse_reals(text: &str) -> Result<Vec<f64>, String> {
    text.split(',')
        .map(|t| {
            let t = t.trim();
            t.parse::<f64>()
                .ok()
                .filter(|v| v.is_finite())
                .ok_or_else(|| format!("'{t}' is not a finite number"))
        })
        .collect()
}

/// Sorts descending and rescales to unit sum when the sum is within
/// [`SPECTRUM_SUM_SLACK`] of one.
pub fn spectrum_from_input(values: &[f64], tol: &Tolerances) -> CliResult<Spectrum> {
    let sum: f64 = values.iter().sum();
    if (sum - 1.0).abs() > SPECTRUM_SUM_SLACK {
        return Err(CliError::Input(format!(
            "spectrum sums to {sum}, expected 1 within {SPECTRUM_SUM_SLACK}"
        )));
    }
    let mut v: Vec<f64> = values.iter().map(|x| x / sum).collect();
    v.sort_by(|a, b| b.total_cmp(a));
    Ok(Spectrum::new(v, tol)?)
}

/// `start:stop:step`, inclusive of both ends.
pub fn parse_grid(text: &str) -> Result<Vec<f64>, String> {
    let parts = parse_reals(&text.replace(':', ","))?;
    let [start, stop, step] = parts[..] else {
        return Err(format!("grid '{text}' is not start:stop:step"));
    };
    if step <= 0.0 || stop < start {
        return Err(format!("grid '{text}' needs start <= stop and step > 0"));
    }
    let count = ((stop - start) / step + 1e-9).floor() as usize + 1;
    Ok((0..count)
        .map(|k| {
            // snap to 12 decimals so 0.1 steps print as 0.3, not 0.30000000000000004
            let p = (start + step * k as f64).min(stop);
            (p * 1e12).round() / 1e12
        })
        .collect())
}

/// Reads [`TOLERANCE_ENV`]; unset means the defaults.
pub fn tolerances_from_env() -> Result<Tolerances, String> {
    match std::env::var(TOLERANCE_ENV) {
        Err(_) => Ok(Tolerances::default()),
        Ok(text) => match text.trim().parse::<f64>() {
            Ok(t) if t > 0.0 && t.is_finite() => Ok(Tolerances::uniform(t)),
            _ => Err(format!("{TOLERANCE_ENV}='{text}' is not a positive number")),
        },
    }
}
