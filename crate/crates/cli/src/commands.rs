use std::fs::File;
use std::io::Write;
use std::path::Path;

use purimetrics_core::analysis::{default_grid, sweep};
use purimetrics_core::bloch::{classify_bloch, matrix_from_stokes, stokes_from_matrix, su_n_basis};
use purimetrics_core::density::normalize_polarization;
use purimetrics_core::entanglement::entanglement;
use purimetrics_core::{
    DensityMatrix, DepolarizingChannel, MeasureId, PurityReport, Spectrum, StokesVector, Tolerances,
};
use serde::{Deserialize, Serialize};

use crate::args::{Command, StateInput};
use crate::io::{
    read_json, spectrum_from_input, BlochFile, CliError, CliResult, MatrixFile, StateFile,
};

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct ReportJson {
    pub dim: usize,
    pub spectrum: Vec<f64>,
    pub pi_s: f64,
    pub pi_v: f64,
    /// B_2 ..= B_N
    pub barakat: Vec<f64>,
    pub pi_b: f64,
    pub pi_edpw: f64,
    pub pi_sskf: f64,
    pub xy: Option<[f64; 2]>,
}

impl ReportJson {
    fn new(spectrum: &Spectrum) -> Self {
        let r = PurityReport::from_spectrum(spectrum);
        Self {
            dim: r.dim,
            spectrum: spectrum.values().to_vec(),
            pi_s: r.pi_s,
            pi_v: r.pi_v,
            barakat: r.barakat,
            pi_b: r.pi_b,
            pi_edpw: r.pi_edpw,
            pi_sskf: r.pi_sskf,
            xy: r.xy.map(|(x, y)| [x, y]),
        }
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct TableColumn {
    pub label: String,
    pub spectrum: Vec<f64>,
    pub pi_sskf: f64,
    pub pi_edpw: f64,
    pub pi_b: f64,
    pub pi_v: f64,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct MeasureValue {
    pub measure: String,
    pub value: f64,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct ClassJson {
    pub dim: usize,
    pub class: String,
    pub min_eigenvalue: f64,
    pub bloch_norm: f64,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct StokesJson {
    pub s: [f64; 4],
    pub degree_of_polarization: f64,
}

#[derive(Debug, Serialize)]
struct ChannelRow {
    p: f64,
    measure: &'static str,
    value: f64,
    ratio: Option<f64>,
}

pub fn run(command: Command, tol: &Tolerances, out: &mut dyn Write) -> CliResult<()> {
    match command {
        Command::Report {
            input,
            normalize,
            json,
        } => report(&input, normalize, json, tol, out),
        Command::Table1 { json } => table1(json, out),
        Command::Sweep {
            lambda1,
            points,
            out: path,
        } => {
            let rows = sweep(lambda1, &default_grid(lambda1, points))?;
            with_output(path.as_deref(), out, |w| {
                let mut csv = csv::Writer::from_writer(w);
                csv.write_record([
                    "lambda1", "lambda2", "lambda3", "pi_b", "pi_sskf", "pi_v", "pi_edpw",
                ])?;
                for r in rows {
                    csv.serialize((
                        r.lambda1, r.lambda2, r.lambda3, r.pi_b, r.pi_sskf, r.pi_v, r.pi_edpw,
                    ))?;
                }
                csv.flush()?;
                Ok(())
            })
        }
        Command::Channel {
            input,
            p,
            grid,
            measure,
            out: path,
            ..
        } => {
            let rho = load_state(&input, false, tol)?;
            let grid = p.map_or(grid.0, |p| vec![p]);
            let measures = measure.map_or(MeasureId::ALL.to_vec(), |m| vec![m]);
            let rows = channel_rows(&rho, &grid, &measures)?;
            with_output(path.as_deref(), out, |w| {
                let mut csv = csv::Writer::from_writer(w);
                for row in rows {
                    csv.serialize(row)?;
                }
                csv.flush()?;
                Ok(())
            })
        }
        Command::Entangle {
            state,
            measure,
            json,
        } => {
            let psi = read_json::<StateFile>(&state)?.to_state()?;
            let measures = measure.map_or(MeasureId::ALL.to_vec(), |m| vec![m]);
            let values = measures
                .into_iter()
                .map(|m| {
                    Ok(MeasureValue {
                        measure: m.as_str().to_string(),
                        value: entanglement(&psi, m)?,
                    })
                })
                .collect::<CliResult<Vec<_>>>()?;
            if json {
                write_json(out, &values)
            } else {
                for v in values {
                    writeln!(out, "{:<13} {}", v.measure, real(v.value))?;
                }
                Ok(())
            }
        }
        Command::Basis { dim } => {
            let basis = su_n_basis(dim)?;
            let files: Vec<MatrixFile> = basis
                .matrices()
                .iter()
                .map(MatrixFile::from_matrix)
                .collect();
            write_json(out, &files)
        }
        Command::Classify { bloch, json } => {
            let r = read_json::<BlochFile>(&bloch)?.to_bloch()?;
            let c = classify_bloch(&r, &su_n_basis(r.dim())?)?;
            let report = ClassJson {
                dim: r.dim(),
                class: c.class.as_str().to_string(),
                min_eigenvalue: c.min_eigenvalue,
                bloch_norm: c.bloch_norm,
            };
            if json {
                write_json(out, &report)
            } else {
                writeln!(out, "class          {}", report.class)?;
                writeln!(out, "min_eigenvalue {}", real(report.min_eigenvalue))?;
                writeln!(out, "bloch_norm     {}", real(report.bloch_norm))?;
                Ok(())
            }
        }
        Command::Stokes {
            matrix,
            stokes,
            json,
        } => match (matrix, stokes) {
            (Some(path), _) => {
                let phi = read_json::<MatrixFile>(&path)?.to_matrix()?;
                let s = stokes_from_matrix(&phi, tol)?;
                let report = StokesJson {
                    s: s.s,
                    degree_of_polarization: s.degree_of_polarization(),
                };
                if json {
                    write_json(out, &report)
                } else {
                    for (k, s) in report.s.iter().enumerate() {
                        writeln!(out, "S{k} {}", real(*s))?;
                    }
                    writeln!(
                        out,
                        "degree_of_polarization {}",
                        real(report.degree_of_polarization)
                    )?;
                    Ok(())
                }
            }
            (None, Some(values)) => {
                let s: [f64; 4] = values.0.try_into().map_err(|v: Vec<f64>| {
                    CliError::Input(format!("--stokes needs 4 values, got {}", v.len()))
                })?;
                let phi = matrix_from_stokes(&StokesVector::new(s)?);
                write_json(out, &MatrixFile::from_matrix(&phi))
            }
            (None, None) => Err(CliError::Input(
                "one of --matrix or --stokes is required".into(),
            )),
        },
    }
}

fn load_state(input: &StateInput, normalize: bool, tol: &Tolerances) -> CliResult<DensityMatrix> {
    match (&input.matrix, &input.spectrum) {
        (Some(path), _) => {
            let m = read_json::<MatrixFile>(path)?.to_matrix()?;
            Ok(if normalize {
                normalize_polarization(&m, tol)?
            } else {
                DensityMatrix::new(m, tol)?
            })
        }
        (None, Some(values)) => Ok(DensityMatrix::from_spectrum(&spectrum_from_input(
            &values.0, tol,
        )?)?),
        (None, None) => Err(CliError::Input(
            "one of --matrix or --spectrum is required".into(),
        )),
    }
}

fn report(
    input: &StateInput,
    normalize: bool,
    json: bool,
    tol: &Tolerances,
    out: &mut dyn Write,
) -> CliResult<()> {
    let spectrum = match (&input.matrix, &input.spectrum) {
        (None, Some(values)) => spectrum_from_input(&values.0, tol)?,
        _ => load_state(input, normalize, tol)?.spectrum(),
    };
    let r = ReportJson::new(&spectrum);
    if json {
        return write_json(out, &r);
    }
    let join = |v: &[f64]| v.iter().map(|&x| real(x)).collect::<Vec<_>>().join(", ");
    writeln!(out, "dim          {}", r.dim)?;
    writeln!(out, "spectrum     {}", join(&r.spectrum))?;
    writeln!(out, "pi_s         {}", real(r.pi_s))?;
    writeln!(out, "pi_v         {}", real(r.pi_v))?;
    for (k, &b) in r.barakat.iter().enumerate() {
        writeln!(out, "{:<12} {}", format!("B_{}", k + 2), real(b))?;
    }
    writeln!(out, "pi_b         {}", real(r.pi_b))?;
    writeln!(out, "pi_edpw      {}", real(r.pi_edpw))?;
    writeln!(out, "pi_sskf      {}", real(r.pi_sskf))?;
    if let Some(xy) = r.xy {
        writeln!(out, "xy           {}", join(&xy))?;
    }
    Ok(())
}

/// The six reference spectra, purest first.
pub fn reference_spectra() -> [(&'static str, [f64; 3]); 6] {
    let third = 1.0 / 3.0;
    [
        ("P", [1.0, 0.0, 0.0]),
        ("E", [0.75, 0.125, 0.125]),
        ("F", [2.0 / 3.0, 1.0 / 6.0, 1.0 / 6.0]),
        ("C", [0.5, 0.5, 0.0]),
        ("D", [0.5, 0.25, 0.25]),
        ("M", [third, third, third]),
    ]
}

fn table1(json: bool, out: &mut dyn Write) -> CliResult<()> {
    let columns = reference_spectra()
        .into_iter()
        .map(|(label, l)| {
            let s = Spectrum::from_values(&l)?;
            Ok(TableColumn {
                label: label.to_string(),
                spectrum: s.values().to_vec(),
                pi_sskf: MeasureId::Sskf.evaluate(&s),
                pi_edpw: MeasureId::Edpw.evaluate(&s),
                pi_b: MeasureId::BarakatLast.evaluate(&s),
                pi_v: MeasureId::VonNeumann.evaluate(&s),
            })
        })
        .collect::<CliResult<Vec<_>>>()?;
    if json {
        return write_json(out, &columns);
    }
    write!(out, "{:<8}", "")?;
    for c in &columns {
        write!(out, "{:>7}", c.label)?;
    }
    writeln!(out)?;
    type Getter = fn(&TableColumn) -> f64;
    let rows: [(&str, Getter); 4] = [
        ("pi_sskf", |c| c.pi_sskf),
        ("pi_edpw", |c| c.pi_edpw),
        ("pi_b", |c| c.pi_b),
        ("pi_v", |c| c.pi_v),
    ];
    for (name, get) in rows {
        write!(out, "{name:<8}")?;
        for c in &columns {
            // the +0.0 turns a rounded -0.000 into 0.000
            write!(out, "{:>7.3}", get(c) + 0.0)?;
        }
        writeln!(out)?;
    }
    Ok(())
}

fn channel_rows(
    rho: &DensityMatrix,
    grid: &[f64],
    measures: &[MeasureId],
) -> CliResult<Vec<ChannelRow>> {
    let base = rho.spectrum();
    let mut rows = Vec::with_capacity(grid.len() * measures.len());
    for &p in grid {
        let spectrum = DepolarizingChannel::new(p, rho.dim())?
            .apply(rho)?
            .spectrum();
        for &m in measures {
            let value = m.evaluate(&spectrum);
            let before = m.evaluate(&base);
            rows.push(ChannelRow {
                p,
                measure: m.as_str(),
                value,
                ratio: (before > f64::EPSILON).then(|| value / before),
            });
        }
    }
    Ok(rows)
}

/// Shortest round-trip form, switching to exponent notation below 1e-4.
fn real(v: f64) -> String {
    if v != 0.0 && v.abs() < 1e-4 {
        format!("{v:e}")
    } else {
        v.to_string()
    }
}

fn write_json<T: Serialize>(out: &mut dyn Write, value: &T) -> CliResult<()> {
    serde_json::to_writer_pretty(&mut *out, value).map_err(std::io::Error::from)?;
    writeln!(out)?;
    Ok(())
}

fn with_output(
    path: Option<&Path>,
    stdout: &mut dyn Write,
    body: impl FnOnce(&mut dyn Write) -> CliResult<()>,
) -> CliResult<()> {
    match path {
        Some(path) => {
            let mut file = File::create(path).map_err(|source| CliError::Io {
                path: path.to_path_buf(),
                source,
            })?;
            body(&mut file)
        }
        None => body(stdout),
    }
}
