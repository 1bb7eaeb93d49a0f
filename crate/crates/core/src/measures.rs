//! Purity / degree-of-polarization measures.
//!
//! Every measure is a symmetric function of the eigenvalues, equal to one on
//! `(1, 0, ..., 0)` and zero on `(1/N, ..., 1/N)`. Square-root radicands are
//! clamped at zero and results clamped to `[0, 1]`, which absorbs eigensolver
//! noise at the pure and maximally mixed ends. A one-level system has a single
//! state and every measure reports it as pure.

use alloc::string::ToString;
use alloc::vec::Vec;
use core::fmt;
use core::str::FromStr;

use crate::bloch::{bloch_from_density, BasisSet, BlochVector};
use crate::density::{DensityMatrix, Spectrum, Tolerances};
use crate::{Error, Result};

/// Eigenvalues at or below this contribute nothing to `Σ λ log λ`.
pub const LOG_ZERO_THRESHOLD: f64 = 1e-300;

/// Slack on `0 <= x <= y <= 1` for the `(x, y)` coordinates.
pub const XY_SLACK: f64 = 1e-12;

/// An eigenvalue at or below this makes `Π_b` exactly one.
pub const BARAKAT_ZERO_EIGENVALUE: f64 = 1e-14;

fn clamp_unit(v: f64) -> f64 {
    v.clamp(0.0, 1.0)
}

// N Σ(λ - 1/N)² / (N - 1), which equals (N Σλ² - 1) / (N - 1) on the simplex
// without the cancellation near the maximally mixed state.
fn unclamped_standard(values: &[f64]) -> f64 {
    let n = values.len() as f64;
    let spread: f64 = values.iter().map(|l| (l - 1.0 / n) * (l - 1.0 / n)).sum();
    n * spread / (n - 1.0)
}

/// `Π_s = (N Σλ² - 1) / (N - 1)`.
pub fn purity_standard(spectrum: &Spectrum) -> f64 {
    if spectrum.dim() == 1 {
        return 1.0;
    }
    clamp_unit(unclamped_standard(spectrum.values()))
}

/// `Π_v = 1 + Σ λ log₂ λ / log₂ N`, one minus the normalized von Neumann entropy.
pub fn purity_von_neumann(spectrum: &Spectrum) -> f64 {
    if spectrum.dim() == 1 {
        return 1.0;
    }
    let sum: f64 = spectrum
        .values()
        .iter()
        .filter(|&&l| l > LOG_ZERO_THRESHOLD)
        .map(|&l| l * libm::log2(l))
        .sum();
    clamp_unit(1.0 + sum / libm::log2(spectrum.dim() as f64))
}

/// Coefficients `C_1..C_N` of the characteristic polynomial
/// `det(ρ - λI) = λ^N - C_1 λ^{N-1} + C_2 λ^{N-2} - ... + (-1)^N C_N`,
/// i.e. the elementary symmetric polynomials of the eigenvalues.
#[derive(Debug, Clone, PartialEq)]
pub struct CharacteristicCoefficients(Vec<f64>);

impl CharacteristicCoefficients {
    /// `C_k` for `k` in `1..=N`.
    pub fn get(&self, k: usize) -> Option<f64> {
        k.checked_sub(1).and_then(|i| self.0.get(i)).copied()
    }

    /// `[C_1, ..., C_N]`.
    pub fn as_slice(&self) -> &[f64] {
        &self.0
    }
}

/// Elementary symmetric polynomials by multiplying out `Π (1 + λ_i t)` one
/// factor at a time.
pub fn characteristic_coefficients(spectrum: &Spectrum) -> CharacteristicCoefficients {
    CharacteristicCoefficients(elementary_symmetric(spectrum.values().iter().copied()))
}

// [e_1, ..., e_n]
fn elementary_symmetric(values: impl ExactSizeIterator<Item = f64>) -> Vec<f64> {
    let n = values.len();
    // e[k] holds the degree-k polynomial of the values seen so far
    let mut e = alloc::vec![0.0; n + 1];
    e[0] = 1.0;
    for (seen, v) in values.enumerate() {
        for k in (1..=seen + 1).rev() {
            e[k] += v * e[k - 1];
        }
    }
    e.remove(0);
    e
}

fn binomial(n: usize, k: usize) -> f64 {
    (0..k).fold(1.0, |acc, i| acc * (n - i) as f64 / (i + 1) as f64)
}

/// `1 - N^k C_k / binom(N, k)`, expanded in `δ_i = N λ_i - 1`.
///
/// `C_k(Nλ) = Σ_j binom(N - j, k - j) e_j(δ)` and `e_1(δ) = 0`, so the
/// radicand is `-Σ_{j>=2} binom(N - j, k - j) e_j(δ) / binom(N, k)`. This keeps
/// full relative precision near the maximally mixed state, where the direct
/// form cancels; for `k = 2` it is exactly `Σδ² / (N(N - 1)) = Π_s`.
fn barakat_radicand(spectrum: &Spectrum, k: usize) -> f64 {
    let n = spectrum.dim();
    let delta = spectrum.values().iter().map(|l| l * n as f64 - 1.0);
    let e = elementary_symmetric(delta);
    let sum: f64 = (2..=k).map(|j| binomial(n - j, k - j) * e[j - 1]).sum();
    -sum / binomial(n, k)
}

/// Barakat's `B_k = √(1 - N^k C_k / binom(N, k))` for `2 <= k <= N`.
pub fn barakat(spectrum: &Spectrum, k: usize) -> Result<f64> {
    let n = spectrum.dim();
    if k < 2 || k > n {
        return Err(Error::KOutOfRange { k, n });
    }
    if k == n {
        return Ok(purity_barakat_last(spectrum));
    }
    Ok(clamp_unit(libm::sqrt(
        barakat_radicand(spectrum, k).max(0.0),
    )))
}

/// `Π_b = B_N = √(1 - N^N λ_1 ⋯ λ_N)`. Exactly one once any eigenvalue is at
/// or below [`BARAKAT_ZERO_EIGENVALUE`].
pub fn purity_barakat_last(spectrum: &Spectrum) -> f64 {
    let n = spectrum.dim();
    if n == 1 || spectrum.smallest() <= BARAKAT_ZERO_EIGENVALUE {
        return 1.0;
    }
    clamp_unit(libm::sqrt(barakat_radicand(spectrum, n).max(0.0)))
}

/// `Π_edpw = λ_1 - λ_2`, the fully polarized power fraction.
pub fn purity_edpw(spectrum: &Spectrum) -> f64 {
    let v = spectrum.values();
    if v.len() == 1 {
        return 1.0;
    }
    clamp_unit(v[0] - v[1])
}

/// `Π_sskf = |r|`.
pub fn sskf_from_bloch(r: &BlochVector) -> f64 {
    clamp_unit(r.norm())
}

/// `Π_sskf = √((N Tr[ρ²] - 1) / (N - 1))` with `Tr[ρ²]` read off the entries.
pub fn sskf_from_density(rho: &DensityMatrix) -> f64 {
    let n = rho.dim() as f64;
    if rho.dim() == 1 {
        return 1.0;
    }
    // Tr[(ρ - I/N)²] = Tr[ρ²] - 1/N
    let m = rho.matrix();
    let mut spread = 0.0;
    for i in 0..rho.dim() {
        for j in 0..rho.dim() {
            let shift = if i == j { 1.0 / n } else { 0.0 };
            spread += (m[(i, j)] - shift).norm_sqr();
        }
    }
    let radicand = n * spread / (n - 1.0);
    clamp_unit(libm::sqrt(radicand.max(0.0)))
}

/// `Π_sskf = √Π_s` from the eigenvalues.
pub fn sskf_from_spectrum(spectrum: &Spectrum) -> f64 {
    if spectrum.dim() == 1 {
        return 1.0;
    }
    clamp_unit(libm::sqrt(unclamped_standard(spectrum.values()).max(0.0)))
}

/// The three classical expressions for the two-dimensional degree of polarization.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Polarization2dForm {
    /// `√(1 - 4 det ρ)`
    Determinant,
    /// `λ_1 - λ_2`
    Eigenvalues,
    /// `|r|`, the radius in the Poincaré / Bloch sphere
    BlochRadius,
}

/// Degree of polarization `P⁽²⁾` of a two-level state.
pub fn degree_of_polarization_2d(rho: &DensityMatrix, form: Polarization2dForm) -> Result<f64> {
    if rho.dim() != 2 {
        return Err(Error::WrongDimension {
            expected: 2,
            found: rho.dim(),
        });
    }
    Ok(match form {
        Polarization2dForm::Determinant => {
            clamp_unit(libm::sqrt((1.0 - 4.0 * rho.determinant()).max(0.0)))
        }
        Polarization2dForm::Eigenvalues => purity_edpw(&rho.spectrum()),
        Polarization2dForm::BlochRadius => {
            sskf_from_bloch(&bloch_from_density(rho, &BasisSet::stokes_pauli())?)
        }
    })
}

/// `(x, y) = (λ_1 - λ_2, 1 - 3λ_3)` for a three-level spectrum.
///
/// `x` is the rank-one power fraction and `y` the power outside the
/// unpolarized component; `y >= x` always.
pub fn xy_coordinates(spectrum: &Spectrum) -> Result<(f64, f64)> {
    if spectrum.dim() != 3 {
        return Err(Error::WrongDimension {
            expected: 3,
            found: spectrum.dim(),
        });
    }
    let v = spectrum.values();
    Ok((v[0] - v[1], 1.0 - 3.0 * v[2]))
}

fn check_xy(x: f64, y: f64) -> Result<()> {
    let ok = x.is_finite()
        && y.is_finite()
        && x >= -XY_SLACK
        && y <= 1.0 + XY_SLACK
        && x <= y + XY_SLACK;
    if ok {
        Ok(())
    } else {
        Err(Error::InvalidXY { x, y })
    }
}

/// Inverse of [`xy_coordinates`].
pub fn spectrum_from_xy(x: f64, y: f64) -> Result<Spectrum> {
    check_xy(x, y)?;
    let third = 1.0 / 3.0;
    Spectrum::new(
        alloc::vec![
            third + 0.5 * (y / 3.0 + x),
            third + 0.5 * (y / 3.0 - x),
            third - y / 3.0,
        ],
        &Tolerances::default(),
    )
}

/// `Π_sskf = ½ √(3x² + y²)`.
pub fn sskf_from_xy(x: f64, y: f64) -> Result<f64> {
    check_xy(x, y)?;
    Ok(clamp_unit(0.5 * libm::sqrt(3.0 * x * x + y * y)))
}

/// Names for the measures that can be plugged into channels and entanglement.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum MeasureId {
    Standard,
    VonNeumann,
    BarakatLast,
    Edpw,
    Sskf,
}

impl MeasureId {
    pub const ALL: [MeasureId; 5] = [
        MeasureId::Standard,
        MeasureId::VonNeumann,
        MeasureId::BarakatLast,
        MeasureId::Edpw,
        MeasureId::Sskf,
    ];

    pub fn as_str(&self) -> &'static str {
        match self {
            MeasureId::Standard => "standard",
            MeasureId::VonNeumann => "von_neumann",
            MeasureId::BarakatLast => "barakat_last",
            MeasureId::Edpw => "edpw",
            MeasureId::Sskf => "sskf",
        }
    }

    pub fn evaluate(&self, spectrum: &Spectrum) -> f64 {
        match self {
            MeasureId::Standard => purity_standard(spectrum),
            MeasureId::VonNeumann => purity_von_neumann(spectrum),
            MeasureId::BarakatLast => purity_barakat_last(spectrum),
            MeasureId::Edpw => purity_edpw(spectrum),
            MeasureId::Sskf => sskf_from_spectrum(spectrum),
        }
    }
}

impl fmt::Display for MeasureId {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.as_str())
    }
}

impl FromStr for MeasureId {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        MeasureId::ALL
            .into_iter()
            .find(|m| m.as_str() == s)
            .ok_or_else(|| Error::UnknownMeasure(s.to_string()))
    }
}

/// Every measure evaluated on one state.
#[derive(Debug, Clone, PartialEq)]
pub struct PurityReport {
    pub dim: usize,
    pub pi_s: f64,
    pub pi_v: f64,
    /// `B_k` for `k = 2..=N`.
    pub barakat: Vec<f64>,
    pub pi_b: f64,
    pub pi_edpw: f64,
    pub pi_sskf: f64,
    /// `(x, y)` coordinates, three-level states only.
    pub xy: Option<(f64, f64)>,
}

impl PurityReport {
    pub fn from_spectrum(spectrum: &Spectrum) -> Self {
        let n = spectrum.dim();
        let barakat = (2..=n)
            .map(|k| barakat(spectrum, k).expect("k in 2..=N"))
            .collect();
        Self {
            dim: n,
            pi_s: purity_standard(spectrum),
            pi_v: purity_von_neumann(spectrum),
            barakat,
            pi_b: purity_barakat_last(spectrum),
            pi_edpw: purity_edpw(spectrum),
            pi_sskf: sskf_from_spectrum(spectrum),
            xy: xy_coordinates(spectrum).ok(),
        }
    }

    pub fn get(&self, measure: MeasureId) -> f64 {
        match measure {
            MeasureId::Standard => self.pi_s,
            MeasureId::VonNeumann => self.pi_v,
            MeasureId::BarakatLast => self.pi_b,
            MeasureId::Edpw => self.pi_edpw,
            MeasureId::Sskf => self.pi_sskf,
        }
    }
}

pub fn purity_report(rho: &DensityMatrix) -> PurityReport {
    PurityReport::from_spectrum(&rho.spectrum())
}
