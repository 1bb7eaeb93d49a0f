//! Complex Hermitian matrices, validated density matrices and their spectra.

use alloc::vec;
use alloc::vec::Vec;
use core::ops::Index;

use nalgebra::{DMatrix, SymmetricEigen};

use crate::{Error, Result, C64};

/// Default bound for every numerical check on a candidate density matrix.
pub const DEFAULT_TOLERANCE: f64 = 1e-10;

const EIGEN_MAX_ITERATIONS: usize = 100_000;

/// Bounds used when deciding whether a matrix is a density matrix.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Tolerances {
    /// Largest accepted `max |M - M^H|`.
    pub hermiticity: f64,
    /// Largest accepted `|Tr M - 1|`.
    pub trace: f64,
    /// Eigenvalues in `[-psd, 0)` are clamped to zero; anything lower is rejected.
    pub psd: f64,
    /// A polarization matrix with `Tr Φ <= power` carries no light.
    pub power: f64,
}

impl Tolerances {
    pub const fn uniform(tolerance: f64) -> Self {
        Self {
            hermiticity: tolerance,
            trace: tolerance,
            psd: tolerance,
            power: tolerance,
        }
    }
}

impl Default for Tolerances {
    fn default() -> Self {
        Self::uniform(DEFAULT_TOLERANCE)
    }
}

/// Square complex matrix with finite entries.
#[derive(Debug, Clone, PartialEq)]
pub struct ComplexMatrix(DMatrix<C64>);

impl ComplexMatrix {
    pub fn new(matrix: DMatrix<C64>) -> Result<Self> {
        if matrix.nrows() != matrix.ncols() {
            return Err(Error::NotSquare {
                rows: matrix.nrows(),
                cols: matrix.ncols(),
            });
        }
        if matrix.nrows() == 0 {
            return Err(Error::InvalidDimension { min: 1, found: 0 });
        }
        for j in 0..matrix.ncols() {
            for i in 0..matrix.nrows() {
                let z = matrix[(i, j)];
                if !z.re.is_finite() || !z.im.is_finite() {
                    return Err(Error::NonFinite { row: i, col: j });
                }
            }
        }
        Ok(Self(matrix))
    }

    /// Builds a matrix from rows; every row must have as many entries as there are rows.
    pub fn from_rows(rows: &[Vec<C64>]) -> Result<Self> {
        let n = rows.len();
        for (r, row) in rows.iter().enumerate() {
            if row.len() != n {
                return Err(Error::RaggedRows {
                    row: r,
                    expected: n,
                    found: row.len(),
                });
            }
        }
        Self::new(DMatrix::from_fn(n, n, |i, j| rows[i][j]))
    }

    pub fn from_row_major(dim: usize, entries: &[C64]) -> Result<Self> {
        if entries.len() != dim * dim {
            return Err(Error::DimensionMismatch {
                expected: dim * dim,
                found: entries.len(),
            });
        }
        Self::new(DMatrix::from_row_slice(dim, dim, entries))
    }

    pub fn from_diagonal(diagonal: &[f64]) -> Result<Self> {
        let n = diagonal.len();
        Self::new(DMatrix::from_fn(n, n, |i, j| {
            if i == j {
                C64::new(diagonal[i], 0.0)
            } else {
                C64::new(0.0, 0.0)
            }
        }))
    }

    pub fn identity(dim: usize) -> Self {
        Self(DMatrix::identity(dim, dim))
    }

    pub(crate) fn from_dmatrix_unchecked(matrix: DMatrix<C64>) -> Self {
        debug_assert!(matrix.is_square());
        Self(matrix)
    }

    pub fn dim(&self) -> usize {
        self.0.nrows()
    }

    pub fn as_dmatrix(&self) -> &DMatrix<C64> {
        &self.0
    }

    pub fn into_dmatrix(self) -> DMatrix<C64> {
        self.0
    }

    /// Entries as a vector of rows.
    pub fn rows(&self) -> Vec<Vec<C64>> {
        (0..self.dim())
            .map(|i| (0..self.dim()).map(|j| self.0[(i, j)]).collect())
            .collect()
    }

    pub fn trace(&self) -> C64 {
        self.0.trace()
    }

    pub fn adjoint(&self) -> Self {
        Self(self.0.adjoint())
    }

    pub fn scale(&self, factor: f64) -> Self {
        Self(self.0.map(|z| z * factor))
    }

    pub fn add(&self, other: &Self) -> Result<Self> {
        self.check_same_dim(other)?;
        Ok(Self(&self.0 + &other.0))
    }

    pub fn mul(&self, other: &Self) -> Result<Self> {
        self.check_same_dim(other)?;
        Ok(Self(&self.0 * &other.0))
    }

    /// Kronecker product `self ⊗ other`; `self` indexes the slow (outer) factor.
    pub fn kron(&self, other: &Self) -> Self {
        Self(self.0.kronecker(&other.0))
    }

    /// `max |M_ij - conj(M_ji)|`.
    pub fn hermiticity_deviation(&self) -> f64 {
        let n = self.dim();
        let mut worst = 0.0_f64;
        for i in 0..n {
            for j in i..n {
                worst = worst.max((self.0[(i, j)] - self.0[(j, i)].conj()).norm());
            }
        }
        worst
    }

    pub fn max_abs_diff(&self, other: &Self) -> f64 {
        if self.dim() != other.dim() {
            return f64::INFINITY;
        }
        self.0
            .iter()
            .zip(other.0.iter())
            .map(|(a, b)| (a - b).norm())
            .fold(0.0, f64::max)
    }

    /// Hermitian part `(M + M^H) / 2`.
    pub fn hermitian_part(&self) -> Self {
        Self((&self.0 + self.0.adjoint()).map(|z| z * 0.5))
    }

    fn check_same_dim(&self, other: &Self) -> Result<()> {
        if self.dim() != other.dim() {
            return Err(Error::DimensionMismatch {
                expected: self.dim(),
                found: other.dim(),
            });
        }
        Ok(())
    }
}

impl Index<(usize, usize)> for ComplexMatrix {
    type Output = C64;

    fn index(&self, index: (usize, usize)) -> &C64 {
        &self.0[index]
    }
}

/// Eigenvalues sorted descending, summing to one.
#[derive(Debug, Clone, PartialEq)]
pub struct Spectrum(Vec<f64>);

impl Spectrum {
    /// Validates and sorts a list of eigenvalues.
    ///
    /// Values in `[-psd, 0)` are clamped to zero; the list is rescaled to sum
    /// to exactly one.
    pub fn new(values: Vec<f64>, tol: &Tolerances) -> Result<Self> {
        if values.is_empty() {
            return Err(Error::EmptySpectrum);
        }
        if let Some(i) = values.iter().position(|v| !v.is_finite()) {
            return Err(Error::NonFinite { row: i, col: 0 });
        }
        let sum: f64 = values.iter().sum();
        if (sum - 1.0).abs() > tol.trace {
            return Err(Error::NotUnitTrace {
                trace: sum,
                deviation: (sum - 1.0).abs(),
                tolerance: tol.trace,
            });
        }
        let min = values.iter().copied().fold(f64::INFINITY, f64::min);
        if min < -tol.psd {
            return Err(Error::NotPositive {
                min_eigenvalue: min,
                tolerance: tol.psd,
            });
        }
        let mut values = values;
        clamp_and_renormalize(&mut values);
        values.sort_by(|a, b| b.total_cmp(a));
        Ok(Self(values))
    }

    /// [`Spectrum::new`] with default tolerances.
    pub fn from_values(values: &[f64]) -> Result<Self> {
        Self::new(values.to_vec(), &Tolerances::default())
    }

    /// `(1, 0, ..., 0)`.
    pub fn pure(dim: usize) -> Self {
        let mut values = vec![0.0; dim.max(1)];
        values[0] = 1.0;
        Self(values)
    }

    /// `(1/N, ..., 1/N)`.
    pub fn maximally_mixed(dim: usize) -> Self {
        let dim = dim.max(1);
        Self(vec![1.0 / dim as f64; dim])
    }

    pub fn values(&self) -> &[f64] {
        &self.0
    }

    pub fn dim(&self) -> usize {
        self.0.len()
    }

    pub fn largest(&self) -> f64 {
        self.0[0]
    }

    pub fn smallest(&self) -> f64 {
        self.0[self.0.len() - 1]
    }
}

fn clamp_and_renormalize(values: &mut [f64]) {
    for v in values.iter_mut() {
        if *v < 0.0 {
            *v = 0.0;
        }
    }
    let sum: f64 = values.iter().sum();
    if sum > 0.0 {
        for v in values.iter_mut() {
            *v /= sum;
        }
    }
}

/// Which factor of a bipartite system survives a partial trace.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Subsystem {
    A,
    B,
}

/// Hermitian, unit-trace, positive semidefinite matrix together with its
/// eigendecomposition.
///
/// Every measure reads the same cached eigenvalues, so identities between
/// measures are checked on one decomposition.
#[derive(Debug, Clone)]
pub struct DensityMatrix {
    matrix: ComplexMatrix,
    eigenvalues: Vec<f64>,
    // column k belongs to eigenvalues[k]
    eigenvectors: DMatrix<C64>,
    tol: Tolerances,
}

/// Checks Hermiticity, unit trace and positivity, in that order.
pub fn validate_density(matrix: ComplexMatrix, tol: &Tolerances) -> Result<DensityMatrix> {
    let deviation = matrix.hermiticity_deviation();
    if deviation > tol.hermiticity {
        return Err(Error::NotHermitian {
            deviation,
            tolerance: tol.hermiticity,
        });
    }
    let trace = matrix.trace().re;
    if (trace - 1.0).abs() > tol.trace {
        return Err(Error::NotUnitTrace {
            trace,
            deviation: (trace - 1.0).abs(),
            tolerance: tol.trace,
        });
    }

    let (mut eigenvalues, eigenvectors) = hermitian_eigen(&matrix.hermitian_part())?;
    let min = eigenvalues[eigenvalues.len() - 1];
    if min < -tol.psd {
        return Err(Error::NotPositive {
            min_eigenvalue: min,
            tolerance: tol.psd,
        });
    }

    clamp_and_renormalize(&mut eigenvalues);
    let matrix = if min < 0.0 {
        ComplexMatrix::from_dmatrix_unchecked(recompose(&eigenvalues, &eigenvectors))
    } else {
        matrix
    };

    Ok(DensityMatrix {
        matrix,
        eigenvalues,
        eigenvectors,
        tol: *tol,
    })
}

/// Rescales a polarization matrix to unit trace, `ρ = Φ / Tr Φ`.
pub fn normalize_polarization(phi: &ComplexMatrix, tol: &Tolerances) -> Result<DensityMatrix> {
    let deviation = phi.hermiticity_deviation();
    if deviation > tol.hermiticity {
        return Err(Error::NotHermitian {
            deviation,
            tolerance: tol.hermiticity,
        });
    }
    let power = phi.trace().re;
    if power <= tol.power {
        return Err(Error::ZeroPower {
            power,
            tolerance: tol.power,
        });
    }
    validate_density(phi.scale(1.0 / power), tol)
}

/// Eigenvalues (descending) and matching eigenvector columns of a Hermitian matrix.
pub(crate) fn hermitian_eigen(matrix: &ComplexMatrix) -> Result<(Vec<f64>, DMatrix<C64>)> {
    let eigen = SymmetricEigen::try_new(
        matrix.as_dmatrix().clone(),
        f64::EPSILON,
        EIGEN_MAX_ITERATIONS,
    )
    .ok_or(Error::EigenFailure)?;
    if eigen.eigenvalues.iter().any(|v| !v.is_finite()) {
        return Err(Error::EigenFailure);
    }

    let n = matrix.dim();
    let mut order: Vec<usize> = (0..n).collect();
    order.sort_by(|&a, &b| eigen.eigenvalues[b].total_cmp(&eigen.eigenvalues[a]));
    let values = order.iter().map(|&k| eigen.eigenvalues[k]).collect();
    let vectors = DMatrix::from_fn(n, n, |i, j| eigen.eigenvectors[(i, order[j])]);
    Ok((values, vectors))
}

fn recompose(values: &[f64], vectors: &DMatrix<C64>) -> DMatrix<C64> {
    let n = values.len();
    let scaled = DMatrix::from_fn(n, n, |i, j| vectors[(i, j)] * values[j]);
    scaled * vectors.adjoint()
}

impl DensityMatrix {
    /// Same as [`validate_density`].
    pub fn new(matrix: ComplexMatrix, tol: &Tolerances) -> Result<Self> {
        validate_density(matrix, tol)
    }

    /// Diagonal state with the given eigenvalues, in the given order.
    pub fn diagonal(values: &[f64], tol: &Tolerances) -> Result<Self> {
        validate_density(ComplexMatrix::from_diagonal(values)?, tol)
    }

    pub fn from_spectrum(spectrum: &Spectrum) -> Result<Self> {
        Self::diagonal(spectrum.values(), &Tolerances::default())
    }

    /// `I / N`.
    pub fn maximally_mixed(dim: usize) -> Result<Self> {
        if dim == 0 {
            return Err(Error::InvalidDimension { min: 1, found: 0 });
        }
        validate_density(
            ComplexMatrix::identity(dim).scale(1.0 / dim as f64),
            &Tolerances::default(),
        )
    }

    /// `|ψ⟩⟨ψ|` for a normalized state vector.
    pub fn pure(amplitudes: &[C64], tol: &Tolerances) -> Result<Self> {
        let norm_sq: f64 = amplitudes.iter().map(|a| a.norm_sqr()).sum();
        if (norm_sq - 1.0).abs() > tol.trace {
            return Err(Error::NotNormalized { norm_sq });
        }
        let n = amplitudes.len();
        let m = DMatrix::from_fn(n, n, |i, j| amplitudes[i] * amplitudes[j].conj());
        validate_density(ComplexMatrix::new(m)?, tol)
    }

    pub fn dim(&self) -> usize {
        self.matrix.dim()
    }

    pub fn matrix(&self) -> &ComplexMatrix {
        &self.matrix
    }

    pub fn tolerances(&self) -> &Tolerances {
        &self.tol
    }

    pub fn spectrum(&self) -> Spectrum {
        Spectrum(self.eigenvalues.clone())
    }

    /// Eigenvectors as columns, ordered like [`DensityMatrix::spectrum`].
    pub fn eigenvectors(&self) -> &DMatrix<C64> {
        &self.eigenvectors
    }

    /// Product of the eigenvalues.
    pub fn determinant(&self) -> f64 {
        self.eigenvalues.iter().product()
    }

    /// `Tr[ρ^m]` by repeated multiplication of the matrix entries.
    pub fn trace_power(&self, m: u32) -> f64 {
        let rho = self.matrix.as_dmatrix();
        let mut power = DMatrix::<C64>::identity(self.dim(), self.dim());
        for _ in 0..m {
            power = &power * rho;
        }
        power.trace().re
    }

    /// `Tr[ρ²] = Σ|ρ_ij|²`, straight from the entries.
    pub fn trace_of_square(&self) -> f64 {
        self.matrix.as_dmatrix().iter().map(|z| z.norm_sqr()).sum()
    }

    /// `U ρ U^H`.
    pub fn conjugated(&self, unitary: &ComplexMatrix) -> Result<Self> {
        let m = unitary.mul(&self.matrix)?.mul(&unitary.adjoint())?;
        validate_density(m.hermitian_part(), &self.tol)
    }

    /// `ρ ⊗ σ`.
    pub fn tensor(&self, other: &Self) -> Result<Self> {
        validate_density(self.matrix.kron(&other.matrix), &self.tol)
    }

    /// Reduced state of a `d_a × d_b` system. The composite index is
    /// `i_a * d_b + i_b`.
    pub fn partial_trace(&self, keep: Subsystem, dims: (usize, usize)) -> Result<Self> {
        let (d_a, d_b) = dims;
        if d_a * d_b != self.dim() || d_a == 0 || d_b == 0 {
            return Err(Error::DimensionMismatch {
                expected: d_a * d_b,
                found: self.dim(),
            });
        }
        let rho = self.matrix.as_dmatrix();
        let reduced = match keep {
            Subsystem::A => DMatrix::from_fn(d_a, d_a, |i, j| {
                (0..d_b).map(|k| rho[(i * d_b + k, j * d_b + k)]).sum()
            }),
            Subsystem::B => DMatrix::from_fn(d_b, d_b, |k, l| {
                (0..d_a).map(|i| rho[(i * d_b + k, i * d_b + l)]).sum()
            }),
        };
        validate_density(ComplexMatrix::new(reduced)?, &self.tol)
    }

    /// Splits ρ into nested spectral projectors, see [`RankDecomposition`].
    pub fn rank_decomposition(&self) -> RankDecomposition {
        let n = self.dim();
        let values = &self.eigenvalues;
        let coefficients = (0..n)
            .map(|k| {
                if k + 1 < n {
                    values[k] - values[k + 1]
                } else {
                    values[k]
                }
            })
            .collect();

        let mut projectors = Vec::with_capacity(n);
        let mut running = DMatrix::<C64>::zeros(n, n);
        for k in 0..n {
            let v = self.eigenvectors.column(k);
            running += v * v.adjoint();
            projectors.push(ComplexMatrix::from_dmatrix_unchecked(running.clone()));
        }
        RankDecomposition {
            coefficients,
            projectors,
        }
    }
}

/// `ρ = Σ_k c_k P_k` where `P_k` projects onto the top-k eigenspace,
/// `c_k = λ_k - λ_{k+1}` and `c_N = λ_N`.
///
/// `P_1` is the fully polarized part and `P_N = I` the unpolarized part, so
/// `c_1 = λ_1 - λ_2` is the fully polarized power fraction.
#[derive(Debug, Clone)]
pub struct RankDecomposition {
    pub coefficients: Vec<f64>,
    pub projectors: Vec<ComplexMatrix>,
}

impl RankDecomposition {
    pub fn reconstruct(&self) -> ComplexMatrix {
        let n = self.projectors[0].dim();
        let mut sum = DMatrix::<C64>::zeros(n, n);
        for (c, p) in self.coefficients.iter().zip(&self.projectors) {
            sum += p.as_dmatrix().map(|z| z * *c);
        }
        ComplexMatrix::from_dmatrix_unchecked(sum)
    }
}
