//! Entanglement of bipartite pure states measured through subsystem purity.
//!
//! For a pure `|Ψ⟩_AB` the reduced state `ρ_A = Tr_B |Ψ⟩⟨Ψ|` is pure exactly
//! when `|Ψ⟩` is a product state and maximally mixed when `|Ψ⟩` is maximally
//! entangled, so `E = 1 - Π(ρ_A)` is an entanglement measure for any purity
//! `Π`. With the von Neumann purity and `d_A = 2` this is the entropy of
//! entanglement.

use alloc::vec::Vec;

use nalgebra::{DMatrix, SVD};

use crate::density::{ComplexMatrix, DensityMatrix, Subsystem, Tolerances};
use crate::measures::MeasureId;
use crate::{Error, Result, C64};

/// `|Σ|a|² - 1|` above this rejects a state.
pub const NORM_TOLERANCE: f64 = 1e-10;

/// Singular values below this are reported as exact zeros.
pub const SCHMIDT_ZERO: f64 = 1e-12;

const SVD_MAX_ITERATIONS: usize = 100_000;

/// Normalized amplitudes `ψ[i_a * d_b + i_b]` on a `d_A × d_B` grid.
#[derive(Debug, Clone, PartialEq)]
pub struct BipartitePureState {
    dims: (usize, usize),
    amplitudes: Vec<C64>,
}

impl BipartitePureState {
    pub fn new(d_a: usize, d_b: usize, amplitudes: Vec<C64>) -> Result<Self> {
        if d_a == 0 || d_b == 0 {
            return Err(Error::InvalidDimension { min: 1, found: 0 });
        }
        if amplitudes.len() != d_a * d_b {
            return Err(Error::DimensionMismatch {
                expected: d_a * d_b,
                found: amplitudes.len(),
            });
        }
        if let Some(k) = amplitudes
            .iter()
            .position(|a| !a.re.is_finite() || !a.im.is_finite())
        {
            return Err(Error::NonFinite {
                row: k / d_b,
                col: k % d_b,
            });
        }
        let norm_sq: f64 = amplitudes.iter().map(|a| a.norm_sqr()).sum();
        if (norm_sq - 1.0).abs() > NORM_TOLERANCE {
            return Err(Error::NotNormalized { norm_sq });
        }
        Ok(Self {
            dims: (d_a, d_b),
            amplitudes,
        })
    }

    /// Amplitude grid given row by row (row = index on A).
    pub fn from_grid(rows: &[Vec<C64>]) -> Result<Self> {
        let d_a = rows.len();
        let d_b = rows.first().map_or(0, Vec::len);
        for (r, row) in rows.iter().enumerate() {
            if row.len() != d_b {
                return Err(Error::RaggedRows {
                    row: r,
                    expected: d_b,
                    found: row.len(),
                });
            }
        }
        Self::new(d_a, d_b, rows.concat())
    }

    /// `|a⟩ ⊗ |b⟩`.
    pub fn product(a: &[C64], b: &[C64]) -> Result<Self> {
        let amplitudes = a
            .iter()
            .flat_map(|x| b.iter().map(move |y| x * y))
            .collect();
        Self::new(a.len(), b.len(), amplitudes)
    }

    pub fn dims(&self) -> (usize, usize) {
        self.dims
    }

    pub fn amplitudes(&self) -> &[C64] {
        &self.amplitudes
    }

    pub fn amplitude(&self, i_a: usize, i_b: usize) -> C64 {
        self.amplitudes[i_a * self.dims.1 + i_b]
    }

    /// Amplitudes as a `d_A × d_B` matrix.
    pub fn grid(&self) -> DMatrix<C64> {
        DMatrix::from_row_slice(self.dims.0, self.dims.1, &self.amplitudes)
    }

    /// `(U_A ⊗ U_B) |Ψ⟩`.
    pub fn apply_local(&self, u_a: &ComplexMatrix, u_b: &ComplexMatrix) -> Result<Self> {
        let (d_a, d_b) = self.dims;
        if u_a.dim() != d_a {
            return Err(Error::DimensionMismatch {
                expected: d_a,
                found: u_a.dim(),
            });
        }
        if u_b.dim() != d_b {
            return Err(Error::DimensionMismatch {
                expected: d_b,
                found: u_b.dim(),
            });
        }
        let m = u_a.as_dmatrix() * self.grid() * u_b.as_dmatrix().transpose();
        let amplitudes = (0..d_a)
            .flat_map(|i| (0..d_b).map(move |j| (i, j)))
            .map(|(i, j)| m[(i, j)])
            .collect();
        Self::new(d_a, d_b, amplitudes)
    }

    /// The projector `|Ψ⟩⟨Ψ|` on the composite space.
    pub fn density(&self) -> Result<DensityMatrix> {
        DensityMatrix::pure(&self.amplitudes, &Tolerances::default())
    }
}

/// `|Ψ⟩ = Σ_k c_k |u_k⟩ ⊗ |v_k⟩` with orthonormal `u_k`, `v_k` and
/// `c_1 >= c_2 >= ... >= 0`.
#[derive(Debug, Clone)]
pub struct SchmidtForm {
    pub coefficients: Vec<f64>,
    pub left: Vec<Vec<C64>>,
    pub right: Vec<Vec<C64>>,
}

impl SchmidtForm {
    /// Number of nonzero coefficients.
    pub fn rank(&self) -> usize {
        self.coefficients.iter().filter(|&&c| c > 0.0).count()
    }

    /// Amplitudes `Σ_k c_k u_k ⊗ v_k`, row-major.
    pub fn reconstruct(&self) -> Vec<C64> {
        let d_a = self.left.first().map_or(0, Vec::len);
        let d_b = self.right.first().map_or(0, Vec::len);
        let mut out = alloc::vec![C64::new(0.0, 0.0); d_a * d_b];
        for ((c, u), v) in self.coefficients.iter().zip(&self.left).zip(&self.right) {
            for i in 0..d_a {
                for j in 0..d_b {
                    out[i * d_b + j] += u[i] * v[j] * *c;
                }
            }
        }
        out
    }
}

/// Schmidt decomposition from the singular value decomposition of the
/// amplitude grid.
pub fn schmidt(state: &BipartitePureState) -> Result<SchmidtForm> {
    let svd = SVD::try_new(state.grid(), true, true, f64::EPSILON, SVD_MAX_ITERATIONS)
        .ok_or(Error::SvdFailure)?;
    let u = svd.u.ok_or(Error::SvdFailure)?;
    let v_t = svd.v_t.ok_or(Error::SvdFailure)?;
    let rank = svd.singular_values.len();
    let coefficients = svd
        .singular_values
        .iter()
        .map(|&s| if s < SCHMIDT_ZERO { 0.0 } else { s })
        .collect();
    let left = (0..rank)
        .map(|k| u.column(k).iter().copied().collect())
        .collect();
    let right = (0..rank)
        .map(|k| v_t.row(k).iter().copied().collect())
        .collect();
    Ok(SchmidtForm {
        coefficients,
        left,
        right,
    })
}

/// Reduced state of one side: `M M^H` for A, `(M^H M)^T` for B, where `M` is
/// the amplitude grid.
pub fn reduced_density(state: &BipartitePureState, keep: Subsystem) -> Result<DensityMatrix> {
    let m = state.grid();
    let reduced = match keep {
        Subsystem::A => &m * m.adjoint(),
        Subsystem::B => m.transpose() * m.conjugate(),
    };
    DensityMatrix::new(
        ComplexMatrix::new(reduced)?.hermitian_part(),
        &Tolerances::default(),
    )
}

/// `E = 1 - Π(Tr_B |Ψ⟩⟨Ψ|)`.
pub fn entanglement(state: &BipartitePureState, measure: MeasureId) -> Result<f64> {
    entanglement_of_side(state, measure, Subsystem::A)
}

/// As [`entanglement`], tracing out the other side instead when `keep = B`.
pub fn entanglement_of_side(
    state: &BipartitePureState,
    measure: MeasureId,
    keep: Subsystem,
) -> Result<f64> {
    let reduced = reduced_density(state, keep)?;
    Ok((1.0 - measure.evaluate(&reduced.spectrum())).clamp(0.0, 1.0))
}
