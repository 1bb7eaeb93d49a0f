//! Stokes vectors, generalized Gell-Mann bases and Bloch vectors.
//!
//! A state of an N-level system is written as
//!
//! ```text
//! ρ = I/N + (1/√N) Σ_i r_i Q_i,      Tr[Q_i Q_j] = (N - 1) δ_ij
//! ```
//!
//! with `N² - 1` traceless Hermitian `Q_i`. With this normalization the
//! length of `r` is at most one for every physical state and
//! `Tr[ρ²] = 1/N + (N-1)/N |r|²`.
//!
//! Two-level polarization uses the optics convention for the Pauli matrices:
//! `σ¹ = σ_z`, `σ² = σ_x`, `σ³ = σ_y`. So `S₁` measures horizontal versus
//! vertical linear polarization, `S₂` diagonal linear and `S₃` circular.
//! [`BasisSet::stokes_pauli`] follows that ordering; [`su_n_basis`] for
//! `N = 2` gives the usual `(σ_x, σ_y, σ_z)` order instead.

use alloc::vec::Vec;

use nalgebra::DMatrix;

use crate::density::{hermitian_eigen, ComplexMatrix, DensityMatrix, Tolerances};
use crate::{Error, Result, C64};

/// Slack allowed on the Poincaré sphere condition, relative to `S₀²`.
pub const POINCARE_TOLERANCE: f64 = 1e-10;

/// `| |r| - 1 |` below this counts as lying on the unit hypersphere.
pub const PURE_NORM_TOLERANCE: f64 = 1e-8;

/// Four-element Stokes vector `(S₀, S₁, S₂, S₃)` of a two-component field.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct StokesVector {
    pub s: [f64; 4],
}

impl StokesVector {
    /// Requires `S₀ > 0` and `S₁² + S₂² + S₃² <= S₀²` up to [`POINCARE_TOLERANCE`].
    pub fn new(s: [f64; 4]) -> Result<Self> {
        if let Some(i) = s.iter().position(|v| !v.is_finite()) {
            return Err(Error::NonFinite { row: i, col: 0 });
        }
        if s[0] <= 0.0 {
            return Err(Error::NonPositiveIntensity { s0: s[0] });
        }
        let radius_sq = s[1] * s[1] + s[2] * s[2] + s[3] * s[3];
        let s0_sq = s[0] * s[0];
        if radius_sq > s0_sq * (1.0 + POINCARE_TOLERANCE) {
            return Err(Error::PoincareViolation { radius_sq, s0_sq });
        }
        Ok(Self { s })
    }

    pub fn intensity(&self) -> f64 {
        self.s[0]
    }

    /// Length of `(S₁, S₂, S₃)` over the sphere radius `S₀`.
    pub fn degree_of_polarization(&self) -> f64 {
        libm::sqrt(self.s[1] * self.s[1] + self.s[2] * self.s[2] + self.s[3] * self.s[3])
            / self.s[0]
    }
}

/// `S_μ = Tr[Φ σ^μ]` with `σ⁰ = I, σ¹ = σ_z, σ² = σ_x, σ³ = σ_y`.
pub fn stokes_from_matrix(phi: &ComplexMatrix, tol: &Tolerances) -> Result<StokesVector> {
    if phi.dim() != 2 {
        return Err(Error::WrongDimension {
            expected: 2,
            found: phi.dim(),
        });
    }
    let deviation = phi.hermiticity_deviation();
    if deviation > tol.hermiticity {
        return Err(Error::NotHermitian {
            deviation,
            tolerance: tol.hermiticity,
        });
    }
    let a = phi[(0, 0)].re;
    let d = phi[(1, 1)].re;
    let off = phi[(0, 1)];
    StokesVector::new([a + d, a - d, 2.0 * off.re, -2.0 * off.im])
}

/// `Φ = ½ S_μ σ^μ`.
pub fn matrix_from_stokes(stokes: &StokesVector) -> ComplexMatrix {
    let [s0, s1, s2, s3] = stokes.s;
    ComplexMatrix::from_dmatrix_unchecked(DMatrix::from_row_slice(
        2,
        2,
        &[
            C64::new(0.5 * (s0 + s1), 0.0),
            C64::new(0.5 * s2, -0.5 * s3),
            C64::new(0.5 * s2, 0.5 * s3),
            C64::new(0.5 * (s0 - s1), 0.0),
        ],
    ))
}

/// Real coefficient vector of a state in a [`BasisSet`].
#[derive(Debug, Clone, PartialEq)]
pub struct BlochVector {
    dim: usize,
    r: Vec<f64>,
}

impl BlochVector {
    /// `r` must have `dim² - 1` finite entries.
    pub fn new(dim: usize, r: Vec<f64>) -> Result<Self> {
        if dim < 2 {
            return Err(Error::InvalidDimension { min: 2, found: dim });
        }
        if r.len() != dim * dim - 1 {
            return Err(Error::DimensionMismatch {
                expected: dim * dim - 1,
                found: r.len(),
            });
        }
        if let Some(i) = r.iter().position(|v| !v.is_finite()) {
            return Err(Error::NonFinite { row: i, col: 0 });
        }
        Ok(Self { dim, r })
    }

    pub fn zero(dim: usize) -> Result<Self> {
        Self::new(dim, alloc::vec![0.0; dim * dim - 1])
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn components(&self) -> &[f64] {
        &self.r
    }

    pub fn norm(&self) -> f64 {
        libm::sqrt(self.r.iter().map(|v| v * v).sum())
    }
}

/// `N² - 1` traceless Hermitian matrices with `Tr[Q_i Q_j] = κ δ_ij`.
#[derive(Debug, Clone)]
pub struct BasisSet {
    dim: usize,
    matrices: Vec<ComplexMatrix>,
    norm_constant: f64,
}

impl BasisSet {
    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn matrices(&self) -> &[ComplexMatrix] {
        &self.matrices
    }

    pub fn norm_constant(&self) -> f64 {
        self.norm_constant
    }

    /// `Tr[Q_i Q_j]` for all pairs (real part; the trace is real for Hermitian `Q`).
    pub fn gram(&self) -> DMatrix<f64> {
        let k = self.matrices.len();
        DMatrix::from_fn(k, k, |i, j| {
            trace_product(&self.matrices[i], &self.matrices[j]).re
        })
    }

    /// Two-level basis in Stokes order `(σ_z, σ_x, σ_y) / √2`, so that the
    /// Bloch vector of `Φ / Tr Φ` is `(S₁, S₂, S₃) / S₀`.
    pub fn stokes_pauli() -> Self {
        let h = core::f64::consts::FRAC_1_SQRT_2;
        let z = C64::new(0.0, 0.0);
        let sigma_z = [C64::new(h, 0.0), z, z, C64::new(-h, 0.0)];
        let sigma_x = [z, C64::new(h, 0.0), C64::new(h, 0.0), z];
        let sigma_y = [z, C64::new(0.0, -h), C64::new(0.0, h), z];
        Self {
            dim: 2,
            matrices: [sigma_z, sigma_x, sigma_y]
                .iter()
                .map(|m| ComplexMatrix::from_dmatrix_unchecked(DMatrix::from_row_slice(2, 2, m)))
                .collect(),
            norm_constant: 1.0,
        }
    }
}

fn trace_product(a: &ComplexMatrix, b: &ComplexMatrix) -> C64 {
    let n = a.dim();
    let mut sum = C64::new(0.0, 0.0);
    for i in 0..n {
        for j in 0..n {
            sum += a[(i, j)] * b[(j, i)];
        }
    }
    sum
}

/// The eight Gell-Mann matrices, written out entry by entry.
pub fn gell_mann() -> BasisSet {
    let o = C64::new(0.0, 0.0);
    let l = C64::new(1.0, 0.0);
    let i = C64::new(0.0, 1.0);
    let s = 1.0 / libm::sqrt(3.0);
    let rows: [[C64; 9]; 8] = [
        [o, l, o, l, o, o, o, o, o],
        [o, -i, o, i, o, o, o, o, o],
        [l, o, o, o, -l, o, o, o, o],
        [o, o, l, o, o, o, l, o, o],
        [o, o, -i, o, o, o, i, o, o],
        [o, o, o, o, o, l, o, l, o],
        [o, o, o, o, o, -i, o, i, o],
        [
            C64::new(s, 0.0),
            o,
            o,
            o,
            C64::new(s, 0.0),
            o,
            o,
            o,
            C64::new(-2.0 * s, 0.0),
        ],
    ];
    BasisSet {
        dim: 3,
        matrices: rows
            .iter()
            .map(|m| ComplexMatrix::from_dmatrix_unchecked(DMatrix::from_row_slice(3, 3, m)))
            .collect(),
        norm_constant: 2.0,
    }
}

/// Generalized Gell-Mann basis scaled to `Tr[Q_i Q_j] = (N - 1) δ_ij`.
///
/// Ordered by column `k = 1..N-1`: for each row `j < k` the symmetric then
/// antisymmetric pair on `(j, k)`, then the diagonal generator
/// `√(2/(k(k+1))) diag(1, ..., 1, -k, 0, ...)`. At `N = 3` this is exactly
/// [`gell_mann`].
pub fn su_n_basis(dim: usize) -> Result<BasisSet> {
    if dim < 2 {
        return Err(Error::InvalidDimension { min: 2, found: dim });
    }
    let scale = libm::sqrt((dim as f64 - 1.0) / 2.0);
    let zero = C64::new(0.0, 0.0);
    let mut matrices = Vec::with_capacity(dim * dim - 1);
    for k in 1..dim {
        for j in 0..k {
            let mut sym = DMatrix::from_element(dim, dim, zero);
            sym[(j, k)] = C64::new(scale, 0.0);
            sym[(k, j)] = C64::new(scale, 0.0);
            matrices.push(ComplexMatrix::from_dmatrix_unchecked(sym));

            let mut anti = DMatrix::from_element(dim, dim, zero);
            anti[(j, k)] = C64::new(0.0, -scale);
            anti[(k, j)] = C64::new(0.0, scale);
            matrices.push(ComplexMatrix::from_dmatrix_unchecked(anti));
        }
        let kf = k as f64;
        let weight = scale * libm::sqrt(2.0 / (kf * (kf + 1.0)));
        let mut diag = DMatrix::from_element(dim, dim, zero);
        for m in 0..k {
            diag[(m, m)] = C64::new(weight, 0.0);
        }
        diag[(k, k)] = C64::new(-kf * weight, 0.0);
        matrices.push(ComplexMatrix::from_dmatrix_unchecked(diag));
    }
    Ok(BasisSet {
        dim,
        matrices,
        norm_constant: dim as f64 - 1.0,
    })
}

/// `r_j = √N Tr[ρ Q_j] / κ`.
pub fn bloch_from_density(rho: &DensityMatrix, basis: &BasisSet) -> Result<BlochVector> {
    if rho.dim() != basis.dim {
        return Err(Error::DimensionMismatch {
            expected: basis.dim,
            found: rho.dim(),
        });
    }
    let root_n = libm::sqrt(basis.dim as f64);
    let r = basis
        .matrices
        .iter()
        .map(|q| root_n * trace_product(rho.matrix(), q).re / basis.norm_constant)
        .collect();
    BlochVector::new(basis.dim, r)
}

/// `I/N + (1/√N) Σ r_i Q_i`. Always Hermitian with unit trace; positivity is
/// not checked (see [`classify_bloch`]).
pub fn density_from_bloch(r: &BlochVector, basis: &BasisSet) -> Result<ComplexMatrix> {
    if r.dim != basis.dim {
        return Err(Error::DimensionMismatch {
            expected: basis.dim,
            found: r.dim,
        });
    }
    let n = basis.dim;
    let weight = 1.0 / libm::sqrt(n as f64);
    let mut m = DMatrix::<C64>::identity(n, n).map(|z| z / n as f64);
    for (ri, q) in r.r.iter().zip(&basis.matrices) {
        m += q.as_dmatrix().map(|z| z * (weight * ri));
    }
    ComplexMatrix::new(m)
}

/// Where a Bloch vector sits relative to the set of physical states.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Physicality {
    /// Positive and on the unit hypersphere: a rank-one state.
    PurePhysical,
    /// Positive with a zero eigenvalue: on the border of the allowed region.
    BoundaryPhysical,
    /// Positive definite.
    InteriorPhysical,
    /// Has a negative eigenvalue.
    Unphysical,
}

impl Physicality {
    pub fn as_str(&self) -> &'static str {
        match self {
            Physicality::PurePhysical => "PurePhysical",
            Physicality::BoundaryPhysical => "BoundaryPhysical",
            Physicality::InteriorPhysical => "InteriorPhysical",
            Physicality::Unphysical => "Unphysical",
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct PhysicalityClass {
    pub class: Physicality,
    pub min_eigenvalue: f64,
    pub bloch_norm: f64,
}

pub fn classify_bloch(r: &BlochVector, basis: &BasisSet) -> Result<PhysicalityClass> {
    classify_bloch_with_tolerance(r, basis, Tolerances::default().psd)
}

pub fn classify_bloch_with_tolerance(
    r: &BlochVector,
    basis: &BasisSet,
    psd_tolerance: f64,
) -> Result<PhysicalityClass> {
    let m = density_from_bloch(r, basis)?;
    let (values, _) = hermitian_eigen(&m)?;
    let min_eigenvalue = values[values.len() - 1];
    let bloch_norm = r.norm();
    let class = if min_eigenvalue < -psd_tolerance {
        Physicality::Unphysical
    } else if (bloch_norm - 1.0).abs() <= PURE_NORM_TOLERANCE {
        Physicality::PurePhysical
    } else if min_eigenvalue <= psd_tolerance {
        Physicality::BoundaryPhysical
    } else {
        Physicality::InteriorPhysical
    };
    Ok(PhysicalityClass {
        class,
        min_eigenvalue,
        bloch_norm,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use alloc::vec;

    fn c(re: f64, im: f64) -> C64 {
        C64::new(re, im)
    }

    fn r8(last: f64) -> BlochVector {
        let mut r = vec![0.0; 8];
        r[7] = last;
        BlochVector::new(3, r).unwrap()
    }

    #[test]
    fn stokes_from_matrix_examples() {
        let tol = Tolerances::default();
        let x = ComplexMatrix::from_diagonal(&[1.0, 0.0]).unwrap();
        assert_eq!(
            stokes_from_matrix(&x, &tol).unwrap().s,
            [1.0, 1.0, 0.0, 0.0]
        );
        let mixed = ComplexMatrix::from_diagonal(&[0.5, 0.5]).unwrap();
        assert_eq!(
            stokes_from_matrix(&mixed, &tol).unwrap().s,
            [1.0, 0.0, 0.0, 0.0]
        );
        let circ = ComplexMatrix::from_rows(&[
            vec![c(0.5, 0.0), c(0.0, -0.5)],
            vec![c(0.0, 0.5), c(0.5, 0.0)],
        ])
        .unwrap();
        assert_eq!(
            stokes_from_matrix(&circ, &tol).unwrap().s,
            [1.0, 0.0, 0.0, 1.0]
        );

        let skew = ComplexMatrix::from_rows(&[
            vec![c(0.5, 0.0), c(0.3, 0.0)],
            vec![c(0.0, 0.0), c(0.5, 0.0)],
        ])
        .unwrap();
        assert!(matches!(
            stokes_from_matrix(&skew, &tol),
            Err(Error::NotHermitian { .. })
        ));
    }

    #[test]
    fn matrix_from_stokes_examples() {
        let m = matrix_from_stokes(&StokesVector::new([1.0, 0.0, 0.0, 0.0]).unwrap());
        assert_eq!(m, ComplexMatrix::from_diagonal(&[0.5, 0.5]).unwrap());
        let m = matrix_from_stokes(&StokesVector::new([2.0, 2.0, 0.0, 0.0]).unwrap());
        assert_eq!(m, ComplexMatrix::from_diagonal(&[2.0, 0.0]).unwrap());
        assert!(matches!(
            StokesVector::new([1.0, 0.6, 0.8, 0.1]),
            Err(Error::PoincareViolation { .. })
        ));
        assert!(matches!(
            StokesVector::new([0.0, 0.0, 0.0, 0.0]),
            Err(Error::NonPositiveIntensity { .. })
        ));
    }

    #[test]
    fn gell_mann_entries() {
        let g = gell_mann();
        assert_eq!(g.matrices().len(), 8);
        assert_eq!(g.matrices()[0][(0, 1)], c(1.0, 0.0));
        let s = 1.0 / libm::sqrt(3.0);
        let g8 = ComplexMatrix::from_diagonal(&[s, s, -2.0 * s]).unwrap();
        assert!(g.matrices()[7].max_abs_diff(&g8) < 1e-15);
        assert!(trace_product(&g.matrices()[2], &g.matrices()[7]).norm() < 1e-15);
        let gram = g.gram();
        for i in 0..8 {
            for j in 0..8 {
                let expected = if i == j { 2.0 } else { 0.0 };
                assert!((gram[(i, j)] - expected).abs() < 1e-12);
            }
        }
    }

    #[test]
    fn su3_equals_gell_mann() {
        let general = su_n_basis(3).unwrap();
        for (a, b) in general.matrices().iter().zip(gell_mann().matrices()) {
            assert!(a.max_abs_diff(b) < 1e-15);
        }
        assert_eq!(general.norm_constant(), 2.0);
    }

    #[test]
    fn su_n_gram_and_tracelessness() {
        for n in 2..=6 {
            let basis = su_n_basis(n).unwrap();
            assert_eq!(basis.matrices().len(), n * n - 1);
            let gram = basis.gram();
            for i in 0..n * n - 1 {
                let q = &basis.matrices()[i];
                assert!(q.hermiticity_deviation() < 1e-12);
                assert!(q.trace().norm() < 1e-12);
                for j in 0..n * n - 1 {
                    let expected = if i == j { (n - 1) as f64 } else { 0.0 };
                    assert!((gram[(i, j)] - expected).abs() < 1e-12, "n={n} ({i},{j})");
                }
            }
        }
        assert!(su_n_basis(1).is_err());
    }

    #[test]
    fn bloch_vectors_of_named_points() {
        let basis = gell_mann();
        let tol = Tolerances::default();
        let mixed = DensityMatrix::maximally_mixed(3).unwrap();
        assert!(bloch_from_density(&mixed, &basis).unwrap().norm() < 1e-15);

        let rho_b = DensityMatrix::diagonal(&[0.0, 0.0, 1.0], &tol).unwrap();
        let r_b = bloch_from_density(&rho_b, &basis).unwrap();
        for (k, v) in r_b.components().iter().enumerate() {
            let expected = if k == 7 { -1.0 } else { 0.0 };
            assert!((v - expected).abs() < 1e-12);
        }

        let rho_d = DensityMatrix::diagonal(&[0.5, 0.25, 0.25], &tol).unwrap();
        let r_d = bloch_from_density(&rho_d, &basis).unwrap();
        let expected = [0.0, 0.0, libm::sqrt(3.0) / 8.0, 0.0, 0.0, 0.0, 0.0, 0.125];
        for (v, e) in r_d.components().iter().zip(expected) {
            assert!((v - e).abs() < 1e-12);
        }
    }

    #[test]
    fn density_from_named_bloch_vectors() {
        let basis = gell_mann();
        let rho_a = density_from_bloch(&r8(1.0), &basis).unwrap();
        let target = ComplexMatrix::from_diagonal(&[2.0 / 3.0, 2.0 / 3.0, -1.0 / 3.0]).unwrap();
        assert!(rho_a.max_abs_diff(&target) < 1e-12);
        let rho_c = density_from_bloch(&r8(0.5), &basis).unwrap();
        let target = ComplexMatrix::from_diagonal(&[0.5, 0.5, 0.0]).unwrap();
        assert!(rho_c.max_abs_diff(&target) < 1e-12);
        for n in 2..=5 {
            let basis = su_n_basis(n).unwrap();
            let m = density_from_bloch(&BlochVector::zero(n).unwrap(), &basis).unwrap();
            let target = ComplexMatrix::identity(n).scale(1.0 / n as f64);
            assert!(m.max_abs_diff(&target) < 1e-15);
        }
        assert!(matches!(
            density_from_bloch(&BlochVector::zero(2).unwrap(), &basis),
            Err(Error::DimensionMismatch { .. })
        ));
    }

    #[test]
    fn classify_named_points() {
        let basis = gell_mann();
        assert_eq!(
            classify_bloch(&r8(1.0), &basis).unwrap().class,
            Physicality::Unphysical
        );
        assert_eq!(
            classify_bloch(&r8(-1.0), &basis).unwrap().class,
            Physicality::PurePhysical
        );
        assert_eq!(
            classify_bloch(&r8(0.5), &basis).unwrap().class,
            Physicality::BoundaryPhysical
        );
        let r_d = BlochVector::new(
            3,
            vec![0.0, 0.0, libm::sqrt(3.0) / 8.0, 0.0, 0.0, 0.0, 0.0, 0.125],
        )
        .unwrap();
        let class = classify_bloch(&r_d, &basis).unwrap();
        assert_eq!(class.class, Physicality::InteriorPhysical);
        assert!((class.min_eigenvalue - 0.25).abs() < 1e-12);
    }

    #[test]
    fn bloch_vector_length_check() {
        assert!(matches!(
            BlochVector::new(3, vec![0.0; 3]),
            Err(Error::DimensionMismatch {
                expected: 8,
                found: 3
            })
        ));
    }
}
