use alloc::string::String;

pub type Result<T> = core::result::Result<T, Error>;

/// Everything that can go wrong while building or measuring a state.
#[derive(Debug, Clone, PartialEq, thiserror::Error)]
pub enum Error {
    #[error("matrix is not square: {rows}x{cols}")]
    NotSquare { rows: usize, cols: usize },

    #[error("ragged rows: row {row} has {found} entries, expected {expected}")]
    RaggedRows {
        row: usize,
        expected: usize,
        found: usize,
    },

    #[error("non-finite entry at ({row}, {col})")]
    NonFinite { row: usize, col: usize },

    #[error("dimension must be at least {min}, got {found}")]
    InvalidDimension { min: usize, found: usize },

    #[error("dimension mismatch: expected {expected}, found {found}")]
    DimensionMismatch { expected: usize, found: usize },

    #[error("operation requires dimension {expected}, got {found}")]
    WrongDimension { expected: usize, found: usize },

    #[error("matrix is not Hermitian: max |M - M^H| = {deviation:e} exceeds {tolerance:e}")]
    NotHermitian { deviation: f64, tolerance: f64 },

    #[error("trace is {trace} (|trace - 1| = {deviation:e} exceeds {tolerance:e})")]
    NotUnitTrace {
        trace: f64,
        deviation: f64,
        tolerance: f64,
    },

    #[error(
        "matrix is not positive: minimum eigenvalue {min_eigenvalue:e} is below -{tolerance:e}"
    )]
    NotPositive { min_eigenvalue: f64, tolerance: f64 },

    #[error("total power {power:e} is not above {tolerance:e}")]
    ZeroPower { power: f64, tolerance: f64 },

    #[error("Hermitian eigensolver did not converge")]
    EigenFailure,

    #[error("singular value decomposition did not converge")]
    SvdFailure,

    #[error("spectrum is empty")]
    EmptySpectrum,

    #[error("Stokes intensity S0 = {s0} must be positive")]
    NonPositiveIntensity { s0: f64 },

    #[error(
        "Stokes vector leaves the Poincare sphere: S1^2+S2^2+S3^2 = {radius_sq} > S0^2 = {s0_sq}"
    )]
    PoincareViolation { radius_sq: f64, s0_sq: f64 },

    #[error("Barakat index k = {k} outside 2..={n}")]
    KOutOfRange { k: usize, n: usize },

    #[error("invalid (x, y) = ({x}, {y}): need 0 <= x <= y <= 1")]
    InvalidXY { x: f64, y: f64 },

    #[error("probability p = {0} outside [0, 1]")]
    InvalidProbability(f64),

    #[error("purity of the input state is zero; ratios are undefined")]
    ZeroPurity,

    #[error("state is not normalized: sum |amplitude|^2 = {norm_sq}")]
    NotNormalized { norm_sq: f64 },

    #[error(
        "unknown purity measure '{0}' (expected standard, von_neumann, barakat_last, edpw or sskf)"
    )]
    UnknownMeasure(String),

    #[error("lambda1 = {0} outside [1/3, 1]")]
    InvalidLambda1(f64),

    #[error("no admissible grid point (need lambda1 >= lambda2 >= lambda3 >= 0)")]
    EmptyRange,

    #[error("eigenvalue {index} = {value:e} is inside the zero dead-zone")]
    ZeroEigenvalue { index: usize, value: f64 },

    #[error("index {index} out of range for {len} entries")]
    IndexOutOfRange { index: usize, len: usize },
}
