//! Three-level eigenvalue sweeps and the sign structure of purity derivatives.
//!
//! When only two eigenvalues move (here `λ_i` and the dependent `λ_N`), the
//! partial derivatives of `Π_s`, `Π_v` and `Π_b²` all carry the sign of
//! `λ_i - λ_N`, so those measures rise and fall together. With three or more
//! eigenvalues changing at once they can disagree, and [`ordering_disagreement_witness`]
//! returns concrete pairs where they do.

use alloc::vec;
use alloc::vec::Vec;

use crate::density::Spectrum;
use crate::measures::{
    purity_barakat_last, purity_edpw, purity_von_neumann, sskf_from_spectrum, MeasureId,
};
use crate::{Error, Result};

/// Derivatives with `|value| <= SIGN_DEAD_ZONE` have no sign.
pub const SIGN_DEAD_ZONE: f64 = 1e-12;

/// Slack on `λ_1 >= λ_2 >= λ_3 >= 0` when admitting sweep points.
pub const ADMISSIBLE_SLACK: f64 = 1e-12;

/// Default number of `λ_2` samples per sweep.
pub const DEFAULT_SWEEP_POINTS: usize = 201;

/// One point of a fixed-`λ_1` sweep.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct SweepRow {
    pub lambda1: f64,
    pub lambda2: f64,
    pub lambda3: f64,
    pub pi_b: f64,
    pub pi_sskf: f64,
    pub pi_v: f64,
    pub pi_edpw: f64,
}

/// Uniform `λ_2` grid over `[(1 - λ_1)/2, min(λ_1, 1 - λ_1)]`, the range where
/// `λ_1 >= λ_2 >= λ_3 >= 0`.
pub fn default_grid(lambda1: f64, points: usize) -> Vec<f64> {
    let lo = (1.0 - lambda1) / 2.0;
    let hi = lambda1.min(1.0 - lambda1);
    if points <= 1 || hi <= lo {
        return vec![lo];
    }
    let step = (hi - lo) / (points - 1) as f64;
    (0..points)
        .map(|k| {
            if k + 1 == points {
                hi
            } else {
                lo + step * k as f64
            }
        })
        .collect()
}

/// Evaluates `Π_b`, `Π_sskf`, `Π_v` and `Π_edpw` on `(λ_1, λ_2, 1 - λ_1 - λ_2)`
/// for every admissible `λ_2` in `grid`. Inadmissible points are skipped.
pub fn sweep(lambda1: f64, grid: &[f64]) -> Result<Vec<SweepRow>> {
    if !(1.0 / 3.0 - ADMISSIBLE_SLACK..=1.0).contains(&lambda1) {
        return Err(Error::InvalidLambda1(lambda1));
    }
    let rows: Vec<SweepRow> = grid
        .iter()
        .filter_map(|&lambda2| {
            let lambda3 = 1.0 - lambda1 - lambda2;
            let admissible = lambda2.is_finite()
                && lambda1 >= lambda2 - ADMISSIBLE_SLACK
                && lambda2 >= lambda3 - ADMISSIBLE_SLACK
                && lambda3 >= -ADMISSIBLE_SLACK;
            if !admissible {
                return None;
            }
            let spectrum = Spectrum::from_values(&[lambda1, lambda2, lambda3]).ok()?;
            Some(SweepRow {
                lambda1,
                lambda2,
                lambda3,
                pi_b: purity_barakat_last(&spectrum),
                pi_sskf: sskf_from_spectrum(&spectrum),
                pi_v: purity_von_neumann(&spectrum),
                pi_edpw: purity_edpw(&spectrum),
            })
        })
        .collect();
    if rows.is_empty() {
        return Err(Error::EmptyRange);
    }
    Ok(rows)
}

fn sign(v: f64, dead_zone: f64) -> i8 {
    if v > dead_zone {
        1
    } else if v < -dead_zone {
        -1
    } else {
        0
    }
}

/// True when no two of the signs are strictly opposite; zero matches anything.
fn signs_compatible(signs: &[i8]) -> bool {
    !(signs.contains(&1) && signs.contains(&-1))
}

/// Whether `Π_b`, `Π_sskf` and `Π_v` move in the same direction between every
/// pair of adjacent rows. Steps where any of the three changes by no more than
/// `dead_zone` are skipped.
pub fn co_monotone(rows: &[SweepRow], dead_zone: f64) -> bool {
    rows.windows(2).all(|w| {
        let diffs = [
            w[1].pi_b - w[0].pi_b,
            w[1].pi_sskf - w[0].pi_sskf,
            w[1].pi_v - w[0].pi_v,
        ];
        if diffs.iter().any(|d| d.abs() <= dead_zone) {
            return true;
        }
        let signs = diffs.map(|d| sign(d, 0.0));
        signs_compatible(&signs)
    })
}

/// `∂Π/∂λ_i` with `λ_N = 1 - Σ_{j<N} λ_j` dependent.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct DerivativeSigns {
    /// `∂Π_s/∂λ_i = 2N (λ_i - λ_N) / (N - 1)`
    pub standard: f64,
    /// `∂Π_v/∂λ_i = (log₂ λ_i - log₂ λ_N) / log₂ N`
    pub von_neumann: f64,
    /// `∂Π_b²/∂λ_i = N^N (Π_{j<N, j≠i} λ_j) (λ_i - λ_N)`
    pub barakat_squared: f64,
}

impl DerivativeSigns {
    /// Signs in the order standard, von Neumann, Barakat squared.
    pub fn signs(&self) -> [i8; 3] {
        [
            sign(self.standard, SIGN_DEAD_ZONE),
            sign(self.von_neumann, SIGN_DEAD_ZONE),
            sign(self.barakat_squared, SIGN_DEAD_ZONE),
        ]
    }

    pub fn agree(&self) -> bool {
        signs_compatible(&self.signs())
    }
}

/// Closed-form partial derivatives with respect to the independent eigenvalue
/// `eigenvalues[i]`, `i < N - 1` (zero-based); the last entry plays `λ_N`.
///
/// The eigenvalues need not be sorted. All of them must exceed
/// [`SIGN_DEAD_ZONE`], since the logarithm and product forms are singular at zero.
pub fn analytic_partials(eigenvalues: &[f64], i: usize) -> Result<DerivativeSigns> {
    let n = eigenvalues.len();
    if n < 2 {
        return Err(Error::InvalidDimension { min: 2, found: n });
    }
    if i + 1 >= n {
        return Err(Error::IndexOutOfRange {
            index: i,
            len: n - 1,
        });
    }
    if let Some((index, &value)) = eigenvalues
        .iter()
        .enumerate()
        .find(|(_, &v)| v.is_nan() || v <= SIGN_DEAD_ZONE)
    {
        return Err(Error::ZeroEigenvalue { index, value });
    }

    let nf = n as f64;
    let last = eigenvalues[n - 1];
    let li = eigenvalues[i];
    let others: f64 = eigenvalues[..n - 1]
        .iter()
        .enumerate()
        .filter(|&(j, _)| j != i)
        .map(|(_, v)| v * nf)
        .product();

    Ok(DerivativeSigns {
        standard: 2.0 * nf * (li - last) / (nf - 1.0),
        von_neumann: (libm::log2(li) - libm::log2(last)) / libm::log2(nf),
        // N^N = N^(N-2) from the other factors, N from λ_N and N from (λ_i - λ_N)
        barakat_squared: others * nf * nf * (li - last),
    })
}

/// Whether `∂Π_s/∂λ_i`, `∂Π_v/∂λ_i` and `∂Π_b²/∂λ_i` share a sign.
pub fn sign_agreement(eigenvalues: &[f64], i: usize) -> Result<bool> {
    Ok(analytic_partials(eigenvalues, i)?.agree())
}

/// Two states on which two measures rank purity in opposite orders.
#[derive(Debug, Clone, PartialEq)]
pub struct DisagreementWitness {
    pub first: Spectrum,
    pub second: Spectrum,
    pub measures: (MeasureId, MeasureId),
}

impl DisagreementWitness {
    pub fn holds(&self) -> bool {
        orders_oppositely(&self.first, &self.second, self.measures.0, self.measures.1)
    }
}

/// True when `a` and `b` strictly disagree on which of the two states is purer.
pub fn orders_oppositely(first: &Spectrum, second: &Spectrum, a: MeasureId, b: MeasureId) -> bool {
    let da = a.evaluate(first) - a.evaluate(second);
    let db = b.evaluate(first) - b.evaluate(second);
    sign(da, SIGN_DEAD_ZONE) * sign(db, SIGN_DEAD_ZONE) < 0
}

/// `(½,½,0)` vs `(½,¼,¼)` under SSKF and EDPW, and `(¾,⅛,⅛)` vs `(½,½,0)`
/// under SSKF and Barakat's last measure.
pub fn ordering_disagreement_witness() -> Vec<DisagreementWitness> {
    let spectrum = |v: &[f64]| Spectrum::from_values(v).expect("valid spectrum");
    let c = spectrum(&[0.5, 0.5, 0.0]);
    let d = spectrum(&[0.5, 0.25, 0.25]);
    let e = spectrum(&[0.75, 0.125, 0.125]);
    vec![
        DisagreementWitness {
            first: c.clone(),
            second: d,
            measures: (MeasureId::Sskf, MeasureId::Edpw),
        },
        DisagreementWitness {
            first: e,
            second: c,
            measures: (MeasureId::Sskf, MeasureId::BarakatLast),
        },
    ]
}
