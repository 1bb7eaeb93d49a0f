//! The depolarizing channel `ℰ_p(ρ) = (1 - p) I/N + p ρ`.
//!
//! `p` is the probability that the state passes untouched. Under this channel
//! the SSKF purity scales linearly, `Π_sskf(ℰ_p(ρ)) = p Π_sskf(ρ)`; the other
//! measures do not.

use alloc::vec::Vec;

use crate::density::{validate_density, ComplexMatrix, DensityMatrix};
use crate::measures::{sskf_from_spectrum, MeasureId};
use crate::{Error, Result};

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct DepolarizingChannel {
    p: f64,
    dim: usize,
}

impl DepolarizingChannel {
    pub fn new(p: f64, dim: usize) -> Result<Self> {
        if !(0.0..=1.0).contains(&p) {
            return Err(Error::InvalidProbability(p));
        }
        if dim == 0 {
            return Err(Error::InvalidDimension { min: 1, found: 0 });
        }
        Ok(Self { p, dim })
    }

    pub fn survival_probability(&self) -> f64 {
        self.p
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn apply(&self, rho: &DensityMatrix) -> Result<DensityMatrix> {
        if rho.dim() != self.dim {
            return Err(Error::DimensionMismatch {
                expected: self.dim,
                found: rho.dim(),
            });
        }
        let noise = ComplexMatrix::identity(self.dim).scale((1.0 - self.p) / self.dim as f64);
        let out = noise.add(&rho.matrix().scale(self.p))?;
        validate_density(out, rho.tolerances())
    }
}

/// `|Π_sskf(ℰ_p(ρ)) - p Π_sskf(ρ)|`.
pub fn sskf_scaling_residual(rho: &DensityMatrix, p: f64) -> Result<f64> {
    let channel = DepolarizingChannel::new(p, rho.dim())?;
    let out = channel.apply(rho)?;
    Ok((sskf_from_spectrum(&out.spectrum()) - p * sskf_from_spectrum(&rho.spectrum())).abs())
}

/// One point of a scaling profile: `value = Π(ℰ_p(ρ))`, `ratio = value / Π(ρ)`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct ScalingRow {
    pub p: f64,
    pub measure: MeasureId,
    pub value: f64,
    pub ratio: f64,
}

/// Evaluates `Π(ℰ_p(ρ)) / Π(ρ)` along a grid of `p`.
///
/// For [`MeasureId::Sskf`] the ratio column equals `p`.
pub fn measure_scaling_profile(
    rho: &DensityMatrix,
    measure: MeasureId,
    p_grid: &[f64],
) -> Result<Vec<ScalingRow>> {
    let base = measure.evaluate(&rho.spectrum());
    if base <= f64::EPSILON {
        return Err(Error::ZeroPurity);
    }
    p_grid
        .iter()
        .map(|&p| {
            let out = DepolarizingChannel::new(p, rho.dim())?.apply(rho)?;
            let value = measure.evaluate(&out.spectrum());
            Ok(ScalingRow {
                p,
                measure,
                value,
                ratio: value / base,
            })
        })
        .collect()
}
