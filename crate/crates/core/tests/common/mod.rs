#![allow(dead_code)]

use nalgebra::DMatrix;
use purimetrics_core::{ComplexMatrix, DensityMatrix, Spectrum, Tolerances, C64};
use rand::rngs::StdRng;
use rand::{Rng, SeedableRng};
use rand_distr::{Distribution, Exp1, StandardNormal};

pub fn rng(seed: u64) -> StdRng {
    StdRng::seed_from_u64(seed)
}

pub fn gaussian_matrix(rng: &mut impl Rng, n: usize) -> DMatrix<C64> {
    DMatrix::from_fn(n, n, |_, _| {
        let re: f64 = StandardNormal.sample(rng);
        let im: f64 = StandardNormal.sample(rng);
        C64::new(re, im)
    })
}

/// Haar-random unitary: QR of a complex Ginibre matrix with the phases of R's
/// diagonal pushed into Q.
pub fn random_unitary(rng: &mut impl Rng, n: usize) -> ComplexMatrix {
    let qr = gaussian_matrix(rng, n).qr();
    let (mut q, r) = (qr.q(), qr.r());
    for k in 0..n {
        let d = r[(k, k)];
        let phase = if d.norm() > 0.0 {
            d / d.norm()
        } else {
            C64::new(1.0, 0.0)
        };
        for i in 0..n {
            q[(i, k)] *= phase;
        }
    }
    ComplexMatrix::new(q).unwrap()
}

/// `G G† / Tr(G G†)` for a complex Gaussian `G`.
pub fn random_density(rng: &mut impl Rng, n: usize) -> DensityMatrix {
    let g = gaussian_matrix(rng, n);
    let w = &g * g.adjoint();
    let tr = w.trace().re;
    let w = (&w + w.adjoint()).map(|z| z / (2.0 * tr));
    DensityMatrix::new(ComplexMatrix::new(w).unwrap(), &Tolerances::default()).unwrap()
}

/// Random pure state with Gaussian amplitudes.
pub fn random_amplitudes(rng: &mut impl Rng, n: usize) -> Vec<C64> {
    let v: Vec<C64> = (0..n)
        .map(|_| {
            let re: f64 = StandardNormal.sample(rng);
            let im: f64 = StandardNormal.sample(rng);
            C64::new(re, im)
        })
        .collect();
    let norm = v.iter().map(|z| z.norm_sqr()).sum::<f64>().sqrt();
    v.into_iter().map(|z| z / norm).collect()
}

/// Uniform point on the probability simplex, unsorted.
pub fn random_probabilities(rng: &mut impl Rng, n: usize) -> Vec<f64> {
    let e: Vec<f64> = (0..n).map(|_| Exp1.sample(rng)).collect();
    let s: f64 = e.iter().sum();
    e.into_iter().map(|x| x / s).collect()
}

pub fn random_spectrum(rng: &mut impl Rng, n: usize) -> Spectrum {
    Spectrum::from_values(&random_probabilities(rng, n)).unwrap()
}
