//! Purity and degree-of-polarization measures for N-level density matrices.
//!
//! The same mathematics covers two readings of one object: a unit-trace
//! Hermitian positive matrix is a quantum state of an N-level system and,
//! after power normalization, the coherency (polarization) matrix of a
//! classical field with N components. This crate provides
//!
//! - validated density matrices, spectra, traces of powers, partial traces and
//!   the pyramid rank decomposition ([`density`]),
//! - Stokes vectors, generalized Gell-Mann bases and Bloch vectors ([`bloch`]),
//! - the purity measures themselves ([`measures`]),
//! - the depolarizing channel ([`channel`]),
//! - purity-based entanglement of bipartite pure states ([`entanglement`]),
//! - eigenvalue sweeps and partial-derivative sign analysis ([`analysis`]).
//!
//! The crate is `no_std` and needs only `alloc`. File formats and the command
//! line front end live in the `purimetrics` crate.

#![cfg_attr(not(test), no_std)]
#![forbid(unsafe_code)]

extern crate alloc;

pub mod analysis;
pub mod bloch;
pub mod channel;
pub mod density;
pub mod entanglement;
mod error;
pub mod measures;

pub use error::{Error, Result};

pub use analysis::{DerivativeSigns, DisagreementWitness, SweepRow};
pub use bloch::{BasisSet, BlochVector, Physicality, PhysicalityClass, StokesVector};
pub use channel::{DepolarizingChannel, ScalingRow};
pub use density::{
    ComplexMatrix, DensityMatrix, RankDecomposition, Spectrum, Subsystem, Tolerances,
};
pub use entanglement::{BipartitePureState, SchmidtForm};
pub use measures::{CharacteristicCoefficients, MeasureId, Polarization2dForm, PurityReport};

/// Complex scalar used for every matrix entry and amplitude.
pub type C64 = num_complex::Complex64;
