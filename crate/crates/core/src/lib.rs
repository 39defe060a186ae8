//! Divergence phase index toolkit.
//!
//! A dimension-generic library for phase-based comparison of signals and
//! images, built on FFT-domain multiplier operators:
//!
//! * [`spectra`] — frequency grids and the Hilbert/Riesz spectral symbols;
//! * [`phase1d`] — 1D instantaneous phase, phase differences, bandpass,
//!   and pairwise-channel phase-difference matrices;
//! * [`riesznd`] — n-dimensional Riesz transforms, pointwise phase
//!   vectors, and steered transforms;
//! * [`dpi2d`] — the divergence phase index: wrapped phase-difference
//!   norms, blockwise matrices over uniform partitions, and elbow-method
//!   binarization;
//! * [`rotation`] — rotation estimation by matching Riesz vector fields;
//! * [`imaging`] — raster/matrix I/O and synthetic test textures.
//!
//! Everything operates on double precision, all values are immutable
//! after construction, and all operations are pure functions of their
//! inputs.

pub mod angle;
pub mod dpi2d;
pub mod error;
pub mod field;
pub mod imaging;
pub mod phase1d;
pub mod riesznd;
pub mod rotation;
pub mod spectra;

pub use error::{Error, Result};
pub use field::FieldND;

#[cfg(test)]
pub(crate) mod testutil;
