//! Qudit data re-uploading circuits and the multi-dimensional Fourier series
//! they generate.
//!
//! * [`numerics`]: dense complex linear algebra (Jacobi eigensolver, unitary
//!   exponentials, generalized Gell-Mann bases, gate application).
//! * [`circuits`]: encoding and trainable gates, the line / parallel / mixed
//!   ansatzes and their variants, expectation values.
//! * [`fourier`]: spectra, degeneracies, Fourier series, coefficient
//!   extraction and the degrees-of-freedom audit.
//! * [`fitting`]: datasets, the MSE cost, Nelder-Mead and fit metrics.

pub mod error;
pub mod circuits;
pub mod fitting;
pub mod fourier;
pub mod numerics;

pub use error::{Error, Result};
