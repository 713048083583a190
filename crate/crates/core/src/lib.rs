//! Posmom (`xp`) distributions of rotational states on the unit sphere.
//!
//! The amplitude of a spherical harmonic `Y_lm` in the eigenbasis of
//! `Q_z = (z p_z + p_z z)/2` is a one-dimensional Fourier transform of a real
//! weight in `u = ln tan θ`; [`posmometry`] evaluates it by composite
//! Gauss–Legendre quadrature, [`closed_forms`] provides the hypergeometric
//! expressions of the six lowest modes as an independent check, and
//! [`sho`] compares the resulting densities with oscillator momentum
//! densities. Units are dimensionless throughout (`ħ = r = 1`).

pub mod closed_forms;
mod error;
mod exec;
pub mod posmometry;
pub mod quadrature;
pub mod sho;
pub mod specfun;
pub mod sphere;
pub mod validation;

pub use error::{Error, Result};
pub use exec::Execution;
pub use posmometry::{
    amplitude, count_nodes, normalization, posmogram, posmogram_with, LambdaGrid, ModeIndex, ParitySector, Posmogram,
    QuadratureConfig,
};
