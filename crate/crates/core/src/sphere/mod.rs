//! Geometry, operators and eigenfunctions on the unit sphere.

mod eigen;
mod harmonics;
mod operators;
mod point;

pub use eigen::{psi_eigenfunction, qxyz_simultaneous_eigenfunction, EigenfunctionSpec, EPS_EQUATOR, EPS_POLE};
pub use harmonics::{SphericalHarmonic, Superposition, Term};
pub use operators::{
    geometric_momentum_apply, lz_apply, normal_posmom_apply, posmom_apply, qz_apply, qz_lz_commutator, Axis,
    Stencil,
};
pub use point::{AngularPoint, ScalarField};
pub(crate) use point::reflect_theta;
