use num_complex::Complex64;
use serde::{Deserialize, Serialize};
use std::f64::consts::{PI, TAU};

use crate::error::{Error, Result};

/// A point on the unit sphere away from the poles.
///
/// `theta` lies strictly inside `(0, π)`; `phi` is wrapped into `[0, 2π)`.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct AngularPoint {
    theta: f64,
    phi: f64,
}

impl AngularPoint {
    pub fn new(theta: f64, phi: f64) -> Result<Self> {
        if !(theta > 0.0 && theta < PI) {
            return Err(Error::Domain(format!("polar angle {theta} outside (0, π)")));
        }
        if !phi.is_finite() {
            return Err(Error::Domain(format!("azimuth {phi} is not finite")));
        }
        Ok(Self::wrapped(theta, phi))
    }

    pub(crate) fn wrapped(theta: f64, phi: f64) -> Self {
        let mut phi = phi.rem_euclid(TAU);
        if phi >= TAU {
            phi = 0.0;
        }
        Self { theta, phi }
    }

    pub fn theta(&self) -> f64 {
        self.theta
    }

    pub fn phi(&self) -> f64 {
        self.phi
    }

    /// Mirror image through the equator, `θ → π - θ`.
    pub fn reflected(&self) -> Self {
        Self {
            theta: reflect_theta(self.theta),
            phi: self.phi,
        }
    }

    /// `(x, y, z)` on the unit sphere.
    pub fn cartesian(&self) -> [f64; 3] {
        let (st, ct) = self.theta.sin_cos();
        let (sp, cp) = self.phi.sin_cos();
        [st * cp, st * sp, ct]
    }
}

/// `π - θ`, kept strictly below the floating-point `π` for tiny `θ`.
pub(crate) fn reflect_theta(theta: f64) -> f64 {
    let r = PI - theta;
    if r >= PI {
        f64::from_bits(PI.to_bits() - 1)
    } else {
        r
    }
}

/// A complex-valued function on the sphere.
///
/// Implementations must be safe to call from several threads at once.
pub trait ScalarField: Sync {
    fn eval(&self, point: AngularPoint) -> Complex64;
}

impl<F> ScalarField for F
where
    F: Fn(AngularPoint) -> Complex64 + Sync,
{
    fn eval(&self, point: AngularPoint) -> Complex64 {
        self(point)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn construction_and_wrapping() {
        assert!(AngularPoint::new(0.0, 0.0).is_err());
        assert!(AngularPoint::new(PI, 0.0).is_err());
        assert!(AngularPoint::new(1.0, f64::NAN).is_err());
        let p = AngularPoint::new(1.0, -0.5).unwrap();
        assert!((p.phi() - (TAU - 0.5)).abs() < 1e-15);
        let p = AngularPoint::new(1.0, 3.0 * TAU + 0.25).unwrap();
        assert!((p.phi() - 0.25).abs() < 1e-12);
    }

    #[test]
    fn reflection_stays_inside() {
        let p = AngularPoint::new(1e-30, 0.0).unwrap().reflected();
        assert!(p.theta() < PI);
        let q = AngularPoint::new(0.3, 1.0).unwrap().reflected();
        assert!((q.theta() - (PI - 0.3)).abs() < 1e-15);
    }

    #[test]
    fn cartesian_is_unit() {
        let p = AngularPoint::new(0.7, 2.1).unwrap();
        let [x, y, z] = p.cartesian();
        assert!((x * x + y * y + z * z - 1.0).abs() < 1e-15);
    }
}
