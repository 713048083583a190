//! Closed-form eigenfunctions of the posmom operators.

use num_complex::Complex64;
use serde::{Deserialize, Serialize};
use std::f64::consts::{FRAC_1_SQRT_2, FRAC_PI_2, PI, TAU};

use super::point::{reflect_theta, AngularPoint};
use crate::error::{Error, Result};
use crate::posmometry::ParitySector;

/// Distance from a pole inside which eigenfunctions are not evaluated.
pub const EPS_POLE: f64 = 1e-6;
/// Distance from the equator inside which eigenfunctions are not evaluated.
pub const EPS_EQUATOR: f64 = 1e-6;

const INV_SQRT_2PI: f64 = 0.398_942_280_401_432_7;

/// Label of a `Q_z` eigenfunction `Ψ_λ^±`.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct EigenfunctionSpec {
    pub lambda_z: f64,
    pub parity: ParitySector,
}

impl EigenfunctionSpec {
    pub fn new(lambda_z: f64, parity: ParitySector) -> Result<Self> {
        if !lambda_z.is_finite() {
            return Err(Error::Domain(format!("eigenvalue {lambda_z} is not finite")));
        }
        Ok(Self { lambda_z, parity })
    }
}

fn guard_theta(theta: f64) -> Result<()> {
    if !(theta > 0.0 && theta < PI) {
        return Err(Error::Domain(format!("θ = {theta} outside (0, π)")));
    }
    if theta < EPS_POLE || theta > PI - EPS_POLE {
        return Err(Error::Domain(format!("θ = {theta} too close to a pole")));
    }
    if (theta - FRAC_PI_2).abs() < EPS_EQUATOR {
        return Err(Error::Domain(format!("θ = {theta} too close to the equator")));
    }
    Ok(())
}

/// Northern-hemisphere branch `Ψ^I_λ(θ) = (2π)^{-1/2} e^{-iλ ln tanθ} / (sinθ √cosθ)`
/// for `θ < π/2`.
fn northern(lambda: f64, theta: f64) -> Complex64 {
    let (s, c) = theta.sin_cos();
    let phase = Complex64::from_polar(1.0, -lambda * theta.tan().ln());
    phase * (INV_SQRT_2PI / (s * c.sqrt()))
}

/// `Ψ_λ^±(θ)`, the parity-adapted eigenfunction of `Q_z` with eigenvalue `λ`.
///
/// The southern half is the exact mirror of the northern half, so
/// `Ψ^±(π - θ) = ±Ψ^±(θ)` holds bit-for-bit.
pub fn psi_eigenfunction(spec: EigenfunctionSpec, theta: f64) -> Result<Complex64> {
    guard_theta(theta)?;
    if theta < FRAC_PI_2 {
        Ok(northern(spec.lambda_z, theta) * FRAC_1_SQRT_2)
    } else {
        let mirrored = reflect_theta(theta);
        Ok(northern(spec.lambda_z, mirrored) * (spec.parity.sign() * FRAC_1_SQRT_2))
    }
}

/// Simultaneous eigenfunction of `(Q_x, Q_y, Q_z)` with eigenvalues
/// `(a_x, a_y, -(a_x + a_y))`:
/// `tan^{i(a_x+a_y)}θ cos^{i a_x}φ sin^{i a_y}φ / (sinθ √cosθ √sin2φ)`,
/// all powers and roots on principal branches.
pub fn qxyz_simultaneous_eigenfunction(a_x: f64, a_y: f64, point: AngularPoint) -> Result<Complex64> {
    if !(a_x.is_finite() && a_y.is_finite()) {
        return Err(Error::Domain("eigenvalues must be finite".into()));
    }
    let theta = point.theta();
    guard_theta(theta)?;
    let phi = point.phi();
    let quarter = FRAC_PI_2;
    let nearest = (phi / quarter).round() * quarter;
    if (phi - nearest).abs() < EPS_EQUATOR || (phi - TAU).abs() < EPS_EQUATOR {
        return Err(Error::Domain(format!(
            "φ = {phi} too close to a multiple of π/2"
        )));
    }
    let i = Complex64::i();
    let (st, ct) = theta.sin_cos();
    let (sp, cp) = phi.sin_cos();
    let log = |x: f64| Complex64::from(x).ln();
    let sqrt = |x: f64| Complex64::from(x).sqrt();
    let num = (i * (a_x + a_y) * log(theta.tan())).exp()
        * (i * a_x * log(cp)).exp()
        * (i * a_y * log(sp)).exp();
    Ok(num / (sqrt(ct) * sqrt(2.0 * sp * cp) * st))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::sphere::operators::{qz_apply, Stencil};

    fn spec(l: f64, p: ParitySector) -> EigenfunctionSpec {
        EigenfunctionSpec::new(l, p).unwrap()
    }

    #[test]
    fn spot_value_at_quarter_pi() {
        let v = psi_eigenfunction(spec(0.0, ParitySector::Even), PI / 4.0).unwrap();
        let want = FRAC_1_SQRT_2 * INV_SQRT_2PI * 2f64.powf(0.75);
        assert!((v.re - want).abs() < 1e-15 && v.im.abs() < 1e-15);
        assert!((v.re - 0.47440).abs() < 5e-5);
    }

    #[test]
    fn exact_parity() {
        for &l in &[-3.0, 0.0, 0.5, 7.0] {
            for &t in &[0.1, 0.5, 1.2, 1.5] {
                let e = spec(l, ParitySector::Even);
                let o = spec(l, ParitySector::Odd);
                let r = PI - t;
                let t2 = PI - r;
                assert_eq!(psi_eigenfunction(e, t2).unwrap(), psi_eigenfunction(e, r).unwrap());
                assert_eq!(psi_eigenfunction(o, t2).unwrap(), -psi_eigenfunction(o, r).unwrap());
            }
        }
    }

    #[test]
    fn guards() {
        let e = spec(1.0, ParitySector::Even);
        assert!(psi_eigenfunction(e, 1e-7).is_err());
        assert!(psi_eigenfunction(e, PI - 1e-7).is_err());
        assert!(psi_eigenfunction(e, FRAC_PI_2 + 1e-7).is_err());
        assert!(psi_eigenfunction(e, 0.0).is_err());
        assert!(EigenfunctionSpec::new(f64::NAN, ParitySector::Odd).is_err());
        let p = AngularPoint::new(1.0, FRAC_PI_2 + 1e-8).unwrap();
        assert!(qxyz_simultaneous_eigenfunction(0.5, 0.5, p).is_err());
        let p = AngularPoint::new(1.0, TAU - 1e-8).unwrap();
        assert!(qxyz_simultaneous_eigenfunction(0.5, 0.5, p).is_err());
    }

    #[test]
    fn qz_eigenvalue_by_stencil() {
        let f = |p: AngularPoint| northern(1.5, p.theta());
        let p = AngularPoint::new(0.7, 0.0).unwrap();
        let v = qz_apply(&f, p, Stencil::default()).unwrap();
        assert!((v - f(p) * 1.5).norm() < 1e-6 * f(p).norm());
    }
}
