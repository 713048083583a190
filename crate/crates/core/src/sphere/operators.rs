//! Finite-difference realizations of the geometric momentum, the posmom
//! components `Q_i = (x_i p_i + p_i x_i)/2` and `L_z` on the unit sphere
//! (`ħ = r = 1`).

use num_complex::Complex64;
use serde::{Deserialize, Serialize};

use super::point::{AngularPoint, ScalarField};
use crate::error::{Error, Result};

const I: Complex64 = Complex64::new(0.0, 1.0);

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub enum Axis {
    X,
    Y,
    Z,
}

impl Axis {
    pub const ALL: [Axis; 3] = [Axis::X, Axis::Y, Axis::Z];

    fn coordinate(self, p: AngularPoint) -> f64 {
        p.cartesian()[self as usize]
    }
}

/// Central-difference stencil, optionally Richardson-extrapolated
/// (`(4 D_{h/2} - D_h) / 3`).
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Stencil {
    step: f64,
    richardson: bool,
}

impl Stencil {
    pub const DEFAULT_STEP: f64 = 1e-4;

    pub fn new(step: f64) -> Self {
        Self {
            step,
            richardson: false,
        }
    }

    pub fn with_richardson(mut self) -> Self {
        self.richardson = true;
        self
    }

    pub fn step(&self) -> f64 {
        self.step
    }

    fn check(&self, p: AngularPoint) -> Result<()> {
        let h = self.step;
        if !(h.is_finite() && h > 0.0) {
            return Err(Error::Domain(format!("stencil step {h} must be positive")));
        }
        let t = p.theta();
        if t < 2.0 * h || t > std::f64::consts::PI - 2.0 * h {
            return Err(Error::Domain(format!(
                "θ = {t} closer than two steps ({h}) to a pole"
            )));
        }
        Ok(())
    }

    fn central<G: Fn(f64) -> Complex64>(&self, g: G) -> Complex64 {
        let d = |h: f64| (g(h) - g(-h)) / (2.0 * h);
        if self.richardson {
            (d(self.step / 2.0) * 4.0 - d(self.step)) / 3.0
        } else {
            d(self.step)
        }
    }
}

impl Default for Stencil {
    fn default() -> Self {
        Self::new(Self::DEFAULT_STEP)
    }
}

impl From<f64> for Stencil {
    fn from(step: f64) -> Self {
        Self::new(step)
    }
}

fn d_theta<F: ScalarField + ?Sized>(field: &F, p: AngularPoint, st: Stencil) -> Complex64 {
    st.central(|h| field.eval(AngularPoint::wrapped(p.theta() + h, p.phi())))
}

fn d_phi<F: ScalarField + ?Sized>(field: &F, p: AngularPoint, st: Stencil) -> Complex64 {
    st.central(|h| field.eval(AngularPoint::wrapped(p.theta(), p.phi() + h)))
}

fn momentum<F: ScalarField + ?Sized>(axis: Axis, field: &F, p: AngularPoint, st: Stencil) -> Complex64 {
    let (st_, ct) = p.theta().sin_cos();
    let (sp, cp) = p.phi().sin_cos();
    let psi = field.eval(p);
    match axis {
        Axis::X => {
            -I * (d_theta(field, p, st) * (ct * cp) - d_phi(field, p, st) * (sp / st_) - psi * (st_ * cp))
        }
        Axis::Y => {
            -I * (d_theta(field, p, st) * (ct * sp) + d_phi(field, p, st) * (cp / st_) - psi * (st_ * sp))
        }
        Axis::Z => I * (d_theta(field, p, st) * st_ + psi * ct),
    }
}

fn posmom<F: ScalarField + ?Sized>(axis: Axis, field: &F, p: AngularPoint, st: Stencil) -> Complex64 {
    let x = axis.coordinate(p);
    let product = |q: AngularPoint| field.eval(q) * axis.coordinate(q);
    (momentum(axis, field, p, st) * x + momentum(axis, &product, p, st)) * 0.5
}

fn qz<F: ScalarField + ?Sized>(field: &F, p: AngularPoint, st: Stencil) -> Complex64 {
    let (s, c) = p.theta().sin_cos();
    I * (d_theta(field, p, st) * (s * c) + field.eval(p) * (1.5 * c * c - 0.5))
}

fn lz<F: ScalarField + ?Sized>(field: &F, p: AngularPoint, st: Stencil) -> Complex64 {
    -I * d_phi(field, p, st)
}

/// `(p_i ψ)(point)` for the geometric momentum
/// `p = -i(∇_{S²} - n)`, including the mean-curvature term.
pub fn geometric_momentum_apply<F: ScalarField + ?Sized>(
    axis: Axis,
    field: &F,
    point: AngularPoint,
    step: impl Into<Stencil>,
) -> Result<Complex64> {
    let st = step.into();
    st.check(point)?;
    Ok(momentum(axis, field, point, st))
}

/// `(Q_i ψ)(point)` built literally as `(x_i p_i ψ + p_i (x_i ψ)) / 2`.
pub fn posmom_apply<F: ScalarField + ?Sized>(
    axis: Axis,
    field: &F,
    point: AngularPoint,
    step: impl Into<Stencil>,
) -> Result<Complex64> {
    let st = step.into();
    st.check(point)?;
    Ok(posmom(axis, field, point, st))
}

/// `((x·p + p·x) ψ)(point) = 2 (Q_x + Q_y + Q_z) ψ`, which vanishes
/// identically on the sphere.
pub fn normal_posmom_apply<F: ScalarField + ?Sized>(
    field: &F,
    point: AngularPoint,
    step: impl Into<Stencil>,
) -> Result<Complex64> {
    let st = step.into();
    st.check(point)?;
    Ok(Axis::ALL
        .iter()
        .map(|&axis| posmom(axis, field, point, st) * 2.0)
        .sum())
}

/// `(Q_z ψ)(point) = i (sinθ cosθ ∂_θ + (3/2) cos²θ - 1/2) ψ`.
pub fn qz_apply<F: ScalarField + ?Sized>(
    field: &F,
    point: AngularPoint,
    step: impl Into<Stencil>,
) -> Result<Complex64> {
    let st = step.into();
    st.check(point)?;
    Ok(qz(field, point, st))
}

/// `(L_z ψ)(point) = -i ∂_φ ψ`.
pub fn lz_apply<F: ScalarField + ?Sized>(
    field: &F,
    point: AngularPoint,
    step: impl Into<Stencil>,
) -> Result<Complex64> {
    let st = step.into();
    st.check(point)?;
    Ok(lz(field, point, st))
}

/// `([Q_z, L_z] ψ)(point)` by nested stencils.
pub fn qz_lz_commutator<F: ScalarField + ?Sized>(
    field: &F,
    point: AngularPoint,
    step: impl Into<Stencil>,
) -> Result<Complex64> {
    let st = step.into();
    st.check(point)?;
    let lz_field = |q: AngularPoint| lz(field, q, st);
    let qz_field = |q: AngularPoint| qz(field, q, st);
    Ok(qz(&lz_field, point, st) - lz(&qz_field, point, st))
}
