use super::types::ModeIndex;
use crate::specfun::NormalizedLegendre;

/// `(cos θ, sin θ)` at `u = ln tan θ`, accurate in both tails.
pub(crate) fn polar_from_u(u: f64) -> (f64, f64) {
    if u > 0.0 {
        let e = (-u).exp();
        let r = (1.0 + e * e).sqrt();
        (e / r, 1.0 / r)
    } else {
        let e = u.exp();
        let r = (1.0 + e * e).sqrt();
        (1.0 / r, e / r)
    }
}

/// `w(u) = (N_lm/√2) P_l^m(cos θ) sin θ √(cos θ)` with `u = ln tan θ`,
/// prepared once per mode.
#[derive(Debug, Clone)]
pub struct WeightFunction {
    legendre: NormalizedLegendre,
}

impl WeightFunction {
    pub fn new(mode: ModeIndex) -> Self {
        Self {
            legendre: NormalizedLegendre::new(mode.l(), mode.m()).expect("ModeIndex guarantees |m| <= l"),
        }
    }

    pub fn eval(&self, u: f64) -> f64 {
        if u > 700.0 || u.is_nan() {
            return 0.0;
        }
        let (c, s) = polar_from_u(u);
        self.legendre.eval(c, s) * std::f64::consts::FRAC_1_SQRT_2 * s * c.sqrt()
    }

    /// The southern-hemisphere counterpart, evaluated at `cos θ → -cos θ`.
    /// Equals `(-1)^{l+m} eval(u)` analytically.
    pub(crate) fn eval_mirrored(&self, u: f64) -> f64 {
        if u > 700.0 || u.is_nan() {
            return 0.0;
        }
        let (c, s) = polar_from_u(u);
        self.legendre.eval(-c, s) * std::f64::consts::FRAC_1_SQRT_2 * s * c.sqrt()
    }
}

/// Real weight whose Fourier transform gives the posmom amplitude.
///
/// The `[1 ± (-1)^{l+m}]` parity prefactor is not included.
pub fn weight_function(mode: ModeIndex, u: f64) -> f64 {
    WeightFunction::new(mode).eval(u)
}
