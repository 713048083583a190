use num_complex::Complex64;
use serde::{Deserialize, Serialize};
use std::collections::BTreeMap;

use super::point::{AngularPoint, ScalarField};
use crate::error::{Error, Result};
use crate::posmometry::ModeIndex;
use crate::specfun::NormalizedLegendre;

const INV_SQRT_2PI: f64 = 0.398_942_280_401_432_7;

/// `Y_lm(θ, φ) = N_lm P_l^m(cos θ) e^{imφ} / √(2π)` with the Condon–Shortley phase.
#[derive(Debug, Clone)]
pub struct SphericalHarmonic {
    mode: ModeIndex,
    legendre: NormalizedLegendre,
}

impl SphericalHarmonic {
    pub fn new(mode: ModeIndex) -> Self {
        let legendre = NormalizedLegendre::new(mode.l(), mode.m())
            .expect("ModeIndex guarantees |m| <= l");
        Self { mode, legendre }
    }

    pub fn mode(&self) -> ModeIndex {
        self.mode
    }

    /// The θ-part `N_lm P_l^m(cos θ)`.
    pub fn polar(&self, theta: f64) -> f64 {
        let (s, c) = theta.sin_cos();
        self.legendre.eval(c, s.abs())
    }
}

impl ScalarField for SphericalHarmonic {
    fn eval(&self, point: AngularPoint) -> Complex64 {
        let phase = Complex64::from_polar(INV_SQRT_2PI, self.mode.m() as f64 * point.phi());
        phase * self.polar(point.theta())
    }
}

/// A finite linear combination `Σ c_lm Y_lm`.
#[derive(Debug, Clone)]
pub struct Superposition {
    terms: Vec<(SphericalHarmonic, Complex64)>,
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct Term {
    pub mode: ModeIndex,
    pub coefficient: Complex64,
}

impl Superposition {
    /// Repeated modes are merged by adding their coefficients.
    pub fn new(terms: impl IntoIterator<Item = Term>) -> Result<Self> {
        let mut merged: BTreeMap<ModeIndex, Complex64> = BTreeMap::new();
        for t in terms {
            if !(t.coefficient.re.is_finite() && t.coefficient.im.is_finite()) {
                return Err(Error::NonFinite("superposition coefficient"));
            }
            *merged.entry(t.mode).or_default() += t.coefficient;
        }
        if merged.is_empty() {
            return Err(Error::Domain("superposition has no terms".into()));
        }
        Ok(Self {
            terms: merged
                .into_iter()
                .map(|(mode, c)| (SphericalHarmonic::new(mode), c))
                .collect(),
        })
    }

    /// `Σ |c_lm|²`, the squared norm on the sphere.
    pub fn norm_squared(&self) -> f64 {
        self.terms.iter().map(|(_, c)| c.norm_sqr()).sum()
    }

    pub fn is_normalized(&self, tol: f64) -> bool {
        (self.norm_squared() - 1.0).abs() <= tol
    }

    pub fn normalized(mut self) -> Result<Self> {
        let n = self.norm_squared().sqrt();
        if n == 0.0 {
            return Err(Error::Domain("cannot normalize the zero state".into()));
        }
        for (_, c) in &mut self.terms {
            *c /= n;
        }
        Ok(self)
    }

    pub fn terms(&self) -> impl Iterator<Item = Term> + '_ {
        self.terms.iter().map(|(y, c)| Term {
            mode: y.mode(),
            coefficient: *c,
        })
    }

    pub fn max_degree(&self) -> u32 {
        self.terms.iter().map(|(y, _)| y.mode().l()).max().unwrap_or(0)
    }
}

impl ScalarField for Superposition {
    fn eval(&self, point: AngularPoint) -> Complex64 {
        self.terms.iter().map(|(y, c)| c * y.eval(point)).sum()
    }
}
