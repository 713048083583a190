use num_complex::Complex64;

use super::types::{LambdaGrid, ModeIndex, ParitySector, Posmogram, QuadratureConfig};
use super::weight::WeightFunction;
use crate::error::{Error, Result};
use crate::exec::Execution;
use crate::quadrature::{Estimate, FourierTable};

pub(crate) const INV_SQRT_2PI: f64 = 0.398_942_280_401_432_7;

/// Precomputed samples of the weight of one mode, valid for `|λ|` up to the
/// bound it was built for.
#[derive(Debug, Clone)]
pub struct AmplitudeTable {
    mode: ModeIndex,
    parity: ParitySector,
    max_abs_lambda: f64,
    prefactor: f64,
    table: Option<FourierTable>,
    config: QuadratureConfig,
}

impl AmplitudeTable {
    /// Table for `I_lm^±`. The vanishing sector is never integrated.
    pub fn new(mode: ModeIndex, parity: ParitySector, max_abs_lambda: f64, config: QuadratureConfig) -> Result<Self> {
        config.validate()?;
        if !max_abs_lambda.is_finite() {
            return Err(Error::Domain(format!("frequency bound {max_abs_lambda} is not finite")));
        }
        let vanishing = parity != mode.physical_parity();
        let table = if vanishing {
            None
        } else {
            let w = WeightFunction::new(mode);
            Some(build(mode, max_abs_lambda.abs(), &config, move |u| Complex64::from(w.eval(u))))
        };
        Ok(Self {
            mode,
            parity,
            max_abs_lambda: max_abs_lambda.abs(),
            prefactor: if vanishing { 0.0 } else { 2.0 * INV_SQRT_2PI },
            table,
            config,
        })
    }

    /// Table that integrates `(N/√2)[P(cos θ) ± P(-cos θ)] sin θ √cos θ` as
    /// written, without using the analytic parity of `P_l^m`.
    pub fn unreduced(mode: ModeIndex, parity: ParitySector, max_abs_lambda: f64, config: QuadratureConfig) -> Result<Self> {
        config.validate()?;
        let w = WeightFunction::new(mode);
        let sign = parity.sign();
        let table = build(mode, max_abs_lambda.abs(), &config, move |u| {
            Complex64::from(w.eval(u) + sign * w.eval_mirrored(u))
        });
        Ok(Self {
            mode,
            parity,
            max_abs_lambda: max_abs_lambda.abs(),
            prefactor: INV_SQRT_2PI,
            table: Some(table),
            config,
        })
    }

    pub fn mode(&self) -> ModeIndex {
        self.mode
    }

    pub fn parity(&self) -> ParitySector {
        self.parity
    }

    /// `true` when the parity prefactor is zero and every amplitude is exactly 0.
    pub fn is_vanishing(&self) -> bool {
        self.table.is_none()
    }

    pub fn panel_width(&self) -> Option<f64> {
        self.table.as_ref().map(FourierTable::panel_width)
    }

    /// Amplitude and its error estimate, without the tolerance check.
    pub fn estimate(&self, lambda: f64) -> Estimate {
        match &self.table {
            None => Estimate {
                value: Complex64::new(0.0, 0.0),
                error: 0.0,
            },
            Some(t) => {
                let e = t.transform(lambda);
                Estimate {
                    value: e.value * self.prefactor,
                    error: e.error * self.prefactor,
                }
            }
        }
    }

    /// `I_lm^±(λ)`, failing if the error estimate exceeds the configured tolerance.
    pub fn evaluate(&self, lambda: f64) -> Result<Complex64> {
        if !lambda.is_finite() {
            return Err(Error::Domain(format!("lambda {lambda} is not finite")));
        }
        if lambda.abs() > self.max_abs_lambda * (1.0 + 1e-12) {
            return Err(Error::Domain(format!(
                "lambda {lambda} beyond the table bound {}",
                self.max_abs_lambda
            )));
        }
        let e = self.estimate(lambda);
        let allowed = self.config.allowed_error(e.value.norm());
        if e.error > allowed {
            return Err(Error::ToleranceNotMet {
                lambda,
                estimate: e.error,
                allowed,
            });
        }
        if !(e.value.re.is_finite() && e.value.im.is_finite()) {
            return Err(Error::NonFinite("amplitude"));
        }
        Ok(e.value)
    }
}

fn build<F: Fn(f64) -> Complex64>(mode: ModeIndex, max_abs_lambda: f64, config: &QuadratureConfig, f: F) -> FourierTable {
    let width = config.panel_width(max_abs_lambda, mode.l());
    log::debug!("mode {mode}: panel width {width:.4} for |lambda| <= {max_abs_lambda}");
    FourierTable::new(config.u_max, width, config.panel_order, f)
}

/// `I_lm^±(λ) = [1 ± (-1)^{l+m}] (2π)^{-1/2} ∫ e^{iλu} w(u) du`.
pub fn amplitude(mode: ModeIndex, parity: ParitySector, lambda_z: f64, config: &QuadratureConfig) -> Result<Complex64> {
    AmplitudeTable::new(mode, parity, lambda_z, *config)?.evaluate(lambda_z)
}

/// Same as [`amplitude`], but integrating the parity combination explicitly
/// even in the sector where it vanishes.
pub fn amplitude_unreduced(
    mode: ModeIndex,
    parity: ParitySector,
    lambda_z: f64,
    config: &QuadratureConfig,
) -> Result<Complex64> {
    AmplitudeTable::unreduced(mode, parity, lambda_z, *config)?.evaluate(lambda_z)
}

/// Posmogram in the physical parity sector of `mode`.
pub fn posmogram(mode: ModeIndex, grid: &LambdaGrid, config: &QuadratureConfig) -> Result<Posmogram> {
    posmogram_with(mode, grid, config, Execution::default())
}

pub fn posmogram_with(mode: ModeIndex, grid: &LambdaGrid, config: &QuadratureConfig, exec: Execution) -> Result<Posmogram> {
    posmogram_in_sector(mode, mode.physical_parity(), grid, config, exec)
}

/// Posmogram in an explicit sector; the unphysical one is identically zero.
pub fn posmogram_in_sector(
    mode: ModeIndex,
    parity: ParitySector,
    grid: &LambdaGrid,
    config: &QuadratureConfig,
    exec: Execution,
) -> Result<Posmogram> {
    let table = AmplitudeTable::new(mode, parity, grid.max_abs(), *config)?;
    let lambdas = grid.values();
    let amplitudes = exec.map(&lambdas, |&l| table.evaluate(l))?;
    Ok(Posmogram::from_amplitudes(mode, parity, *grid, amplitudes, *config))
}

#[cfg(test)]
mod tests {
    use super::*;

    const I00: f64 = 1.046_049_620_053_101_8;

    fn mode(l: u32, m: i32) -> ModeIndex {
        ModeIndex::new(l, m).unwrap()
    }

    #[test]
    fn ground_state_at_zero() {
        let v = amplitude(mode(0, 0), ParitySector::Even, 0.0, &QuadratureConfig::default()).unwrap();
        assert!((v.re - I00).abs() < 1e-12, "{v}");
        assert!(v.im.abs() < 1e-15);
    }

    #[test]
    fn selection_rule_short_circuit() {
        let c = QuadratureConfig::default();
        let t = AmplitudeTable::new(mode(1, 0), ParitySector::Even, 5.0, c).unwrap();
        assert!(t.is_vanishing());
        assert_eq!(t.evaluate(2.0).unwrap(), Complex64::new(0.0, 0.0));
        let forced = amplitude_unreduced(mode(1, 0), ParitySector::Even, 2.0, &c).unwrap();
        assert!(forced.norm() < 1e-12);
        let both = amplitude_unreduced(mode(1, 0), ParitySector::Odd, 2.0, &c).unwrap();
        let reduced = amplitude(mode(1, 0), ParitySector::Odd, 2.0, &c).unwrap();
        assert!((both - reduced).norm() < 1e-12);
    }

    #[test]
    fn bound_is_enforced() {
        let t = AmplitudeTable::new(mode(0, 0), ParitySector::Even, 1.0, QuadratureConfig::default()).unwrap();
        assert!(t.evaluate(2.0).is_err());
        assert!(t.evaluate(f64::NAN).is_err());
    }

    #[test]
    fn tight_tolerance_is_reported() {
        let c = QuadratureConfig {
            rel_tol: 1e-300,
            abs_tol: 1e-300,
            ..Default::default()
        };
        let err = amplitude(mode(2, 0), ParitySector::Even, 3.0, &c).unwrap_err();
        assert!(matches!(err, Error::ToleranceNotMet { .. }));
    }

    #[test]
    fn posmogram_picks_physical_sector() {
        let g = LambdaGrid::symmetric(2.0, 41).unwrap();
        let p = posmogram(mode(5, 4), &g, &QuadratureConfig::default()).unwrap();
        assert_eq!(p.parity(), ParitySector::Odd);
        assert!(p.density().iter().all(|&d| d >= 0.0));
        let n = p.density().len();
        for k in 0..n {
            assert_eq!(p.density()[k], p.density()[n - 1 - k]);
        }
    }
}
