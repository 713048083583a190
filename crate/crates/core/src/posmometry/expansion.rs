use num_complex::Complex64;
use std::collections::BTreeMap;
use std::f64::consts::{FRAC_1_SQRT_2, TAU};

use super::amplitude::INV_SQRT_2PI;
use super::analysis::trapezoid;
use super::types::{LambdaGrid, ParitySector, QuadratureConfig};
use super::weight::polar_from_u;
use crate::error::{Error, Result};
use crate::exec::Execution;
use crate::quadrature::FourierTable;
use crate::sphere::{psi_eigenfunction, reflect_theta, AngularPoint, EigenfunctionSpec, ScalarField};

/// Options for [`expand_state_grid`].
#[derive(Debug, Clone, Copy, PartialEq, Eq, Default)]
pub struct ExpandOptions {
    /// Largest `l` present in the state; sets the azimuthal orders and
    /// the quadrature resolution.
    pub degree_hint: u32,
    pub execution: Execution,
}

/// A state sampled once on the `u`-quadrature nodes and projected onto
/// `e^{imφ}` for a fixed set of orders, ready for transforms at any
/// `|λ|` up to the bound it was built for.
pub struct StateProjection {
    orders: Vec<i32>,
    /// `[even, odd]` per order
    tables: Vec<[FourierTable; 2]>,
    max_abs_lambda: f64,
    config: QuadratureConfig,
}

impl StateProjection {
    pub fn new<F: ScalarField + ?Sized>(
        psi: &F,
        orders: &[i32],
        max_abs_lambda: f64,
        degree_hint: u32,
        config: &QuadratureConfig,
    ) -> Result<Self> {
        config.validate()?;
        if orders.is_empty() {
            return Err(Error::Domain("no azimuthal orders requested".into()));
        }
        if !max_abs_lambda.is_finite() {
            return Err(Error::Domain(format!("frequency bound {max_abs_lambda} is not finite")));
        }
        let max_order = orders.iter().map(|m| m.unsigned_abs()).max().unwrap_or(0);
        let samples = config
            .azimuthal_samples
            .max(2 * (degree_hint.max(max_order) as usize) + 2);
        let phis: Vec<f64> = (0..samples).map(|j| TAU * j as f64 / samples as f64).collect();
        let norm = TAU.sqrt() / samples as f64;
        let phases: Vec<Vec<Complex64>> = orders
            .iter()
            .map(|&m| {
                phis.iter()
                    .map(|&p| Complex64::from_polar(norm, -(m as f64) * p))
                    .collect()
            })
            .collect();

        let width = config.panel_width(max_abs_lambda.abs(), degree_hint.max(max_order));
        let k = orders.len();
        let sampler = |u: f64, out: &mut [Complex64]| {
            let (c, s) = polar_from_u(u);
            let theta = s.atan2(c);
            let mirrored = reflect_theta(theta);
            let north: Vec<Complex64> = phis.iter().map(|&p| psi.eval(AngularPoint::wrapped(theta, p))).collect();
            let south: Vec<Complex64> = phis
                .iter()
                .map(|&p| psi.eval(AngularPoint::wrapped(mirrored, p)))
                .collect();
            let jac = FRAC_1_SQRT_2 * s * c.sqrt();
            for (i, ph) in phases.iter().enumerate() {
                let gn: Complex64 = ph.iter().zip(&north).map(|(a, b)| a * b).sum();
                let gs: Complex64 = ph.iter().zip(&south).map(|(a, b)| a * b).sum();
                out[2 * i] = (gn + gs) * jac;
                out[2 * i + 1] = (gn - gs) * jac;
            }
        };
        let mut flat = FourierTable::new_many(config.u_max, width, config.panel_order, 2 * k, sampler).into_iter();
        let mut tables = Vec::with_capacity(k);
        for _ in 0..k {
            let even = flat.next().expect("two tables per order");
            let odd = flat.next().expect("two tables per order");
            tables.push([even, odd]);
        }
        Ok(Self {
            orders: orders.to_vec(),
            tables,
            max_abs_lambda: max_abs_lambda.abs(),
            config: *config,
        })
    }

    pub fn orders(&self) -> &[i32] {
        &self.orders
    }

    /// `c_m^±(λ)`.
    pub fn coefficient(&self, m: i32, parity: ParitySector, lambda: f64) -> Result<Complex64> {
        if !lambda.is_finite() || lambda.abs() > self.max_abs_lambda * (1.0 + 1e-12) {
            return Err(Error::Domain(format!(
                "lambda {lambda} outside the projection bound {}",
                self.max_abs_lambda
            )));
        }
        let idx = self
            .orders
            .iter()
            .position(|&o| o == m)
            .ok_or_else(|| Error::Domain(format!("order {m} was not projected")))?;
        let table = &self.tables[idx][match parity {
            ParitySector::Even => 0,
            ParitySector::Odd => 1,
        }];
        let e = table.transform(lambda);
        let value = e.value * INV_SQRT_2PI;
        let error = e.error * INV_SQRT_2PI;
        let allowed = self.config.allowed_error(value.norm());
        if error > allowed {
            return Err(Error::ToleranceNotMet {
                lambda,
                estimate: error,
                allowed,
            });
        }
        Ok(value)
    }
}

/// `c_m^±(λ) = ∮ Φ_m^*(φ) Ψ_λ^{±*}(θ) ψ(θ, φ) sin θ dθ dφ`.
///
/// The quadrature is refined until its error estimate meets the
/// configured tolerance, so no degree hint is needed.
pub fn expand_state<F: ScalarField + ?Sized>(
    psi: &F,
    m: i32,
    parity: ParitySector,
    lambda_z: f64,
    config: &QuadratureConfig,
) -> Result<Complex64> {
    let mut cfg = *config;
    let mut last = None;
    for _ in 0..4 {
        let proj = StateProjection::new(psi, &[m], lambda_z, m.unsigned_abs(), &cfg)?;
        match proj.coefficient(m, parity, lambda_z) {
            Err(e @ Error::ToleranceNotMet { .. }) => {
                last = Some(e);
                cfg.panel_scale /= 2.0;
            }
            other => return other,
        }
    }
    Err(last.expect("loop ran at least once"))
}

/// Coefficients of a state on a λ-grid for every order `|m| <= degree_hint`
/// and both parity sectors.
#[derive(Debug, Clone, PartialEq)]
pub struct ExpansionCoefficients {
    grid: LambdaGrid,
    blocks: BTreeMap<(i32, ParitySector), Vec<Complex64>>,
}

impl ExpansionCoefficients {
    pub fn new(grid: LambdaGrid) -> Self {
        Self {
            grid,
            blocks: BTreeMap::new(),
        }
    }

    pub fn insert(&mut self, m: i32, parity: ParitySector, values: Vec<Complex64>) -> Result<()> {
        if values.len() != self.grid.count() {
            return Err(Error::Domain(format!(
                "{} coefficients for a grid of {} points",
                values.len(),
                self.grid.count()
            )));
        }
        self.blocks.insert((m, parity), values);
        Ok(())
    }

    pub fn grid(&self) -> &LambdaGrid {
        &self.grid
    }

    pub fn get(&self, m: i32, parity: ParitySector) -> Option<&[Complex64]> {
        self.blocks.get(&(m, parity)).map(Vec::as_slice)
    }

    pub fn blocks(&self) -> impl Iterator<Item = (i32, ParitySector, &[Complex64])> {
        self.blocks.iter().map(|(&(m, p), v)| (m, p, v.as_slice()))
    }

    /// `∫ |c_m^±|² dλ` for one block.
    pub fn weight(&self, m: i32, parity: ParitySector) -> f64 {
        self.get(m, parity)
            .map(|v| trapezoid(&v.iter().map(|c| c.norm_sqr()).collect::<Vec<_>>(), self.grid.spacing()))
            .unwrap_or(0.0)
    }

    /// `Σ_m Σ_± ∫ |c_m^±|² dλ`, which equals the squared norm of the
    /// state when the grid captures all of its weight.
    pub fn parseval(&self) -> f64 {
        self.blocks.keys().map(|&(m, p)| self.weight(m, p)).sum()
    }

    /// Largest `|c|` at either grid edge relative to the largest `|c|` overall.
    pub fn truncation_level(&self) -> f64 {
        let mut edge: f64 = 0.0;
        let mut peak: f64 = 0.0;
        for v in self.blocks.values() {
            peak = v.iter().map(|c| c.norm()).fold(peak, f64::max);
            if let (Some(a), Some(b)) = (v.first(), v.last()) {
                edge = edge.max(a.norm()).max(b.norm());
            }
        }
        if peak == 0.0 {
            0.0
        } else {
            edge / peak
        }
    }
}

/// Expand `psi` over `grid` for orders `-degree_hint..=degree_hint`.
pub fn expand_state_grid<F: ScalarField + ?Sized>(
    psi: &F,
    grid: &LambdaGrid,
    config: &QuadratureConfig,
    options: ExpandOptions,
) -> Result<ExpansionCoefficients> {
    let l = options.degree_hint as i32;
    let orders: Vec<i32> = (-l..=l).collect();
    let proj = StateProjection::new(psi, &orders, grid.max_abs(), options.degree_hint, config)?;
    let lambdas = grid.values();
    let mut out = ExpansionCoefficients::new(*grid);
    for &m in &orders {
        for parity in ParitySector::BOTH {
            let values = options
                .execution
                .map(&lambdas, |&lam| proj.coefficient(m, parity, lam))?;
            out.insert(m, parity, values)?;
        }
    }
    Ok(out)
}

/// `ψ(θ, φ) ≈ Σ_m Σ_± ∫ c_m^±(λ) Ψ_λ^±(θ) dλ · e^{imφ}/√(2π)`, with the
/// λ-integral taken by the trapezoid rule on the coefficient grid.
pub fn reconstruct_state(coeffs: &ExpansionCoefficients, point: AngularPoint) -> Result<Complex64> {
    let level = coeffs.truncation_level();
    if level > 1e-6 {
        log::warn!("expansion coefficients reach {level:.2e} of their peak at the grid edge; reconstruction is truncated");
    }
    let grid = coeffs.grid();
    let h = grid.spacing();
    let last = grid.count() - 1;
    let theta = point.theta();
    let mut total = Complex64::new(0.0, 0.0);
    for (m, parity, values) in coeffs.blocks() {
        if values.iter().all(|c| *c == Complex64::new(0.0, 0.0)) {
            continue;
        }
        let mut radial = Complex64::new(0.0, 0.0);
        for (k, c) in values.iter().enumerate() {
            let lambda = grid.value(k);
            let psi = psi_eigenfunction(EigenfunctionSpec::new(lambda, parity)?, theta)?;
            let w = if k == 0 || k == last { 0.5 * h } else { h };
            radial += c * psi * w;
        }
        total += radial * Complex64::from_polar(INV_SQRT_2PI, m as f64 * point.phi());
    }
    Ok(total)
}
