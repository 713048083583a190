//! Comparison of posmograms with momentum densities of the 1-D harmonic
//! oscillator, after matching second moments.

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::posmometry::{count_antinodes, count_density_nodes, trapezoid, ModeIndex, Posmogram, DEFAULT_NODE_THRESHOLD};
use crate::specfun::sho_momentum_density;

/// Threshold on `linf_diff / peak` under which two densities are called
/// almost identical. This is a convention of this crate, not a physical bound.
pub const RESEMBLANCE_LINF: f64 = 0.05;

/// Relative height above which a local maximum counts as an antinode.
pub const ANTINODE_THRESHOLD: f64 = 1e-3;

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct ComparisonReport {
    pub mode: ModeIndex,
    pub sho_level: u32,
    /// `s` in `s |φ_n(s λ)|²`
    pub scale: f64,
    pub linf_diff: f64,
    pub l1_diff: f64,
    pub variance_posmom: f64,
    pub variance_sho: f64,
    pub peak_density: f64,
    /// `linf_diff / peak_density`
    pub linf_relative: f64,
    pub mass_posmom: f64,
    pub mass_sho: f64,
    pub nodes_posmom: usize,
    pub nodes_sho: usize,
    pub antinodes_posmom: usize,
    pub antinodes_sho: usize,
}

impl ComparisonReport {
    pub fn resembles(&self) -> bool {
        self.linf_relative < RESEMBLANCE_LINF
    }
}

/// Posmom density next to the rescaled oscillator density on the same grid.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct Overlay {
    pub lambda: Vec<f64>,
    pub posmom: Vec<f64>,
    pub sho: Vec<f64>,
    pub scale: f64,
}

/// `(mass, second moment / mass)` of a sampled density.
fn moments(lambdas: &[f64], density: &[f64], spacing: f64) -> (f64, f64) {
    let mass = trapezoid(density, spacing);
    let second: Vec<f64> = lambdas.iter().zip(density).map(|(l, d)| l * l * d).collect();
    (mass, trapezoid(&second, spacing) / mass)
}

/// Scale `s` such that `s |φ_n(s λ)|²` has the variance of `density`.
///
/// The oscillator density has variance `n + 1/2`, so `s = √((n + 1/2)/V)`.
pub fn fit_scale_density(lambdas: &[f64], density: &[f64], n: u32) -> Result<f64> {
    if lambdas.len() != density.len() || lambdas.len() < 2 {
        return Err(Error::Domain("density and grid must have equal length >= 2".into()));
    }
    let spacing = lambdas[1] - lambdas[0];
    let (mass, var) = moments(lambdas, density, spacing);
    if !(mass > 0.0 && var.is_finite() && var > 0.0) {
        return Err(Error::NonFinite("posmogram variance"));
    }
    if (mass - 1.0).abs() > 1e-4 {
        log::warn!("density integrates to {mass}; variance uses the mass-normalized second moment");
    }
    Ok(((n as f64 + 0.5) / var).sqrt())
}

pub fn fit_scale(p: &Posmogram, n: u32) -> Result<f64> {
    fit_scale_density(&p.grid().values(), p.density(), n)
}

pub fn overlay(p: &Posmogram, n: u32) -> Result<Overlay> {
    let lambda = p.grid().values();
    let scale = fit_scale_density(&lambda, p.density(), n)?;
    let sho = lambda.iter().map(|&l| scale * sho_momentum_density(n, scale * l)).collect();
    Ok(Overlay {
        lambda,
        posmom: p.density().to_vec(),
        sho,
        scale,
    })
}

pub fn compare(p: &Posmogram, n: u32) -> Result<ComparisonReport> {
    let o = overlay(p, n)?;
    let h = p.grid().spacing();
    let diff: Vec<f64> = o.posmom.iter().zip(&o.sho).map(|(a, b)| (a - b).abs()).collect();
    let linf_diff = diff.iter().cloned().fold(0.0, f64::max);
    let l1_diff = trapezoid(&diff, h);
    let (mass_posmom, variance_posmom) = moments(&o.lambda, &o.posmom, h);
    let (mass_sho, variance_sho) = moments(&o.lambda, &o.sho, h);
    let peak_density = o.posmom.iter().cloned().fold(0.0, f64::max);
    Ok(ComparisonReport {
        mode: p.mode(),
        sho_level: n,
        scale: o.scale,
        linf_diff,
        l1_diff,
        variance_posmom,
        variance_sho,
        peak_density,
        linf_relative: linf_diff / peak_density,
        mass_posmom,
        mass_sho,
        nodes_posmom: count_density_nodes(&o.posmom, DEFAULT_NODE_THRESHOLD),
        nodes_sho: count_density_nodes(&o.sho, DEFAULT_NODE_THRESHOLD),
        antinodes_posmom: count_antinodes(&o.posmom, ANTINODE_THRESHOLD),
        antinodes_sho: count_antinodes(&o.sho, ANTINODE_THRESHOLD),
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn self_match_has_unit_scale() {
        for n in [0, 3, 10] {
            let lambdas: Vec<f64> = (0..=4000).map(|k| -20.0 + 0.01 * k as f64).collect();
            let d: Vec<f64> = lambdas.iter().map(|&l| sho_momentum_density(n, l)).collect();
            let s = fit_scale_density(&lambdas, &d, n).unwrap();
            assert!((s - 1.0).abs() < 1e-6, "n={n}: {s}");
        }
    }

    #[test]
    fn rejects_empty_density() {
        let lambdas = [0.0, 1.0, 2.0];
        assert!(fit_scale_density(&lambdas, &[0.0; 3], 0).is_err());
        assert!(fit_scale_density(&lambdas, &[0.0; 2], 0).is_err());
    }
}
