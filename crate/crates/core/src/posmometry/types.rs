use num_complex::Complex64;
use serde::{Deserialize, Serialize};
use std::fmt;
use std::str::FromStr;

use crate::error::{Error, Result};

/// Angular-momentum labels `(l, m)` with `|m| <= l`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
#[serde(try_from = "RawMode")]
pub struct ModeIndex {
    l: u32,
    m: i32,
}

#[derive(Deserialize)]
struct RawMode {
    l: i64,
    m: i64,
}

impl TryFrom<RawMode> for ModeIndex {
    type Error = Error;
    fn try_from(raw: RawMode) -> Result<Self> {
        Self::from_signed(raw.l, raw.m)
    }
}

impl ModeIndex {
    pub fn new(l: u32, m: i32) -> Result<Self> {
        if m.unsigned_abs() > l {
            return Err(Error::InvalidMode {
                l: l as i64,
                m: m as i64,
            });
        }
        Ok(Self { l, m })
    }

    /// Accepts any integers and rejects negative `l` as well as `|m| > l`.
    pub fn from_signed(l: i64, m: i64) -> Result<Self> {
        let bad = Error::InvalidMode { l, m };
        let lu = u32::try_from(l).map_err(|_| bad.clone())?;
        let mi = i32::try_from(m).map_err(|_| bad)?;
        Self::new(lu, mi)
    }

    pub fn l(&self) -> u32 {
        self.l
    }

    pub fn m(&self) -> i32 {
        self.m
    }

    /// The sector in which `I_lm` does not vanish: `+` for even `l + m`.
    pub fn physical_parity(&self) -> ParitySector {
        if (self.l as i64 + self.m as i64) % 2 == 0 {
            ParitySector::Even
        } else {
            ParitySector::Odd
        }
    }

    /// `(l, -m)`
    pub fn reflected(&self) -> Self {
        Self {
            l: self.l,
            m: -self.m,
        }
    }
}

impl fmt::Display for ModeIndex {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "({}, {})", self.l, self.m)
    }
}

/// Equatorial parity of a `Q_z` eigenfunction.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
pub enum ParitySector {
    #[serde(rename = "+")]
    Even,
    #[serde(rename = "-")]
    Odd,
}

impl ParitySector {
    pub const BOTH: [ParitySector; 2] = [ParitySector::Even, ParitySector::Odd];

    pub fn sign(self) -> f64 {
        match self {
            ParitySector::Even => 1.0,
            ParitySector::Odd => -1.0,
        }
    }
}

impl fmt::Display for ParitySector {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            ParitySector::Even => "+",
            ParitySector::Odd => "-",
        })
    }
}

impl FromStr for ParitySector {
    type Err = Error;
    fn from_str(s: &str) -> Result<Self> {
        match s.trim().to_ascii_lowercase().as_str() {
            "+" | "even" | "+1" | "1" => Ok(ParitySector::Even),
            "-" | "odd" | "-1" => Ok(ParitySector::Odd),
            other => Err(Error::InvalidConfig(format!("unknown parity sector '{other}'"))),
        }
    }
}

/// Uniform grid of `count` posmom eigenvalues from `lo` to `hi` inclusive.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
#[serde(try_from = "RawGrid")]
pub struct LambdaGrid {
    lo: f64,
    hi: f64,
    count: usize,
}

#[derive(Deserialize)]
struct RawGrid {
    lo: f64,
    hi: f64,
    count: usize,
}

impl TryFrom<RawGrid> for LambdaGrid {
    type Error = Error;
    fn try_from(raw: RawGrid) -> Result<Self> {
        Self::new(raw.lo, raw.hi, raw.count)
    }
}

impl LambdaGrid {
    pub fn new(lo: f64, hi: f64, count: usize) -> Result<Self> {
        if !(lo.is_finite() && hi.is_finite()) {
            return Err(Error::InvalidConfig("grid bounds must be finite".into()));
        }
        if lo >= hi {
            return Err(Error::InvalidConfig(format!("grid requires lo < hi, got [{lo}, {hi}]")));
        }
        if count < 2 {
            return Err(Error::InvalidConfig(format!("grid needs at least 2 points, got {count}")));
        }
        Ok(Self { lo, hi, count })
    }

    /// `[-half_width, half_width]` with the given number of points.
    pub fn symmetric(half_width: f64, count: usize) -> Result<Self> {
        Self::new(-half_width, half_width, count)
    }

    pub fn lo(&self) -> f64 {
        self.lo
    }

    pub fn hi(&self) -> f64 {
        self.hi
    }

    pub fn count(&self) -> usize {
        self.count
    }

    pub fn spacing(&self) -> f64 {
        (self.hi - self.lo) / (self.count - 1) as f64
    }

    pub fn is_symmetric(&self) -> bool {
        self.lo == -self.hi
    }

    /// The `k`-th point. On a symmetric grid `value(n-1-k) == -value(k)`
    /// holds exactly.
    pub fn value(&self, k: usize) -> f64 {
        let last = self.count - 1;
        if k == 0 {
            return self.lo;
        }
        if k >= last {
            return self.hi;
        }
        ((last - k) as f64 * self.lo + k as f64 * self.hi) / last as f64
    }

    pub fn values(&self) -> Vec<f64> {
        (0..self.count).map(|k| self.value(k)).collect()
    }

    pub fn max_abs(&self) -> f64 {
        self.lo.abs().max(self.hi.abs())
    }
}

impl Default for LambdaGrid {
    fn default() -> Self {
        Self {
            lo: -12.0,
            hi: 12.0,
            count: 2401,
        }
    }
}

/// Numerical controls of the `u`-integral.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
#[serde(default)]
pub struct QuadratureConfig {
    /// The integral runs over `[-u_max, u_max]`.
    pub u_max: f64,
    /// Gauss–Legendre nodes per panel.
    pub panel_order: usize,
    pub rel_tol: f64,
    pub abs_tol: f64,
    /// Multiplies the oscillation-adapted panel width.
    pub panel_scale: f64,
    /// Azimuthal samples used when projecting a general state onto `e^{imφ}`.
    pub azimuthal_samples: usize,
}

impl Default for QuadratureConfig {
    fn default() -> Self {
        Self {
            u_max: 80.0,
            panel_order: 16,
            rel_tol: 1e-10,
            abs_tol: 1e-13,
            panel_scale: 1.0,
            azimuthal_samples: 64,
        }
    }
}

impl QuadratureConfig {
    pub fn validate(&self) -> Result<()> {
        let bad = |msg: String| Err(Error::InvalidConfig(msg));
        if !(self.u_max.is_finite() && self.u_max >= 40.0) {
            return bad(format!("u_max must be >= 40, got {}", self.u_max));
        }
        if !(8..=64).contains(&self.panel_order) {
            return bad(format!("panel_order must lie in [8, 64], got {}", self.panel_order));
        }
        if !(self.rel_tol > 0.0 && self.rel_tol.is_finite()) {
            return bad(format!("rel_tol must be positive, got {}", self.rel_tol));
        }
        if !(self.abs_tol > 0.0 && self.abs_tol.is_finite()) {
            return bad(format!("abs_tol must be positive, got {}", self.abs_tol));
        }
        if !(self.panel_scale > 0.0 && self.panel_scale <= 1.0) {
            return bad(format!("panel_scale must lie in (0, 1], got {}", self.panel_scale));
        }
        if self.azimuthal_samples < 4 {
            return bad(format!(
                "azimuthal_samples must be at least 4, got {}",
                self.azimuthal_samples
            ));
        }
        Ok(())
    }

    /// Panel width for frequencies up to `abs_lambda` and Legendre degree `l`.
    pub fn panel_width(&self, abs_lambda: f64, l: u32) -> f64 {
        let w = std::f64::consts::FRAC_PI_2 / (1.0 + abs_lambda + l as f64 / 4.0);
        self.panel_scale * w.min(1.0)
    }

    /// Tolerance allowed for an amplitude of magnitude `value`.
    pub fn allowed_error(&self, value: f64) -> f64 {
        self.abs_tol.max(self.rel_tol * value)
    }
}

/// Posmom distribution of one spherical harmonic over a grid of eigenvalues.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct Posmogram {
    mode: ModeIndex,
    parity: ParitySector,
    grid: LambdaGrid,
    amplitudes: Vec<Complex64>,
    density: Vec<f64>,
    config: QuadratureConfig,
}

impl Posmogram {
    pub(crate) fn from_amplitudes(
        mode: ModeIndex,
        parity: ParitySector,
        grid: LambdaGrid,
        amplitudes: Vec<Complex64>,
        config: QuadratureConfig,
    ) -> Self {
        debug_assert_eq!(amplitudes.len(), grid.count());
        let density = amplitudes.iter().map(|a| a.norm_sqr()).collect();
        Self {
            mode,
            parity,
            grid,
            amplitudes,
            density,
            config,
        }
    }

    pub fn mode(&self) -> ModeIndex {
        self.mode
    }

    pub fn parity(&self) -> ParitySector {
        self.parity
    }

    pub fn grid(&self) -> &LambdaGrid {
        &self.grid
    }

    pub fn amplitudes(&self) -> &[Complex64] {
        &self.amplitudes
    }

    pub fn density(&self) -> &[f64] {
        &self.density
    }

    pub fn config(&self) -> &QuadratureConfig {
        &self.config
    }

    /// `(λ, density)` of the largest sample.
    pub fn peak(&self) -> (f64, f64) {
        let (k, d) = self
            .density
            .iter()
            .enumerate()
            .fold((0, f64::NEG_INFINITY), |best, (k, &d)| if d > best.1 { (k, d) } else { best });
        (self.grid.value(k), d)
    }
}
