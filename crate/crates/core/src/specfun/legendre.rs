//! Associated Legendre functions with the Condon–Shortley phase.
//!
//! `P_l^m(x) = (-1)^m / (2^l l!) (1 - x^2)^{m/2} d^{l+m}/dx^{l+m} (x^2 - 1)^l`,
//! evaluated by upward recurrence in `l` from the diagonal `P_m^m`.

use crate::error::{Error, Result};

fn check_mode(l: u32, m: i32) -> Result<()> {
    if m.unsigned_abs() > l {
        return Err(Error::InvalidMode {
            l: l as i64,
            m: m as i64,
        });
    }
    Ok(())
}

/// `P_l^m(x)` for `|m| <= l`, `|x| <= 1`.
///
/// Negative orders use `P_l^{-m} = (-1)^m (l-m)!/(l+m)! P_l^m`.
pub fn assoc_legendre(l: u32, m: i32, x: f64) -> Result<f64> {
    check_mode(l, m)?;
    if !(-1.0..=1.0).contains(&x) {
        return Err(Error::Domain(format!("assoc_legendre: |x| = {} > 1", x.abs())));
    }
    let ma = m.unsigned_abs();
    let value = legendre_nonneg(l, ma, x);
    if m >= 0 {
        return Ok(value);
    }
    // (l-|m|)!/(l+|m|)! as a product of reciprocals
    let ratio: f64 = ((l - ma + 1)..=(l + ma)).map(|k| 1.0 / k as f64).product();
    let sign = if ma % 2 == 0 { 1.0 } else { -1.0 };
    Ok(sign * ratio * value)
}

fn legendre_nonneg(l: u32, m: u32, x: f64) -> f64 {
    let s2 = (1.0 - x) * (1.0 + x);
    let s = s2.max(0.0).sqrt();
    // P_m^m = (-1)^m (2m-1)!! s^m
    let mut pmm = 1.0;
    for k in 1..=m {
        pmm *= -((2 * k - 1) as f64) * s;
    }
    if l == m {
        return pmm;
    }
    let mut p_prev = pmm;
    let mut p = x * (2 * m + 1) as f64 * pmm;
    for ll in (m + 2)..=l {
        let next = ((2 * ll - 1) as f64 * x * p - (ll + m - 1) as f64 * p_prev) / (ll - m) as f64;
        p_prev = p;
        p = next;
    }
    p
}

/// `N_lm = sqrt((2l+1)/2 · (l-m)!/(l+m)!)`, so that `N_lm P_l^m(cos θ)` is
/// orthonormal under `sin θ dθ`.
pub fn norm_const(l: u32, m: i32) -> Result<f64> {
    check_mode(l, m)?;
    let ma = m.unsigned_abs();
    let base = ((2 * l + 1) as f64 / 2.0).sqrt();
    let range = (l - ma + 1)..=(l + ma);
    let factor: f64 = if m >= 0 {
        range.map(|k| (k as f64).sqrt().recip()).product()
    } else {
        range.map(|k| (k as f64).sqrt()).product()
    };
    Ok(base * factor)
}

/// Orthonormalized associated Legendre recurrence for a fixed `(l, m)`.
///
/// Evaluates `N_lm P_l^m(cos θ)` directly from `cos θ` and `sin θ`, which
/// keeps full relative accuracy of the `sin^m θ` factor near the poles and
/// never forms the factorials in `N_lm` or `P_l^m` separately.
#[derive(Debug, Clone)]
pub struct NormalizedLegendre {
    l: u32,
    m: u32,
    sign: f64,
    diag: Vec<f64>,
    a: Vec<f64>,
    b: Vec<f64>,
}

impl NormalizedLegendre {
    pub fn new(l: u32, m: i32) -> Result<Self> {
        check_mode(l, m)?;
        let ma = m.unsigned_abs();
        let sign = if m < 0 && ma % 2 == 1 { -1.0 } else { 1.0 };
        let diag = (1..=ma)
            .map(|k| -(((2 * k + 1) as f64) / ((2 * k) as f64)).sqrt())
            .collect();
        let mut a = Vec::with_capacity((l - ma) as usize);
        let mut b = Vec::with_capacity((l - ma) as usize);
        for ll in (ma + 1)..=l {
            let (lf, mf) = (ll as f64, ma as f64);
            a.push(((4.0 * lf * lf - 1.0) / (lf * lf - mf * mf)).sqrt());
            let lp = lf - 1.0;
            b.push(((lp * lp - mf * mf) / (4.0 * lp * lp - 1.0)).sqrt());
        }
        Ok(Self {
            l,
            m: ma,
            sign,
            diag,
            a,
            b,
        })
    }

    pub fn degree(&self) -> u32 {
        self.l
    }

    pub fn order(&self) -> u32 {
        self.m
    }

    /// `N_lm P_l^m(cos θ)` given `cos θ` and `sin θ >= 0`.
    pub fn eval(&self, cos: f64, sin: f64) -> f64 {
        let mut p = std::f64::consts::FRAC_1_SQRT_2;
        for &d in &self.diag {
            p *= d * sin;
        }
        let mut p_prev = 0.0;
        for (&a, &b) in self.a.iter().zip(&self.b) {
            let next = a * (cos * p - b * p_prev);
            p_prev = p;
            p = next;
        }
        self.sign * p
    }
}
