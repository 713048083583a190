//! Gauss hypergeometric function at `z = -1` and the incomplete Beta
//! function of rank `-1`, both with complex parameters.
//!
//! The defining series of `F(a, b; c; -1)` converges only conditionally, so
//! it is never summed directly. Pfaff's transformation
//! `F(a, b; c; z) = (1 - z)^{-a} F(a, c - b; c; z / (z - 1))` maps `z = -1`
//! to `1/2`, where the series converges geometrically.

use num_complex::Complex64;
use std::f64::consts::PI;

use crate::error::{Error, Result};

const MAX_TERMS: usize = 5000;
const TERM_TOL: f64 = 1e-17;
/// Above this peak-term / result ratio the other Pfaff variant is tried.
const CANCELLATION_LIMIT: f64 = 1e2;

fn is_nonpositive_integer(z: Complex64) -> bool {
    z.im == 0.0 && z.re <= 0.0 && z.re == z.re.round()
}

struct SeriesSum {
    value: Complex64,
    /// largest |term| / |value|, a measure of cancellation
    growth: f64,
}

/// `Σ (p)_n (q)_n / ((c)_n n!) 2^{-n}`
fn half_argument_series(p: Complex64, q: Complex64, c: Complex64) -> Result<SeriesSum> {
    let mut term = Complex64::new(1.0, 0.0);
    let mut sum = term;
    let mut peak = 1.0f64;
    let mut small_run = 0;
    for n in 0..MAX_TERMS {
        let nf = n as f64;
        term *= (p + nf) * (q + nf) / ((c + nf) * (nf + 1.0)) * 0.5;
        sum += term;
        let mag = term.norm();
        peak = peak.max(mag);
        if mag == 0.0 {
            break;
        }
        // only trust smallness once the ratio has settled near 1/2
        let ratio = ((p + nf + 1.0) * (q + nf + 1.0) / ((c + nf + 1.0) * (nf + 2.0))).norm() * 0.5;
        if mag <= TERM_TOL * sum.norm() && ratio < 0.75 {
            small_run += 1;
            if small_run >= 2 {
                break;
            }
        } else {
            small_run = 0;
        }
        if n + 1 == MAX_TERMS {
            return Err(Error::Convergence {
                function: "hyp2f1_at_neg1",
                terms: MAX_TERMS,
                achieved: mag / sum.norm(),
            });
        }
    }
    let norm = sum.norm();
    let growth = if norm > 0.0 { peak / norm } else { f64::INFINITY };
    Ok(SeriesSum { value: sum, growth })
}

/// `₂F₁(a, b; c; -1)` for complex parameters.
///
/// Both Pfaff variants (pivoting on `a` or on `b`) are exact; the one with
/// less term growth is used.
pub fn hyp2f1_at_neg1(a: Complex64, b: Complex64, c: Complex64) -> Result<Complex64> {
    for (name, v) in [("a", a), ("b", b), ("c", c)] {
        if !(v.re.is_finite() && v.im.is_finite()) {
            return Err(Error::Domain(format!("hyp2f1_at_neg1: non-finite {name} = {v}")));
        }
    }
    if is_nonpositive_integer(c) {
        return Err(Error::Pole {
            function: "hyp2f1_at_neg1",
            at: format!("c = {c}"),
        });
    }
    let two = Complex64::new(2.0, 0.0);
    let first = half_argument_series(a, c - b, c)?;
    let mut best = (two.powc(-a) * first.value, first.growth);
    if first.growth > CANCELLATION_LIMIT {
        let second = half_argument_series(b, c - a, c)?;
        if second.growth < best.1 {
            best = (two.powc(-b) * second.value, second.growth);
        }
    }
    let value = best.0;
    if value.re.is_finite() && value.im.is_finite() {
        Ok(value)
    } else {
        Err(Error::NonFinite("hyp2f1_at_neg1"))
    }
}

/// Incomplete Beta function of rank `-1`,
/// `B_{-1}(a, b) = (-1)^a Σ_n (-1)^n Γ(n+1-b) / (Γ(1-b) n! (a+n))`,
/// with the principal branch `(-1)^a = e^{iπa}`.
///
/// Evaluated as `e^{iπa}/a · F(a, 1-b; a+1; -1)`.
pub fn incomplete_beta_rank_neg1(a: Complex64, b: f64) -> Result<Complex64> {
    if !(a.re.is_finite() && a.im.is_finite() && b.is_finite()) {
        return Err(Error::Domain(format!(
            "incomplete_beta_rank_neg1: non-finite arguments a = {a}, b = {b}"
        )));
    }
    if is_nonpositive_integer(a) {
        return Err(Error::Pole {
            function: "incomplete_beta_rank_neg1",
            at: format!("a = {a}"),
        });
    }
    let one = Complex64::new(1.0, 0.0);
    let branch = (Complex64::i() * PI * a).exp();
    let f = hyp2f1_at_neg1(a, Complex64::from(1.0 - b), a + one)?;
    let value = branch / a * f;
    if value.re.is_finite() && value.im.is_finite() {
        Ok(value)
    } else {
        Err(Error::NonFinite("incomplete_beta_rank_neg1"))
    }
}
