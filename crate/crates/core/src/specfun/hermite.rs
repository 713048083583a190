//! Momentum-space eigenfunctions of the dimensionless 1-D harmonic oscillator.

use std::f64::consts::PI;

const RESCALE_ABOVE: f64 = 1e150;

/// `φ_n(p) = (2^n n! √π)^{-1/2} H_n(p) e^{-p²/2}`.
///
/// Uses the orthonormal three-term recurrence without the Gaussian factor,
/// tracking overflow in a running log-scale; the Gaussian is applied in
/// log space at the end.
pub fn sho_eigenfunction(n: u32, p: f64) -> f64 {
    let mut prev = 0.0;
    let mut cur = PI.powf(-0.25);
    let mut log_scale = 0.0;
    for k in 0..n {
        let kf = k as f64;
        let next = (2.0 / (kf + 1.0)).sqrt() * p * cur - (kf / (kf + 1.0)).sqrt() * prev;
        prev = cur;
        cur = next;
        if cur.abs() > RESCALE_ABOVE {
            prev /= RESCALE_ABOVE;
            cur /= RESCALE_ABOVE;
            log_scale += RESCALE_ABOVE.ln();
        }
    }
    if cur == 0.0 {
        return 0.0;
    }
    let log_mag = cur.abs().ln() + log_scale - 0.5 * p * p;
    cur.signum() * log_mag.exp()
}

/// `|φ_n(p)|²`
pub fn sho_momentum_density(n: u32, p: f64) -> f64 {
    let phi = sho_eigenfunction(n, p);
    phi * phi
}
