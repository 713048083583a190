//! Gamma function of a complex argument (Lanczos, g = 7, nine terms).

use num_complex::Complex64;
use std::f64::consts::PI;

use crate::error::{Error, Result};

const LANCZOS_G: f64 = 7.0;
const LANCZOS_COEFFS: [f64; 9] = [
    0.999_999_999_999_809_93,
    676.520_368_121_885_1,
    -1_259.139_216_722_402_8,
    771.323_428_777_653_13,
    -176.615_029_162_140_59,
    12.507_343_278_686_905,
    -0.138_571_095_265_720_12,
    9.984_369_578_019_571_6e-6,
    1.505_632_735_149_311_6e-7,
];

fn is_nonpositive_integer(z: Complex64) -> bool {
    z.im == 0.0 && z.re <= 0.0 && z.re == z.re.round()
}

/// `Γ(z)`; the reflection formula handles `Re z < 1/2`.
pub fn complex_gamma(z: Complex64) -> Result<Complex64> {
    if !(z.re.is_finite() && z.im.is_finite()) {
        return Err(Error::Domain(format!("complex_gamma: non-finite argument {z}")));
    }
    if is_nonpositive_integer(z) {
        return Err(Error::Pole {
            function: "complex_gamma",
            at: z.to_string(),
        });
    }
    let value = if z.re < 0.5 {
        let s = (z * PI).sin();
        Complex64::from(PI) / (s * lanczos(Complex64::new(1.0, 0.0) - z))
    } else {
        lanczos(z)
    };
    if value.re.is_finite() && value.im.is_finite() {
        Ok(value)
    } else {
        Err(Error::NonFinite("complex_gamma"))
    }
}

fn lanczos(z: Complex64) -> Complex64 {
    let z = z - 1.0;
    let mut x = Complex64::from(LANCZOS_COEFFS[0]);
    for (i, &c) in LANCZOS_COEFFS.iter().enumerate().skip(1) {
        x += c / (z + i as f64);
    }
    let t = z + LANCZOS_G + 0.5;
    let log = (z + 0.5) * t.ln() - t;
    (2.0 * PI).sqrt() * log.exp() * x
}
