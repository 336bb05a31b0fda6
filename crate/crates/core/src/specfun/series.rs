//! Ascending power series, used for small arguments.

use num_complex::Complex64;
use std::f64::consts::PI;

use super::{SpecFunError, EULER_GAMMA};

const MAX_TERMS: usize = 200;

/// `J_n(w)` for `n >= 0` by the ascending series.
pub(crate) fn bessel_j(n: u32, w: Complex64) -> Result<Complex64, SpecFunError> {
    let half = w * 0.5;
    let mut lead = Complex64::new(1.0, 0.0);
    for k in 1..=n {
        lead = lead * half / k as f64;
    }
    Ok(lead * scaled_sum(n, w)?)
}

/// `sum_k (-w^2/4)^k n! / (k! (n+k)!)`, the entire even factor of `J_n`.
pub(crate) fn scaled_sum(n: u32, w: Complex64) -> Result<Complex64, SpecFunError> {
    let q = -(w * w) * 0.25;
    let mut term = Complex64::new(1.0, 0.0);
    let mut sum = term;
    for k in 1..MAX_TERMS {
        term = term * q / (k as f64 * (k as f64 + n as f64));
        sum += term;
        if term.norm() <= f64::EPSILON * 0.25 * sum.norm() {
            return Ok(sum);
        }
    }
    Err(SpecFunError::Convergence { what: "ascending J series" })
}

/// `Y_0(w)` and `Y_1(w)` by their ascending series (principal branch).
pub(crate) fn bessel_y01(w: Complex64, j0: Complex64, j1: Complex64) -> Result<(Complex64, Complex64), SpecFunError> {
    let log_half = (w * 0.5).ln();
    let q = -(w * w) * 0.25;

    // Y0 = (2/pi)(ln(w/2)+gamma) J0 - (2/pi) sum_{k>=1} H_k q^k/(k!)^2
    let mut term = Complex64::new(1.0, 0.0);
    let mut harmonic = 0.0;
    let mut s0 = Complex64::new(0.0, 0.0);
    let mut converged = false;
    for k in 1..MAX_TERMS {
        let kf = k as f64;
        term = term * q / (kf * kf);
        harmonic += 1.0 / kf;
        let add = term * harmonic;
        s0 += add;
        if add.norm() <= f64::EPSILON * 0.25 * s0.norm().max(f64::MIN_POSITIVE) {
            converged = true;
            break;
        }
    }
    if !converged {
        return Err(SpecFunError::Convergence { what: "ascending Y0 series" });
    }
    let y0 = (log_half + EULER_GAMMA) * j0 * (2.0 / PI) - s0 * (2.0 / PI);

    // Y1 = -2/(pi w) + (2/pi) ln(w/2) J1
    //      - (1/pi)(w/2) sum_k (H_k + H_{k+1} - 2 gamma) q^k / (k!(k+1)!)
    let mut term = Complex64::new(1.0, 0.0);
    let mut h_k = 0.0;
    let mut h_k1 = 1.0;
    let mut s1 = term * (h_k + h_k1 - 2.0 * EULER_GAMMA);
    converged = false;
    for k in 1..MAX_TERMS {
        let kf = k as f64;
        term = term * q / (kf * (kf + 1.0));
        h_k += 1.0 / kf;
        h_k1 += 1.0 / (kf + 1.0);
        let add = term * (h_k + h_k1 - 2.0 * EULER_GAMMA);
        s1 += add;
        if add.norm() <= f64::EPSILON * 0.25 * s1.norm() {
            converged = true;
            break;
        }
    }
    if !converged {
        return Err(SpecFunError::Convergence { what: "ascending Y1 series" });
    }
    let y1 = -2.0 / (PI * w) + log_half * j1 * (2.0 / PI) - w * 0.5 * s1 / PI;
    Ok((y0, y1))
}
