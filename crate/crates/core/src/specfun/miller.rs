//! Miller backward recurrence for `J_n`, with `Y_0`, `Y_1` from Neumann series.

use num_complex::Complex64;
use std::f64::consts::PI;

use super::{SpecFunError, EULER_GAMMA};

const RESCALE_ABOVE: f64 = 1e100;

/// `J_0 ..= J_top` for `Re w >= 0`, where `top` is a start index large enough that the
/// tail is negligible. Returns every value computed so the caller can form Neumann sums.
pub(crate) fn bessel_j_all(nmax: u32, w: Complex64) -> Result<Vec<Complex64>, SpecFunError> {
    let r = w.norm();
    let mut start = (r + nmax as f64 + 40.0 + 6.0 * r.sqrt()).ceil() as usize;
    start += start % 2;

    let mut f = vec![Complex64::new(0.0, 0.0); start + 2];
    f[start] = Complex64::new(1.0, 0.0);
    let two_over_w = 2.0 / w;
    for k in (1..=start).rev() {
        f[k - 1] = two_over_w * k as f64 * f[k] - f[k + 1];
        if f[k - 1].norm() > RESCALE_ABOVE {
            let s = 1.0 / RESCALE_ABOVE;
            for v in f[k - 1..].iter_mut() {
                *v *= s;
            }
        }
    }
    f.truncate(start + 1);

    // Generating-function normalization chosen so no cancellation occurs.
    let (sum, target) = if w.im == 0.0 {
        let mut s = f[0];
        for k in (2..=start).step_by(2) {
            s += 2.0 * f[k];
        }
        (s, Complex64::new(1.0, 0.0))
    } else {
        let unit = if w.im > 0.0 { -Complex64::i() } else { Complex64::i() };
        let mut s = f[0];
        let mut phase = Complex64::new(1.0, 0.0);
        for v in f.iter().skip(1) {
            phase *= unit;
            s += 2.0 * phase * v;
        }
        (s, (unit * w).exp())
    };
    if !sum.is_finite() || sum.norm() == 0.0 {
        return Err(SpecFunError::Convergence { what: "Miller normalization" });
    }
    // Divide through the modulus first; complex division squares its divisor.
    let m = sum.norm();
    let scale = target / (sum / m) / m;
    for v in f.iter_mut() {
        *v *= scale;
    }
    Ok(f)
}

/// `Y_0 ..= Y_nmax` from the per-order Neumann expansion over a full `J` table:
///
/// `Y_n = -(n! (w/2)^{-n} / pi) sum_{k<n} (w/2)^k J_k / (k! (n-k))
///        + (2/pi)(ln(w/2) - psi(n+1)) J_n
///        - (2/pi) sum_{k>=1} (-1)^k (n+2k) J_{n+2k} / (k (n+k))`.
///
/// Forward recurrence from `Y_0`, `Y_1` loses digits off the real axis, so each
/// order is formed independently.
pub(crate) fn bessel_y_all(nmax: u32, w: Complex64, j: &[Complex64]) -> Vec<Complex64> {
    let half = w * 0.5;
    let log_half = half.ln();
    let inv_half = 1.0 / half;
    let mut out = Vec::with_capacity(nmax as usize + 1);
    let mut harmonic = 0.0;
    for n in 0..=nmax as usize {
        if n > 0 {
            harmonic += 1.0 / n as f64;
        }
        let psi = harmonic - EULER_GAMMA;

        // n!/(k!(n-k)) (w/2)^{k-n}, built from k = n-1 downward.
        let mut finite = Complex64::new(0.0, 0.0);
        let mut coeff = Complex64::new(1.0, 0.0);
        for k in (0..n).rev() {
            coeff *= (k + 1) as f64 * inv_half;
            finite += coeff / (n - k) as f64 * j[k];
        }

        let mut tail = Complex64::new(0.0, 0.0);
        let mut k = 1;
        while n + 2 * k < j.len() {
            let kf = k as f64;
            let sign = if k % 2 == 0 { 1.0 } else { -1.0 };
            tail += sign * (n as f64 + 2.0 * kf) * j[n + 2 * k] / (kf * (n as f64 + kf));
            k += 1;
        }
        out.push(-finite / PI + (2.0 / PI) * (log_half - psi) * j[n] - (2.0 / PI) * tail);
    }
    out
}
