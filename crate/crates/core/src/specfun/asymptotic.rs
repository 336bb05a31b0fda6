//! Hankel asymptotic expansions for large `|w|`, `Re w >= 0`.

use num_complex::Complex64;
use std::f64::consts::{FRAC_PI_2, FRAC_PI_4, PI};

use super::SpecFunError;

const MAX_TERMS: usize = 400;

/// `(H^(1)_n(w), H^(2)_n(w))`.
pub(crate) fn hankel_pair(n: u32, w: Complex64) -> Result<(Complex64, Complex64), SpecFunError> {
    let mu = 4.0 * (n as f64) * (n as f64);
    let inv_w = 1.0 / w;
    let i = Complex64::i();

    // P = sum (-1)^m a_{2m}/w^{2m}, Q = sum (-1)^m a_{2m+1}/w^{2m+1};
    // H1 ~ pref e^{i chi}(P + iQ), H2 ~ pref e^{-i chi}(P - iQ).
    let mut p = Complex64::new(1.0, 0.0);
    let mut q = Complex64::new(0.0, 0.0);
    let mut term = Complex64::new(1.0, 0.0);
    let mut last = f64::INFINITY;
    let mut converged = false;
    for k in 1..MAX_TERMS {
        let odd = (2 * k - 1) as f64;
        term = term * (mu - odd * odd) * inv_w / (8.0 * k as f64);
        let mag = term.norm();
        if mag == 0.0 {
            converged = true;
            break;
        }
        if mag > last && odd * odd > mu {
            break;
        }
        last = mag;
        match k % 4 {
            0 => p += term,
            1 => q += term,
            2 => p -= term,
            _ => q -= term,
        }
        if mag <= f64::EPSILON * 0.125 {
            converged = true;
            break;
        }
    }
    if !converged {
        return Err(SpecFunError::Convergence { what: "Hankel asymptotic expansion" });
    }

    let chi = w - (n as f64) * FRAC_PI_2 - FRAC_PI_4;
    let pref = (2.0 / (PI * w)).sqrt();
    let h1 = pref * (i * chi).exp() * (p + i * q);
    let h2 = pref * (-i * chi).exp() * (p - i * q);
    Ok((h1, h2))
}
