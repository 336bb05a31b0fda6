//! Scattering phase shift, phase unwrapping and Wigner time delay.

use num_complex::Complex64;
use serde::{Deserialize, Serialize};
use std::f64::consts::{FRAC_PI_2, PI};

use super::params::{inner_momentum, DotParams, ModelError};
use crate::specfun::{bessel_j_over_power, BesselSet};

/// Relative size below which both numerator and denominator count as zero.
const INDETERMINATE: f64 = 1e-13;
/// Largest accepted phase change between neighbouring grid points after the
/// optimal multiple of pi has been removed.
pub const MAX_UNWRAP_STEP: f64 = 0.45 * PI;

/// Energy grid with raw, unwrapped phase and delay.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct DelayCurve {
    pub energies: Vec<f64>,
    pub raw_phase: Vec<f64>,
    pub unwrapped_phase: Vec<f64>,
    pub delay: Vec<f64>,
    /// Grid indices whose phase was indeterminate and was interpolated.
    #[serde(default)]
    pub interpolated: Vec<usize>,
}

impl DelayCurve {
    pub fn len(&self) -> usize {
        self.energies.len()
    }

    pub fn is_empty(&self) -> bool {
        self.energies.is_empty()
    }
}

/// Numerator and denominator of `tan delta`, each divided by `p_i^l` (real).
pub fn phase_components(params: &DotParams, eps: f64) -> Result<(f64, f64), ModelError> {
    let mu = params.mu;
    let above = if params.is_massless() { eps > 0.0 } else { eps > mu };
    if !above || !eps.is_finite() {
        return Err(ModelError::Domain(format!("phase needs eps above the continuum edge, got {eps}")));
    }
    let l = params.effective_ell();
    let d = Complex64::new(eps - params.v, 0.0);
    let p_i = inner_momentum(mu, d);
    let p_o = Complex64::new((eps * eps - mu * mu).sqrt(), 0.0);
    let eps_i_plus = eps - params.v + mu;
    let eps_o_plus = eps + mu;

    let a = bessel_j_over_power(l, p_i)?.re;
    let b = (p_i * p_i * bessel_j_over_power(l + 1, p_i)?).re;
    let outer = BesselSet::new(l + 1, p_o, true)?;
    let (j_l, j_l1) = (outer.j(l as i32)?.re, outer.j(l as i32 + 1)?.re);
    let (y_l, y_l1) = (outer.y(l as i32)?.re, outer.y(l as i32 + 1)?.re);

    let inner_scale = (eps_i_plus * p_o.re * a).abs() + (eps_o_plus * b).abs();
    let num = eps_i_plus * p_o.re * a * j_l1 - eps_o_plus * b * j_l;
    let den = eps_i_plus * p_o.re * a * y_l1 - eps_o_plus * b * y_l;
    if inner_scale == 0.0 || (num.abs() < INDETERMINATE * inner_scale && den.abs() < INDETERMINATE * inner_scale) {
        return Err(ModelError::IndeterminatePhase { eps });
    }
    Ok((num, den))
}

/// Reduce an angle into `(-pi/2, pi/2]`.
pub fn principal_phase(angle: f64) -> f64 {
    let mut a = angle - PI * (angle / PI).round();
    if a <= -FRAC_PI_2 {
        a += PI;
    } else if a > FRAC_PI_2 {
        a -= PI;
    }
    a
}

/// Raw phase shift in `(-pi/2, pi/2]`.
pub fn phase_shift_raw(params: &DotParams, eps: f64) -> Result<f64, ModelError> {
    if params.v == 0.0 {
        return Ok(0.0);
    }
    let (num, den) = phase_components(params, eps)?;
    Ok(principal_phase(num.atan2(den)))
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub enum UnwrapConvention {
    /// Fix the top of the grid nearest to the principal value of `-v`, the
    /// high-energy limit of the phase.
    AnchorHighEnergy { v: f64 },
}

/// Continuous phase from raw values on an increasing energy grid.
pub fn unwrap_phase(raw: &[f64], convention: UnwrapConvention) -> Result<Vec<f64>, ModelError> {
    let mut out = vec![0.0; raw.len()];
    let Some(&top) = raw.last() else {
        return Ok(out);
    };
    let UnwrapConvention::AnchorHighEnergy { v } = convention;
    let target = principal_phase(-v);
    let n = raw.len();
    out[n - 1] = top + PI * ((target - top) / PI).round();
    for k in (0..n - 1).rev() {
        let step = raw[k] - out[k + 1];
        let adjusted = step - PI * (step / PI).round();
        if adjusted.abs() > MAX_UNWRAP_STEP {
            return Err(ModelError::Unwrap { index: k, step: adjusted });
        }
        out[k] = out[k + 1] + adjusted;
    }
    Ok(out)
}

/// Fill `delay` with `2 d(delta)/d(eps)`: central differences inside, one-sided at the ends.
pub fn wigner_delay(mut curve: DelayCurve) -> Result<DelayCurve, ModelError> {
    let e = &curve.energies;
    let d = &curve.unwrapped_phase;
    let n = e.len();
    if n < 3 || d.len() != n {
        return Err(ModelError::Domain(format!("delay needs >= 3 points with phases, got {n}")));
    }
    let mut tau = Vec::with_capacity(n);
    tau.push(2.0 * (d[1] - d[0]) / (e[1] - e[0]));
    for k in 1..n - 1 {
        tau.push(2.0 * (d[k + 1] - d[k - 1]) / (e[k + 1] - e[k - 1]));
    }
    tau.push(2.0 * (d[n - 1] - d[n - 2]) / (e[n - 1] - e[n - 2]));
    curve.delay = tau;
    Ok(curve)
}

/// High-energy limit of `tan delta`.
pub fn high_energy_tangent(v: f64) -> f64 {
    -v.tan()
}
