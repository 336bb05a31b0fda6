//! Matching conditions at the dot edge: bound/outgoing secular equation,
//! critical and supercritical conditions, and the massless zero-energy condition.

use num_complex::Complex64;
use serde::{Deserialize, Serialize};
use std::f64::consts::PI;

use super::params::{channel, inner_momentum, right_momentum, Branch, DotParams, ModelError};
use crate::specfun::{bessel_j, bessel_j_over_power, BesselSet, HankelKind};

/// Below this `|p_o|` the scaled Hankel factors are replaced by their limits.
const SMALL_MOMENTUM: f64 = 1e-10;

fn factorial(n: u32) -> f64 {
    (1..=n).map(f64::from).product()
}

/// `p^n H^(1)_n(p)`, finite at `p = 0` for `n >= 1`.
fn scaled_hankel(set: Option<&BesselSet>, n: u32, p: Complex64) -> Result<Complex64, ModelError> {
    match set {
        Some(set) => Ok(p.powi(n as i32) * set.hankel(HankelKind::First, n as i32)?),
        None if n >= 1 => Ok(Complex64::new(0.0, -factorial(n - 1) * 2f64.powi(n as i32) / PI)),
        None => Err(ModelError::SingularArgument("H_0 diverges at p_o = 0".into())),
    }
}

/// Secular residual in the form free of removable zeros and poles:
///
/// `R = (p_o/p_i)^l [eps_i+ J_l(p_i) p_o H_{l+1}(p_o) - eps_o+ H_l(p_o) p_i J_{l+1}(p_i)]`
///
/// with `l = ell` (or `-(ell+1)` for massless `ell < 0`). Returns `R` and the sum of
/// the magnitudes of its two terms.
pub(crate) fn reduced_terms(
    params: &DotParams,
    eps: Complex64,
    p_i: Complex64,
    p_o: Complex64,
) -> Result<(Complex64, f64), ModelError> {
    let l = params.effective_ell();
    let eps_i_plus = eps - params.v + params.mu;
    let eps_o_plus = eps + params.mu;
    let a = bessel_j_over_power(l, p_i)?;
    let b = p_i * p_i * bessel_j_over_power(l + 1, p_i)?;

    let set = if p_o.norm() < SMALL_MOMENTUM { None } else { Some(BesselSet::new(l + 1, p_o, true)?) };
    let p1 = scaled_hankel(set.as_ref(), l + 1, p_o)?;
    let first = eps_i_plus * a * p1;
    let second = if eps_o_plus == Complex64::new(0.0, 0.0) {
        Complex64::new(0.0, 0.0)
    } else if set.is_none() && l == 0 {
        if p_o == Complex64::new(0.0, 0.0) {
            return Err(ModelError::SingularArgument("ell = 0 secular equation diverges at p_o = 0".into()));
        }
        let h0 = crate::specfun::hankel(HankelKind::First, 0, p_o)?;
        eps_o_plus * h0 * b
    } else {
        eps_o_plus * scaled_hankel(set.as_ref(), l, p_o)? * b
    };
    Ok((first - second, first.norm() + second.norm()))
}

/// Regular secular function used for root finding on a branch.
pub fn reduced_residual(params: &DotParams, eps: Complex64, branch: Branch) -> Result<Complex64, ModelError> {
    let ch = channel(params, eps, branch)?;
    Ok(reduced_terms(params, eps, ch.p_i, ch.p_o)?.0)
}

/// `|R| / (|first term| + |second term|)`: scale-free size of the secular residual.
pub fn relative_residual(params: &DotParams, eps: Complex64, branch: Branch) -> Result<f64, ModelError> {
    let ch = channel(params, eps, branch)?;
    let (r, scale) = reduced_terms(params, eps, ch.p_i, ch.p_o)?;
    Ok(if scale > 0.0 { r.norm() / scale } else { r.norm() })
}

/// Secular equation as written in the literature.
///
/// Massive: `eps_i+ J_l(p_i) p_o H_{l+1}(p_o) - eps_o+ H_l(p_o) p_i J_{l+1}(p_i)`.
/// Massless: `J_l(p_i) H_{l+1}(p_o) - s H_l(p_o) J_{l+1}(p_i)` with `p_o = s eps`.
pub fn secular_residual(params: &DotParams, eps: Complex64, branch: Branch) -> Result<Complex64, ModelError> {
    let ch = channel(params, eps, branch)?;
    if ch.p_o == Complex64::new(0.0, 0.0) {
        return Err(ModelError::SingularArgument("p_o = 0; use the critical condition".into()));
    }
    let l = params.ell;
    let inner = BesselSet::new(l.unsigned_abs() + 1, ch.p_i, false)?;
    let outer = BesselSet::new(l.unsigned_abs() + 1, ch.p_o, true)?;
    let j_l = inner.j(l)?;
    let j_l1 = inner.j(l + 1)?;
    let h_l = outer.hankel(HankelKind::First, l)?;
    let h_l1 = outer.hankel(HankelKind::First, l + 1)?;
    if params.is_massless() {
        let s = if ch.p_o == eps { 1.0 } else { -1.0 };
        Ok(j_l * h_l1 - s * h_l * j_l1)
    } else {
        Ok(ch.eps_i_plus * j_l * ch.p_o * h_l1 - ch.eps_o_plus * h_l * ch.p_i * j_l1)
    }
}

/// Real function whose zeros in `(-mu, mu)` are the bound energies.
///
/// On that interval the reduced residual is `-i` times a real function.
pub fn bound_function(params: &DotParams, eps: f64) -> Result<f64, ModelError> {
    let r = reduced_residual(params, Complex64::new(eps, 0.0), Branch::BoundSearch)?;
    Ok(-r.im)
}

/// Outgoing residual in the uniformizing variable `t`, where
/// `eps = mu (t + 1/t)/2` and `p_o = mu (t - 1/t)/2`.
///
/// Bound states lie on the upper unit semicircle, right-half resonances near
/// `t > 1` and left-half resonances in `(-1, 0)`. Massive only.
pub fn uniformized_residual(params: &DotParams, t: Complex64) -> Result<(Complex64, f64), ModelError> {
    if params.is_massless() {
        return Err(ModelError::Domain("uniformizing variable needs mu > 0".into()));
    }
    if t.norm() < 1e-12 || !t.is_finite() {
        return Err(ModelError::Domain(format!("t = {t} is outside the sheet")));
    }
    let mu = params.mu;
    let eps = 0.5 * mu * (t + 1.0 / t);
    let p_o = 0.5 * mu * (t - 1.0 / t);
    let p_i = inner_momentum(mu, eps - params.v);
    reduced_terms(params, eps, p_i, p_o)
}

/// Energy and outer momentum for a point of the uniformizing plane.
pub fn energy_from_uniformizer(mu: f64, t: Complex64) -> (Complex64, Complex64) {
    (0.5 * mu * (t + 1.0 / t), 0.5 * mu * (t - 1.0 / t))
}

/// Inverse of [`energy_from_uniformizer`] on the given branch.
pub fn uniformizer_from_energy(mu: f64, eps: Complex64, branch: Branch) -> Result<Complex64, ModelError> {
    if mu <= 0.0 {
        return Err(ModelError::Domain("uniformizing variable needs mu > 0".into()));
    }
    let p_o = match branch {
        Branch::BoundSearch => Complex64::new(0.0, (mu * mu - eps.re * eps.re).max(0.0).sqrt()),
        Branch::ScatteringReal | Branch::OutgoingRight => right_momentum(mu, eps),
        Branch::OutgoingLeft => -right_momentum(mu, eps),
    };
    Ok((eps + p_o) / mu)
}

/// Massless outgoing residual with the `sign(Re eps)` rule for `p_o`.
pub fn massless_outgoing_residual(params: &DotParams, eps: Complex64) -> Result<(Complex64, f64), ModelError> {
    if !params.is_massless() {
        return Err(ModelError::Domain("massless residual needs mu = 0".into()));
    }
    let p_o = if eps.re >= 0.0 { eps } else { -eps };
    reduced_terms(params, eps, eps - params.v, p_o)
}

/// Critical (`eps = mu`) condition: `l (mu + sqrt(mu^2+p^2)) J_l(p) - mu p J_{l+1}(p)`.
pub fn critical_residual(ell: u32, mu: f64, p_inner: f64) -> Result<f64, ModelError> {
    if p_inner <= 0.0 {
        return Err(ModelError::Domain(format!("p_inner must be > 0, got {p_inner}")));
    }
    let z = Complex64::new(p_inner, 0.0);
    let set = BesselSet::new(ell + 1, z, false)?;
    let j_l = set.j(ell as i32)?.re;
    let j_l1 = set.j(ell as i32 + 1)?.re;
    Ok(ell as f64 * (mu + mu.hypot(p_inner)) * j_l - mu * p_inner * j_l1)
}

/// Supercritical (`eps = -mu`) condition: `J_l(p)`.
pub fn supercritical_residual(ell: u32, p_inner: f64) -> Result<f64, ModelError> {
    if p_inner <= 0.0 {
        return Err(ModelError::Domain(format!("p_inner must be > 0, got {p_inner}")));
    }
    Ok(bessel_j(ell as i32, Complex64::new(p_inner, 0.0))?.re)
}

/// Massless zero-energy condition: `J_l(p)` for `l >= 0`, `J_{l+1}(p)` for `l < 0`.
pub fn massless_bound_residual(ell: i32, p_inner: f64) -> Result<f64, ModelError> {
    if p_inner <= 0.0 {
        return Err(ModelError::Domain(format!("p_inner must be > 0, got {p_inner}")));
    }
    let order = if ell >= 0 { ell } else { ell + 1 };
    Ok(bessel_j(order, Complex64::new(p_inner, 0.0))?.re)
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub enum DepthKind {
    Critical,
    Supercritical,
    MasslessBound,
}

/// Well depth for a root `p_inner` of the matching condition of the given kind.
pub fn depth_for_root(kind: DepthKind, mu: f64, p_inner: f64) -> Result<f64, ModelError> {
    if !(p_inner >= 0.0) || !p_inner.is_finite() {
        return Err(ModelError::Domain(format!("p_inner must be >= 0, got {p_inner}")));
    }
    match kind {
        DepthKind::Critical | DepthKind::Supercritical if mu <= 0.0 => {
            Err(ModelError::Domain(format!("{kind:?} depth needs mu > 0")))
        }
        // mu - sqrt(mu^2 + p^2), written without cancellation
        DepthKind::Critical => Ok(-p_inner * p_inner / (mu + mu.hypot(p_inner))),
        DepthKind::Supercritical => Ok(-mu - mu.hypot(p_inner)),
        DepthKind::MasslessBound if mu != 0.0 => Err(ModelError::Domain("massless depth needs mu = 0".into())),
        DepthKind::MasslessBound => Ok(-p_inner),
    }
}

/// Inner momentum at the critical energy for depth `v`: `sqrt(v^2 - 2 v mu)`.
pub fn critical_momentum(mu: f64, v: f64) -> f64 {
    (v * v - 2.0 * v * mu).max(0.0).sqrt()
}

/// Inner momentum at the supercritical energy for depth `v`: `sqrt(v^2 + 2 v mu)`.
pub fn supercritical_momentum(mu: f64, v: f64) -> f64 {
    (v * v + 2.0 * v * mu).max(0.0).sqrt()
}
