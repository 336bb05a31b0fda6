//! Radial spinor components matched at the dot edge, with inner coefficient `a_i = 1`.

use num_complex::Complex64;
use serde::{Deserialize, Serialize};

use super::params::{channel, Branch, DotParams, ModelError};
use crate::specfun::{BesselSet, HankelKind};

/// Largest relative mismatch of the non-matched component accepted at `rho = 1`.
pub const MATCH_TOLERANCE: f64 = 1e-6;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub enum StateKind {
    /// Real `eps` in `(-mu, mu)`, decaying Hankel tail.
    Bound,
    /// Complex `eps`, outgoing Hankel tail chosen by `sign(Re eps)`.
    Resonance,
    /// `eps = mu`: power-law tail.
    Critical,
    /// `eps = -mu`: tail with vanishing upper component.
    Supercritical,
    /// Real `eps` in the continuum: `A J + B Y` tail.
    Scattering,
    /// `mu = 0`, `eps = 0`: single surviving power law.
    MasslessBound,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub enum Region {
    Inner,
    Outer,
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub enum OuterCoefficients {
    /// `a~_o (H_l(p_o rho), (p_o/eps_o+) H_{l+1}(p_o rho))`
    Hankel { a_o: Complex64 },
    /// `a_o (rho^{-l}, (l/mu) rho^{-(l+1)})`
    Critical { a_o: Complex64 },
    /// `a_o (0, rho^{-(l+1)})`
    Supercritical { a_o: Complex64 },
    /// `(A J_l + B Y_l, (p_o/eps_o+)(A J_{l+1} + B Y_{l+1}))`
    Scattering { a: Complex64, b: Complex64 },
    /// `(c1 rho^l, c2 rho^{-(l+1)})`
    MasslessPower { c1: Complex64, c2: Complex64 },
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct RadialSpinor {
    pub phi1: Complex64,
    pub phi2: Complex64,
    pub rho: f64,
    pub region: Region,
    pub a_i: Complex64,
    pub outer: OuterCoefficients,
    /// Relative mismatch of the component not used to fix the outer coefficient.
    pub mismatch: f64,
}

struct Inner {
    p_i: Complex64,
    eps_i_plus: Complex64,
}

impl Inner {
    fn at(&self, ell: i32, rho: f64) -> Result<(Complex64, Complex64), ModelError> {
        if self.eps_i_plus == Complex64::new(0.0, 0.0) {
            return Err(ModelError::Domain("eps_i+ = 0: lower inner component undefined".into()));
        }
        let set = BesselSet::new(ell.unsigned_abs() + 1, self.p_i * rho, false)?;
        Ok((set.j(ell)?, self.p_i / self.eps_i_plus * set.j(ell + 1)?))
    }
}

fn relative(mismatch: Complex64, a: Complex64, b: Complex64) -> f64 {
    let scale = a.norm().max(b.norm());
    if scale > 0.0 {
        mismatch.norm() / scale
    } else {
        mismatch.norm()
    }
}

fn check_energy(kind: StateKind, params: &DotParams, eps: Complex64) -> Result<(), ModelError> {
    let mu = params.mu;
    let ok = match kind {
        StateKind::Bound => mu > 0.0 && eps.im == 0.0 && eps.re.abs() < mu,
        StateKind::Resonance => eps.im != 0.0,
        StateKind::Critical => mu > 0.0 && eps == Complex64::new(mu, 0.0),
        StateKind::Supercritical => mu > 0.0 && eps == Complex64::new(-mu, 0.0),
        StateKind::Scattering => eps.im == 0.0 && eps.re.abs() > mu,
        StateKind::MasslessBound => mu == 0.0 && eps == Complex64::new(0.0, 0.0),
    };
    if ok {
        Ok(())
    } else {
        Err(ModelError::Domain(format!("eps = {eps} is inconsistent with {kind:?} at mu = {mu}")))
    }
}

/// Radial components `(phi1, phi2)` at `rho` for a state of the given kind.
///
/// The inner solution is `(J_l(p_i rho), (p_i/eps_i+) J_{l+1}(p_i rho))`. The outer
/// coefficient is fixed by continuity of one component; the other component's
/// mismatch at `rho = 1` must stay below [`MATCH_TOLERANCE`].
pub fn radial_spinor(
    params: &DotParams,
    eps: Complex64,
    rho: f64,
    kind: StateKind,
) -> Result<RadialSpinor, ModelError> {
    if !(rho > 0.0) || !rho.is_finite() {
        return Err(ModelError::Domain(format!("rho must be > 0, got {rho}")));
    }
    check_energy(kind, params, eps)?;
    let ell = params.ell;
    let mu = params.mu;
    let branch = match kind {
        StateKind::Bound => Branch::BoundSearch,
        StateKind::Resonance if eps.re >= 0.0 => Branch::OutgoingRight,
        StateKind::Resonance => Branch::OutgoingLeft,
        _ => Branch::ScatteringReal,
    };
    let ch = channel(params, eps, branch)?;
    let inner = Inner { p_i: ch.p_i, eps_i_plus: ch.eps_i_plus };
    let (u1, u2) = inner.at(ell, 1.0)?;
    let ell_f = ell as f64;

    // Outer coefficients and outer components at rho = 1.
    let (outer, o1, o2) = match kind {
        StateKind::Bound | StateKind::Resonance => {
            let set = BesselSet::new(ell.unsigned_abs() + 1, ch.p_o, true)?;
            let h_l = set.hankel(HankelKind::First, ell)?;
            let h_l1 = set.hankel(HankelKind::First, ell + 1)?;
            let a_o = u1 / h_l;
            (OuterCoefficients::Hankel { a_o }, u1, a_o * ch.p_o / ch.eps_o_plus * h_l1)
        }
        StateKind::Critical => {
            let a_o = u1;
            (OuterCoefficients::Critical { a_o }, a_o, a_o * ell_f / mu)
        }
        StateKind::Supercritical => {
            let a_o = u2;
            (OuterCoefficients::Supercritical { a_o }, Complex64::new(0.0, 0.0), a_o)
        }
        StateKind::Scattering => {
            let set = BesselSet::new(ell.unsigned_abs() + 1, ch.p_o, true)?;
            let (j_l, j_l1) = (set.j(ell)?, set.j(ell + 1)?);
            let (y_l, y_l1) = (set.y(ell)?, set.y(ell + 1)?);
            let ratio = ch.eps_o_plus / ch.p_o;
            let rhs2 = u2 * ratio;
            let det = j_l * y_l1 - y_l * j_l1;
            let a = (u1 * y_l1 - y_l * rhs2) / det;
            let b = (j_l * rhs2 - u1 * j_l1) / det;
            let o2 = (a * j_l1 + b * y_l1) / ratio;
            (OuterCoefficients::Scattering { a, b }, a * j_l + b * y_l, o2)
        }
        StateKind::MasslessBound => {
            if ell >= 0 {
                let c2 = u2;
                (
                    OuterCoefficients::MasslessPower { c1: Complex64::new(0.0, 0.0), c2 },
                    Complex64::new(0.0, 0.0),
                    c2,
                )
            } else {
                let c1 = u1;
                (
                    OuterCoefficients::MasslessPower { c1, c2: Complex64::new(0.0, 0.0) },
                    c1,
                    Complex64::new(0.0, 0.0),
                )
            }
        }
    };
    let mismatch = relative(u1 - o1, u1, u2).max(relative(u2 - o2, u1, u2));
    if mismatch > MATCH_TOLERANCE {
        return Err(ModelError::Match { mismatch });
    }

    if rho < 1.0 {
        let (phi1, phi2) = inner.at(ell, rho)?;
        return Ok(RadialSpinor {
            phi1,
            phi2,
            rho,
            region: Region::Inner,
            a_i: Complex64::new(1.0, 0.0),
            outer,
            mismatch,
        });
    }

    let (phi1, phi2) = match outer {
        OuterCoefficients::Hankel { a_o } => {
            let set = BesselSet::new(ell.unsigned_abs() + 1, ch.p_o * rho, true)?;
            (
                a_o * set.hankel(HankelKind::First, ell)?,
                a_o * ch.p_o / ch.eps_o_plus * set.hankel(HankelKind::First, ell + 1)?,
            )
        }
        OuterCoefficients::Critical { a_o } => (a_o * rho.powi(-ell), a_o * ell_f / mu * rho.powi(-(ell + 1))),
        OuterCoefficients::Supercritical { a_o } => (Complex64::new(0.0, 0.0), a_o * rho.powi(-(ell + 1))),
        OuterCoefficients::Scattering { a, b } => {
            let set = BesselSet::new(ell.unsigned_abs() + 1, ch.p_o * rho, true)?;
            (
                a * set.j(ell)? + b * set.y(ell)?,
                ch.p_o / ch.eps_o_plus * (a * set.j(ell + 1)? + b * set.y(ell + 1)?),
            )
        }
        OuterCoefficients::MasslessPower { c1, c2 } => (c1 * rho.powi(ell), c2 * rho.powi(-(ell + 1))),
    };
    Ok(RadialSpinor { phi1, phi2, rho, region: Region::Outer, a_i: Complex64::new(1.0, 0.0), outer, mismatch })
}
