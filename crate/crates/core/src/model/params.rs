use num_complex::Complex64;
use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::specfun::SpecFunError;

/// Largest `|ell|` accepted; the secular equation needs order `ell + 1`.
pub const MAX_ELL: i32 = 11;

#[derive(Debug, Clone, PartialEq, Error)]
pub enum ModelError {
    #[error("invalid parameters: {0}")]
    InvalidParameters(String),
    #[error("branch precondition violated: {0}")]
    Branch(String),
    #[error("out of domain: {0}")]
    Domain(String),
    #[error("singular argument: {0}")]
    SingularArgument(String),
    #[error("phase is indeterminate at eps = {eps}")]
    IndeterminatePhase { eps: f64 },
    #[error("phase unwrap failed between grid points {index} and {next}: adjusted step {step}", next = index + 1)]
    Unwrap { index: usize, step: f64 },
    #[error("matching mismatch {mismatch:e} exceeds tolerance")]
    Match { mismatch: f64 },
    #[error(transparent)]
    SpecFun(#[from] SpecFunError),
}

/// Dimensionless dot configuration: mass `mu`, well depth `v`, orbital momentum `ell`
/// of the upper spinor component. `mu == 0` selects the massless model.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct DotParams {
    pub mu: f64,
    pub v: f64,
    pub ell: i32,
}

impl DotParams {
    pub fn new(mu: f64, v: f64, ell: i32) -> Result<Self, ModelError> {
        if !mu.is_finite() || mu < 0.0 {
            return Err(ModelError::InvalidParameters(format!("mu must be finite and >= 0, got {mu}")));
        }
        if !v.is_finite() {
            return Err(ModelError::InvalidParameters(format!("v must be finite, got {v}")));
        }
        if ell.abs() > MAX_ELL {
            return Err(ModelError::InvalidParameters(format!("|ell| must be <= {MAX_ELL}, got {ell}")));
        }
        if mu > 0.0 && ell < 0 {
            return Err(ModelError::InvalidParameters(format!("massive channels need ell >= 0, got {ell}")));
        }
        Ok(DotParams { mu, v, ell })
    }

    pub fn is_massless(&self) -> bool {
        self.mu == 0.0
    }

    pub fn with_v(&self, v: f64) -> Self {
        DotParams { v, ..*self }
    }

    /// Total angular momentum `j = ell + 1/2`.
    pub fn total_angular_momentum(&self) -> f64 {
        self.ell as f64 + 0.5
    }

    /// Non-negative orbital momentum with identical secular and phase equations.
    /// For `mu = 0` the map `ell -> -(ell + 1)` leaves both unchanged.
    pub(crate) fn effective_ell(&self) -> u32 {
        if self.ell < 0 {
            (-self.ell - 1) as u32
        } else {
            self.ell as u32
        }
    }
}

/// How the outer (and inner) momenta are continued off the real axis.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub enum Branch {
    /// Real `eps` in `(-mu, mu)`; `p_o = i sqrt(mu^2 - eps^2)`.
    BoundSearch,
    /// `Re eps >= 0`; `p_o` continued from `+sqrt(eps^2 - mu^2)` on the right real axis.
    OutgoingRight,
    /// `Re eps <= 0`; `p_o` mirrored so the wave is outgoing for `Re eps < 0`.
    OutgoingLeft,
    /// Real `eps` with `|eps| >= mu`; `p_o = +sqrt(eps^2 - mu^2)`.
    ScatteringReal,
}

/// Per-region energies `eps_alpha^{+-}` and momenta.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct ChannelEnergies {
    pub eps_i_plus: Complex64,
    pub eps_i_minus: Complex64,
    pub eps_o_plus: Complex64,
    pub eps_o_minus: Complex64,
    pub p_i: Complex64,
    pub p_o: Complex64,
    pub branch: Branch,
}

/// Inner momentum, continued from `+sqrt((eps-v)^2 - mu^2)` where `eps - v > mu`.
pub(crate) fn inner_momentum(mu: f64, d: Complex64) -> Complex64 {
    if mu == 0.0 {
        return d;
    }
    if d.im == 0.0 && d.re.abs() <= mu {
        return Complex64::new(0.0, (mu * mu - d.re * d.re).sqrt());
    }
    d * (1.0 - mu * mu / (d * d)).sqrt()
}

/// `eps sqrt(1 - mu^2/eps^2)`: equals `+sqrt(eps^2 - mu^2)` for real `eps > mu`.
pub(crate) fn right_momentum(mu: f64, eps: Complex64) -> Complex64 {
    if mu == 0.0 {
        return eps;
    }
    if eps == Complex64::new(0.0, 0.0) {
        return Complex64::new(0.0, mu);
    }
    eps * (1.0 - mu * mu / (eps * eps)).sqrt()
}

/// Region energies and momenta for `eps` on the given branch.
pub fn channel(params: &DotParams, eps: Complex64, branch: Branch) -> Result<ChannelEnergies, ModelError> {
    if !eps.is_finite() {
        return Err(ModelError::Domain(format!("non-finite energy {eps}")));
    }
    let mu = params.mu;
    let p_o = match branch {
        Branch::BoundSearch => {
            if mu <= 0.0 {
                return Err(ModelError::Branch("bound search needs mu > 0".into()));
            }
            if eps.im != 0.0 || eps.re.abs() >= mu {
                return Err(ModelError::Branch(format!("bound search needs real eps in (-mu, mu), got {eps}")));
            }
            Complex64::new(0.0, (mu * mu - eps.re * eps.re).sqrt())
        }
        Branch::ScatteringReal => {
            if eps.im != 0.0 || eps.re.abs() < mu {
                return Err(ModelError::Branch(format!("scattering needs real eps with |eps| >= mu, got {eps}")));
            }
            Complex64::new((eps.re * eps.re - mu * mu).max(0.0).sqrt(), 0.0)
        }
        Branch::OutgoingRight => {
            if eps.re < 0.0 {
                return Err(ModelError::Branch(format!("right outgoing branch needs Re eps >= 0, got {eps}")));
            }
            right_momentum(mu, eps)
        }
        Branch::OutgoingLeft => {
            if eps.re > 0.0 {
                return Err(ModelError::Branch(format!("left outgoing branch needs Re eps <= 0, got {eps}")));
            }
            -right_momentum(mu, eps)
        }
    };
    let d = eps - params.v;
    Ok(ChannelEnergies {
        eps_i_plus: d + mu,
        eps_i_minus: d - mu,
        eps_o_plus: eps + mu,
        eps_o_minus: eps - mu,
        p_i: inner_momentum(mu, d),
        p_o,
        branch,
    })
}
