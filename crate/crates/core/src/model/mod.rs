//! Dot model: parameters, region momenta, secular residuals, phase shifts and spinors.

mod params;
mod phase;
mod secular;
mod spinor;
mod units;

use num_complex::Complex64;
use serde::{Deserialize, Serialize};

pub use params::{channel, Branch, ChannelEnergies, DotParams, ModelError, MAX_ELL};
pub use phase::{
    high_energy_tangent, phase_components, phase_shift_raw, principal_phase, unwrap_phase, wigner_delay, DelayCurve,
    UnwrapConvention, MAX_UNWRAP_STEP,
};
pub use secular::{
    bound_function, critical_momentum, critical_residual, depth_for_root, energy_from_uniformizer,
    massless_bound_residual, massless_outgoing_residual, reduced_residual, relative_residual, secular_residual,
    supercritical_momentum, supercritical_residual, uniformized_residual, uniformizer_from_energy, DepthKind,
};
pub use spinor::{radial_spinor, OuterCoefficients, RadialSpinor, Region, StateKind, MATCH_TOLERANCE};
pub use units::{from_natural_units, to_natural_units, NaturalValues, PhysicalConstants, PhysicalValues};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub enum Classification {
    Resonance,
    Bound,
    Critical,
    Supercritical,
}

impl Classification {
    pub fn as_str(&self) -> &'static str {
        match self {
            Classification::Resonance => "Resonance",
            Classification::Bound => "Bound",
            Classification::Critical => "Critical",
            Classification::Supercritical => "Supercritical",
        }
    }
}

impl std::fmt::Display for Classification {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        f.write_str(self.as_str())
    }
}

impl std::str::FromStr for Classification {
    type Err = ModelError;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        match s {
            "Resonance" => Ok(Classification::Resonance),
            "Bound" => Ok(Classification::Bound),
            "Critical" => Ok(Classification::Critical),
            "Supercritical" => Ok(Classification::Supercritical),
            other => Err(ModelError::Domain(format!("unknown classification {other:?}"))),
        }
    }
}

/// Distance to the real axis and to `+-mu` below which a pole counts as real or at an edge.
pub const CLASSIFY_TOLERANCE: f64 = 1e-9;

/// Classify a root of the outgoing equation by where it sits relative to the real axis
/// and the continuum edges.
pub fn classify(mu: f64, eps: Complex64) -> Classification {
    if eps.im.abs() > CLASSIFY_TOLERANCE {
        return Classification::Resonance;
    }
    if mu > 0.0 && (eps.re - mu).abs() <= CLASSIFY_TOLERANCE {
        Classification::Critical
    } else if mu > 0.0 && (eps.re + mu).abs() <= CLASSIFY_TOLERANCE {
        Classification::Supercritical
    } else if (mu > 0.0 && eps.re.abs() < mu) || (mu == 0.0 && eps.re.abs() <= 1e-10) {
        Classification::Bound
    } else {
        Classification::Resonance
    }
}

/// A solution `eps` of the outgoing (or bound) matching condition at depth `v`.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct ResonancePoint {
    pub v: f64,
    pub eps: Complex64,
    pub residual: f64,
    pub classification: Classification,
}
