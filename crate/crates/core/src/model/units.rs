//! Conversion between physical quantities and the dimensionless variables
//! `eps = E R/(hbar vF)`, `v = V0 R/(hbar vF)`, `mu = m vF R/hbar`.

use serde::{Deserialize, Serialize};

use super::params::ModelError;

/// Dot radius, Fermi velocity and reduced Planck constant in any consistent unit system.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct PhysicalConstants {
    pub radius: f64,
    pub fermi_velocity: f64,
    pub hbar: f64,
}

/// Energy, well depth and mass in physical units. The unit charge is absorbed
/// into the sign of `well_depth`.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct PhysicalValues {
    pub energy: f64,
    pub well_depth: f64,
    pub mass: f64,
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct NaturalValues {
    pub eps: f64,
    pub v: f64,
    pub mu: f64,
}

impl PhysicalConstants {
    pub fn new(radius: f64, fermi_velocity: f64, hbar: f64) -> Result<Self, ModelError> {
        for (name, x) in [("R", radius), ("vF", fermi_velocity), ("hbar", hbar)] {
            if !(x > 0.0) || !x.is_finite() {
                return Err(ModelError::Domain(format!("{name} must be positive and finite, got {x}")));
            }
        }
        Ok(PhysicalConstants { radius, fermi_velocity, hbar })
    }

    fn energy_scale(&self) -> f64 {
        self.hbar * self.fermi_velocity / self.radius
    }
}

pub fn to_natural_units(values: PhysicalValues, constants: PhysicalConstants) -> Result<NaturalValues, ModelError> {
    let c = PhysicalConstants::new(constants.radius, constants.fermi_velocity, constants.hbar)?;
    if !(values.mass >= 0.0) {
        return Err(ModelError::Domain(format!("mass must be >= 0, got {}", values.mass)));
    }
    let scale = c.energy_scale();
    Ok(NaturalValues {
        eps: values.energy / scale,
        v: values.well_depth / scale,
        mu: values.mass * c.fermi_velocity * c.radius / c.hbar,
    })
}

pub fn from_natural_units(values: NaturalValues, constants: PhysicalConstants) -> Result<PhysicalValues, ModelError> {
    let c = PhysicalConstants::new(constants.radius, constants.fermi_velocity, constants.hbar)?;
    if !(values.mu >= 0.0) {
        return Err(ModelError::Domain(format!("mu must be >= 0, got {}", values.mu)));
    }
    let scale = c.energy_scale();
    Ok(PhysicalValues {
        energy: values.eps * scale,
        well_depth: values.v * scale,
        mass: values.mu * c.hbar / (c.fermi_velocity * c.radius),
    })
}
