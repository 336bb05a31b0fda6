//! Dispatch of a [`RunConfig`] to its pipeline, and process exit codes.

use num_complex::Complex64;
use thiserror::Error;

use super::config::{CommandName, Direction, RunConfig, SpinorKind};
use super::{IoError, PipelineResult};
use crate::model::{
    from_natural_units, radial_spinor, to_natural_units, Classification, ModelError, NaturalValues, PhysicalConstants,
    PhysicalValues, StateKind,
};
use crate::rootfind::RootError;
use crate::scans::{
    bound_spectrum, capture_depths, consistency_report, delay_scan, find_resonances, leading_resonance, linspace,
    resonance_trajectories, ScanError, SeedWindow,
};

/// Radius samples in a `spinor` run.
pub const SPINOR_POINTS: usize = 300;

#[derive(Debug, Error)]
pub enum RunError {
    #[error(transparent)]
    Io(#[from] IoError),
    #[error(transparent)]
    Scan(#[from] ScanError),
    #[error(transparent)]
    Model(#[from] ModelError),
}

/// Exit status for an error:
/// 2 usage, 3 model/domain, 4 root finding, 5 lost track, 6 unmatched resonance, 7 I/O.
pub fn exit_code(e: &RunError) -> i32 {
    match e {
        RunError::Io(IoError::Usage(_)) => 2,
        RunError::Io(_) => 7,
        RunError::Model(_) | RunError::Scan(ScanError::Model(_)) => 3,
        RunError::Scan(ScanError::InvalidInput(_)) => 2,
        RunError::Scan(ScanError::Root(RootError::TrackLost { .. })) => 5,
        RunError::Scan(ScanError::Root(RootError::InvalidInput(_))) => 2,
        RunError::Scan(ScanError::Root(_)) => 4,
        RunError::Scan(ScanError::UnmatchedResonance { .. }) => 6,
    }
}

impl PipelineResult {
    /// 5 if any trajectory stopped early, else 0.
    pub fn exit_code(&self) -> i32 {
        match self {
            PipelineResult::Resonances(t) if t.iter().any(|t| t.lost.is_some()) => 5,
            _ => 0,
        }
    }
}

pub fn run(config: &RunConfig) -> Result<PipelineResult, RunError> {
    let p = config.params;
    let g = &config.grids;
    Ok(match config.command {
        CommandName::Spectrum => PipelineResult::Spectrum(bound_spectrum(p.mu, p.ell, g.v_min, g.v_max, g.v_steps)?),
        CommandName::Capture => PipelineResult::Capture(capture_depths(p.mu, p.ell, g.count)?),
        CommandName::Resonances => {
            let grid = linspace(g.v_max, g.v_min, g.v_steps);
            let seeds = if g.seeds.is_empty() {
                vec![leading_resonance(&p.with_v(g.v_max))?.eps]
            } else {
                g.seeds.clone()
            };
            PipelineResult::Resonances(resonance_trajectories(p.mu, p.ell, &grid, &seeds)?)
        }
        CommandName::Delay => PipelineResult::Delay(delay_scan(p.mu, p.ell, p.v, g.eps_min, g.eps_max, g.eps_steps)?),
        CommandName::Consistency => {
            let curve = delay_scan(p.mu, p.ell, p.v, g.eps_min, g.eps_max, g.eps_steps)?;
            let in_span: Vec<_> = find_resonances(&p, &SeedWindow::for_params(&p))?
                .into_iter()
                .filter(|r| r.classification == Classification::Resonance && r.eps.re >= g.eps_min && r.eps.re <= g.eps_max)
                .collect();
            let report = consistency_report(p.mu, p.ell, p.v, &in_span, &curve)?;
            PipelineResult::Consistency { report, curve }
        }
        CommandName::Spinor => {
            let kind = g.kind.ok_or_else(|| IoError::Usage("spinor needs --kind".into()))?;
            let eps = match kind {
                SpinorKind::Critical => Complex64::new(p.mu, 0.0),
                SpinorKind::Supercritical => Complex64::new(-p.mu, 0.0),
                SpinorKind::MasslessBound => Complex64::new(0.0, 0.0),
                _ => g.eps.ok_or_else(|| IoError::Usage(format!("spinor --kind {kind:?} needs --eps")))?,
            };
            let kind = StateKind::from(kind);
            let rho = linspace(g.rho_max / SPINOR_POINTS as f64, g.rho_max, SPINOR_POINTS);
            PipelineResult::Spinor(rho.into_iter().map(|r| radial_spinor(&p, eps, r, kind)).collect::<Result<_, _>>()?)
        }
        CommandName::Convert => {
            let req = config.convert.as_ref().ok_or_else(|| IoError::Usage("convert request missing".into()))?;
            let constants = PhysicalConstants::new(req.radius, req.fermi_velocity, req.hbar)?;
            let (natural, physical) = match req.direction {
                Direction::ToNatural => {
                    let physical = PhysicalValues { energy: req.energy, well_depth: req.well_depth, mass: req.mass };
                    (to_natural_units(physical, constants)?, physical)
                }
                Direction::FromNatural => {
                    let natural = NaturalValues { eps: req.eps, v: req.v, mu: req.mu };
                    (natural, from_natural_units(natural, constants)?)
                }
            };
            PipelineResult::Convert { natural, physical }
        }
    })
}
