//! Pipelines over depth and energy grids: bound spectra, capture depths,
//! resonance trajectories, delay curves and resonance/delay consistency.

mod capture;
mod delay;
mod spectrum;
mod trajectory;

use thiserror::Error;

use crate::model::ModelError;
use crate::rootfind::RootError;

pub use capture::{capture_depths, CaptureDepth};
pub use delay::{consistency_report, delay_peaks, delay_scan, ConsistencyReport, ConsistencyRow, DelayPeak, DELAY_GRID};
pub use spectrum::{bound_levels, bound_spectrum, SpectrumBranch, SpectrumGap, SpectrumResult, BOUND_GRID, STITCH_CAP};
pub use trajectory::{
    find_resonances, leading_resonance, resonance_trajectories, CaptureEvent, ResonanceTrajectory, SeedWindow,
    RESONANCE_RESIDUAL, TRAJECTORY_STEP,
};

#[derive(Debug, Clone, PartialEq, Error)]
pub enum ScanError {
    #[error("invalid input: {0}")]
    InvalidInput(String),
    #[error("no delay maximum for the resonance at {eps_r}{eps_i:+}i")]
    UnmatchedResonance { eps_r: f64, eps_i: f64 },
    #[error(transparent)]
    Model(#[from] ModelError),
    #[error(transparent)]
    Root(#[from] RootError),
}

/// `n` equally spaced values from `lo` to `hi` inclusive.
pub fn linspace(lo: f64, hi: f64, n: usize) -> Vec<f64> {
    match n {
        0 => Vec::new(),
        1 => vec![lo],
        _ => {
            let h = (hi - lo) / (n - 1) as f64;
            (0..n).map(|k| if k == n - 1 { hi } else { lo + h * k as f64 }).collect()
        }
    }
}

/// Depth grid from `from` to `to` in steps of `step` (sign taken from the direction).
pub fn depth_grid(from: f64, to: f64, step: f64) -> Vec<f64> {
    let n = ((to - from).abs() / step.abs()).round() as usize;
    let h = (to - from).signum() * step.abs();
    (0..=n).map(|k| if k == n { to } else { from + h * k as f64 }).collect()
}
