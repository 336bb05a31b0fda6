//! Real bracketing and Brent refinement, complex Muller/Newton iteration and
//! parameter continuation of complex roots.

mod complex;
mod real;
mod track;

use thiserror::Error;

pub use complex::{complex_root, ComplexOptions, ComplexRoot};
pub use real::{bracket_roots, refine_root, Bracket, MAX_BRENT_ITERATIONS};
pub use track::{grid_points, track, track_partial, track_with, TrackOptions, TrackedRoot};

#[derive(Debug, Clone, PartialEq, Error)]
pub enum RootError {
    #[error("invalid input: {0}")]
    InvalidInput(String),
    #[error("function evaluation failed: {0}")]
    Evaluation(String),
    #[error("no convergence after {iterations} iterations (|f| = {residual:e})")]
    NoConvergence { iterations: usize, residual: f64 },
    #[error("iterate left the search region at {re}{im:+}i")]
    EscapedRegion { re: f64, im: f64 },
    #[error("track lost near v = {v} (last root {last_root_re}{last_root_im:+}i)")]
    TrackLost { v: f64, last_root_re: f64, last_root_im: f64 },
}

impl RootError {
    pub(crate) fn evaluation(at: impl std::fmt::Display, e: impl std::fmt::Display) -> Self {
        RootError::Evaluation(format!("at {at}: {e}"))
    }
}
