use serde::{Deserialize, Serialize};

use super::ScanError;
use crate::model::{
    critical_residual, depth_for_root, massless_bound_residual, supercritical_residual, DepthKind, ModelError,
};
use crate::rootfind::{bracket_roots, refine_root};

/// Grid spacing in `p_i` for the capture-condition scans.
const P_STEP: f64 = 0.02;
const P_MIN: f64 = 1e-3;
const P_WINDOW: f64 = 10.0;
/// Largest inner momentum searched before giving up on `count` roots.
const P_LIMIT: f64 = 400.0;

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct CaptureDepth {
    pub v: f64,
    pub kind: DepthKind,
    /// Root of the capture condition in the inner momentum.
    pub p_inner: f64,
    /// `|condition(p_inner)|`.
    pub residual: f64,
}

fn condition(kind: DepthKind, ell: i32, mu: f64, p: f64) -> Result<f64, ModelError> {
    match kind {
        DepthKind::Critical => critical_residual(ell as u32, mu, p),
        DepthKind::Supercritical => supercritical_residual(ell as u32, p),
        DepthKind::MasslessBound => massless_bound_residual(ell, p),
    }
}

/// Roots of the capture condition in `(0, p_max]`, or the first `count` roots when
/// `p_max` is `None`.
pub(crate) fn condition_roots(
    kind: DepthKind,
    mu: f64,
    ell: i32,
    count: Option<usize>,
    p_max: Option<f64>,
) -> Result<Vec<CaptureDepth>, ScanError> {
    let mut out: Vec<CaptureDepth> = Vec::new();
    let mut lo = P_MIN;
    let limit = p_max.unwrap_or(P_LIMIT);
    while lo < limit && count.is_none_or(|n| out.len() < n) {
        let hi = (lo + P_WINDOW).min(limit);
        let cells = (((hi - lo) / P_STEP).ceil() as usize).max(2);
        let f = |p: f64| condition(kind, ell, mu, p);
        for b in bracket_roots(f, lo, hi, cells)? {
            let p = refine_root(f, b, 1e-14)?;
            let residual = condition(kind, ell, mu, p)?.abs();
            out.push(CaptureDepth { v: depth_for_root(kind, mu, p)?, kind, p_inner: p, residual });
            if count.is_some_and(|n| out.len() >= n) {
                break;
            }
        }
        lo = hi;
    }
    if let Some(n) = count {
        if out.len() < n {
            return Err(ScanError::InvalidInput(format!(
                "only {} {kind:?} roots below p = {P_LIMIT}",
                out.len()
            )));
        }
    }
    Ok(out)
}

/// First `count` critical and `count` supercritical depths (`mu > 0`), or the first
/// `count` zero-energy bound depths (`mu = 0`), shallowest first.
pub fn capture_depths(mu: f64, ell: i32, count: usize) -> Result<Vec<CaptureDepth>, ScanError> {
    if count == 0 {
        return Err(ScanError::InvalidInput("count must be >= 1".into()));
    }
    crate::model::DotParams::new(mu, 0.0, ell)?;
    let mut out = if mu == 0.0 {
        condition_roots(DepthKind::MasslessBound, mu, ell, Some(count), None)?
    } else {
        let mut v = condition_roots(DepthKind::Critical, mu, ell, Some(count), None)?;
        v.extend(condition_roots(DepthKind::Supercritical, mu, ell, Some(count), None)?);
        v
    };
    out.sort_by(|a, b| b.v.total_cmp(&a.v));
    Ok(out)
}
