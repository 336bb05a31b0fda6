use num_complex::Complex64;
use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use super::capture::condition_roots;
use super::{linspace, ScanError};
use crate::model::{
    bound_function, critical_momentum, relative_residual, supercritical_momentum, Branch, DepthKind, DotParams,
};
use crate::rootfind::{bracket_roots, refine_root};

/// Energy grid used to bracket bound levels in `(-mu, mu)`.
pub const BOUND_GRID: usize = 2000;
/// Largest energy change between neighbouring depths that still continues a branch.
pub const STITCH_CAP: f64 = 0.1;
/// Post-pass acceptance of a bound root, relative to the size of the matching terms.
pub const BOUND_RESIDUAL: f64 = 1e-9;
const EDGE: f64 = 1e-9;

/// One bound level followed across the depth grid.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct SpectrumBranch {
    pub v_grid: Vec<f64>,
    pub eps: Vec<f64>,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct SpectrumGap {
    pub v: f64,
    pub message: String,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct SpectrumResult {
    pub mu: f64,
    pub ell: i32,
    pub branches: Vec<SpectrumBranch>,
    pub critical_depths: Vec<f64>,
    pub supercritical_depths: Vec<f64>,
    /// Depths at which the level search failed; the scan continues past them.
    #[serde(default)]
    pub gaps: Vec<SpectrumGap>,
}

impl SpectrumResult {
    /// Number of branches alive at each grid depth.
    pub fn coexisting(&self) -> Vec<(f64, usize)> {
        let mut all: Vec<f64> = self.branches.iter().flat_map(|b| b.v_grid.iter().copied()).collect();
        all.sort_by(f64::total_cmp);
        all.dedup();
        all.into_iter()
            .map(|v| (v, self.branches.iter().filter(|b| b.v_grid.contains(&v)).count()))
            .collect()
    }
}

/// Bound energies at one depth, ascending.
pub fn bound_levels(params: &DotParams, grid: usize) -> Result<Vec<f64>, ScanError> {
    let mu = params.mu;
    if params.is_massless() {
        return Err(ScanError::InvalidInput("bound levels need mu > 0".into()));
    }
    let f = |e: f64| bound_function(params, e);
    let mut out = Vec::new();
    for b in bracket_roots(f, -mu + EDGE, mu - EDGE, grid)? {
        let e = refine_root(f, b, 1e-14)?;
        let rel = relative_residual(params, Complex64::new(e, 0.0), Branch::BoundSearch)?;
        if rel <= BOUND_RESIDUAL {
            out.push(e);
        }
    }
    Ok(out)
}

/// Bound levels over a depth grid, stitched into branches, with the capture depths in range.
pub fn bound_spectrum(mu: f64, ell: i32, v_lo: f64, v_hi: f64, v_steps: usize) -> Result<SpectrumResult, ScanError> {
    if !(mu > 0.0) {
        return Err(ScanError::InvalidInput(format!("spectrum needs mu > 0, got {mu}")));
    }
    if !(v_lo < v_hi && v_hi < 0.0) {
        return Err(ScanError::InvalidInput(format!("need v_lo < v_hi < 0, got [{v_lo}, {v_hi}]")));
    }
    if v_steps < 10 {
        return Err(ScanError::InvalidInput(format!("need v_steps >= 10, got {v_steps}")));
    }
    let base = DotParams::new(mu, v_hi, ell)?;
    let grid = linspace(v_lo, v_hi, v_steps);
    let levels: Vec<Result<Vec<f64>, ScanError>> =
        grid.par_iter().map(|&v| bound_levels(&base.with_v(v), BOUND_GRID)).collect();

    let mut gaps = Vec::new();
    let mut branches: Vec<SpectrumBranch> = Vec::new();
    let mut open: Vec<usize> = Vec::new();
    for (&v, found) in grid.iter().zip(levels) {
        let found = match found {
            Ok(f) => f,
            Err(e) => {
                gaps.push(SpectrumGap { v, message: e.to_string() });
                continue;
            }
        };
        // greedy nearest-neighbour assignment, closest pairs first
        let mut pairs: Vec<(f64, usize, usize)> = Vec::new();
        for (bi, &b) in open.iter().enumerate() {
            let last = *branches[b].eps.last().expect("open branch is non-empty");
            for (ri, &e) in found.iter().enumerate() {
                let d = (e - last).abs();
                if d <= STITCH_CAP {
                    pairs.push((d, bi, ri));
                }
            }
        }
        pairs.sort_by(|a, b| a.0.total_cmp(&b.0));
        let mut used_branch = vec![false; open.len()];
        let mut used_root = vec![false; found.len()];
        let mut next_open = Vec::new();
        for (_, bi, ri) in pairs {
            if used_branch[bi] || used_root[ri] {
                continue;
            }
            used_branch[bi] = true;
            used_root[ri] = true;
            let b = open[bi];
            branches[b].v_grid.push(v);
            branches[b].eps.push(found[ri]);
            next_open.push(b);
        }
        for (ri, &e) in found.iter().enumerate() {
            if !used_root[ri] {
                branches.push(SpectrumBranch { v_grid: vec![v], eps: vec![e] });
                next_open.push(branches.len() - 1);
            }
        }
        open = next_open;
    }

    let in_range = |d: &f64| *d >= v_lo && *d <= v_hi;
    let p_crit = critical_momentum(mu, v_lo);
    let p_super = supercritical_momentum(mu, v_lo);
    let critical_depths = if p_crit > 1e-3 {
        condition_roots(DepthKind::Critical, mu, ell, None, Some(p_crit))?.iter().map(|c| c.v).filter(in_range).collect()
    } else {
        Vec::new()
    };
    let supercritical_depths = if p_super > 1e-3 {
        condition_roots(DepthKind::Supercritical, mu, ell, None, Some(p_super))?
            .iter()
            .map(|c| c.v)
            .filter(in_range)
            .collect()
    } else {
        Vec::new()
    };
    Ok(SpectrumResult { mu, ell, branches, critical_depths, supercritical_depths, gaps })
}
