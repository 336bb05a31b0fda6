use num_complex::Complex64;
use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use super::capture::condition_roots;
use super::spectrum::{bound_levels, BOUND_GRID};
use super::ScanError;
use crate::model::{
    classify, energy_from_uniformizer, massless_outgoing_residual, uniformized_residual, uniformizer_from_energy,
    Branch, Classification, DepthKind, DotParams, ModelError, ResonancePoint,
};
use crate::rootfind::{complex_root, grid_points, track_partial, ComplexOptions, TrackOptions, TrackedRoot};

/// Default depth step for trajectories.
pub const TRAJECTORY_STEP: f64 = 0.05;
/// Acceptance of a resonance, relative to the size of the matching terms.
pub const RESONANCE_RESIDUAL: f64 = 1e-9;
/// Distance of the uniformizer from `+-1` inside which a capture reseed is attempted.
const CAPTURE_RADIUS: f64 = 0.4;

/// Massive roots are searched in the uniformizing variable `t`, massless ones in `eps`.
#[derive(Debug, Clone, Copy, PartialEq)]
enum Plane {
    Uniformizer,
    Energy,
}

fn plane(params: &DotParams) -> Plane {
    if params.is_massless() {
        Plane::Energy
    } else {
        Plane::Uniformizer
    }
}

/// Outgoing residual in the working plane with its term scale.
fn working_residual(params: &DotParams, z: Complex64) -> Result<(Complex64, f64), ModelError> {
    match plane(params) {
        Plane::Uniformizer => uniformized_residual(params, z),
        Plane::Energy => massless_outgoing_residual(params, z),
    }
}

fn to_energy(params: &DotParams, z: Complex64) -> Complex64 {
    match plane(params) {
        Plane::Uniformizer => energy_from_uniformizer(params.mu, z).0,
        Plane::Energy => z,
    }
}

fn from_energy(params: &DotParams, eps: Complex64) -> Result<Complex64, ModelError> {
    match plane(params) {
        Plane::Energy => Ok(eps),
        Plane::Uniformizer => {
            let mu = params.mu;
            let branch = if eps.im == 0.0 && eps.re.abs() < mu {
                Branch::BoundSearch
            } else if eps.re >= 0.0 {
                Branch::OutgoingRight
            } else {
                Branch::OutgoingLeft
            };
            uniformizer_from_energy(mu, eps, branch)
        }
    }
}

/// `|R| / (|first| + |second|)` at a working-plane point.
fn relative(params: &DotParams, z: Complex64) -> Result<f64, ModelError> {
    let (r, s) = working_residual(params, z)?;
    Ok(if s > 0.0 { r.norm() / s } else { r.norm() })
}

/// Residual divided by a scale frozen at the first evaluation, so the function
/// handed to the iterators stays analytic.
struct Scaled {
    params: DotParams,
    scale: Option<f64>,
}

impl Scaled {
    fn new(params: DotParams) -> Self {
        Scaled { params, scale: None }
    }

    fn eval(&mut self, z: Complex64) -> Result<Complex64, ModelError> {
        let (r, s) = working_residual(&self.params, z)?;
        let scale = *self.scale.get_or_insert(if s > 0.0 { s } else { 1.0 });
        Ok(r / scale)
    }
}

fn resonance_point(params: &DotParams, z: Complex64) -> Result<ResonancePoint, ModelError> {
    let eps = to_energy(params, z);
    Ok(ResonancePoint { v: params.v, eps, residual: relative(params, z)?, classification: classify(params.mu, eps) })
}

fn solve_at(params: &DotParams, seed_eps: Complex64) -> Result<ResonancePoint, ScanError> {
    let z0 = from_energy(params, seed_eps)?;
    let extent = if params.is_massless() { params.v.abs() } else { 1.0 + params.v.abs() / params.mu };
    let opts = ComplexOptions::around(z0, extent);
    let mut f = Scaled::new(*params);
    let root = complex_root(|z| f.eval(z), z0, &opts)?;
    Ok(resonance_point(params, root.z)?)
}

/// Rectangle of the energy plane scanned for fresh seeds.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct SeedWindow {
    pub re_min: f64,
    pub re_max: f64,
    /// Largest `|eps_I|`; the right half is searched below the axis, the left half above.
    pub im_extent: f64,
    pub spacing: f64,
}

impl SeedWindow {
    pub fn for_params(params: &DotParams) -> Self {
        let r = params.v.abs() + params.mu;
        SeedWindow { re_min: -r, re_max: r, im_extent: 3.0, spacing: 0.05 }
    }
}

/// Outgoing roots at one depth found from local minima of the relative residual
/// on a grid over `window`, refined and de-duplicated; sorted by `|eps_I|`.
pub fn find_resonances(params: &DotParams, window: &SeedWindow) -> Result<Vec<ResonancePoint>, ScanError> {
    let SeedWindow { re_min, re_max, im_extent, spacing } = *window;
    if !(re_min < re_max) || !(im_extent > 0.0) || !(spacing > 0.0) {
        return Err(ScanError::InvalidInput(format!("bad seed window {window:?}")));
    }
    let nx = ((re_max - re_min) / spacing).ceil() as usize + 1;
    let ny = (im_extent / spacing).ceil() as usize + 1;
    let im_at = |re: f64, j: usize| {
        // off the axis by half a cell to stay clear of the cuts
        let y = (j as f64 + 0.5) * spacing;
        if re >= 0.0 {
            -y
        } else {
            y
        }
    };
    let re_at = |i: usize| re_min + i as f64 * spacing;
    let values: Vec<f64> = (0..nx * ny)
        .into_par_iter()
        .map(|k| {
            let (i, j) = (k / ny, k % ny);
            let eps = Complex64::new(re_at(i), im_at(re_at(i), j));
            from_energy(params, eps).and_then(|z| relative(params, z)).unwrap_or(f64::INFINITY)
        })
        .collect();
    let at = |i: usize, j: usize| values[i * ny + j];
    let mut seeds = Vec::new();
    for i in 0..nx {
        for j in 0..ny {
            let here = at(i, j);
            if !(here < 0.2) {
                continue;
            }
            let mut minimum = true;
            for di in -1i64..=1 {
                for dj in -1i64..=1 {
                    let (a, b) = (i as i64 + di, j as i64 + dj);
                    if (di, dj) == (0, 0) || a < 0 || b < 0 || a >= nx as i64 || b >= ny as i64 {
                        continue;
                    }
                    // do not compare across the imaginary axis, where the branch flips
                    if (re_at(a as usize) >= 0.0) != (re_at(i) >= 0.0) {
                        continue;
                    }
                    if at(a as usize, b as usize) < here {
                        minimum = false;
                    }
                }
            }
            if minimum {
                seeds.push(Complex64::new(re_at(i), im_at(re_at(i), j)));
            }
        }
    }
    let found: Vec<ResonancePoint> = seeds.par_iter().filter_map(|&s| solve_at(params, s).ok()).collect();
    let mut out: Vec<ResonancePoint> = Vec::new();
    for p in found {
        let inside = p.eps.re >= re_min - spacing
            && p.eps.re <= re_max + spacing
            && p.eps.im.abs() <= im_extent + spacing
            && p.residual <= RESONANCE_RESIDUAL;
        if inside && !out.iter().any(|q| (q.eps - p.eps).norm() < 1e-6) {
            out.push(p);
        }
    }
    out.sort_by(|a, b| a.eps.im.abs().total_cmp(&b.eps.im.abs()).then(a.eps.re.total_cmp(&b.eps.re)));
    Ok(out)
}

/// The longest-lived resonance above the continuum edge (`Re eps > mu`).
pub fn leading_resonance(params: &DotParams) -> Result<ResonancePoint, ScanError> {
    let window = SeedWindow::for_params(params);
    find_resonances(params, &window)?
        .into_iter()
        .find(|p| p.classification == Classification::Resonance && p.eps.re > params.mu)
        .ok_or_else(|| ScanError::InvalidInput(format!("no resonance found in {window:?}")))
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct CaptureEvent {
    /// Grid depth closest to the crossing.
    pub v: f64,
    /// Depth from the capture condition itself.
    pub refined_v: f64,
    pub kind: DepthKind,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct ResonanceTrajectory {
    pub mu: f64,
    pub ell: i32,
    /// Roots in the energy plane, including substeps and rejected attempts.
    pub points: Vec<TrackedRoot>,
    pub capture_events: Vec<CaptureEvent>,
    /// Why tracking stopped early, if it did.
    #[serde(default)]
    pub lost: Option<String>,
}

impl ResonanceTrajectory {
    /// Accepted grid points with their classification.
    pub fn resonance_points(&self) -> Vec<ResonancePoint> {
        grid_points(&self.points)
            .map(|p| ResonancePoint {
                v: p.param_value,
                eps: p.root,
                residual: p.residual,
                classification: classify(self.mu, p.root),
            })
            .collect()
    }
}

fn nearest_grid(v_grid: &[f64], v: f64) -> f64 {
    v_grid.iter().copied().min_by(|a, b| (a - v).abs().total_cmp(&(b - v).abs())).unwrap_or(v)
}

/// Track each seed along `v_grid`, logging captures into the bound window and
/// escapes into the negative continuum.
pub fn resonance_trajectories(
    mu: f64,
    ell: i32,
    v_grid: &[f64],
    seeds: &[Complex64],
) -> Result<Vec<ResonanceTrajectory>, ScanError> {
    let Some(&v0) = v_grid.first() else {
        return Err(ScanError::InvalidInput("empty v grid".into()));
    };
    let base = DotParams::new(mu, v0, ell)?;
    let deepest = v_grid.iter().copied().fold(f64::INFINITY, f64::min);
    let shallowest = v_grid.iter().copied().fold(f64::NEG_INFINITY, f64::max);
    let depths = |kind: DepthKind, p_max: f64| -> Result<Vec<f64>, ScanError> {
        if p_max <= 1e-3 {
            return Ok(Vec::new());
        }
        Ok(condition_roots(kind, mu, ell, None, Some(p_max))?.into_iter().map(|c| c.v).collect())
    };
    let (critical, supercritical) = if base.is_massless() {
        (depths(DepthKind::MasslessBound, deepest.abs())?, Vec::new())
    } else {
        (
            depths(DepthKind::Critical, crate::model::critical_momentum(mu, deepest))?,
            depths(DepthKind::Supercritical, crate::model::supercritical_momentum(mu, deepest))?,
        )
    };
    let in_grid = |d: &f64| *d >= deepest && *d <= shallowest;
    let critical: Vec<f64> = critical.into_iter().filter(in_grid).collect();
    let supercritical: Vec<f64> = supercritical.into_iter().filter(in_grid).collect();

    Ok(seeds
        .par_iter()
        .map(|&seed| one_trajectory(&base, v_grid, seed, &critical, &supercritical))
        .collect())
}

fn one_trajectory(
    base: &DotParams,
    v_grid: &[f64],
    seed: Complex64,
    critical: &[f64],
    supercritical: &[f64],
) -> ResonanceTrajectory {
    let mu = base.mu;
    let massless = base.is_massless();
    let start = match from_energy(base, seed) {
        Ok(z) => z,
        Err(e) => {
            return ResonanceTrajectory { mu, ell: base.ell, points: Vec::new(), capture_events: Vec::new(), lost: Some(e.to_string()) }
        }
    };
    let extent = if massless { v_grid.iter().fold(0f64, |m, v| m.max(v.abs())) } else { 1.0 + v_grid.iter().fold(0f64, |m, v| m.max(v.abs())) / mu };
    let opts = TrackOptions { root: ComplexOptions::around(start, extent), ..TrackOptions::default() };

    let mut scaled: Option<(f64, Scaled)> = None;
    let family = |v: f64, z: Complex64| -> Result<Complex64, ModelError> {
        match &mut scaled {
            Some((cached, s)) if *cached == v => s.eval(z),
            slot => {
                let mut s = Scaled::new(base.with_v(v));
                let out = s.eval(z);
                *slot = Some((v, s));
                out
            }
        }
    };

    let crosses = |depths: &[f64], from: f64, to: f64| depths.iter().copied().find(|&d| (to < d && d <= from) || (from <= d && d < to));
    let reseed = |v_from: f64, z: Complex64, v_to: f64| -> Option<Complex64> {
        if massless {
            return None;
        }
        if v_to < v_from {
            if crosses(critical, v_from, v_to).is_some() && (z - 1.0).norm() < CAPTURE_RADIUS {
                let top = bound_levels(&base.with_v(v_to), BOUND_GRID)
                    .ok()
                    .and_then(|l| l.into_iter().fold(None, |m: Option<f64>, e| Some(m.map_or(e, |m| m.max(e)))));
                return Some(match top {
                    Some(e) => Complex64::new(e, (mu * mu - e * e).max(0.0).sqrt()) / mu,
                    None => Complex64::from_polar(1.0, 1e-3),
                });
            }
            if let Some(d) = crosses(supercritical, v_from, v_to) {
                if (z + 1.0).norm() < CAPTURE_RADIUS {
                    return Some(Complex64::new(-1.0 + 0.3 * (d - v_to).abs().sqrt(), 0.0));
                }
            }
        }
        None
    };

    let (raw, lost) = track_partial(family, v_grid, start, &opts, reseed);
    let points: Vec<TrackedRoot> = raw
        .into_iter()
        .map(|p| TrackedRoot {
            root: to_energy(base, p.root),
            residual: relative(&base.with_v(p.param_value), p.root).unwrap_or(f64::INFINITY),
            ..p
        })
        .collect();

    let mut capture_events = Vec::new();
    let accepted: Vec<&TrackedRoot> = points.iter().filter(|p| p.step_accepted).collect();
    for w in accepted.windows(2) {
        let (a, b) = (w[0], w[1]);
        let (ca, cb) = (classify(mu, a.root), classify(mu, b.root));
        if massless {
            if let Some(d) = crosses(critical, a.param_value, b.param_value) {
                if (a.root.re > 0.0) != (b.root.re > 0.0) {
                    capture_events.push(CaptureEvent { v: nearest_grid(v_grid, d), refined_v: d, kind: DepthKind::MasslessBound });
                }
            }
            continue;
        }
        if let Some(d) = crosses(critical, a.param_value, b.param_value) {
            if (ca == Classification::Bound) != (cb == Classification::Bound) && a.root.re.min(b.root.re) > 0.0 {
                capture_events.push(CaptureEvent { v: nearest_grid(v_grid, d), refined_v: d, kind: DepthKind::Critical });
            }
        }
        if let Some(d) = crosses(supercritical, a.param_value, b.param_value) {
            if (ca == Classification::Bound) != (cb == Classification::Bound) && a.root.re.max(b.root.re) < 0.0 {
                capture_events.push(CaptureEvent { v: nearest_grid(v_grid, d), refined_v: d, kind: DepthKind::Supercritical });
            }
        }
    }

    ResonanceTrajectory { mu, ell: base.ell, points, capture_events, lost: lost.map(|e| e.to_string()) }
}
