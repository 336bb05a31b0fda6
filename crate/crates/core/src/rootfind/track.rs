use num_complex::Complex64;
use serde::{Deserialize, Serialize};

use super::{complex_root, ComplexOptions, RootError};

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct TrackOptions {
    /// Largest accepted move of the root in one (sub)step.
    pub max_jump: f64,
    /// How many times one grid interval may be halved before giving up.
    pub max_halvings: u32,
    pub root: ComplexOptions,
}

impl Default for TrackOptions {
    fn default() -> Self {
        TrackOptions { max_jump: 0.5, max_halvings: 6, root: ComplexOptions::default() }
    }
}

/// One continuation result. Rejected attempts and internal substeps are kept
/// so that a trajectory can be audited; grid points have `on_grid` set.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct TrackedRoot {
    pub param_value: f64,
    pub root: Complex64,
    pub residual: f64,
    pub step_accepted: bool,
    pub on_grid: bool,
}

/// Accepted roots at the grid values, in grid order.
pub fn grid_points(points: &[TrackedRoot]) -> impl Iterator<Item = &TrackedRoot> {
    points.iter().filter(|p| p.step_accepted && p.on_grid)
}

/// Follow a root of `f(v, .)` along `v_grid`, seeding each step by linear
/// extrapolation of the last two accepted roots.
pub fn track<F, E>(
    f_family: F,
    v_grid: &[f64],
    seed: Complex64,
    opts: &TrackOptions,
) -> Result<Vec<TrackedRoot>, RootError>
where
    F: FnMut(f64, Complex64) -> Result<Complex64, E>,
    E: std::fmt::Display,
{
    track_with(f_family, v_grid, seed, opts, |_, _, _| None)
}

/// [`track`] with a hook that may replace the predicted seed for the step
/// `(v_from, root_at_v_from) -> v_to`.
pub fn track_with<F, E, H>(
    f_family: F,
    v_grid: &[f64],
    seed: Complex64,
    opts: &TrackOptions,
    reseed: H,
) -> Result<Vec<TrackedRoot>, RootError>
where
    F: FnMut(f64, Complex64) -> Result<Complex64, E>,
    E: std::fmt::Display,
    H: FnMut(f64, Complex64, f64) -> Option<Complex64>,
{
    match track_partial(f_family, v_grid, seed, opts, reseed) {
        (points, None) => Ok(points),
        (_, Some(err)) => Err(err),
    }
}

/// Like [`track_with`], but keeps the points computed before a failure.
pub fn track_partial<F, E, H>(
    mut f_family: F,
    v_grid: &[f64],
    seed: Complex64,
    opts: &TrackOptions,
    mut reseed: H,
) -> (Vec<TrackedRoot>, Option<RootError>)
where
    F: FnMut(f64, Complex64) -> Result<Complex64, E>,
    E: std::fmt::Display,
    H: FnMut(f64, Complex64, f64) -> Option<Complex64>,
{
    let Some(&v0) = v_grid.first() else {
        return (Vec::new(), None);
    };
    let increasing = v_grid.windows(2).all(|w| w[1] > w[0]);
    let decreasing = v_grid.windows(2).all(|w| w[1] < w[0]);
    if !(increasing || decreasing) || v_grid.iter().any(|v| !v.is_finite()) {
        return (Vec::new(), Some(RootError::InvalidInput("v grid must be strictly monotone and finite".into())));
    }

    let first = match complex_root(|z| f_family(v0, z), seed, &opts.root) {
        Ok(r) => r,
        Err(e) => return (Vec::new(), Some(e)),
    };
    if (first.z - seed).norm() > opts.max_jump {
        return (Vec::new(), Some(RootError::InvalidInput(format!(
            "seed {seed} does not solve the equation at v = {v0} (nearest root {})",
            first.z
        ))));
    }
    let mut out = vec![TrackedRoot { param_value: v0, root: first.z, residual: first.residual, step_accepted: true, on_grid: true }];
    let mut prev: Option<(f64, Complex64)> = None;
    let mut cur = (v0, first.z);

    for &target in &v_grid[1..] {
        let mut h = target - cur.0;
        let mut halvings = 0;
        while cur.0 != target {
            let v_try = if (target - cur.0).abs() <= h.abs() * (1.0 + 1e-12) { target } else { cur.0 + h };
            let guess = reseed(cur.0, cur.1, v_try).unwrap_or_else(|| match prev {
                Some((vp, zp)) => cur.1 + (cur.1 - zp) * ((v_try - cur.0) / (cur.0 - vp)),
                None => cur.1,
            });
            let attempt = complex_root(|z| f_family(v_try, z), guess, &opts.root);
            let on_grid = v_try == target;
            match attempt {
                Ok(r) if (r.z - cur.1).norm() <= opts.max_jump => {
                    out.push(TrackedRoot { param_value: v_try, root: r.z, residual: r.residual, step_accepted: true, on_grid });
                    prev = Some(cur);
                    cur = (v_try, r.z);
                }
                other => {
                    if let Ok(r) = other {
                        out.push(TrackedRoot {
                            param_value: v_try,
                            root: r.z,
                            residual: r.residual,
                            step_accepted: false,
                            on_grid,
                        });
                    }
                    halvings += 1;
                    if halvings > opts.max_halvings {
                        let lost = RootError::TrackLost { v: v_try, last_root_re: cur.1.re, last_root_im: cur.1.im };
                        return (out, Some(lost));
                    }
                    h *= 0.5;
                }
            }
        }
    }
    (out, None)
}
