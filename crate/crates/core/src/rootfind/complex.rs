use num_complex::Complex64;
use serde::{Deserialize, Serialize};

use super::RootError;

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct ComplexOptions {
    /// Accept once `|f| <= ftol` and the last step is below `tol (1 + |z|)`.
    pub ftol: f64,
    pub tol: f64,
    /// Iterates with `|z - center| > escape_radius` abort the search.
    pub escape_radius: f64,
    pub center: Complex64,
    pub max_iterations: usize,
    /// Largest step as a multiple of `1 + |z|`.
    pub max_step: f64,
}

impl Default for ComplexOptions {
    fn default() -> Self {
        ComplexOptions {
            ftol: 1e-10,
            tol: 1e-13,
            escape_radius: f64::INFINITY,
            center: Complex64::new(0.0, 0.0),
            max_iterations: 100,
            max_step: 0.5,
        }
    }
}

impl ComplexOptions {
    /// Escape region `|z| <= 10 (|seed| + extent)`.
    pub fn around(seed: Complex64, extent: f64) -> Self {
        ComplexOptions { escape_radius: 10.0 * (seed.norm() + extent.abs()), ..Self::default() }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct ComplexRoot {
    pub z: Complex64,
    pub residual: f64,
    pub iterations: usize,
    /// Set when the Muller phase stagnated and damped Newton finished the job.
    pub used_newton: bool,
}

struct Evaluator<'a, F> {
    f: &'a mut F,
    opts: &'a ComplexOptions,
    count: usize,
}

impl<F, E> Evaluator<'_, F>
where
    F: FnMut(Complex64) -> Result<Complex64, E>,
    E: std::fmt::Display,
{
    fn eval(&mut self, z: Complex64) -> Result<Complex64, RootError> {
        if !z.is_finite() || (z - self.opts.center).norm() > self.opts.escape_radius {
            return Err(RootError::EscapedRegion { re: z.re, im: z.im });
        }
        self.count += 1;
        let w = (self.f)(z).map_err(|e| RootError::evaluation(z, e))?;
        if w.is_finite() {
            Ok(w)
        } else {
            Err(RootError::Evaluation(format!("f({z}) = {w}")))
        }
    }
}

fn converged(opts: &ComplexOptions, z: Complex64, step: f64, fz: f64) -> bool {
    fz == 0.0 || (fz <= opts.ftol && step <= opts.tol * (1.0 + z.norm()))
}

/// Root of an analytic `f` near `seed`: Muller iteration, with damped Newton
/// (central-difference derivative) once Muller stops making progress.
pub fn complex_root<F, E>(mut f: F, seed: Complex64, opts: &ComplexOptions) -> Result<ComplexRoot, RootError>
where
    F: FnMut(Complex64) -> Result<Complex64, E>,
    E: std::fmt::Display,
{
    if !seed.is_finite() {
        return Err(RootError::InvalidInput(format!("non-finite seed {seed}")));
    }
    let mut ev = Evaluator { f: &mut f, opts, count: 0 };
    let h = 1e-3 * (1.0 + seed.norm());
    let mut z = [seed - h, seed + Complex64::new(0.0, h), seed];
    let mut w = [ev.eval(z[0])?, ev.eval(z[1])?, ev.eval(z[2])?];
    let mut best = (z[2], w[2].norm());
    for (zi, wi) in z.iter().zip(&w) {
        if wi.norm() < best.1 {
            best = (*zi, wi.norm());
        }
    }
    let mut stalled = 0;

    while ev.count < opts.max_iterations {
        let q = (z[2] - z[1]) / (z[1] - z[0]);
        let a = q * w[2] - q * (1.0 + q) * w[1] + q * q * w[0];
        let b = (2.0 * q + 1.0) * w[2] - (1.0 + q) * (1.0 + q) * w[1] + q * q * w[0];
        let c = (1.0 + q) * w[2];
        let disc = (b * b - 4.0 * a * c).sqrt();
        let den = if (b + disc).norm() >= (b - disc).norm() { b + disc } else { b - disc };
        let mut step = if den.norm() > 0.0 && den.is_finite() {
            -(z[2] - z[1]) * 2.0 * c / den
        } else {
            // degenerate model: nudge
            Complex64::new(1.0, 1.0) * (z[2] - z[1]).norm().max(1e-8)
        };
        let cap = opts.max_step * (1.0 + z[2].norm());
        if step.norm() > cap {
            step *= cap / step.norm();
        }
        if !step.is_finite() {
            break;
        }
        let mut next = z[2] + step;
        let mut fnext = ev.eval(next);
        let mut shrink = 0;
        while fnext.is_err() && shrink < 8 {
            step *= 0.5;
            next = z[2] + step;
            fnext = ev.eval(next);
            shrink += 1;
        }
        let fnext = fnext?;
        let r = fnext.norm();
        if converged(opts, next, step.norm(), r) {
            return Ok(ComplexRoot { z: next, residual: r, iterations: ev.count, used_newton: false });
        }
        if r < best.1 {
            if r < 0.5 * best.1 {
                stalled = 0;
            } else {
                stalled += 1;
            }
            best = (next, r);
        } else {
            stalled += 1;
        }
        if next == z[2] || stalled >= 6 {
            break;
        }
        z = [z[1], z[2], next];
        w = [w[1], w[2], fnext];
    }

    newton(&mut ev, best.0, best.1)
}

fn newton<F, E>(ev: &mut Evaluator<'_, F>, start: Complex64, start_res: f64) -> Result<ComplexRoot, RootError>
where
    F: FnMut(Complex64) -> Result<Complex64, E>,
    E: std::fmt::Display,
{
    let opts = *ev.opts;
    let mut z = start;
    let mut fz = ev.eval(z)?;
    let mut r = start_res.min(fz.norm());
    let budget = ev.count + opts.max_iterations;
    while ev.count < budget {
        let h = 1e-6 * (1.0 + z.norm());
        let dr = (ev.eval(z + h)? - ev.eval(z - h)?) / (2.0 * h);
        if dr.norm() == 0.0 || !dr.is_finite() {
            break;
        }
        let full = -fz / dr;
        let cap = opts.max_step * (1.0 + z.norm());
        let mut step = if full.norm() > cap { full * (cap / full.norm()) } else { full };
        let mut improved = false;
        for _ in 0..30 {
            let trial = z + step;
            if let Ok(ft) = ev.eval(trial) {
                if ft.norm() < fz.norm() || ft.norm() == 0.0 {
                    z = trial;
                    fz = ft;
                    r = ft.norm();
                    improved = true;
                    break;
                }
            }
            step *= 0.5;
        }
        if converged(&opts, z, step.norm(), r) || (improved && r <= opts.ftol && step.norm() < 1e-10 * (1.0 + z.norm())) {
            return Ok(ComplexRoot { z, residual: r, iterations: ev.count, used_newton: true });
        }
        if !improved {
            break;
        }
    }
    if r <= opts.ftol {
        return Ok(ComplexRoot { z, residual: r, iterations: ev.count, used_newton: true });
    }
    Err(RootError::NoConvergence { iterations: ev.count, residual: r })
}
