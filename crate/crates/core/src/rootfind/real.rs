use serde::{Deserialize, Serialize};

use super::RootError;

/// Iteration cap for [`refine_root`].
pub const MAX_BRENT_ITERATIONS: usize = 200;

/// Interval with a sign change of `f`. One endpoint may be an exact zero.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct Bracket {
    pub lo: f64,
    pub hi: f64,
    pub f_lo: f64,
    pub f_hi: f64,
}

impl Bracket {
    pub fn new(lo: f64, hi: f64, f_lo: f64, f_hi: f64) -> Result<Self, RootError> {
        if !(lo < hi) {
            return Err(RootError::InvalidInput(format!("bracket needs lo < hi, got [{lo}, {hi}]")));
        }
        if !(f_lo * f_hi <= 0.0) || (f_lo == 0.0 && f_hi == 0.0) {
            return Err(RootError::InvalidInput(format!("no sign change on [{lo}, {hi}]: f = {f_lo}, {f_hi}")));
        }
        Ok(Bracket { lo, hi, f_lo, f_hi })
    }

    pub fn width(&self) -> f64 {
        self.hi - self.lo
    }
}

/// Brackets for every sign change of `f` on a uniform grid of `subdivisions` cells.
///
/// A grid value that is exactly zero opens a bracket with the previous point; it is
/// not repeated in the following cell.
pub fn bracket_roots<F, E>(mut f: F, lo: f64, hi: f64, subdivisions: usize) -> Result<Vec<Bracket>, RootError>
where
    F: FnMut(f64) -> Result<f64, E>,
    E: std::fmt::Display,
{
    if !(lo < hi) || !lo.is_finite() || !hi.is_finite() {
        return Err(RootError::InvalidInput(format!("need finite lo < hi, got [{lo}, {hi}]")));
    }
    if subdivisions < 2 {
        return Err(RootError::InvalidInput(format!("need >= 2 subdivisions, got {subdivisions}")));
    }
    let h = (hi - lo) / subdivisions as f64;
    let mut eval = |x: f64| -> Result<f64, RootError> {
        let y = f(x).map_err(|e| RootError::evaluation(x, e))?;
        if y.is_finite() {
            Ok(y)
        } else {
            Err(RootError::Evaluation(format!("f({x}) = {y}")))
        }
    };
    let mut out = Vec::new();
    let mut x0 = lo;
    let mut f0 = eval(x0)?;
    for k in 1..=subdivisions {
        let x1 = if k == subdivisions { hi } else { lo + h * k as f64 };
        let f1 = eval(x1)?;
        if (f0 < 0.0 && f1 >= 0.0) || (f0 > 0.0 && f1 <= 0.0) || (k == 1 && f0 == 0.0 && f1 != 0.0) {
            out.push(Bracket { lo: x0, hi: x1, f_lo: f0, f_hi: f1 });
        }
        x0 = x1;
        f0 = f1;
    }
    Ok(out)
}

/// Brent refinement of a bracketed root. Stops when the bracket is below `tol`
/// (plus a few ulps of the root) or `f` vanishes.
pub fn refine_root<F, E>(mut f: F, bracket: Bracket, tol: f64) -> Result<f64, RootError>
where
    F: FnMut(f64) -> Result<f64, E>,
    E: std::fmt::Display,
{
    if !(tol > 0.0) {
        return Err(RootError::InvalidInput(format!("tol must be > 0, got {tol}")));
    }
    let Bracket { lo, hi, f_lo, f_hi } = Bracket::new(bracket.lo, bracket.hi, bracket.f_lo, bracket.f_hi)?;
    if f_lo == 0.0 {
        return Ok(lo);
    }
    if f_hi == 0.0 {
        return Ok(hi);
    }
    let mut eval = |x: f64| f(x).map_err(|e| RootError::evaluation(x, e));

    let (mut a, mut b, mut c) = (lo, hi, hi);
    let (mut fa, mut fb, mut fc) = (f_lo, f_hi, f_hi);
    let (mut d, mut e) = (b - a, b - a);
    for _ in 0..MAX_BRENT_ITERATIONS {
        if (fb > 0.0) == (fc > 0.0) {
            c = a;
            fc = fa;
            d = b - a;
            e = d;
        }
        if fc.abs() < fb.abs() {
            a = b;
            b = c;
            c = a;
            fa = fb;
            fb = fc;
            fc = fa;
        }
        let tol1 = 2.0 * f64::EPSILON * b.abs() + 0.5 * tol;
        let xm = 0.5 * (c - b);
        if fb == 0.0 || xm.abs() <= tol1 {
            return Ok(b);
        }
        if e.abs() >= tol1 && fa.abs() > fb.abs() {
            let s = fb / fa;
            let (mut p, mut q);
            if a == c {
                p = 2.0 * xm * s;
                q = 1.0 - s;
            } else {
                let qq = fa / fc;
                let r = fb / fc;
                p = s * (2.0 * xm * qq * (qq - r) - (b - a) * (r - 1.0));
                q = (qq - 1.0) * (r - 1.0) * (s - 1.0);
            }
            if p > 0.0 {
                q = -q;
            }
            p = p.abs();
            let min1 = 3.0 * xm * q - (tol1 * q).abs();
            let min2 = (e * q).abs();
            if 2.0 * p < min1.min(min2) {
                e = d;
                d = p / q;
            } else {
                d = xm;
                e = d;
            }
        } else {
            d = xm;
            e = d;
        }
        a = b;
        fa = fb;
        b += if d.abs() > tol1 { d } else { tol1.copysign(xm) };
        fb = eval(b)?;
        if !fb.is_finite() {
            return Err(RootError::Evaluation(format!("f({b}) = {fb}")));
        }
    }
    Err(RootError::NoConvergence { iterations: MAX_BRENT_ITERATIONS, residual: fb.abs() })
}
