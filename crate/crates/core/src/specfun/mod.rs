//! Integer-order Bessel functions `J_n`, `Y_n` and Hankel functions `H^(1)_n`,
//! `H^(2)_n` of complex argument.
//!
//! Arguments with `Re z < 0` are reflected onto the right half-plane. There the
//! evaluation uses the ascending series for small `|z|`, Miller's backward
//! recurrence (with each `Y_n` from its Neumann expansion) at moderate `|z|`,
//! and the Hankel asymptotic expansion beyond.
//!
//! `Y` and `H` use the principal branch, cut along the negative real axis. A
//! point on the cut is treated as lying on its upper side.

mod asymptotic;
mod miller;
mod series;

use num_complex::Complex64;
use serde::{Deserialize, Serialize};
use thiserror::Error;

pub(crate) const EULER_GAMMA: f64 = 0.577_215_664_901_532_9;

/// Largest supported `|order|`.
pub const MAX_ORDER: u32 = 12;
/// Largest supported `|z|`.
pub const MAX_ARGUMENT: f64 = 1.0e4;
/// Largest supported `|Im z|`; beyond it `e^{|Im z|}` overflows.
pub const MAX_IMAG: f64 = 690.0;

const SERIES_RADIUS: f64 = 4.0;
const ASYMPTOTIC_RADIUS: f64 = 35.0;

#[derive(Debug, Clone, PartialEq, Error)]
pub enum SpecFunError {
    #[error("argument out of supported range: {0}")]
    Domain(String),
    #[error("function is singular at z = 0")]
    SingularArgument,
    #[error("{what} did not converge")]
    Convergence { what: &'static str },
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub enum BesselFamily {
    J,
    Y,
    H1,
    H2,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub enum HankelKind {
    First,
    Second,
}

/// A function family together with its integer order.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct FunctionKind {
    pub family: BesselFamily,
    pub order: i32,
}

/// All four families for orders `0..=nmax` at one argument.
#[derive(Debug, Clone)]
pub struct BesselSet {
    z: Complex64,
    j: Vec<Complex64>,
    second: Option<SecondKind>,
}

#[derive(Debug, Clone)]
struct SecondKind {
    y: Vec<Complex64>,
    h1: Vec<Complex64>,
    h2: Vec<Complex64>,
}

fn reflection_sign(order: i32) -> f64 {
    if order < 0 && order % 2 != 0 {
        -1.0
    } else {
        1.0
    }
}

fn check_argument(z: Complex64) -> Result<(), SpecFunError> {
    if !z.is_finite() {
        return Err(SpecFunError::Domain(format!("non-finite argument {z}")));
    }
    if z.norm() > MAX_ARGUMENT {
        return Err(SpecFunError::Domain(format!("|z| = {} exceeds {MAX_ARGUMENT}", z.norm())));
    }
    if z.im.abs() > MAX_IMAG {
        return Err(SpecFunError::Domain(format!("|Im z| = {} exceeds {MAX_IMAG}", z.im.abs())));
    }
    Ok(())
}

fn check_order(order: i32) -> Result<(), SpecFunError> {
    if order.unsigned_abs() > MAX_ORDER {
        return Err(SpecFunError::Domain(format!("|order| = {} exceeds {MAX_ORDER}", order.unsigned_abs())));
    }
    Ok(())
}

fn finite_or_overflow(v: &[Complex64]) -> Result<(), SpecFunError> {
    if v.iter().all(|c| c.is_finite()) {
        Ok(())
    } else {
        Err(SpecFunError::Domain("result overflows".into()))
    }
}

impl BesselSet {
    /// Evaluate orders `0..=nmax` at `z`. Second-kind values are skipped when
    /// `with_second` is false (and always at `z = 0`).
    pub fn new(nmax: u32, z: Complex64, with_second: bool) -> Result<Self, SpecFunError> {
        if nmax > MAX_ORDER + 1 {
            return Err(SpecFunError::Domain(format!("order {nmax} exceeds {}", MAX_ORDER + 1)));
        }
        check_argument(z)?;
        let n = nmax as usize + 1;
        if z == Complex64::new(0.0, 0.0) {
            let mut j = vec![Complex64::new(0.0, 0.0); n];
            j[0] = Complex64::new(1.0, 0.0);
            return Ok(BesselSet { z, j, second: None });
        }

        let reflect = z.re < 0.0;
        let w = if reflect { -z } else { z };
        let (mut j, mut second) = right_half_plane(nmax, w, with_second)?;

        if reflect {
            let upper = z.im >= 0.0;
            for k in 0..n {
                let s = if k % 2 == 0 { 1.0 } else { -1.0 };
                let jw = j[k];
                j[k] = s * jw;
                if let Some(sec) = second.as_mut() {
                    let (yw, h1w, h2w) = (sec.y[k], sec.h1[k], sec.h2[k]);
                    if upper {
                        sec.y[k] = s * (yw + 2.0 * Complex64::i() * jw);
                        sec.h1[k] = -s * h2w;
                        sec.h2[k] = s * (h1w + 2.0 * h2w);
                    } else {
                        sec.y[k] = s * (yw - 2.0 * Complex64::i() * jw);
                        sec.h1[k] = s * (2.0 * h1w + h2w);
                        sec.h2[k] = -s * h1w;
                    }
                }
            }
        }

        if z.im == 0.0 {
            for v in j.iter_mut() {
                v.im = 0.0;
            }
            if !reflect {
                if let Some(sec) = second.as_mut() {
                    for k in 0..n {
                        sec.y[k].im = 0.0;
                        sec.h1[k] = Complex64::new(j[k].re, sec.y[k].re);
                        sec.h2[k] = sec.h1[k].conj();
                    }
                }
            }
        }

        finite_or_overflow(&j)?;
        if let Some(sec) = &second {
            finite_or_overflow(&sec.y)?;
            finite_or_overflow(&sec.h1)?;
            finite_or_overflow(&sec.h2)?;
        }
        Ok(BesselSet { z, j, second })
    }

    pub fn argument(&self) -> Complex64 {
        self.z
    }

    pub fn nmax(&self) -> u32 {
        (self.j.len() - 1) as u32
    }

    fn index(&self, order: i32) -> Result<(usize, f64), SpecFunError> {
        let k = order.unsigned_abs() as usize;
        if k >= self.j.len() {
            return Err(SpecFunError::Domain(format!("order {order} not in this set")));
        }
        Ok((k, reflection_sign(order)))
    }

    fn second(&self) -> Result<&SecondKind, SpecFunError> {
        if self.z == Complex64::new(0.0, 0.0) {
            return Err(SpecFunError::SingularArgument);
        }
        self.second
            .as_ref()
            .ok_or_else(|| SpecFunError::Domain("second-kind values were not requested".into()))
    }

    pub fn j(&self, order: i32) -> Result<Complex64, SpecFunError> {
        let (k, s) = self.index(order)?;
        Ok(s * self.j[k])
    }

    pub fn y(&self, order: i32) -> Result<Complex64, SpecFunError> {
        let (k, s) = self.index(order)?;
        Ok(s * self.second()?.y[k])
    }

    pub fn hankel(&self, kind: HankelKind, order: i32) -> Result<Complex64, SpecFunError> {
        let (k, s) = self.index(order)?;
        let sec = self.second()?;
        Ok(s * match kind {
            HankelKind::First => sec.h1[k],
            HankelKind::Second => sec.h2[k],
        })
    }

    pub fn get(&self, family: BesselFamily, order: i32) -> Result<Complex64, SpecFunError> {
        match family {
            BesselFamily::J => self.j(order),
            BesselFamily::Y => self.y(order),
            BesselFamily::H1 => self.hankel(HankelKind::First, order),
            BesselFamily::H2 => self.hankel(HankelKind::Second, order),
        }
    }
}

fn right_half_plane(
    nmax: u32,
    w: Complex64,
    with_second: bool,
) -> Result<(Vec<Complex64>, Option<SecondKind>), SpecFunError> {
    let n = nmax as usize + 1;
    let r = w.norm();
    if r > ASYMPTOTIC_RADIUS {
        let mut j = Vec::with_capacity(n);
        let mut y = Vec::with_capacity(n);
        let mut h1 = Vec::with_capacity(n);
        let mut h2 = Vec::with_capacity(n);
        for k in 0..=nmax {
            let (a, b) = asymptotic::hankel_pair(k, w)?;
            j.push((a + b) * 0.5);
            y.push((a - b) / (2.0 * Complex64::i()));
            h1.push(a);
            h2.push(b);
        }
        let second = with_second.then_some(SecondKind { y, h1, h2 });
        return Ok((j, second));
    }

    let (j, y) = if r <= SERIES_RADIUS {
        let mut j = Vec::with_capacity(n.max(2));
        for k in 0..=nmax.max(1) {
            j.push(series::bessel_j(k, w)?);
        }
        let y = if with_second {
            let (y0, y1) = series::bessel_y01(w, j[0], j[1])?;
            // Y grows with order for |w| this small, so forward recurrence is stable.
            let mut y = vec![y0, y1];
            for k in 1..nmax as usize {
                let next = 2.0 * k as f64 / w * y[k] - y[k - 1];
                y.push(next);
            }
            y.truncate(n);
            Some(y)
        } else {
            None
        };
        j.truncate(n);
        (j, y)
    } else {
        let all = miller::bessel_j_all(nmax, w)?;
        let y = with_second.then(|| miller::bessel_y_all(nmax, w, &all));
        (all[..n].to_vec(), y)
    };

    let second = y.map(|y| {
        let h1 = j.iter().zip(&y).map(|(a, b)| a + Complex64::i() * b).collect();
        let h2 = j.iter().zip(&y).map(|(a, b)| a - Complex64::i() * b).collect();
        SecondKind { y, h1, h2 }
    });
    Ok((j, second))
}

/// `J_order(z)`.
pub fn bessel_j(order: i32, z: Complex64) -> Result<Complex64, SpecFunError> {
    check_order(order)?;
    BesselSet::new(order.unsigned_abs(), z, false)?.j(order)
}

/// `Y_order(z)`, principal branch.
pub fn bessel_y(order: i32, z: Complex64) -> Result<Complex64, SpecFunError> {
    check_order(order)?;
    if z == Complex64::new(0.0, 0.0) {
        return Err(SpecFunError::SingularArgument);
    }
    BesselSet::new(order.unsigned_abs(), z, true)?.y(order)
}

/// `H^(1)_order(z)` or `H^(2)_order(z)`, principal branch.
pub fn hankel(kind: HankelKind, order: i32, z: Complex64) -> Result<Complex64, SpecFunError> {
    check_order(order)?;
    if z == Complex64::new(0.0, 0.0) {
        return Err(SpecFunError::SingularArgument);
    }
    BesselSet::new(order.unsigned_abs(), z, true)?.hankel(kind, order)
}

/// Dispatch on a [`FunctionKind`].
pub fn evaluate(f: FunctionKind, z: Complex64) -> Result<Complex64, SpecFunError> {
    match f.family {
        BesselFamily::J => bessel_j(f.order, z),
        BesselFamily::Y => bessel_y(f.order, z),
        BesselFamily::H1 => hankel(HankelKind::First, f.order, z),
        BesselFamily::H2 => hankel(HankelKind::Second, f.order, z),
    }
}

/// `J_n(z) / z^n` for `n >= 0`: an even entire function, finite at `z = 0`.
pub fn bessel_j_over_power(n: u32, z: Complex64) -> Result<Complex64, SpecFunError> {
    if n > MAX_ORDER + 1 {
        return Err(SpecFunError::Domain(format!("order {n} exceeds {}", MAX_ORDER + 1)));
    }
    check_argument(z)?;
    if z.norm() < 1.0 {
        let mut lead = 1.0;
        for k in 1..=n {
            lead /= 2.0 * k as f64;
        }
        return Ok(lead * series::scaled_sum(n, z)?);
    }
    let j = BesselSet::new(n, z, false)?.j(n as i32)?;
    Ok(j / z.powi(n as i32))
}
