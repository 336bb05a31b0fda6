use rayon::prelude::*;
use serde::{Deserialize, Serialize};
use std::f64::consts::PI;

use super::{linspace, ScanError};
use crate::model::{
    phase_shift_raw, principal_phase, unwrap_phase, wigner_delay, DelayCurve, DotParams, ModelError,
    ResonancePoint, UnwrapConvention,
};

/// Default number of energies in a delay curve.
pub const DELAY_GRID: usize = 800;

/// Raw, unwrapped phase and Wigner delay on `steps` equally spaced energies.
///
/// Indeterminate phases are filled by interpolating their neighbours and listed
/// in `interpolated`.
pub fn delay_scan(mu: f64, ell: i32, v: f64, eps_lo: f64, eps_hi: f64, steps: usize) -> Result<DelayCurve, ScanError> {
    let params = DotParams::new(mu, v, ell)?;
    let edge = if params.is_massless() { 0.0 } else { mu };
    if !(eps_lo > edge) || !(eps_hi > eps_lo) || !eps_hi.is_finite() {
        return Err(ScanError::InvalidInput(format!(
            "need {edge} < eps_lo < eps_hi, got [{eps_lo}, {eps_hi}]"
        )));
    }
    if steps < 100 {
        return Err(ScanError::InvalidInput(format!("need steps >= 100, got {steps}")));
    }
    let energies = linspace(eps_lo, eps_hi, steps);
    let raw: Vec<Option<f64>> = energies
        .par_iter()
        .map(|&e| match phase_shift_raw(&params, e) {
            Ok(d) => Ok(Some(d)),
            Err(ModelError::IndeterminatePhase { .. }) => Ok(None),
            Err(err) => Err(err),
        })
        .collect::<Result<_, _>>()?;
    let (raw_phase, interpolated) = fill_indeterminate(&energies, &raw)?;
    let unwrapped_phase = unwrap_phase(&raw_phase, UnwrapConvention::AnchorHighEnergy { v })?;
    let curve = DelayCurve { energies, raw_phase, unwrapped_phase, delay: Vec::new(), interpolated };
    Ok(wigner_delay(curve)?)
}

fn fill_indeterminate(energies: &[f64], raw: &[Option<f64>]) -> Result<(Vec<f64>, Vec<usize>), ScanError> {
    let known: Vec<usize> = (0..raw.len()).filter(|&k| raw[k].is_some()).collect();
    if known.is_empty() {
        return Err(ScanError::InvalidInput("phase is indeterminate on the whole grid".into()));
    }
    let mut out = Vec::with_capacity(raw.len());
    let mut missing = Vec::new();
    for (k, r) in raw.iter().enumerate() {
        if let Some(d) = r {
            out.push(*d);
            continue;
        }
        missing.push(k);
        let left = known.iter().rev().find(|&&j| j < k).copied();
        let right = known.iter().find(|&&j| j > k).copied();
        let value = match (left, right) {
            (Some(a), Some(b)) => {
                let da = raw[a].expect("known");
                let mut db = raw[b].expect("known");
                db -= PI * ((db - da) / PI).round();
                let w = (energies[k] - energies[a]) / (energies[b] - energies[a]);
                principal_phase(da + w * (db - da))
            }
            (Some(a), None) => raw[a].expect("known"),
            (None, Some(b)) => raw[b].expect("known"),
            (None, None) => unreachable!("known is non-empty"),
        };
        out.push(value);
    }
    Ok((out, missing))
}

/// Interior local maximum of the delay, refined by a parabola through the three
/// neighbouring samples.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct DelayPeak {
    pub eps: f64,
    pub value: f64,
    pub index: usize,
}

pub fn delay_peaks(curve: &DelayCurve) -> Vec<DelayPeak> {
    let (e, t) = (&curve.energies, &curve.delay);
    let mut out = Vec::new();
    for k in 1..t.len().saturating_sub(1) {
        if t[k] > t[k - 1] && t[k] >= t[k + 1] {
            let (a, b, c) = (t[k - 1], t[k], t[k + 1]);
            let h = 0.5 * (e[k + 1] - e[k - 1]);
            let den = a - 2.0 * b + c;
            let (x, y) = if den < 0.0 {
                let s = 0.5 * (a - c) / den;
                (e[k] + s * h, b - 0.25 * (a - c) * s)
            } else {
                (e[k], b)
            };
            out.push(DelayPeak { eps: x, value: y, index: k });
        }
    }
    out
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct ConsistencyRow {
    pub eps_r: f64,
    pub eps_i: f64,
    pub delay_peak_eps: f64,
    pub delay_peak_value: f64,
    pub gap: f64,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct ConsistencyReport {
    pub mu: f64,
    pub ell: i32,
    pub v: f64,
    pub rows: Vec<ConsistencyRow>,
}

/// Pair each resonance with the nearest local maximum of the delay curve.
pub fn consistency_report(
    mu: f64,
    ell: i32,
    v: f64,
    resonances: &[ResonancePoint],
    curve: &DelayCurve,
) -> Result<ConsistencyReport, ScanError> {
    let peaks = delay_peaks(curve);
    let (lo, hi) = match (curve.energies.first(), curve.energies.last()) {
        (Some(&a), Some(&b)) => (a, b),
        _ if resonances.is_empty() => (f64::NAN, f64::NAN),
        _ => return Err(ScanError::InvalidInput("empty delay curve".into())),
    };
    let mut rows = Vec::with_capacity(resonances.len());
    for r in resonances {
        let eps_r = r.eps.re;
        let nearest = peaks.iter().min_by(|a, b| (a.eps - eps_r).abs().total_cmp(&(b.eps - eps_r).abs()));
        match nearest {
            Some(p) if eps_r >= lo && eps_r <= hi => rows.push(ConsistencyRow {
                eps_r,
                eps_i: r.eps.im,
                delay_peak_eps: p.eps,
                delay_peak_value: p.value,
                gap: (eps_r - p.eps).abs(),
            }),
            _ => return Err(ScanError::UnmatchedResonance { eps_r, eps_i: r.eps.im }),
        }
    }
    rows.sort_by(|a, b| a.eps_r.total_cmp(&b.eps_r));
    Ok(ConsistencyReport { mu, ell, v, rows })
}
