//! CSV tables with a fixed header per result type, and their readers.

use num_complex::Complex64;
use serde::Deserialize;

use super::IoError;
use crate::model::{
    Classification, DelayCurve, DepthKind, NaturalValues, PhysicalValues, RadialSpinor, Region, ResonancePoint,
};
use crate::scans::{CaptureDepth, ConsistencyReport, ConsistencyRow, ResonanceTrajectory, SpectrumBranch, SpectrumResult};

pub const DELAY_HEADER: &[&str] = &["eps", "raw_phase", "unwrapped_phase", "delay"];
pub const TRAJECTORY_HEADER: &[&str] = &["v", "eps_R", "eps_I", "residual", "classification", "trajectory"];
pub const SPECTRUM_HEADER: &[&str] = &["kind", "branch", "v", "eps"];
pub const CAPTURE_HEADER: &[&str] = &["v", "kind", "p_inner", "residual"];
pub const CONSISTENCY_HEADER: &[&str] = &["eps_R", "eps_I", "delay_peak_eps", "delay_peak_value", "gap"];
pub const SPINOR_HEADER: &[&str] = &["rho", "region", "phi1_re", "phi1_im", "phi2_re", "phi2_im"];
pub const CONVERT_HEADER: &[&str] = &["eps", "v", "mu", "energy", "well_depth", "mass"];

/// Fifteen significant digits.
pub fn fmt_num(x: f64) -> String {
    if x.is_finite() {
        format!("{x:.14e}")
    } else {
        x.to_string()
    }
}

pub fn round15(x: f64) -> f64 {
    if x.is_finite() {
        fmt_num(x).parse().expect("formatted float parses")
    } else {
        x
    }
}

fn write_table(header: &[&str], rows: impl IntoIterator<Item = Vec<String>>) -> Result<String, IoError> {
    let mut w = csv::Writer::from_writer(Vec::new());
    w.write_record(header)?;
    for r in rows {
        w.write_record(&r)?;
    }
    let bytes = w.into_inner().map_err(|e| IoError::Io(e.into_error()))?;
    Ok(String::from_utf8(bytes).expect("csv output is utf-8"))
}

fn read_table<T: for<'de> Deserialize<'de>>(text: &str, header: &[&str]) -> Result<Vec<T>, IoError> {
    let mut r = csv::Reader::from_reader(text.as_bytes());
    let got: Vec<String> = r.headers()?.iter().map(str::to_string).collect();
    if got != header {
        return Err(IoError::Parse(format!("unexpected header {got:?}, expected {header:?}")));
    }
    r.deserialize().map(|row| row.map_err(IoError::from)).collect()
}

fn depth_kind_name(k: DepthKind) -> &'static str {
    match k {
        DepthKind::Critical => "critical",
        DepthKind::Supercritical => "supercritical",
        DepthKind::MasslessBound => "massless_bound",
    }
}

fn depth_kind(name: &str) -> Result<DepthKind, IoError> {
    match name {
        "critical" => Ok(DepthKind::Critical),
        "supercritical" => Ok(DepthKind::Supercritical),
        "massless_bound" => Ok(DepthKind::MasslessBound),
        other => Err(IoError::Parse(format!("unknown depth kind {other:?}"))),
    }
}

pub fn delay_csv(curve: &DelayCurve) -> Result<String, IoError> {
    let rows = (0..curve.len()).map(|k| {
        vec![
            fmt_num(curve.energies[k]),
            fmt_num(curve.raw_phase[k]),
            fmt_num(curve.unwrapped_phase[k]),
            fmt_num(curve.delay[k]),
        ]
    });
    write_table(DELAY_HEADER, rows)
}

pub fn read_delay_csv(text: &str) -> Result<DelayCurve, IoError> {
    let rows: Vec<(f64, f64, f64, f64)> = read_table(text, DELAY_HEADER)?;
    Ok(DelayCurve {
        energies: rows.iter().map(|r| r.0).collect(),
        raw_phase: rows.iter().map(|r| r.1).collect(),
        unwrapped_phase: rows.iter().map(|r| r.2).collect(),
        delay: rows.iter().map(|r| r.3).collect(),
        interpolated: Vec::new(),
    })
}

pub fn trajectories_csv(trajectories: &[ResonanceTrajectory]) -> Result<String, IoError> {
    let rows = trajectories.iter().enumerate().flat_map(|(k, t)| {
        t.resonance_points().into_iter().map(move |p| {
            vec![
                fmt_num(p.v),
                fmt_num(p.eps.re),
                fmt_num(p.eps.im),
                fmt_num(p.residual),
                p.classification.to_string(),
                k.to_string(),
            ]
        })
    });
    write_table(TRAJECTORY_HEADER, rows)
}

/// Grid points of each trajectory, in file order.
pub fn read_trajectories_csv(text: &str) -> Result<Vec<Vec<ResonancePoint>>, IoError> {
    let rows: Vec<(f64, f64, f64, f64, String, usize)> = read_table(text, TRAJECTORY_HEADER)?;
    let mut out: Vec<Vec<ResonancePoint>> = Vec::new();
    for (v, re, im, residual, class, k) in rows {
        let classification: Classification = class.parse().map_err(|e| IoError::Parse(format!("{e}")))?;
        while out.len() <= k {
            out.push(Vec::new());
        }
        out[k].push(ResonancePoint { v, eps: Complex64::new(re, im), residual, classification });
    }
    Ok(out)
}

pub fn spectrum_csv(s: &SpectrumResult) -> Result<String, IoError> {
    let mut rows = Vec::new();
    for (k, b) in s.branches.iter().enumerate() {
        for (v, e) in b.v_grid.iter().zip(&b.eps) {
            rows.push(vec!["level".into(), k.to_string(), fmt_num(*v), fmt_num(*e)]);
        }
    }
    for &v in &s.critical_depths {
        rows.push(vec!["critical".into(), String::new(), fmt_num(v), fmt_num(s.mu)]);
    }
    for &v in &s.supercritical_depths {
        rows.push(vec!["supercritical".into(), String::new(), fmt_num(v), fmt_num(-s.mu)]);
    }
    write_table(SPECTRUM_HEADER, rows)
}

/// Inverse of [`spectrum_csv`]; `mu` and `ell` are not part of the table.
pub fn read_spectrum_csv(text: &str, mu: f64, ell: i32) -> Result<SpectrumResult, IoError> {
    let rows: Vec<(String, Option<usize>, f64, f64)> = read_table(text, SPECTRUM_HEADER)?;
    let mut s = SpectrumResult {
        mu,
        ell,
        branches: Vec::new(),
        critical_depths: Vec::new(),
        supercritical_depths: Vec::new(),
        gaps: Vec::new(),
    };
    for (kind, branch, v, e) in rows {
        match (kind.as_str(), branch) {
            ("level", Some(k)) => {
                while s.branches.len() <= k {
                    s.branches.push(SpectrumBranch { v_grid: Vec::new(), eps: Vec::new() });
                }
                s.branches[k].v_grid.push(v);
                s.branches[k].eps.push(e);
            }
            ("critical", None) => s.critical_depths.push(v),
            ("supercritical", None) => s.supercritical_depths.push(v),
            other => return Err(IoError::Parse(format!("bad spectrum row {other:?}"))),
        }
    }
    Ok(s)
}

pub fn capture_csv(depths: &[CaptureDepth]) -> Result<String, IoError> {
    let rows = depths.iter().map(|d| {
        vec![fmt_num(d.v), depth_kind_name(d.kind).into(), fmt_num(d.p_inner), fmt_num(d.residual)]
    });
    write_table(CAPTURE_HEADER, rows)
}

pub fn read_capture_csv(text: &str) -> Result<Vec<CaptureDepth>, IoError> {
    let rows: Vec<(f64, String, f64, f64)> = read_table(text, CAPTURE_HEADER)?;
    rows.into_iter()
        .map(|(v, kind, p_inner, residual)| Ok(CaptureDepth { v, kind: depth_kind(&kind)?, p_inner, residual }))
        .collect()
}

pub fn consistency_csv(report: &ConsistencyReport) -> Result<String, IoError> {
    let rows = report.rows.iter().map(|r| {
        vec![fmt_num(r.eps_r), fmt_num(r.eps_i), fmt_num(r.delay_peak_eps), fmt_num(r.delay_peak_value), fmt_num(r.gap)]
    });
    write_table(CONSISTENCY_HEADER, rows)
}

pub fn read_consistency_csv(text: &str, mu: f64, ell: i32, v: f64) -> Result<ConsistencyReport, IoError> {
    let rows: Vec<(f64, f64, f64, f64, f64)> = read_table(text, CONSISTENCY_HEADER)?;
    Ok(ConsistencyReport {
        mu,
        ell,
        v,
        rows: rows
            .into_iter()
            .map(|(eps_r, eps_i, delay_peak_eps, delay_peak_value, gap)| ConsistencyRow {
                eps_r,
                eps_i,
                delay_peak_eps,
                delay_peak_value,
                gap,
            })
            .collect(),
    })
}

pub fn spinor_csv(samples: &[RadialSpinor]) -> Result<String, IoError> {
    let rows = samples.iter().map(|s| {
        vec![
            fmt_num(s.rho),
            match s.region {
                Region::Inner => "inner".into(),
                Region::Outer => "outer".into(),
            },
            fmt_num(s.phi1.re),
            fmt_num(s.phi1.im),
            fmt_num(s.phi2.re),
            fmt_num(s.phi2.im),
        ]
    });
    write_table(SPINOR_HEADER, rows)
}

/// `(rho, region, phi1, phi2)` rows of a spinor table.
pub fn read_spinor_csv(text: &str) -> Result<Vec<(f64, Region, Complex64, Complex64)>, IoError> {
    let rows: Vec<(f64, String, f64, f64, f64, f64)> = read_table(text, SPINOR_HEADER)?;
    rows.into_iter()
        .map(|(rho, region, a, b, c, d)| {
            let region = match region.as_str() {
                "inner" => Region::Inner,
                "outer" => Region::Outer,
                other => return Err(IoError::Parse(format!("unknown region {other:?}"))),
            };
            Ok((rho, region, Complex64::new(a, b), Complex64::new(c, d)))
        })
        .collect()
}

pub fn convert_csv(natural: &NaturalValues, physical: &PhysicalValues) -> Result<String, IoError> {
    let row = vec![
        fmt_num(natural.eps),
        fmt_num(natural.v),
        fmt_num(natural.mu),
        fmt_num(physical.energy),
        fmt_num(physical.well_depth),
        fmt_num(physical.mass),
    ];
    write_table(CONVERT_HEADER, [row])
}

pub fn read_convert_csv(text: &str) -> Result<(NaturalValues, PhysicalValues), IoError> {
    let rows: Vec<(f64, f64, f64, f64, f64, f64)> = read_table(text, CONVERT_HEADER)?;
    let [(eps, v, mu, energy, well_depth, mass)] = rows[..] else {
        return Err(IoError::Parse(format!("expected one conversion row, got {}", rows.len())));
    };
    Ok((NaturalValues { eps, v, mu }, PhysicalValues { energy, well_depth, mass }))
}
