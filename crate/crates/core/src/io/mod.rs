//! Command-line configuration, dispatch and serialization (CSV, JSON, SVG).

mod config;
mod run;
pub mod svg;
pub mod tables;

use std::path::Path;

use serde::Serialize;
use serde_json::Value;
use thiserror::Error;

use crate::model::{DelayCurve, DepthKind, NaturalValues, PhysicalValues, RadialSpinor};
use crate::scans::{CaptureDepth, ConsistencyReport, ResonanceTrajectory, SpectrumResult};
use svg::{Chart, Series};
use tables::round15;

pub use config::{
    parse_complex, parse_config, parse_config_text, parse_seeds, Cli, CommandName, Commands, ConvertRequest, Direction,
    Flags, Format, Grids, OutputSpec, RunConfig, SpinorKind, CONFIG_KEYS,
};
pub use run::{exit_code, run, RunError, SPINOR_POINTS};

#[derive(Debug, Error)]
pub enum IoError {
    #[error("usage: {0}")]
    Usage(String),
    #[error("i/o: {0}")]
    Io(#[from] std::io::Error),
    #[error("csv: {0}")]
    Csv(#[from] csv::Error),
    #[error("json: {0}")]
    Json(#[from] serde_json::Error),
    #[error("parse: {0}")]
    Parse(String),
}

/// Result of one pipeline, ready for [`emit`].
#[derive(Debug, Clone, PartialEq)]
pub enum PipelineResult {
    Spectrum(SpectrumResult),
    Capture(Vec<CaptureDepth>),
    Resonances(Vec<ResonanceTrajectory>),
    Delay(DelayCurve),
    Consistency { report: ConsistencyReport, curve: DelayCurve },
    Spinor(Vec<RadialSpinor>),
    Convert { natural: NaturalValues, physical: PhysicalValues },
}

impl PipelineResult {
    pub fn to_csv(&self) -> Result<String, IoError> {
        match self {
            PipelineResult::Spectrum(s) => tables::spectrum_csv(s),
            PipelineResult::Capture(d) => tables::capture_csv(d),
            PipelineResult::Resonances(t) => tables::trajectories_csv(t),
            PipelineResult::Delay(c) => tables::delay_csv(c),
            PipelineResult::Consistency { report, .. } => tables::consistency_csv(report),
            PipelineResult::Spinor(s) => tables::spinor_csv(s),
            PipelineResult::Convert { natural, physical } => tables::convert_csv(natural, physical),
        }
    }

    /// Field names follow the domain types; numbers carry 15 significant digits.
    pub fn to_json(&self) -> Result<String, IoError> {
        fn value<T: Serialize>(x: &T) -> Result<Value, IoError> {
            Ok(serde_json::to_value(x)?)
        }
        let mut v = match self {
            PipelineResult::Spectrum(s) => value(s)?,
            PipelineResult::Capture(d) => value(d)?,
            PipelineResult::Resonances(t) => value(t)?,
            PipelineResult::Delay(c) => value(c)?,
            PipelineResult::Consistency { report, .. } => value(report)?,
            PipelineResult::Spinor(s) => value(s)?,
            PipelineResult::Convert { natural, physical } => {
                serde_json::json!({ "natural": value(natural)?, "physical": value(physical)? })
            }
        };
        round_numbers(&mut v);
        let mut text = serde_json::to_string_pretty(&v)?;
        text.push('\n');
        Ok(text)
    }

    pub fn to_chart(&self) -> Result<Chart, IoError> {
        let chart = |title: String, x: &str, y: &str, series: Vec<Series>| Chart {
            title,
            x_label: x.into(),
            y_label: y.into(),
            series,
        };
        Ok(match self {
            PipelineResult::Spectrum(s) => {
                let mut series: Vec<Series> = s
                    .branches
                    .iter()
                    .enumerate()
                    .map(|(k, b)| Series::line(format!("level {k}"), b.v_grid.iter().copied().zip(b.eps.iter().copied()).collect()))
                    .collect();
                series.push(Series::dots("critical", s.critical_depths.iter().map(|&v| (v, s.mu)).collect()));
                series.push(Series::dots("supercritical", s.supercritical_depths.iter().map(|&v| (v, -s.mu)).collect()));
                chart(format!("Bound levels, mu = {}, l = {}", s.mu, s.ell), "v", "ε", series)
            }
            PipelineResult::Capture(d) => {
                let kinds = [DepthKind::Critical, DepthKind::Supercritical, DepthKind::MasslessBound];
                let series = kinds
                    .iter()
                    .filter(|k| d.iter().any(|c| c.kind == **k))
                    .map(|k| Series::dots(format!("{k:?}"), d.iter().filter(|c| c.kind == *k).map(|c| (c.v, c.p_inner)).collect()))
                    .collect();
                chart("Capture depths".into(), "v", "inner momentum", series)
            }
            PipelineResult::Resonances(t) => {
                let series = t
                    .iter()
                    .enumerate()
                    .map(|(k, tr)| {
                        Series::line(format!("trajectory {k}"), tr.resonance_points().iter().map(|p| (p.eps.re, p.eps.im)).collect())
                    })
                    .collect();
                chart("Resonance trajectories".into(), "Re ε", "Im ε", series)
            }
            PipelineResult::Delay(c) => chart(
                "Wigner delay".into(),
                "ε",
                "τ",
                vec![Series::line("delay", c.energies.iter().copied().zip(c.delay.iter().copied()).collect())],
            ),
            PipelineResult::Consistency { report, curve } => {
                let peak = |eps: f64| {
                    report.rows.iter().find(|r| r.eps_r == eps).map(|r| r.delay_peak_value).unwrap_or(f64::NAN)
                };
                chart(
                    format!("Delay and resonances, mu = {}, l = {}, v = {}", report.mu, report.ell, report.v),
                    "ε",
                    "τ",
                    vec![
                        Series::line("delay", curve.energies.iter().copied().zip(curve.delay.iter().copied()).collect()),
                        Series::dots("resonance", report.rows.iter().map(|r| (r.eps_r, peak(r.eps_r))).collect()),
                    ],
                )
            }
            PipelineResult::Spinor(s) => {
                let rho: Vec<f64> = s.iter().map(|x| x.rho).collect();
                chart(
                    "Radial spinor".into(),
                    "ρ",
                    "|φ|",
                    vec![
                        Series::line("phi1", rho.iter().copied().zip(s.iter().map(|x| x.phi1.norm())).collect()),
                        Series::line("phi2", rho.iter().copied().zip(s.iter().map(|x| x.phi2.norm())).collect()),
                    ],
                )
            }
            PipelineResult::Convert { .. } => return Err(IoError::Usage("convert has no SVG form".into())),
        })
    }

    pub fn render(&self, format: Format) -> Result<String, IoError> {
        match format {
            Format::Csv => self.to_csv(),
            Format::Json => self.to_json(),
            Format::Svg => Ok(self.to_chart()?.render()),
        }
    }
}

fn round_numbers(v: &mut Value) {
    match v {
        Value::Number(n) => {
            if let Some(x) = n.as_f64().filter(|_| n.is_f64()) {
                if let Some(r) = serde_json::Number::from_f64(round15(x)) {
                    *n = r;
                }
            }
        }
        Value::Array(a) => a.iter_mut().for_each(round_numbers),
        Value::Object(o) => o.values_mut().for_each(round_numbers),
        _ => {}
    }
}

/// Write `result` as `format` to `path`, or to standard output when `path` is `None`.
pub fn emit(result: &PipelineResult, format: Format, path: Option<&Path>) -> Result<(), IoError> {
    let text = result.render(format)?;
    match path {
        Some(p) => std::fs::write(p, text)?,
        None => {
            use std::io::Write;
            let mut out = std::io::stdout().lock();
            out.write_all(text.as_bytes())?;
            out.flush()?;
        }
    }
    Ok(())
}
