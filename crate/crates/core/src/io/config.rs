//! Command-line flags, `key = value` config files and the resolved run configuration.

use clap::{Args, Parser, Subcommand, ValueEnum};
use num_complex::Complex64;
use serde::{Deserialize, Serialize};
use std::collections::BTreeMap;
use std::path::PathBuf;

use super::IoError;
use crate::model::{DotParams, StateKind};
use crate::scans::{DELAY_GRID, TRAJECTORY_STEP};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize, ValueEnum)]
pub enum Format {
    Csv,
    Json,
    Svg,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize, ValueEnum)]
pub enum Direction {
    ToNatural,
    FromNatural,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize, ValueEnum)]
pub enum SpinorKind {
    Bound,
    Resonance,
    Critical,
    Supercritical,
    Scattering,
    MasslessBound,
}

impl From<SpinorKind> for StateKind {
    fn from(k: SpinorKind) -> Self {
        match k {
            SpinorKind::Bound => StateKind::Bound,
            SpinorKind::Resonance => StateKind::Resonance,
            SpinorKind::Critical => StateKind::Critical,
            SpinorKind::Supercritical => StateKind::Supercritical,
            SpinorKind::Scattering => StateKind::Scattering,
            SpinorKind::MasslessBound => StateKind::MasslessBound,
        }
    }
}

#[derive(Debug, Parser)]
#[command(name = "diracdot", version, about = "Bound states, capture depths, phase shifts, delays and resonances of a circular Dirac quantum dot")]
pub struct Cli {
    #[command(subcommand)]
    pub command: Commands,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub enum CommandName {
    Spectrum,
    Capture,
    Resonances,
    Delay,
    Consistency,
    Spinor,
    Convert,
}

#[derive(Debug, Subcommand)]
pub enum Commands {
    /// Bound levels over a depth range, with critical and supercritical depths
    Spectrum(Flags),
    /// Critical/supercritical (or massless zero-energy) capture depths
    Capture(Flags),
    /// Resonance trajectories over a depth range
    Resonances(Flags),
    /// Phase shift and Wigner delay over an energy range
    Delay(Flags),
    /// Resonances paired with delay maxima
    Consistency(Flags),
    /// Radial spinor over a radius grid
    Spinor(Flags),
    /// Physical <-> natural unit conversion
    Convert(Flags),
}

impl Commands {
    fn split(self) -> (CommandName, Flags) {
        match self {
            Commands::Spectrum(f) => (CommandName::Spectrum, f),
            Commands::Capture(f) => (CommandName::Capture, f),
            Commands::Resonances(f) => (CommandName::Resonances, f),
            Commands::Delay(f) => (CommandName::Delay, f),
            Commands::Consistency(f) => (CommandName::Consistency, f),
            Commands::Spinor(f) => (CommandName::Spinor, f),
            Commands::Convert(f) => (CommandName::Convert, f),
        }
    }
}

#[derive(Debug, Clone, Default, Args)]
pub struct Flags {
    #[arg(long, allow_hyphen_values = true)]
    pub mu: Option<f64>,
    #[arg(long, allow_hyphen_values = true)]
    pub ell: Option<i32>,
    #[arg(long, allow_hyphen_values = true)]
    pub v: Option<f64>,
    #[arg(long = "v-min", allow_hyphen_values = true)]
    pub v_min: Option<f64>,
    #[arg(long = "v-max", allow_hyphen_values = true)]
    pub v_max: Option<f64>,
    #[arg(long = "v-steps")]
    pub v_steps: Option<usize>,
    #[arg(long = "eps-min", allow_hyphen_values = true)]
    pub eps_min: Option<f64>,
    #[arg(long = "eps-max", allow_hyphen_values = true)]
    pub eps_max: Option<f64>,
    #[arg(long = "eps-steps")]
    pub eps_steps: Option<usize>,
    /// Grid size used when the command-specific step count is not given
    #[arg(long)]
    pub steps: Option<usize>,
    /// Comma-separated complex energies, e.g. `2.9-0.6i,0.87-0.01i`
    #[arg(long, allow_hyphen_values = true)]
    pub seeds: Option<String>,
    /// Number of depths per kind for `capture`
    #[arg(long)]
    pub count: Option<usize>,
    /// Complex energy for `spinor`, real energy for `convert --direction from-natural`
    #[arg(long, allow_hyphen_values = true)]
    pub eps: Option<String>,
    #[arg(long, value_enum)]
    pub kind: Option<SpinorKind>,
    #[arg(long = "rho-max")]
    pub rho_max: Option<f64>,
    #[arg(long, value_enum)]
    pub direction: Option<Direction>,
    #[arg(long, allow_hyphen_values = true)]
    pub energy: Option<f64>,
    #[arg(long = "well-depth", allow_hyphen_values = true)]
    pub well_depth: Option<f64>,
    #[arg(long, allow_hyphen_values = true)]
    pub mass: Option<f64>,
    #[arg(long, allow_hyphen_values = true)]
    pub radius: Option<f64>,
    #[arg(long = "fermi-velocity", allow_hyphen_values = true)]
    pub fermi_velocity: Option<f64>,
    #[arg(long, allow_hyphen_values = true)]
    pub hbar: Option<f64>,
    #[arg(long)]
    pub output: Option<PathBuf>,
    #[arg(long, value_enum)]
    pub format: Option<Format>,
    #[arg(long)]
    pub config: Option<PathBuf>,
}

/// Keys accepted in a config file; each maps onto the flag with `_` in place of `-`.
pub const CONFIG_KEYS: &[&str] = &[
    "mu", "v", "ell", "v_min", "v_max", "v_steps", "steps", "eps_min", "eps_max", "eps_steps", "seeds", "count", "eps",
    "kind", "rho_max", "direction", "energy", "well_depth", "mass", "radius", "fermi_velocity", "hbar", "output",
    "format",
];

/// Parse a flat `key = value` document. `#` starts a comment.
pub fn parse_config_text(text: &str) -> Result<BTreeMap<String, String>, IoError> {
    let mut out = BTreeMap::new();
    for (n, line) in text.lines().enumerate() {
        let line = line.split('#').next().unwrap_or("").trim();
        if line.is_empty() {
            continue;
        }
        let Some((key, value)) = line.split_once('=') else {
            return Err(IoError::Usage(format!("config line {}: expected `key = value`, got {line:?}", n + 1)));
        };
        let key = key.trim().replace('-', "_");
        if !CONFIG_KEYS.contains(&key.as_str()) {
            return Err(IoError::Usage(format!("config line {}: unknown key `{key}`", n + 1)));
        }
        out.insert(key, value.trim().to_string());
    }
    Ok(out)
}

fn parse_value<T: std::str::FromStr>(key: &str, value: &str) -> Result<T, IoError> {
    value.parse().map_err(|_| IoError::Usage(format!("config key `{key}`: cannot parse {value:?}")))
}

fn parse_enum<T: ValueEnum>(key: &str, value: &str) -> Result<T, IoError> {
    T::from_str(value, true).map_err(|_| IoError::Usage(format!("config key `{key}`: unknown value {value:?}")))
}

fn fill<T>(slot: &mut Option<T>, from_file: Option<T>) {
    if slot.is_none() {
        *slot = from_file;
    }
}

impl Flags {
    /// Fill unset flags from config-file keys.
    fn merge(&mut self, file: &BTreeMap<String, String>) -> Result<(), IoError> {
        for (key, value) in file {
            let k = key.as_str();
            match k {
                "mu" => fill(&mut self.mu, Some(parse_value(k, value)?)),
                "v" => fill(&mut self.v, Some(parse_value(k, value)?)),
                "ell" => fill(&mut self.ell, Some(parse_value(k, value)?)),
                "v_min" => fill(&mut self.v_min, Some(parse_value(k, value)?)),
                "v_max" => fill(&mut self.v_max, Some(parse_value(k, value)?)),
                "v_steps" => fill(&mut self.v_steps, Some(parse_value(k, value)?)),
                "steps" => fill(&mut self.steps, Some(parse_value(k, value)?)),
                "eps_min" => fill(&mut self.eps_min, Some(parse_value(k, value)?)),
                "eps_max" => fill(&mut self.eps_max, Some(parse_value(k, value)?)),
                "eps_steps" => fill(&mut self.eps_steps, Some(parse_value(k, value)?)),
                "seeds" => fill(&mut self.seeds, Some(value.clone())),
                "count" => fill(&mut self.count, Some(parse_value(k, value)?)),
                "eps" => fill(&mut self.eps, Some(value.clone())),
                "kind" => fill(&mut self.kind, Some(parse_enum(k, value)?)),
                "rho_max" => fill(&mut self.rho_max, Some(parse_value(k, value)?)),
                "direction" => fill(&mut self.direction, Some(parse_enum(k, value)?)),
                "energy" => fill(&mut self.energy, Some(parse_value(k, value)?)),
                "well_depth" => fill(&mut self.well_depth, Some(parse_value(k, value)?)),
                "mass" => fill(&mut self.mass, Some(parse_value(k, value)?)),
                "radius" => fill(&mut self.radius, Some(parse_value(k, value)?)),
                "fermi_velocity" => fill(&mut self.fermi_velocity, Some(parse_value(k, value)?)),
                "hbar" => fill(&mut self.hbar, Some(parse_value(k, value)?)),
                "output" => fill(&mut self.output, Some(PathBuf::from(value))),
                "format" => fill(&mut self.format, Some(parse_enum(k, value)?)),
                other => return Err(IoError::Usage(format!("unknown config key `{other}`"))),
            }
        }
        Ok(())
    }
}

/// Parse `a`, `bi` or `a+bi` (also `a-bi`, exponents allowed).
pub fn parse_complex(text: &str) -> Result<Complex64, IoError> {
    let s: String = text.chars().filter(|c| !c.is_whitespace()).collect();
    let bad = || IoError::Usage(format!("cannot parse complex number {text:?}"));
    if s.is_empty() {
        return Err(bad());
    }
    let Some(body) = s.strip_suffix('i').or_else(|| s.strip_suffix('j')) else {
        return s.parse::<f64>().map(|re| Complex64::new(re, 0.0)).map_err(|_| bad());
    };
    let bytes = body.as_bytes();
    let split = (1..bytes.len())
        .rev()
        .find(|&k| (bytes[k] == b'+' || bytes[k] == b'-') && !matches!(bytes[k - 1], b'e' | b'E'));
    let (re, im) = match split {
        Some(k) => (&body[..k], &body[k..]),
        None => ("0", body),
    };
    let im = match im {
        "" | "+" => "1",
        "-" => "-1",
        other => other,
    };
    let re: f64 = re.parse().map_err(|_| bad())?;
    let im: f64 = im.parse().map_err(|_| bad())?;
    Ok(Complex64::new(re, im))
}

pub fn parse_seeds(text: &str) -> Result<Vec<Complex64>, IoError> {
    text.split(',').filter(|s| !s.trim().is_empty()).map(parse_complex).collect()
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct Grids {
    pub v_min: f64,
    pub v_max: f64,
    pub v_steps: usize,
    pub eps_min: f64,
    pub eps_max: f64,
    pub eps_steps: usize,
    pub count: usize,
    pub seeds: Vec<Complex64>,
    pub eps: Option<Complex64>,
    pub kind: Option<SpinorKind>,
    pub rho_max: f64,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct ConvertRequest {
    pub direction: Direction,
    pub energy: f64,
    pub well_depth: f64,
    pub mass: f64,
    pub eps: f64,
    pub v: f64,
    pub mu: f64,
    pub radius: f64,
    pub fermi_velocity: f64,
    pub hbar: f64,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct OutputSpec {
    /// `None` writes to standard output.
    pub path: Option<PathBuf>,
    pub format: Format,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct RunConfig {
    pub command: CommandName,
    pub params: DotParams,
    pub grids: Grids,
    pub convert: Option<ConvertRequest>,
    pub output: OutputSpec,
}

fn need<T>(value: Option<T>, name: &str, command: CommandName) -> Result<T, IoError> {
    value.ok_or_else(|| IoError::Usage(format!("{command:?} needs --{name}")))
}

/// Parse arguments (without the program name), merging keys from `config_text`
/// or from the file named by `--config`. Flags win over file keys.
pub fn parse_config(args: &[String], config_text: Option<&str>) -> Result<RunConfig, IoError> {
    let argv = std::iter::once("diracdot".to_string()).chain(args.iter().cloned());
    let cli = Cli::try_parse_from(argv).map_err(|e| IoError::Usage(e.to_string()))?;
    let (command, mut flags) = cli.command.split();
    let file_text = match (config_text, &flags.config) {
        (Some(t), _) => Some(t.to_string()),
        (None, Some(path)) => Some(
            std::fs::read_to_string(path)
                .map_err(|e| IoError::Usage(format!("cannot read config {}: {e}", path.display())))?,
        ),
        (None, None) => None,
    };
    if let Some(text) = file_text {
        flags.merge(&parse_config_text(&text)?)?;
    }
    resolve(command, flags)
}

fn resolve(command: CommandName, f: Flags) -> Result<RunConfig, IoError> {
    use CommandName::*;
    let usage = |m: String| Err(IoError::Usage(m));
    let format = f.format.unwrap_or(Format::Csv);
    let output = OutputSpec { path: f.output.clone(), format };

    if command == Convert {
        let direction = need(f.direction, "direction", command)?;
        let real = |s: &Option<String>| -> Result<f64, IoError> {
            match s {
                Some(t) => {
                    let z = parse_complex(t)?;
                    if z.im != 0.0 {
                        return Err(IoError::Usage(format!("convert needs a real --eps, got {t}")));
                    }
                    Ok(z.re)
                }
                None => Err(IoError::Usage("Convert needs --eps".into())),
            }
        };
        let req = match direction {
            Direction::ToNatural => ConvertRequest {
                direction,
                energy: need(f.energy, "energy", command)?,
                well_depth: need(f.well_depth, "well-depth", command)?,
                mass: need(f.mass, "mass", command)?,
                eps: f64::NAN,
                v: f64::NAN,
                mu: f64::NAN,
                radius: need(f.radius, "radius", command)?,
                fermi_velocity: need(f.fermi_velocity, "fermi-velocity", command)?,
                hbar: need(f.hbar, "hbar", command)?,
            },
            Direction::FromNatural => ConvertRequest {
                direction,
                energy: f64::NAN,
                well_depth: f64::NAN,
                mass: f64::NAN,
                eps: real(&f.eps)?,
                v: need(f.v, "v", command)?,
                mu: need(f.mu, "mu", command)?,
                radius: need(f.radius, "radius", command)?,
                fermi_velocity: need(f.fermi_velocity, "fermi-velocity", command)?,
                hbar: need(f.hbar, "hbar", command)?,
            },
        };
        for (name, x) in [("radius", req.radius), ("fermi-velocity", req.fermi_velocity), ("hbar", req.hbar)] {
            if !(x > 0.0) {
                return usage(format!("--{name} must be > 0, got {x}"));
            }
        }
        if format == Format::Svg {
            return usage("convert has no SVG form".into());
        }
        let grids = Grids {
            v_min: 0.0,
            v_max: 0.0,
            v_steps: 0,
            eps_min: 0.0,
            eps_max: 0.0,
            eps_steps: 0,
            count: 0,
            seeds: Vec::new(),
            eps: None,
            kind: None,
            rho_max: 0.0,
        };
        return Ok(RunConfig { command, params: DotParams::new(0.0, 0.0, 0).expect("valid"), grids, convert: Some(req), output });
    }

    let mu = need(f.mu, "mu", command)?;
    let ell = f.ell.unwrap_or(0);
    let v = f.v.unwrap_or(0.0);
    let params = DotParams::new(mu, v, ell).map_err(|e| IoError::Usage(e.to_string()))?;
    let edge = if params.is_massless() { 0.0 } else { mu };

    let (default_v_min, default_v_max) = match command {
        Resonances => (-14.0, -1.0),
        _ => (-14.0, -0.1),
    };
    let v_min = f.v_min.unwrap_or(default_v_min);
    let v_max = f.v_max.unwrap_or(default_v_max);
    let default_v_steps = match command {
        Resonances => ((v_max - v_min) / TRAJECTORY_STEP).round() as usize + 1,
        _ => 280,
    };
    let v_steps = f.v_steps.or(f.steps).unwrap_or(default_v_steps);
    let eps_min = f.eps_min.unwrap_or(if params.is_massless() { 0.01 } else { mu + 0.01 });
    let eps_max = f.eps_max.unwrap_or(eps_min + 10.0);
    let eps_steps = f.eps_steps.or(f.steps).unwrap_or(DELAY_GRID);
    let seeds = match &f.seeds {
        Some(s) => parse_seeds(s)?,
        None => Vec::new(),
    };
    let eps = f.eps.as_deref().map(parse_complex).transpose()?;
    let grids = Grids {
        v_min,
        v_max,
        v_steps,
        eps_min,
        eps_max,
        eps_steps,
        count: f.count.unwrap_or(3),
        seeds,
        eps,
        kind: f.kind,
        rho_max: f.rho_max.unwrap_or(3.0),
    };

    match command {
        Spectrum => {
            if !(mu > 0.0) {
                return usage(format!("spectrum needs --mu > 0, got {mu}"));
            }
            if !(v_min < v_max && v_max < 0.0) {
                return usage(format!("spectrum needs v_min < v_max < 0, got {v_min}, {v_max}"));
            }
            if v_steps < 10 {
                return usage(format!("spectrum needs at least 10 depth steps, got {v_steps}"));
            }
        }
        Capture => {
            if grids.count == 0 {
                return usage("--count must be >= 1".into());
            }
        }
        Resonances => {
            if !(v_min < v_max) || v_steps < 2 {
                return usage(format!("resonances needs v_min < v_max and >= 2 steps, got {v_min}, {v_max}, {v_steps}"));
            }
        }
        Delay | Consistency => {
            if !(eps_min > edge) {
                return usage(format!("eps_min must exceed {edge}, got {eps_min}"));
            }
            if f.v.is_none() {
                return usage(format!("{command:?} needs --v"));
            }
            if !(eps_max > eps_min) {
                return usage(format!("need eps_max > eps_min, got {eps_min}, {eps_max}"));
            }
            if eps_steps < 100 {
                return usage(format!("need at least 100 energy steps, got {eps_steps}"));
            }
        }
        Spinor => {
            if f.v.is_none() {
                return usage("spinor needs --v".into());
            }
            let kind = need(f.kind, "kind", command)?;
            let implied = matches!(kind, SpinorKind::Critical | SpinorKind::Supercritical | SpinorKind::MasslessBound);
            if !implied && eps.is_none() {
                return usage(format!("spinor --kind {kind:?} needs --eps"));
            }
            if !(grids.rho_max > 0.0) {
                return usage(format!("--rho-max must be > 0, got {}", grids.rho_max));
            }
        }
        Convert => unreachable!("handled above"),
    }
    Ok(RunConfig { command, params, grids, convert: None, output })
}
