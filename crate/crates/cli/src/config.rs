//! Run configuration: JSON file, command-line flags, validation.

use std::f64::consts::FRAC_PI_2;
use std::path::{Path, PathBuf};

use clap::{Parser, ValueEnum};
use serde::{Deserialize, Serialize};
use usc_core::displaced_basis::{sweep_point, ZeroPoint};
use usc_core::exact_diag::TruncationConfig;
use usc_core::{make_params, ModelParams, WellLabel};

use crate::error::{CliError, Result};

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Mode {
    /// Displaced-basis spectrum over the coupling grid
    Spectrum,
    /// Displaced-basis vs exact diagonalisation over the coupling grid
    Compare,
    /// Fast-qubit oscillator potentials at one coupling
    Potentials,
    /// Stability and double-well geometry at one coupling
    Stability,
    /// Overlap matrix between two displaced wells at one coupling
    Overlaps,
    /// Exact low-lying spectrum at one coupling
    Exact,
}

impl Mode {
    pub fn name(self) -> &'static str {
        match self {
            Self::Spectrum => "spectrum",
            Self::Compare => "compare",
            Self::Potentials => "potentials",
            Self::Stability => "stability",
            Self::Overlaps => "overlaps",
            Self::Exact => "exact",
        }
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Format {
    Csv,
    Json,
    Svg,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Well {
    Minus,
    Zero,
    Plus,
}

impl From<Well> for WellLabel {
    fn from(w: Well) -> Self {
        match w {
            Well::Minus => WellLabel::Minus,
            Well::Zero => WellLabel::Zero,
            Well::Plus => WellLabel::Plus,
        }
    }
}

/// Everything a run depends on. Energies in units of `hbar omega0`.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(default, deny_unknown_fields)]
pub struct RunConfig {
    pub mode: Option<Mode>,
    /// Qubit angle `atan2(eps, delta)`.
    pub theta: f64,
    /// `hbar omega0 / Eq`.
    pub omega_over_eq: f64,
    pub lambda_min: f64,
    pub lambda_max: f64,
    pub steps: usize,
    pub n_max: usize,
    pub n_trunc: usize,
    pub n_cap: usize,
    pub n_levels: usize,
    pub tol: f64,
    pub paper_constants: bool,
    pub formats: Vec<Format>,
    /// Half-width of the `x' = x sqrt(2 m omega0 / hbar)` window for potentials.
    pub x_max: f64,
    pub x_steps: usize,
    /// Bra and ket wells for the overlaps mode.
    pub wells: [Well; 2],
    pub seed: u64,
    #[serde(skip_serializing)]
    pub out: PathBuf,
    #[serde(skip_serializing)]
    pub threads: Option<usize>,
    #[serde(skip_serializing)]
    pub record_timing: bool,
}

impl Default for RunConfig {
    fn default() -> Self {
        let t = TruncationConfig::default();
        Self {
            mode: None,
            theta: 0.0,
            omega_over_eq: 4.0,
            lambda_min: 0.0,
            lambda_max: 1.0,
            steps: 101,
            n_max: 3,
            n_trunc: t.n_trunc,
            n_cap: t.n_max_cap,
            n_levels: t.n_levels,
            tol: t.tol,
            paper_constants: false,
            formats: vec![Format::Csv, Format::Json],
            x_max: 8.0,
            x_steps: 401,
            wells: [Well::Minus, Well::Zero],
            seed: 0,
            out: PathBuf::from("."),
            threads: None,
            record_timing: false,
        }
    }
}

#[derive(Debug, Parser)]
#[command(
    name = "usc-spectra",
    version,
    about = "Spectra of two flux qubits coupled to an oscillator",
    allow_negative_numbers = true
)]
pub struct Cli {
    #[arg(value_enum)]
    pub mode: Option<Mode>,
    #[arg(long)]
    pub theta: Option<f64>,
    #[arg(long)]
    pub omega_over_eq: Option<f64>,
    #[arg(long)]
    pub lambda_min: Option<f64>,
    #[arg(long)]
    pub lambda_max: Option<f64>,
    /// Shorthand for a one-point grid
    #[arg(long, conflicts_with_all = ["lambda_min", "lambda_max", "steps"])]
    pub lambda: Option<f64>,
    #[arg(long)]
    pub steps: Option<usize>,
    #[arg(long)]
    pub n_max: Option<usize>,
    #[arg(long)]
    pub n_trunc: Option<usize>,
    #[arg(long)]
    pub n_cap: Option<usize>,
    #[arg(long)]
    pub n_levels: Option<usize>,
    #[arg(long)]
    pub tol: Option<f64>,
    #[arg(long)]
    pub paper_constants: bool,
    #[arg(long, value_enum, value_delimiter = ',')]
    pub formats: Option<Vec<Format>>,
    #[arg(long)]
    pub x_max: Option<f64>,
    #[arg(long)]
    pub x_steps: Option<usize>,
    /// Two wells, e.g. `minus,zero`
    #[arg(long, value_enum, value_delimiter = ',', num_args = 1)]
    pub wells: Option<Vec<Well>>,
    #[arg(long)]
    pub seed: Option<u64>,
    #[arg(long)]
    pub out: Option<PathBuf>,
    /// Worker threads; defaults to the available parallelism
    #[arg(long)]
    pub threads: Option<usize>,
    #[arg(long)]
    pub config: Option<PathBuf>,
    /// Also write wall time to `timing.json`
    #[arg(long)]
    pub record_timing: bool,
}

fn read_config_file(path: &Path) -> Result<RunConfig> {
    let text = std::fs::read_to_string(path).map_err(|e| CliError::io(path, e))?;
    serde_json::from_str(&text).map_err(|e| CliError::Config(format!("{}: {e}", path.display())))
}

impl Cli {
    /// File values first, flags on top, then validation.
    pub fn resolve(self) -> Result<RunConfig> {
        let mut c = match &self.config {
            Some(path) => read_config_file(path)?,
            None => RunConfig::default(),
        };
        macro_rules! set {
            ($($field:ident),*) => { $( if let Some(v) = self.$field { c.$field = v; } )* };
        }
        set!(
            theta,
            omega_over_eq,
            lambda_min,
            lambda_max,
            steps,
            n_max,
            n_trunc,
            n_cap,
            n_levels,
            tol,
            formats,
            x_max,
            x_steps,
            seed,
            out
        );
        if self.mode.is_some() {
            c.mode = self.mode;
        }
        if let Some(x) = self.lambda {
            c.lambda_min = x;
            c.lambda_max = x;
            c.steps = 1;
        }
        if let Some(w) = self.wells {
            c.wells = <[Well; 2]>::try_from(w)
                .map_err(|_| CliError::Config("--wells takes exactly two wells".into()))?;
        }
        if self.threads.is_some() {
            c.threads = self.threads;
        }
        c.paper_constants |= self.paper_constants;
        c.record_timing |= self.record_timing;
        c.validate()?;
        Ok(c)
    }
}

impl RunConfig {
    pub fn validate(&self) -> Result<()> {
        let bad = |msg: String| Err(CliError::Config(msg));
        if self.mode.is_none() {
            return bad("no mode given".into());
        }
        if !(0.0..FRAC_PI_2).contains(&self.theta) {
            return bad(format!("theta must lie in [0, pi/2), got {}", self.theta));
        }
        if !(self.omega_over_eq > 0.0 && self.omega_over_eq.is_finite()) {
            return bad(format!(
                "omega_over_eq must be finite and > 0, got {}",
                self.omega_over_eq
            ));
        }
        if !(self.lambda_min >= 0.0 && self.lambda_max.is_finite()) {
            return bad(format!(
                "need 0 <= lambda_min and finite lambda_max, got {} and {}",
                self.lambda_min, self.lambda_max
            ));
        }
        if self.lambda_min > self.lambda_max {
            return bad(format!(
                "lambda_min {} exceeds lambda_max {}",
                self.lambda_min, self.lambda_max
            ));
        }
        if self.steps == 0 {
            return bad("steps must be >= 1".into());
        }
        if self.formats.is_empty() {
            return bad("formats must not be empty".into());
        }
        if !(self.x_max > 0.0 && self.x_max.is_finite()) || self.x_steps < 2 {
            return bad("need x_max > 0 and x_steps >= 2".into());
        }
        if self.threads == Some(0) {
            return bad("threads must be >= 1".into());
        }
        self.truncation().validate()?;
        Ok(())
    }

    pub fn mode(&self) -> Mode {
        self.mode.expect("validated config has a mode")
    }

    pub fn wants(&self, f: Format) -> bool {
        self.formats.contains(&f)
    }

    pub fn truncation(&self) -> TruncationConfig {
        TruncationConfig {
            n_trunc: self.n_trunc,
            tol: self.tol,
            n_levels: self.n_levels,
            n_max_cap: self.n_cap,
        }
    }

    pub fn zero_point(&self) -> ZeroPoint {
        if self.paper_constants {
            ZeroPoint::Omitted
        } else {
            ZeroPoint::Uniform
        }
    }

    /// Canonical-unit parameters at zero coupling (`hbar = m = omega0 = 1`).
    pub fn base_params(&self) -> Result<ModelParams> {
        let eq = 1.0 / self.omega_over_eq;
        Ok(make_params(
            eq * self.theta.cos(),
            eq * self.theta.sin(),
            0.0,
        )?)
    }

    /// Parameters at `lambda / hbar omega0 = x`.
    pub fn params_at(&self, x: f64) -> Result<ModelParams> {
        Ok(sweep_point(&self.base_params()?, self.theta, x)?)
    }

    /// `steps` evenly spaced points from `lambda_min` to `lambda_max`.
    pub fn lambda_grid(&self) -> Vec<f64> {
        linspace(self.lambda_min, self.lambda_max, self.steps)
    }
}

pub(crate) fn linspace(a: f64, b: f64, count: usize) -> Vec<f64> {
    if count == 1 {
        return vec![a];
    }
    let last = (count - 1) as f64;
    (0..count)
        .map(|i| {
            if i + 1 == count {
                b
            } else {
                a + (b - a) * i as f64 / last
            }
        })
        .collect()
}
