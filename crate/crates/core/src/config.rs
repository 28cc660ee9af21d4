//! JSON run configuration.
//!
//! Every block is optional and unknown keys are rejected. Defaults: γ's = 1,
//! Γ's = 10, Δ = 0, Ω = 0, v_g = 1, ω₂ = ω₃ = 100 with the probe at δ = 0.
//!
//! ```json
//! {
//!   "model":  { "rabi": 50, "gamma2": 0 },
//!   "probe":  { "delta": 0 },
//!   "sweep":  { "axes": [{ "parameter": "delta", "start": -50, "stop": 50, "count": 1001 }],
//!               "quantity": "full", "alpha": 0 },
//!   "malus":  { "alpha": 1.0471975511965976, "n": 1000000, "seed": 1, "z": 4 },
//!   "verify": { "draws": 10000, "seed": 7 },
//!   "output": { "path": "out.csv", "format": "csv" }
//! }
//! ```

use std::fmt;
use std::str::FromStr;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::malus::PolarizationState;
use crate::params::{ModelParams, ProbeEnergy};
use crate::sweep::{Quantity, SweepAxis};

#[derive(Debug, Clone, PartialEq, Default, Serialize, Deserialize)]
#[serde(default, deny_unknown_fields)]
pub struct RunConfig {
    pub model: ModelParams,
    pub probe: ProbeConfig,
    pub sweep: SweepConfig,
    pub malus: MalusConfig,
    pub verify: VerifyConfig,
    pub output: OutputConfig,
}

/// Probe energy, given either absolutely or as detuning δ = ω₂ − ω.
#[derive(Debug, Clone, Copy, PartialEq, Default, Serialize, Deserialize)]
#[serde(default, deny_unknown_fields)]
pub struct ProbeConfig {
    #[serde(skip_serializing_if = "Option::is_none")]
    pub omega: Option<f64>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub delta: Option<f64>,
}

impl ProbeConfig {
    pub fn resolve(&self, model: &ModelParams) -> ProbeEnergy {
        match (self.omega, self.delta) {
            (Some(omega), _) => ProbeEnergy::new(omega),
            (None, delta) => ProbeEnergy::from_detuning(model, delta.unwrap_or(0.0)),
        }
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(default, deny_unknown_fields)]
pub struct SweepConfig {
    pub axes: Vec<SweepAxis>,
    pub quantity: String,
    /// Polarization angle for the `polarized` quantity.
    pub alpha: f64,
}

impl Default for SweepConfig {
    fn default() -> Self {
        Self {
            axes: Vec::new(),
            quantity: "full".into(),
            alpha: 0.0,
        }
    }
}

impl SweepConfig {
    pub fn quantity(&self) -> Result<Quantity> {
        Quantity::parse(&self.quantity, self.alpha)
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
#[serde(default, deny_unknown_fields)]
pub struct MalusConfig {
    pub alpha: f64,
    pub n: u64,
    pub seed: u64,
    pub z: f64,
}

impl Default for MalusConfig {
    fn default() -> Self {
        Self {
            alpha: std::f64::consts::FRAC_PI_4,
            n: 1_000_000,
            seed: 1,
            z: 4.0,
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
#[serde(default, deny_unknown_fields)]
pub struct VerifyConfig {
    pub draws: usize,
    pub seed: u64,
}

impl Default for VerifyConfig {
    fn default() -> Self {
        Self {
            draws: 10_000,
            seed: 7,
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Default, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum OutputFormat {
    #[default]
    Csv,
    Jsonl,
}

impl FromStr for OutputFormat {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s {
            "csv" => Ok(OutputFormat::Csv),
            "jsonl" => Ok(OutputFormat::Jsonl),
            other => Err(Error::Validation {
                key: "output.format".into(),
                message: format!("unknown format `{other}` (csv, jsonl)"),
            }),
        }
    }
}

impl fmt::Display for OutputFormat {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            OutputFormat::Csv => "csv",
            OutputFormat::Jsonl => "jsonl",
        })
    }
}

#[derive(Debug, Clone, PartialEq, Default, Serialize, Deserialize)]
#[serde(default, deny_unknown_fields)]
pub struct OutputConfig {
    #[serde(skip_serializing_if = "Option::is_none")]
    pub path: Option<String>,
    pub format: OutputFormat,
}

/// Parses and validates a JSON configuration document.
pub fn parse_config(document: &str) -> Result<RunConfig> {
    let config: RunConfig = serde_json::from_str(document).map_err(|e| Error::Parse {
        line: e.line(),
        column: e.column(),
        message: e.to_string(),
    })?;
    config.validate()?;
    Ok(config)
}

fn validation(key: impl Into<String>, message: impl Into<String>) -> Error {
    Error::Validation {
        key: key.into(),
        message: message.into(),
    }
}

impl RunConfig {
    pub fn validate(&self) -> Result<()> {
        self.model.validate().map_err(|e| match e {
            Error::InvalidParams { field, reason } => validation(format!("model.{field}"), reason),
            other => other,
        })?;

        match (self.probe.omega, self.probe.delta) {
            (Some(_), Some(_)) => {
                return Err(validation("probe", "give either omega or delta, not both"))
            }
            (Some(v), None) if !v.is_finite() => {
                return Err(validation("probe.omega", "must be finite"))
            }
            (None, Some(v)) if !v.is_finite() => {
                return Err(validation("probe.delta", "must be finite"))
            }
            _ => {}
        }

        if self.sweep.axes.len() > 2 {
            return Err(validation("sweep.axes", "at most two axes are supported"));
        }
        for (i, axis) in self.sweep.axes.iter().enumerate() {
            axis.validate()
                .map_err(|e| validation(format!("sweep.axes[{i}]"), e.to_string()))?;
        }
        self.sweep.quantity()?;
        if !self.sweep.alpha.is_finite() {
            return Err(validation("sweep.alpha", "must be finite"));
        }

        PolarizationState::new(self.malus.alpha)
            .map_err(|_| validation("malus.alpha", "must lie in [0, π/2]"))?;
        if self.malus.n == 0 {
            return Err(validation("malus.n", "must be at least 1"));
        }
        if !(self.malus.z.is_finite() && self.malus.z > 0.0) {
            return Err(validation("malus.z", "must be positive"));
        }
        if self.verify.draws == 0 {
            return Err(validation("verify.draws", "must be at least 1"));
        }
        Ok(())
    }

    /// Configuration with every default filled in, as echoed into output headers.
    pub fn resolved(&self) -> RunConfig {
        let mut config = self.clone();
        if config.probe.omega.is_none() && config.probe.delta.is_none() {
            config.probe.delta = Some(0.0);
        }
        config
    }

    pub fn probe_energy(&self) -> ProbeEnergy {
        self.probe.resolve(&self.model)
    }
}
