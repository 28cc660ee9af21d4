//! Subcommand execution behind the `polarizer` binary.

use std::io::Write;

use serde_json::{json, Value};

use crate::config::RunConfig;
use crate::error::{Error, Result};
use crate::malus::{ci_check, malus_analytic, simulate_photons, PolarizationState, CHUNK_SIZE};
use crate::output::{write_records, write_row, Metadata, RECORD_SCHEMA};
use crate::sweep::{preset, sweep, Figure, Quantity, SweepAxis, SweepParameter, PRESET_COUNT};
use crate::verify::{run_verification, FLUX_TOL, ORACLE_TOL, REDUCTION_TOL};

#[derive(Debug, Clone, PartialEq)]
pub enum Command {
    /// 1D sweep of the configured axis.
    Spectrum,
    /// 2D sweep of the two configured axes.
    Sweep2d,
    /// Figure preset, optionally with a different number of points per axis.
    Figure {
        figure: Figure,
        count: Option<usize>,
    },
    /// Fidelity over a δ × Ω grid.
    Fidelity,
    /// Monte Carlo photon counting against the analytic Malus probability.
    Malus,
    /// Randomized closed-form versus oracle checks.
    Verify,
}

impl Command {
    pub fn name(&self) -> &'static str {
        match self {
            Command::Spectrum => "spectrum",
            Command::Sweep2d => "sweep2d",
            Command::Figure { .. } => "figure",
            Command::Fidelity => "fidelity",
            Command::Malus => "malus",
            Command::Verify => "verify",
        }
    }
}

/// Completed run. `passed` is false when a statistical or numerical check failed.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct Outcome {
    pub passed: bool,
}

impl Outcome {
    pub fn exit_code(&self) -> i32 {
        if self.passed {
            0
        } else {
            2
        }
    }
}

/// Exit code for a run that returned an error.
pub fn error_exit_code(err: &Error) -> i32 {
    if err.is_usage() {
        1
    } else {
        2
    }
}

fn default_axis(parameter: SweepParameter) -> SweepAxis {
    let (start, stop) = match parameter {
        SweepParameter::Delta => (-50.0, 50.0),
        SweepParameter::Rabi => (0.0, 50.0),
        SweepParameter::DeltaDrive => (-20.0, 20.0),
        SweepParameter::BigGamma1 | SweepParameter::BigGamma2 => (0.0, 50.0),
        SweepParameter::Alpha => (0.0, std::f64::consts::FRAC_PI_2),
    };
    SweepAxis {
        parameter,
        start,
        stop,
        count: PRESET_COUNT,
    }
}

fn axes_or_default(config: &RunConfig, defaults: &[SweepParameter]) -> Result<Vec<SweepAxis>> {
    let axes = if config.sweep.axes.is_empty() {
        defaults.iter().map(|&p| default_axis(p)).collect()
    } else {
        config.sweep.axes.clone()
    };
    if axes.len() != defaults.len() {
        return Err(Error::InvalidAxis(format!(
            "expected {} axis(es), got {}",
            defaults.len(),
            axes.len()
        )));
    }
    Ok(axes)
}

fn emit_sweep(
    out: &mut dyn Write,
    config: &RunConfig,
    meta: Metadata,
    axes: &[SweepAxis],
    quantity: Quantity,
    params: &crate::params::ModelParams,
    probe: &crate::params::ProbeEnergy,
) -> Result<Outcome> {
    let records = sweep(params, probe, axes, quantity)?;
    let failed = records.iter().filter(|r| !r.is_ok()).count();
    let meta = meta
        .with("axes", serde_json::to_value(axes).expect("axes serialize"))
        .with("quantity", quantity.name())
        .with("records", records.len())
        .with("point_errors", failed);
    meta.write(out, config.output.format)?;
    let names: Vec<&str> = axes.iter().map(|a| a.parameter.name()).collect();
    write_records(out, config.output.format, &names, &records)?;
    Ok(Outcome { passed: true })
}

/// Runs `command`, writing its artifact to `out`.
pub fn run(config: &RunConfig, command: &Command, out: &mut dyn Write) -> Result<Outcome> {
    config.validate()?;
    let meta = |schema: &str| Metadata::new(command.name(), schema, config);
    let probe = config.probe_energy();

    match command {
        Command::Spectrum => {
            let axes = axes_or_default(config, &[SweepParameter::Delta])?;
            let quantity = config.sweep.quantity()?;
            emit_sweep(
                out,
                config,
                meta(RECORD_SCHEMA),
                &axes,
                quantity,
                &config.model,
                &probe,
            )
        }
        Command::Sweep2d => {
            let axes = axes_or_default(config, &[SweepParameter::Delta, SweepParameter::Rabi])?;
            let quantity = config.sweep.quantity()?;
            emit_sweep(
                out,
                config,
                meta(RECORD_SCHEMA),
                &axes,
                quantity,
                &config.model,
                &probe,
            )
        }
        Command::Fidelity => {
            let axes = axes_or_default(config, &[SweepParameter::Delta, SweepParameter::Rabi])?;
            emit_sweep(
                out,
                config,
                meta(RECORD_SCHEMA),
                &axes,
                Quantity::Full,
                &config.model,
                &probe,
            )
        }
        Command::Figure { figure, count } => {
            let mut fig_preset = preset(*figure);
            if let Some(count) = count {
                fig_preset = fig_preset.with_count(*count)?;
            }
            let meta = meta(RECORD_SCHEMA)
                .with("figure", figure.name())
                .with("description", fig_preset.description)
                .with(
                    "figure_model",
                    serde_json::to_value(fig_preset.params).expect("params serialize"),
                );
            emit_sweep(
                out,
                config,
                meta,
                &fig_preset.axes,
                fig_preset.quantity,
                &fig_preset.params,
                &fig_preset.probe,
            )
        }
        Command::Malus => run_malus(config, out),
        Command::Verify => run_verify(config, out),
    }
}

fn run_malus(config: &RunConfig, out: &mut dyn Write) -> Result<Outcome> {
    let mc = &config.malus;
    let probe = config.probe_energy();
    let pol = PolarizationState::new(mc.alpha)?;
    let analytic = malus_analytic(&config.model, &probe, &pol)?;
    let counts = simulate_photons(&config.model, &probe, &pol, mc.n, mc.seed)?;
    let report = ci_check(&counts, analytic.transmit, mc.z)?;

    Metadata::new("malus", "malus/1", config)
        .with("seed", mc.seed)
        .with("chunk_size", CHUNK_SIZE)
        .write(out, config.output.format)?;
    let row: Vec<(&str, Value)> = vec![
        ("alpha", json!(mc.alpha)),
        ("n_total", json!(counts.n_total)),
        ("n_transmitted", json!(counts.n_transmitted)),
        ("n_reflected", json!(counts.n_reflected)),
        ("n_lost", json!(counts.n_lost)),
        ("seed", json!(counts.seed)),
        ("analytic_transmit", json!(analytic.transmit)),
        ("analytic_reflect", json!(analytic.reflect)),
        ("analytic_loss", json!(analytic.loss)),
        ("cos2_alpha", json!(pol.left_weight())),
        ("p_hat", json!(report.p_hat)),
        ("halfwidth", json!(report.halfwidth)),
        ("z", json!(mc.z)),
        ("pass", json!(report.pass)),
    ];
    write_row(out, config.output.format, &row)?;
    Ok(Outcome {
        passed: report.pass,
    })
}

fn run_verify(config: &RunConfig, out: &mut dyn Write) -> Result<Outcome> {
    let report = run_verification(config.verify.draws, config.verify.seed);
    Metadata::new("verify", "verify/1", config)
        .with("seed", config.verify.seed)
        .with("draws", config.verify.draws)
        .write(out, config.output.format)?;
    let row: Vec<(&str, Value)> = vec![
        ("draws", json!(report.draws)),
        ("seed", json!(report.seed)),
        ("max_flux_deviation", json!(report.max_flux_deviation)),
        ("max_passivity_excess", json!(report.max_passivity_excess)),
        ("flux_tolerance", json!(FLUX_TOL)),
        (
            "max_oracle_deviation_t",
            json!(report.max_oracle_deviation_t),
        ),
        (
            "max_oracle_deviation_r",
            json!(report.max_oracle_deviation_r),
        ),
        ("max_oracle_jump_gap", json!(report.max_oracle_jump_gap)),
        ("oracle_tolerance", json!(ORACLE_TOL)),
        ("max_reduction_left", json!(report.max_reduction_left)),
        ("max_reduction_right", json!(report.max_reduction_right)),
        ("reduction_tolerance", json!(REDUCTION_TOL)),
        ("failures", json!(report.failures)),
        (
            "first_failure",
            json!(report.first_failure.clone().unwrap_or_default()),
        ),
        ("pass", json!(report.passed())),
    ];
    write_row(out, config.output.format, &row)?;
    Ok(Outcome {
        passed: report.passed(),
    })
}
