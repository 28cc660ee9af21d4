//! Deterministic parameter sweeps and figure presets.
//!
//! Grid points are evaluated in parallel and collected in grid order. Errors
//! at individual points are stored in the record rather than aborting the
//! sweep; failed fields are NaN.

use std::fmt;
use std::str::FromStr;

use num_complex::Complex64;
use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::malus::PolarizationState;
use crate::params::{ModelParams, ProbeEnergy};
use crate::scattering::{
    amplitude_t_left, amplitude_t_right, amplitudes4, channel_amplitudes, fidelity_from,
    probabilities, Channel, ChannelProbs, ScatterAmps,
};

/// Quantity a sweep axis varies.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum SweepParameter {
    /// Probe detuning δ = ω₂ − ω.
    Delta,
    Rabi,
    DeltaDrive,
    BigGamma1,
    BigGamma2,
    /// Polarization angle; only meaningful for [`Quantity::Polarized`].
    Alpha,
}

impl SweepParameter {
    pub const ALL: [SweepParameter; 6] = [
        SweepParameter::Delta,
        SweepParameter::Rabi,
        SweepParameter::DeltaDrive,
        SweepParameter::BigGamma1,
        SweepParameter::BigGamma2,
        SweepParameter::Alpha,
    ];

    pub fn name(&self) -> &'static str {
        match self {
            SweepParameter::Delta => "delta",
            SweepParameter::Rabi => "rabi",
            SweepParameter::DeltaDrive => "delta_drive",
            SweepParameter::BigGamma1 => "big_gamma1",
            SweepParameter::BigGamma2 => "big_gamma2",
            SweepParameter::Alpha => "alpha",
        }
    }
}

impl fmt::Display for SweepParameter {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

impl FromStr for SweepParameter {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        Self::ALL
            .into_iter()
            .find(|p| p.name() == s)
            .ok_or_else(|| Error::InvalidAxis(format!("unknown sweep parameter `{s}`")))
    }
}

/// Linear grid with both endpoints included.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct SweepAxis {
    pub parameter: SweepParameter,
    pub start: f64,
    pub stop: f64,
    pub count: usize,
}

impl SweepAxis {
    pub fn new(parameter: SweepParameter, start: f64, stop: f64, count: usize) -> Result<Self> {
        let axis = Self {
            parameter,
            start,
            stop,
            count,
        };
        axis.validate()?;
        Ok(axis)
    }

    pub fn validate(&self) -> Result<()> {
        if self.count < 2 {
            return Err(Error::InvalidAxis(format!(
                "{}: count must be at least 2, got {}",
                self.parameter, self.count
            )));
        }
        if !(self.start.is_finite() && self.stop.is_finite()) || self.start == self.stop {
            return Err(Error::InvalidAxis(format!(
                "{}: start and stop must be finite and distinct",
                self.parameter
            )));
        }
        Ok(())
    }

    /// Grid value `i`; the last index returns `stop` exactly.
    pub fn value(&self, i: usize) -> f64 {
        let last = self.count - 1;
        if i == last {
            self.stop
        } else {
            self.start + (self.stop - self.start) * i as f64 / last as f64
        }
    }

    pub fn values(&self) -> Vec<f64> {
        (0..self.count).map(|i| self.value(i)).collect()
    }
}

/// Which amplitudes a sweep reports.
#[derive(Debug, Clone, Copy, PartialEq)]
pub enum Quantity {
    /// Four-level amplitudes, both channels coupled.
    Full,
    /// Left-circular channel only (t_L).
    Left,
    /// Right-circular channel only (t_R).
    Right,
    /// Photon with polarization angle `alpha`. The reported t and r are the
    /// overlaps of the outgoing polarization states with the incident one;
    /// the probabilities are channel-weighted as in the Malus engine.
    Polarized { alpha: f64 },
}

impl Quantity {
    pub fn name(&self) -> &'static str {
        match self {
            Quantity::Full => "full",
            Quantity::Left => "left",
            Quantity::Right => "right",
            Quantity::Polarized { .. } => "polarized",
        }
    }

    /// Parses `full | left | right | polarized`; `alpha` is used by the last.
    pub fn parse(name: &str, alpha: f64) -> Result<Self> {
        match name {
            "full" => Ok(Quantity::Full),
            "left" => Ok(Quantity::Left),
            "right" => Ok(Quantity::Right),
            "polarized" => Ok(Quantity::Polarized { alpha }),
            other => Err(Error::Validation {
                key: "quantity".into(),
                message: format!("unknown quantity `{other}` (full, left, right, polarized)"),
            }),
        }
    }
}

/// Result at one grid point.
#[derive(Debug, Clone, PartialEq)]
pub struct SweepRecord {
    /// Axis values, outer axis first.
    pub coords: Vec<f64>,
    pub transmit: f64,
    pub reflect: f64,
    pub loss: f64,
    pub fidelity: f64,
    pub t: Complex64,
    pub r: Complex64,
    pub error: Option<String>,
}

impl SweepRecord {
    pub fn is_ok(&self) -> bool {
        self.error.is_none()
    }

    pub fn probs(&self) -> ChannelProbs {
        ChannelProbs {
            transmit: self.transmit,
            reflect: self.reflect,
            loss: self.loss,
        }
    }
}

fn polarized_amps(
    params: &ModelParams,
    probe: &ProbeEnergy,
    alpha: f64,
) -> Result<(ScatterAmps, ChannelProbs)> {
    let pol = PolarizationState::new(alpha)?;
    let left = channel_amplitudes(params, probe, Channel::Left)?;
    let right = channel_amplitudes(params, probe, Channel::Right)?;
    let probs = crate::malus::malus_analytic(params, probe, &pol)?;
    let (wl, wr) = (pol.left_weight(), pol.right_weight());
    let amps = ScatterAmps {
        t: left.t * wl + right.t * wr,
        r: left.r * wl + right.r * wr,
    };
    Ok((amps, probs))
}

/// Evaluates one point. Never fails; errors land in `SweepRecord::error`.
pub fn evaluate_point(
    params: &ModelParams,
    probe: &ProbeEnergy,
    quantity: Quantity,
    coords: Vec<f64>,
) -> SweepRecord {
    let nan_c = Complex64::new(f64::NAN, f64::NAN);
    let mut record = SweepRecord {
        coords,
        transmit: f64::NAN,
        reflect: f64::NAN,
        loss: f64::NAN,
        fidelity: f64::NAN,
        t: nan_c,
        r: nan_c,
        error: None,
    };
    if let Err(e) = params.validate() {
        record.error = Some(e.to_string());
        return record;
    }

    let amps = match quantity {
        Quantity::Full => amplitudes4(params, probe).and_then(|a| Ok((a, probabilities(&a)?))),
        Quantity::Left | Quantity::Right => {
            let channel = if quantity == Quantity::Left {
                Channel::Left
            } else {
                Channel::Right
            };
            channel_amplitudes(params, probe, channel).and_then(|a| Ok((a, probabilities(&a)?)))
        }
        Quantity::Polarized { alpha } => polarized_amps(params, probe, alpha),
    };
    match amps {
        Ok((amps, probs)) => {
            record.t = amps.t;
            record.r = amps.r;
            record.transmit = probs.transmit;
            record.reflect = probs.reflect;
            record.loss = probs.loss;
        }
        Err(e) => record.error = Some(e.to_string()),
    }

    let fidelity = amplitude_t_left(params, probe).and_then(|tl| {
        let tr = amplitude_t_right(params, probe)?;
        fidelity_from(tl.norm_sqr(), tr.norm_sqr())
    });
    match fidelity {
        Ok(f) => record.fidelity = f,
        Err(e) => {
            if record.error.is_none() {
                record.error = Some(e.to_string());
            }
        }
    }
    record
}

fn apply(
    parameter: SweepParameter,
    value: f64,
    params: &mut ModelParams,
    delta: &mut Option<f64>,
    quantity: &mut Quantity,
) {
    match parameter {
        SweepParameter::Delta => *delta = Some(value),
        SweepParameter::Rabi => params.rabi = value,
        SweepParameter::DeltaDrive => params.delta_drive = value,
        SweepParameter::BigGamma1 => params.big_gamma1 = value,
        SweepParameter::BigGamma2 => params.big_gamma2 = value,
        SweepParameter::Alpha => *quantity = Quantity::Polarized { alpha: value },
    }
}

fn check_axes(axes: &[&SweepAxis], quantity: Quantity) -> Result<()> {
    for axis in axes {
        axis.validate()?;
        if axis.parameter == SweepParameter::Alpha
            && !matches!(quantity, Quantity::Polarized { .. })
        {
            return Err(Error::InvalidAxis(
                "an alpha axis requires the polarized quantity".into(),
            ));
        }
    }
    if axes.len() == 2 && axes[0].parameter == axes[1].parameter {
        return Err(Error::InvalidAxis(format!(
            "both axes sweep `{}`",
            axes[0].parameter
        )));
    }
    Ok(())
}

fn evaluate_at(
    base: &ModelParams,
    probe_base: &ProbeEnergy,
    quantity: Quantity,
    settings: &[(SweepParameter, f64)],
) -> SweepRecord {
    let mut params = *base;
    let mut delta = None;
    let mut quantity = quantity;
    for &(parameter, value) in settings {
        apply(parameter, value, &mut params, &mut delta, &mut quantity);
    }
    let probe = match delta {
        Some(d) => ProbeEnergy::from_detuning(&params, d),
        None => *probe_base,
    };
    evaluate_point(
        &params,
        &probe,
        quantity,
        settings.iter().map(|&(_, v)| v).collect(),
    )
}

/// One record per grid point, in grid order.
pub fn sweep1d(
    base: &ModelParams,
    probe_base: &ProbeEnergy,
    axis: &SweepAxis,
    quantity: Quantity,
) -> Result<Vec<SweepRecord>> {
    check_axes(&[axis], quantity)?;
    Ok((0..axis.count)
        .into_par_iter()
        .map(|i| {
            evaluate_at(
                base,
                probe_base,
                quantity,
                &[(axis.parameter, axis.value(i))],
            )
        })
        .collect())
}

/// Row-major grid: `outer` varies slowest.
pub fn sweep2d(
    base: &ModelParams,
    probe_base: &ProbeEnergy,
    outer: &SweepAxis,
    inner: &SweepAxis,
    quantity: Quantity,
) -> Result<Vec<SweepRecord>> {
    check_axes(&[outer, inner], quantity)?;
    let total = outer.count * inner.count;
    Ok((0..total)
        .into_par_iter()
        .map(|k| {
            let (i, j) = (k / inner.count, k % inner.count);
            evaluate_at(
                base,
                probe_base,
                quantity,
                &[
                    (outer.parameter, outer.value(i)),
                    (inner.parameter, inner.value(j)),
                ],
            )
        })
        .collect())
}

/// Sweeps over one or two axes.
pub fn sweep(
    base: &ModelParams,
    probe_base: &ProbeEnergy,
    axes: &[SweepAxis],
    quantity: Quantity,
) -> Result<Vec<SweepRecord>> {
    match axes {
        [axis] => sweep1d(base, probe_base, axis, quantity),
        [outer, inner] => sweep2d(base, probe_base, outer, inner, quantity),
        _ => Err(Error::InvalidAxis(format!(
            "expected 1 or 2 axes, got {}",
            axes.len()
        ))),
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Figure {
    Fig2a,
    Fig2b,
    Fig3a,
    Fig3b,
    Fig4a,
    Fig4b,
}

impl Figure {
    pub const ALL: [Figure; 6] = [
        Figure::Fig2a,
        Figure::Fig2b,
        Figure::Fig3a,
        Figure::Fig3b,
        Figure::Fig4a,
        Figure::Fig4b,
    ];

    pub fn name(&self) -> &'static str {
        match self {
            Figure::Fig2a => "fig2a",
            Figure::Fig2b => "fig2b",
            Figure::Fig3a => "fig3a",
            Figure::Fig3b => "fig3b",
            Figure::Fig4a => "fig4a",
            Figure::Fig4b => "fig4b",
        }
    }
}

impl FromStr for Figure {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        Self::ALL
            .into_iter()
            .find(|f| f.name() == s)
            .ok_or_else(|| Error::UnknownPreset(s.to_owned()))
    }
}

/// Default points per preset axis.
pub const PRESET_COUNT: usize = 1001;

/// A ready-to-run sweep reproducing one figure.
#[derive(Debug, Clone, PartialEq)]
pub struct FigurePreset {
    pub figure: Figure,
    pub params: ModelParams,
    pub probe: ProbeEnergy,
    pub axes: Vec<SweepAxis>,
    pub quantity: Quantity,
    pub description: &'static str,
}

impl FigurePreset {
    /// Same ranges, `count` points per axis.
    pub fn with_count(mut self, count: usize) -> Result<Self> {
        for axis in &mut self.axes {
            axis.count = count;
            axis.validate()?;
        }
        Ok(self)
    }

    pub fn run(&self) -> Result<Vec<SweepRecord>> {
        sweep(&self.params, &self.probe, &self.axes, self.quantity)
    }
}

pub fn preset_figure(name: &str) -> Result<FigurePreset> {
    Ok(preset(name.parse()?))
}

pub fn preset(figure: Figure) -> FigurePreset {
    use SweepParameter::*;

    let axis = |parameter, start, stop| SweepAxis {
        parameter,
        start,
        stop,
        count: PRESET_COUNT,
    };
    // Γ₁ = Γ₂ = 10, ω₂ = ω₃, γ₂ = γ₃ = γ₄ = 1, Δ = 0.
    let dissipative = ModelParams::default();
    let lossless = ModelParams {
        rabi: 50.0,
        ..dissipative.lossless()
    };

    let (params, axes, quantity, description) = match figure {
        Figure::Fig2a => (
            dissipative,
            vec![axis(Delta, -50.0, 50.0), axis(Rabi, 0.0, 20.0)],
            Quantity::Full,
            "transmission versus probe detuning and drive strength",
        ),
        Figure::Fig2b => (
            ModelParams {
                rabi: 10.0,
                ..dissipative
            },
            vec![axis(Delta, -50.0, 50.0), axis(DeltaDrive, -20.0, 20.0)],
            Quantity::Full,
            "transmission versus probe detuning and drive detuning at rabi = 10",
        ),
        Figure::Fig3a => (
            lossless,
            vec![axis(Delta, -100.0, 100.0)],
            Quantity::Left,
            "lossless left-circular transmission at rabi = 50",
        ),
        Figure::Fig3b => (
            lossless,
            vec![axis(Delta, -100.0, 100.0)],
            Quantity::Right,
            "lossless right-circular transmission",
        ),
        Figure::Fig4a => (
            dissipative,
            vec![axis(Rabi, 0.0, 50.0), axis(Delta, -50.0, 50.0)],
            Quantity::Full,
            "fidelity versus drive strength and probe detuning",
        ),
        Figure::Fig4b => (
            ModelParams {
                rabi: 50.0,
                ..dissipative
            },
            vec![axis(Delta, -50.0, 50.0)],
            Quantity::Full,
            "fidelity versus probe detuning at rabi = 50",
        ),
    };
    FigurePreset {
        figure,
        probe: ProbeEnergy::from_detuning(&params, 0.0),
        params,
        axes,
        quantity,
        description,
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn axis_validation() {
        assert!(SweepAxis::new(SweepParameter::Delta, 0.0, 1.0, 1).is_err());
        assert!(SweepAxis::new(SweepParameter::Delta, 1.0, 1.0, 5).is_err());
        assert!(SweepAxis::new(SweepParameter::Delta, 0.0, f64::INFINITY, 5).is_err());
        assert!(SweepAxis::new(SweepParameter::Delta, 1.0, -1.0, 5).is_ok());
    }

    #[test]
    fn grid_hits_endpoints_and_center() {
        let axis = SweepAxis::new(SweepParameter::Delta, -50.0, 50.0, 1001).unwrap();
        let v = axis.values();
        assert_eq!(v[0], -50.0);
        assert_eq!(v[500], 0.0);
        assert_eq!(v[1000], 50.0);
        assert_eq!(v[600], 10.0);
    }

    #[test]
    fn parameter_names_round_trip() {
        for p in SweepParameter::ALL {
            assert_eq!(p.name().parse::<SweepParameter>().unwrap(), p);
        }
        assert!("omega".parse::<SweepParameter>().is_err());
    }

    #[test]
    fn two_by_two_is_row_major() {
        let p = ModelParams::default();
        let probe = ProbeEnergy::from_detuning(&p, 0.0);
        let a = SweepAxis::new(SweepParameter::Delta, -1.0, 1.0, 2).unwrap();
        let b = SweepAxis::new(SweepParameter::Rabi, 0.0, 5.0, 2).unwrap();
        let records = sweep2d(&p, &probe, &a, &b, Quantity::Full).unwrap();
        let coords: Vec<_> = records.iter().map(|r| r.coords.clone()).collect();
        assert_eq!(
            coords,
            vec![
                vec![-1.0, 0.0],
                vec![-1.0, 5.0],
                vec![1.0, 0.0],
                vec![1.0, 5.0]
            ]
        );
    }

    #[test]
    fn alpha_axis_requires_polarized_quantity() {
        let p = ModelParams::default();
        let probe = ProbeEnergy::from_detuning(&p, 0.0);
        let a = SweepAxis::new(SweepParameter::Alpha, 0.0, 1.0, 3).unwrap();
        assert!(sweep1d(&p, &probe, &a, Quantity::Full).is_err());
        let records = sweep1d(&p, &probe, &a, Quantity::Polarized { alpha: 0.0 }).unwrap();
        assert!(records.iter().all(SweepRecord::is_ok));
    }

    #[test]
    fn duplicate_axes_rejected() {
        let p = ModelParams::default();
        let probe = ProbeEnergy::from_detuning(&p, 0.0);
        let a = SweepAxis::new(SweepParameter::Rabi, 0.0, 1.0, 3).unwrap();
        assert!(sweep2d(&p, &probe, &a, &a, Quantity::Full).is_err());
    }

    #[test]
    fn singular_corner_is_recorded_not_fatal() {
        let p = ModelParams {
            big_gamma2: 0.0,
            ..ModelParams::default().lossless()
        };
        let probe = ProbeEnergy::from_detuning(&p, 0.0);
        let axis = SweepAxis::new(SweepParameter::Delta, -1.0, 1.0, 3).unwrap();
        let records = sweep1d(&p, &probe, &axis, Quantity::Right).unwrap();
        assert_eq!(records.len(), 3);
        assert!(records[0].is_ok() && records[2].is_ok());
        assert!(records[1].error.is_some());
        assert!(records[1].transmit.is_nan());
    }

    #[test]
    fn out_of_range_alpha_is_a_point_error() {
        let p = ModelParams::default();
        let probe = ProbeEnergy::from_detuning(&p, 0.0);
        let a = SweepAxis::new(SweepParameter::Alpha, 0.0, 3.0, 3).unwrap();
        let records = sweep1d(&p, &probe, &a, Quantity::Polarized { alpha: 0.0 }).unwrap();
        assert!(records[0].is_ok());
        assert!(records[2].error.is_some());
    }

    #[test]
    fn presets_follow_captions() {
        let p = preset_figure("fig2a").unwrap();
        assert_eq!(p.params.big_gamma1, 10.0);
        assert_eq!(p.params.big_gamma2, 10.0);
        assert_eq!(p.params.delta_drive, 0.0);
        assert_eq!(
            (p.params.gamma2, p.params.gamma3, p.params.gamma4),
            (1.0, 1.0, 1.0)
        );
        assert_eq!(p.params.omega2, p.params.omega3);
        let params: Vec<_> = p.axes.iter().map(|a| a.parameter).collect();
        assert_eq!(params, vec![SweepParameter::Delta, SweepParameter::Rabi]);

        let p = preset_figure("fig3a").unwrap();
        assert!(p.params.is_lossless());
        assert_eq!(p.quantity, Quantity::Left);

        let p = preset_figure("fig3b").unwrap();
        assert!(p.params.is_lossless());
        assert_eq!(p.quantity, Quantity::Right);

        assert_eq!(preset_figure("fig4b").unwrap().params.rabi, 50.0);

        assert!(matches!(
            preset_figure("fig5"),
            Err(Error::UnknownPreset(_))
        ));
    }
}
