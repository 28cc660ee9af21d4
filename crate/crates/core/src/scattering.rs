//! Closed-form single-photon scattering amplitudes.
//!
//! Every rational expression is evaluated with the drive term
//! Ω²/δ₄ cleared, i.e. numerator and denominator multiplied by
//! δ₄ = ω₂ − ω + Δ − iγ₄/2. The cleared form is finite at the lossless
//! two-photon resonance δ₄ = 0, where the uncleared one divides by zero.

use num_complex::Complex64;

use crate::error::{Error, Result};
use crate::params::{ModelParams, ProbeEnergy};

/// Relative threshold below which a denominator counts as vanishing.
pub const EPS_DEN: f64 = 1e-12;
/// Tolerance for probability sanity checks.
pub const EPS_PROB: f64 = 1e-9;

const I: Complex64 = Complex64 { re: 0.0, im: 1.0 };

/// Transmission and reflection amplitudes relative to unit incident flux.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct ScatterAmps {
    pub t: Complex64,
    pub r: Complex64,
}

impl ScatterAmps {
    pub fn transmittance(&self) -> f64 {
        self.t.norm_sqr()
    }

    pub fn reflectance(&self) -> f64 {
        self.r.norm_sqr()
    }
}

/// Outcome probabilities of a single scattering event.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct ChannelProbs {
    pub transmit: f64,
    pub reflect: f64,
    pub loss: f64,
}

/// Photon polarization channel. |L⟩ drives |1⟩↔|2⟩, |R⟩ drives |1⟩↔|3⟩.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Channel {
    Left,
    Right,
}

/// Complex detunings δ₂, δ₃, δ₄ including the decay rates.
#[derive(Debug, Clone, Copy)]
struct Detunings {
    d2: Complex64,
    d3: Complex64,
    d4: Complex64,
}

impl Detunings {
    fn new(params: &ModelParams, probe: &ProbeEnergy) -> Self {
        let w = probe.omega;
        Self {
            d2: Complex64::new(params.omega2 - w, -params.gamma2 / 2.0),
            d3: Complex64::new(params.omega3 - w, -params.gamma3 / 2.0),
            d4: Complex64::new(params.omega2 - w + params.delta_drive, -params.gamma4 / 2.0),
        }
    }
}

fn check_denominator(den: Complex64, scale: f64) -> Result<()> {
    let threshold = EPS_DEN * scale;
    let magnitude = den.norm();
    // `!(a >= b)` also catches NaN.
    if magnitude.is_nan() || magnitude < threshold {
        return Err(Error::DegenerateDenominator {
            magnitude,
            threshold,
        });
    }
    Ok(())
}

/// Full four-level amplitudes (t, r) with both polarization channels coupled.
pub fn amplitudes4(params: &ModelParams, probe: &ProbeEnergy) -> Result<ScatterAmps> {
    let Detunings { d2, d3, d4 } = Detunings::new(params, probe);
    let rabi_sq = params.rabi * params.rabi;
    let (g1, g2) = (params.big_gamma1, params.big_gamma2);

    // δ₂δ₄ − Ω² is the drive-dressed |2⟩ detuning times δ₄.
    let dressed = d2 * d4 - rabi_sq;
    let den = (d3 - I * g2) * ((d2 - I * g1) * d4 - rabi_sq) + g1 * g2 * d4;
    let scale = 1f64
        .max((d2 * d3 * d4).norm())
        .max(rabi_sq * d2.norm().max(d3.norm()).max(1.0));
    check_denominator(den, scale)?;

    let t = d3 * dressed / den;
    let r = (I * g1 * d3 * d4 + I * g2 * dressed) / den;
    Ok(ScatterAmps { t, r })
}

/// Transmission amplitude of a left-circularly polarized photon, which sees
/// only the driven Λ-like ladder |1⟩, |2⟩, |4⟩. Γ₂ plays no role.
pub fn amplitude_t_left(params: &ModelParams, probe: &ProbeEnergy) -> Result<Complex64> {
    let Detunings { d2, d4, .. } = Detunings::new(params, probe);
    let rabi_sq = params.rabi * params.rabi;
    let dressed = d2 * d4 - rabi_sq;
    let den = (d2 - I * params.big_gamma1) * d4 - rabi_sq;
    let scale = 1f64.max((d2 * d4).norm()).max(rabi_sq);
    check_denominator(den, scale)?;
    Ok(dressed / den)
}

/// Transmission amplitude of a right-circularly polarized photon, which sees
/// the bare two-level transition |1⟩↔|3⟩.
pub fn amplitude_t_right(params: &ModelParams, probe: &ProbeEnergy) -> Result<Complex64> {
    let Detunings { d3, .. } = Detunings::new(params, probe);
    let den = d3 - I * params.big_gamma2;
    check_denominator(den, 1f64.max(d3.norm()))?;
    Ok(d3 / den)
}

/// Single-channel amplitudes. For a single point scatterer r = t − 1.
pub fn channel_amplitudes(
    params: &ModelParams,
    probe: &ProbeEnergy,
    channel: Channel,
) -> Result<ScatterAmps> {
    let t = match channel {
        Channel::Left => amplitude_t_left(params, probe)?,
        Channel::Right => amplitude_t_right(params, probe)?,
    };
    Ok(ScatterAmps { t, r: t - 1.0 })
}

/// Splits unit flux into transmitted, reflected and lost parts.
///
/// Loss within `EPS_PROB` below zero is rounding and is clamped to 0.
pub fn probabilities(amps: &ScatterAmps) -> Result<ChannelProbs> {
    let transmit = amps.transmittance();
    let reflect = amps.reflectance();
    let total = transmit + reflect;
    if total.is_nan() || total > 1.0 + EPS_PROB {
        return Err(Error::InvalidAmplitudes { total });
    }
    let loss = (1.0 - total).max(0.0);
    Ok(ChannelProbs {
        transmit,
        reflect,
        loss,
    })
}

/// Polarizer fidelity F = |t_L|² / (|t_L|² + |t_R|²).
pub fn fidelity(params: &ModelParams, probe: &ProbeEnergy) -> Result<f64> {
    let left = amplitude_t_left(params, probe)?.norm_sqr();
    let right = amplitude_t_right(params, probe)?.norm_sqr();
    fidelity_from(left, right)
}

pub(crate) fn fidelity_from(left: f64, right: f64) -> Result<f64> {
    let total = left + right;
    if total < EPS_PROB {
        return Err(Error::IndeterminateFidelity { total });
    }
    Ok(left / total)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn fig2(rabi: f64, gamma: f64) -> ModelParams {
        ModelParams {
            rabi,
            ..ModelParams::default().with_decays(gamma)
        }
    }

    fn at(params: &ModelParams, delta: f64) -> ProbeEnergy {
        ProbeEnergy::from_detuning(params, delta)
    }

    #[test]
    fn drive_resonance_blocks_transmission() {
        let p = fig2(10.0, 0.0);
        let amps = amplitudes4(&p, &at(&p, 10.0)).unwrap();
        assert_eq!(amps.t, Complex64::new(0.0, 0.0));
        assert!((amps.r.norm() - 1.0).abs() < 1e-14);
    }

    #[test]
    fn undriven_single_transition_is_two_level_lineshape() {
        let p = ModelParams {
            big_gamma2: 0.0,
            ..fig2(0.0, 0.0)
        };
        for delta in [-30.0, -3.5, 0.7, 12.0] {
            let t = amplitudes4(&p, &at(&p, delta)).unwrap().t;
            let expected = Complex64::new(delta, 0.0) / Complex64::new(delta, -10.0);
            assert!((t - expected).norm() < 1e-14, "delta = {delta}");
        }
    }

    #[test]
    fn dissipative_drive_resonance_value() {
        // High-precision reference, also reproduced by the linear-system oracle.
        let p = fig2(10.0, 1.0);
        let t = amplitudes4(&p, &at(&p, 10.0)).unwrap().transmittance();
        assert!((t - 0.008_077_955_318_180_916).abs() < 1e-15);
    }

    #[test]
    fn left_channel_is_transparent_on_resonance() {
        let p = ModelParams::ideal_polarizer();
        let t = amplitude_t_left(&p, &at(&p, 0.0)).unwrap();
        assert_eq!(t, Complex64::new(1.0, 0.0));

        let lossy = p.with_decays(1.0);
        let t = amplitude_t_left(&lossy, &at(&lossy, 0.0)).unwrap();
        assert!((t.norm_sqr() - 0.996_012_365_649_738_6).abs() < 1e-14);
    }

    #[test]
    fn left_channel_without_drive() {
        let p = fig2(0.0, 0.0);
        let t = amplitude_t_left(&p, &at(&p, 4.0)).unwrap();
        let expected = Complex64::new(4.0, 0.0) / Complex64::new(4.0, -10.0);
        assert!((t - expected).norm() < 1e-15);
    }

    #[test]
    fn right_channel() {
        let p = fig2(0.0, 0.0);
        assert_eq!(
            amplitude_t_right(&p, &at(&p, 0.0)).unwrap(),
            Complex64::new(0.0, 0.0)
        );
        let t = amplitude_t_right(&p, &at(&p, 10.0)).unwrap();
        assert!((t.norm_sqr() - 0.5).abs() < 1e-15);

        let decoupled = ModelParams {
            big_gamma2: 0.0,
            ..p
        };
        let t = amplitude_t_right(&decoupled, &at(&p, 3.0)).unwrap();
        assert_eq!(t, Complex64::new(1.0, 0.0));
    }

    #[test]
    fn right_channel_degenerate_when_uncoupled_on_resonance() {
        let p = ModelParams {
            big_gamma2: 0.0,
            ..fig2(0.0, 0.0)
        };
        assert!(matches!(
            amplitude_t_right(&p, &at(&p, 0.0)),
            Err(Error::DegenerateDenominator { .. })
        ));
    }

    #[test]
    fn full_amplitudes_degenerate_when_everything_vanishes() {
        let p = ModelParams {
            big_gamma1: 0.0,
            big_gamma2: 0.0,
            ..fig2(0.0, 0.0)
        };
        assert!(matches!(
            amplitudes4(&p, &at(&p, 0.0)),
            Err(Error::DegenerateDenominator { .. })
        ));
    }

    #[test]
    fn probabilities_trivial_cases() {
        let one = Complex64::new(1.0, 0.0);
        let zero = Complex64::new(0.0, 0.0);
        let p = probabilities(&ScatterAmps { t: one, r: zero }).unwrap();
        assert_eq!((p.transmit, p.reflect, p.loss), (1.0, 0.0, 0.0));
        let p = probabilities(&ScatterAmps { t: zero, r: I }).unwrap();
        assert_eq!((p.transmit, p.reflect, p.loss), (0.0, 1.0, 0.0));
    }

    #[test]
    fn dissipative_atom_absorbs() {
        let p = fig2(0.0, 1.0);
        let probs = probabilities(&amplitudes4(&p, &at(&p, 0.0)).unwrap()).unwrap();
        assert!((probs.loss - 0.047_590_719_809_637_12).abs() < 1e-14);
    }

    #[test]
    fn probabilities_clamp_rounding_but_reject_excess() {
        let t = Complex64::new((1.0 + 1e-12f64).sqrt(), 0.0);
        let p = probabilities(&ScatterAmps {
            t,
            r: Complex64::new(0.0, 0.0),
        })
        .unwrap();
        assert_eq!(p.loss, 0.0);

        let err = probabilities(&ScatterAmps {
            t: Complex64::new(1.0, 0.0),
            r: Complex64::new(0.1, 0.0),
        });
        assert!(matches!(err, Err(Error::InvalidAmplitudes { .. })));
    }

    #[test]
    fn fidelity_at_operating_point() {
        let p = ModelParams::ideal_polarizer().with_decays(1.0);
        let f = fidelity(&p, &at(&p, 0.0)).unwrap();
        assert!((f - 0.997_728_519_219_137_1).abs() < 1e-13);
    }

    #[test]
    fn fidelity_extremes() {
        // t_R = 0 at the |3⟩ resonance, t_L = 1 under strong drive.
        let p = ModelParams::ideal_polarizer();
        assert_eq!(fidelity(&p, &at(&p, 0.0)).unwrap(), 1.0);

        // t_L = 0 at δ = Ω while t_R stays finite.
        assert_eq!(fidelity(&p, &at(&p, 50.0)).unwrap(), 0.0);
    }

    #[test]
    fn fidelity_indeterminate() {
        assert!(matches!(
            fidelity_from(0.0, 0.0),
            Err(Error::IndeterminateFidelity { .. })
        ));
    }

    #[test]
    fn channel_amplitudes_conserve_flux_without_loss() {
        let p = ModelParams {
            delta_drive: 3.0,
            rabi: 7.0,
            ..fig2(0.0, 0.0)
        };
        for channel in [Channel::Left, Channel::Right] {
            for delta in [-20.0, -1.0, 0.5, 9.0] {
                let a = channel_amplitudes(&p, &at(&p, delta), channel).unwrap();
                assert!((a.transmittance() + a.reflectance() - 1.0).abs() < 1e-13);
            }
        }
    }
}
