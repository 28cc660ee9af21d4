//! Model parameters of the driven four-level atom and the probe photon.
//!
//! All energies and rates are dimensionless, measured in units of the
//! reference decay rate γ. The group velocity defaults to 1 so that the
//! waveguide coupling rates equal the squared dipole couplings.

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

/// Atomic and waveguide parameters.
///
/// Level |4⟩ sits at `omega2 + delta_drive` and is coupled to |2⟩ by the
/// classical drive of strength `rabi`. Transitions |1⟩↔|2⟩ and |1⟩↔|3⟩
/// couple to the guided photon with rates `big_gamma1` and `big_gamma2`.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
#[serde(default, deny_unknown_fields)]
pub struct ModelParams {
    pub omega2: f64,
    pub omega3: f64,
    pub delta_drive: f64,
    pub rabi: f64,
    pub gamma2: f64,
    pub gamma3: f64,
    pub gamma4: f64,
    pub big_gamma1: f64,
    pub big_gamma2: f64,
    pub v_group: f64,
}

impl Default for ModelParams {
    /// Degenerate levels anchored at ω₂ = ω₃ = 100, unit decays, Γ₁ = Γ₂ = 10,
    /// no drive.
    fn default() -> Self {
        Self {
            omega2: 100.0,
            omega3: 100.0,
            delta_drive: 0.0,
            rabi: 0.0,
            gamma2: 1.0,
            gamma3: 1.0,
            gamma4: 1.0,
            big_gamma1: 10.0,
            big_gamma2: 10.0,
            v_group: 1.0,
        }
    }
}

impl ModelParams {
    /// The lossless polarizer operating point: Ω = 50, Γ₁ = Γ₂ = 10, Δ = 0.
    pub fn ideal_polarizer() -> Self {
        Self {
            rabi: 50.0,
            ..Self::default().lossless()
        }
    }

    /// Copy with all spontaneous decay rates set to zero.
    pub fn lossless(self) -> Self {
        self.with_decays(0.0)
    }

    /// Copy with γ₂ = γ₃ = γ₄ = `gamma`.
    pub fn with_decays(self, gamma: f64) -> Self {
        Self {
            gamma2: gamma,
            gamma3: gamma,
            gamma4: gamma,
            ..self
        }
    }

    /// Dipole coupling V₁ = sqrt(Γ₁ v_g).
    pub fn v1(&self) -> f64 {
        (self.big_gamma1 * self.v_group).sqrt()
    }

    /// Dipole coupling V₂ = sqrt(Γ₂ v_g).
    pub fn v2(&self) -> f64 {
        (self.big_gamma2 * self.v_group).sqrt()
    }

    pub fn is_lossless(&self) -> bool {
        self.gamma2 == 0.0 && self.gamma3 == 0.0 && self.gamma4 == 0.0
    }

    pub fn validate(&self) -> Result<()> {
        let finite = [
            ("omega2", self.omega2),
            ("omega3", self.omega3),
            ("delta_drive", self.delta_drive),
        ];
        for (field, value) in finite {
            if !value.is_finite() {
                return Err(invalid(field, "must be finite"));
            }
        }
        let non_negative = [
            ("rabi", self.rabi),
            ("gamma2", self.gamma2),
            ("gamma3", self.gamma3),
            ("gamma4", self.gamma4),
            ("big_gamma1", self.big_gamma1),
            ("big_gamma2", self.big_gamma2),
        ];
        for (field, value) in non_negative {
            if !(value.is_finite() && value >= 0.0) {
                return Err(invalid(field, "must be finite and non-negative"));
            }
        }
        if !(self.v_group.is_finite() && self.v_group > 0.0) {
            return Err(invalid("v_group", "must be finite and strictly positive"));
        }
        Ok(())
    }
}

fn invalid(field: &'static str, reason: &str) -> Error {
    Error::InvalidParams {
        field,
        reason: reason.to_owned(),
    }
}

/// Energy ω of the incident photon.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct ProbeEnergy {
    pub omega: f64,
}

impl ProbeEnergy {
    pub fn new(omega: f64) -> Self {
        Self { omega }
    }

    /// Probe at detuning δ = ω₂ − ω from the |1⟩↔|2⟩ transition.
    pub fn from_detuning(params: &ModelParams, delta: f64) -> Self {
        Self {
            omega: params.omega2 - delta,
        }
    }

    /// δ = ω₂ − ω.
    pub fn detuning(&self, params: &ModelParams) -> f64 {
        params.omega2 - self.omega
    }

    /// k = ω / v_g.
    pub fn wavenumber(&self, params: &ModelParams) -> f64 {
        self.omega / params.v_group
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn defaults_are_valid() {
        let p = ModelParams::default();
        p.validate().unwrap();
        assert_eq!(p.omega2, p.omega3);
        assert_eq!(p.big_gamma1, 10.0);
        assert_eq!(p.rabi, 0.0);
    }

    #[test]
    fn dipole_couplings_square_to_rates() {
        let p = ModelParams {
            big_gamma1: 7.0,
            big_gamma2: 3.0,
            v_group: 2.5,
            ..ModelParams::default()
        };
        assert!((p.v1() * p.v1() / p.v_group - 7.0).abs() < 1e-14);
        assert!((p.v2() * p.v2() / p.v_group - 3.0).abs() < 1e-14);
    }

    #[test]
    fn rejects_negative_rates_and_bad_velocity() {
        let p = ModelParams {
            big_gamma1: -1.0,
            ..ModelParams::default()
        };
        assert!(matches!(
            p.validate(),
            Err(Error::InvalidParams {
                field: "big_gamma1",
                ..
            })
        ));
        let p = ModelParams {
            v_group: 0.0,
            ..ModelParams::default()
        };
        assert!(p.validate().is_err());
        let p = ModelParams {
            omega3: f64::NAN,
            ..ModelParams::default()
        };
        assert!(p.validate().is_err());
    }

    #[test]
    fn detuning_round_trip() {
        let p = ModelParams::default();
        let probe = ProbeEnergy::from_detuning(&p, 10.0);
        assert_eq!(probe.omega, 90.0);
        assert_eq!(probe.detuning(&p), 10.0);
        assert_eq!(probe.wavenumber(&p), 90.0);
    }
}
