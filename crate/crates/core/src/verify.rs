//! Randomized cross-checks between the closed forms and the linear-system
//! oracle.
//!
//! Each run draws `draws` lossless and `draws` dissipative parameter sets
//! from a seeded ChaCha8 stream:
//! Γᵢ ∈ [0, 50], Ω ∈ [0, 100], Δ ∈ [−50, 50], δ ∈ [−100, 100] and, for the
//! dissipative set, γᵢ ∈ [0, 5]. Levels |2⟩ and |3⟩ are degenerate.

use num_complex::Complex64;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::Serialize;

use crate::oracle::oracle_scatter;
use crate::params::{ModelParams, ProbeEnergy};
use crate::scattering::{amplitude_t_left, amplitude_t_right, amplitudes4};

pub const FLUX_TOL: f64 = 1e-10;
pub const ORACLE_TOL: f64 = 1e-10;
pub const REDUCTION_TOL: f64 = 1e-12;

/// Draws one parameter set and probe. Lossless draws have γ₂ = γ₃ = γ₄ = 0.
pub fn random_point<R: Rng>(rng: &mut R, dissipative: bool) -> (ModelParams, ProbeEnergy) {
    let mut params = ModelParams {
        big_gamma1: rng.gen_range(0.0..=50.0),
        big_gamma2: rng.gen_range(0.0..=50.0),
        rabi: rng.gen_range(0.0..=100.0),
        delta_drive: rng.gen_range(-50.0..=50.0),
        ..ModelParams::default().lossless()
    };
    if dissipative {
        params.gamma2 = rng.gen_range(0.0..=5.0);
        params.gamma3 = rng.gen_range(0.0..=5.0);
        params.gamma4 = rng.gen_range(0.0..=5.0);
    }
    let delta = rng.gen_range(-100.0..=100.0);
    (params, ProbeEnergy::from_detuning(&params, delta))
}

/// |a − b| scaled by max(1, |a|). Scattering amplitudes satisfy t − r = 1,
/// so the larger of |t|, |r| is at least 1/2 and unit scale is natural.
pub fn amplitude_deviation(a: Complex64, b: Complex64) -> f64 {
    (a - b).norm() / a.norm().max(1.0)
}

/// |a − b| / max(|a|, |b|), zero when both vanish.
pub fn relative_deviation(a: Complex64, b: Complex64) -> f64 {
    let scale = a.norm().max(b.norm());
    if scale == 0.0 {
        0.0
    } else {
        (a - b).norm() / scale
    }
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct VerifyReport {
    pub draws: usize,
    pub seed: u64,
    /// max ||t|² + |r|² − 1| over lossless draws.
    pub max_flux_deviation: f64,
    /// max (|t|² + |r|² − 1)⁺ over dissipative draws.
    pub max_passivity_excess: f64,
    pub max_oracle_deviation_t: f64,
    pub max_oracle_deviation_r: f64,
    /// max |r − (t − 1)| of the oracle solutions.
    pub max_oracle_jump_gap: f64,
    /// Γ₂ = 0 reduction, four-level t against t_L.
    pub max_reduction_left: f64,
    /// Γ₁ = 0 reduction, four-level t against t_R.
    pub max_reduction_right: f64,
    pub failures: usize,
    pub first_failure: Option<String>,
}

impl VerifyReport {
    pub fn passed(&self) -> bool {
        self.failures == 0
            && self.max_flux_deviation <= FLUX_TOL
            && self.max_passivity_excess <= FLUX_TOL
            && self.max_oracle_deviation_t <= ORACLE_TOL
            && self.max_oracle_deviation_r <= ORACLE_TOL
            && self.max_reduction_left <= REDUCTION_TOL
            && self.max_reduction_right <= REDUCTION_TOL
    }

    fn fail(&mut self, what: String) {
        self.failures += 1;
        if self.first_failure.is_none() {
            self.first_failure = Some(what);
        }
    }

    fn check(&mut self, params: &ModelParams, probe: &ProbeEnergy, label: &str) {
        let amps = match amplitudes4(params, probe) {
            Ok(a) => a,
            Err(e) => return self.fail(format!("{label}: closed form: {e}")),
        };
        let total = amps.transmittance() + amps.reflectance();
        if params.is_lossless() {
            self.max_flux_deviation = self.max_flux_deviation.max((total - 1.0).abs());
        } else {
            self.max_passivity_excess = self.max_passivity_excess.max(total - 1.0);
        }

        match oracle_scatter(params, probe) {
            Ok(sol) => {
                self.max_oracle_deviation_t = self
                    .max_oracle_deviation_t
                    .max(amplitude_deviation(amps.t, sol.t));
                self.max_oracle_deviation_r = self
                    .max_oracle_deviation_r
                    .max(amplitude_deviation(amps.r, sol.r));
                self.max_oracle_jump_gap =
                    self.max_oracle_jump_gap.max((sol.r - (sol.t - 1.0)).norm());
            }
            Err(e) => self.fail(format!("{label}: oracle: {e}")),
        }

        let left_only = ModelParams {
            big_gamma2: 0.0,
            ..*params
        };
        match (
            amplitudes4(&left_only, probe),
            amplitude_t_left(&left_only, probe),
        ) {
            (Ok(a), Ok(tl)) => {
                self.max_reduction_left = self.max_reduction_left.max(relative_deviation(a.t, tl))
            }
            (Err(e), _) | (_, Err(e)) => self.fail(format!("{label}: left reduction: {e}")),
        }
        let right_only = ModelParams {
            big_gamma1: 0.0,
            ..*params
        };
        match (
            amplitudes4(&right_only, probe),
            amplitude_t_right(&right_only, probe),
        ) {
            (Ok(a), Ok(tr)) => {
                self.max_reduction_right = self.max_reduction_right.max(relative_deviation(a.t, tr))
            }
            (Err(e), _) | (_, Err(e)) => self.fail(format!("{label}: right reduction: {e}")),
        }
    }
}

/// Runs all checks over `draws` lossless and `draws` dissipative points.
pub fn run_verification(draws: usize, seed: u64) -> VerifyReport {
    let mut report = VerifyReport {
        draws,
        seed,
        max_flux_deviation: 0.0,
        max_passivity_excess: 0.0,
        max_oracle_deviation_t: 0.0,
        max_oracle_deviation_r: 0.0,
        max_oracle_jump_gap: 0.0,
        max_reduction_left: 0.0,
        max_reduction_right: 0.0,
        failures: 0,
        first_failure: None,
    };
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    for dissipative in [false, true] {
        for i in 0..draws {
            let (params, probe) = random_point(&mut rng, dissipative);
            let kind = if dissipative {
                "dissipative"
            } else {
                "lossless"
            };
            report.check(&params, &probe, &format!("seed {seed}, {kind} draw {i}"));
        }
    }
    report
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn small_run_passes_and_is_reproducible() {
        let a = run_verification(200, 3);
        assert!(a.passed(), "{a:?}");
        assert_eq!(a, run_verification(200, 3));
        assert_ne!(a, run_verification(200, 4));
    }

    #[test]
    fn deviation_helpers() {
        let one = Complex64::new(1.0, 0.0);
        assert_eq!(
            relative_deviation(Complex64::new(0.0, 0.0), Complex64::new(0.0, 0.0)),
            0.0
        );
        assert_eq!(relative_deviation(one, one * 2.0), 0.5);
        assert!((amplitude_deviation(one * 0.1, one * 0.2) - 0.1).abs() < 1e-15);
        assert_eq!(amplitude_deviation(one * 4.0, one * 2.0), 0.5);
    }
}
