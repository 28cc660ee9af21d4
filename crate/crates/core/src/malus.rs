//! Single-photon Malus's law.
//!
//! An incident photon cos α |L⟩ + sin α |R⟩ is scattered channel by channel:
//! the two circular polarizations couple to disjoint transitions, so the
//! photon can be assigned to a channel first and scattered afterwards
//! without changing any outcome statistics.
//!
//! The Monte Carlo draws photons in fixed-size chunks. Chunk `k` uses a
//! ChaCha8 generator seeded with the user seed and switched to stream `k`,
//! so tallies do not depend on how chunks are scheduled across threads.

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;
use serde::Serialize;

use crate::error::{Error, Result};
use crate::params::{ModelParams, ProbeEnergy};
use crate::scattering::{channel_amplitudes, probabilities, Channel, ChannelProbs};

/// Photons per independently seeded random stream.
pub const CHUNK_SIZE: u64 = 1 << 16;

/// Polarization of the incident photon, cos α |L⟩ + sin α |R⟩.
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct PolarizationState {
    alpha: f64,
}

impl PolarizationState {
    pub fn new(alpha: f64) -> Result<Self> {
        if !(0.0..=std::f64::consts::FRAC_PI_2).contains(&alpha) {
            return Err(Error::Validation {
                key: "alpha".into(),
                message: format!("{alpha} is outside [0, π/2]"),
            });
        }
        Ok(Self { alpha })
    }

    pub fn alpha(&self) -> f64 {
        self.alpha
    }

    /// Probability cos²α of finding the photon in |L⟩.
    pub fn left_weight(&self) -> f64 {
        self.alpha.cos().powi(2)
    }

    pub fn right_weight(&self) -> f64 {
        self.alpha.sin().powi(2)
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub struct TrialCounts {
    pub n_total: u64,
    pub n_transmitted: u64,
    pub n_reflected: u64,
    pub n_lost: u64,
    pub seed: u64,
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct CiReport {
    pub pass: bool,
    pub p_hat: f64,
    pub halfwidth: f64,
}

fn per_channel(params: &ModelParams, probe: &ProbeEnergy) -> Result<(ChannelProbs, ChannelProbs)> {
    params.validate()?;
    let left = probabilities(&channel_amplitudes(params, probe, Channel::Left)?)?;
    let right = probabilities(&channel_amplitudes(params, probe, Channel::Right)?)?;
    Ok((left, right))
}

/// Outcome probabilities of a photon with polarization `pol`, averaged over
/// the two channels with weights cos²α and sin²α.
pub fn malus_analytic(
    params: &ModelParams,
    probe: &ProbeEnergy,
    pol: &PolarizationState,
) -> Result<ChannelProbs> {
    let (left, right) = per_channel(params, probe)?;
    let (wl, wr) = (pol.left_weight(), pol.right_weight());
    Ok(ChannelProbs {
        transmit: wl * left.transmit + wr * right.transmit,
        reflect: wl * left.reflect + wr * right.reflect,
        loss: wl * left.loss + wr * right.loss,
    })
}

#[derive(Default, Clone, Copy)]
struct Tally {
    transmitted: u64,
    reflected: u64,
    lost: u64,
}

impl Tally {
    fn merge(self, other: Tally) -> Tally {
        Tally {
            transmitted: self.transmitted + other.transmitted,
            reflected: self.reflected + other.reflected,
            lost: self.lost + other.lost,
        }
    }

    // Loss occupies the bottom of [0, 1) so an exactly lossless channel never
    // produces a lost photon.
    fn record(&mut self, probs: &ChannelProbs, u: f64) {
        if u < probs.loss {
            self.lost += 1;
        } else if u < probs.loss + probs.transmit {
            self.transmitted += 1;
        } else {
            self.reflected += 1;
        }
    }
}

/// Photon-by-photon simulation of `n` scattering events.
pub fn simulate_photons(
    params: &ModelParams,
    probe: &ProbeEnergy,
    pol: &PolarizationState,
    n: u64,
    seed: u64,
) -> Result<TrialCounts> {
    if n == 0 {
        return Err(Error::Validation {
            key: "n".into(),
            message: "at least one photon is required".into(),
        });
    }
    let (left, right) = per_channel(params, probe)?;
    let p_left = pol.left_weight();

    let chunks = n.div_ceil(CHUNK_SIZE);
    let tally = (0..chunks)
        .into_par_iter()
        .map(|chunk| {
            let mut rng = ChaCha8Rng::seed_from_u64(seed);
            rng.set_stream(chunk);
            let len = CHUNK_SIZE.min(n - chunk * CHUNK_SIZE);
            let mut tally = Tally::default();
            for _ in 0..len {
                let channel = if rng.gen::<f64>() < p_left {
                    &left
                } else {
                    &right
                };
                tally.record(channel, rng.gen::<f64>());
            }
            tally
        })
        .reduce(Tally::default, Tally::merge);

    Ok(TrialCounts {
        n_total: n,
        n_transmitted: tally.transmitted,
        n_reflected: tally.reflected,
        n_lost: tally.lost,
        seed,
    })
}

/// Normal-approximation binomial check of the transmitted fraction.
///
/// Passes iff |p̂ − p| ≤ z·sqrt(p(1 − p)/n). For p ∈ {0, 1} the count must
/// match exactly.
pub fn ci_check(counts: &TrialCounts, p_expected: f64, z: f64) -> Result<CiReport> {
    if counts.n_total < 100 {
        return Err(Error::InsufficientSamples { n: counts.n_total });
    }
    let n = counts.n_total as f64;
    let p_hat = counts.n_transmitted as f64 / n;
    let halfwidth = z * (p_expected * (1.0 - p_expected) / n).sqrt();
    let pass = if p_expected == 0.0 {
        counts.n_transmitted == 0
    } else if p_expected == 1.0 {
        counts.n_transmitted == counts.n_total
    } else {
        (p_hat - p_expected).abs() <= halfwidth
    };
    Ok(CiReport {
        pass,
        p_hat,
        halfwidth,
    })
}
