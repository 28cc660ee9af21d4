//! Test-only helpers shared by the integration suites.
#![allow(dead_code)]

use polarizer::SweepRecord;

/// Full width at half maximum of the peak containing `center`, from a 1D
/// sweep. Crossings are located by linear interpolation between the
/// bracketing grid points. Returns `None` if the peak is not bracketed.
pub fn fwhm(records: &[SweepRecord], center: f64) -> Option<f64> {
    let xs: Vec<f64> = records.iter().map(|r| r.coords[0]).collect();
    let ys: Vec<f64> = records.iter().map(|r| r.transmit).collect();
    let peak = xs
        .iter()
        .enumerate()
        .min_by(|a, b| (a.1 - center).abs().total_cmp(&(b.1 - center).abs()))?
        .0;
    let half = ys[peak] / 2.0;

    let crossing = |i: usize, j: usize| {
        // ys[i] >= half > ys[j]
        xs[i] + (half - ys[i]) * (xs[j] - xs[i]) / (ys[j] - ys[i])
    };

    let mut left = None;
    for i in (0..peak).rev() {
        if ys[i] < half {
            left = Some(crossing(i + 1, i));
            break;
        }
    }
    let right = (peak + 1..ys.len())
        .find(|&i| ys[i] < half)
        .map(|i| crossing(i - 1, i));
    Some(right? - left?)
}

/// Closed-form FWHM of the lossless left-channel transparency window at
/// Δ = 0: the half-maximum points solve Ω² − δ² = Γ₁|δ|.
pub fn eit_fwhm_exact(rabi: f64, big_gamma1: f64) -> f64 {
    (big_gamma1 * big_gamma1 + 4.0 * rabi * rabi).sqrt() - big_gamma1
}

/// Lossless transmission zeros away from δ = 0: roots of δ(δ + Δ) = Ω².
pub fn drive_zeros(rabi: f64, delta_drive: f64) -> [f64; 2] {
    let disc = (delta_drive * delta_drive + 4.0 * rabi * rabi).sqrt();
    [(-delta_drive - disc) / 2.0, (-delta_drive + disc) / 2.0]
}
