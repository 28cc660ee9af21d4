//! Width of the left-circular transparency window as the drive increases.
//!
//!     cargo run --example eit_window

use polarizer::{sweep1d, ModelParams, ProbeEnergy, Quantity, SweepAxis, SweepParameter};

/// Half-maximum crossings on both sides of the δ = 0 peak.
fn window_width(deltas: &[f64], transmit: &[f64], center: usize) -> Option<f64> {
    let half = transmit[center] / 2.0;
    let left = (0..center).rev().find(|&i| transmit[i] < half)?;
    let right = (center + 1..transmit.len()).find(|&i| transmit[i] < half)?;
    let interp = |a: usize, b: usize| {
        deltas[a] + (half - transmit[a]) * (deltas[b] - deltas[a]) / (transmit[b] - transmit[a])
    };
    Some(interp(right - 1, right) - interp(left + 1, left))
}

fn main() -> polarizer::Result<()> {
    let axis = SweepAxis::new(SweepParameter::Delta, -100.0, 100.0, 4001)?;
    println!("{:>6}  {:>10}  {:>12}", "rabi", "T_L(0)", "FWHM");
    for rabi in [5.0, 10.0, 20.0, 35.0, 50.0] {
        let params = ModelParams {
            rabi,
            ..ModelParams::default().lossless()
        };
        let probe = ProbeEnergy::from_detuning(&params, 0.0);
        let records = sweep1d(&params, &probe, &axis, Quantity::Left)?;
        let deltas: Vec<f64> = records.iter().map(|r| r.coords[0]).collect();
        let transmit: Vec<f64> = records.iter().map(|r| r.transmit).collect();
        let width = window_width(&deltas, &transmit, axis.count / 2);
        println!(
            "{rabi:>6.1}  {:>10.6}  {:>12.4}",
            transmit[axis.count / 2],
            width.unwrap_or(f64::NAN)
        );
    }
    Ok(())
}
