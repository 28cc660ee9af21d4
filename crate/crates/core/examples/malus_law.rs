//! Single-photon Malus's law: analytic transmission probability next to a
//! Monte Carlo tally, at the lossless operating point and with decay.
//!
//!     cargo run --release --example malus_law

use std::f64::consts::FRAC_PI_2;

use polarizer::{
    ci_check, malus_analytic, simulate_photons, ModelParams, PolarizationState, ProbeEnergy,
};

fn main() -> polarizer::Result<()> {
    let n = 1_000_000;
    for (label, params) in [
        ("lossless", ModelParams::ideal_polarizer()),
        ("gamma = 1", ModelParams::ideal_polarizer().with_decays(1.0)),
    ] {
        println!("{label}");
        println!(
            "{:>7}  {:>9}  {:>9}  {:>9}  {:>8}  {:>4}",
            "alpha", "cos^2", "analytic", "p_hat", "lost", "ok"
        );
        let probe = ProbeEnergy::from_detuning(&params, 0.0);
        for k in 0..=6 {
            let pol = PolarizationState::new(FRAC_PI_2 * k as f64 / 6.0)?;
            let analytic = malus_analytic(&params, &probe, &pol)?;
            let counts = simulate_photons(&params, &probe, &pol, n, 2024)?;
            let report = ci_check(&counts, analytic.transmit, 4.0)?;
            println!(
                "{:>7.4}  {:>9.6}  {:>9.6}  {:>9.6}  {:>8}  {:>4}",
                pol.alpha(),
                pol.left_weight(),
                analytic.transmit,
                report.p_hat,
                counts.n_lost,
                report.pass
            );
        }
    }
    Ok(())
}
