//! Four-level transmission spectrum for a few drive strengths, printed as a
//! coarse table: reflection zeros at δ = 0 and δ = ±Ω.
//!
//!     cargo run --example transmission_spectrum

use polarizer::{amplitudes4, probabilities, ModelParams, ProbeEnergy};

fn main() -> polarizer::Result<()> {
    let rabis = [0.0, 5.0, 10.0, 20.0];
    print!("{:>8}", "delta");
    for rabi in rabis {
        print!("  T(rabi={rabi:>4})");
    }
    println!();

    for step in -12..=12 {
        let delta = 2.5 * step as f64;
        print!("{delta:>8.1}");
        for rabi in rabis {
            let params = ModelParams {
                rabi,
                ..ModelParams::default()
            };
            let probe = ProbeEnergy::from_detuning(&params, delta);
            let probs = probabilities(&amplitudes4(&params, &probe)?)?;
            print!("  {:>14.6}", probs.transmit);
        }
        println!();
    }
    Ok(())
}
