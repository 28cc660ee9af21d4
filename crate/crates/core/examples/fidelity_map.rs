//! Polarizer fidelity on resonance versus drive strength, with and without
//! spontaneous decay.
//!
//!     cargo run --example fidelity_map

use polarizer::{fidelity, ModelParams, ProbeEnergy};

fn main() -> polarizer::Result<()> {
    println!(
        "{:>6}  {:>10}  {:>10}  {:>10}",
        "rabi", "F(d=0)", "F(d=2)", "F(d=0,γ=0)"
    );
    for rabi in [1.0, 5.0, 10.0, 20.0, 30.0, 50.0, 80.0] {
        let lossy = ModelParams {
            rabi,
            ..ModelParams::default()
        };
        let lossless = lossy.lossless();
        let f0 = fidelity(&lossy, &ProbeEnergy::from_detuning(&lossy, 0.0))?;
        let f2 = fidelity(&lossy, &ProbeEnergy::from_detuning(&lossy, 2.0))?;
        let ideal = fidelity(&lossless, &ProbeEnergy::from_detuning(&lossless, 0.0))?;
        println!("{rabi:>6.1}  {f0:>10.6}  {f2:>10.6}  {ideal:>10.6}");
    }
    Ok(())
}
