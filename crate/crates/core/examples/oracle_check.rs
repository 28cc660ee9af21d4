//! Closed-form amplitudes next to the stationary linear-system solution,
//! including the atomic excitation amplitudes only the oracle provides.
//!
//!     cargo run --example oracle_check

use polarizer::{amplitudes4, oracle_scatter, ModelParams, ProbeEnergy};

fn main() -> polarizer::Result<()> {
    let params = ModelParams {
        rabi: 10.0,
        delta_drive: 4.0,
        ..ModelParams::default()
    };
    for delta in [-12.0, -3.0, 0.0, 7.5, 10.0] {
        let probe = ProbeEnergy::from_detuning(&params, delta);
        let closed = amplitudes4(&params, &probe)?;
        let sol = oracle_scatter(&params, &probe)?;
        println!("delta = {delta}");
        println!("  t closed {:.12}  oracle {:.12}", closed.t, sol.t);
        println!("  r closed {:.12}  oracle {:.12}", closed.r, sol.r);
        println!(
            "  |f2| = {:.6}  |f3| = {:.6}  |f4| = {:.6}",
            sol.f2.norm(),
            sol.f3.norm(),
            sol.f4.norm()
        );
    }
    Ok(())
}
