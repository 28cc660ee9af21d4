//! Monte Carlo photon counting against the analytic Malus probabilities.

use std::f64::consts::{FRAC_PI_2, FRAC_PI_3, FRAC_PI_4, FRAC_PI_6};

use polarizer::malus::CHUNK_SIZE;
use polarizer::{
    ci_check, malus_analytic, simulate_photons, ModelParams, PolarizationState, ProbeEnergy,
};

#[test]
fn ideal_point_at_sixty_degrees() {
    let p = ModelParams::ideal_polarizer();
    let probe = ProbeEnergy::from_detuning(&p, 0.0);
    let pol = PolarizationState::new(FRAC_PI_3).unwrap();
    let counts = simulate_photons(&p, &probe, &pol, 1_000_000, 1).unwrap();
    let p_hat = counts.n_transmitted as f64 / 1e6;
    assert!((p_hat - 0.25).abs() <= 4.0 * (0.25f64 * 0.75 / 1e6).sqrt());
    assert_eq!(counts.n_lost, 0);
}

#[test]
fn dissipative_tallies_converge_to_analytic_probabilities() {
    let p = ModelParams {
        rabi: 30.0,
        ..ModelParams::default()
    };
    let probe = ProbeEnergy::from_detuning(&p, 2.0);
    for alpha in [0.0, FRAC_PI_6, FRAC_PI_4, FRAC_PI_3, FRAC_PI_2] {
        let pol = PolarizationState::new(alpha).unwrap();
        let expected = malus_analytic(&p, &probe, &pol).unwrap();
        let counts = simulate_photons(&p, &probe, &pol, 400_000, 17).unwrap();
        assert!(ci_check(&counts, expected.transmit, 4.0).unwrap().pass);
        let n = counts.n_total as f64;
        for (count, prob) in [
            (counts.n_reflected, expected.reflect),
            (counts.n_lost, expected.loss),
        ] {
            let sigma = (prob * (1.0 - prob) / n).sqrt();
            assert!((count as f64 / n - prob).abs() <= 4.0 * sigma + 1e-12);
        }
        assert_eq!(
            counts.n_transmitted + counts.n_reflected + counts.n_lost,
            counts.n_total
        );
    }
}

#[test]
fn chunk_boundaries_do_not_change_prefix_chunks() {
    // Chunks are seeded independently, so adding photons only appends chunks.
    let p = ModelParams::default();
    let probe = ProbeEnergy::from_detuning(&p, 5.0);
    let pol = PolarizationState::new(0.4).unwrap();
    let one = simulate_photons(&p, &probe, &pol, CHUNK_SIZE, 8).unwrap();
    let two = simulate_photons(&p, &probe, &pol, 2 * CHUNK_SIZE, 8).unwrap();
    assert!(two.n_transmitted >= one.n_transmitted);
    assert!(two.n_reflected >= one.n_reflected);
    assert!(two.n_lost >= one.n_lost);
}
