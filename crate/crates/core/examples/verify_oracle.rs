//! Seeded randomized verification of the closed forms against the oracle.
//!
//!     cargo run --release --example verify_oracle -- 20000 7

use polarizer::verify::run_verification;

fn main() {
    let mut args = std::env::args().skip(1);
    let draws = args.next().and_then(|s| s.parse().ok()).unwrap_or(10_000);
    let seed = args.next().and_then(|s| s.parse().ok()).unwrap_or(7);
    let report = run_verification(draws, seed);
    println!("{report:#?}");
    println!("passed: {}", report.passed());
    if !report.passed() {
        std::process::exit(2);
    }
}
