//! Drives the command layer from an inline JSON configuration, the same path
//! the `polarizer` binary takes with `--config`.
//!
//!     cargo run --example config_run

use polarizer::app::{run, Command};
use polarizer::config::parse_config;

const CONFIG: &str = r#"{
    "model": { "rabi": 50, "gamma2": 0, "gamma3": 0, "gamma4": 0 },
    "sweep": {
        "axes": [{ "parameter": "alpha", "start": 0, "stop": 1.5707963267948966, "count": 7 }],
        "quantity": "polarized"
    },
    "output": { "format": "jsonl" }
}"#;

fn main() -> polarizer::Result<()> {
    let config = parse_config(CONFIG)?;
    let mut stdout = std::io::stdout().lock();
    let outcome = run(&config, &Command::Spectrum, &mut stdout)?;
    std::process::exit(outcome.exit_code());
}
