//! Runs every figure preset at reduced resolution and writes one CSV per
//! figure into the given directory (default: current directory).
//!
//!     cargo run --example figure_presets -- /tmp/figures

use std::fs::File;
use std::io::BufWriter;
use std::path::PathBuf;

use polarizer::config::{OutputFormat, RunConfig};
use polarizer::output::{write_records, Metadata, RECORD_SCHEMA};
use polarizer::sweep::preset;
use polarizer::Figure;

fn main() -> polarizer::Result<()> {
    let dir = std::env::args()
        .nth(1)
        .map_or_else(|| PathBuf::from("."), PathBuf::from);
    let config = RunConfig::default();
    for figure in Figure::ALL {
        let spec = preset(figure).with_count(201)?;
        let records = spec.run()?;
        let path = dir.join(format!("{}.csv", figure.name()));
        let mut out = BufWriter::new(File::create(&path)?);
        Metadata::new("figure", RECORD_SCHEMA, &config)
            .with("figure", figure.name())
            .with("description", spec.description)
            .write(&mut out, OutputFormat::Csv)?;
        let names: Vec<&str> = spec.axes.iter().map(|a| a.parameter.name()).collect();
        write_records(&mut out, OutputFormat::Csv, &names, &records)?;
        println!(
            "{}: {} records -> {}",
            figure.name(),
            records.len(),
            path.display()
        );
    }
    Ok(())
}
