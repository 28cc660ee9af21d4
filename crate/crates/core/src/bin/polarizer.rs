use std::fs::File;
use std::io::{self, BufWriter, Write};
use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand};
use polarizer::app::{error_exit_code, run, Command};
use polarizer::config::{parse_config, OutputFormat, RunConfig};
use polarizer::{Error, Figure, SweepAxis, SweepParameter};

/// Single-atom polarizer simulator.
#[derive(Debug, Parser)]
#[command(name = "polarizer", version)]
struct Cli {
    /// JSON run configuration.
    #[arg(long, global = true)]
    config: Option<PathBuf>,
    /// Output file (default: stdout).
    #[arg(long, global = true)]
    output: Option<PathBuf>,
    /// csv or jsonl.
    #[arg(long, global = true)]
    format: Option<String>,
    #[command(subcommand)]
    command: Sub,
}

#[derive(Debug, Args)]
struct AxisArgs {
    /// delta, rabi, delta_drive, big_gamma1, big_gamma2 or alpha.
    #[arg(long)]
    param: Option<String>,
    #[arg(long, allow_hyphen_values = true)]
    start: Option<f64>,
    #[arg(long, allow_hyphen_values = true)]
    stop: Option<f64>,
    #[arg(long)]
    count: Option<usize>,
    /// full, left, right or polarized.
    #[arg(long)]
    quantity: Option<String>,
    /// Polarization angle for the polarized quantity.
    #[arg(long)]
    alpha: Option<f64>,
}

#[derive(Debug, Args)]
struct InnerAxisArgs {
    #[arg(long)]
    param2: Option<String>,
    #[arg(long, allow_hyphen_values = true)]
    start2: Option<f64>,
    #[arg(long, allow_hyphen_values = true)]
    stop2: Option<f64>,
    #[arg(long)]
    count2: Option<usize>,
}

#[derive(Debug, Subcommand)]
enum Sub {
    /// 1D sweep (default: delta over [-50, 50]).
    Spectrum(AxisArgs),
    /// 2D sweep, outer axis first (default: delta x rabi).
    Sweep2d {
        #[command(flatten)]
        outer: AxisArgs,
        #[command(flatten)]
        inner: InnerAxisArgs,
    },
    /// Reproduce a figure: fig2a, fig2b, fig3a, fig3b, fig4a, fig4b.
    Figure {
        name: String,
        /// Points per axis (default 1001).
        #[arg(long)]
        count: Option<usize>,
    },
    /// Fidelity over a delta x rabi grid.
    Fidelity {
        #[command(flatten)]
        outer: AxisArgs,
        #[command(flatten)]
        inner: InnerAxisArgs,
    },
    /// Monte Carlo single-photon Malus's law.
    Malus {
        #[arg(long)]
        alpha: Option<f64>,
        #[arg(long)]
        n: Option<u64>,
        #[arg(long)]
        seed: Option<u64>,
        #[arg(long)]
        z: Option<f64>,
        /// Use the lossless operating point (rabi 50, delta 0).
        #[arg(long)]
        ideal: bool,
    },
    /// Closed form versus oracle over seeded random draws.
    Verify {
        #[arg(long)]
        draws: Option<usize>,
        #[arg(long)]
        seed: Option<u64>,
    },
}

fn axis_from(
    base: Option<SweepAxis>,
    default_param: SweepParameter,
    param: &Option<String>,
    start: Option<f64>,
    stop: Option<f64>,
    count: Option<usize>,
) -> polarizer::Result<Option<SweepAxis>> {
    if base.is_none() && param.is_none() && start.is_none() && stop.is_none() && count.is_none() {
        return Ok(None);
    }
    let mut axis = base.unwrap_or(SweepAxis {
        parameter: default_param,
        start: -50.0,
        stop: 50.0,
        count: 1001,
    });
    if let Some(p) = param {
        axis.parameter = p.parse()?;
    }
    axis.start = start.unwrap_or(axis.start);
    axis.stop = stop.unwrap_or(axis.stop);
    axis.count = count.unwrap_or(axis.count);
    Ok(Some(axis))
}

fn apply_axes(
    config: &mut RunConfig,
    outer: &AxisArgs,
    inner: Option<&InnerAxisArgs>,
) -> polarizer::Result<()> {
    let existing = std::mem::take(&mut config.sweep.axes);
    let first = axis_from(
        existing.first().copied(),
        SweepParameter::Delta,
        &outer.param,
        outer.start,
        outer.stop,
        outer.count,
    )?;
    let second = match inner {
        Some(i) => axis_from(
            existing.get(1).copied(),
            SweepParameter::Rabi,
            &i.param2,
            i.start2,
            i.stop2,
            i.count2,
        )?,
        None => existing.get(1).copied(),
    };
    config.sweep.axes = first.into_iter().chain(second).collect();
    if let Some(q) = &outer.quantity {
        config.sweep.quantity = q.clone();
    }
    if let Some(alpha) = outer.alpha {
        config.sweep.alpha = alpha;
    }
    Ok(())
}

fn build(cli: &Cli) -> polarizer::Result<(RunConfig, Command)> {
    let mut config = match &cli.config {
        Some(path) => parse_config(&std::fs::read_to_string(path)?)?,
        None => RunConfig::default(),
    };
    if let Some(path) = &cli.output {
        config.output.path = Some(path.display().to_string());
    }
    if let Some(format) = &cli.format {
        config.output.format = format.parse::<OutputFormat>()?;
    }

    let command = match &cli.command {
        Sub::Spectrum(axis) => {
            apply_axes(&mut config, axis, None)?;
            Command::Spectrum
        }
        Sub::Sweep2d { outer, inner } => {
            apply_axes(&mut config, outer, Some(inner))?;
            Command::Sweep2d
        }
        Sub::Fidelity { outer, inner } => {
            apply_axes(&mut config, outer, Some(inner))?;
            Command::Fidelity
        }
        Sub::Figure { name, count } => Command::Figure {
            figure: name.parse::<Figure>()?,
            count: *count,
        },
        Sub::Malus {
            alpha,
            n,
            seed,
            z,
            ideal,
        } => {
            if *ideal {
                config.model = polarizer::ModelParams::ideal_polarizer();
                config.probe = Default::default();
            }
            let mc = &mut config.malus;
            mc.alpha = alpha.unwrap_or(mc.alpha);
            mc.n = n.unwrap_or(mc.n);
            mc.seed = seed.unwrap_or(mc.seed);
            mc.z = z.unwrap_or(mc.z);
            Command::Malus
        }
        Sub::Verify { draws, seed } => {
            config.verify.draws = draws.unwrap_or(config.verify.draws);
            config.verify.seed = seed.unwrap_or(config.verify.seed);
            Command::Verify
        }
    };
    config.validate()?;
    Ok((config, command))
}

fn execute(config: &RunConfig, command: &Command) -> polarizer::Result<i32> {
    let mut out: Box<dyn Write> = match &config.output.path {
        Some(path) => Box::new(BufWriter::new(File::create(path)?)),
        None => Box::new(BufWriter::new(io::stdout().lock())),
    };
    let outcome = run(config, command, &mut out)?;
    out.flush().map_err(Error::from)?;
    Ok(outcome.exit_code())
}

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(cli) => cli,
        Err(err) => {
            let _ = err.print();
            return if err.use_stderr() {
                ExitCode::from(1)
            } else {
                ExitCode::SUCCESS
            };
        }
    };
    let result = build(&cli).and_then(|(config, command)| execute(&config, &command));
    match result {
        Ok(0) => ExitCode::SUCCESS,
        Ok(code) => {
            eprintln!("polarizer: check failed");
            ExitCode::from(code as u8)
        }
        Err(err) => {
            eprintln!("polarizer: {err}");
            ExitCode::from(error_exit_code(&err) as u8)
        }
    }
}
