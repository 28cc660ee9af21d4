//! Single-photon scattering by a classically driven four-level atom in a
//! one-dimensional waveguide, used as a polarization filter.
//!
//! * [`scattering`]: closed-form transmission and reflection amplitudes, the
//!   per-polarization reductions and the polarizer fidelity.
//! * [`oracle`]: the same amplitudes from a 5×5 stationary linear system.
//! * [`sweep`]: deterministic 1D/2D grids and figure presets.
//! * [`malus`]: analytic and Monte Carlo single-photon Malus's law.
//! * [`verify`]: seeded randomized cross-checks.
//! * [`config`], [`output`], [`app`]: the command-line front end.
//!
//! Energies and rates are dimensionless, in units of the reference decay γ.

pub mod app;
pub mod config;
pub mod error;
pub mod malus;
pub mod oracle;
pub mod output;
pub mod params;
pub mod scattering;
pub mod sweep;
pub mod verify;

pub use error::{Error, Result};
pub use malus::{
    ci_check, malus_analytic, simulate_photons, CiReport, PolarizationState, TrialCounts,
};
pub use oracle::{assemble_system, oracle_scatter, solve_linear, LinearSystem5, OracleSolution};
pub use params::{ModelParams, ProbeEnergy};
pub use scattering::{
    amplitude_t_left, amplitude_t_right, amplitudes4, channel_amplitudes, fidelity, probabilities,
    Channel, ChannelProbs, ScatterAmps,
};
pub use sweep::{
    preset_figure, sweep1d, sweep2d, Figure, FigurePreset, Quantity, SweepAxis, SweepParameter,
    SweepRecord,
};
