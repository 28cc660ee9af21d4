//! Stationary-state oracle.
//!
//! Independent route to the scattering amplitudes: the eigenvalue problem
//! H|ψ⟩ = ω|ψ⟩ with a plane-wave scattering ansatz reduces to five linear
//! equations in the unknowns (t, r, f₂, f₃, f₄), obtained by integrating the
//! photon equations across the point interaction at x = 0. The field at the
//! origin is taken as the mean of its one-sided limits, φ_R(0) = (1 + t)/2 and
//! φ_L(0) = r/2.
//!
//! Rows: two delta-function jump conditions (right and left movers), then the
//! amplitude equations of levels |2⟩, |3⟩ and |4⟩.

use num_complex::Complex64;

use crate::error::{Error, Result};
use crate::params::{ModelParams, ProbeEnergy};

const I: Complex64 = Complex64 { re: 0.0, im: 1.0 };
const ZERO: Complex64 = Complex64 { re: 0.0, im: 0.0 };

/// Pivot threshold relative to the largest initial matrix entry.
pub const PIVOT_TOL: f64 = 1e-14;

/// Unknown ordering used by [`LinearSystem5`].
pub const UNKNOWNS: [&str; 5] = ["t", "r", "f2", "f3", "f4"];

/// Dense 5×5 complex system `matrix · u = rhs`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct LinearSystem5 {
    pub matrix: [[Complex64; 5]; 5],
    pub rhs: [Complex64; 5],
}

impl LinearSystem5 {
    /// Residual ‖M·u − b‖₂.
    pub fn residual(&self, u: &[Complex64; 5]) -> f64 {
        self.matrix
            .iter()
            .zip(&self.rhs)
            .map(|(row, b)| {
                let lhs: Complex64 = row.iter().zip(u).map(|(m, x)| m * x).sum();
                (lhs - b).norm_sqr()
            })
            .sum::<f64>()
            .sqrt()
    }

    /// Frobenius norm of the matrix.
    pub fn matrix_norm(&self) -> f64 {
        self.matrix
            .iter()
            .flatten()
            .map(|m| m.norm_sqr())
            .sum::<f64>()
            .sqrt()
    }
}

/// Full stationary solution. Atomic amplitudes are relative to unit incident flux.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct OracleSolution {
    pub t: Complex64,
    pub r: Complex64,
    pub f2: Complex64,
    pub f3: Complex64,
    pub f4: Complex64,
}

pub fn assemble_system(params: &ModelParams, probe: &ProbeEnergy) -> LinearSystem5 {
    let w = probe.omega;
    let vg = Complex64::new(params.v_group, 0.0);
    let v1 = Complex64::new(params.v1(), 0.0);
    let v2 = Complex64::new(params.v2(), 0.0);
    let rabi = Complex64::new(params.rabi, 0.0);
    let d2 = Complex64::new(params.omega2 - w, -params.gamma2 / 2.0);
    let d3 = Complex64::new(params.omega3 - w, -params.gamma3 / 2.0);
    let d4 = Complex64::new(params.omega2 + params.delta_drive - w, -params.gamma4 / 2.0);
    let half_v1 = v1 / 2.0;
    let half_v2 = v2 / 2.0;

    let matrix = [
        [-I * vg, ZERO, v1, v2, ZERO],
        [ZERO, -I * vg, v1, v2, ZERO],
        [half_v1, half_v1, d2, ZERO, rabi],
        [half_v2, half_v2, ZERO, d3, ZERO],
        [ZERO, ZERO, rabi, ZERO, d4],
    ];
    let rhs = [-I * vg, ZERO, -half_v1, -half_v2, ZERO];
    LinearSystem5 { matrix, rhs }
}

/// Gaussian elimination with partial pivoting.
pub fn solve_linear(system: &LinearSystem5) -> Result<[Complex64; 5]> {
    let mut a = system.matrix;
    let mut b = system.rhs;
    let largest = a.iter().flatten().map(|m| m.norm()).fold(0.0, f64::max);
    let threshold = PIVOT_TOL * largest;

    for col in 0..5 {
        let (pivot_row, pivot) =
            (col..5)
                .map(|row| (row, a[row][col].norm()))
                .fold(
                    (col, -1.0),
                    |best, cur| if cur.1 > best.1 { cur } else { best },
                );
        if pivot.is_nan() || pivot <= threshold || largest == 0.0 {
            return Err(Error::SingularSystem {
                column: col,
                pivot,
                threshold,
            });
        }
        a.swap(col, pivot_row);
        b.swap(col, pivot_row);

        for row in col + 1..5 {
            let factor = a[row][col] / a[col][col];
            if factor == ZERO {
                continue;
            }
            let pivot_row = a[col];
            for (x, p) in a[row][col..].iter_mut().zip(&pivot_row[col..]) {
                *x -= factor * p;
            }
            let delta = factor * b[col];
            b[row] -= delta;
        }
    }

    let mut u = [ZERO; 5];
    for row in (0..5).rev() {
        let tail: Complex64 = (row + 1..5).map(|k| a[row][k] * u[k]).sum();
        u[row] = (b[row] - tail) / a[row][row];
    }
    Ok(u)
}

pub fn oracle_scatter(params: &ModelParams, probe: &ProbeEnergy) -> Result<OracleSolution> {
    let [t, r, f2, f3, f4] = solve_linear(&assemble_system(params, probe))?;
    Ok(OracleSolution { t, r, f2, f3, f4 })
}
