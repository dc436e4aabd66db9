//! The pulsation degree of freedom in a magnetic field.
//!
//! With the induction along the third axis, the two transverse
//! generalized momentum components reduce to a dimensionless harmonic
//! oscillator (eB hbar / 2M)(P^2 + Q^2). Its lowest level is the
//! Gaussian chi = pi^(-1/4) exp(-Q^2/2) at eigenvalue eB hbar / 2M, and
//! the signed version of that level is the spin energy shift
//! +- e hbar B / 2M.

use crate::error::{Error, Result};
use crate::tridiag;
use crate::trajectory::SpinPolarization;

/// Magnetic-field environment of the oscillator problem.
#[derive(Debug, Clone, Copy)]
pub struct FieldConfig {
    /// Magnetic induction along the third axis, >= 0.
    pub induction: f64,
    /// Particle charge.
    pub charge: f64,
    /// Reduced action constant.
    pub hbar: f64,
    /// Relativistic particle mass.
    pub mass: f64,
}

impl FieldConfig {
    pub fn new(induction: f64, charge: f64, hbar: f64, mass: f64) -> Result<Self> {
        if induction < 0.0 {
            return Err(Error::domain("magnetic induction must be nonnegative"));
        }
        if !(charge > 0.0) || !(hbar > 0.0) || !(mass > 0.0) {
            return Err(Error::domain(
                "charge, action constant and mass must be positive",
            ));
        }
        Ok(FieldConfig {
            induction,
            charge,
            hbar,
            mass,
        })
    }

    /// Normalization constant sqrt(e hbar B) relating the transverse
    /// momenta to the dimensionless pair (Q, P). Only defined for B > 0.
    pub fn momentum_scale(&self) -> Result<f64> {
        if self.induction <= 0.0 {
            return Err(Error::domain(
                "the dimensionless variables need a positive induction",
            ));
        }
        Ok((self.charge * self.hbar * self.induction).sqrt())
    }

    /// Prefactor e hbar B / 2M multiplying (P^2 + Q^2).
    pub fn level_scale(&self) -> f64 {
        self.charge * self.hbar * self.induction / (2.0 * self.mass)
    }
}

/// Sampled lowest eigenpair of the discretized oscillator.
#[derive(Debug, Clone)]
pub struct OscillatorSolution {
    /// Lowest eigenvalue of (e hbar B / 2M)(P^2 + Q^2).
    pub epsilon: f64,
    /// Lowest eigenvalue of the dimensionless (P^2 + Q^2) operator
    /// (converges to 1 as the grid refines).
    pub dimensionless: f64,
    /// Eigenfunction samples on the grid, normalized so that
    /// sum(chi^2) * dq = 1.
    pub chi: Vec<f64>,
    /// Grid coordinates matching `chi`.
    pub grid: Vec<f64>,
    pub n_points: usize,
    pub q_max: f64,
}

/// Build the central-difference discretization of (P^2 + Q^2) on the
/// interior of a uniform grid over [-q_max, q_max] and return its `k`
/// smallest eigenvalues. Grid points include both boundaries, where the
/// eigenfunction is pinned to zero.
fn oscillator_matrix(n_points: usize, q_max: f64) -> (Vec<f64>, Vec<f64>, Vec<f64>, f64) {
    let dq = 2.0 * q_max / (n_points - 1) as f64;
    let interior = n_points - 2;
    let inv2 = 1.0 / (dq * dq);
    let mut diag = Vec::with_capacity(interior);
    let mut grid = Vec::with_capacity(interior);
    for i in 1..n_points - 1 {
        let q = -q_max + i as f64 * dq;
        grid.push(q);
        diag.push(2.0 * inv2 + q * q);
    }
    let offdiag = vec![-inv2; interior - 1];
    (diag, offdiag, grid, dq)
}

fn validate_grid(cfg: &FieldConfig, n_points: usize, q_max: f64) -> Result<()> {
    if cfg.induction <= 0.0 {
        return Err(Error::domain("the oscillator problem needs B > 0"));
    }
    if n_points < 201 {
        return Err(Error::usage("need at least 201 grid points"));
    }
    if n_points % 2 == 0 {
        return Err(Error::usage("grid point count must be odd"));
    }
    if q_max < 8.0 {
        return Err(Error::usage(
            "the grid must extend to at least 8 oscillator widths",
        ));
    }
    Ok(())
}

/// Lowest level of the dimensionless oscillator in the field `cfg`.
pub fn landau_ground_state(
    cfg: &FieldConfig,
    n_points: usize,
    q_max: f64,
) -> Result<OscillatorSolution> {
    validate_grid(cfg, n_points, q_max)?;
    let (diag, offdiag, grid, dq) = oscillator_matrix(n_points, q_max);
    let lowest = tridiag::lowest_eigenvalues(&diag, &offdiag, 1)?[0];
    let mut chi = tridiag::eigenvector(&diag, &offdiag, lowest)?;
    // rescale from unit Euclidean norm to unit L2 norm on the grid
    let scale = 1.0 / dq.sqrt();
    for v in &mut chi {
        *v *= scale;
    }
    Ok(OscillatorSolution {
        epsilon: cfg.level_scale() * lowest,
        dimensionless: lowest,
        chi,
        grid,
        n_points,
        q_max,
    })
}

/// The `k` lowest dimensionless eigenvalues of the discretized
/// (P^2 + Q^2) operator (they converge to 1, 3, 5, ...).
pub fn oscillator_levels(
    cfg: &FieldConfig,
    n_points: usize,
    q_max: f64,
    k: usize,
) -> Result<Vec<f64>> {
    validate_grid(cfg, n_points, q_max)?;
    let (diag, offdiag, _, _) = oscillator_matrix(n_points, q_max);
    tridiag::lowest_eigenvalues(&diag, &offdiag, k)
}

/// Normalized Gaussian ground state pi^(-1/4) exp(-Q^2/2) sampled at `q`.
pub fn gaussian_ground_state(q: f64) -> f64 {
    std::f64::consts::PI.powf(-0.25) * (-q * q / 2.0).exp()
}

/// L2 distance between the numeric eigenfunction and the Gaussian on the
/// solution's own grid.
pub fn gaussian_distance(sol: &OscillatorSolution) -> f64 {
    let dq = 2.0 * sol.q_max / (sol.n_points - 1) as f64;
    let sum: f64 = sol
        .grid
        .iter()
        .zip(&sol.chi)
        .map(|(q, chi)| {
            let diff = chi - gaussian_ground_state(*q);
            diff * diff
        })
        .sum();
    (sum * dq).sqrt()
}

/// Signed spin energy shift and third spin component.
///
/// Returns (epsilon, S3) with S3 = e_alpha hbar/2 and epsilon =
/// (eB/M) S3 = e_alpha e hbar B / 2M.
pub fn spin_energy_shift(cfg: &FieldConfig, pol: SpinPolarization) -> (f64, f64) {
    let s3 = pol.sign() * cfg.hbar / 2.0;
    let epsilon = cfg.charge * cfg.induction / cfg.mass * s3;
    (epsilon, s3)
}

/// Shift a spectrum value by the spin term: E -> E + (eB/M) S3.
pub fn renormalize_spectrum(energy: f64, cfg: &FieldConfig, pol: SpinPolarization) -> f64 {
    let (epsilon, _) = spin_energy_shift(cfg, pol);
    energy + epsilon
}
