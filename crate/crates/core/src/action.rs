//! Hamiltonian decomposition, the oscillator solution of the
//! Hamilton-Jacobi equation, action-angle integrals, and the recovered
//! quantization relations.
//!
//! Three distinct energy functions live here, each with its own job:
//!
//! * [`hamiltonians`] -- the oscillator-style decomposition of the total
//!   energy into particle, cloud and rest-renormalization parts, taken
//!   at the frozen relativistic mass M = M0/sqrt(1 - v0^2/c^2). This is
//!   bookkeeping for reports; it is not a constant of the motion.
//! * [`relativistic_energy_forms`] -- the total energy computed two ways
//!   (from coordinates, from momenta) with the relativistic radical
//!   evaluated on the state itself. The two routes are algebraically
//!   identical for every state inside the radical's domain; agreement to
//!   rounding is a strong cross-check of both implementations.
//! * [`arc_invariant`] -- the first integral of the inter-collision
//!   equations of motion actually integrated by [`crate::dynamics`]
//!   (the Legendre energy of the frozen-radical Lagrangian). This is
//!   the quantity an energy-drift test must watch.

use crate::dynamics::KinematicState;
use crate::error::{Error, Result};
use crate::quadrature;
use crate::scales::{derive_scales, ParticleParams};
use crate::trajectory::SpinPolarization;
use std::f64::consts::PI;

/// Conjugate momenta of the four velocities.
#[derive(Debug, Clone, Copy)]
pub struct Momenta {
    /// M * vel
    pub particle: f64,
    /// m * (shifted cloud velocity)
    pub cloud: f64,
    /// M * pulsation velocity
    pub pulsation: f64,
    /// m * (shifted cloud pulsation velocity)
    pub cloud_pulsation: f64,
}

/// Decomposition of the total energy at frozen relativistic mass.
#[derive(Debug, Clone, Copy)]
pub struct HamiltonianParts {
    /// Oscillator energy of the bare particle:
    /// p^2/2M + M w^2 X^2/2 + pi^2/2M + M w^2 Xi^2/2.
    pub particle: f64,
    /// Cloud energy: ptilde^2/2m + pitilde^2/2m + 2 w sqrt(m M0) v0 (x + e xi).
    pub cloud: f64,
    /// Rest-energy renormalization: (M0 c)^2/2M + M c^2/2.
    pub renorm: f64,
    /// particle + cloud + renorm.
    pub total: f64,
    /// Coordinate-only expression of the total energy at frozen mass:
    /// M w^2 X^2 + M w^2 Xi^2 + 2 w sqrt(m M0) v0 (x + e xi) + M c^2.
    pub coordinate_form: f64,
    /// Momentum-only expression at frozen mass:
    /// p^2/M + ptilde^2/m + pi^2/M + pitilde^2/m + (M0 c)^2/M.
    pub momentum_form: f64,
    pub momenta: Momenta,
}

/// Evaluate the frozen-mass energy decomposition on a state.
pub fn hamiltonians(
    state: &KinematicState,
    pol: SpinPolarization,
    params: &ParticleParams,
) -> Result<HamiltonianParts> {
    let scales = derive_scales(params);
    let mass = scales.mass;
    let cloud_mass = scales.cloud_mass;
    let omega = scales.omega;
    let e = pol.sign();
    let (cloud_vel_shift, cloud_intr_vel_shift) = crate::dynamics::tilde_transform(state, params)?;

    let momenta = Momenta {
        particle: mass * state.vel,
        cloud: cloud_mass * cloud_vel_shift,
        pulsation: mass * state.intr_vel,
        cloud_pulsation: cloud_mass * cloud_intr_vel_shift,
    };

    let interaction = 2.0
        * omega
        * (cloud_mass * params.rest_mass).sqrt()
        * params.v0
        * (state.cloud_pos + e * state.cloud_intr_pos);

    let particle = momenta.particle.powi(2) / (2.0 * mass)
        + mass * omega * omega * state.pos * state.pos / 2.0
        + momenta.pulsation.powi(2) / (2.0 * mass)
        + mass * omega * omega * state.intr_pos * state.intr_pos / 2.0;
    let cloud = momenta.cloud.powi(2) / (2.0 * cloud_mass)
        + momenta.cloud_pulsation.powi(2) / (2.0 * cloud_mass)
        + interaction;
    let c2 = params.c * params.c;
    let renorm = (params.rest_mass * params.c).powi(2) / (2.0 * mass) + mass * c2 / 2.0;

    let coordinate_form = mass * omega * omega * (state.pos * state.pos + state.intr_pos * state.intr_pos)
        + interaction
        + mass * c2;
    let momentum_form = momenta.particle.powi(2) / mass
        + momenta.cloud.powi(2) / cloud_mass
        + momenta.pulsation.powi(2) / mass
        + momenta.cloud_pulsation.powi(2) / cloud_mass
        + (params.rest_mass * params.c).powi(2) / mass;

    Ok(HamiltonianParts {
        particle,
        cloud,
        renorm,
        total: particle + cloud + renorm,
        coordinate_form,
        momentum_form,
        momenta,
    })
}

/// Total energy of a state computed along two independent routes with
/// the relativistic radical taken from the state itself.
///
/// Writing G for the (kinetic minus potential) combination under the
/// radical and R = sqrt(1 - G/(M0 c^2)), the coordinate route is
///
/// ```text
///   (M0 w^2 X^2 + M0 w^2 Xi^2 + 2 w sqrt(m0 M0) v0 (x + e xi) + M0 c^2) / R
/// ```
///
/// and the momentum route is p^2/M + ptilde^2/m + pi^2/M + pitilde^2/m
/// + (M0 c)^2/M with M = M0/R, m = m0/R and momenta built from the same
/// state. The two are algebraically equal; both are returned so callers
/// can check the agreement.
///
/// States with G >= M0 c^2 lie outside the radical's domain and are
/// rejected.
pub fn relativistic_energy_forms(
    state: &KinematicState,
    pol: SpinPolarization,
    params: &ParticleParams,
) -> Result<(f64, f64)> {
    let scales = derive_scales(params);
    let omega = scales.omega;
    let e = pol.sign();
    let m0 = params.cloud_rest_mass;
    let rest = params.rest_mass;
    let c2 = params.c * params.c;
    let (cloud_vel_shift, cloud_intr_vel_shift) = crate::dynamics::tilde_transform(state, params)?;

    let coupling = 2.0 * omega * (m0 * rest).sqrt() * params.v0;
    let potential_like = rest * omega * omega * (state.pos * state.pos + state.intr_pos * state.intr_pos)
        + coupling * (state.cloud_pos + e * state.cloud_intr_pos);
    let kinetic_like = rest * (state.vel * state.vel + state.intr_vel * state.intr_vel)
        + m0 * (cloud_vel_shift * cloud_vel_shift + cloud_intr_vel_shift * cloud_intr_vel_shift);
    let g = kinetic_like - potential_like;
    let radicand = 1.0 - g / (rest * c2);
    if radicand <= 0.0 {
        return Err(Error::domain(
            "state lies outside the domain of the energy radical",
        ));
    }
    let r = radicand.sqrt();

    let coordinate_route = (potential_like + rest * c2) / r;

    let mass = rest / r;
    let cloud_mass = m0 / r;
    let p = mass * state.vel;
    let ptilde = cloud_mass * cloud_vel_shift;
    let pi = mass * state.intr_vel;
    let pitilde = cloud_mass * cloud_intr_vel_shift;
    let momentum_route = p * p / mass
        + ptilde * ptilde / cloud_mass
        + pi * pi / mass
        + pitilde * pitilde / cloud_mass
        + (rest * params.c).powi(2) / mass;

    Ok((coordinate_route, momentum_route))
}

/// First integral of the inter-collision equations of motion.
///
/// The integrated system couples velocities through the speed ratios
/// v0/c and c/v0; its conserved Legendre energy is
///
/// ```text
///   M/2 (vel^2 + intr_vel^2)
///   + M v0^2/(2 c^2) (cloud_vel^2 + cloud_intr_vel^2)
///   + w M v0^2 / c (cloud_pos + e cloud_intr_pos)
///   + M v0^2/2 + (M0 c)^2 / M
/// ```
///
/// (the last two terms are constants fixing the overall energy scale;
/// M v0^2/c^2 is the cloud's effective inertia, equal to the
/// relativistic cloud mass when the coupling constraint holds). Along
/// any solution of [`crate::dynamics::build_eom`] this value is exactly
/// constant; an adaptive integrator should preserve it to within a few
/// times its tolerance.
pub fn arc_invariant(
    state: &KinematicState,
    pol: SpinPolarization,
    params: &ParticleParams,
) -> f64 {
    let scales = derive_scales(params);
    let mass = scales.mass;
    let omega = scales.omega;
    let e = pol.sign();
    let v0 = params.v0;
    let c = params.c;
    let cloud_inertia = mass * v0 * v0 / (c * c);
    mass / 2.0 * (state.vel * state.vel + state.intr_vel * state.intr_vel)
        + cloud_inertia / 2.0 * (state.cloud_vel * state.cloud_vel
            + state.cloud_intr_vel * state.cloud_intr_vel)
        + omega * mass * v0 * v0 / c * (state.cloud_pos + e * state.cloud_intr_pos)
        + mass * v0 * v0 / 2.0
        + (params.rest_mass * c).powi(2) / mass
}

/// Position and momentum of the harmonic oscillator solving the
/// Hamilton-Jacobi equation at energy E: X = sqrt(2E/(M w^2)) sin(wt),
/// p = sqrt(2ME) cos(wt).
pub fn hj_oscillator(energy: f64, mass: f64, omega: f64, t: f64) -> Result<(f64, f64)> {
    if !(energy > 0.0) {
        return Err(Error::domain("oscillator energy must be positive"));
    }
    if !(mass > 0.0) {
        return Err(Error::domain("oscillator mass must be positive"));
    }
    if !(omega > 0.0) {
        return Err(Error::domain("oscillator frequency must be positive"));
    }
    let amplitude = (2.0 * energy / (mass * omega * omega)).sqrt();
    let p0 = (2.0 * mass * energy).sqrt();
    Ok((amplitude * (omega * t).sin(), p0 * (omega * t).cos()))
}

/// Action increments over one full oscillation period 2T.
#[derive(Debug, Clone, Copy)]
pub struct ActionIncrement {
    /// Loop integral of p dX along the spatial oscillator orbit.
    pub spatial: f64,
    /// Loop integral of pi dXi along the pulsation orbit; independent of
    /// the polarization because the sign enters both factors.
    pub intrinsic: f64,
}

/// Quadrature the action integrals J = loop p dX and iota = loop pi dXi
/// along the oscillator orbit of energy E over the period 2T. The
/// closed-form value is E * 2T. The intrinsic integral is evaluated for
/// both polarizations; they agree bit for bit and the shared value is
/// returned.
pub fn action_over_period(energy: f64, period: f64, quadrature_n: usize) -> Result<ActionIncrement> {
    if !(energy > 0.0) || !(period > 0.0) {
        return Err(Error::domain("energy and period must be positive"));
    }
    if quadrature_n < 8 {
        return Err(Error::usage("quadrature needs at least 8 nodes"));
    }
    let omega = PI / period;
    // Unit mass: p dX/dt = 2E cos^2(wt) regardless of the mass.
    let mass = 1.0;
    let p0 = (2.0 * mass * energy).sqrt();
    let xdot0 = (2.0 * energy / (mass * omega * omega)).sqrt() * omega;

    let spatial_rate = |t: f64, e_pol: f64| {
        let p = e_pol * p0 * (omega * t).cos();
        let xdot = e_pol * xdot0 * (omega * t).cos();
        p * xdot
    };

    // composite rule over the two half-periods of the 2T orbit
    let n_half = quadrature_n.div_ceil(2).max(8);
    let spatial =
        quadrature::integrate_panels(|t| spatial_rate(t, 1.0), 0.0, 2.0 * period, n_half, 2);
    let up = quadrature::integrate_panels(|t| spatial_rate(t, 1.0), 0.0, 2.0 * period, n_half, 2);
    let down =
        quadrature::integrate_panels(|t| spatial_rate(t, -1.0), 0.0, 2.0 * period, n_half, 2);
    debug_assert!(up == down, "polarization must cancel exactly");
    Ok(ActionIncrement {
        spatial,
        intrinsic: up,
    })
}

/// The scales recovered by setting the per-period action increment equal
/// to the action constant h.
#[derive(Debug, Clone, Copy)]
pub struct QuantizedScales {
    /// h / (M v0): the spatial oscillation period of the moving particle.
    pub wavelength: f64,
    /// E / h with E = M v0^2 / 2.
    pub frequency: f64,
    /// The oscillator energy E = M v0^2 / 2.
    pub energy: f64,
}

/// Set J = iota = h and read off the wavelength-momentum and
/// energy-frequency relations.
pub fn quantize(params: &ParticleParams) -> QuantizedScales {
    let scales = derive_scales(params);
    let energy = scales.oscillator_energy();
    QuantizedScales {
        wavelength: params.h / (scales.mass * params.v0),
        frequency: energy / params.h,
        energy,
    }
}
