//! Particle parameters and every derived scale of the model.
//!
//! A particle of rest mass `M0` moving with initial speed `v0` drags a
//! cloud of rest mass `m0 = M0 v0^2/c^2`. All lengths, times and
//! frequencies of the model follow from these four numbers plus the
//! action constant `h`.

use crate::error::{Error, Result};

/// Input parameters of a single particle-cloud system.
///
/// Construction enforces the coupling constraint `m0 = M0 v0^2/c^2`;
/// use [`ParticleParams::with_cloud_mass`] to override it for
/// exploratory runs (the override is flagged so downstream output can
/// mark the run as non-standard).
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct ParticleParams {
    /// Rest mass of the particle.
    pub rest_mass: f64,
    /// Rest mass of the cloud.
    pub cloud_rest_mass: f64,
    /// Initial particle speed, strictly inside (0, c).
    pub v0: f64,
    /// Speed of light.
    pub c: f64,
    /// Action constant (Planck constant in physical units).
    pub h: f64,
    /// Total number of emitted excitations making up the cloud.
    pub inerton_count: u32,
    /// True when `cloud_rest_mass` was supplied freely instead of being
    /// derived from the coupling constraint.
    pub free_cloud_mass: bool,
}

impl ParticleParams {
    /// Standard constructor: derives the cloud rest mass from the
    /// coupling constraint `m0 = M0 v0^2/c^2`.
    pub fn new(rest_mass: f64, v0: f64, c: f64, h: f64, inerton_count: u32) -> Result<Self> {
        Self::validate_base(rest_mass, v0, c, h, inerton_count)?;
        Ok(ParticleParams {
            rest_mass,
            cloud_rest_mass: rest_mass * v0 * v0 / (c * c),
            v0,
            c,
            h,
            inerton_count,
            free_cloud_mass: false,
        })
    }

    /// Escape hatch: accept an arbitrary positive cloud rest mass.
    pub fn with_cloud_mass(
        rest_mass: f64,
        cloud_rest_mass: f64,
        v0: f64,
        c: f64,
        h: f64,
        inerton_count: u32,
    ) -> Result<Self> {
        Self::validate_base(rest_mass, v0, c, h, inerton_count)?;
        if !(cloud_rest_mass > 0.0) {
            return Err(Error::domain("cloud rest mass must be positive"));
        }
        Ok(ParticleParams {
            rest_mass,
            cloud_rest_mass,
            v0,
            c,
            h,
            inerton_count,
            free_cloud_mass: true,
        })
    }

    fn validate_base(rest_mass: f64, v0: f64, c: f64, h: f64, inerton_count: u32) -> Result<()> {
        if !(rest_mass > 0.0) {
            return Err(Error::domain("rest mass must be positive"));
        }
        if !(c > 0.0) {
            return Err(Error::domain("speed of light must be positive"));
        }
        if !(h > 0.0) {
            return Err(Error::domain("action constant must be positive"));
        }
        if inerton_count < 1 {
            return Err(Error::domain("inerton count must be at least 1"));
        }
        if !(v0 > 0.0) {
            return Err(Error::domain(
                "initial speed must be strictly positive (the rest case is degenerate)",
            ));
        }
        if v0 >= c {
            return Err(Error::domain("superluminal input"));
        }
        Ok(())
    }

    /// Lorentz factor 1/sqrt(1 - v0^2/c^2) for these parameters.
    pub fn lorentz_factor(&self) -> f64 {
        1.0 / (1.0 - (self.v0 / self.c).powi(2)).sqrt()
    }

    /// Reduced action constant h/2pi.
    pub fn hbar(&self) -> f64 {
        self.h / std::f64::consts::TAU
    }
}

/// Relativistic mass M0/sqrt(1 - v0^2/c^2).
///
/// Unlike [`ParticleParams`], `v0 = 0` is accepted here; the rest value
/// is simply `m0`.
pub fn relativistic_mass(rest_mass: f64, v0: f64, c: f64) -> Result<f64> {
    if !(rest_mass > 0.0) {
        return Err(Error::domain("rest mass must be positive"));
    }
    if !(c > 0.0) {
        return Err(Error::domain("speed of light must be positive"));
    }
    if v0 < 0.0 {
        return Err(Error::domain("speed must be nonnegative"));
    }
    if v0 >= c {
        return Err(Error::domain("superluminal input"));
    }
    Ok(rest_mass / (1.0 - (v0 / c).powi(2)).sqrt())
}

/// Every scale derived from a parameter set.
///
/// Relations maintained by construction:
///   wavelength  = h / (mass * v0)
///   period      = wavelength / v0          (interval between collisions;
///                                           the oscillation period is 2*period)
///   omega       = pi / period
///   nu          = 1 / (2*period)
///   cloud_amplitude = wavelength * c / v0
///   range_rest   = h / (M0 c)
///   range_moving = h / (mass * c) = range_rest * sqrt(1 - v0^2/c^2)
///   nu_rel      = sqrt(p^2 c^2 + M0^2 c^4) / h with p = mass * v0
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct DerivedScales {
    /// Relativistic particle mass M.
    pub mass: f64,
    /// Relativistic cloud mass m.
    pub cloud_mass: f64,
    /// Spatial oscillation period lambda (the de Broglie length of the model).
    pub wavelength: f64,
    /// Time between particle-cloud collisions T.
    pub period: f64,
    /// Cyclic frequency omega = pi/T.
    pub omega: f64,
    /// Oscillation frequency nu = 1/(2T).
    pub nu: f64,
    /// Maximum cloud excursion scale Lambda = lambda c/v0.
    pub cloud_amplitude: f64,
    /// Size of the deformed region around the particle at rest, h/(M0 c).
    pub range_rest: f64,
    /// Contracted size of that region at speed v0, h/(M c).
    pub range_moving: f64,
    /// Frequency carried by the total energy, sqrt(p^2 c^2 + M0^2 c^4)/h.
    pub nu_rel: f64,
    /// The parameters these scales were derived from.
    pub params: ParticleParams,
}

/// Populate every derived scale from a validated parameter set.
pub fn derive_scales(params: &ParticleParams) -> DerivedScales {
    let gamma = params.lorentz_factor();
    let mass = params.rest_mass * gamma;
    let cloud_mass = params.cloud_rest_mass * gamma;
    let wavelength = params.h / (mass * params.v0);
    let period = wavelength / params.v0;
    let omega = std::f64::consts::PI / period;
    let nu = 1.0 / (2.0 * period);
    let cloud_amplitude = wavelength * params.c / params.v0;
    let range_rest = params.h / (params.rest_mass * params.c);
    let range_moving = params.h / (mass * params.c);
    let momentum = mass * params.v0;
    let nu_rel = ((momentum * params.c).powi(2)
        + (params.rest_mass * params.c * params.c).powi(2))
    .sqrt()
        / params.h;
    DerivedScales {
        mass,
        cloud_mass,
        wavelength,
        period,
        omega,
        nu,
        cloud_amplitude,
        range_rest,
        range_moving,
        nu_rel,
        params: *params,
    }
}

impl DerivedScales {
    pub fn from_params(params: &ParticleParams) -> DerivedScales {
        derive_scales(params)
    }

    /// Mean particle speed over one collision interval, v0 (1 - 2/pi).
    pub fn mean_speed(&self) -> f64 {
        self.params.v0 * (1.0 - 2.0 / std::f64::consts::PI)
    }

    /// Kinetic energy constant of the oscillator description, M v0^2 / 2.
    pub fn oscillator_energy(&self) -> f64 {
        self.mass * self.params.v0 * self.params.v0 / 2.0
    }
}

/// Energy bookkeeping of the deformed region around the particle.
///
/// The region's oscillator quantum must balance the particle energy:
/// hbar * omega_rest = M0 c^2 at rest and hbar * omega_moving = M c^2 in
/// motion, so both residuals are zero up to floating-point rounding.
/// `nu_rel` is carried along to exhibit nu_rel = omega_moving / 2pi.
#[derive(Debug, Clone, Copy)]
pub struct SingularityBalance {
    /// Oscillator frequency of the region around the particle at rest, M0 c^2 / hbar.
    pub omega_rest: f64,
    /// Oscillator frequency of the region around the moving particle, M c^2 / hbar.
    pub omega_moving: f64,
    /// hbar * omega_rest - M0 c^2.
    pub residual_rest: f64,
    /// hbar * omega_moving - M c^2.
    pub residual_moving: f64,
    /// Total-energy frequency, equal to omega_moving / 2pi.
    pub nu_rel: f64,
}

/// Balance the deformed-region oscillator energies against the particle
/// rest and total energies.
pub fn singularity_balance(params: &ParticleParams) -> SingularityBalance {
    let hbar = params.hbar();
    let c2 = params.c * params.c;
    let mass = params.rest_mass * params.lorentz_factor();
    let omega_rest = params.rest_mass * c2 / hbar;
    let omega_moving = mass * c2 / hbar;
    let scales = derive_scales(params);
    SingularityBalance {
        omega_rest,
        omega_moving,
        residual_rest: hbar * omega_rest - params.rest_mass * c2,
        residual_moving: hbar * omega_moving - mass * c2,
        nu_rel: scales.nu_rel,
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use approx::{assert_relative_eq, assert_ulps_eq};
    use std::f64::consts::{PI, TAU};

    #[test]
    fn relativistic_mass_at_rest_is_identity() {
        assert_eq!(relativistic_mass(1.0, 0.0, 1.0).unwrap(), 1.0);
    }

    #[test]
    fn relativistic_mass_analytic_points() {
        // sqrt(1 - 0.36) = 0.8 exactly in the reals
        assert_relative_eq!(
            relativistic_mass(1.0, 0.6, 1.0).unwrap(),
            1.25,
            max_relative = 1e-15
        );
        assert_relative_eq!(
            relativistic_mass(2.0, 0.8, 1.0).unwrap(),
            10.0 / 3.0,
            max_relative = 1e-15
        );
    }

    #[test]
    fn relativistic_mass_rejects_bad_inputs() {
        assert!(relativistic_mass(1.0, 1.0, 1.0).is_err());
        assert!(relativistic_mass(1.0, 1.5, 1.0).is_err());
        assert!(relativistic_mass(0.0, 0.5, 1.0).is_err());
        assert!(relativistic_mass(-1.0, 0.5, 1.0).is_err());
    }

    #[test]
    fn params_reject_degenerate_speeds() {
        assert!(ParticleParams::new(1.0, 0.0, 1.0, TAU, 10).is_err());
        assert!(ParticleParams::new(1.0, 1.0, 1.0, TAU, 10).is_err());
        let err = ParticleParams::new(1.0, 1.5, 1.0, TAU, 10).unwrap_err();
        assert!(err.to_string().contains("superluminal"));
    }

    #[test]
    fn cloud_mass_constraint_enforced() {
        let p = ParticleParams::new(2.0, 0.5, 1.0, TAU, 10).unwrap();
        assert_relative_eq!(p.cloud_rest_mass, 2.0 * 0.25, max_relative = 1e-15);
        assert!(!p.free_cloud_mass);
        let q = ParticleParams::with_cloud_mass(2.0, 0.1, 0.5, 1.0, TAU, 10).unwrap();
        assert!(q.free_cloud_mass);
        assert_eq!(q.cloud_rest_mass, 0.1);
    }

    #[test]
    fn derive_scales_half_light_speed() {
        // M = 1/sqrt(0.75), lambda = h/(M v0) = sqrt(3) for h = 1
        let p = ParticleParams::new(1.0, 0.5, 1.0, 1.0, 10).unwrap();
        let s = derive_scales(&p);
        assert_relative_eq!(s.mass, 1.0 / 0.75f64.sqrt(), max_relative = 1e-15);
        assert_relative_eq!(s.wavelength, 3.0f64.sqrt(), max_relative = 1e-14);
        assert_relative_eq!(s.wavelength, 1.7320508075688772, max_relative = 1e-12);
    }

    #[test]
    fn amplitude_relations_hold_exactly() {
        for &v0 in &[0.1, 0.25, 0.5, 0.77, 0.9] {
            let p = ParticleParams::new(1.3, v0, 1.0, TAU, 12).unwrap();
            let s = derive_scales(&p);
            // cloud amplitude over wavelength is exactly c/v0
            assert_ulps_eq!(s.cloud_amplitude / s.wavelength, 1.0 / v0, max_ulps = 2);
            // cloud amplitude equals the moving-region size times (c/v0)^2
            assert_relative_eq!(
                s.cloud_amplitude,
                s.range_moving * (1.0 / v0) * (1.0 / v0),
                max_relative = 1e-14
            );
            // contraction of the region size
            assert_relative_eq!(
                s.range_moving / s.range_rest,
                (1.0 - v0 * v0).sqrt(),
                max_relative = 1e-14
            );
            // lambda * M * v0 recovers h
            assert_relative_eq!(
                s.wavelength * s.mass * p.v0,
                p.h,
                max_relative = 1e-15
            );
        }
    }

    #[test]
    fn mass_increases_and_wavelength_decreases_with_speed() {
        let grid: Vec<f64> = (1..10).map(|i| i as f64 / 10.0).collect();
        let mut last_mass = 0.0;
        let mut last_wavelength = f64::INFINITY;
        for &v0 in &grid {
            let s = derive_scales(&ParticleParams::new(1.0, v0, 1.0, TAU, 10).unwrap());
            assert!(s.mass > last_mass);
            assert!(s.wavelength < last_wavelength);
            last_mass = s.mass;
            last_wavelength = s.wavelength;
        }
    }

    #[test]
    fn singularity_balance_definitional_values() {
        // near-rest limit, hbar = 1
        let p = ParticleParams::new(1.0, 1e-6, 1.0, TAU, 10).unwrap();
        let b = singularity_balance(&p);
        assert_relative_eq!(b.omega_rest, 1.0, max_relative = 1e-15);
        assert!(b.residual_rest.abs() < 1e-15);

        let p = ParticleParams::new(1.0, 0.6, 1.0, TAU, 10).unwrap();
        let b = singularity_balance(&p);
        assert_relative_eq!(b.omega_moving, 1.25, max_relative = 1e-14);
        assert!(b.residual_moving.abs() < 1e-14);
        // nu_rel * h = M c^2, i.e. nu_rel = omega_moving / 2pi
        assert_relative_eq!(b.nu_rel, b.omega_moving / TAU, max_relative = 1e-14);
    }

    #[test]
    fn nu_is_omega_over_2pi() {
        let p = ParticleParams::new(1.0, 0.37, 1.0, TAU, 10).unwrap();
        let s = derive_scales(&p);
        assert_relative_eq!(s.nu, s.omega / TAU, max_relative = 1e-15);
        assert_relative_eq!(s.omega, PI / s.period, max_relative = 1e-15);
    }
}
