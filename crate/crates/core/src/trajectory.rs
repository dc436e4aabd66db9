//! Closed-form trajectories of the particle, the r-th emitted excitation,
//! and the cloud as a whole.
//!
//! The particle advances with speed v0 (1 - |sin(pi t/T)|): it halts once
//! per collision interval T while the cloud carries the motion, then
//! recovers its full speed at every t = nT. The cloud excursion peaks
//! exactly when the particle is at rest.

use crate::error::{Error, Result};
use crate::scales::DerivedScales;
use std::f64::consts::PI;

/// Phase of the centre-of-mass pulsation: the pulsation either leads the
/// motion (`Up`) or opposes it (`Down`).
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum SpinPolarization {
    Up,
    Down,
}

impl SpinPolarization {
    /// Polarization sign e: +1 for `Up`, -1 for `Down`.
    pub fn sign(self) -> f64 {
        match self {
            SpinPolarization::Up => 1.0,
            SpinPolarization::Down => -1.0,
        }
    }

    pub const BOTH: [SpinPolarization; 2] = [SpinPolarization::Up, SpinPolarization::Down];
}

/// Kinematic data of the r-th emitted excitation out of N.
///
/// Excitations are emitted progressively slower (`launch_speed` falls
/// from v0 at r = 0 to zero at r = N) and live for a shrinking interval
/// `lifetime` = T (1 - r/N).
#[derive(Debug, Clone, Copy)]
pub struct InertonIndex {
    pub r: u32,
    /// Particle speed at the emission collision, v0 (1 - sin(pi r/2N)).
    pub launch_speed: f64,
    /// Time from emission to reabsorption, T (1 - r/N).
    pub lifetime: f64,
    /// Longitudinal travel scale, launch_speed * lifetime.
    pub wavelength: f64,
    /// Transverse travel scale, c * lifetime.
    pub amplitude: f64,
}

impl InertonIndex {
    pub fn new(r: u32, scales: &DerivedScales) -> Result<Self> {
        let n = scales.params.inerton_count;
        if r > n {
            return Err(Error::domain(format!(
                "excitation index {r} exceeds total count {n}"
            )));
        }
        let v0 = scales.params.v0;
        let launch_speed = v0 * (1.0 - (PI * r as f64 / (2.0 * n as f64)).sin());
        let lifetime = scales.period * (1.0 - r as f64 / n as f64);
        Ok(InertonIndex {
            r,
            launch_speed,
            lifetime,
            wavelength: launch_speed * lifetime,
            amplitude: scales.params.c * lifetime,
        })
    }
}

/// Number of whole collision intervals elapsed at time `t`, with
/// nearest-integer snapping (relative tolerance 1e-12) so that values a
/// rounding error away from a boundary count as exactly on it.
pub fn completed_periods(t: f64, period: f64) -> i64 {
    let s = t / period;
    let nearest = s.round();
    if (s - nearest).abs() <= 1e-12 * s.abs().max(1.0) {
        nearest as i64
    } else {
        s.floor() as i64
    }
}

/// Particle position and speed at proper time `t >= 0`.
pub fn particle_state(t: f64, scales: &DerivedScales) -> (f64, f64) {
    let v0 = scales.params.v0;
    let period = scales.period;
    let n = completed_periods(t, period) as f64;
    let phase = PI * t / period;
    let speed = v0 * (1.0 - phase.sin().abs());
    let sign = if (n as i64) % 2 == 0 { 1.0 } else { -1.0 };
    let position = v0 * t + (v0 * period / PI) * (sign * phase.cos() - (1.0 + 2.0 * n));
    (position, speed)
}

/// Centre-of-mass pulsation coordinates: the signed copy of the particle
/// trajectory, e * (X, Xdot).
pub fn intrinsic_state(t: f64, pol: SpinPolarization, scales: &DerivedScales) -> (f64, f64) {
    let (x, xdot) = particle_state(t, scales);
    (pol.sign() * x, pol.sign() * xdot)
}

/// State of the r-th excitation at local time `t_r` within its lifetime.
///
/// Returns (position, speed) of the longitudinal pulsation pair followed
/// by (position, speed) of the transverse pair. Only `0 <= t_r <=
/// lifetime` is meaningful; outside that window the closed forms do not
/// describe the motion and a domain error is returned.
pub fn inerton_state(
    t_r: f64,
    idx: &InertonIndex,
    pol: SpinPolarization,
    c: f64,
) -> Result<(f64, f64, f64, f64)> {
    if t_r < 0.0 || t_r > idx.lifetime {
        return Err(Error::domain(format!(
            "solution valid only within the excitation lifetime [0, {}], got t_r = {}",
            idx.lifetime, t_r
        )));
    }
    // r = N is fully degenerate (zero lifetime): only the launch instant exists.
    let phase = if idx.lifetime == 0.0 {
        0.0
    } else {
        PI * t_r / idx.lifetime
    };
    let e = pol.sign();
    let along_speed = e * idx.launch_speed * (1.0 - phase.sin());
    let along_pos = e
        * (idx.launch_speed * t_r
            + (idx.launch_speed * idx.lifetime / PI) * (phase.cos() - 1.0));
    let across_speed = e * c * phase.cos();
    let across_pos = e * (idx.amplitude / PI) * phase.sin();
    Ok((along_pos, along_speed, across_pos, across_speed))
}

/// Cloud displacement and velocity at proper time `t >= 0`.
///
/// The displacement 0 <= q <= Lambda/pi returns to zero at every
/// collision; the velocity is relaunched at +c there (its left limit is
/// -c: the cloud arrives at speed c and departs at speed c).
pub fn cloud_state(t: f64, scales: &DerivedScales) -> (f64, f64) {
    let period = scales.period;
    let n = completed_periods(t, period);
    let phase = PI * t / period;
    let q = (scales.cloud_amplitude / PI) * phase.sin().abs();
    let sign = if n % 2 == 0 { 1.0 } else { -1.0 };
    let qdot = sign * scales.params.c * phase.cos();
    (q, qdot)
}

/// Convert a path length along the trajectory to proper time, t = l/v
/// with v the mean speed v0 (1 - 2/pi).
pub fn path_length_to_time(length: f64, scales: &DerivedScales) -> f64 {
    length / scales.mean_speed()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::scales::{derive_scales, ParticleParams};
    use approx::assert_relative_eq;
    use std::f64::consts::TAU;

    fn scales() -> DerivedScales {
        derive_scales(&ParticleParams::new(1.0, 0.5, 1.0, TAU, 10).unwrap())
    }

    #[test]
    fn speed_renews_at_collision_times() {
        let s = scales();
        for n in 0..=10 {
            let (_, xdot) = particle_state(n as f64 * s.period, &s);
            assert_relative_eq!(xdot, s.params.v0, max_relative = 1e-12);
        }
    }

    #[test]
    fn particle_halts_mid_period() {
        let s = scales();
        let (_, xdot) = particle_state(s.period / 2.0, &s);
        assert!(xdot.abs() < 1e-15);
    }

    #[test]
    fn mean_speed_over_one_period() {
        // quadrature of v0 (1 - sin(pi t/T)) over [0, T] against v0 (1 - 2/pi)
        let s = scales();
        let n = 20_000;
        let dt = s.period / n as f64;
        let mut acc = 0.0;
        for i in 0..n {
            let t = (i as f64 + 0.5) * dt;
            acc += particle_state(t, &s).1;
        }
        let mean = acc * dt / s.period;
        assert_relative_eq!(mean, s.mean_speed(), max_relative = 1e-8);
    }

    #[test]
    fn position_starts_at_zero_and_never_decreases() {
        let s = scales();
        let (x0, _) = particle_state(0.0, &s);
        assert!(x0.abs() < 1e-15);
        let mut last = -1e-15;
        for i in 0..=4000 {
            let t = 5.0 * s.period * i as f64 / 4000.0;
            let (x, _) = particle_state(t, &s);
            assert!(x >= last - 1e-12 * s.wavelength);
            last = x;
        }
    }

    #[test]
    fn position_is_continuous_across_collisions() {
        let s = scales();
        for n in 1..=5 {
            let t = n as f64 * s.period;
            let eps = 1e-9 * s.period;
            let (xm, _) = particle_state(t - eps, &s);
            let (xb, _) = particle_state(t, &s);
            let (xp, _) = particle_state(t + eps, &s);
            assert_relative_eq!(xm, xb, max_relative = 1e-7);
            assert_relative_eq!(xp, xb, max_relative = 1e-7);
        }
    }

    #[test]
    fn per_arc_oscillation_amplitude_is_wavelength_over_pi() {
        // Within each arc, X(t) - v0 t oscillates about a constant offset
        // with amplitude exactly lambda/pi.
        let s = scales();
        let amp = s.wavelength / PI;
        for arc in 0..4 {
            let offset = -(1.0 + 2.0 * arc as f64) * amp;
            let mut max_dev = 0.0f64;
            for i in 0..=2000 {
                let t = s.period * (arc as f64 + i as f64 / 2000.0);
                let (x, _) = particle_state(t, &s);
                let dev = (x - s.params.v0 * t - offset).abs();
                max_dev = max_dev.max(dev);
            }
            assert_relative_eq!(max_dev, amp, max_relative = 1e-6);
        }
    }

    #[test]
    fn intrinsic_state_is_signed_copy() {
        let s = scales();
        for i in 0..40 {
            let t = 2.3 * s.period * i as f64 / 40.0;
            let (x, xdot) = particle_state(t, &s);
            let (up_x, up_v) = intrinsic_state(t, SpinPolarization::Up, &s);
            let (dn_x, dn_v) = intrinsic_state(t, SpinPolarization::Down, &s);
            assert_eq!(up_x, x);
            assert_eq!(up_v, xdot);
            assert_eq!(dn_x, -x);
            assert_eq!(dn_v, -xdot);
            assert_eq!(up_x + dn_x, 0.0);
        }
    }

    #[test]
    fn excitation_family_limits() {
        let s = scales();
        let first = InertonIndex::new(0, &s).unwrap();
        assert_relative_eq!(first.launch_speed, s.params.v0, max_relative = 1e-15);
        let last = InertonIndex::new(10, &s).unwrap();
        assert!(last.launch_speed.abs() < 1e-15);
        assert!(last.lifetime.abs() < 1e-15);
        let mut prev = f64::INFINITY;
        for r in 0..=10 {
            let idx = InertonIndex::new(r, &s).unwrap();
            assert!(idx.launch_speed < prev);
            prev = idx.launch_speed;
            if idx.amplitude > 0.0 {
                assert_relative_eq!(
                    idx.wavelength / idx.amplitude,
                    idx.launch_speed / s.params.c,
                    max_relative = 1e-14
                );
            }
        }
        assert!(InertonIndex::new(11, &s).is_err());
    }

    #[test]
    fn excitation_state_at_launch_peak_and_return() {
        let s = scales();
        let idx = InertonIndex::new(3, &s).unwrap();
        let e = SpinPolarization::Up;
        let (pos, speed, tpos, tspeed) = inerton_state(0.0, &idx, e, s.params.c).unwrap();
        assert_relative_eq!(speed, idx.launch_speed, max_relative = 1e-15);
        assert!(pos.abs() < 1e-15);
        assert!(tpos.abs() < 1e-15);
        assert_relative_eq!(tspeed, s.params.c, max_relative = 1e-15);

        let (_, _, tpos, tspeed) = inerton_state(idx.lifetime / 2.0, &idx, e, s.params.c).unwrap();
        assert_relative_eq!(tpos, idx.amplitude / PI, max_relative = 1e-14);
        assert!(tspeed.abs() < 1e-15 * s.params.c);

        let (_, speed, tpos, _) = inerton_state(idx.lifetime, &idx, e, s.params.c).unwrap();
        assert_relative_eq!(speed, idx.launch_speed, max_relative = 1e-12);
        assert!(tpos.abs() < 1e-12 * idx.amplitude);

        assert!(inerton_state(idx.lifetime * 1.01, &idx, e, s.params.c).is_err());
        assert!(inerton_state(-0.1, &idx, e, s.params.c).is_err());
    }

    #[test]
    fn degenerate_last_excitation() {
        let s = scales();
        let idx = InertonIndex::new(10, &s).unwrap();
        let (pos, speed, tpos, tspeed) =
            inerton_state(0.0, &idx, SpinPolarization::Down, s.params.c).unwrap();
        assert_eq!(pos, 0.0);
        assert_eq!(speed, -0.0);
        assert_eq!(tpos, -0.0);
        assert_relative_eq!(tspeed, -s.params.c, max_relative = 1e-15);
    }

    #[test]
    fn cloud_boundary_values() {
        let s = scales();
        let c = s.params.c;
        let (q, qdot) = cloud_state(0.0, &s);
        assert_eq!(q, 0.0);
        assert_relative_eq!(qdot, c, max_relative = 1e-15);

        let (q, qdot) = cloud_state(s.period / 2.0, &s);
        assert_relative_eq!(q, s.cloud_amplitude / PI, max_relative = 1e-14);
        assert!(qdot.abs() < 1e-15);

        // At t = T the relaunch convention gives qdot = +c, matching the
        // right limit; the left limit is -c (arrival speed).
        let (q, qdot) = cloud_state(s.period, &s);
        assert!(q.abs() < 1e-14 * s.cloud_amplitude);
        assert_relative_eq!(qdot, c, max_relative = 1e-12);
        let (_, qdot_right) = cloud_state(s.period * (1.0 + 1e-9), &s);
        assert_relative_eq!(qdot_right, c, max_relative = 1e-7);
        let (_, qdot_left) = cloud_state(s.period * (1.0 - 1e-9), &s);
        assert_relative_eq!(qdot_left, -c, max_relative = 1e-7);
        // the speed magnitude is continuous through the collision
        assert_relative_eq!(qdot_left.abs(), qdot_right.abs(), max_relative = 1e-7);
    }

    #[test]
    fn cloud_displacement_bounded() {
        let s = scales();
        for i in 0..=5000 {
            let t = 5.0 * s.period * i as f64 / 5000.0;
            let (q, _) = cloud_state(t, &s);
            assert!(q >= 0.0);
            assert!(q <= s.cloud_amplitude / PI * (1.0 + 1e-14));
        }
    }

    #[test]
    fn cloud_peaks_exactly_when_particle_halts() {
        let s = scales();
        for n in 0..5 {
            let t = (n as f64 + 0.5) * s.period;
            let (_, xdot) = particle_state(t, &s);
            let (q, _) = cloud_state(t, &s);
            assert!(xdot.abs() < 1e-12);
            assert_relative_eq!(q, s.cloud_amplitude / PI, max_relative = 1e-12);
        }
    }

    #[test]
    fn path_time_conversion_is_inverse_of_mean_drift() {
        let s = scales();
        let t = 7.3;
        let l = s.mean_speed() * t;
        assert_relative_eq!(path_length_to_time(l, &s), t, max_relative = 1e-15);
    }
}
