//! Numerical integration of the coupled particle-cloud equations of
//! motion, checked against the closed forms in [`crate::trajectory`].
//!
//! Between collisions the system is linear:
//!
//! ```text
//!   particle:  accel      = -(pi/T)(v0/c) * cloud_vel
//!   cloud:     cloud_accel = (pi/T)(c/v0) * (vel - v0)
//! ```
//!
//! with an identical pair for the pulsation coordinates (launch speed
//! carrying the polarization sign). Collisions happen at the known
//! times t = nT, where the cloud is reabsorbed and relaunched: its
//! displacement returns to zero and its velocity flips back to +c. The
//! particle position and velocity are continuous there, so they carry
//! over from the integrated arc untouched -- the velocity renewal at
//! t = nT is a measured outcome, not an imposed reset.

mod rk;

pub use rk::StepStats;

use crate::error::{Error, Result};
use crate::scales::{DerivedScales, ParticleParams};
use crate::trajectory::{cloud_state, intrinsic_state, InertonIndex, SpinPolarization};
use std::f64::consts::PI;

/// Full first-order state of the particle-cloud system at one instant.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct KinematicState {
    pub t: f64,
    /// Particle position along the trajectory (X).
    pub pos: f64,
    /// Particle velocity (Xdot).
    pub vel: f64,
    /// Cloud displacement from the particle (x).
    pub cloud_pos: f64,
    /// Cloud velocity (xdot).
    pub cloud_vel: f64,
    /// Centre-of-mass pulsation position of the particle (Xi).
    pub intr_pos: f64,
    /// Pulsation velocity of the particle (Xidot).
    pub intr_vel: f64,
    /// Pulsation position of the cloud (xi).
    pub cloud_intr_pos: f64,
    /// Pulsation velocity of the cloud (xidot).
    pub cloud_intr_vel: f64,
}

impl KinematicState {
    /// Launch state of the model: particle at speed v0, cloud just
    /// emitted at speed c, pulsation pair signed by the polarization.
    pub fn launch(params: &ParticleParams, pol: SpinPolarization) -> Self {
        let e = pol.sign();
        KinematicState {
            t: 0.0,
            pos: 0.0,
            vel: params.v0,
            cloud_pos: 0.0,
            cloud_vel: params.c,
            intr_pos: 0.0,
            intr_vel: e * params.v0,
            cloud_intr_pos: 0.0,
            cloud_intr_vel: e * params.c,
        }
    }

    fn to_vector(self) -> [f64; 8] {
        [
            self.pos,
            self.vel,
            self.cloud_pos,
            self.cloud_vel,
            self.intr_pos,
            self.intr_vel,
            self.cloud_intr_pos,
            self.cloud_intr_vel,
        ]
    }

    fn from_vector(t: f64, y: &[f64; 8]) -> Self {
        KinematicState {
            t,
            pos: y[0],
            vel: y[1],
            cloud_pos: y[2],
            cloud_vel: y[3],
            intr_pos: y[4],
            intr_vel: y[5],
            cloud_intr_pos: y[6],
            cloud_intr_vel: y[7],
        }
    }

    pub fn is_finite(&self) -> bool {
        self.to_vector().iter().all(|v| v.is_finite())
    }
}

/// The coupled linear system for one inter-collision arc.
#[derive(Debug, Clone, Copy)]
pub struct EomSystem {
    /// Collision interval of this system (T, or the excitation lifetime).
    pub period: f64,
    /// Launch speed of the particle sector (v0, or the excitation's).
    pub launch_speed: f64,
    /// Signal speed of the cloud sector.
    pub light_speed: f64,
    /// Polarization sign applied to the pulsation launch speed.
    pub polarity: f64,
    /// Whether the cloud is reabsorbed and relaunched at multiples of
    /// `period`. True for the full system; false for a single emitted
    /// excitation, whose closed forms cover one lifetime with no
    /// relaunch.
    pub relaunch: bool,
}

/// Number of first-order variables the system evolves.
pub const SYSTEM_DIM: usize = 8;

/// Build the inter-collision equations of motion for the particle-cloud
/// pair plus its pulsation mirror.
pub fn build_eom(params: &ParticleParams, pol: SpinPolarization) -> EomSystem {
    let scales = DerivedScales::from_params(params);
    EomSystem {
        period: scales.period,
        launch_speed: params.v0,
        light_speed: params.c,
        polarity: pol.sign(),
        relaunch: true,
    }
}

impl EomSystem {
    /// System for the r-th emitted excitation (shorter lifetime, slower
    /// launch, same structure).
    pub fn for_inerton(idx: &InertonIndex, c: f64, pol: SpinPolarization) -> Result<Self> {
        if idx.lifetime <= 0.0 || idx.launch_speed <= 0.0 {
            return Err(Error::domain(
                "degenerate excitation (zero lifetime or launch speed) cannot be integrated",
            ));
        }
        Ok(EomSystem {
            period: idx.lifetime,
            launch_speed: idx.launch_speed,
            light_speed: c,
            polarity: pol.sign(),
            relaunch: false,
        })
    }

    pub fn dim(&self) -> usize {
        SYSTEM_DIM
    }

    /// Right-hand side of the first-order system.
    pub fn rhs(&self, y: &[f64; 8]) -> [f64; 8] {
        let k_particle = PI / self.period * (self.launch_speed / self.light_speed);
        let k_cloud = PI / self.period * (self.light_speed / self.launch_speed);
        let e = self.polarity;
        [
            y[1],
            -k_particle * y[3],
            y[3],
            k_cloud * (y[1] - self.launch_speed),
            y[5],
            -k_particle * y[7],
            y[7],
            k_cloud * (y[5] - e * self.launch_speed),
        ]
    }
}

/// Absolute and relative integration tolerances.
#[derive(Debug, Clone, Copy)]
pub struct Tolerances {
    pub abs: f64,
    pub rel: f64,
}

impl Default for Tolerances {
    fn default() -> Self {
        Tolerances {
            abs: 1e-12,
            rel: 1e-10,
        }
    }
}

/// Metadata of one integration run.
#[derive(Debug, Clone)]
pub struct IntegratorMeta {
    pub method: &'static str,
    pub abs_tol: f64,
    pub rel_tol: f64,
    pub steps: StepStats,
    /// True when the initial state differs from the model launch state.
    pub custom_initial_conditions: bool,
}

/// Time-ordered samples of an integrated run.
#[derive(Debug, Clone)]
pub struct Trajectory {
    pub samples: Vec<KinematicState>,
    pub params: ParticleParams,
    pub pol: SpinPolarization,
    pub meta: IntegratorMeta,
}

/// Integrate the system from `init` to `t_end`, relaunching the cloud at
/// every collision time t = nT.
///
/// Samples are uniform within each arc (`samples_per_arc` intervals per
/// collision period). The sample recorded at an interior collision time
/// is the relaunched state: particle coordinates carried over from the
/// integration, cloud reset to (0, +c) and its pulsation mirror to
/// (0, e*c).
pub fn integrate(
    system: &EomSystem,
    params: &ParticleParams,
    pol: SpinPolarization,
    init: KinematicState,
    t_end: f64,
    tol: Tolerances,
    samples_per_arc: usize,
) -> Result<Trajectory> {
    if !(t_end > 0.0) {
        return Err(Error::usage("t_end must be positive"));
    }
    if !(tol.abs > 0.0) || !(tol.rel > 0.0) {
        return Err(Error::usage("tolerances must be positive"));
    }
    if samples_per_arc < 2 {
        return Err(Error::usage("need at least 2 samples per arc"));
    }
    if !init.is_finite() {
        return Err(Error::usage("initial state must be finite"));
    }

    let launch = KinematicState::launch(params, pol);
    let custom_init = init != launch || init.t != 0.0;

    let period = system.period;
    let mut samples = Vec::new();
    samples.push(init);
    let mut stats = StepStats::default();
    let mut y = init.to_vector();
    let mut t = init.t;
    let e = system.polarity;

    while t < t_end - 1e-14 * t_end.abs().max(1.0) {
        let arc_index = crate::trajectory::completed_periods(t, period);
        let arc_end = ((arc_index + 1) as f64 * period).min(t_end);
        let times: Vec<f64> = (1..=samples_per_arc)
            .map(|i| t + (arc_end - t) * i as f64 / samples_per_arc as f64)
            .collect();
        let (states, arc_stats) =
            rk::integrate_at(|_t, y| system.rhs(y), t, y, &times, tol.abs, tol.rel)?;
        stats.accepted += arc_stats.accepted;
        stats.rejected += arc_stats.rejected;

        let boundary = (arc_index + 1) as f64 * period;
        for (i, (tt, yy)) in times.iter().zip(&states).enumerate() {
            let last = i + 1 == times.len();
            let mut state = KinematicState::from_vector(*tt, yy);
            let at_collision =
                last && system.relaunch && (*tt - boundary).abs() < 1e-12 * period;
            if at_collision {
                // reabsorption and relaunch of the cloud
                state.cloud_pos = 0.0;
                state.cloud_vel = system.light_speed;
                state.cloud_intr_pos = 0.0;
                state.cloud_intr_vel = e * system.light_speed;
            }
            samples.push(state);
            if last {
                t = *tt;
                y = state.to_vector();
            }
        }
    }

    Ok(Trajectory {
        samples,
        params: *params,
        pol,
        meta: IntegratorMeta {
            method: "dormand-prince 5(4), arc-by-arc",
            abs_tol: tol.abs,
            rel_tol: tol.rel,
            steps: stats,
            custom_initial_conditions: custom_init,
        },
    })
}

/// Convenience: integrate the standard launch state over a whole number
/// of collision periods.
pub fn integrate_periods(
    params: &ParticleParams,
    pol: SpinPolarization,
    periods: f64,
    tol: Tolerances,
    samples_per_arc: usize,
) -> Result<Trajectory> {
    let system = build_eom(params, pol);
    let init = KinematicState::launch(params, pol);
    integrate(
        &system,
        params,
        pol,
        init,
        periods * system.period,
        tol,
        samples_per_arc,
    )
}

/// Velocity offsets that decouple the cloud sector: subtract
/// (pi/T) sqrt(M0/m0) times the partner coordinate from each cloud
/// velocity. Returns (shifted cloud velocity, shifted pulsation
/// velocity).
pub fn tilde_transform(state: &KinematicState, params: &ParticleParams) -> Result<(f64, f64)> {
    if params.cloud_rest_mass <= 0.0 {
        return Err(Error::domain("cloud rest mass must be positive"));
    }
    let scales = DerivedScales::from_params(params);
    let k = PI / scales.period * (params.rest_mass / params.cloud_rest_mass).sqrt();
    Ok((
        state.cloud_vel - k * state.pos,
        state.cloud_intr_vel - k * state.intr_pos,
    ))
}

/// Inverse of [`tilde_transform`]: recover the raw cloud velocities from
/// the shifted ones at the same coordinates.
pub fn tilde_transform_inv(
    shifted: (f64, f64),
    state: &KinematicState,
    params: &ParticleParams,
) -> Result<(f64, f64)> {
    if params.cloud_rest_mass <= 0.0 {
        return Err(Error::domain("cloud rest mass must be positive"));
    }
    let scales = DerivedScales::from_params(params);
    let k = PI / scales.period * (params.rest_mass / params.cloud_rest_mass).sqrt();
    Ok((shifted.0 + k * state.pos, shifted.1 + k * state.intr_pos))
}

/// Comparison of an integrated variable against its closed form.
#[derive(Debug, Clone)]
pub struct VariableError {
    pub name: &'static str,
    pub max_abs: f64,
    /// max abs error normalized by the largest magnitude the reference
    /// attains over the trajectory (0 when the reference is identically
    /// zero and the numeric values are too).
    pub max_rel: f64,
    pub rms: f64,
}

/// Per-variable error report of a trajectory against the closed forms.
#[derive(Debug, Clone)]
pub struct ErrorReport {
    pub variables: Vec<VariableError>,
    pub threshold: f64,
    pub pass: bool,
}

impl ErrorReport {
    pub fn worst(&self) -> f64 {
        self.variables
            .iter()
            .map(|v| v.max_rel)
            .fold(0.0, f64::max)
    }
}

/// Compare every sample of `traj` against the closed-form solution and
/// report normalized errors per variable. `threshold` is the PASS bound
/// on the normalized max error.
pub fn verify_against_analytic(
    traj: &Trajectory,
    scales: &DerivedScales,
    threshold: f64,
) -> Result<ErrorReport> {
    if traj.samples.is_empty() {
        return Err(Error::usage("empty trajectory"));
    }
    if traj.samples.last().unwrap().t < scales.period {
        return Err(Error::usage(
            "trajectory must cover at least one collision period",
        ));
    }
    let e = traj.pol.sign();
    let names = [
        "X", "Xdot", "x", "xdot", "Xi", "Xidot", "xi", "xidot",
    ];
    let mut max_abs = [0.0f64; 8];
    let mut ref_scale = [0.0f64; 8];
    let mut sq = [0.0f64; 8];
    for s in &traj.samples {
        let (x, xdot) = crate::trajectory::particle_state(s.t, scales);
        let (q, qdot) = cloud_state(s.t, scales);
        let (xi, xidot) = intrinsic_state(s.t, traj.pol, scales);
        let refs = [x, xdot, q, qdot, xi, xidot, e * q, e * qdot];
        let nums = [
            s.pos,
            s.vel,
            s.cloud_pos,
            s.cloud_vel,
            s.intr_pos,
            s.intr_vel,
            s.cloud_intr_pos,
            s.cloud_intr_vel,
        ];
        for i in 0..8 {
            let err = (nums[i] - refs[i]).abs();
            max_abs[i] = max_abs[i].max(err);
            ref_scale[i] = ref_scale[i].max(refs[i].abs());
            sq[i] += err * err;
        }
    }
    let n = traj.samples.len() as f64;
    let variables: Vec<VariableError> = (0..8)
        .map(|i| VariableError {
            name: names[i],
            max_abs: max_abs[i],
            max_rel: if ref_scale[i] > 0.0 {
                max_abs[i] / ref_scale[i]
            } else if max_abs[i] == 0.0 {
                0.0
            } else {
                f64::INFINITY
            },
            rms: (sq[i] / n).sqrt(),
        })
        .collect();
    let pass = variables.iter().all(|v| v.max_rel <= threshold);
    Ok(ErrorReport {
        variables,
        threshold,
        pass,
    })
}

/// Build a trajectory directly from the closed forms (used to validate
/// the comparison machinery itself).
pub fn closed_form_trajectory(
    scales: &DerivedScales,
    pol: SpinPolarization,
    t_end: f64,
    n_samples: usize,
) -> Trajectory {
    let e = pol.sign();
    let samples = (0..=n_samples)
        .map(|i| {
            let t = t_end * i as f64 / n_samples as f64;
            let (x, xdot) = crate::trajectory::particle_state(t, scales);
            let (q, qdot) = cloud_state(t, scales);
            KinematicState {
                t,
                pos: x,
                vel: xdot,
                cloud_pos: q,
                cloud_vel: qdot,
                intr_pos: e * x,
                intr_vel: e * xdot,
                cloud_intr_pos: e * q,
                cloud_intr_vel: e * qdot,
            }
        })
        .collect();
    Trajectory {
        samples,
        params: scales.params,
        pol,
        meta: IntegratorMeta {
            method: "closed form",
            abs_tol: 0.0,
            rel_tol: 0.0,
            steps: StepStats::default(),
            custom_initial_conditions: false,
        },
    }
}
