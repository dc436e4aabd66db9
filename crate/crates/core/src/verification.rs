//! The verification suite: every analytic claim of the model checked
//! against an independent numerical route, with pinned tolerances.
//!
//! Each criterion returns a [`CriterionReport`] holding one
//! [`CheckResult`] per sub-check. The CLI `verify` scenario and the
//! acceptance test target both run these functions, so the command-line
//! report and the test suite can never drift apart.

use crate::action;
use crate::crystallite::{self, LatticeSpec};
use crate::dirac;
use crate::dynamics::{self, KinematicState, Tolerances};
use crate::quadrature;
use crate::scales::{derive_scales, ParticleParams};
use crate::spinfield::{self, FieldConfig};
use crate::trajectory::{self, InertonIndex, SpinPolarization};
use rand::prelude::*;
use rand_chacha::ChaCha8Rng;
use std::time::Instant;

/// One verified statement: a measured value against its target.
#[derive(Debug, Clone)]
pub struct CheckResult {
    pub name: String,
    /// The relation being checked, written as a formula.
    pub relation: String,
    pub value: f64,
    pub target: f64,
    pub tolerance: f64,
    pub pass: bool,
}

impl CheckResult {
    /// An error measure that must stay at or below `bound`.
    fn bound(name: &str, relation: &str, measured: f64, bound: f64) -> Self {
        CheckResult {
            name: name.into(),
            relation: relation.into(),
            value: measured,
            target: 0.0,
            tolerance: bound,
            pass: measured.is_finite() && measured <= bound,
        }
    }

    /// A value that must match `target` to within `rel_tol` relatively.
    fn close(name: &str, relation: &str, value: f64, target: f64, rel_tol: f64) -> Self {
        let denom = target.abs().max(f64::MIN_POSITIVE);
        let pass = value.is_finite() && ((value - target) / denom).abs() <= rel_tol;
        CheckResult {
            name: name.into(),
            relation: relation.into(),
            value,
            target,
            tolerance: rel_tol,
            pass,
        }
    }

    fn fail(name: &str, relation: &str, reason: &str) -> Self {
        CheckResult {
            name: name.into(),
            relation: format!("{relation} ({reason})"),
            value: f64::NAN,
            target: 0.0,
            tolerance: 0.0,
            pass: false,
        }
    }
}

/// Outcome of one verification criterion.
#[derive(Debug, Clone)]
pub struct CriterionReport {
    pub id: usize,
    pub label: String,
    pub checks: Vec<CheckResult>,
    /// Extra measured values reported for transparency but not asserted.
    pub notes: Vec<String>,
    pub elapsed_ms: u128,
}

impl CriterionReport {
    pub fn pass(&self) -> bool {
        self.checks.iter().all(|c| c.pass)
    }
}

fn tight_tol() -> Tolerances {
    Tolerances {
        abs: 1e-12,
        rel: 1e-10,
    }
}

/// Criterion 1: the integrated equations of motion reproduce the closed
/// forms, for one emitted excitation over its lifetime and for the full
/// system over five collision periods including the relaunches.
pub fn criterion_1(params: &ParticleParams) -> CriterionReport {
    let start = Instant::now();
    let scales = derive_scales(params);
    let mut checks = Vec::new();
    let mut notes = Vec::new();

    // one emitted excitation, integrated over its lifetime
    let r = if params.inerton_count >= 4 { 3 } else { 0 };
    match InertonIndex::new(r, &scales) {
        Ok(idx) => {
            for pol in SpinPolarization::BOTH {
                let run = (|| -> crate::Result<f64> {
                    let system = dynamics::EomSystem::for_inerton(&idx, params.c, pol)?;
                    let e = pol.sign();
                    let init = KinematicState {
                        t: 0.0,
                        pos: 0.0,
                        vel: idx.launch_speed,
                        cloud_pos: 0.0,
                        cloud_vel: params.c,
                        intr_pos: 0.0,
                        intr_vel: e * idx.launch_speed,
                        cloud_intr_pos: 0.0,
                        cloud_intr_vel: e * params.c,
                    };
                    let traj = dynamics::integrate(
                        &system,
                        params,
                        pol,
                        init,
                        idx.lifetime,
                        tight_tol(),
                        256,
                    )?;
                    // normalized sup error of the pulsation pair against the
                    // closed forms for this excitation
                    let mut max_err = [0.0f64; 4];
                    let mut scale = [0.0f64; 4];
                    for s in &traj.samples {
                        let (xi, xidot, txi, txidot) =
                            trajectory::inerton_state(s.t.min(idx.lifetime), &idx, pol, params.c)?;
                        let nums = [s.intr_pos, s.intr_vel, s.cloud_intr_pos, s.cloud_intr_vel];
                        let refs = [xi, xidot, txi, txidot];
                        for i in 0..4 {
                            max_err[i] = max_err[i].max((nums[i] - refs[i]).abs());
                            scale[i] = scale[i].max(refs[i].abs());
                        }
                    }
                    Ok((0..4)
                        .map(|i| max_err[i] / scale[i].max(f64::MIN_POSITIVE))
                        .fold(0.0, f64::max))
                })();
                match run {
                    Ok(err) => checks.push(CheckResult::bound(
                        &format!("excitation_arc_{:?}", pol),
                        "integrated pulsation pair vs closed forms over one lifetime",
                        err,
                        1e-8,
                    )),
                    Err(e) => checks.push(CheckResult::fail(
                        &format!("excitation_arc_{:?}", pol),
                        "integration of the excitation system",
                        &e.to_string(),
                    )),
                }
            }
        }
        Err(e) => checks.push(CheckResult::fail(
            "excitation_index",
            "excitation family construction",
            &e.to_string(),
        )),
    }

    // full system over five periods with collision relaunches
    match dynamics::integrate_periods(params, SpinPolarization::Up, 5.0, tight_tol(), 256) {
        Ok(traj) => match dynamics::verify_against_analytic(&traj, &scales, 1e-8) {
            Ok(report) => {
                for v in &report.variables {
                    checks.push(CheckResult::bound(
                        &format!("five_periods_{}", v.name),
                        "integrated trajectory vs closed form, normalized sup error",
                        v.max_rel,
                        1e-8,
                    ));
                }
                notes.push(format!(
                    "integrator: {} accepted, {} rejected steps over five periods",
                    traj.meta.steps.accepted, traj.meta.steps.rejected
                ));
            }
            Err(e) => checks.push(CheckResult::fail(
                "five_periods",
                "trajectory comparison",
                &e.to_string(),
            )),
        },
        Err(e) => checks.push(CheckResult::fail(
            "five_periods",
            "integration over five periods",
            &e.to_string(),
        )),
    }

    let elapsed = start.elapsed();
    checks.push(CheckResult::bound(
        "runtime",
        "wall time of this criterion [s]",
        elapsed.as_secs_f64(),
        5.0,
    ));
    CriterionReport {
        id: 1,
        label: "closed-form / integrated equivalence".into(),
        checks,
        notes,
        elapsed_ms: elapsed.as_millis(),
    }
}

/// Criterion 2: the particle speed returns to v0 at every collision and
/// its mean over one period is v0 (1 - 2/pi).
pub fn criterion_2(params: &ParticleParams) -> CriterionReport {
    let start = Instant::now();
    let scales = derive_scales(params);
    let mut checks = Vec::new();

    match dynamics::integrate_periods(params, SpinPolarization::Up, 10.0, tight_tol(), 64) {
        Ok(traj) => {
            let mut worst = 0.0f64;
            let mut found = 0;
            for n in 1..=10 {
                let t_n = n as f64 * scales.period;
                if let Some(s) = traj
                    .samples
                    .iter()
                    .find(|s| (s.t - t_n).abs() <= 1e-9 * scales.period)
                {
                    found += 1;
                    worst = worst.max(((s.vel - params.v0) / params.v0).abs());
                }
            }
            if found == 10 {
                checks.push(CheckResult::bound(
                    "velocity_renewal",
                    "integrated Xdot(nT) vs v0, n = 1..10",
                    worst,
                    1e-8,
                ));
            } else {
                checks.push(CheckResult::fail(
                    "velocity_renewal",
                    "collision-time samples",
                    &format!("found {found} of 10 boundary samples"),
                ));
            }
        }
        Err(e) => checks.push(CheckResult::fail(
            "velocity_renewal",
            "integration over ten periods",
            &e.to_string(),
        )),
    }

    // high-order quadrature of the closed-form speed over one period
    let mean = quadrature::integrate(
        |t| trajectory::particle_state(t, &scales).1,
        0.0,
        scales.period,
        200,
    ) / scales.period;
    checks.push(CheckResult::close(
        "mean_velocity",
        "mean of Xdot over one period = v0 (1 - 2/pi)",
        mean,
        scales.mean_speed(),
        1e-10,
    ));

    let elapsed = start.elapsed();
    CriterionReport {
        id: 2,
        label: "velocity renewal and mean drift".into(),
        checks,
        notes: vec![],
        elapsed_ms: elapsed.as_millis(),
    }
}

/// Criterion 3: the two algebraic routes to the total energy agree on
/// random states, and the first integral of the integrated system stays
/// constant along every inter-collision arc.
pub fn criterion_3(params: &ParticleParams) -> CriterionReport {
    let start = Instant::now();
    let scales = derive_scales(params);
    let mut checks = Vec::new();
    let mut notes = Vec::new();

    // route agreement on seeded random states inside the radical domain
    let mut rng = ChaCha8Rng::seed_from_u64(2024);
    let mut worst = 0.0f64;
    let mut failures = 0usize;
    for _ in 0..100 {
        let len = scales.wavelength * 0.05;
        let vel = params.v0 * 0.2;
        let state = KinematicState {
            t: 0.0,
            pos: rng.gen_range(-len..len),
            vel: rng.gen_range(-vel..vel),
            cloud_pos: rng.gen_range(-len..len),
            cloud_vel: rng.gen_range(-vel..vel),
            intr_pos: rng.gen_range(-len..len),
            intr_vel: rng.gen_range(-vel..vel),
            cloud_intr_pos: rng.gen_range(-len..len),
            cloud_intr_vel: rng.gen_range(-vel..vel),
        };
        for pol in SpinPolarization::BOTH {
            match action::relativistic_energy_forms(&state, pol, params) {
                Ok((a, b)) => worst = worst.max(((a - b) / a).abs()),
                Err(_) => failures += 1,
            }
        }
    }
    if failures == 0 {
        checks.push(CheckResult::bound(
            "energy_routes",
            "coordinate route vs momentum route on 100 random states",
            worst,
            1e-12,
        ));
    } else {
        checks.push(CheckResult::fail(
            "energy_routes",
            "energy route sampling",
            &format!("{failures} states fell outside the radical domain"),
        ));
    }

    // invariant drift along integrated arcs
    match dynamics::integrate_periods(params, SpinPolarization::Up, 5.0, tight_tol(), 256) {
        Ok(traj) => {
            let mut worst_drift = 0.0f64;
            for arc in 0..5 {
                let lo = arc as f64 * scales.period;
                let hi = (arc + 1) as f64 * scales.period;
                let vals: Vec<f64> = traj
                    .samples
                    .iter()
                    .filter(|s| s.t >= lo - 1e-12 && s.t <= hi + 1e-12)
                    .map(|s| action::arc_invariant(s, SpinPolarization::Up, params))
                    .collect();
                let max = vals.iter().cloned().fold(f64::NEG_INFINITY, f64::max);
                let min = vals.iter().cloned().fold(f64::INFINITY, f64::min);
                let mean = vals.iter().sum::<f64>() / vals.len() as f64;
                worst_drift = worst_drift.max((max - min) / mean.abs());
            }
            checks.push(CheckResult::bound(
                "arc_energy_drift",
                "first integral of the arc dynamics, per-arc relative drift",
                worst_drift,
                1e-9,
            ));

            // transparency: the frozen-mass oscillator decomposition is
            // bookkeeping, not an invariant; report how much it moves.
            let mut lo = f64::INFINITY;
            let mut hi = f64::NEG_INFINITY;
            for s in traj.samples.iter().filter(|s| s.t <= scales.period) {
                if let Ok(h) = action::hamiltonians(s, SpinPolarization::Up, params) {
                    lo = lo.min(h.total);
                    hi = hi.max(h.total);
                }
            }
            notes.push(format!(
                "frozen-mass decomposition varies by {:.3e} (relative) over the first arc; \
                 it is reported for bookkeeping and is not a conserved quantity",
                (hi - lo) / hi.abs().max(f64::MIN_POSITIVE)
            ));
        }
        Err(e) => checks.push(CheckResult::fail(
            "arc_energy_drift",
            "integration over five periods",
            &e.to_string(),
        )),
    }

    let elapsed = start.elapsed();
    CriterionReport {
        id: 3,
        label: "energy identities and conservation".into(),
        checks,
        notes,
        elapsed_ms: elapsed.as_millis(),
    }
}

/// Criterion 4: the per-period action integral equals E*2T by
/// quadrature; setting it to h recovers the wavelength-momentum and
/// energy-frequency relations; the pulsation action is polarization
/// independent bit for bit.
pub fn criterion_4(params: &ParticleParams) -> CriterionReport {
    let start = Instant::now();
    let scales = derive_scales(params);
    let mut checks = Vec::new();

    let energy = scales.oscillator_energy();
    match action::action_over_period(energy, scales.period, 10_000) {
        Ok(inc) => {
            checks.push(CheckResult::close(
                "action_quadrature",
                "loop integral of p dX over 2T = E*2T",
                inc.spatial,
                energy * 2.0 * scales.period,
                1e-10,
            ));
            let bit_identical = inc.spatial.to_bits() == inc.intrinsic.to_bits();
            checks.push(CheckResult {
                name: "polarization_independence".into(),
                relation: "pulsation action identical for both polarizations (bitwise)".into(),
                value: if bit_identical { 0.0 } else { 1.0 },
                target: 0.0,
                tolerance: 0.0,
                pass: bit_identical,
            });
        }
        Err(e) => checks.push(CheckResult::fail(
            "action_quadrature",
            "action integral",
            &e.to_string(),
        )),
    }

    let q = action::quantize(params);
    checks.push(CheckResult::close(
        "wavelength_momentum",
        "lambda * M * v0 = h",
        q.wavelength * scales.mass * params.v0,
        params.h,
        5e-15,
    ));
    checks.push(CheckResult::close(
        "energy_frequency",
        "E = h * nu",
        params.h * q.frequency,
        q.energy,
        5e-15,
    ));

    let elapsed = start.elapsed();
    CriterionReport {
        id: 4,
        label: "action-angle quantization".into(),
        checks,
        notes: vec![],
        elapsed_ms: elapsed.as_millis(),
    }
}

/// Criterion 5: the discretized oscillator reproduces the lowest level
/// and the Gaussian, at second-order grid convergence.
pub fn criterion_5(params: &ParticleParams) -> CriterionReport {
    let start = Instant::now();
    let scales = derive_scales(params);
    let mut checks = Vec::new();
    let mut notes = Vec::new();

    // e hbar B / 2M = 1 exercised in natural units
    let cfg = match FieldConfig::new(2.0 * scales.mass / params.hbar(), 1.0, params.hbar(), scales.mass)
    {
        Ok(cfg) => cfg,
        Err(e) => {
            return CriterionReport {
                id: 5,
                label: "pulsation oscillator in a magnetic field".into(),
                checks: vec![CheckResult::fail(
                    "field_config",
                    "field configuration",
                    &e.to_string(),
                )],
                notes: vec![],
                elapsed_ms: start.elapsed().as_millis(),
            }
        }
    };

    match spinfield::landau_ground_state(&cfg, 2001, 10.0) {
        Ok(sol) => {
            let target = cfg.level_scale();
            checks.push(CheckResult::close(
                "ground_level",
                "lowest eigenvalue = e hbar B / 2M at 2001 points on [-10, 10]",
                sol.epsilon,
                target,
                1e-6,
            ));
            notes.push(format!(
                "measured relative eigenvalue deviation {:.3e}; the second-order \
                 central-difference scheme has leading error dq^2/16 = {:.3e} at this grid",
                ((sol.epsilon - target) / target).abs(),
                (20.0f64 / 2000.0).powi(2) / 16.0
            ));
            checks.push(CheckResult::bound(
                "eigenfunction",
                "L2 distance between chi and the normalized Gaussian",
                spinfield::gaussian_distance(&sol),
                1e-4,
            ));
        }
        Err(e) => checks.push(CheckResult::fail(
            "ground_level",
            "oscillator eigenproblem",
            &e.to_string(),
        )),
    }

    // convergence order on a grid refinement ladder
    let mut errs = Vec::new();
    let mut spacings = Vec::new();
    let mut failed = None;
    for n in [251usize, 501, 1001, 2001] {
        match spinfield::landau_ground_state(&cfg, n, 10.0) {
            Ok(sol) => {
                errs.push((sol.dimensionless - 1.0).abs());
                spacings.push(20.0 / (n - 1) as f64);
            }
            Err(e) => failed = Some(e.to_string()),
        }
    }
    if let Some(reason) = failed {
        checks.push(CheckResult::fail(
            "convergence_order",
            "grid refinement",
            &reason,
        ));
    } else {
        let slope = log_log_slope(&spacings, &errs);
        checks.push(CheckResult::close(
            "convergence_order",
            "eigenvalue error order in the grid spacing",
            slope,
            2.0,
            0.1, // 2.0 +- 0.2 expressed relatively
        ));
    }

    let elapsed = start.elapsed();
    checks.push(CheckResult::bound(
        "runtime",
        "wall time of this criterion [s]",
        elapsed.as_secs_f64(),
        10.0,
    ));
    CriterionReport {
        id: 5,
        label: "pulsation oscillator in a magnetic field".into(),
        checks,
        notes,
        elapsed_ms: elapsed.as_millis(),
    }
}

/// Criterion 6: the 4x4 linearized energy operator has the closed-form
/// doubly degenerate spectrum, squares to the scalar invariant, and the
/// two frequency routes coincide.
pub fn criterion_6(params: &ParticleParams) -> CriterionReport {
    let start = Instant::now();
    let mut checks = Vec::new();

    let mut rng = ChaCha8Rng::seed_from_u64(99);
    let mut worst_spec = 0.0f64;
    let mut worst_square = 0.0f64;
    let mut fail: Option<String> = None;
    for _ in 0..100 {
        let p = [
            rng.gen_range(-3.0..3.0),
            rng.gen_range(-3.0..3.0),
            rng.gen_range(-3.0..3.0),
        ];
        let m0 = rng.gen_range(0.1..3.0);
        match dirac::dirac_hamiltonian(p, m0, params.c) {
            Ok(h) => {
                let e = h.closed_form_energy();
                worst_square = worst_square.max(h.square_identity_defect() / (e * e));
                match dirac::dirac_spectrum(&h) {
                    Ok(spec) => {
                        let expect = [-e, -e, e, e];
                        for (got, want) in spec.iter().zip(&expect) {
                            worst_spec = worst_spec.max(((got - want) / e).abs());
                        }
                    }
                    Err(err) => fail = Some(err.to_string()),
                }
            }
            Err(err) => fail = Some(err.to_string()),
        }
    }
    if let Some(reason) = fail {
        checks.push(CheckResult::fail(
            "matrix_spectrum",
            "matrix diagonalization",
            &reason,
        ));
    } else {
        checks.push(CheckResult::bound(
            "matrix_spectrum",
            "eigenvalues vs +-sqrt(c^2 p^2 + M0^2 c^4), 100 random momenta",
            worst_spec,
            1e-12,
        ));
        checks.push(CheckResult::bound(
            "square_identity",
            "H^2 = (c^2 p^2 + M0^2 c^4) I, relative defect",
            worst_square,
            1e-13,
        ));
    }

    let mut worst_freq = dirac::frequency_equivalence(params).residual;
    let mut rng = ChaCha8Rng::seed_from_u64(17);
    for _ in 0..50 {
        let p = ParticleParams::new(
            rng.gen_range(0.2..3.0),
            rng.gen_range(0.05..0.95),
            1.0,
            rng.gen_range(0.5..7.0),
            10,
        )
        .expect("in-range parameters");
        worst_freq = worst_freq.max(dirac::frequency_equivalence(&p).residual);
    }
    checks.push(CheckResult::bound(
        "frequency_identity",
        "sqrt(p^2 c^2 + M0^2 c^4)/h = M c^2/h at p = M v0",
        worst_freq,
        1e-14,
    ));

    let elapsed = start.elapsed();
    CriterionReport {
        id: 6,
        label: "linearized energy operator spectrum".into(),
        checks,
        notes: vec![],
        elapsed_ms: elapsed.as_millis(),
    }
}

/// Criterion 7: the derived-scale identities hold to machine precision
/// across the speed sweep v0 = 0.1 c .. 0.9 c.
pub fn criterion_7(params: &ParticleParams) -> CriterionReport {
    let start = Instant::now();
    let mut worst = [0.0f64; 4];
    for i in 1..=9 {
        let v0 = i as f64 / 10.0 * params.c;
        let p = ParticleParams::new(params.rest_mass, v0, params.c, params.h, params.inerton_count)
            .expect("sweep speeds are subluminal");
        let s = derive_scales(&p);
        let rel = |a: f64, b: f64| ((a - b) / b).abs();
        worst[0] = worst[0].max(rel(s.cloud_amplitude, s.wavelength * p.c / p.v0));
        worst[1] = worst[1].max(rel(s.wavelength, s.range_moving * p.c / p.v0));
        worst[2] = worst[2].max(rel(
            s.cloud_amplitude,
            s.range_moving * (p.c / p.v0) * (p.c / p.v0),
        ));
        worst[3] = worst[3].max(rel(
            s.range_moving,
            s.range_rest * (1.0 - (p.v0 / p.c).powi(2)).sqrt(),
        ));
    }
    let relations = [
        ("amplitude_wavelength", "Lambda = lambda c/v0"),
        ("wavelength_range", "lambda = range_v0 c/v0"),
        ("amplitude_range", "Lambda = range_v0 (c/v0)^2"),
        ("range_contraction", "range_v0 = range_0 sqrt(1 - v0^2/c^2)"),
    ];
    let checks = relations
        .iter()
        .zip(&worst)
        .map(|((name, rel), w)| CheckResult::bound(name, rel, *w, 1e-14))
        .collect();

    let elapsed = start.elapsed();
    CriterionReport {
        id: 7,
        label: "derived-scale identities over the speed sweep".into(),
        checks,
        notes: vec![],
        elapsed_ms: elapsed.as_millis(),
    }
}

/// Criterion 8: the brute-force chain spectrum matches the dispersion
/// formula under the documented wavenumber mapping, and mode
/// quantization recovers E = hbar omega.
pub fn criterion_8(params: &ParticleParams) -> CriterionReport {
    let start = Instant::now();
    let mut checks = Vec::new();
    let mut notes = Vec::new();

    match LatticeSpec::chain(64, 1.0, 1.0, 1.0) {
        Ok(spec) => {
            match crystallite::chain_eigenmodes(&spec) {
                Ok(numeric) => {
                    let mut mapped: Vec<f64> = spec
                        .allowed_wavenumbers()
                        .iter()
                        .map(|k| crystallite::dispersion(&[k / 2.0], &spec))
                        .collect();
                    mapped.sort_by(|a, b| a.partial_cmp(b).unwrap());
                    let mut worst = 0.0f64;
                    for (n, m) in numeric.iter().zip(&mapped) {
                        if *m > 1e-12 {
                            worst = worst.max((n - m).abs() / m);
                        } else {
                            worst = worst.max((n - m).abs());
                        }
                    }
                    checks.push(CheckResult::bound(
                        "chain_vs_dispersion",
                        "chain eigenfrequencies vs dispersion at half the allowed wavenumbers",
                        worst,
                        1e-10,
                    ));
                    notes.push(
                        "mapping: the dispersion formula uses sin^2(k a); the chain built from \
                         displacement differences diagonalizes to sin^2(k a / 2), so formula \
                         values are taken at k/2"
                            .into(),
                    );
                }
                Err(e) => checks.push(CheckResult::fail(
                    "chain_vs_dispersion",
                    "chain diagonalization",
                    &e.to_string(),
                )),
            }
            checks.push(CheckResult::bound(
                "zero_mode",
                "omega(k = 0) = 0",
                crystallite::dispersion(&[0.0], &spec),
                0.0,
            ));
        }
        Err(e) => checks.push(CheckResult::fail(
            "lattice_spec",
            "lattice construction",
            &e.to_string(),
        )),
    }

    let hbar = params.hbar();
    let omega = 0.9;
    match crystallite::quantize_mode(hbar * omega, omega, hbar) {
        Ok(q) => {
            checks.push(CheckResult::close(
                "mode_quantization",
                "E = hbar omega gives J = 2 pi hbar",
                q.action,
                std::f64::consts::TAU * hbar,
                1e-14,
            ));
            checks.push(CheckResult::close(
                "quadrature_action",
                "loop integral of P dA vs E/(omega/2pi)",
                q.action_quadrature,
                q.action,
                1e-10,
            ));
        }
        Err(e) => checks.push(CheckResult::fail(
            "mode_quantization",
            "mode quantization",
            &e.to_string(),
        )),
    }

    let elapsed = start.elapsed();
    checks.push(CheckResult::bound(
        "runtime",
        "wall time of this criterion [s]",
        elapsed.as_secs_f64(),
        5.0,
    ));
    CriterionReport {
        id: 8,
        label: "lattice oracle and mode quantization".into(),
        checks,
        notes,
        elapsed_ms: elapsed.as_millis(),
    }
}

/// Run criteria 1 through 8 in order.
pub fn run_all(params: &ParticleParams) -> Vec<CriterionReport> {
    vec![
        criterion_1(params),
        criterion_2(params),
        criterion_3(params),
        criterion_4(params),
        criterion_5(params),
        criterion_6(params),
        criterion_7(params),
        criterion_8(params),
    ]
}

fn log_log_slope(x: &[f64], y: &[f64]) -> f64 {
    let n = x.len() as f64;
    let lx: Vec<f64> = x.iter().map(|v| v.ln()).collect();
    let ly: Vec<f64> = y.iter().map(|v| v.ln()).collect();
    let sx: f64 = lx.iter().sum();
    let sy: f64 = ly.iter().sum();
    let sxx: f64 = lx.iter().map(|v| v * v).sum();
    let sxy: f64 = lx.iter().zip(&ly).map(|(a, b)| a * b).sum();
    (n * sxy - sx * sy) / (n * sxx - sx * sx)
}

#[cfg(test)]
mod tests {
    use super::*;
    use std::f64::consts::TAU;

    #[test]
    fn check_result_constructors() {
        let ok = CheckResult::bound("a", "x <= b", 0.5, 1.0);
        assert!(ok.pass);
        let bad = CheckResult::bound("a", "x <= b", 2.0, 1.0);
        assert!(!bad.pass);
        let close = CheckResult::close("b", "x = y", 1.0 + 1e-16, 1.0, 1e-15);
        assert!(close.pass);
        let far = CheckResult::close("b", "x = y", 1.1, 1.0, 1e-3);
        assert!(!far.pass);
    }

    #[test]
    fn quick_criteria_pass_on_defaults() {
        let p = ParticleParams::new(1.0, 0.5, 1.0, TAU, 10).unwrap();
        assert!(criterion_2(&p).pass());
        assert!(criterion_4(&p).pass());
        assert!(criterion_6(&p).pass());
        assert!(criterion_7(&p).pass());
        assert!(criterion_8(&p).pass());
    }
}
