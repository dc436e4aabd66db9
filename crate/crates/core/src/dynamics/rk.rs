//! Adaptive Dormand-Prince 5(4) integration with exact landing on
//! requested output times.
//!
//! The systems integrated here are small, linear and non-stiff, so an
//! embedded explicit pair with PI-free step control is entirely
//! adequate. Steps are clamped so the solver lands exactly on each
//! requested sample time; no interpolation error enters the output.

use crate::error::{Error, Result};

const C: [f64; 7] = [0.0, 1.0 / 5.0, 3.0 / 10.0, 4.0 / 5.0, 8.0 / 9.0, 1.0, 1.0];

const A: [[f64; 6]; 6] = [
    [1.0 / 5.0, 0.0, 0.0, 0.0, 0.0, 0.0],
    [3.0 / 40.0, 9.0 / 40.0, 0.0, 0.0, 0.0, 0.0],
    [44.0 / 45.0, -56.0 / 15.0, 32.0 / 9.0, 0.0, 0.0, 0.0],
    [
        19372.0 / 6561.0,
        -25360.0 / 2187.0,
        64448.0 / 6561.0,
        -212.0 / 729.0,
        0.0,
        0.0,
    ],
    [
        9017.0 / 3168.0,
        -355.0 / 33.0,
        46732.0 / 5247.0,
        49.0 / 176.0,
        -5103.0 / 18656.0,
        0.0,
    ],
    [
        35.0 / 384.0,
        0.0,
        500.0 / 1113.0,
        125.0 / 192.0,
        -2187.0 / 6784.0,
        11.0 / 84.0,
    ],
];

/// Fifth-order weights (identical to the last A row: first-same-as-last).
const B5: [f64; 7] = [
    35.0 / 384.0,
    0.0,
    500.0 / 1113.0,
    125.0 / 192.0,
    -2187.0 / 6784.0,
    11.0 / 84.0,
    0.0,
];

/// Difference between the 5th- and embedded 4th-order weights.
const E: [f64; 7] = [
    71.0 / 57600.0,
    0.0,
    -71.0 / 16695.0,
    71.0 / 1920.0,
    -17253.0 / 339200.0,
    22.0 / 525.0,
    -1.0 / 40.0,
];

#[derive(Debug, Clone, Copy, Default)]
pub struct StepStats {
    pub accepted: usize,
    pub rejected: usize,
}

/// Integrate dy/dt = rhs(t, y) from `t0` to the last entry of `times`,
/// recording the state at each requested time. `times` must be strictly
/// increasing and start after `t0`.
pub fn integrate_at<const N: usize, F>(
    rhs: F,
    t0: f64,
    y0: [f64; N],
    times: &[f64],
    abs_tol: f64,
    rel_tol: f64,
) -> Result<(Vec<[f64; N]>, StepStats)>
where
    F: Fn(f64, &[f64; N]) -> [f64; N],
{
    if times.is_empty() {
        return Err(Error::usage("no output times requested"));
    }
    let t_end = *times.last().unwrap();
    if !(t_end > t0) {
        return Err(Error::usage("output times must lie beyond the start time"));
    }

    let mut t = t0;
    let mut y = y0;
    let mut k1 = rhs(t, &y);
    let mut h = initial_step(t0, t_end, &y, &k1, abs_tol, rel_tol);
    let mut stats = StepStats::default();
    let mut out = Vec::with_capacity(times.len());
    let mut next_out = 0;

    let max_steps = 50_000_000usize;
    for _ in 0..max_steps {
        if next_out >= times.len() {
            return Ok((out, stats));
        }
        let target = times[next_out];
        let h_try = h.min(target - t);
        if h_try <= 0.0 {
            // target == t to rounding; emit current state
            out.push(y);
            next_out += 1;
            continue;
        }
        if h_try < 1e-14 * t.abs().max(1.0) {
            return Err(Error::Integration {
                t,
                reason: "step size underflow".into(),
                last_state: y.to_vec(),
            });
        }

        let mut k = [[0.0; N]; 7];
        k[0] = k1;
        for stage in 1..7 {
            let mut ys = y;
            for (j, kj) in k.iter().enumerate().take(stage) {
                let a = A[stage - 1][j];
                if a != 0.0 {
                    for i in 0..N {
                        ys[i] += h_try * a * kj[i];
                    }
                }
            }
            k[stage] = rhs(t + C[stage] * h_try, &ys);
        }

        let mut y_new = y;
        for (j, kj) in k.iter().enumerate() {
            if B5[j] != 0.0 {
                for i in 0..N {
                    y_new[i] += h_try * B5[j] * kj[i];
                }
            }
        }

        // scaled RMS error estimate
        let mut err_sq = 0.0;
        for i in 0..N {
            let mut e = 0.0;
            for (j, kj) in k.iter().enumerate() {
                e += E[j] * kj[i];
            }
            e *= h_try;
            let scale = abs_tol + rel_tol * y[i].abs().max(y_new[i].abs());
            err_sq += (e / scale) * (e / scale);
        }
        let err = (err_sq / N as f64).sqrt();

        if !err.is_finite() || y_new.iter().any(|v| !v.is_finite()) {
            return Err(Error::Integration {
                t,
                reason: "state became non-finite (numerical blow-up)".into(),
                last_state: y.to_vec(),
            });
        }

        if err <= 1.0 {
            t += h_try;
            y = y_new;
            k1 = k[6]; // first-same-as-last
            stats.accepted += 1;
            if (t - target).abs() <= 1e-14 * target.abs().max(1.0) {
                t = target;
                out.push(y);
                next_out += 1;
            }
        } else {
            stats.rejected += 1;
        }

        let factor = if err > 0.0 {
            (0.9 * err.powf(-0.2)).clamp(0.2, 5.0)
        } else {
            5.0
        };
        h = (h_try * factor).min(t_end - t0);
    }

    Err(Error::Integration {
        t,
        reason: "step budget exhausted".into(),
        last_state: y.to_vec(),
    })
}

fn initial_step<const N: usize>(
    t0: f64,
    t_end: f64,
    y0: &[f64; N],
    f0: &[f64; N],
    abs_tol: f64,
    rel_tol: f64,
) -> f64 {
    let span = t_end - t0;
    let d0 = y0.iter().map(|v| v * v).sum::<f64>().sqrt();
    let d1 = f0.iter().map(|v| v * v).sum::<f64>().sqrt();
    let guess = if d1 > 1e-12 {
        0.01 * (d0.max(abs_tol) / d1)
    } else {
        span * 1e-3
    };
    guess.min(span).max(span * (rel_tol * 1e-2).max(1e-12))
}
