//! Dormand-Prince 5(4) integrator with dense output at fixed sample times.
//!
//! The step-size controller is the usual `h·min(5, max(0.2, 0.9·err^(-1/5)))`
//! on the mixed-tolerance RMS error norm; steps are propagated with the
//! 5th-order solution (local extrapolation) and samples are read off the
//! 4th-order continuous extension, like MATLAB's `ode45`.

use crate::error::{Error, Result};

const C2: f64 = 1.0 / 5.0;
const C3: f64 = 3.0 / 10.0;
const C4: f64 = 4.0 / 5.0;
const C5: f64 = 8.0 / 9.0;

const A21: f64 = 1.0 / 5.0;
const A31: f64 = 3.0 / 40.0;
const A32: f64 = 9.0 / 40.0;
const A41: f64 = 44.0 / 45.0;
const A42: f64 = -56.0 / 15.0;
const A43: f64 = 32.0 / 9.0;
const A51: f64 = 19372.0 / 6561.0;
const A52: f64 = -25360.0 / 2187.0;
const A53: f64 = 64448.0 / 6561.0;
const A54: f64 = -212.0 / 729.0;
const A61: f64 = 9017.0 / 3168.0;
const A62: f64 = -355.0 / 33.0;
const A63: f64 = 46732.0 / 5247.0;
const A64: f64 = 49.0 / 176.0;
const A65: f64 = -5103.0 / 18656.0;
const A71: f64 = 35.0 / 384.0;
const A73: f64 = 500.0 / 1113.0;
const A74: f64 = 125.0 / 192.0;
const A75: f64 = -2187.0 / 6784.0;
const A76: f64 = 11.0 / 84.0;

// 5th minus 4th order weights
const E1: f64 = 71.0 / 57600.0;
const E3: f64 = -71.0 / 16695.0;
const E4: f64 = 71.0 / 1920.0;
const E5: f64 = -17253.0 / 339200.0;
const E6: f64 = 22.0 / 525.0;
const E7: f64 = -1.0 / 40.0;

// continuous extension
const D1: f64 = -12715105075.0 / 11282082432.0;
const D3: f64 = 87487479700.0 / 32700410799.0;
const D4: f64 = -10690763975.0 / 1880347072.0;
const D5: f64 = 701980252875.0 / 199316789632.0;
const D6: f64 = -1453857185.0 / 822651844.0;
const D7: f64 = 69997945.0 / 29380423.0;

/// Integrator settings.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Dp45Options {
    pub rel_tol: f64,
    pub abs_tol: f64,
    pub max_steps: usize,
}

impl Default for Dp45Options {
    fn default() -> Self {
        Self {
            rel_tol: 1e-6,
            abs_tol: 1e-9,
            max_steps: 50_000_000,
        }
    }
}

/// One Dormand-Prince step. `k[0]` must hold `f(t, y)` on entry; on exit
/// `k[6]` holds `f(t + h, y_new)`.
struct Stepper<F> {
    rhs: F,
    dim: usize,
    k: [Vec<f64>; 7],
    tmp: Vec<f64>,
    y_new: Vec<f64>,
}

impl<F: FnMut(f64, &[f64], &mut [f64])> Stepper<F> {
    fn new(rhs: F, dim: usize) -> Self {
        Self {
            rhs,
            dim,
            k: std::array::from_fn(|_| vec![0.0; dim]),
            tmp: vec![0.0; dim],
            y_new: vec![0.0; dim],
        }
    }

    fn stage(&mut self, t: f64, y: &[f64], h: f64, coeffs: &[f64], out: usize) {
        for i in 0..self.dim {
            let mut acc = 0.0;
            for (j, c) in coeffs.iter().enumerate() {
                acc += c * self.k[j][i];
            }
            self.tmp[i] = y[i] + h * acc;
        }
        let (rhs, tmp, k) = (&mut self.rhs, &self.tmp, &mut self.k);
        rhs(t, tmp, &mut k[out]);
    }

    fn step(&mut self, t: f64, y: &[f64], h: f64) {
        self.stage(t + C2 * h, y, h, &[A21], 1);
        self.stage(t + C3 * h, y, h, &[A31, A32], 2);
        self.stage(t + C4 * h, y, h, &[A41, A42, A43], 3);
        self.stage(t + C5 * h, y, h, &[A51, A52, A53, A54], 4);
        self.stage(t + h, y, h, &[A61, A62, A63, A64, A65], 5);
        for i in 0..self.dim {
            let k = &self.k;
            self.y_new[i] =
                y[i] + h * (A71 * k[0][i] + A73 * k[2][i] + A74 * k[3][i] + A75 * k[4][i] + A76 * k[5][i]);
        }
        let (rhs, y_new, k) = (&mut self.rhs, &self.y_new, &mut self.k);
        rhs(t + h, y_new, &mut k[6]);
    }

    fn error_norm(&self, y: &[f64], h: f64, opts: &Dp45Options) -> f64 {
        let k = &self.k;
        let sum: f64 = (0..self.dim)
            .map(|i| {
                let e = h
                    * (E1 * k[0][i] + E3 * k[2][i] + E4 * k[3][i] + E5 * k[4][i] + E6 * k[5][i] + E7 * k[6][i]);
                let sc = opts.abs_tol + opts.rel_tol * y[i].abs().max(self.y_new[i].abs());
                (e / sc).powi(2)
            })
            .sum();
        (sum / self.dim as f64).sqrt()
    }

    /// Evaluates the continuous extension at `theta ∈ [0, 1]` of the last step.
    fn dense(&self, y: &[f64], h: f64, theta: f64, out: &mut [f64]) {
        let k = &self.k;
        let theta1 = 1.0 - theta;
        for i in 0..self.dim {
            let r1 = y[i];
            let r2 = self.y_new[i] - y[i];
            let r3 = h * k[0][i] - r2;
            let r4 = r2 - h * k[6][i] - r3;
            let r5 = h
                * (D1 * k[0][i] + D3 * k[2][i] + D4 * k[3][i] + D5 * k[4][i] + D6 * k[5][i] + D7 * k[6][i]);
            out[i] = r1 + theta * (r2 + theta1 * (r3 + theta * (r4 + theta1 * r5)));
        }
    }
}

fn initial_step<F: FnMut(f64, &[f64], &mut [f64])>(
    rhs: &mut F,
    y0: &[f64],
    f0: &[f64],
    opts: &Dp45Options,
    h_max: f64,
) -> f64 {
    let dim = y0.len();
    let scale = |i: usize| opts.abs_tol + opts.rel_tol * y0[i].abs();
    let rms = |v: &dyn Fn(usize) -> f64| ((0..dim).map(|i| v(i).powi(2)).sum::<f64>() / dim as f64).sqrt();
    let d0 = rms(&|i| y0[i] / scale(i));
    let d1 = rms(&|i| f0[i] / scale(i));
    let h0 = if d0 < 1e-5 || d1 < 1e-5 { 1e-6 } else { 0.01 * d0 / d1 }.min(h_max);
    let y1: Vec<f64> = (0..dim).map(|i| y0[i] + h0 * f0[i]).collect();
    let mut f1 = vec![0.0; dim];
    rhs(h0, &y1, &mut f1);
    let d2 = rms(&|i| (f1[i] - f0[i]) / scale(i)) / h0;
    let h1 = if d1.max(d2) <= 1e-15 {
        (h0 * 1e-3).max(1e-6)
    } else {
        (0.01 / d1.max(d2)).powf(1.0 / 5.0)
    };
    (100.0 * h0).min(h1).min(h_max)
}

/// Integrates `y' = rhs(t, y)` from `t = 0` and hands the state at each
/// `t = k·dt`, `k = 0..n_samples`, to `sink`.
pub fn integrate_dp45_with<F, S>(
    mut rhs: F,
    initial: &[f64],
    dt: f64,
    n_samples: usize,
    opts: &Dp45Options,
    mut sink: S,
) -> Result<()>
where
    F: FnMut(f64, &[f64], &mut [f64]),
    S: FnMut(usize, &[f64]),
{
    if !(opts.rel_tol > 0.0 && opts.abs_tol > 0.0) {
        return Err(Error::InvalidParameter("tolerances must be positive".into()));
    }
    if !(dt > 0.0) {
        return Err(Error::InvalidParameter("sample step must be positive".into()));
    }
    if n_samples == 0 {
        return Ok(());
    }
    let dim = initial.len();
    let mut y = initial.to_vec();
    sink(0, &y);
    if n_samples == 1 {
        return Ok(());
    }
    let t_end = (n_samples - 1) as f64 * dt;
    let h_max = t_end;

    let mut f0 = vec![0.0; dim];
    rhs(0.0, &y, &mut f0);
    let mut h = initial_step(&mut rhs, &y, &f0, opts, h_max);
    let mut stepper = Stepper::new(rhs, dim);
    stepper.k[0].copy_from_slice(&f0);

    let mut t = 0.0;
    let mut next_sample = 1usize;
    let mut out = vec![0.0; dim];
    let mut steps = 0usize;
    let mut rejected_last = false;

    while next_sample < n_samples {
        if steps >= opts.max_steps {
            return Err(Error::TooManySteps {
                t,
                max_steps: opts.max_steps,
            });
        }
        if h < 16.0 * f64::EPSILON * t.abs().max(1.0) {
            return Err(Error::StepUnderflow { t });
        }
        let h_step = h.min(t_end - t);
        stepper.step(t, &y, h_step);
        steps += 1;
        let err = stepper.error_norm(&y, h_step, opts);
        if !err.is_finite() {
            h = h_step * 0.2;
            rejected_last = true;
            continue;
        }
        if err <= 1.0 {
            let t_new = if h_step == t_end - t { t_end } else { t + h_step };
            while next_sample < n_samples {
                let ts = next_sample as f64 * dt;
                if ts > t_new && t_new < t_end {
                    break;
                }
                let theta = ((ts - t) / h_step).clamp(0.0, 1.0);
                stepper.dense(&y, h_step, theta, &mut out);
                sink(next_sample, &out);
                next_sample += 1;
            }
            y.copy_from_slice(&stepper.y_new);
            let (k0, rest) = stepper.k.split_at_mut(1);
            k0[0].copy_from_slice(&rest[5]);
            t = t_new;
            let mut factor = (0.9 * err.powf(-0.2)).clamp(0.2, 5.0);
            if rejected_last {
                factor = factor.min(1.0);
            }
            rejected_last = false;
            h = h_step * factor;
        } else {
            h = h_step * (0.9 * err.powf(-0.2)).max(0.2);
            rejected_last = true;
        }
    }
    Ok(())
}

/// Collects the sampled states of [`integrate_dp45_with`].
pub fn integrate_dp45<F>(rhs: F, initial: &[f64], dt: f64, n_samples: usize, opts: &Dp45Options) -> Result<Vec<Vec<f64>>>
where
    F: FnMut(f64, &[f64], &mut [f64]),
{
    let mut samples = Vec::with_capacity(n_samples);
    integrate_dp45_with(rhs, initial, dt, n_samples, opts, |_, y| samples.push(y.to_vec()))?;
    Ok(samples)
}

/// `steps` fixed Dormand-Prince steps of size `h` (no error control).
pub fn dp45_fixed_step<F>(rhs: F, initial: &[f64], h: f64, steps: usize) -> Vec<f64>
where
    F: FnMut(f64, &[f64], &mut [f64]),
{
    let dim = initial.len();
    let mut y = initial.to_vec();
    let mut stepper = Stepper::new(rhs, dim);
    let mut f0 = vec![0.0; dim];
    (stepper.rhs)(0.0, &y, &mut f0);
    stepper.k[0] = f0;
    for s in 0..steps {
        let t = s as f64 * h;
        stepper.step(t, &y, h);
        y.copy_from_slice(&stepper.y_new);
        let (k0, rest) = stepper.k.split_at_mut(1);
        k0[0].copy_from_slice(&rest[5]);
    }
    y
}
