//! Classical four-stage Runge-Kutta integration.

use crate::error::{Error, Result};

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct TimeLoopConfig {
    pub dt: f64,
    pub t_final: f64,
    /// Diagnostics are recorded every `record_every` steps.
    pub record_every: usize,
}

impl TimeLoopConfig {
    pub fn new(dt: f64, t_final: f64, record_every: usize) -> Result<Self> {
        if !(dt > 0.0) || !dt.is_finite() {
            return Err(Error::InvalidParameter(format!("time step must be positive, got {dt}")));
        }
        if !(t_final >= 0.0) || !t_final.is_finite() {
            return Err(Error::InvalidParameter(format!(
                "final time must be non-negative, got {t_final}"
            )));
        }
        if record_every == 0 {
            return Err(Error::InvalidParameter("record_every must be at least 1".into()));
        }
        Ok(Self {
            dt,
            t_final,
            record_every,
        })
    }

    /// Number of fixed steps; `t_final` is rounded to the nearest multiple of `dt`.
    pub fn n_steps(&self) -> usize {
        (self.t_final / self.dt).round() as usize
    }
}

/// Stage buffers for [`Rk4::step`], reused across steps.
#[derive(Debug, Clone)]
pub struct Rk4 {
    k1: Vec<f64>,
    k2: Vec<f64>,
    k3: Vec<f64>,
    k4: Vec<f64>,
    stage: Vec<f64>,
}

impl Rk4 {
    pub fn new(n: usize) -> Self {
        Self {
            k1: vec![0.0; n],
            k2: vec![0.0; n],
            k3: vec![0.0; n],
            k4: vec![0.0; n],
            stage: vec![0.0; n],
        }
    }

    /// Advances `u` from `t` to `t + dt`. `rhs(t, u, du)` writes `du/dt`.
    ///
    /// Returns [`Error::Diverged`] if the new state has a non-finite entry.
    pub fn step<F>(&mut self, u: &mut [f64], t: f64, dt: f64, mut rhs: F) -> Result<()>
    where
        F: FnMut(f64, &[f64], &mut [f64]),
    {
        let half = 0.5 * dt;
        rhs(t, u, &mut self.k1);
        axpy_into(&mut self.stage, u, half, &self.k1);
        rhs(t + half, &self.stage, &mut self.k2);
        axpy_into(&mut self.stage, u, half, &self.k2);
        rhs(t + half, &self.stage, &mut self.k3);
        axpy_into(&mut self.stage, u, dt, &self.k3);
        rhs(t + dt, &self.stage, &mut self.k4);

        let sixth = dt / 6.0;
        let mut finite = true;
        for i in 0..u.len() {
            u[i] += sixth * (self.k1[i] + 2.0 * self.k2[i] + 2.0 * self.k3[i] + self.k4[i]);
            finite &= u[i].is_finite();
        }
        if finite {
            Ok(())
        } else {
            Err(Error::Diverged { t: t + dt })
        }
    }
}

fn axpy_into(out: &mut [f64], u: &[f64], a: f64, k: &[f64]) {
    for ((o, &ui), &ki) in out.iter_mut().zip(u).zip(k) {
        *o = ui + a * ki;
    }
}

/// One RK4 step on a freshly allocated workspace.
pub fn rk4_step<F>(u: &mut [f64], t: f64, dt: f64, rhs: F) -> Result<()>
where
    F: FnMut(f64, &[f64], &mut [f64]),
{
    Rk4::new(u.len()).step(u, t, dt, rhs)
}

#[cfg(test)]
mod tests {
    use super::*;
    use approx::assert_abs_diff_eq;

    #[test]
    fn zero_rhs_is_identity() {
        let mut u = vec![1.0, -2.0, 3.5];
        rk4_step(&mut u, 0.0, 0.1, |_, _, du| du.fill(0.0)).unwrap();
        assert_eq!(u, vec![1.0, -2.0, 3.5]);
    }

    #[test]
    fn exponential_decay_matches_taylor_series() {
        let dt: f64 = 0.1;
        let mut u = vec![1.0];
        rk4_step(&mut u, 0.0, dt, |_, u, du| du[0] = -u[0]).unwrap();
        let taylor = 1.0 - dt + dt.powi(2) / 2.0 - dt.powi(3) / 6.0 + dt.powi(4) / 24.0;
        assert_abs_diff_eq!(u[0], taylor, epsilon = 1e-15);
        assert_abs_diff_eq!(u[0], 0.9048375, epsilon = 1e-7);
    }

    #[test]
    fn constant_state_of_advection_surrogate_is_preserved() {
        // periodic upwind differences of a constant vanish identically
        let n = 16;
        let mut u = vec![0.75; n];
        for step in 0..10 {
            rk4_step(&mut u, step as f64 * 0.01, 0.01, |_, u, du| {
                for i in 0..n {
                    du[i] = -(u[i] - u[(i + n - 1) % n]) * 10.0;
                }
            })
            .unwrap();
        }
        assert!(u.iter().all(|&v| v == 0.75));
    }

    #[test]
    fn fourth_order_local_error() {
        let exact = |dt: f64| (-dt).exp();
        let err = |dt: f64| {
            let mut u = vec![1.0];
            rk4_step(&mut u, 0.0, dt, |_, u, du| du[0] = -u[0]).unwrap();
            (u[0] - exact(dt)).abs()
        };
        let ratio = err(0.2) / err(0.1);
        assert!((ratio / 32.0 - 1.0).abs() < 0.2, "ratio {ratio}");
    }

    #[test]
    fn source_time_is_sampled_at_stage_times() {
        let mut times = Vec::new();
        rk4_step(&mut [0.0], 1.0, 0.5, |t, _, du| {
            times.push(t);
            du[0] = 0.0;
        })
        .unwrap();
        assert_eq!(times, vec![1.0, 1.25, 1.25, 1.5]);
    }

    #[test]
    fn reports_divergence() {
        let mut u = vec![1.0];
        let r = rk4_step(&mut u, 0.0, 1.0, |_, _, du| du[0] = f64::NAN);
        assert!(matches!(r, Err(Error::Diverged { .. })));
    }

    #[test]
    fn config_validation() {
        assert!(TimeLoopConfig::new(0.0, 1.0, 1).is_err());
        assert!(TimeLoopConfig::new(1e-4, -1.0, 1).is_err());
        assert!(TimeLoopConfig::new(1e-4, 1.0, 0).is_err());
        assert_eq!(TimeLoopConfig::new(1e-4, 3.0, 10).unwrap().n_steps(), 30_000);
    }
}
