//! Experiment runner: energy, convergence, and operator-identity studies.
//!
//! Runs inside a study are independent and execute on the rayon pool; each
//! time loop is sequential, and results are gathered in configuration
//! order so the written files do not depend on scheduling.

pub mod config;
pub mod energy;
pub mod ooa;
pub mod output;
pub mod sbp;

use std::f64::consts::PI;

pub use config::{CChoice, Case, ExperimentConfig, InitialCondition, SourceKind, Study};
pub use energy::{run_energy_study, Agreement, EnergyRun, EnergyStudy, EnergySummaryRow};
pub use ooa::{run_ooa_study, OoaRow, OoaStudy, OoaTable};
pub use sbp::{run_sbp_check, SbpReport, SbpRow};

use crate::error::Result;
use crate::flux::FluxKind;
use crate::mesh::Mesh1D;
use crate::scheme::{Discretization, SchemeConfig, SolutionField, VolumeRule};
use crate::time::{Rk4, TimeLoopConfig};

/// `q(x, t) = π sin(π(x - t)) (1 - cos(π(x - t)))`, the source that makes
/// [`exact_solution`] solve the forced Burgers equation.
pub fn manufactured_source(x: f64, t: f64) -> f64 {
    let a = PI * (x - t);
    PI * a.sin() * (1.0 - a.cos())
}

/// `u(x, t) = cos(π(x - t))`.
pub fn exact_solution(x: f64, t: f64) -> f64 {
    (PI * (x - t)).cos()
}

/// Projection of the initial condition on the scheme's volume rule.
pub fn initial_project(ic: InitialCondition, disc: &Discretization) -> SolutionField {
    disc.project(|x| ic.eval(x))
}

/// Discretization of one run described by the shared config fields.
pub fn build_discretization(
    cfg: &ExperimentConfig,
    case: Case,
    flux: FluxKind,
    rule: VolumeRule,
    p: usize,
    elements: usize,
) -> Result<Discretization> {
    let c = cfg.resolve_c(case.c, p)?;
    let scheme = SchemeConfig::new(case.variant, p, c, flux, rule)
        .with_basis(cfg.basis)
        .with_alpha(cfg.alpha);
    Discretization::new(scheme, Mesh1D::new(cfg.x_left, cfg.x_right, elements)?)
}

/// Advances `field` to `tl.t_final` with RK4.
///
/// `record` sees the initial state and every `tl.record_every`-th step
/// (plus the last one); returning `false` stops the run. Returns the time at
/// which the run stopped early, either from a non-finite state or from
/// `record`.
pub fn march<R>(
    disc: &Discretization,
    field: &mut SolutionField,
    tl: &TimeLoopConfig,
    source: SourceKind,
    mut record: R,
) -> Option<f64>
where
    R: FnMut(&SolutionField) -> bool,
{
    let src: Option<&dyn Fn(f64, f64) -> f64> = match source {
        SourceKind::None => None,
        SourceKind::Manufactured => Some(&manufactured_source),
    };
    let n_steps = tl.n_steps();
    let mut rk = Rk4::new(field.coeffs.len());
    field.t = 0.0;
    if !record(field) {
        return Some(0.0);
    }
    for n in 0..n_steps {
        let t = n as f64 * tl.dt;
        let stepped = rk.step(&mut field.coeffs, t, tl.dt, |t, u, du| disc.residual(u, t, src, du));
        field.t = (n + 1) as f64 * tl.dt;
        if stepped.is_err() {
            return Some(field.t);
        }
        if ((n + 1) % tl.record_every == 0 || n + 1 == n_steps) && !record(field) {
            return Some(field.t);
        }
    }
    None
}
