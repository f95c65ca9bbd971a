//! Convergence study against the manufactured solution.

use std::path::{Path, PathBuf};

use rayon::prelude::*;

use super::config::{Case, ExperimentConfig, SourceKind};
use super::output::{ensure_dir, fmt_f64, fmt_opt, slug, write_table, Table};
use super::{build_discretization, exact_solution, initial_project, march};
use crate::diagnostics::{l2_error, ooa_slopes};
use crate::error::Result;
use crate::flux::FluxKind;
use crate::scheme::VolumeRule;

#[derive(Debug, Clone, PartialEq)]
pub struct OoaRow {
    pub elements: usize,
    /// Spacing label: element Jacobian over the number of solution points,
    /// `1 / (M (p + 1))` on `[0, 2]`.
    pub dx: f64,
    /// `NaN` when the run diverged.
    pub l2_error: f64,
    /// Slope against the previous row; `None` on the first row or when
    /// either error is zero or non-finite.
    pub ooa: Option<f64>,
    pub diverged_at: Option<f64>,
}

#[derive(Debug, Clone)]
pub struct OoaTable {
    pub case: Case,
    pub flux: FluxKind,
    pub quadrature: VolumeRule,
    pub p: usize,
    pub c: f64,
    pub rows: Vec<OoaRow>,
}

impl OoaTable {
    pub fn errors(&self) -> Vec<f64> {
        self.rows.iter().map(|r| r.l2_error).collect()
    }

    pub fn table(&self) -> Table {
        let mut t = Table::new(&["dx", "l2_error", "ooa"]);
        for r in &self.rows {
            t.push(vec![fmt_f64(r.dx), fmt_f64(r.l2_error), fmt_opt(r.ooa)]);
        }
        t
    }

    fn stem(&self) -> String {
        format!(
            "ooa_{}_{}_{}_{}_p{}",
            self.case.variant,
            slug(&self.case.c.label()),
            self.flux.name().to_ascii_lowercase(),
            self.quadrature,
            self.p
        )
    }
}

#[derive(Debug, Clone)]
pub struct OoaStudy {
    pub tables: Vec<OoaTable>,
}

impl OoaStudy {
    pub fn find(&self, case: Case, quadrature: VolumeRule, p: usize) -> Option<&OoaTable> {
        self.tables
            .iter()
            .find(|t| t.case == case && t.quadrature == quadrature && t.p == p)
    }

    /// All tables in one long-format file.
    pub fn runs_table(&self) -> Table {
        let mut t = Table::new(&[
            "scheme",
            "c",
            "flux",
            "quadrature",
            "p",
            "c_value",
            "elements",
            "dx",
            "l2_error",
            "ooa",
        ]);
        for tab in &self.tables {
            for r in &tab.rows {
                t.push(vec![
                    tab.case.variant.to_string(),
                    tab.case.c.label(),
                    tab.flux.to_string(),
                    tab.quadrature.to_string(),
                    tab.p.to_string(),
                    fmt_f64(tab.c),
                    r.elements.to_string(),
                    fmt_f64(r.dx),
                    fmt_f64(r.l2_error),
                    fmt_opt(r.ooa),
                ]);
            }
        }
        t
    }

    pub fn write(&self, dir: &Path, dat: bool) -> Result<Vec<PathBuf>> {
        ensure_dir(dir)?;
        let mut written = write_table(dir, "ooa_runs", &self.runs_table(), dat)?;
        for t in &self.tables {
            written.extend(write_table(dir, &t.stem(), &t.table(), dat)?);
        }
        Ok(written)
    }
}

/// Errors below this are round-off; slopes touching them are undefined.
pub const ROUND_OFF_FLOOR: f64 = 1e-14;

fn slopes_above_floor(errors: &[f64], dxs: &[f64]) -> Vec<Option<f64>> {
    let clipped: Vec<f64> = errors
        .iter()
        .map(|&e| if e < ROUND_OFF_FLOOR { 0.0 } else { e })
        .collect();
    ooa_slopes(&clipped, dxs)
}

/// L2 error at `t_final` of one mesh, with the divergence time if any.
pub fn run_ooa_point(
    cfg: &ExperimentConfig,
    case: Case,
    flux: FluxKind,
    quadrature: VolumeRule,
    p: usize,
    elements: usize,
) -> Result<(f64, Option<f64>, f64)> {
    let disc = build_discretization(cfg, case, flux, quadrature, p, elements)?;
    let tl = cfg.time_loop()?;
    let mut field = initial_project(cfg.initial_condition, &disc);
    let diverged_at = march(&disc, &mut field, &tl, cfg.source, |_| true);
    let error = if diverged_at.is_some() {
        f64::NAN
    } else {
        let t = field.t;
        match cfg.source {
            SourceKind::Manufactured => l2_error(&disc, &field, |x| exact_solution(x, t)),
            // unforced runs are compared with the initial data (exact for steady states)
            SourceKind::None => l2_error(&disc, &field, |x| cfg.initial_condition.eval(x)),
        }
    };
    Ok((error, diverged_at, disc.config().c))
}

/// Runs every case × flux × quadrature × degree over the `elements`
/// refinement sequence.
pub fn run_ooa_study(cfg: &ExperimentConfig) -> Result<OoaStudy> {
    let mut heads = Vec::new();
    let mut jobs = Vec::new();
    for &quadrature in &cfg.quadratures {
        for &p in &cfg.degrees {
            for &case in &cfg.cases {
                if !case.runs_on(quadrature) {
                    continue;
                }
                cfg.resolve_c(case.c, p)?;
                for &flux in &cfg.fluxes {
                    heads.push((case, flux, quadrature, p));
                    for &m in &cfg.elements {
                        jobs.push((case, flux, quadrature, p, m));
                    }
                }
            }
        }
    }
    let points = jobs
        .par_iter()
        .map(|&(case, flux, q, p, m)| run_ooa_point(cfg, case, flux, q, p, m))
        .collect::<Result<Vec<_>>>()?;

    let half_length = 0.5 * (cfg.x_right - cfg.x_left);
    let per_table = cfg.elements.len();
    let tables = heads
        .into_iter()
        .zip(points.chunks(per_table))
        .map(|((case, flux, quadrature, p), pts)| {
            let dxs: Vec<f64> = cfg
                .elements
                .iter()
                .map(|&m| half_length / (m as f64 * (p + 1) as f64))
                .collect();
            let errors: Vec<f64> = pts.iter().map(|pt| pt.0).collect();
            let slopes = slopes_above_floor(&errors, &dxs);
            let rows = cfg
                .elements
                .iter()
                .enumerate()
                .map(|(i, &m)| OoaRow {
                    elements: m,
                    dx: dxs[i],
                    l2_error: errors[i],
                    ooa: if i == 0 { None } else { slopes[i - 1] },
                    diverged_at: pts[i].1,
                })
                .collect();
            OoaTable {
                case,
                flux,
                quadrature,
                p,
                c: pts[0].2,
                rows,
            }
        })
        .collect();
    Ok(OoaStudy { tables })
}
