//! Operator-identity report over a grid of degrees, rules, and `c` values.

use std::path::{Path, PathBuf};

use super::config::{CChoice, ExperimentConfig};
use super::output::{ensure_dir, fmt_f64, fmt_opt, write_table, Table};
use crate::error::Result;
use crate::operators::{
    build_basis_of_kind, build_operators, rank_one_filter_inverse, sherman_morrison_filter_inverse,
    verify_kd_annihilation, verify_sbp,
};
use crate::scheme::VolumeRule;
use crate::Matrix;

#[derive(Debug, Clone, PartialEq)]
pub struct SbpRow {
    pub p: usize,
    pub quadrature: VolumeRule,
    pub c_label: String,
    pub c: f64,
    /// Largest entry of `S + Sᵀ - B`.
    pub sbp_defect: f64,
    /// `‖K_m M_m⁻¹ S‖ / ‖K_m‖`, zero when `c = 0`.
    pub kd_defect: f64,
    /// Closed-form inverse against the dense one, relative Frobenius norm.
    /// Only reported where the mass matrix is exact (GL rules).
    pub closed_form_residual: Option<f64>,
    /// Rank-one inverse with the traced denominator against the dense one.
    pub rank_one_residual: f64,
}

#[derive(Debug, Clone)]
pub struct SbpReport {
    pub rows: Vec<SbpRow>,
}

impl SbpReport {
    pub fn table(&self) -> Table {
        let mut t = Table::new(&[
            "p",
            "quadrature",
            "c",
            "c_value",
            "sbp_defect",
            "kd_defect",
            "closed_form_residual",
            "rank_one_residual",
        ]);
        for r in &self.rows {
            t.push(vec![
                r.p.to_string(),
                r.quadrature.to_string(),
                r.c_label.clone(),
                fmt_f64(r.c),
                fmt_f64(r.sbp_defect),
                fmt_f64(r.kd_defect),
                fmt_opt(r.closed_form_residual),
                fmt_f64(r.rank_one_residual),
            ]);
        }
        t
    }

    pub fn write(&self, dir: &Path, dat: bool) -> Result<Vec<PathBuf>> {
        ensure_dir(dir)?;
        write_table(dir, "sbp_check", &self.table(), dat)
    }

    pub fn max_sbp_defect(&self) -> f64 {
        self.rows.iter().map(|r| r.sbp_defect).fold(0.0, f64::max)
    }
}

fn relative(a: &Matrix, b: &Matrix) -> f64 {
    (a - b).norm() / b.norm()
}

/// Checks every degree × quadrature × `sbp_c` entry at the Jacobian of the
/// first configured mesh.
pub fn run_sbp_check(cfg: &ExperimentConfig) -> Result<SbpReport> {
    let jacobian = 0.5 * (cfg.x_right - cfg.x_left) / cfg.elements[0] as f64;
    let mut rows = Vec::new();
    for &p in &cfg.degrees {
        for &quadrature in &cfg.quadratures {
            let rule = quadrature.build(p)?;
            let basis = build_basis_of_kind(p, &rule, cfg.basis)?;
            for &choice in &cfg.sbp_c {
                let c = match choice {
                    // c+ is only tabulated for some degrees
                    CChoice::Plus => match cfg.resolve_c(choice, p) {
                        Ok(c) => c,
                        Err(_) => continue,
                    },
                    _ => cfg.resolve_c(choice, p)?,
                };
                let ops = build_operators(&basis, jacobian, c)?;
                let k_norm = ops.k_m().norm();
                let kd_defect = if k_norm > 0.0 {
                    verify_kd_annihilation(&ops) / k_norm
                } else {
                    0.0
                };
                let exact_mass = quadrature != VolumeRule::CollocatedGll;
                rows.push(SbpRow {
                    p,
                    quadrature,
                    c_label: choice.label(),
                    c,
                    sbp_defect: verify_sbp(&ops, &basis),
                    kd_defect,
                    closed_form_residual: exact_mass
                        .then(|| relative(&sherman_morrison_filter_inverse(&ops), ops.filter_inv())),
                    rank_one_residual: relative(&rank_one_filter_inverse(&ops), ops.filter_inv()),
                });
            }
        }
    }
    Ok(SbpReport { rows })
}
