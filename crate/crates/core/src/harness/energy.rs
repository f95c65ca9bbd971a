//! Energy-stability study on the periodic sine-offset problem.

use std::fmt;
use std::path::{Path, PathBuf};

use rayon::prelude::*;

use super::config::{Case, ExperimentConfig};
use super::output::{ensure_dir, fmt_f64, fmt_opt, slug, write_table, yes_no, Table};
use super::{build_discretization, initial_project, march};
use crate::diagnostics::{
    classify_energy, conserved_quantity, energy, final_relative_drift, max_relative_growth, DiagnosticsRecord,
    EnergyVerdict,
};
use crate::error::Result;
use crate::flux::FluxKind;
use crate::scheme::VolumeRule;

/// Energy above this multiple of `E(0)` counts as divergence.
pub const DIVERGENCE_FACTOR: f64 = 1e6;

/// One time-accurate run and its energy history.
#[derive(Debug, Clone)]
pub struct EnergyRun {
    pub case: Case,
    pub flux: FluxKind,
    pub quadrature: VolumeRule,
    pub p: usize,
    pub elements: usize,
    /// Correction parameter actually used.
    pub c: f64,
    pub records: Vec<DiagnosticsRecord>,
    pub diverged_at: Option<f64>,
    pub verdict: EnergyVerdict,
}

impl EnergyRun {
    pub fn energies(&self) -> Vec<f64> {
        self.records.iter().map(|r| r.energy).collect()
    }

    pub fn final_drift(&self) -> f64 {
        final_relative_drift(&self.energies())
    }

    pub fn max_growth(&self) -> f64 {
        max_relative_growth(&self.energies())
    }

    /// Largest `|Q(t) - Q(0)|` of the conserved integral over the history.
    pub fn max_conserved_drift(&self) -> f64 {
        let q0 = self.records[0].conserved;
        self.records
            .iter()
            .map(|r| (r.conserved - q0).abs())
            .fold(0.0, f64::max)
    }

    pub fn series_table(&self) -> Table {
        let mut t = Table::new(&["t", "energy", "energy_rel", "conserved_drift"]);
        let e0 = self.records[0].energy;
        let q0 = self.records[0].conserved;
        for r in &self.records {
            t.push(vec![
                fmt_f64(r.t),
                fmt_f64(r.energy),
                fmt_f64(r.energy / e0),
                fmt_f64(r.conserved - q0),
            ]);
        }
        t
    }

    fn stem(&self) -> String {
        format!(
            "energy_{}_{}_{}_{}_p{}_m{}",
            self.case.variant,
            slug(&self.case.c.label()),
            self.flux.name().to_ascii_lowercase(),
            self.quadrature,
            self.p,
            self.elements
        )
    }
}

/// Verdict shared by all degrees (and meshes) of a table row.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Agreement {
    Yes,
    No,
    /// Some runs satisfy the property and some do not.
    Mixed,
}

impl Agreement {
    fn of(values: impl IntoIterator<Item = bool>) -> Self {
        let (mut any_yes, mut any_no) = (false, false);
        for v in values {
            any_yes |= v;
            any_no |= !v;
        }
        match (any_yes, any_no) {
            (true, false) => Agreement::Yes,
            (false, true) => Agreement::No,
            _ => Agreement::Mixed,
        }
    }
}

impl fmt::Display for Agreement {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Agreement::Yes => "Yes",
            Agreement::No => "No",
            Agreement::Mixed => "Mixed",
        })
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct EnergySummaryRow {
    pub case: Case,
    pub flux: FluxKind,
    pub quadrature: VolumeRule,
    pub conserved: Agreement,
    pub monotone: Agreement,
}

#[derive(Debug, Clone)]
pub struct EnergyStudy {
    pub runs: Vec<EnergyRun>,
    pub summary: Vec<EnergySummaryRow>,
}

impl EnergyStudy {
    pub fn row(&self, case: Case, flux: FluxKind, quadrature: VolumeRule) -> Option<&EnergySummaryRow> {
        self.summary
            .iter()
            .find(|r| r.case == case && r.flux == flux && r.quadrature == quadrature)
    }

    pub fn runs_of<'a>(
        &'a self,
        case: Case,
        flux: FluxKind,
        quadrature: VolumeRule,
    ) -> impl Iterator<Item = &'a EnergyRun> + 'a {
        self.runs
            .iter()
            .filter(move |r| r.case == case && r.flux == flux && r.quadrature == quadrature)
    }

    pub fn summary_table(&self) -> Table {
        let mut t = Table::new(&["scheme", "flux", "c", "quadrature", "conserved", "monotone"]);
        for r in &self.summary {
            t.push(vec![
                r.case.variant.to_string(),
                r.flux.to_string(),
                r.case.c.label(),
                r.quadrature.to_string(),
                r.conserved.to_string(),
                r.monotone.to_string(),
            ]);
        }
        t
    }

    /// Per-run details behind the summary.
    pub fn runs_table(&self) -> Table {
        let mut t = Table::new(&[
            "scheme",
            "flux",
            "c",
            "quadrature",
            "p",
            "elements",
            "c_value",
            "conserved",
            "monotone",
            "final_drift",
            "max_growth",
            "max_conserved_drift",
            "diverged_at",
        ]);
        for r in &self.runs {
            t.push(vec![
                r.case.variant.to_string(),
                r.flux.to_string(),
                r.case.c.label(),
                r.quadrature.to_string(),
                r.p.to_string(),
                r.elements.to_string(),
                fmt_f64(r.c),
                yes_no(r.verdict.conserved).into(),
                yes_no(r.verdict.monotone).into(),
                fmt_f64(r.final_drift()),
                fmt_f64(r.max_growth()),
                fmt_f64(r.max_conserved_drift()),
                fmt_opt(r.diverged_at),
            ]);
        }
        t
    }

    /// Writes the summary, the per-run table, and optionally every series.
    pub fn write(&self, dir: &Path, series: bool, dat: bool) -> Result<Vec<PathBuf>> {
        ensure_dir(dir)?;
        let mut written = write_table(dir, "energy_summary", &self.summary_table(), dat)?;
        written.extend(write_table(dir, "energy_runs", &self.runs_table(), dat)?);
        if series {
            for r in &self.runs {
                written.extend(write_table(dir, &r.stem(), &r.series_table(), dat)?);
            }
        }
        Ok(written)
    }
}

/// Runs one configuration to `t_final`, recording energy and the conserved
/// integral every `record_every` steps.
pub fn run_energy_case(
    cfg: &ExperimentConfig,
    case: Case,
    flux: FluxKind,
    quadrature: VolumeRule,
    p: usize,
    elements: usize,
) -> Result<EnergyRun> {
    let disc = build_discretization(cfg, case, flux, quadrature, p, elements)?;
    let tl = cfg.time_loop()?;
    let mut field = initial_project(cfg.initial_condition, &disc);
    let mut records = Vec::new();
    let mut e0 = None;
    let mut diverged_at = march(&disc, &mut field, &tl, cfg.source, |f| {
        let e = energy(&disc, f);
        records.push(DiagnosticsRecord {
            t: f.t,
            energy: e,
            conserved: conserved_quantity(&disc, f),
            l2_error: None,
        });
        let e0 = *e0.get_or_insert(e);
        e.is_finite() && e <= DIVERGENCE_FACTOR * e0
    });
    if diverged_at.is_some() && records.last().map(|r| r.t) != diverged_at {
        // the state went non-finite before the next record
        let e = energy(&disc, &field);
        records.push(DiagnosticsRecord {
            t: field.t,
            energy: e,
            conserved: conserved_quantity(&disc, &field),
            l2_error: None,
        });
    }
    if diverged_at.is_none() && records.iter().any(|r| !r.energy.is_finite()) {
        diverged_at = Some(field.t);
    }
    let verdict = classify_energy(
        &records.iter().map(|r| r.energy).collect::<Vec<_>>(),
        diverged_at.is_some(),
    );
    Ok(EnergyRun {
        case,
        flux,
        quadrature,
        p,
        elements,
        c: disc.config().c,
        records,
        diverged_at,
        verdict,
    })
}

/// Every case × flux × quadrature × degree × mesh of the config.
///
/// Cases that cannot run on a quadrature (lumped-Lobatto off GLL) are
/// skipped. Each summary row combines all degrees and meshes.
pub fn run_energy_study(cfg: &ExperimentConfig) -> Result<EnergyStudy> {
    let mut jobs = Vec::new();
    let mut groups = Vec::new();
    for &quadrature in &cfg.quadratures {
        for &case in &cfg.cases {
            if !case.runs_on(quadrature) {
                continue;
            }
            for &flux in &cfg.fluxes {
                groups.push((case, flux, quadrature));
                for &p in &cfg.degrees {
                    cfg.resolve_c(case.c, p)?;
                    for &m in &cfg.elements {
                        jobs.push((case, flux, quadrature, p, m));
                    }
                }
            }
        }
    }
    let runs = jobs
        .par_iter()
        .map(|&(case, flux, q, p, m)| run_energy_case(cfg, case, flux, q, p, m))
        .collect::<Result<Vec<_>>>()?;
    let summary = groups
        .into_iter()
        .map(|(case, flux, quadrature)| {
            let group: Vec<_> = runs
                .iter()
                .filter(|r| r.case == case && r.flux == flux && r.quadrature == quadrature)
                .collect();
            EnergySummaryRow {
                case,
                flux,
                quadrature,
                conserved: Agreement::of(group.iter().map(|r| r.verdict.conserved)),
                monotone: Agreement::of(group.iter().map(|r| r.verdict.monotone)),
            }
        })
        .collect();
    Ok(EnergyStudy { runs, summary })
}
