//! Acceptance suite: one PASS/FAIL line per criterion.
//!
//! Checks that are known not to reproduce (see the decisions ledger) are
//! still evaluated and reported as FAIL; the test only aborts on failures
//! outside that list, or when a known failure starts passing.

use esfr_core::diagnostics::{
    conservation_rate, energy_rate, surface_energy_rate, ENERGY_CONSERVATION_TOL, MONOTONE_GROWTH_TOL,
};
use esfr_core::flux::{numerical_flux, FluxKind, InterfaceState};
use esfr_core::harness::{
    run_energy_study, run_ooa_study, run_sbp_check, Agreement, CChoice, Case, EnergyStudy, ExperimentConfig, OoaStudy,
    Study,
};
use esfr_core::mesh::Mesh1D;
use esfr_core::operators::{
    build_basis, build_operators, c_plus_default, verify_kd_annihilation, verify_sbp, BasisKind,
};
use esfr_core::quadrature::gauss_lobatto_legendre;
use esfr_core::scheme::{Discretization, SchemeConfig, SchemeVariant, SolutionField, VolumeRule};
use rand::rngs::StdRng;
use rand::{Rng, SeedableRng};

// Straight to stderr so the report shows even when libtest captures output.
macro_rules! say {
    ($($t:tt)*) => {{
        use std::io::Write;
        let _ = writeln!(std::io::stderr(), $($t)*);
    }};
}

/// Checks that do not reproduce; names are matched by prefix.
const KNOWN_UNREPRODUCIBLE: &[&str] = &[
    // conservative DG on GL(p+3) integrates the energy exactly and is stable
    "table3 cons-dg-strong",
    // overintegrated classical split tracks the GL(p+1) errors
    "table6 classical-split",
    "table7 classical-split",
];

struct Check {
    name: String,
    pass: bool,
    detail: String,
}

struct Criterion {
    id: usize,
    title: &'static str,
    checks: Vec<Check>,
}

impl Criterion {
    fn new(id: usize, title: &'static str) -> Self {
        Self {
            id,
            title,
            checks: Vec::new(),
        }
    }

    fn check(&mut self, name: impl Into<String>, pass: bool, detail: impl Into<String>) {
        self.checks.push(Check {
            name: name.into(),
            pass,
            detail: detail.into(),
        });
    }

    fn passed(&self) -> bool {
        self.checks.iter().all(|c| c.pass)
    }

    fn report(&self) {
        let failed: Vec<_> = self.checks.iter().filter(|c| !c.pass).collect();
        say!(
            "{} criterion {}: {} ({}/{} checks)",
            if failed.is_empty() { "PASS" } else { "FAIL" },
            self.id,
            self.title,
            self.checks.len() - failed.len(),
            self.checks.len()
        );
        for c in failed {
            let known = if is_known(&c.name) { " [known]" } else { "" };
            say!("    failed{known}: {} ({})", c.name, c.detail);
        }
    }
}

fn is_known(name: &str) -> bool {
    KNOWN_UNREPRODUCIBLE.iter().any(|k| name.starts_with(k))
}

fn max_diff(a: &[f64], b: &[f64]) -> f64 {
    a.iter().zip(b).map(|(x, y)| (x - y).abs()).fold(0.0, f64::max)
}

fn max_abs(a: &[f64]) -> f64 {
    a.iter().fold(0.0_f64, |m, v| m.max(v.abs()))
}

fn random_field(d: &Discretization, rng: &mut StdRng) -> SolutionField {
    let mut f = d.zero_field();
    f.coeffs.iter_mut().for_each(|v| *v = rng.gen_range(-1.0..1.0));
    f
}

fn disc(variant: SchemeVariant, p: usize, c: f64, flux: FluxKind, rule: VolumeRule, m: usize) -> Discretization {
    let cfg = SchemeConfig::new(variant, p, c, flux, rule);
    Discretization::new(cfg, Mesh1D::new(0.0, 2.0, m).unwrap()).unwrap()
}

fn operator_identities() -> Criterion {
    let mut crit = Criterion::new(1, "operator identities");
    let report = run_sbp_check(&ExperimentConfig::defaults(Study::SbpCheck)).unwrap();
    for r in &report.rows {
        let tag = format!("p={} {} c={}", r.p, r.quadrature, r.c_label);
        crit.check(
            format!("sbp {tag}"),
            r.sbp_defect <= 1e-12,
            format!("{:e}", r.sbp_defect),
        );
        crit.check(format!("kd {tag}"), r.kd_defect <= 1e-10, format!("{:e}", r.kd_defect));
        let tol = if r.c >= 1e4 { 1e-8 } else { 1e-10 };
        let inverse = r.closed_form_residual.unwrap_or(r.rank_one_residual);
        crit.check(format!("inverse {tag}"), inverse <= tol, format!("{inverse:e}"));
    }
    // nodal basis, same identities that do not involve the inverse
    for p in 1..=6 {
        for rule in VolumeRule::ALL {
            let basis = build_basis(p, &rule.build(p).unwrap()).unwrap();
            let ops = build_operators(&basis, 0.125, 1e-3).unwrap();
            let sbp = verify_sbp(&ops, &basis);
            let kd = verify_kd_annihilation(&ops) / ops.k_m().norm();
            crit.check(format!("nodal sbp p={p} {rule}"), sbp <= 1e-12, format!("{sbp:e}"));
            crit.check(format!("nodal kd p={p} {rule}"), kd <= 1e-10, format!("{kd:e}"));
        }
    }
    crit
}

fn proof_identities() -> Criterion {
    let mut crit = Criterion::new(2, "energy and conservation identities");
    let mut rng = StdRng::seed_from_u64(2024);
    for c in [0.0, c_plus_default(4).unwrap()] {
        for flux in [FluxKind::Econ, FluxKind::Llf] {
            let d = disc(SchemeVariant::SplitStrong, 4, c, flux, VolumeRule::Gl, 8);
            let (mut gap, mut cons, mut econ, mut llf) = (0.0_f64, 0.0_f64, 0.0_f64, f64::NEG_INFINITY);
            for _ in 0..50 {
                let f = random_field(&d, &mut rng);
                let r = d.residual_field(&f, None);
                let rate = energy_rate(&d, &f, &r);
                gap = gap.max((rate - surface_energy_rate(&d, &f)).abs());
                cons = cons.max(conservation_rate(&d, &r).abs());
                match flux {
                    FluxKind::Econ => econ = econ.max(rate.abs()),
                    FluxKind::Llf => llf = llf.max(rate),
                }
            }
            let tag = format!("c={c:e} {flux}");
            crit.check(format!("surface rate {tag}"), gap <= 1e-12, format!("{gap:e}"));
            crit.check(format!("conservation {tag}"), cons <= 1e-13, format!("{cons:e}"));
            match flux {
                FluxKind::Econ => crit.check(format!("econ rate {tag}"), econ <= 1e-13, format!("{econ:e}")),
                FluxKind::Llf => crit.check(format!("llf rate {tag}"), llf <= 1e-13, format!("{llf:e}")),
            }
        }
    }
    let mut worst = 0.0_f64;
    for _ in 0..10_000 {
        let v: f64 = rng.gen_range(-3.0..3.0);
        let w: f64 = rng.gen_range(-3.0..3.0);
        let f = numerical_flux(InterfaceState::new(v, w), FluxKind::Econ);
        worst = worst.max((f - (w * w + w * v + v * v) / 6.0).abs());
    }
    crit.check("econ closed form", worst <= 1e-14, format!("{worst:e}"));
    crit
}

/// Collocated split residual from a GLL differentiation matrix built with
/// barycentric weights `w_j = 1 / Π_{k≠j}(x_j - x_k)`.
fn collocated_oracle(p: usize, u: &[f64], jac: f64, flux: [f64; 2]) -> Vec<f64> {
    let rule = gauss_lobatto_legendre(p + 1).unwrap();
    let x = rule.nodes();
    let wq = rule.weights();
    let n = p + 1;
    let bw: Vec<f64> = (0..n)
        .map(|j| 1.0 / (0..n).filter(|&k| k != j).map(|k| x[j] - x[k]).product::<f64>())
        .collect();
    let mut d = vec![vec![0.0; n]; n];
    for i in 0..n {
        for j in 0..n {
            if i != j {
                d[i][j] = bw[j] / bw[i] / (x[i] - x[j]);
            }
        }
        d[i][i] = -d[i].iter().sum::<f64>();
    }
    let alpha = 2.0 / 3.0;
    let mut out = vec![0.0; n];
    for i in 0..n {
        let cons: f64 = (0..n).map(|j| d[i][j] * 0.5 * u[j] * u[j]).sum();
        let adv: f64 = (0..n).map(|j| d[i][j] * u[j]).sum();
        out[i] = -(alpha * cons + (1.0 - alpha) * u[i] * adv) / jac;
    }
    out[0] += (flux[0] - 0.5 * u[0] * u[0]) / (wq[0] * jac);
    out[p] -= (flux[1] - 0.5 * u[p] * u[p]) / (wq[p] * jac);
    out
}

fn equivalences() -> Criterion {
    use SchemeVariant::*;
    let mut crit = Criterion::new(3, "strong/weak and collocated equivalences");
    let mut rng = StdRng::seed_from_u64(33);
    for rule in VolumeRule::ALL {
        for c in [0.0, c_plus_default(4).unwrap(), 1.0] {
            for (strong, weak) in [(ConsDgStrong, DgWeak), (EsfrStrong, EsfrWeak), (SplitStrong, SplitWeak)] {
                let d = disc(strong, 4, c, FluxKind::Llf, rule, 6);
                let mut worst = 0.0_f64;
                for _ in 0..5 {
                    let f = random_field(&d, &mut rng);
                    let t = d.compute_traces(&f);
                    for m in 0..6 {
                        let a = d.element_residual_as(strong, &f, &t, m);
                        let b = d.element_residual_as(weak, &f, &t, m);
                        worst = worst.max(max_diff(&a, &b) / max_abs(&a).max(1.0));
                    }
                }
                crit.check(
                    format!("{strong}={weak} {rule} c={c:e}"),
                    worst <= 1e-12,
                    format!("{worst:e}"),
                );
            }
        }
    }
    for p in [2, 3, 4, 5] {
        for flux in [FluxKind::Econ, FluxKind::Llf] {
            let d = disc(SplitStrong, p, 0.0, flux, VolumeRule::CollocatedGll, 5);
            let f = random_field(&d, &mut rng);
            let t = d.compute_traces(&f);
            let r = d.residual_field(&f, None);
            let mut worst = 0.0_f64;
            for m in 0..5 {
                let faces = [t.edge_flux[(m + 4) % 5], t.edge_flux[m]];
                let o = collocated_oracle(p, f.element(m), d.mesh().jacobian(), faces);
                worst = worst.max(max_diff(r.element(m), &o) / max_abs(&o).max(1.0));
            }
            crit.check(
                format!("collocated oracle p={p} {flux}"),
                worst <= 1e-12,
                format!("{worst:e}"),
            );
        }
    }
    for rule in VolumeRule::ALL {
        let split = Discretization::new(
            SchemeConfig::new(SplitStrong, 4, 0.0, FluxKind::Llf, rule).with_alpha(1.0),
            Mesh1D::new(0.0, 2.0, 6).unwrap(),
        )
        .unwrap();
        let dg = disc(ConsDgStrong, 4, 0.0, FluxKind::Llf, rule, 6);
        let f = random_field(&dg, &mut rng);
        let a = split.residual_field(&f, None);
        let b = dg.residual_field(&f, None);
        let gap = max_diff(&a.coeffs, &b.coeffs) / max_abs(&b.coeffs).max(1.0);
        crit.check(format!("alpha=1 is cons dg {rule}"), gap <= 1e-13, format!("{gap:e}"));
    }
    crit
}

fn table_name(rule: VolumeRule) -> &'static str {
    match rule {
        VolumeRule::CollocatedGll => "table1",
        VolumeRule::Gl => "table2",
        VolumeRule::GlOverintegrated => "table3",
    }
}

fn energy_reproduction(study: &EnergyStudy) -> Criterion {
    use Agreement::{No, Yes};
    use SchemeVariant::*;
    let mut crit = Criterion::new(4, "energy tables");
    let plus = CChoice::Plus;
    let rows: Vec<(Case, FluxKind, Agreement, Agreement)> = vec![
        (Case::new(ConsDgStrong, CChoice::Dg), FluxKind::Econ, No, No),
        (Case::new(ConsDgStrong, CChoice::Dg), FluxKind::Llf, No, No),
        (Case::new(SplitStrong, CChoice::Dg), FluxKind::Econ, Yes, Yes),
        (Case::new(SplitStrong, CChoice::Dg), FluxKind::Llf, No, Yes),
        (Case::new(SplitStrong, plus), FluxKind::Econ, Yes, Yes),
        (Case::new(SplitStrong, plus), FluxKind::Llf, No, Yes),
        (Case::new(SplitStrong, CChoice::Value(1e4)), FluxKind::Econ, Yes, Yes),
        (Case::new(SplitStrong, CChoice::Value(1e4)), FluxKind::Llf, No, Yes),
        (Case::new(ClassicalSplit, plus), FluxKind::Econ, No, No),
        (Case::new(ClassicalSplit, plus), FluxKind::Llf, No, No),
        (Case::new(ClassicalSplit, CChoice::Hu), FluxKind::Econ, No, No),
        (Case::new(ClassicalSplit, CChoice::Hu), FluxKind::Llf, No, No),
        (Case::new(LumpedLobatto, CChoice::Dg), FluxKind::Econ, Yes, Yes),
        (Case::new(LumpedLobatto, CChoice::Dg), FluxKind::Llf, No, Yes),
    ];
    for rule in VolumeRule::ALL {
        for &(case, flux, conserved, monotone) in &rows {
            if !case.runs_on(rule) {
                continue;
            }
            let name = format!("{} {} {} {}", table_name(rule), case.label(), flux, rule);
            let Some(row) = study.row(case, flux, rule) else {
                crit.check(name, false, "row missing");
                continue;
            };
            let mut pass = row.conserved == conserved && row.monotone == monotone;
            let mut detail = format!("got {}/{} want {conserved}/{monotone}", row.conserved, row.monotone);
            // unstable schemes must fail clearly, not by a hair
            if matches!(case.variant, ConsDgStrong | ClassicalSplit) {
                for run in study.runs_of(case, flux, rule) {
                    let clear_deviation = run.diverged_at.is_some() || run.final_drift() > 1e-6;
                    let clear_growth = run.diverged_at.is_some() || run.max_growth() > MONOTONE_GROWTH_TOL;
                    if !(clear_deviation && clear_growth) {
                        pass = false;
                        detail.push_str(&format!(
                            "; p={} drift {:e} growth {:e}",
                            run.p,
                            run.final_drift(),
                            run.max_growth()
                        ));
                    }
                }
            }
            crit.check(name, pass, detail);
        }
    }
    crit
}

fn conservation(study: &EnergyStudy) -> Criterion {
    let mut crit = Criterion::new(5, "conserved integral over stable runs");
    for run in study.runs.iter().filter(|r| r.diverged_at.is_none()) {
        let drift = run.max_conserved_drift();
        crit.check(
            format!("{} {} {} p={}", run.case.label(), run.flux, run.quadrature, run.p),
            drift <= 1e-12,
            format!("{drift:e}"),
        );
    }
    crit
}

/// Published errors and slopes per column; `None` where the table has `-`.
struct PaperColumn {
    case: Case,
    errors: [Option<f64>; 5],
    slopes: [Option<f64>; 5],
}

fn col(variant: SchemeVariant, c: CChoice, errors: [Option<f64>; 5], slopes: [Option<f64>; 5]) -> PaperColumn {
    PaperColumn {
        case: Case::new(variant, c),
        errors,
        slopes,
    }
}

fn paper_tables() -> Vec<(&'static str, VolumeRule, usize, Vec<PaperColumn>)> {
    use CChoice::{Dg, Plus};
    use SchemeVariant::*;
    let s = Some;
    let n = None;
    vec![
        (
            "table4",
            VolumeRule::Gl,
            4,
            vec![
                col(
                    ConsDgStrong,
                    Dg,
                    [s(7.82e-6), s(1.94e-7), s(5.17e-9), s(1.48e-10), s(4.55e-12)],
                    [n, s(5.33), s(5.23), s(5.12), s(5.02)],
                ),
                col(
                    SplitStrong,
                    Dg,
                    [s(7.72e-6), s(1.93e-7), s(5.17e-9), s(1.48e-10), s(4.55e-12)],
                    [n, s(5.32), s(5.23), s(5.12), s(5.02)],
                ),
                col(
                    SplitStrong,
                    Plus,
                    [s(2.22e-4), s(6.77e-6), s(1.98e-7), s(6.30e-9), s(1.96e-10)],
                    [n, s(5.04), s(5.10), s(4.97), s(5.00)],
                ),
                col(
                    ClassicalSplit,
                    Plus,
                    [s(1.42e-4), s(4.18e-6), s(1.28e-7), s(4.21e-9), s(1.33e-10)],
                    [n, s(5.09), s(5.03), s(4.93), s(4.98)],
                ),
            ],
        ),
        (
            "table5",
            VolumeRule::Gl,
            5,
            vec![
                col(
                    ConsDgStrong,
                    Dg,
                    [s(1.65e-7), s(2.31e-9), s(3.55e-11), n, n],
                    [n, s(6.15), s(6.02), n, n],
                ),
                col(
                    SplitStrong,
                    Dg,
                    [s(1.57e-7), s(2.31e-9), s(3.56e-11), n, n],
                    [n, s(6.09), s(6.02), n, n],
                ),
                col(
                    SplitStrong,
                    Plus,
                    [s(2.25e-5), s(4.24e-7), s(8.00e-9), s(1.54e-10), s(2.84e-12)],
                    [n, s(5.73), s(5.73), s(5.70), s(5.76)],
                ),
                col(
                    ClassicalSplit,
                    Plus,
                    [s(1.24e-5), s(2.35e-7), s(4.84e-9), s(9.99e-11), s(1.88e-12)],
                    [n, s(5.72), s(5.60), s(5.60), s(5.73)],
                ),
            ],
        ),
        (
            "table6",
            VolumeRule::GlOverintegrated,
            4,
            vec![
                col(
                    ConsDgStrong,
                    Dg,
                    [s(7.37e-6), s(1.91e-7), s(5.15e-9), s(1.48e-10), s(4.55e-12)],
                    [n, s(5.27), s(5.21), s(5.12), s(5.02)],
                ),
                col(
                    SplitStrong,
                    Dg,
                    [s(7.37e-6), s(1.91e-7), s(5.15e-9), s(1.48e-10), s(4.55e-12)],
                    [n, s(5.27), s(5.21), s(5.12), s(5.02)],
                ),
                col(
                    SplitStrong,
                    Plus,
                    [s(2.21e-4), s(6.76e-6), s(1.97e-7), s(6.30e-9), s(1.96e-10)],
                    [n, s(5.03), s(5.10), s(4.97), s(5.00)],
                ),
                col(
                    ClassicalSplit,
                    Plus,
                    [s(9.32e-5), s(1.16e-6), s(1.94e-8), s(5.05e-10), s(1.52e-11)],
                    [n, s(6.33), s(5.90), s(5.26), s(5.06)],
                ),
            ],
        ),
        (
            "table7",
            VolumeRule::GlOverintegrated,
            5,
            vec![
                col(
                    ConsDgStrong,
                    Dg,
                    [s(1.56e-7), s(2.33e-9), s(3.57e-11), n, n],
                    [n, s(6.07), s(6.03), n, n],
                ),
                col(
                    SplitStrong,
                    Dg,
                    [s(1.56e-7), s(2.33e-9), s(3.57e-11), n, n],
                    [n, s(6.07), s(6.03), n, n],
                ),
                col(
                    SplitStrong,
                    Plus,
                    [s(2.24e-5), s(4.23e-7), s(8.00e-9), s(1.54e-10), s(2.84e-12)],
                    [n, s(5.72), s(5.72), s(5.70), s(5.76)],
                ),
                col(
                    ClassicalSplit,
                    Plus,
                    [s(1.46e-6), s(1.01e-8), s(1.09e-10), s(1.66e-12), n],
                    [n, s(7.18), s(6.53), s(6.04), n],
                ),
            ],
        ),
    ]
}

fn ooa_reproduction(study: &OoaStudy) -> Criterion {
    let mut crit = Criterion::new(6, "convergence tables");
    for (name, rule, p, columns) in paper_tables() {
        for column in columns {
            let Some(table) = study.find(column.case, rule, p) else {
                crit.check(format!("{name} {}", column.case.label()), false, "table missing");
                continue;
            };
            for (i, row) in table.rows.iter().enumerate() {
                let tag = format!("{name} {} row {}", column.case.label(), i + 1);
                if let Some(want) = column.errors[i] {
                    let got = row.l2_error;
                    let pass = if p == 5 && want < 1e-11 {
                        got <= 3.0 * want && got >= want / 3.0
                    } else {
                        ((got - want) / want).abs() <= 0.1
                    };
                    crit.check(format!("{tag} error"), pass, format!("{got:.3e} vs {want:.2e}"));
                }
                if let Some(want) = column.slopes[i] {
                    let got = row.ooa.unwrap_or(f64::NAN);
                    crit.check(
                        format!("{tag} slope"),
                        (got - want).abs() <= 0.2,
                        format!("{got:.2} vs {want:.2}"),
                    );
                }
            }
        }
    }
    crit
}

fn c_plus_properties(energy: &EnergyStudy, ooa: &OoaStudy) -> Criterion {
    use SchemeVariant::*;
    let mut crit = Criterion::new(7, "c+ properties");
    let case = Case::new(SplitStrong, CChoice::Plus);
    for rule in VolumeRule::ALL {
        for run in energy.runs_of(case, FluxKind::Econ, rule) {
            crit.check(format!("c+ positive p={}", run.p), run.c > 0.0, format!("{:e}", run.c));
            let drift = run.final_drift();
            crit.check(
                format!("econ conserves {rule} p={}", run.p),
                run.diverged_at.is_none() && drift <= ENERGY_CONSERVATION_TOL,
                format!("{drift:e}"),
            );
        }
    }
    for variant in [SplitStrong, ClassicalSplit] {
        let case = Case::new(variant, CChoice::Plus);
        if let Some(t) = ooa.find(case, VolumeRule::Gl, 4) {
            for (i, row) in t.rows.iter().enumerate().skip(1) {
                let s = row.ooa.unwrap_or(f64::NAN);
                crit.check(format!("{variant} p=4 slope {i}"), s >= 4.7, format!("{s:.3}"));
            }
        } else {
            crit.check(format!("{variant} p=4 table"), false, "missing");
        }
    }
    crit
}

#[test]
fn acceptance() {
    let mut energy_cfg = ExperimentConfig::defaults(Study::Energy);
    energy_cfg.write_series = false;
    assert_eq!(energy_cfg.basis, BasisKind::Legendre);
    let energy = run_energy_study(&energy_cfg).unwrap();
    let ooa = run_ooa_study(&ExperimentConfig::defaults(Study::Ooa)).unwrap();

    let criteria = [
        operator_identities(),
        proof_identities(),
        equivalences(),
        energy_reproduction(&energy),
        conservation(&energy),
        ooa_reproduction(&ooa),
        c_plus_properties(&energy, &ooa),
    ];
    say!();
    for c in &criteria {
        c.report();
    }

    let unexpected: Vec<String> = criteria
        .iter()
        .flat_map(|c| c.checks.iter())
        .filter(|c| !c.pass && !is_known(&c.name))
        .map(|c| format!("{} ({})", c.name, c.detail))
        .collect();
    let fixed: Vec<&str> = KNOWN_UNREPRODUCIBLE
        .iter()
        .copied()
        .filter(|k| {
            let matching: Vec<_> = criteria
                .iter()
                .flat_map(|c| c.checks.iter())
                .filter(|c| c.name.starts_with(k))
                .collect();
            !matching.is_empty() && matching.iter().all(|c| c.pass)
        })
        .collect();
    say!(
        "{} of {} criteria pass; {} known unreproducible check groups",
        criteria.iter().filter(|c| c.passed()).count(),
        criteria.len(),
        KNOWN_UNREPRODUCIBLE.len()
    );
    assert!(unexpected.is_empty(), "unexpected failures: {unexpected:#?}");
    assert!(fixed.is_empty(), "known failures now pass, update the list: {fixed:?}");
}
