//! Energy, conservation, and accuracy measurements.

use crate::flux::physical_flux;
use crate::quadrature::gauss_legendre;
use crate::scheme::{Discretization, SolutionField};
use crate::Matrix;

/// Relative energy drift below which a run counts as energy conserving.
pub const ENERGY_CONSERVATION_TOL: f64 = 1e-11;
/// Relative growth over an earlier sample that breaks monotone decrease.
pub const MONOTONE_GROWTH_TOL: f64 = 1e-10;
/// Extra GL points beyond `p` used by [`l2_error`].
pub const ERROR_OVERINTEGRATION: usize = 10;

/// One diagnostics sample.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct DiagnosticsRecord {
    pub t: f64,
    pub energy: f64,
    pub conserved: f64,
    pub l2_error: Option<f64>,
}

fn quadratic_form(a: &Matrix, x: &[f64], y: &[f64]) -> f64 {
    let n = x.len();
    let mut acc = 0.0;
    for i in 0..n {
        let mut row = 0.0;
        for j in 0..n {
            row += a[(i, j)] * y[j];
        }
        acc += x[i] * row;
    }
    acc
}

/// `x (M_m + K_m) yᵀ` evaluated as `x M_m yᵀ + c (Dᵖx)ᵀ M_m (Dᵖy)`.
///
/// Expanding `K_m` keeps the large-`c` term from swamping the mass term
/// through cancellation.
fn sobolev_inner(disc: &Discretization, x: &[f64], y: &[f64]) -> f64 {
    let ops = disc.ops();
    let mass = ops.mass_m();
    let mut acc = quadratic_form(mass, x, y);
    if ops.c() != 0.0 {
        let dp = ops.dp();
        let apply = |v: &[f64]| -> Vec<f64> {
            (0..v.len())
                .map(|i| (0..v.len()).map(|j| dp[(i, j)] * v[j]).sum())
                .collect()
        };
        acc += ops.c() * quadratic_form(mass, &apply(x), &apply(y));
    }
    acc
}

/// Broken Sobolev energy `Σ_m û_m (M_m + K_m) û_mᵀ`.
pub fn energy(disc: &Discretization, field: &SolutionField) -> f64 {
    (0..field.n_elements())
        .map(|m| sobolev_inner(disc, field.element(m), field.element(m)))
        .sum()
}

/// `Σ_m û_m (M_m + K_m) (dû_m/dt)ᵀ`, i.e. half the energy rate.
pub fn energy_rate(disc: &Discretization, field: &SolutionField, rate: &SolutionField) -> f64 {
    (0..field.n_elements())
        .map(|m| sobolev_inner(disc, field.element(m), rate.element(m)))
        .sum()
}

/// `Σ_m 1̂ (M_m + K_m) v_mᵀ` with `1̂` the coefficients of the constant 1.
fn ones_functional(disc: &Discretization, field: &SolutionField) -> f64 {
    let ones = disc.basis().constant_coefficients();
    (0..field.n_elements())
        .map(|m| sobolev_inner(disc, &ones, field.element(m)))
        .sum()
}

/// Discrete integral of the solution, `Σ_m 1̂ (M_m + K_m) û_mᵀ`.
pub fn conserved_quantity(disc: &Discretization, field: &SolutionField) -> f64 {
    ones_functional(disc, field)
}

/// Time derivative of [`conserved_quantity`] for a given residual.
pub fn conservation_rate(disc: &Discretization, rate: &SolutionField) -> f64 {
    ones_functional(disc, rate)
}

/// Surface-only expression for the split-form energy rate at `α = 2/3`:
/// `-Σ_m û_m Σ_f χ_fᵀ n_f (f* - f_f / 3)`.
pub fn surface_energy_rate(disc: &Discretization, field: &SolutionField) -> f64 {
    let traces = disc.compute_traces(field);
    let n = field.n_elements();
    (0..n)
        .map(|m| {
            let [u_l, u_r] = traces.element_traces[m];
            let f_l = traces.edge_flux[(m + n - 1) % n];
            let f_r = traces.edge_flux[m];
            u_l * (f_l - physical_flux(u_l) / 3.0) - u_r * (f_r - physical_flux(u_r) / 3.0)
        })
        .sum()
}

/// L2 error against `exact(x)` on a GL(p + 10) rule per element.
pub fn l2_error<F: Fn(f64) -> f64>(disc: &Discretization, field: &SolutionField, exact: F) -> f64 {
    let p = disc.basis().degree();
    let rule = gauss_legendre(p + ERROR_OVERINTEGRATION).expect("fixed-size GL rule");
    let interp: Vec<Vec<f64>> = rule.nodes().iter().map(|&xi| disc.basis().eval(xi).0).collect();
    let mesh = disc.mesh();
    let j = mesh.jacobian();
    let mut sum = 0.0;
    for m in 0..mesh.n_elements() {
        let u = field.element(m);
        for ((&xi, &w), chi) in rule.nodes().iter().zip(rule.weights()).zip(&interp) {
            let uh: f64 = chi.iter().zip(u).map(|(a, b)| a * b).sum();
            let x = mesh.element_left(m) + (xi + 1.0) * j;
            let d = uh - exact(x);
            sum += w * j * d * d;
        }
    }
    sum.sqrt()
}

/// Observed convergence rates `ln(e_{k-1}/e_k) / ln(dx_{k-1}/dx_k)`.
///
/// A pair with a non-positive or non-finite error has no defined slope.
pub fn ooa_slopes(errors: &[f64], dxs: &[f64]) -> Vec<Option<f64>> {
    assert_eq!(errors.len(), dxs.len(), "errors and dxs must pair up");
    errors
        .windows(2)
        .zip(dxs.windows(2))
        .map(|(e, h)| {
            let valid = |v: f64| v > 0.0 && v.is_finite();
            if valid(e[0]) && valid(e[1]) && valid(h[0]) && valid(h[1]) {
                Some((e[0] / e[1]).ln() / (h[0] / h[1]).ln())
            } else {
                None
            }
        })
        .collect()
}

/// Conservation and monotonicity verdicts for one energy history.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct EnergyVerdict {
    pub conserved: bool,
    pub monotone: bool,
}

/// Largest `|E(t) - E(0)| / E(0)` over the history.
pub fn max_relative_drift(energies: &[f64]) -> f64 {
    let e0 = energies[0];
    energies.iter().map(|e| ((e - e0) / e0).abs()).fold(0.0, f64::max)
}

/// Largest growth of any sample over the running minimum, relative to `E(0)`.
pub fn max_relative_growth(energies: &[f64]) -> f64 {
    let e0 = energies[0];
    let mut running_min = e0;
    let mut worst = 0.0_f64;
    for &e in energies {
        worst = worst.max((e - running_min) / e0);
        running_min = running_min.min(e);
    }
    worst
}

/// `|E(t_f) - E(0)| / E(0)` for the last sample of the history.
pub fn final_relative_drift(energies: &[f64]) -> f64 {
    let e0 = energies[0];
    ((energies[energies.len() - 1] - e0) / e0).abs()
}

/// Conserved when the final drift is within [`ENERGY_CONSERVATION_TOL`];
/// monotone when no sample rises above the running minimum by more than
/// [`MONOTONE_GROWTH_TOL`]. A diverged run is neither.
pub fn classify_energy(energies: &[f64], diverged: bool) -> EnergyVerdict {
    if diverged || energies.iter().any(|e| !e.is_finite()) {
        return EnergyVerdict {
            conserved: false,
            monotone: false,
        };
    }
    EnergyVerdict {
        conserved: final_relative_drift(energies) <= ENERGY_CONSERVATION_TOL,
        monotone: max_relative_growth(energies) <= MONOTONE_GROWTH_TOL,
    }
}
