//! Semi-discrete residuals for every scheme variant.
//!
//! Coefficients are stored element-major in one flat vector: element `m`
//! owns `coeffs[m * n_p..(m + 1) * n_p]`. The residual is assembled in two
//! phases: traces and shared edge fluxes first, then independent element
//! updates.
//!
//! Strong-form variants evaluate
//!
//! ```text
//! du/dt = -L_v [α S f̂ + (1-α) χᵀ U W ∂χ û]
//!         -L_f Σ_f χ_fᵀ n_f (f* - α χ_f f̂ - (1-α) u_f² / 2)
//! ```
//!
//! where `L_v` and `L_f` are `(M_m + K_m)⁻¹` or `M_m⁻¹` depending on the
//! variant. Weak-form variants apply the discrete integration by parts
//! `S = Σ_f χ_fᵀ n_f χ_f - Sᵀ` to the volume terms, so they agree with the
//! strong forms to round-off on every volume rule.

use std::fmt;
use std::str::FromStr;

use crate::error::{Error, Result};
use crate::flux::{numerical_flux, physical_flux, FluxKind, InterfaceState};
use crate::mesh::Mesh1D;
use crate::operators::{build_basis_of_kind, build_operators, BasisKind, BasisSet, OperatorSet};
use crate::quadrature::{gauss_legendre, gauss_lobatto_legendre, QuadratureRule};
use crate::Matrix;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum SchemeVariant {
    /// Conservative DG, strong form.
    ConsDgStrong,
    /// Conservative DG, weak form.
    DgWeak,
    /// Classical ESFR (filtered DG), strong form.
    EsfrStrong,
    /// Classical ESFR (filtered DG), weak form.
    EsfrWeak,
    /// Split form with the ESFR filter on volume and face terms.
    SplitStrong,
    /// Integrated-by-parts counterpart of [`SchemeVariant::SplitStrong`].
    SplitWeak,
    /// Split form with the filter only on the face terms.
    ClassicalSplit,
    /// Huynh's g2 lumped-Lobatto scheme: collocated GLL split form with `c = 0`.
    LumpedLobatto,
}

impl SchemeVariant {
    pub const ALL: [SchemeVariant; 8] = [
        SchemeVariant::ConsDgStrong,
        SchemeVariant::DgWeak,
        SchemeVariant::EsfrStrong,
        SchemeVariant::EsfrWeak,
        SchemeVariant::SplitStrong,
        SchemeVariant::SplitWeak,
        SchemeVariant::ClassicalSplit,
        SchemeVariant::LumpedLobatto,
    ];

    pub fn name(self) -> &'static str {
        match self {
            SchemeVariant::ConsDgStrong => "cons-dg-strong",
            SchemeVariant::DgWeak => "dg-weak",
            SchemeVariant::EsfrStrong => "esfr-strong",
            SchemeVariant::EsfrWeak => "esfr-weak",
            SchemeVariant::SplitStrong => "split-strong",
            SchemeVariant::SplitWeak => "split-weak",
            SchemeVariant::ClassicalSplit => "classical-split",
            SchemeVariant::LumpedLobatto => "lumped-lobatto",
        }
    }

    fn is_dg(self) -> bool {
        matches!(self, SchemeVariant::ConsDgStrong | SchemeVariant::DgWeak)
    }
}

impl fmt::Display for SchemeVariant {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

impl FromStr for SchemeVariant {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        let key = s.to_ascii_lowercase().replace('_', "-");
        SchemeVariant::ALL
            .into_iter()
            .find(|v| v.name() == key)
            .ok_or_else(|| Error::InvalidValue {
                key: "scheme".into(),
                value: s.into(),
            })
    }
}

/// Volume cubature choice, relative to the polynomial degree.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum VolumeRule {
    /// GLL(p+1), collocated with the solution nodes.
    CollocatedGll,
    /// GL(p+1).
    Gl,
    /// GL(p+3).
    GlOverintegrated,
}

impl VolumeRule {
    pub const ALL: [VolumeRule; 3] = [VolumeRule::CollocatedGll, VolumeRule::Gl, VolumeRule::GlOverintegrated];

    pub fn name(self) -> &'static str {
        match self {
            VolumeRule::CollocatedGll => "gll",
            VolumeRule::Gl => "gl",
            VolumeRule::GlOverintegrated => "gl-overint",
        }
    }

    pub fn build(self, p: usize) -> Result<QuadratureRule> {
        match self {
            VolumeRule::CollocatedGll => gauss_lobatto_legendre(p + 1),
            VolumeRule::Gl => gauss_legendre(p + 1),
            VolumeRule::GlOverintegrated => gauss_legendre(p + 3),
        }
    }
}

impl fmt::Display for VolumeRule {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

impl FromStr for VolumeRule {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s.to_ascii_lowercase().as_str() {
            "gll" | "collocated" => Ok(VolumeRule::CollocatedGll),
            "gl" => Ok(VolumeRule::Gl),
            "gl-overint" | "gl_overint" | "overintegrated" => Ok(VolumeRule::GlOverintegrated),
            _ => Err(Error::InvalidValue {
                key: "quadrature".into(),
                value: s.into(),
            }),
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct SchemeConfig {
    pub variant: SchemeVariant,
    pub p: usize,
    pub c: f64,
    pub alpha: f64,
    pub flux: FluxKind,
    pub volume_rule: VolumeRule,
    pub basis: BasisKind,
}

impl SchemeConfig {
    pub fn new(variant: SchemeVariant, p: usize, c: f64, flux: FluxKind, volume_rule: VolumeRule) -> Self {
        Self {
            variant,
            p,
            c,
            alpha: 2.0 / 3.0,
            flux,
            volume_rule,
            basis: BasisKind::Lagrange,
        }
    }

    pub fn with_basis(mut self, basis: BasisKind) -> Self {
        self.basis = basis;
        self
    }

    pub fn with_alpha(mut self, alpha: f64) -> Self {
        self.alpha = alpha;
        self
    }

    /// Applies the variant constraints: DG forces `c = 0`, lumped-Lobatto
    /// forces `c = 0` on the collocated GLL rule.
    pub fn normalized(mut self) -> Self {
        if self.variant.is_dg() {
            self.c = 0.0;
        }
        if self.variant == SchemeVariant::LumpedLobatto {
            self.c = 0.0;
            self.volume_rule = VolumeRule::CollocatedGll;
            self.basis = BasisKind::Lagrange;
        }
        self
    }

    /// Split parameter actually used by the assembly; unsplit variants use 1.
    fn effective_alpha(&self) -> f64 {
        match self.variant {
            SchemeVariant::SplitStrong
            | SchemeVariant::SplitWeak
            | SchemeVariant::ClassicalSplit
            | SchemeVariant::LumpedLobatto => self.alpha,
            _ => 1.0,
        }
    }
}

/// Coefficients of every element plus the current time.
#[derive(Debug, Clone, PartialEq)]
pub struct SolutionField {
    pub coeffs: Vec<f64>,
    pub n_dofs: usize,
    pub t: f64,
}

impl SolutionField {
    pub fn zeros(n_elements: usize, n_dofs: usize) -> Self {
        Self {
            coeffs: vec![0.0; n_elements * n_dofs],
            n_dofs,
            t: 0.0,
        }
    }

    pub fn n_elements(&self) -> usize {
        self.coeffs.len() / self.n_dofs
    }

    pub fn element(&self, m: usize) -> &[f64] {
        &self.coeffs[m * self.n_dofs..(m + 1) * self.n_dofs]
    }

    pub fn element_mut(&mut self, m: usize) -> &mut [f64] {
        &mut self.coeffs[m * self.n_dofs..(m + 1) * self.n_dofs]
    }
}

/// Row-major copy of a matrix for the hot loops.
#[derive(Debug, Clone)]
struct Dense {
    rows: usize,
    cols: usize,
    data: Vec<f64>,
}

impl Dense {
    fn from(m: &Matrix) -> Self {
        let (rows, cols) = m.shape();
        let data = (0..rows).flat_map(|i| (0..cols).map(move |j| m[(i, j)])).collect();
        Self { rows, cols, data }
    }

    /// `y = A x`
    #[inline]
    fn apply(&self, x: &[f64], y: &mut [f64]) {
        debug_assert_eq!(x.len(), self.cols);
        for (yi, row) in y.iter_mut().zip(self.data.chunks_exact(self.cols)) {
            *yi = row.iter().zip(x).map(|(a, b)| a * b).sum();
        }
    }

    /// `y = Aᵀ x`
    #[inline]
    fn apply_transpose(&self, x: &[f64], y: &mut [f64]) {
        debug_assert_eq!(x.len(), self.rows);
        y.iter_mut().for_each(|v| *v = 0.0);
        for (xi, row) in x.iter().zip(self.data.chunks_exact(self.cols)) {
            for (yj, a) in y.iter_mut().zip(row) {
                *yj += a * xi;
            }
        }
    }
}

#[inline]
fn dot(a: &[f64], b: &[f64]) -> f64 {
    a.iter().zip(b).map(|(x, y)| x * y).sum()
}

/// Per-element scratch buffers.
#[derive(Debug, Clone)]
struct Scratch {
    u_v: Vec<f64>,
    du_v: Vec<f64>,
    g_v: Vec<f64>,
    f_hat: Vec<f64>,
    vol: Vec<f64>,
    surf: Vec<f64>,
    tmp_p: Vec<f64>,
    tmp_p2: Vec<f64>,
}

impl Scratch {
    fn new(n_p: usize, n_vp: usize) -> Self {
        Self {
            u_v: vec![0.0; n_vp],
            du_v: vec![0.0; n_vp],
            g_v: vec![0.0; n_vp],
            f_hat: vec![0.0; n_p],
            vol: vec![0.0; n_p],
            surf: vec![0.0; n_p],
            tmp_p: vec![0.0; n_p],
            tmp_p2: vec![0.0; n_p],
        }
    }
}

/// Which lifting operator multiplies a group of terms.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
enum Lift {
    Mass,
    Filtered,
}

/// Everything needed to evaluate residuals on one mesh with one scheme.
#[derive(Debug, Clone)]
pub struct Discretization {
    config: SchemeConfig,
    mesh: Mesh1D,
    basis: BasisSet,
    ops: OperatorSet,
    weights: Vec<f64>,
    chi_v: Dense,
    dchi_v: Dense,
    projection: Dense,
    stiffness: Dense,
    mass_m_inv: Dense,
    filter_inv: Dense,
    chi_f: [Vec<f64>; 2],
    volume_x: Vec<f64>,
}

/// Element-wise residual contributions, kept apart so diagnostics can inspect them.
#[derive(Debug, Clone, PartialEq)]
pub struct TraceSet {
    /// Left and right trace of every element.
    pub element_traces: Vec<[f64; 2]>,
    /// Edge `e` separates element `e` (left) and `e + 1` (right).
    pub edges: Vec<InterfaceState>,
    pub edge_flux: Vec<f64>,
}

impl Discretization {
    pub fn new(config: SchemeConfig, mesh: Mesh1D) -> Result<Self> {
        let config = config.normalized();
        if !(0.0..=1.0).contains(&config.alpha) {
            return Err(Error::InvalidParameter(format!(
                "split parameter must lie in [0, 1], got {}",
                config.alpha
            )));
        }
        let rule = config.volume_rule.build(config.p)?;
        let basis = build_basis_of_kind(config.p, &rule, config.basis)?;
        let ops = build_operators(&basis, mesh.jacobian(), config.c)?;
        let n_vp = rule.len();
        let volume_x = (0..mesh.n_elements())
            .flat_map(|m| rule.nodes().iter().map(move |&xi| (m, xi)))
            .map(|(m, xi)| mesh.map_unchecked(m, xi))
            .collect::<Vec<_>>();
        debug_assert_eq!(volume_x.len(), n_vp * mesh.n_elements());
        Ok(Self {
            config,
            weights: rule.weights().to_vec(),
            chi_v: Dense::from(basis.chi_v()),
            dchi_v: Dense::from(basis.dchi_v()),
            projection: Dense::from(ops.projection()),
            stiffness: Dense::from(ops.stiffness()),
            mass_m_inv: Dense::from(ops.mass_m_inv()),
            filter_inv: Dense::from(ops.filter_inv()),
            chi_f: [
                basis.chi_f(0).iter().copied().collect(),
                basis.chi_f(1).iter().copied().collect(),
            ],
            volume_x,
            mesh,
            basis,
            ops,
        })
    }

    pub fn config(&self) -> &SchemeConfig {
        &self.config
    }

    pub fn mesh(&self) -> &Mesh1D {
        &self.mesh
    }

    pub fn basis(&self) -> &BasisSet {
        &self.basis
    }

    pub fn ops(&self) -> &OperatorSet {
        &self.ops
    }

    pub fn n_dofs(&self) -> usize {
        self.basis.n_dofs()
    }

    pub fn n_volume_nodes(&self) -> usize {
        self.weights.len()
    }

    /// Physical coordinates of the volume nodes of element `m`.
    pub fn volume_points(&self, m: usize) -> &[f64] {
        let n_vp = self.n_volume_nodes();
        &self.volume_x[m * n_vp..(m + 1) * n_vp]
    }

    pub fn zero_field(&self) -> SolutionField {
        SolutionField::zeros(self.mesh.n_elements(), self.n_dofs())
    }

    fn lift(&self, which: Lift) -> &Dense {
        match which {
            Lift::Mass => &self.mass_m_inv,
            Lift::Filtered => &self.filter_inv,
        }
    }

    /// Trace of element coefficients on face 0 (left) or 1 (right).
    pub fn trace(&self, u_hat: &[f64], face: usize) -> f64 {
        dot(&self.chi_f[face], u_hat)
    }

    /// Projection of `u² / 2` sampled at the volume nodes onto the basis.
    pub fn volume_flux_coefficients(&self, field: &SolutionField, m: usize) -> Vec<f64> {
        let mut s = Scratch::new(self.n_dofs(), self.n_volume_nodes());
        self.flux_coefficients_into(field.element(m), &mut s);
        s.f_hat
    }

    fn flux_coefficients_into(&self, u_hat: &[f64], s: &mut Scratch) {
        self.chi_v.apply(u_hat, &mut s.u_v);
        for (g, &u) in s.g_v.iter_mut().zip(&s.u_v) {
            *g = physical_flux(u);
        }
        self.projection.apply(&s.g_v, &mut s.f_hat);
    }

    /// Element traces, edge states and shared numerical fluxes.
    pub fn compute_traces(&self, field: &SolutionField) -> TraceSet {
        let n = self.mesh.n_elements();
        let element_traces: Vec<[f64; 2]> = (0..n)
            .map(|m| {
                let u = field.element(m);
                [self.trace(u, 0), self.trace(u, 1)]
            })
            .collect();
        let edges: Vec<InterfaceState> = (0..n)
            .map(|e| InterfaceState::new(element_traces[e][1], element_traces[(e + 1) % n][0]))
            .collect();
        let edge_flux = edges.iter().map(|&s| numerical_flux(s, self.config.flux)).collect();
        TraceSet {
            element_traces,
            edges,
            edge_flux,
        }
    }

    /// Numerical flux on the left and right face of element `m`.
    fn element_face_fluxes(&self, traces: &TraceSet, m: usize) -> [f64; 2] {
        let n = self.mesh.n_elements();
        [traces.edge_flux[(m + n - 1) % n], traces.edge_flux[m]]
    }

    /// Residual of element `m` for an explicit variant, ignoring the configured one.
    pub fn element_residual_as(
        &self,
        variant: SchemeVariant,
        field: &SolutionField,
        traces: &TraceSet,
        m: usize,
    ) -> Vec<f64> {
        let mut s = Scratch::new(self.n_dofs(), self.n_volume_nodes());
        let mut out = vec![0.0; self.n_dofs()];
        let alpha = match variant {
            SchemeVariant::SplitStrong
            | SchemeVariant::SplitWeak
            | SchemeVariant::ClassicalSplit
            | SchemeVariant::LumpedLobatto => self.config.alpha,
            _ => 1.0,
        };
        self.element_residual_into(
            variant,
            alpha,
            field.element(m),
            traces.element_traces[m],
            self.element_face_fluxes(traces, m),
            &mut s,
            &mut out,
        );
        out
    }

    #[allow(clippy::too_many_arguments)]
    fn element_residual_into(
        &self,
        variant: SchemeVariant,
        alpha: f64,
        u_hat: &[f64],
        own_traces: [f64; 2],
        face_flux: [f64; 2],
        s: &mut Scratch,
        out: &mut [f64],
    ) {
        use SchemeVariant::*;
        self.flux_coefficients_into(u_hat, s);
        let (volume_lift, face_lift) = match variant {
            ConsDgStrong | DgWeak => (Lift::Mass, Lift::Mass),
            ClassicalSplit => (Lift::Mass, Lift::Filtered),
            EsfrStrong | EsfrWeak | SplitStrong | SplitWeak | LumpedLobatto => (Lift::Filtered, Lift::Filtered),
        };
        let strong = matches!(
            variant,
            ConsDgStrong | EsfrStrong | SplitStrong | ClassicalSplit | LumpedLobatto
        );

        if strong {
            // α S f̂ + (1-α) χᵀ U W ∂χ û
            self.stiffness.apply(&s.f_hat, &mut s.vol);
            s.vol.iter_mut().for_each(|v| *v *= alpha);
            if alpha != 1.0 {
                self.dchi_v.apply(u_hat, &mut s.du_v);
                for q in 0..s.g_v.len() {
                    s.g_v[q] = self.weights[q] * s.u_v[q] * s.du_v[q];
                }
                self.chi_v.apply_transpose(&s.g_v, &mut s.tmp_p);
                for (v, t) in s.vol.iter_mut().zip(&s.tmp_p) {
                    *v += (1.0 - alpha) * t;
                }
            }
            let mut face_coeff = [0.0; 2];
            for face in 0..2 {
                let normal = if face == 0 { -1.0 } else { 1.0 };
                let interp = dot(&self.chi_f[face], &s.f_hat);
                let split = crate::flux::face_correction_terms(face_flux[face], own_traces[face], interp, alpha);
                face_coeff[face] = normal * split;
            }
            for i in 0..s.surf.len() {
                s.surf[i] = self.chi_f[0][i] * face_coeff[0] + self.chi_f[1][i] * face_coeff[1];
            }
        } else {
            // -α Sᵀ f̂ - (1-α) χᵀ U Πᵀ (Sᵀ - B) û, with B = Σ_f χ_fᵀ n_f χ_f
            self.stiffness.apply_transpose(&s.f_hat, &mut s.vol);
            s.vol.iter_mut().for_each(|v| *v *= -alpha);
            if alpha != 1.0 {
                self.stiffness.apply_transpose(u_hat, &mut s.tmp_p);
                for i in 0..s.tmp_p.len() {
                    s.tmp_p[i] -= self.chi_f[1][i] * own_traces[1] - self.chi_f[0][i] * own_traces[0];
                }
                self.projection.apply_transpose(&s.tmp_p, &mut s.g_v);
                for q in 0..s.g_v.len() {
                    s.g_v[q] *= s.u_v[q];
                }
                self.chi_v.apply_transpose(&s.g_v, &mut s.tmp_p);
                for (v, t) in s.vol.iter_mut().zip(&s.tmp_p) {
                    *v -= (1.0 - alpha) * t;
                }
            }
            // f* - (1-α) f_f; the conservative part of the face term integrates away
            let mut face_coeff = [0.0; 2];
            for face in 0..2 {
                let normal = if face == 0 { -1.0 } else { 1.0 };
                face_coeff[face] = normal * (face_flux[face] - (1.0 - alpha) * physical_flux(own_traces[face]));
            }
            for i in 0..s.surf.len() {
                s.surf[i] = self.chi_f[0][i] * face_coeff[0] + self.chi_f[1][i] * face_coeff[1];
            }
        }

        if volume_lift == face_lift {
            for (v, f) in s.vol.iter_mut().zip(&s.surf) {
                *v += f;
            }
            self.lift(volume_lift).apply(&s.vol, out);
            out.iter_mut().for_each(|v| *v = -*v);
        } else {
            self.lift(volume_lift).apply(&s.vol, out);
            self.lift(face_lift).apply(&s.surf, &mut s.tmp_p2);
            for (o, f) in out.iter_mut().zip(&s.tmp_p2) {
                *o = -*o - f;
            }
        }
    }

    /// Adds the L2 projection `M_m⁻¹ χᵀ W J q` of a source sampled at the volume nodes of element `m`.
    fn add_source(&self, m: usize, t: f64, source: &dyn Fn(f64, f64) -> f64, s: &mut Scratch, out: &mut [f64]) {
        for (g, &x) in s.g_v.iter_mut().zip(self.volume_points(m)) {
            *g = source(x, t);
        }
        self.projection.apply(&s.g_v, &mut s.tmp_p2);
        for (o, v) in out.iter_mut().zip(&s.tmp_p2) {
            *o += v;
        }
    }

    /// Full residual `du/dt` of the configured scheme at time `t`.
    pub fn residual(&self, coeffs: &[f64], t: f64, source: Option<&dyn Fn(f64, f64) -> f64>, out: &mut [f64]) {
        let n = self.mesh.n_elements();
        let n_p = self.n_dofs();
        let traces: Vec<[f64; 2]> = coeffs
            .chunks_exact(n_p)
            .map(|u| [dot(&self.chi_f[0], u), dot(&self.chi_f[1], u)])
            .collect();
        let edge_flux: Vec<f64> = (0..n)
            .map(|e| {
                let state = InterfaceState::new(traces[e][1], traces[(e + 1) % n][0]);
                numerical_flux(state, self.config.flux)
            })
            .collect();

        let alpha = self.config.effective_alpha();
        let mut s = Scratch::new(n_p, self.n_volume_nodes());
        for (m, (u, o)) in coeffs.chunks_exact(n_p).zip(out.chunks_exact_mut(n_p)).enumerate() {
            let face_flux = [edge_flux[(m + n - 1) % n], edge_flux[m]];
            self.element_residual_into(self.config.variant, alpha, u, traces[m], face_flux, &mut s, o);
            if let Some(src) = source {
                self.add_source(m, t, src, &mut s, o);
            }
        }
    }

    /// Convenience wrapper returning the residual as a new field.
    pub fn residual_field(&self, field: &SolutionField, source: Option<&dyn Fn(f64, f64) -> f64>) -> SolutionField {
        let mut out = field.clone();
        self.residual(&field.coeffs, field.t, source, &mut out.coeffs);
        out
    }

    /// L2 projection of `f(x)` onto every element using the volume rule.
    pub fn project<F: Fn(f64) -> f64>(&self, f: F) -> SolutionField {
        let mut field = self.zero_field();
        let mut samples = vec![0.0; self.n_volume_nodes()];
        for m in 0..self.mesh.n_elements() {
            for (s, &x) in samples.iter_mut().zip(self.volume_points(m)) {
                *s = f(x);
            }
            self.projection.apply(&samples, field.element_mut(m));
        }
        field
    }
}

/// Single-element residuals for each variant, independent of the configured one.
impl Discretization {
    pub fn residual_cons_dg_strong(&self, field: &SolutionField, m: usize, traces: &TraceSet) -> Vec<f64> {
        self.element_residual_as(SchemeVariant::ConsDgStrong, field, traces, m)
    }

    pub fn residual_dg_weak(&self, field: &SolutionField, m: usize, traces: &TraceSet) -> Vec<f64> {
        self.element_residual_as(SchemeVariant::DgWeak, field, traces, m)
    }

    pub fn residual_esfr(&self, field: &SolutionField, m: usize, traces: &TraceSet, form: Form) -> Vec<f64> {
        let variant = match form {
            Form::Strong => SchemeVariant::EsfrStrong,
            Form::Weak => SchemeVariant::EsfrWeak,
        };
        self.element_residual_as(variant, field, traces, m)
    }

    pub fn residual_split_strong(&self, field: &SolutionField, m: usize, traces: &TraceSet) -> Vec<f64> {
        self.element_residual_as(SchemeVariant::SplitStrong, field, traces, m)
    }

    pub fn residual_split_weak(&self, field: &SolutionField, m: usize, traces: &TraceSet) -> Vec<f64> {
        self.element_residual_as(SchemeVariant::SplitWeak, field, traces, m)
    }

    pub fn residual_classical_split(&self, field: &SolutionField, m: usize, traces: &TraceSet) -> Vec<f64> {
        self.element_residual_as(SchemeVariant::ClassicalSplit, field, traces, m)
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Form {
    Strong,
    Weak,
}
