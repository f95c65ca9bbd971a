//! Reference-element operators for nodal Lagrange bases.
//!
//! The solution basis is the Lagrange basis through the GLL(p+1) points. All
//! volume integrals are evaluated with the quadrature rule the basis was built
//! on, so the same code covers collocated GLL, uncollocated GL and
//! overintegrated GL volume cubature.
//!
//! Operator summary, with `chi` the basis sampled at volume nodes, `W` the
//! quadrature weights and `J` the constant element Jacobian:
//!
//! | operator     | definition                        |
//! |--------------|-----------------------------------|
//! | `mass`       | `chiᵀ W chi`                      |
//! | `mass_m`     | `J * mass`                        |
//! | `stiffness`  | `chiᵀ W dchi`                     |
//! | `projection` | `mass_m⁻¹ chiᵀ W J`               |
//! | `dp`         | `(mass⁻¹ stiffness)^p`            |
//! | `k_m`        | `c * dpᵀ mass_m dp`               |
//! | `filter_inv` | `(mass_m + k_m)⁻¹`                |

use crate::error::{Error, Result};
use crate::quadrature::{gauss_lobatto_legendre, legendre_eval, QuadratureRule};
use crate::{Matrix, Vector};

/// Outward reference normal of the left and right faces.
pub const FACE_NORMALS: [f64; 2] = [-1.0, 1.0];

/// Barycentric weights `1 / prod_{k != j} (x_j - x_k)`.
fn barycentric_weights(nodes: &[f64]) -> Vec<f64> {
    nodes
        .iter()
        .enumerate()
        .map(|(j, &xj)| {
            let prod: f64 = nodes
                .iter()
                .enumerate()
                .filter(|&(k, _)| k != j)
                .map(|(_, &xk)| xj - xk)
                .product();
            1.0 / prod
        })
        .collect()
}

/// Values and derivatives of every Lagrange polynomial through `nodes` at `x`.
pub fn lagrange_eval(nodes: &[f64], x: f64) -> (Vec<f64>, Vec<f64>) {
    let n = nodes.len();
    let bw = barycentric_weights(nodes);
    let mut values = vec![0.0; n];
    let mut derivs = vec![0.0; n];

    if let Some(i) = nodes.iter().position(|&xi| xi == x) {
        values[i] = 1.0;
        let mut diag = 0.0;
        for j in (0..n).filter(|&j| j != i) {
            derivs[j] = bw[j] / bw[i] / (nodes[i] - nodes[j]);
            diag -= derivs[j];
        }
        derivs[i] = diag;
        return (values, derivs);
    }

    let denom: f64 = (0..n).map(|k| bw[k] / (x - nodes[k])).sum();
    let inv_sum: f64 = (0..n).map(|k| 1.0 / (x - nodes[k])).sum();
    for j in 0..n {
        values[j] = bw[j] / (x - nodes[j]) / denom;
        // l_j'(x) = l_j(x) * sum_{k != j} 1 / (x - x_k)
        derivs[j] = values[j] * (inv_sum - 1.0 / (x - nodes[j]));
    }
    (values, derivs)
}

/// Polynomial basis spanning the degree-`p` solution space.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Default)]
pub enum BasisKind {
    /// Lagrange polynomials through the GLL(p+1) points (nodal coefficients).
    #[default]
    Lagrange,
    /// Orthonormal Legendre polynomials `sqrt((2k+1)/2) P_k` (modal coefficients).
    Legendre,
}

impl BasisKind {
    pub fn name(self) -> &'static str {
        match self {
            BasisKind::Lagrange => "lagrange",
            BasisKind::Legendre => "legendre",
        }
    }
}

impl std::fmt::Display for BasisKind {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        f.write_str(self.name())
    }
}

impl std::str::FromStr for BasisKind {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s.to_ascii_lowercase().as_str() {
            "lagrange" | "nodal" => Ok(BasisKind::Lagrange),
            "legendre" | "modal" => Ok(BasisKind::Legendre),
            _ => Err(Error::InvalidValue {
                key: "basis".into(),
                value: s.into(),
            }),
        }
    }
}

/// Values and derivatives of the orthonormal Legendre polynomials of degree `0..=p` at `x`.
pub fn legendre_basis_eval(p: usize, x: f64) -> (Vec<f64>, Vec<f64>) {
    (0..=p)
        .map(|k| {
            let scale = ((2 * k + 1) as f64 / 2.0).sqrt();
            let (v, d) = legendre_eval(k, x);
            (scale * v, scale * d)
        })
        .unzip()
}

/// Degree-`p` basis sampled at a volume rule and at the two faces.
#[derive(Debug, Clone)]
pub struct BasisSet {
    p: usize,
    kind: BasisKind,
    solution_nodes: Vec<f64>,
    rule: QuadratureRule,
    chi_v: Matrix,
    dchi_v: Matrix,
    chi_f: [Vector; 2],
}

impl BasisSet {
    pub fn degree(&self) -> usize {
        self.p
    }

    pub fn kind(&self) -> BasisKind {
        self.kind
    }

    pub fn n_dofs(&self) -> usize {
        self.p + 1
    }

    /// GLL(p+1) points; the interpolation nodes of the Lagrange basis.
    pub fn solution_nodes(&self) -> &[f64] {
        &self.solution_nodes
    }

    pub fn rule(&self) -> &QuadratureRule {
        &self.rule
    }

    /// `N_vp x N_p` basis values at the volume nodes.
    pub fn chi_v(&self) -> &Matrix {
        &self.chi_v
    }

    /// `N_vp x N_p` reference derivatives at the volume nodes.
    pub fn dchi_v(&self) -> &Matrix {
        &self.dchi_v
    }

    /// Trace row at face `f` (0 = left at ξ = -1, 1 = right at ξ = +1).
    pub fn chi_f(&self, face: usize) -> &Vector {
        &self.chi_f[face]
    }

    /// True when the basis is nodal at the volume nodes.
    pub fn is_collocated(&self) -> bool {
        self.kind == BasisKind::Lagrange && self.rule.nodes() == self.solution_nodes.as_slice()
    }

    /// Values and derivatives of every basis function at reference point `x`.
    pub fn eval(&self, x: f64) -> (Vec<f64>, Vec<f64>) {
        match self.kind {
            BasisKind::Lagrange => lagrange_eval(&self.solution_nodes, x),
            BasisKind::Legendre => legendre_basis_eval(self.p, x),
        }
    }

    /// Coefficients of the constant function 1.
    pub fn constant_coefficients(&self) -> Vec<f64> {
        match self.kind {
            BasisKind::Lagrange => vec![1.0; self.p + 1],
            BasisKind::Legendre => {
                let mut v = vec![0.0; self.p + 1];
                v[0] = 2f64.sqrt();
                v
            }
        }
    }

    /// The p-th derivative of each basis function, which is a constant.
    pub fn pth_derivatives(&self) -> Vec<f64> {
        let p = self.p;
        let factorial: f64 = (1..=p).map(|k| k as f64).product();
        match self.kind {
            // a Lagrange polynomial's leading coefficient is its barycentric weight
            BasisKind::Lagrange => barycentric_weights(&self.solution_nodes)
                .into_iter()
                .map(|w| factorial * w)
                .collect(),
            BasisKind::Legendre => {
                let mut v = vec![0.0; p + 1];
                v[p] = factorial * legendre_leading_coefficient(p) * ((2 * p + 1) as f64 / 2.0).sqrt();
                v
            }
        }
    }
}

/// Builds the GLL(p+1) Lagrange basis evaluated on `volume_rule`.
pub fn build_basis(p: usize, volume_rule: &QuadratureRule) -> Result<BasisSet> {
    build_basis_of_kind(p, volume_rule, BasisKind::Lagrange)
}

pub fn build_basis_of_kind(p: usize, volume_rule: &QuadratureRule, kind: BasisKind) -> Result<BasisSet> {
    let n_p = p + 1;
    if volume_rule.len() < n_p {
        return Err(Error::InsufficientQuadrature {
            degree: p,
            points: volume_rule.len(),
            required: n_p,
        });
    }
    let solution_nodes = if p == 0 {
        vec![0.0]
    } else {
        gauss_lobatto_legendre(n_p)?.nodes().to_vec()
    };
    let eval = |x: f64| match kind {
        BasisKind::Lagrange => lagrange_eval(&solution_nodes, x),
        BasisKind::Legendre => legendre_basis_eval(p, x),
    };

    let n_vp = volume_rule.len();
    let mut chi_v = Matrix::zeros(n_vp, n_p);
    let mut dchi_v = Matrix::zeros(n_vp, n_p);
    for (q, &x) in volume_rule.nodes().iter().enumerate() {
        let (v, d) = eval(x);
        for j in 0..n_p {
            chi_v[(q, j)] = v[j];
            dchi_v[(q, j)] = d[j];
        }
    }
    let chi_f = [-1.0, 1.0].map(|x| Vector::from_vec(eval(x).0));

    Ok(BasisSet {
        p,
        kind,
        solution_nodes,
        rule: volume_rule.clone(),
        chi_v,
        dchi_v,
        chi_f,
    })
}

/// Reference-element operator set for one affine element.
#[derive(Debug, Clone)]
pub struct OperatorSet {
    p: usize,
    c: f64,
    jacobian: f64,
    mass: Matrix,
    mass_m: Matrix,
    mass_m_inv: Matrix,
    stiffness: Matrix,
    projection: Matrix,
    dp: Matrix,
    k_m: Matrix,
    filter_inv: Matrix,
}

impl OperatorSet {
    pub fn degree(&self) -> usize {
        self.p
    }

    /// ESFR correction parameter.
    pub fn c(&self) -> f64 {
        self.c
    }

    pub fn jacobian(&self) -> f64 {
        self.jacobian
    }

    /// Jacobian-free mass matrix.
    pub fn mass(&self) -> &Matrix {
        &self.mass
    }

    pub fn mass_m(&self) -> &Matrix {
        &self.mass_m
    }

    pub fn mass_m_inv(&self) -> &Matrix {
        &self.mass_m_inv
    }

    pub fn stiffness(&self) -> &Matrix {
        &self.stiffness
    }

    /// Discrete L2 projection from volume-node values to basis coefficients.
    pub fn projection(&self) -> &Matrix {
        &self.projection
    }

    /// p-th power of the strong differentiation operator.
    pub fn dp(&self) -> &Matrix {
        &self.dp
    }

    pub fn k_m(&self) -> &Matrix {
        &self.k_m
    }

    /// Dense `(mass_m + k_m)⁻¹`.
    pub fn filter_inv(&self) -> &Matrix {
        &self.filter_inv
    }

    /// `mass_m + k_m`, the broken Sobolev norm matrix.
    pub fn sobolev_norm(&self) -> Matrix {
        &self.mass_m + &self.k_m
    }
}

fn invert(m: &Matrix, name: &'static str) -> Result<Matrix> {
    m.clone().lu().try_inverse().ok_or(Error::SingularMatrix(name))
}

/// Assembles every reference-element operator for Jacobian `jacobian` and
/// correction parameter `c`.
pub fn build_operators(basis: &BasisSet, jacobian: f64, c: f64) -> Result<OperatorSet> {
    if !(jacobian > 0.0 && jacobian.is_finite()) {
        return Err(Error::InvalidParameter(format!(
            "Jacobian must be positive, got {jacobian}"
        )));
    }
    if !(c >= 0.0 && c.is_finite()) {
        return Err(Error::InvalidParameter(format!(
            "correction parameter must be non-negative, got {c}"
        )));
    }
    let p = basis.degree();
    let w = Matrix::from_diagonal(&Vector::from_column_slice(basis.rule().weights()));
    let chi_t_w = basis.chi_v().transpose() * &w;

    let mass = &chi_t_w * basis.chi_v();
    let mass_m = &mass * jacobian;
    let stiffness = &chi_t_w * basis.dchi_v();
    let mass_inv = invert(&mass, "mass")?;
    let mass_m_inv = &mass_inv / jacobian;
    let projection = &mass_m_inv * &chi_t_w * jacobian;

    // (M⁻¹S)^p sends each basis function to its constant p-th derivative;
    // building it from that closed form avoids amplifying round-off.
    let ones = basis.constant_coefficients();
    let dpw = basis.pth_derivatives();
    let dp = Matrix::from_fn(p + 1, p + 1, |i, j| ones[i] * dpw[j]);
    let k_m = (dp.transpose() * &mass_m * &dp) * c;
    let filter_inv = invert(&(&mass_m + &k_m), "filtered mass")?;

    Ok(OperatorSet {
        p,
        c,
        jacobian,
        mass,
        mass_m,
        mass_m_inv,
        stiffness,
        projection,
        dp,
        k_m,
        filter_inv,
    })
}

/// Largest entry magnitude.
pub fn max_abs(m: &Matrix) -> f64 {
    m.iter().fold(0.0_f64, |acc, v| acc.max(v.abs()))
}

/// Surface operator `sum_f chi_fᵀ W_f n_f chi_f` (1D faces have unit weight).
pub fn boundary_operator(basis: &BasisSet) -> Matrix {
    let n_p = basis.n_dofs();
    let mut b = Matrix::zeros(n_p, n_p);
    for (face, &normal) in FACE_NORMALS.iter().enumerate() {
        let chi = basis.chi_f(face);
        b += chi * chi.transpose() * normal;
    }
    b
}

/// Largest entry of `S + Sᵀ - sum_f chi_fᵀ W_f n_f chi_f`.
pub fn verify_sbp(ops: &OperatorSet, basis: &BasisSet) -> f64 {
    let s = ops.stiffness();
    max_abs(&(s + s.transpose() - boundary_operator(basis)))
}

/// Leading coefficient `(2p)! / (2^p (p!)^2)` of the Legendre polynomial `P_p`.
pub fn legendre_leading_coefficient(p: usize) -> f64 {
    (1..=p).fold(1.0, |acc, k| acc * (2 * k - 1) as f64 / k as f64)
}

/// Scalar `1 + c (2p+1) (p! c_p)^2` from the rank-one structure of `K_m`.
pub fn sherman_morrison_denominator(p: usize, c: f64) -> f64 {
    let factorial: f64 = (1..=p).map(|k| k as f64).product();
    let pc = factorial * legendre_leading_coefficient(p);
    1.0 + c * (2 * p + 1) as f64 * pc * pc
}

/// Closed-form `(M_m + K_m)⁻¹ = M_m⁻¹ - M_m⁻¹ K_m M_m⁻¹ / (1 + c (2p+1)(p! c_p)²)`.
///
/// Exact when the mass matrix is integrated exactly (GL(p+1) or richer).
pub fn sherman_morrison_filter_inverse(ops: &OperatorSet) -> Matrix {
    let minv = ops.mass_m_inv();
    let denom = sherman_morrison_denominator(ops.degree(), ops.c());
    minv - (minv * ops.k_m() * minv) / denom
}

/// Rank-one inverse `M_m⁻¹ - M_m⁻¹ K_m M_m⁻¹ / (1 + tr(M_m⁻¹ K_m))`.
///
/// `K_m` has rank one for any volume rule, so this holds on GLL as well;
/// with an exact mass matrix the trace equals `c (2p+1)(p! c_p)²` and the
/// result coincides with [`sherman_morrison_filter_inverse`].
pub fn rank_one_filter_inverse(ops: &OperatorSet) -> Matrix {
    let minv = ops.mass_m_inv();
    let mk = minv * ops.k_m();
    let denom = 1.0 + mk.trace();
    minv - (&mk * minv) / denom
}

/// Largest entry of `K_m M_m⁻¹ S_ξ`.
pub fn verify_kd_annihilation(ops: &OperatorSet) -> f64 {
    max_abs(&(ops.k_m() * ops.mass_m_inv() * ops.stiffness()))
}

/// Correction parameter recovering Huynh's g2 scheme, in the normalized
/// Legendre convention used by [`build_operators`].
///
/// With this value, `M + K` built on GL(p+1) equals the lumped GLL(p+1) mass
/// matrix.
pub fn c_hu(p: usize) -> f64 {
    assert!(p >= 1, "c_HU is undefined for p = 0");
    let factorial: f64 = (1..=p).map(|k| k as f64).product();
    let pc = factorial * legendre_leading_coefficient(p);
    let pf = p as f64;
    (pf + 1.0) / (pf * (2.0 * pf + 1.0) * pc * pc)
}

/// Default `c+` values per degree, normalized Legendre convention.
///
/// These are half of the commonly tabulated `c+` values for RK4-type
/// integrators, the factor coming from the normalized reference basis.
pub fn c_plus_default(p: usize) -> Option<f64> {
    match p {
        2 => Some(0.186 / 2.0),
        3 => Some(3.67e-3 / 2.0),
        4 => Some(4.79e-5 / 2.0),
        5 => Some(4.24e-7 / 2.0),
        _ => None,
    }
}
