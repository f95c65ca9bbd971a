//! Gauss-Legendre and Gauss-Lobatto-Legendre quadrature on [-1, 1].

use std::f64::consts::PI;

use crate::error::{Error, Result};

const NEWTON_MAX_ITER: usize = 100;
const NEWTON_RESIDUAL_TOL: f64 = 1e-14;

/// Family of a quadrature rule.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum QuadratureKind {
    GaussLegendre,
    GaussLobattoLegendre,
}

impl QuadratureKind {
    pub fn short_name(self) -> &'static str {
        match self {
            QuadratureKind::GaussLegendre => "GL",
            QuadratureKind::GaussLobattoLegendre => "GLL",
        }
    }
}

/// Nodes and weights of a quadrature rule on the reference element [-1, 1].
///
/// Nodes are strictly ascending and symmetric about the origin.
#[derive(Debug, Clone, PartialEq)]
pub struct QuadratureRule {
    kind: QuadratureKind,
    nodes: Vec<f64>,
    weights: Vec<f64>,
}

impl QuadratureRule {
    pub fn kind(&self) -> QuadratureKind {
        self.kind
    }

    pub fn nodes(&self) -> &[f64] {
        &self.nodes
    }

    pub fn weights(&self) -> &[f64] {
        &self.weights
    }

    pub fn len(&self) -> usize {
        self.nodes.len()
    }

    pub fn is_empty(&self) -> bool {
        self.nodes.is_empty()
    }

    /// Highest monomial degree integrated exactly.
    pub fn exactness(&self) -> usize {
        let n = self.len();
        match self.kind {
            QuadratureKind::GaussLegendre => 2 * n - 1,
            QuadratureKind::GaussLobattoLegendre => 2 * n - 3,
        }
    }

    /// Integrates `f` over [-1, 1].
    pub fn integrate<F: Fn(f64) -> f64>(&self, f: F) -> f64 {
        self.nodes.iter().zip(&self.weights).map(|(&x, &w)| w * f(x)).sum()
    }

    pub fn label(&self) -> String {
        format!("{}({})", self.kind.short_name(), self.len())
    }
}

/// Value and first derivative of the Legendre polynomial `P_p` at `x`,
/// normalized so that `P_p(1) = 1`.
pub fn legendre_eval(p: usize, x: f64) -> (f64, f64) {
    if p == 0 {
        return (1.0, 0.0);
    }
    let (mut p_prev, mut dp_prev) = (1.0, 0.0);
    let (mut p_cur, mut dp_cur) = (x, 1.0);
    for k in 1..p {
        let kf = k as f64;
        let p_next = ((2.0 * kf + 1.0) * x * p_cur - kf * p_prev) / (kf + 1.0);
        let dp_next = ((2.0 * kf + 1.0) * (p_cur + x * dp_cur) - kf * dp_prev) / (kf + 1.0);
        p_prev = p_cur;
        dp_prev = dp_cur;
        p_cur = p_next;
        dp_cur = dp_next;
    }
    (p_cur, dp_cur)
}

/// Newton refinement of a root of `g`, where `g_and_dg` returns `(g, g')`.
fn newton_root<F>(mut x: f64, g_and_dg: F) -> Result<f64>
where
    F: Fn(f64) -> (f64, f64),
{
    for _ in 0..NEWTON_MAX_ITER {
        let (g, dg) = g_and_dg(x);
        let step = g / dg;
        x -= step;
        // The residual cannot drop much below eps * |g'| for high degrees.
        if g.abs() <= NEWTON_RESIDUAL_TOL || step.abs() <= 4.0 * f64::EPSILON {
            let (g, dg) = g_and_dg(x);
            return Ok(x - g / dg);
        }
    }
    Err(Error::QuadratureNotConverged { x })
}

/// Replaces `v` by its mirror-image average so `v[i] == sign * v[n-1-i]` exactly.
fn symmetrize(v: &mut [f64], sign: f64) {
    let n = v.len();
    for i in 0..n / 2 {
        let j = n - 1 - i;
        let avg = 0.5 * (v[i] + sign * v[j]);
        v[i] = avg;
        v[j] = sign * avg;
    }
    if n % 2 == 1 && sign < 0.0 {
        v[n / 2] = 0.0;
    }
}

/// `n`-point Gauss-Legendre rule, exact for polynomials up to degree `2n - 1`.
pub fn gauss_legendre(n: usize) -> Result<QuadratureRule> {
    if n < 1 {
        return Err(Error::InvalidPointCount {
            kind: QuadratureKind::GaussLegendre,
            n,
            min: 1,
        });
    }
    let mut nodes = Vec::with_capacity(n);
    for i in 0..n {
        let guess = -(PI * (4 * i + 3) as f64 / (4 * n + 2) as f64).cos();
        nodes.push(newton_root(guess, |x| legendre_eval(n, x))?);
    }
    symmetrize(&mut nodes, -1.0);
    let mut weights: Vec<f64> = nodes
        .iter()
        .map(|&x| {
            let (_, dp) = legendre_eval(n, x);
            2.0 / ((1.0 - x * x) * dp * dp)
        })
        .collect();
    symmetrize(&mut weights, 1.0);
    Ok(QuadratureRule {
        kind: QuadratureKind::GaussLegendre,
        nodes,
        weights,
    })
}

/// `n`-point Gauss-Lobatto-Legendre rule, exact for polynomials up to degree `2n - 3`.
pub fn gauss_lobatto_legendre(n: usize) -> Result<QuadratureRule> {
    if n < 2 {
        return Err(Error::InvalidPointCount {
            kind: QuadratureKind::GaussLobattoLegendre,
            n,
            min: 2,
        });
    }
    let deg = n - 1;
    let degf = deg as f64;
    let mut nodes = Vec::with_capacity(n);
    nodes.push(-1.0);
    for i in 1..deg {
        let guess = -(PI * i as f64 / degf).cos();
        // Interior nodes are the roots of P'_deg; P'' follows from Legendre's ODE.
        let root = newton_root(guess, |x| {
            let (p, dp) = legendre_eval(deg, x);
            let d2p = (2.0 * x * dp - degf * (degf + 1.0) * p) / (1.0 - x * x);
            (dp, d2p)
        })?;
        nodes.push(root);
    }
    nodes.push(1.0);
    symmetrize(&mut nodes, -1.0);
    let scale = 2.0 / (n as f64 * degf);
    let mut weights: Vec<f64> = nodes
        .iter()
        .map(|&x| {
            let (p, _) = legendre_eval(deg, x);
            scale / (p * p)
        })
        .collect();
    symmetrize(&mut weights, 1.0);
    Ok(QuadratureRule {
        kind: QuadratureKind::GaussLobattoLegendre,
        nodes,
        weights,
    })
}

/// Builds a rule of the given kind and point count.
pub fn build_rule(kind: QuadratureKind, n: usize) -> Result<QuadratureRule> {
    match kind {
        QuadratureKind::GaussLegendre => gauss_legendre(n),
        QuadratureKind::GaussLobattoLegendre => gauss_lobatto_legendre(n),
    }
}
