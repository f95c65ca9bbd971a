//! Burgers flux and the interface numerical fluxes.
//!
//! All interface fluxes share the form
//! `f* = (w0² / 2 + vp² / 2) / 2 - λ (w0 - vp)`
//! where `vp` is the trace on the left of the edge and `w0` the trace on the
//! right. The flux kind only changes `λ`.

use std::fmt;
use std::str::FromStr;

use crate::error::Error;

/// `u² / 2`.
#[inline]
pub fn physical_flux(u: f64) -> f64 {
    0.5 * u * u
}

/// Traces on either side of an edge, oriented with outward normal +1 for the
/// left element.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct InterfaceState {
    /// Trace of the element left of the edge.
    pub v_p: f64,
    /// Trace of the element right of the edge.
    pub w_0: f64,
}

impl InterfaceState {
    pub fn new(v_p: f64, w_0: f64) -> Self {
        Self { v_p, w_0 }
    }

    pub fn jump(&self) -> f64 {
        self.w_0 - self.v_p
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum FluxKind {
    /// Energy conserving: `λ = (w0 - vp) / 12`.
    Econ,
    /// Local Lax-Friedrichs: `λ = max(|w0|, |vp|) / 2`.
    Llf,
}

impl FluxKind {
    pub fn lambda(self, s: InterfaceState) -> f64 {
        match self {
            FluxKind::Econ => s.jump() / 12.0,
            FluxKind::Llf => 0.5 * s.w_0.abs().max(s.v_p.abs()),
        }
    }

    pub fn name(self) -> &'static str {
        match self {
            FluxKind::Econ => "ECON",
            FluxKind::Llf => "LF",
        }
    }
}

impl fmt::Display for FluxKind {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

impl FromStr for FluxKind {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        match s.to_ascii_lowercase().as_str() {
            "econ" => Ok(FluxKind::Econ),
            "lf" | "llf" => Ok(FluxKind::Llf),
            _ => Err(Error::InvalidValue {
                key: "flux".into(),
                value: s.into(),
            }),
        }
    }
}

pub fn numerical_flux(s: InterfaceState, kind: FluxKind) -> f64 {
    0.5 * (physical_flux(s.w_0) + physical_flux(s.v_p)) - kind.lambda(s) * s.jump()
}

/// Split face term `f* - α χ_f f̂ - (1 - α) trace² / 2` at one face of an
/// element, where `own_trace` is that element's solution trace on the face.
pub fn face_correction_terms(flux_star: f64, own_trace: f64, interpolated_flux: f64, alpha: f64) -> f64 {
    flux_star - alpha * interpolated_flux - (1.0 - alpha) * physical_flux(own_trace)
}

/// Energy production `(w0 - vp)² ((w0 - vp) / 12 - λ)` of an edge under the
/// split scheme with `α = 2/3`.
pub fn surface_energy_contribution(s: InterfaceState, kind: FluxKind) -> f64 {
    let jump = s.jump();
    jump * jump * (jump / 12.0 - kind.lambda(s))
}
