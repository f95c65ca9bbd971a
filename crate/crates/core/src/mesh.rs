//! Uniform periodic 1D mesh with affine element mappings.

use crate::error::{Error, Result};

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Side {
    Left,
    Right,
}

/// `[x_left, x_right]` split into `n_elements` equal, periodically connected elements.
#[derive(Debug, Clone, PartialEq)]
pub struct Mesh1D {
    x_left: f64,
    x_right: f64,
    n_elements: usize,
}

impl Mesh1D {
    pub fn new(x_left: f64, x_right: f64, n_elements: usize) -> Result<Self> {
        if n_elements == 0 {
            return Err(Error::InvalidParameter("mesh needs at least one element".into()));
        }
        if !(x_right > x_left) || !x_left.is_finite() || !x_right.is_finite() {
            return Err(Error::InvalidParameter(format!("invalid domain [{x_left}, {x_right}]")));
        }
        Ok(Self {
            x_left,
            x_right,
            n_elements,
        })
    }

    pub fn x_left(&self) -> f64 {
        self.x_left
    }

    pub fn x_right(&self) -> f64 {
        self.x_right
    }

    pub fn n_elements(&self) -> usize {
        self.n_elements
    }

    pub fn length(&self) -> f64 {
        self.x_right - self.x_left
    }

    pub fn dx(&self) -> f64 {
        self.length() / self.n_elements as f64
    }

    /// Constant determinant of the affine reference-to-physical map.
    pub fn jacobian(&self) -> f64 {
        0.5 * self.dx()
    }

    /// Left boundary of element `m`.
    pub fn element_left(&self, m: usize) -> f64 {
        self.x_left + m as f64 * self.dx()
    }

    pub fn map_to_physical(&self, m: usize, xi: f64) -> Result<f64> {
        if m >= self.n_elements {
            return Err(Error::ElementOutOfRange {
                index: m,
                n_elements: self.n_elements,
            });
        }
        Ok(self.map_unchecked(m, xi))
    }

    pub(crate) fn map_unchecked(&self, m: usize, xi: f64) -> f64 {
        self.element_left(m) + (xi + 1.0) * self.jacobian()
    }

    /// Periodic neighbour across `side`.
    pub fn neighbor(&self, m: usize, side: Side) -> usize {
        let n = self.n_elements;
        match side {
            Side::Left => (m + n - 1) % n,
            Side::Right => (m + 1) % n,
        }
    }
}
