use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

/// Uniform partition of `[a, b]` into `cells` intervals of width `h`.
///
/// Cell `j` spans `[a + j h, a + (j + 1) h]`; interface `j` sits at `a + j h`,
/// so interface 0 is the inflow boundary and interface `cells` the outflow one.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct Mesh {
    a: f64,
    b: f64,
    cells: usize,
    h: f64,
}

impl Mesh {
    pub fn new(a: f64, b: f64, cells: usize) -> Result<Self> {
        if !(a.is_finite() && b.is_finite()) || b <= a {
            return Err(Error::InvalidMesh(format!("bad interval [{a}, {b}]")));
        }
        if cells == 0 {
            return Err(Error::InvalidMesh("zero cells".into()));
        }
        Ok(Self {
            a,
            b,
            cells,
            h: (b - a) / cells as f64,
        })
    }

    /// Mesh with the given cell width; `(b - a) / h` must be an integer.
    pub fn with_width(a: f64, b: f64, h: f64) -> Result<Self> {
        if !(h > 0.0) {
            return Err(Error::InvalidMesh(format!("cell width {h} must be positive")));
        }
        let ratio = (b - a) / h;
        let cells = ratio.round();
        if cells < 1.0 || (ratio - cells).abs() > 1e-9 * ratio.max(1.0) {
            return Err(Error::InvalidMesh(format!(
                "width {h} does not divide [{a}, {b}] evenly"
            )));
        }
        Self::new(a, b, cells as usize)
    }

    pub fn a(&self) -> f64 {
        self.a
    }

    pub fn b(&self) -> f64 {
        self.b
    }

    pub fn cells(&self) -> usize {
        self.cells
    }

    pub fn h(&self) -> f64 {
        self.h
    }

    pub fn length(&self) -> f64 {
        self.b - self.a
    }

    /// Position of interface `j` (`x_{j-1/2}` in cell-centred numbering).
    pub fn interface(&self, j: usize) -> f64 {
        if j == self.cells {
            self.b
        } else {
            self.a + j as f64 * self.h
        }
    }

    pub fn center(&self, j: usize) -> f64 {
        self.a + (j as f64 + 0.5) * self.h
    }

    /// Physical coordinate of reference point `xi` in cell `j`.
    pub fn to_physical(&self, j: usize, xi: f64) -> f64 {
        self.center(j) + 0.5 * self.h * xi
    }

    /// Cell containing `x`; interior interfaces belong to the cell on their right,
    /// `b` belongs to the last cell.
    pub fn locate(&self, x: f64) -> Result<(usize, f64)> {
        if !(x >= self.a && x <= self.b) {
            return Err(Error::OutOfDomain {
                x,
                a: self.a,
                b: self.b,
            });
        }
        let j = (((x - self.a) / self.h).floor() as usize).min(self.cells - 1);
        let xi = (2.0 * (x - self.center(j)) / self.h).clamp(-1.0, 1.0);
        Ok((j, xi))
    }
}
