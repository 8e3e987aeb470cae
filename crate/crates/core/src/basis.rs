//! Normalized Legendre modal basis on the reference cell `[-1, 1]`.
//!
//! The reference functions are `sqrt((2i + 1) / 2) P_i(xi)`, orthonormal on the
//! reference cell. Mapped onto a physical cell of width `h` they satisfy
//! `(phi_i, phi_i) = h / 2`, so the mass matrix is `(h / 2) I`.

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

/// Largest polynomial degree the crate supports.
pub const MAX_DEGREE: usize = 10;

/// Gauss-Legendre nodes and weights on `[-1, 1]`, nodes ascending.
pub fn gauss_legendre(n: usize) -> (Vec<f64>, Vec<f64>) {
    assert!(n > 0, "quadrature needs at least one point");
    let mut nodes = vec![0.0; n];
    let mut weights = vec![0.0; n];
    for i in 0..(n + 1) / 2 {
        // Tricomi initial guess, then Newton on P_n.
        let mut x = (std::f64::consts::PI * (i as f64 + 0.75) / (n as f64 + 0.5)).cos();
        let mut dp = 0.0;
        for _ in 0..100 {
            let (p, d) = legendre_and_slope(n, x);
            dp = d;
            let dx = p / d;
            x -= dx;
            if dx.abs() < 1e-16 {
                break;
            }
        }
        let (_, d) = legendre_and_slope(n, x);
        if d != 0.0 {
            dp = d;
        }
        let w = 2.0 / ((1.0 - x * x) * dp * dp);
        nodes[i] = -x;
        nodes[n - 1 - i] = x;
        weights[i] = w;
        weights[n - 1 - i] = w;
    }
    if n % 2 == 1 {
        nodes[n / 2] = 0.0;
    }
    (nodes, weights)
}

fn legendre_and_slope(n: usize, x: f64) -> (f64, f64) {
    let mut p0 = 1.0;
    let mut p1 = x;
    if n == 0 {
        return (1.0, 0.0);
    }
    for k in 1..n {
        let kf = k as f64;
        let p2 = ((2.0 * kf + 1.0) * x * p1 - kf * p0) / (kf + 1.0);
        p0 = p1;
        p1 = p2;
    }
    let nf = n as f64;
    let slope = nf * (x * p1 - p0) / (x * x - 1.0);
    (p1, slope)
}

/// `table[l][n] = d^l/dxi^l P_n(xi)` for `n <= degree`, `l <= orders`.
///
/// Uses `P^{(l)}_{n+1} = P^{(l)}_{n-1} + (2n + 1) P^{(l-1)}_n`, which stays
/// accurate up to the endpoints.
pub fn legendre_derivatives(xi: f64, degree: usize, orders: usize) -> Vec<Vec<f64>> {
    let mut table = vec![vec![0.0; degree + 1]; orders + 1];
    table[0][0] = 1.0;
    if degree >= 1 {
        table[0][1] = xi;
    }
    for n in 1..degree {
        let nf = n as f64;
        table[0][n + 1] = ((2.0 * nf + 1.0) * xi * table[0][n] - nf * table[0][n - 1]) / (nf + 1.0);
    }
    for l in 1..=orders {
        if degree >= 1 && l == 1 {
            table[l][1] = 1.0;
        }
        for n in 1..degree {
            table[l][n + 1] = table[l][n - 1] + (2.0 * n as f64 + 1.0) * table[l - 1][n];
        }
    }
    table
}

fn normalization(i: usize) -> f64 {
    ((2 * i + 1) as f64 / 2.0).sqrt()
}

/// Which side of an interface a trace is taken from.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub enum Side {
    /// Limit from the left, read from the cell ending at the interface.
    Left,
    /// Limit from the right, read from the cell starting at the interface.
    Right,
}

/// Reference-cell tables for the degree-`p` normalized Legendre basis.
#[derive(Debug, Clone, PartialEq)]
pub struct Basis {
    degree: usize,
    nodes: Vec<f64>,
    weights: Vec<f64>,
    values: Vec<f64>,
    slopes: Vec<f64>,
    /// `left_traces[l][i]`: `l`-th reference derivative of mode `i` at `xi = -1`.
    left_traces: Vec<Vec<f64>>,
    right_traces: Vec<Vec<f64>>,
}

impl Basis {
    /// Basis of degree `p` with a `p + 2` point Gauss rule (exact to degree `2p + 3`).
    pub fn new(degree: usize) -> Result<Self> {
        Self::with_quadrature(degree, degree + 2)
    }

    pub fn with_quadrature(degree: usize, points: usize) -> Result<Self> {
        if degree > MAX_DEGREE {
            return Err(Error::Config(format!(
                "polynomial degree {degree} exceeds the supported maximum {MAX_DEGREE}"
            )));
        }
        if points < degree + 1 {
            return Err(Error::Config(format!(
                "{points} quadrature points cannot integrate the degree-{degree} mass matrix"
            )));
        }
        let (nodes, weights) = gauss_legendre(points);
        let modes = degree + 1;
        let mut values = Vec::with_capacity(points * modes);
        let mut slopes = Vec::with_capacity(points * modes);
        for &xi in &nodes {
            let table = legendre_derivatives(xi, degree, 1);
            for i in 0..modes {
                values.push(normalization(i) * table[0][i]);
                slopes.push(normalization(i) * table[1][i]);
            }
        }
        let trace = |xi: f64| -> Vec<Vec<f64>> {
            legendre_derivatives(xi, degree, degree)
                .into_iter()
                .map(|row| {
                    row.into_iter()
                        .enumerate()
                        .map(|(i, v)| normalization(i) * v)
                        .collect()
                })
                .collect()
        };
        Ok(Self {
            degree,
            left_traces: trace(-1.0),
            right_traces: trace(1.0),
            nodes,
            weights,
            values,
            slopes,
        })
    }

    pub fn degree(&self) -> usize {
        self.degree
    }

    pub fn modes(&self) -> usize {
        self.degree + 1
    }

    pub fn nodes(&self) -> &[f64] {
        &self.nodes
    }

    pub fn weights(&self) -> &[f64] {
        &self.weights
    }

    /// Mode values at quadrature node `q`.
    pub fn values_at(&self, q: usize) -> &[f64] {
        let m = self.modes();
        &self.values[q * m..(q + 1) * m]
    }

    /// Reference-coordinate slopes of every mode at quadrature node `q`.
    pub fn slopes_at(&self, q: usize) -> &[f64] {
        let m = self.modes();
        &self.slopes[q * m..(q + 1) * m]
    }

    /// Reference derivative of order `order <= p` of every mode at the cell end.
    /// `Side::Left` is the cell's left end (`xi = -1`).
    pub fn end_traces(&self, end: Side, order: usize) -> &[f64] {
        match end {
            Side::Left => &self.left_traces[order],
            Side::Right => &self.right_traces[order],
        }
    }

    /// Evaluate `d^order/dxi^order` of the expansion `coeffs` at `xi`.
    pub fn eval_reference(&self, coeffs: &[f64], xi: f64, order: usize) -> f64 {
        if order > self.degree {
            return 0.0;
        }
        let table = legendre_derivatives(xi, self.degree, order);
        coeffs
            .iter()
            .enumerate()
            .map(|(i, c)| c * normalization(i) * table[order][i])
            .sum()
    }

    /// Value of the expansion at quadrature node `q`.
    pub fn eval_at_node(&self, coeffs: &[f64], q: usize) -> f64 {
        dot(coeffs, self.values_at(q))
    }

    /// Order-`order` reference derivative at a cell end.
    pub fn eval_end(&self, coeffs: &[f64], end: Side, order: usize) -> f64 {
        if order > self.degree {
            return 0.0;
        }
        dot(coeffs, self.end_traces(end, order))
    }
}

pub(crate) fn dot(a: &[f64], b: &[f64]) -> f64 {
    a.iter().zip(b).map(|(x, y)| x * y).sum()
}
