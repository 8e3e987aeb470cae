//! Piecewise polynomials on a uniform mesh: coefficient storage, L2 projection
//! and point/trace evaluation.

use std::sync::Arc;

use crate::basis::{Basis, Side};
use crate::error::{Error, Result};
use crate::mesh::Mesh;

/// Cell-major `cells x modes` coefficient matrix.
#[derive(Debug, Clone, PartialEq)]
pub struct CoeffField {
    cells: usize,
    modes: usize,
    data: Vec<f64>,
}

impl CoeffField {
    pub fn zeros(cells: usize, modes: usize) -> Self {
        Self {
            cells,
            modes,
            data: vec![0.0; cells * modes],
        }
    }

    pub fn from_vec(cells: usize, modes: usize, data: Vec<f64>) -> Self {
        assert_eq!(data.len(), cells * modes, "coefficient count mismatch");
        Self { cells, modes, data }
    }

    pub fn cells(&self) -> usize {
        self.cells
    }

    pub fn modes(&self) -> usize {
        self.modes
    }

    pub fn cell(&self, j: usize) -> &[f64] {
        &self.data[j * self.modes..(j + 1) * self.modes]
    }

    pub fn cell_mut(&mut self, j: usize) -> &mut [f64] {
        &mut self.data[j * self.modes..(j + 1) * self.modes]
    }

    pub fn as_slice(&self) -> &[f64] {
        &self.data
    }

    pub fn as_mut_slice(&mut self) -> &mut [f64] {
        &mut self.data
    }

    pub fn get(&self, j: usize, i: usize) -> f64 {
        self.data[j * self.modes + i]
    }

    pub fn scale(&mut self, factor: f64) {
        self.data.iter_mut().for_each(|v| *v *= factor);
    }

    /// `self += factor * other`
    pub fn axpy(&mut self, factor: f64, other: &CoeffField) {
        debug_assert_eq!(self.data.len(), other.data.len());
        for (a, b) in self.data.iter_mut().zip(&other.data) {
            *a += factor * b;
        }
    }

    pub fn is_finite(&self) -> bool {
        self.data.iter().all(|v| v.is_finite())
    }

    pub fn max_abs(&self) -> f64 {
        self.data.iter().fold(0.0, |m, v| m.max(v.abs()))
    }
}

/// Mesh plus basis: the discrete space `V_h`.
#[derive(Debug, Clone, PartialEq)]
pub struct DgSpace {
    pub mesh: Mesh,
    pub basis: Basis,
}

impl DgSpace {
    pub fn new(mesh: Mesh, degree: usize) -> Result<Arc<Self>> {
        Ok(Arc::new(Self {
            mesh,
            basis: Basis::new(degree)?,
        }))
    }

    pub fn degree(&self) -> usize {
        self.basis.degree()
    }

    pub fn zeros(&self) -> CoeffField {
        CoeffField::zeros(self.mesh.cells(), self.basis.modes())
    }

    /// Physical `order`-th derivative of a cell expansion at a cell end.
    pub fn end_value(&self, coeffs: &[f64], end: Side, order: usize) -> f64 {
        self.basis.eval_end(coeffs, end, order) * self.chain_factor(order)
    }

    /// `(2 / h)^order`, the reference-to-physical derivative factor.
    pub fn chain_factor(&self, order: usize) -> f64 {
        (2.0 / self.mesh.h()).powi(order as i32)
    }

    /// L-infinity norm sampled at every quadrature node and both cell ends.
    pub fn sampled_sup_norm(&self, field: &CoeffField) -> f64 {
        let mut max: f64 = 0.0;
        for j in 0..field.cells() {
            let c = field.cell(j);
            for q in 0..self.basis.nodes().len() {
                max = max.max(self.basis.eval_at_node(c, q).abs());
            }
            max = max.max(self.basis.eval_end(c, Side::Left, 0).abs());
            max = max.max(self.basis.eval_end(c, Side::Right, 0).abs());
        }
        max
    }
}

/// Piecewise polynomial `u_h` at time `t`.
#[derive(Debug, Clone)]
pub struct DgSolution {
    pub space: Arc<DgSpace>,
    pub coeffs: CoeffField,
    pub t: f64,
}

impl DgSolution {
    pub fn new(space: Arc<DgSpace>, coeffs: CoeffField, t: f64) -> Self {
        assert_eq!(coeffs.cells(), space.mesh.cells());
        assert_eq!(coeffs.modes(), space.basis.modes());
        Self { space, coeffs, t }
    }

    pub fn mesh(&self) -> &Mesh {
        &self.space.mesh
    }

    pub fn basis(&self) -> &Basis {
        &self.space.basis
    }

    pub fn degree(&self) -> usize {
        self.space.degree()
    }

    /// `order`-th spatial derivative at `x`. Interior interfaces are read from
    /// the cell on their right; use [`eval_side`](Self::eval_side) for one-sided traces.
    pub fn eval(&self, x: f64, order: usize) -> Result<f64> {
        let (j, xi) = self.mesh().locate(x)?;
        if order > self.degree() {
            return Ok(0.0);
        }
        Ok(self.basis().eval_reference(self.coeffs.cell(j), xi, order) * self.space.chain_factor(order))
    }

    /// One-sided `order`-th derivative trace at interface `j`.
    pub fn eval_side(&self, j: usize, side: Side, order: usize) -> Result<f64> {
        let cells = self.mesh().cells();
        match side {
            Side::Left if j == 0 => Err(Error::InflowTraceRequiresBoundary),
            Side::Left if j <= cells => Ok(self.space.end_value(self.coeffs.cell(j - 1), Side::Right, order)),
            Side::Right if j < cells => Ok(self.space.end_value(self.coeffs.cell(j), Side::Left, order)),
            _ => Err(Error::InterfaceOutOfRange { index: j, cells }),
        }
    }

    /// Evaluate at quadrature node `q` of cell `j`.
    pub fn value_at_node(&self, j: usize, q: usize) -> f64 {
        self.basis().eval_at_node(self.coeffs.cell(j), q)
    }
}

/// Cellwise L2 projection of `g` onto `V_h`, evaluated with the basis quadrature.
pub fn project_l2<G>(g: G, space: &Arc<DgSpace>) -> Result<DgSolution>
where
    G: Fn(f64) -> f64,
{
    let mesh = &space.mesh;
    let basis = &space.basis;
    let mut coeffs = space.zeros();
    for j in 0..mesh.cells() {
        let cell = coeffs.cell_mut(j);
        for (q, (&xi, &w)) in basis.nodes().iter().zip(basis.weights()).enumerate() {
            let x = mesh.to_physical(j, xi);
            let value = g(x);
            if !value.is_finite() {
                return Err(Error::NonFiniteInput { x, value });
            }
            // orthonormal reference modes: c_i = sum_q w_q g(x_q) phi_i(xi_q)
            for (c, phi) in cell.iter_mut().zip(basis.values_at(q)) {
                *c += w * value * phi;
            }
        }
    }
    Ok(DgSolution::new(space.clone(), coeffs, 0.0))
}

#[cfg(test)]
mod tests {
    use super::*;

    fn space(a: f64, b: f64, cells: usize, p: usize) -> Arc<DgSpace> {
        DgSpace::new(Mesh::new(a, b, cells).unwrap(), p).unwrap()
    }

    #[test]
    fn constant_projects_onto_mean_mode() {
        let s = space(0.0, 1.0, 5, 3);
        let u = project_l2(|_| 2.5, &s).unwrap();
        for j in 0..5 {
            // phi_0 = 1/sqrt(2) on the reference cell
            assert!((u.coeffs.get(j, 0) - 2.5 * 2f64.sqrt()).abs() < 1e-14);
            for i in 1..4 {
                assert!(u.coeffs.get(j, i).abs() < 1e-14);
            }
        }
    }

    #[test]
    fn linear_function_reproduced_at_nodes() {
        let s = space(0.0, 2.0, 7, 1);
        let u = project_l2(|x| x, &s).unwrap();
        for j in 0..7 {
            for (q, &xi) in s.basis.nodes().iter().enumerate() {
                let x = s.mesh.to_physical(j, xi);
                assert!((u.value_at_node(j, q) - x).abs() < 1e-14);
            }
        }
    }

    #[test]
    fn eval_derivatives_of_quadratic() {
        let s = space(-1.0, 3.0, 8, 2);
        let u = project_l2(|x| x * x, &s).unwrap();
        for &x in &[-1.0, -0.3, 0.7, 1.9, 3.0] {
            assert!((u.eval(x, 0).unwrap() - x * x).abs() < 1e-13);
            assert!((u.eval(x, 1).unwrap() - 2.0 * x).abs() < 1e-12);
            assert!((u.eval(x, 2).unwrap() - 2.0).abs() < 1e-11);
            assert_eq!(u.eval(x, 3).unwrap(), 0.0);
        }
        assert!(u.eval(3.5, 0).is_err());
    }

    #[test]
    fn constant_has_zero_slope() {
        let s = space(0.0, 1.0, 3, 4);
        let u = project_l2(|_| -1.0, &s).unwrap();
        assert!(u.eval(0.4, 1).unwrap().abs() < 1e-12);
    }

    #[test]
    fn sin_second_derivative() {
        let s = space(0.0, 10.0, 200, 3);
        let u = project_l2(f64::sin, &s).unwrap();
        // O(h^{p-1}) = O(h^2) accuracy for the second derivative
        let err = (u.eval(1.0, 2).unwrap() + 1f64.sin()).abs();
        assert!(err < 5.0 * 0.05f64.powi(2), "{err}");
    }

    #[test]
    fn traces_of_continuous_and_step_functions() {
        let s = space(0.0, 1.0, 4, 2);
        let u = project_l2(|x| 3.0 * x - 1.0, &s).unwrap();
        for j in 1..4 {
            let l = u.eval_side(j, Side::Left, 0).unwrap();
            let r = u.eval_side(j, Side::Right, 0).unwrap();
            assert!((l - r).abs() < 1e-13);
        }
        assert!(matches!(u.eval_side(0, Side::Left, 0), Err(Error::InflowTraceRequiresBoundary)));
        assert!(u.eval_side(4, Side::Right, 0).is_err());

        let two = space(0.0, 2.0, 2, 0);
        let step = project_l2(|x| if x < 1.0 { 1.0 } else { 2.0 }, &two).unwrap();
        assert!((step.eval_side(1, Side::Left, 0).unwrap() - 1.0).abs() < 1e-14);
        assert!((step.eval_side(1, Side::Right, 0).unwrap() - 2.0).abs() < 1e-14);
    }

    #[test]
    fn non_finite_input_rejected() {
        let s = space(0.0, 1.0, 2, 1);
        let err = project_l2(|x| if x > 0.5 { f64::NAN } else { 0.0 }, &s).unwrap_err();
        assert!(matches!(err, Error::NonFiniteInput { .. }));
    }
}
