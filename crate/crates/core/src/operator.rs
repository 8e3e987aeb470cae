//! Weak DG operator `H_j(u, v)` with the upwind Godunov flux.
//!
//! For every cell `j` and mode `i`:
//!
//! ```text
//! H_j(u, phi_i) = (f(u), d/dx phi_i)_j + F_{j-1/2} phi_i(x_{j-1/2}^+) - F_{j+1/2} phi_i(x_{j+1/2}^-)
//! ```
//!
//! The inflow interface takes its upwind state from the boundary signal; the
//! outflow interface uses the last cell's trace; periodic meshes identify
//! interface `m` with interface 0.

use crate::basis::Side;
use crate::boundary::BoundaryModel;
use crate::error::Result;
use crate::field::{CoeffField, DgSolution, DgSpace};
use crate::flux::FluxModel;
use crate::mesh::Mesh;

/// Godunov numerical flux between two traces.
pub fn godunov_flux(u_left: f64, u_right: f64, flux: &FluxModel) -> Result<f64> {
    flux.godunov_flux(u_left, u_right)
}

/// Assemble `H` from interface fluxes `F_0..=F_m` and the flux value at every
/// quadrature node. Both the operator and its time derivatives go through here.
pub(crate) fn assemble<V>(space: &DgSpace, interface_flux: &[f64], volume: V) -> CoeffField
where
    V: Fn(usize, usize) -> f64,
{
    let basis = &space.basis;
    let cells = space.mesh.cells();
    debug_assert_eq!(interface_flux.len(), cells + 1);
    let left = basis.end_traces(Side::Left, 0);
    let right = basis.end_traces(Side::Right, 0);
    let mut out = space.zeros();
    for j in 0..cells {
        let h_cell = out.cell_mut(j);
        for (q, &w) in basis.weights().iter().enumerate() {
            let g = w * volume(j, q);
            for (hi, s) in h_cell.iter_mut().zip(basis.slopes_at(q)) {
                *hi += g * s;
            }
        }
        let (f_in, f_out) = (interface_flux[j], interface_flux[j + 1]);
        for i in 0..h_cell.len() {
            h_cell[i] += f_in * left[i] - f_out * right[i];
        }
    }
    out
}

/// Traces read from the upwind side of every interface `0..=m` for a field.
/// `inflow` supplies interface 0 when the boundary is not periodic.
pub(crate) fn upwind_traces(space: &DgSpace, field: &CoeffField, inflow: Option<f64>) -> Vec<f64> {
    let cells = space.mesh.cells();
    let mut traces = Vec::with_capacity(cells + 1);
    let last = space.basis.eval_end(field.cell(cells - 1), Side::Right, 0);
    traces.push(inflow.unwrap_or(last));
    for j in 0..cells {
        traces.push(space.basis.eval_end(field.cell(j), Side::Right, 0));
    }
    traces
}

/// `H_j(u, phi_{j,i})` for every cell and mode at time `t`.
pub fn apply_h(u: &DgSolution, flux: &FluxModel, bc: &BoundaryModel, t: f64) -> Result<CoeffField> {
    let space = &*u.space;
    let basis = &space.basis;
    let cells = space.mesh.cells();
    let inflow = bc.inflow().map(|s| s.value(t));
    let upwind = upwind_traces(space, &u.coeffs, inflow);

    let mut fluxes = Vec::with_capacity(cells + 1);
    for j in 0..cells {
        let downwind = basis.eval_end(u.coeffs.cell(j), Side::Left, 0);
        fluxes.push(godunov_flux(upwind[j], downwind, flux)?);
    }
    fluxes.push(if bc.is_periodic() {
        fluxes[0]
    } else {
        godunov_flux(upwind[cells], upwind[cells], flux)?
    });

    Ok(assemble(space, &fluxes, |j, q| {
        flux.f(basis.eval_at_node(u.coeffs.cell(j), q))
    }))
}

/// Invert the diagonal mass matrix `(h / 2) I`.
pub fn mass_solve(rhs: &CoeffField, mesh: &Mesh) -> CoeffField {
    let mut out = rhs.clone();
    out.scale(2.0 / mesh.h());
    out
}

/// Multiply by the diagonal mass matrix `(h / 2) I`.
pub fn mass_multiply(field: &CoeffField, mesh: &Mesh) -> CoeffField {
    let mut out = field.clone();
    out.scale(mesh.h() / 2.0);
    out
}

/// Semi-discrete right-hand side `d/dt u_h = M^{-1} H(u_h)`.
pub fn semi_discrete_rhs(u: &DgSolution, flux: &FluxModel, bc: &BoundaryModel, t: f64) -> Result<CoeffField> {
    Ok(mass_solve(&apply_h(u, flux, bc, t)?, u.mesh()))
}
