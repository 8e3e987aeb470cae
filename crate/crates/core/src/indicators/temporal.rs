use crate::basis::Side;
use crate::boundary::BoundaryModel;
use crate::error::{Error, Result};
use crate::field::{CoeffField, DgSolution, DgSpace};
use crate::flux::FluxModel;
use crate::jet::flux_time_derivative;
use crate::operator::{assemble, mass_solve, semi_discrete_rhs, upwind_traces};

/// Deepest time derivative the temporal indicator computes (`u_tttt`).
pub const MAX_TIME_DERIVATIVE: usize = 4;

/// Time derivatives `d^l/dt^l u^h(t_n)`, `l = 1..=k+1`, of the semi-discrete
/// solution restarted from the computed state.
#[derive(Debug, Clone)]
pub struct TemporalIndicator {
    pub t: f64,
    /// `fields[l - 1]` holds the coefficients of the `l`-th derivative.
    pub fields: Vec<CoeffField>,
    /// Sampled L-infinity norms, `sup_norms[l - 1]` for order `l`.
    pub sup_norms: Vec<f64>,
}

impl TemporalIndicator {
    pub fn highest_order(&self) -> usize {
        self.fields.len()
    }

    pub fn field(&self, order: usize) -> &CoeffField {
        &self.fields[order - 1]
    }

    pub fn sup_norm(&self, order: usize) -> f64 {
        self.sup_norms[order - 1]
    }

    pub fn is_finite(&self) -> bool {
        self.sup_norms.iter().all(|v| v.is_finite())
    }
}

/// Right-hand side of the weak form for `d^{n+1}/dt^{n+1} u^h`, obtained by
/// differentiating the semi-discrete scheme `n` times. `derivs[i]` is the
/// `i`-th time derivative field (`derivs[0] = u`).
pub fn differentiated_operator(
    space: &DgSpace,
    derivs: &[&CoeffField],
    flux: &FluxModel,
    bc: &BoundaryModel,
    t: f64,
) -> Result<CoeffField> {
    let n = derivs.len() - 1;
    let cells = space.mesh.cells();
    let basis = &space.basis;
    let f = flux.function();

    let inflow = match bc {
        BoundaryModel::Inflow(signal) => Some(signal.derivatives(t, n)?),
        BoundaryModel::Periodic => None,
    };
    let traces: Vec<Vec<f64>> = derivs
        .iter()
        .enumerate()
        .map(|(i, field)| upwind_traces(space, field, inflow.as_ref().map(|g| g[i])))
        .collect();
    // Godunov flux reduces to the upwind state under west wind, so the interface
    // flux derivative is the derivative of f at the upwind trace.
    let mut fluxes = Vec::with_capacity(cells + 1);
    let mut z = vec![0.0; n + 1];
    for idx in 0..=cells {
        for (zi, tr) in z.iter_mut().zip(&traces) {
            *zi = tr[idx];
        }
        fluxes.push(flux_time_derivative(f, &z));
    }
    if bc.is_periodic() {
        fluxes[cells] = fluxes[0];
    }
    Ok(assemble(space, &fluxes, |j, q| {
        let z: Vec<f64> = derivs.iter().map(|d| basis.eval_at_node(d.cell(j), q)).collect();
        flux_time_derivative(f, &z)
    }))
}

/// Compute `T^k_n`: the first `k + 1` time derivatives of `u^h` at `t`.
pub fn temporal_indicator(
    u: &DgSolution,
    k: usize,
    flux: &FluxModel,
    bc: &BoundaryModel,
    t: f64,
) -> Result<TemporalIndicator> {
    let depth = k + 1;
    if depth > MAX_TIME_DERIVATIVE || k == 0 {
        return Err(Error::DerivativeDepth {
            requested: depth,
            max: MAX_TIME_DERIVATIVE,
        });
    }
    let space = &*u.space;
    let mut fields = vec![semi_discrete_rhs(u, flux, bc, t)?];
    for n in 1..depth {
        let derivs: Vec<&CoeffField> = std::iter::once(&u.coeffs).chain(fields.iter()).collect();
        let rhs = differentiated_operator(space, &derivs, flux, bc, t)?;
        debug_assert_eq!(derivs.len(), n + 1);
        fields.push(mass_solve(&rhs, &space.mesh));
    }
    let sup_norms = fields.iter().map(|f| space.sampled_sup_norm(f)).collect();
    Ok(TemporalIndicator { t, fields, sup_norms })
}

/// Values of a derivative field at the sample points used for the sup norm:
/// left trace, quadrature nodes, right trace, per cell.
pub fn sample_points(space: &DgSpace, field: &CoeffField, j: usize) -> Vec<f64> {
    let basis = &space.basis;
    let c = field.cell(j);
    let mut out = Vec::with_capacity(basis.nodes().len() + 2);
    out.push(basis.eval_end(c, Side::Left, 0));
    out.extend((0..basis.nodes().len()).map(|q| basis.eval_at_node(c, q)));
    out.push(basis.eval_end(c, Side::Right, 0));
    out
}
