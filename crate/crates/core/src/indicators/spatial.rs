use serde::{Deserialize, Serialize};

use crate::basis::Side;
use crate::boundary::BoundaryModel;
use crate::config::RunConfig;
use crate::error::{Error, Result};
use crate::field::DgSolution;
use crate::flux::FluxModel;
use crate::jet::{factorial, Jet2};

/// One-sided derivative traces at every cell's left interface, their jumps and
/// the jumps rescaled by `h^{p + 1 + mu - l (1 + alpha)}`.
///
/// Entries are stored cell-major: `[j * (p + 1) + l]`.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct SpatialIndicator {
    pub degree: usize,
    pub cells: usize,
    pub h: f64,
    pub t: f64,
    /// Exponents `p + 1 + mu - l (1 + alpha)` for `l = 0..=p`.
    pub exponents: Vec<f64>,
    /// `M^l_j`: trace from the right, read from cell `j`.
    pub right: Vec<f64>,
    /// `L^l_j`: trace from the left (cell `j - 1`, or boundary data at `j = 0`).
    pub left: Vec<f64>,
    /// `J = M - L`
    pub jumps: Vec<f64>,
    /// `D = J / h^{exponent}`
    pub scaled: Vec<f64>,
    /// `max_j |M^l_j|` per order.
    pub m_max: Vec<f64>,
    /// `max_j |J^l_j|` per order.
    pub j_max: Vec<f64>,
    /// `max_j |D^l_j|` per order.
    pub d_max: Vec<f64>,
    /// `max_{j, l} |D^l_j|`
    pub d_tilde: f64,
}

impl SpatialIndicator {
    fn idx(&self, j: usize, l: usize) -> usize {
        j * (self.degree + 1) + l
    }

    pub fn m(&self, j: usize, l: usize) -> f64 {
        self.right[self.idx(j, l)]
    }

    pub fn l(&self, j: usize, l: usize) -> f64 {
        self.left[self.idx(j, l)]
    }

    pub fn jump(&self, j: usize, l: usize) -> f64 {
        self.jumps[self.idx(j, l)]
    }

    pub fn d(&self, j: usize, l: usize) -> f64 {
        self.scaled[self.idx(j, l)]
    }

    /// `log_h |J^l_j|`; `+inf` for an exact zero jump.
    pub fn log_h_jump(&self, j: usize, l: usize) -> f64 {
        self.jump(j, l).abs().ln() / self.h.ln()
    }

    pub fn is_finite(&self) -> bool {
        self.right.iter().chain(&self.left).chain(&self.scaled).all(|v| v.is_finite())
    }

    /// Largest indicator component, used against the trust ceiling.
    pub fn largest_component(&self) -> f64 {
        self.m_max.iter().copied().fold(self.d_tilde, f64::max)
    }
}

/// Spatial derivatives `u_x^l(t, a)`, `l = 0..=max_order`, implied at the
/// inflow boundary by `u(t, a) = u_L(t)` and the conservation law.
pub fn boundary_derivatives(bc: &BoundaryModel, flux: &FluxModel, t: f64, max_order: usize) -> Result<Vec<f64>> {
    let signal = bc
        .inflow()
        .ok_or_else(|| Error::Config("boundary derivatives need an inflow boundary".into()))?;
    let g = signal.derivatives(t, max_order)?;
    let speed = flux.f_prime(g[0]);
    if !(speed > 0.0) {
        return Err(Error::SingularBoundary(speed));
    }
    let mut out = vec![g[0]];
    if max_order >= 1 {
        out.push(-g[1] / speed);
    }
    if max_order >= 2 {
        let curvature = flux.f_double_prime(g[0]);
        out.push(-(2.0 * curvature * g[1] * g[1] - speed * g[2]) / speed.powi(3));
    }
    if max_order >= 3 {
        let series = boundary_series(flux, &g)?;
        out.extend_from_slice(&series[3..]);
    }
    Ok(out)
}

/// All boundary derivatives from the bivariate Taylor recursion of
/// `u_t + f'(u) u_x = 0` around `(t, a)`, given `g = [u_L, u_L', ...]`.
pub(crate) fn boundary_series(flux: &FluxModel, g: &[f64]) -> Result<Vec<f64>> {
    let n = g.len() - 1;
    let mut u = Jet2::zeros(n);
    for (i, gi) in g.iter().enumerate() {
        u.set(i, 0, gi / factorial(i));
    }
    let outer = |u0: f64| -> Vec<f64> { (1..=n + 1).map(|m| flux.derivative(u0, m)).collect() };
    let speed = flux.f_prime(g[0]);
    if !(speed > 0.0) {
        return Err(Error::SingularBoundary(speed));
    }
    for l in 0..n {
        // wave speed as a series; its columns up to l only involve known columns of u
        let w = u.compose(&outer(g[0]));
        for i in 0..(n - l) {
            // coefficient of s^i y^l in u_t + w u_x = 0
            let mut acc = (i + 1) as f64 * u.get(i + 1, l);
            for i1 in 0..=i {
                for l1 in 0..=l {
                    if i1 == 0 && l1 == 0 {
                        continue;
                    }
                    let (i2, l2) = (i - i1, l - l1);
                    acc += w.get(i1, l1) * (l2 + 1) as f64 * u.get(i2, l2 + 1);
                }
            }
            u.set(i, l + 1, -acc / (speed * (l + 1) as f64));
        }
    }
    Ok((0..=n).map(|l| u.get(0, l) * factorial(l)).collect())
}

/// Compute `S^p_n` for the solution `u` at time `t`.
pub fn spatial_indicator(
    u: &DgSolution,
    cfg: &RunConfig,
    flux: &FluxModel,
    bc: &BoundaryModel,
    t: f64,
) -> Result<SpatialIndicator> {
    let p = u.degree();
    let cells = u.mesh().cells();
    let h = u.mesh().h();
    let modes = p + 1;
    let space = &u.space;
    let exponents: Vec<f64> = (0..=p)
        .map(|l| p as f64 + 1.0 + cfg.mu - l as f64 * (1.0 + cfg.alpha()))
        .collect();
    let scales: Vec<f64> = exponents.iter().map(|e| h.powf(*e)).collect();

    let inflow = match bc {
        BoundaryModel::Inflow(_) => Some(boundary_derivatives(bc, flux, t, p)?),
        BoundaryModel::Periodic => None,
    };

    let mut right = vec![0.0; cells * modes];
    let mut left = vec![0.0; cells * modes];
    for j in 0..cells {
        let prev = if j == 0 { cells - 1 } else { j - 1 };
        for l in 0..=p {
            right[j * modes + l] = space.end_value(u.coeffs.cell(j), Side::Left, l);
            left[j * modes + l] = match (&inflow, j) {
                (Some(b), 0) => b[l],
                _ => space.end_value(u.coeffs.cell(prev), Side::Right, l),
            };
        }
    }
    let jumps: Vec<f64> = right.iter().zip(&left).map(|(m, l)| m - l).collect();
    let scaled: Vec<f64> = jumps
        .iter()
        .enumerate()
        .map(|(idx, jump)| jump / scales[idx % modes])
        .collect();

    let per_order_max = |values: &[f64]| -> Vec<f64> {
        (0..modes)
            .map(|l| (0..cells).map(|j| values[j * modes + l].abs()).fold(0.0, f64::max))
            .collect()
    };
    let m_max = per_order_max(&right);
    let j_max = per_order_max(&jumps);
    let d_max = per_order_max(&scaled);
    let d_tilde = d_max.iter().copied().fold(0.0, f64::max);

    Ok(SpatialIndicator {
        degree: p,
        cells,
        h,
        t,
        exponents,
        right,
        left,
        jumps,
        scaled,
        m_max,
        j_max,
        d_max,
        d_tilde,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::boundary::InflowSignal;
    use crate::field::{project_l2, DgSpace};
    use crate::flux::FluxFunction;
    use crate::mesh::Mesh;
    use std::sync::Arc;

    fn burgers() -> FluxModel {
        FluxModel::new(FluxFunction::Burgers, 0.1, 3.0).unwrap()
    }

    #[test]
    fn global_polynomial_has_no_jumps() {
        let space = DgSpace::new(Mesh::new(0.0, 2.0, 16).unwrap(), 3).unwrap();
        let u = project_l2(|x| 1.0 + 0.2 * x - 0.1 * x * x + 0.03 * x * x * x, &space).unwrap();
        let cfg = RunConfig { h: space.mesh.h(), ..Default::default() };
        let s = spatial_indicator(&u, &cfg, &burgers(), &BoundaryModel::Periodic, 0.0).unwrap();
        for j in 1..16 {
            for l in 0..=3 {
                assert!(s.jump(j, l).abs() < 1e-9, "j={j} l={l} {}", s.jump(j, l));
            }
        }
    }

    #[test]
    fn two_cell_step() {
        let space = DgSpace::new(Mesh::new(0.0, 1.0, 2).unwrap(), 1).unwrap();
        let u = project_l2(|x| if x < 0.5 { 1.0 } else { 2.0 }, &space).unwrap();
        let cfg = RunConfig { p: 1, mu: 1.0, h: 0.5, ..Default::default() };
        assert_eq!(cfg.alpha(), 1.0);
        let s = spatial_indicator(&u, &cfg, &burgers(), &BoundaryModel::Periodic, 0.0).unwrap();
        assert!((s.jump(1, 0) - 1.0).abs() < 1e-14);
        assert!((s.d(1, 0) - 1.0 / 0.5f64.powi(3)).abs() < 1e-12);
        // periodic wrap: cell 0 sees cell 1 on its left
        assert!((s.jump(0, 0) + 1.0).abs() < 1e-14);
    }

    #[test]
    fn inflow_boundary_uses_signal() {
        let space = DgSpace::new(Mesh::new(0.0, 1.0, 4).unwrap(), 2).unwrap();
        let u = project_l2(|_| 1.0, &space).unwrap();
        let bc = BoundaryModel::Inflow(InflowSignal::Constant(1.25));
        let cfg = RunConfig { p: 2, h: 0.25, ..Default::default() };
        let s = spatial_indicator(&u, &cfg, &burgers(), &bc, 0.0).unwrap();
        assert_eq!(s.l(0, 0), 1.25);
        assert!((s.jump(0, 0) + 0.25).abs() < 1e-14);
        assert_eq!(s.l(0, 1), 0.0);
    }

    #[test]
    fn printed_boundary_formulas() {
        let burgers = burgers();
        let b = boundary_derivatives(&BoundaryModel::Inflow(InflowSignal::Constant(1.0)), &burgers, 0.0, 4).unwrap();
        assert_eq!(b, vec![1.0, 0.0, 0.0, 0.0, 0.0]);

        let linear = FluxModel::new(FluxFunction::Linear { speed: 1.0 }, -1.0, 1.0).unwrap();
        let bc = BoundaryModel::Inflow(InflowSignal::Linear { value: 0.0, slope: 1.0 });
        let b = boundary_derivatives(&bc, &linear, 0.5, 2).unwrap();
        assert_eq!(b, vec![0.5, -1.0, 0.0]);
    }

    #[test]
    fn recursion_agrees_with_printed_formulas() {
        let exp = FluxModel::new(FluxFunction::Exponential, -2.0, 2.0).unwrap();
        let signal = InflowSignal::Sine { mean: 0.3, amplitude: 0.4, omega: 1.7, phase: 0.2 };
        let bc = BoundaryModel::Inflow(signal.clone());
        let printed = boundary_derivatives(&bc, &exp, 0.8, 2).unwrap();
        let g = signal.derivatives(0.8, 5).unwrap();
        let series = boundary_series(&exp, &g).unwrap();
        for l in 0..=2 {
            assert!((printed[l] - series[l]).abs() < 1e-12 * printed[l].abs().max(1.0));
        }
    }

    #[test]
    fn periodic_has_no_boundary_derivatives() {
        assert!(boundary_derivatives(&BoundaryModel::Periodic, &burgers(), 0.0, 2).is_err());
    }

    #[test]
    fn missing_derivative_is_named() {
        let bc = BoundaryModel::Inflow(InflowSignal::Custom(vec![Arc::new(|_| 1.0), Arc::new(|_| 0.1)]));
        let err = boundary_derivatives(&bc, &burgers(), 0.0, 3).unwrap_err();
        assert!(matches!(err, Error::MissingBoundaryDerivative(2)));
    }
}
