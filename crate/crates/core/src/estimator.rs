//! A-posteriori L1 error bound assembled from the smoothness indicators.
//!
//! Each step contributes `tau h^{p+mu} F + tau^{k+1} G`; the entropy solution's
//! L1 contraction lets the local contributions add up without amplification.

use nalgebra::{DMatrix, SymmetricEigen};
use serde::{Deserialize, Serialize};

use crate::basis::{gauss_legendre, legendre_derivatives, Basis, Side, MAX_DEGREE};
use crate::config::RunConfig;
use crate::error::{Error, Result};
use crate::field::DgSolution;
use crate::flux::FluxModel;
use crate::indicators::{SpatialIndicator, TemporalIndicator};
use crate::jet::{compose, factorial};

/// Reference-cell constants used by the bound.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct EstimatorConstants {
    pub p: usize,
    pub k: usize,
    /// Projection error constant, L1 form.
    pub c1: f64,
    /// Projection error constant, L2 form.
    pub c2: f64,
    /// Projection error constant, L-infinity form.
    pub c3: f64,
    /// `||v_x||_{L2(cell)} <= C_inv / h ||v||_{L2(cell)}` on `P^p`.
    pub c_inv: f64,
    /// `|v(x_end)| <= C_tr h^{-1/2} ||v||_{L2(cell)}` on `P^p`.
    pub c_tr: f64,
    /// Runge-Kutta local remainder coefficient.
    pub c_rk: f64,
}

/// Leading coefficient of the Legendre polynomial `P_n`.
fn legendre_lead(n: usize) -> f64 {
    factorial(2 * n) / (2f64.powi(n as i32) * factorial(n).powi(2))
}

fn legendre(n: usize, xi: f64) -> f64 {
    legendre_derivatives(xi, n, 0)[0][n]
}

/// `||P_n||_{L1[-1, 1]}`, integrating exactly between consecutive roots.
fn legendre_l1(n: usize) -> f64 {
    if n == 0 {
        return 2.0;
    }
    let (roots, _) = gauss_legendre(n);
    let mut cuts = vec![-1.0];
    cuts.extend(roots);
    cuts.push(1.0);
    let (nodes, weights) = gauss_legendre(n / 2 + 2);
    cuts.windows(2)
        .map(|w| {
            let (mid, half) = ((w[0] + w[1]) / 2.0, (w[1] - w[0]) / 2.0);
            let s: f64 = nodes.iter().zip(&weights).map(|(x, wt)| wt * legendre(n, mid + half * x)).sum();
            (s * half).abs()
        })
        .sum()
}

/// Derive all reference-cell constants for degree `p` and RK order `k`.
///
/// The projection constants are attained by `x^{p+1}`, whose projection
/// error is the scaled Legendre mode `P_{p+1} / lead_{p+1}`.
pub fn derive_constants(p: usize, k: usize) -> Result<EstimatorConstants> {
    if p > MAX_DEGREE {
        return Err(Error::Config(format!("estimator constants are tabulated for p <= {MAX_DEGREE}")));
    }
    if !(1..=3).contains(&k) {
        return Err(Error::Config(format!("RK order k = {k} must be 1, 2 or 3")));
    }
    let n = p + 1;
    let base = 0.5f64.powi(n as i32) / (factorial(n) * legendre_lead(n));
    let c1 = base * 0.5 * legendre_l1(n);
    let c2 = base * 0.5f64.sqrt() * (2.0 / (2.0 * n as f64 + 1.0)).sqrt();
    let c3 = base;

    let basis = Basis::with_quadrature(p, p + 2)?;
    let modes = p + 1;
    let stiffness = DMatrix::from_fn(modes, modes, |a, b| {
        (0..basis.nodes().len())
            .map(|q| basis.weights()[q] * basis.slopes_at(q)[a] * basis.slopes_at(q)[b])
            .sum::<f64>()
    });
    let lambda = SymmetricEigen::new(stiffness).eigenvalues.max().max(0.0);
    let c_inv = 2.0 * lambda.sqrt();
    let trace_sq: f64 = basis.end_traces(Side::Right, 0).iter().map(|v| v * v).sum();
    let c_tr = (2.0 * trace_sq).sqrt();
    let c_rk = (1.0 + c_inv).powi(k as i32) / factorial(k + 1);
    Ok(EstimatorConstants { p, k, c1, c2, c3, c_inv, c_tr, c_rk })
}

/// Per-cell bound on `|d^s u / dx^s|` over the cell from the left-end traces.
fn cell_derivative_majorant(s: &SpatialIndicator, j: usize) -> Vec<f64> {
    let p = s.degree;
    (0..=p)
        .map(|order| {
            (order..=p)
                .map(|i| s.m(j, i).abs() * s.h.powi((i - order) as i32) / factorial(i - order))
                .sum()
        })
        .collect()
}

/// Surrogate for the rate `N^{p+1}` at which the `(p+1)`-th derivative of the
/// local strong solution grows from zero:
/// `kappa max_j sum_{r=2}^{p+1} C(p+1, r) B_r |u^{(p+2-r)}|`, where `B_r`
/// majorizes `|d^r/dx^r f'(u)|`.
pub fn n_p1_surrogate(s: &SpatialIndicator, flux: &FluxModel, kappa: f64) -> f64 {
    let p = s.degree;
    if p == 0 {
        return 0.0;
    }
    let outer: Vec<f64> = (0..=p + 1).map(|m| flux.derivative_bound(m + 1)).collect();
    let mut best: f64 = 0.0;
    for j in 0..s.cells {
        let maj = cell_derivative_majorant(s, j);
        let mut taylor = vec![0.0; p + 2];
        for (order, m) in maj.iter().enumerate().skip(1) {
            taylor[order] = m / factorial(order);
        }
        let speed = compose(&outer, &taylor);
        let mut sum = 0.0;
        for r in 2..=p + 1 {
            let b_r = speed[r] * factorial(r);
            let binom = factorial(p + 1) / (factorial(r) * factorial(p + 1 - r));
            sum += binom * b_r * maj[p + 2 - r];
        }
        best = best.max(sum);
    }
    kappa * best
}

/// The three parts of `F` and the inputs they were built from.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct SpatialTerms {
    pub transport: f64,
    pub projection: f64,
    pub gronwall: f64,
    pub n_p1: f64,
    pub total: f64,
}

/// `F(S)`: transport of the inter-cell jumps, projection of the local strong
/// solution and the Gronwall term for the projection-to-semi-discrete gap.
pub fn spatial_terms(
    s: &SpatialIndicator,
    consts: &EstimatorConstants,
    cfg: &RunConfig,
    flux: &FluxModel,
    domain_length: f64,
) -> SpatialTerms {
    let n_p1 = n_p1_surrogate(s, flux, cfg.kappa);
    let n_1 = cfg.kappa * s.m_max.get(1).copied().unwrap_or(0.0);
    spatial_terms_from(s.d_tilde, n_1, n_p1, s.h, consts, cfg, flux, domain_length)
}

/// `F` from scalar inputs; `n_1` bounds the first derivative of the local
/// strong solution.
#[allow(clippy::too_many_arguments)]
pub fn spatial_terms_from(
    d_tilde: f64,
    n_1: f64,
    n_p1: f64,
    h: f64,
    consts: &EstimatorConstants,
    cfg: &RunConfig,
    flux: &FluxModel,
    domain_length: f64,
) -> SpatialTerms {
    let beta = flux.beta();
    let gamma = cfg.gamma;
    let alpha = cfg.alpha();
    let root = domain_length.sqrt();
    let spread = d_tilde * (beta * gamma).exp();

    let transport = beta * spread * domain_length;
    let projection = consts.c1 * domain_length * n_p1 * h.powf(1.0 - cfg.mu);

    let tau_max = gamma * h.powf(1.0 + alpha);
    let c4 = beta * (consts.c_inv + 2.0 * consts.c_tr * consts.c_tr);
    let c5 = beta * spread * (1.0 + 2.0 * n_1 * flux.delta() * tau_max) * consts.c_tr * root;
    let c6 = beta * root * n_p1 * (2.0 * consts.c3 * consts.c_tr + consts.c2 * consts.c_inv);
    let x = c4 * gamma * h.powf(alpha);
    let growth = if x < 1e-12 { 1.0 } else { x.exp_m1() / x };
    let gronwall = root * growth * (c5 + c6 * gamma * h.powf(1.0 + alpha - cfg.mu));

    SpatialTerms {
        transport,
        projection,
        gronwall,
        n_p1,
        total: transport + projection + gronwall,
    }
}

pub fn spatial_f(
    s: &SpatialIndicator,
    consts: &EstimatorConstants,
    cfg: &RunConfig,
    flux: &FluxModel,
    domain_length: f64,
) -> f64 {
    spatial_terms(s, consts, cfg, flux, domain_length).total
}

/// Parts of `G` for order `k + 1`.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct TemporalTerms {
    pub c: f64,
    pub d: f64,
    /// Bound on `||d^{k+1}/dt^{k+1} u^h||_inf` over the whole step.
    pub step_bound: f64,
    pub total: f64,
}

/// Majorant of `d^l/dt^l f(z) - f'(z) z^{(l)}` from the sup norms of
/// `z', ..., z^{(l-1)}` (`sup_norms[i - 1]` for order `i`).
fn faa_di_bruno_remainder(sup_norms: &[f64], l: usize, flux: &FluxModel) -> f64 {
    if l < 2 {
        return 0.0;
    }
    let outer: Vec<f64> = (0..=l).map(|m| if m == 0 { 0.0 } else { flux.derivative_bound(m) }).collect();
    let mut taylor = vec![0.0; l + 1];
    for (i, t) in taylor.iter_mut().enumerate().take(l).skip(1) {
        *t = sup_norms[i - 1] / factorial(i);
    }
    compose(&outer, &taylor)[l] * factorial(l)
}

pub fn temporal_terms(
    t: &TemporalIndicator,
    consts: &EstimatorConstants,
    cfg: &RunConfig,
    flux: &FluxModel,
    h: f64,
    domain_length: f64,
) -> TemporalTerms {
    temporal_terms_from(&t.sup_norms, consts, cfg, flux, h, domain_length)
}

/// `G` from the sup norms of the first `k + 1` time derivatives.
pub fn temporal_terms_from(
    sup_norms: &[f64],
    consts: &EstimatorConstants,
    cfg: &RunConfig,
    flux: &FluxModel,
    h: f64,
    domain_length: f64,
) -> TemporalTerms {
    let l = consts.k + 1;
    let p = consts.p as f64;
    let beta = flux.beta();
    let a_tilde = (2.0 * p + 2.0) * beta * (1.0 + consts.c_inv + consts.c_tr * consts.c_tr);
    let b_tilde = (p + 1.0) * ((2.0 * p + 1.0) / 2.0).sqrt();
    let c_tilde = 2f64.sqrt();
    let c = c_tilde * b_tilde * a_tilde * cfg.gamma;
    let d = c_tilde * b_tilde * (a_tilde / beta) * cfg.gamma * faa_di_bruno_remainder(sup_norms, l, flux);
    let h_alpha = h.powf(cfg.alpha());
    let step_bound = (1.0 + c * h_alpha) * sup_norms[l - 1] + d * h_alpha;
    TemporalTerms {
        c,
        d,
        step_bound,
        total: consts.c_rk * step_bound * domain_length,
    }
}

pub fn temporal_g(
    t: &TemporalIndicator,
    consts: &EstimatorConstants,
    cfg: &RunConfig,
    flux: &FluxModel,
    h: f64,
    domain_length: f64,
) -> f64 {
    temporal_terms(t, consts, cfg, flux, h, domain_length).total
}

/// True when every indicator component is finite and below the ceiling.
pub fn indicators_trusted(s: &SpatialIndicator, t: &TemporalIndicator, ceiling: f64) -> bool {
    s.is_finite()
        && t.is_finite()
        && s.largest_component() <= ceiling
        && t.sup_norms.iter().all(|v| *v <= ceiling)
}

/// One row of the error budget.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct BudgetEntry {
    pub n: usize,
    pub t: f64,
    pub tau: f64,
    pub f: f64,
    pub g: f64,
    pub local_space: f64,
    pub local_time: f64,
    pub e_global: f64,
    pub trusted: bool,
}

/// Running global bound `E_0 + sum (tau h^{p+mu} F + tau^{k+1} G)`.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct ErrorBudget {
    pub e0: f64,
    pub e_global: f64,
    pub entries: Vec<BudgetEntry>,
}

impl ErrorBudget {
    pub fn new(e0: f64) -> Self {
        Self { e0, e_global: e0, entries: Vec::new() }
    }

    /// Add step `n` ending at `t`. A non-finite `F` or `G` makes the bound
    /// infinite from then on.
    #[allow(clippy::too_many_arguments)]
    pub fn accumulate(&mut self, t: f64, tau: f64, f: f64, g: f64, trusted: bool, cfg: &RunConfig, h: f64) -> &BudgetEntry {
        let local_space = tau * h.powf(cfg.p as f64 + cfg.mu) * f;
        let local_time = tau.powi(cfg.k as i32 + 1) * g;
        let finite = local_space.is_finite() && local_time.is_finite();
        self.e_global = if finite {
            self.e_global + local_space + local_time
        } else {
            f64::INFINITY
        };
        self.entries.push(BudgetEntry {
            n: self.entries.len() + 1,
            t,
            tau,
            f,
            g,
            local_space,
            local_time,
            e_global: self.e_global,
            trusted: trusted && finite,
        });
        self.entries.last().expect("just pushed")
    }

    pub fn all_trusted(&self) -> bool {
        self.entries.iter().all(|e| e.trusted)
    }

    pub fn steps(&self) -> usize {
        self.entries.len()
    }
}

/// `||g - u_0||_{L1}` by `4 (p + 2)`-point Gauss quadrature per cell.
pub fn initial_error<G: Fn(f64) -> f64>(u0: &DgSolution, g: G) -> f64 {
    l1_distance(u0, g)
}

/// `||g - u||_{L1}` with the same per-cell rule as the initial error.
pub fn l1_distance<G: Fn(f64) -> f64>(u: &DgSolution, g: G) -> f64 {
    let p = u.degree();
    let (nodes, weights) = gauss_legendre(4 * (p + 2));
    let mesh = u.mesh();
    let basis = u.basis();
    let mut total = 0.0;
    for j in 0..mesh.cells() {
        let c = u.coeffs.cell(j);
        let mut cell = 0.0;
        for (xi, w) in nodes.iter().zip(&weights) {
            let x = mesh.to_physical(j, *xi);
            cell += w * (g(x) - basis.eval_reference(c, *xi, 0)).abs();
        }
        total += cell * mesh.h() / 2.0;
    }
    total
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::boundary::BoundaryModel;
    use crate::field::{project_l2, DgSpace};
    use crate::flux::FluxFunction;
    use crate::indicators::spatial_indicator;
    use crate::mesh::Mesh;
    use rand::{Rng, SeedableRng};

    #[test]
    fn p1_projection_constant() {
        // x^2 - 1/3 is the projection error of x^2 onto linears on [-1, 1]
        let err = (8.0f64 / 45.0).sqrt();
        let c = derive_constants(1, 3).unwrap();
        // ||e||_{L2} = C2 h^{p+1} ||w''||_{L2}, with h = 2 and w'' = 2
        let oracle = err / (4.0 * (2.0 * 2f64.sqrt()));
        assert!((c.c2 - oracle).abs() < 1e-14, "{} {oracle}", c.c2);
    }

    #[test]
    fn degree_zero_constants() {
        let c = derive_constants(0, 1).unwrap();
        assert_eq!(c.c_inv, 0.0);
        assert!((c.c_tr - 1.0).abs() < 1e-14);
        // constant projection error of x on [-1, 1] is x itself: L1 = 1, h = 2, w' = 1
        assert!((c.c1 - 1.0 / 4.0).abs() < 1e-14);
    }

    #[test]
    fn inverse_constant_matches_p1_closed_form() {
        // on P^1, v' = sqrt(3/2) c_1 so ||v'||^2 = 3 c_1^2 and ||v|| = |c|
        let c = derive_constants(1, 1).unwrap();
        assert!((c.c_inv - 2.0 * 3f64.sqrt()).abs() < 1e-13);
        assert!((c.c_tr - 2.0).abs() < 1e-13);
    }

    #[test]
    fn constants_are_positive_and_embed() {
        for p in 1..=MAX_DEGREE {
            let c = derive_constants(p, 3).unwrap();
            for v in [c.c1, c.c2, c.c3, c.c_inv, c.c_tr, c.c_rk] {
                assert!(v.is_finite() && v > 0.0, "p={p}");
            }
            assert!(c.c1 <= c.c2 * 2f64.sqrt());
        }
        assert!(derive_constants(MAX_DEGREE + 1, 3).is_err());
    }

    #[test]
    fn p3_constants_match_sampled_maximum() {
        // brute force: project random quartics on the reference cell
        let c = derive_constants(3, 3).unwrap();
        let basis = Basis::with_quadrature(3, 12).unwrap();
        let (nodes, weights) = (basis.nodes().to_vec(), basis.weights().to_vec());
        let mut rng = rand::rngs::StdRng::seed_from_u64(3);
        let (mut worst1, mut worst2, mut worst3) = (0.0f64, 0.0f64, 0.0f64);
        for _ in 0..20_000 {
            let a: Vec<f64> = (0..5).map(|_| rng.gen_range(-1.0..1.0)).collect();
            let poly = |x: f64| a.iter().rev().fold(0.0, |acc, c| acc * x + c);
            let w4 = 24.0 * a[4];
            if w4.abs() < 1e-3 {
                continue;
            }
            let proj: Vec<f64> = (0..4)
                .map(|i| nodes.iter().enumerate().map(|(q, x)| weights[q] * poly(*x) * basis.values_at(q)[i]).sum())
                .collect();
            let err = |x: f64| poly(x) - basis.eval_reference(&proj, x, 0);
            let (fine, fw) = gauss_legendre(40);
            let l1: f64 = fine.iter().zip(&fw).map(|(x, w)| w * err(*x).abs()).sum();
            let l2: f64 = fine.iter().zip(&fw).map(|(x, w)| w * err(*x).powi(2)).sum::<f64>().sqrt();
            let linf = (0..=400).map(|i| err(-1.0 + i as f64 / 200.0).abs()).fold(0.0, f64::max);
            // reference cell h = 2: ||w^{(4)}||_{Lq} = |w4| 2^{1/q}
            worst1 = worst1.max(l1 / (16.0 * w4.abs() * 2.0));
            worst2 = worst2.max(l2 / (16.0 * w4.abs() * 2f64.sqrt()));
            worst3 = worst3.max(linf / (16.0 * w4.abs()));
        }
        assert!((worst1 / c.c1 - 1.0).abs() < 0.02, "{worst1} {}", c.c1);
        assert!((worst2 / c.c2 - 1.0).abs() < 0.02);
        assert!((worst3 / c.c3 - 1.0).abs() < 0.02);
    }

    fn burgers() -> FluxModel {
        FluxModel::new(FluxFunction::Burgers, 0.5, 1.25).unwrap()
    }

    #[test]
    fn exact_polynomial_data_gives_zero_f() {
        let space = DgSpace::new(Mesh::new(0.0, 10.0, 20).unwrap(), 0).unwrap();
        let u = project_l2(|_| 1.0, &space).unwrap();
        let cfg = RunConfig { p: 0, h: 0.5, ..Default::default() };
        let s = spatial_indicator(&u, &cfg, &burgers(), &BoundaryModel::Periodic, 0.0).unwrap();
        let c = derive_constants(0, 3).unwrap();
        assert_eq!(spatial_f(&s, &c, &cfg, &burgers(), 10.0), 0.0);
    }

    #[test]
    fn transport_term_arithmetic() {
        let gamma = 0.005 / 0.05f64.powf(4.0 / 3.0);
        let cfg = RunConfig { gamma, ..Default::default() };
        let c = derive_constants(3, 3).unwrap();
        let terms = spatial_terms_from(1.0, 0.0, 0.0, 0.05, &c, &cfg, &burgers(), 10.0);
        let oracle = 1.25 * 1.0 * (1.25f64 * gamma).exp() * 10.0;
        assert!((terms.transport - oracle).abs() < 1e-12);
        assert_eq!(terms.projection, 0.0);
        let doubled = spatial_terms_from(2.0, 0.0, 0.0, 0.05, &c, &cfg, &burgers(), 10.0);
        assert_eq!(doubled.transport, 2.0 * terms.transport);
    }

    #[test]
    fn f_and_g_are_monotone() {
        let cfg = RunConfig::default();
        let c = derive_constants(3, 3).unwrap();
        let flux = burgers();
        let mut rng = rand::rngs::StdRng::seed_from_u64(11);
        for _ in 0..500 {
            let (d, n1, np) = (rng.gen_range(0.0..5.0), rng.gen_range(0.0..5.0), rng.gen_range(0.0..5.0));
            let base = spatial_terms_from(d, n1, np, 0.05, &c, &cfg, &flux, 10.0).total;
            let bump = rng.gen_range(0.0..1.0);
            assert!(spatial_terms_from(d + bump, n1, np, 0.05, &c, &cfg, &flux, 10.0).total >= base);
            assert!(spatial_terms_from(d, n1 + bump, np, 0.05, &c, &cfg, &flux, 10.0).total >= base);
            assert!(spatial_terms_from(d, n1, np + bump, 0.05, &c, &cfg, &flux, 10.0).total >= base);

            let norms: Vec<f64> = (0..4).map(|_| rng.gen_range(0.0..3.0)).collect();
            let g = temporal_terms_from(&norms, &c, &cfg, &flux, 0.05, 10.0).total;
            for i in 0..4 {
                let mut up = norms.clone();
                up[i] += bump;
                assert!(temporal_terms_from(&up, &c, &cfg, &flux, 0.05, 10.0).total >= g);
            }
        }
    }

    #[test]
    fn constant_state_gives_zero_g() {
        let c = derive_constants(3, 3).unwrap();
        let g = temporal_terms_from(&[0.0; 4], &c, &RunConfig::default(), &burgers(), 0.05, 10.0);
        assert_eq!(g.total, 0.0);
    }

    #[test]
    fn remainder_matches_second_order_faa_di_bruno() {
        // d^2/dt^2 f(z) - f'(z) z'' = f''(z) z'^2; Burgers f'' = 1
        assert_eq!(faa_di_bruno_remainder(&[3.0, 100.0], 2, &burgers()), 9.0);
        // order 3: 3 f'' z' z'' + f''' z'^3, with f''' = 0
        assert_eq!(faa_di_bruno_remainder(&[2.0, 5.0, 100.0], 3, &burgers()), 30.0);
    }

    #[test]
    fn budget_accumulates() {
        let cfg = RunConfig { p: 1, mu: 1.0, k: 1, ..Default::default() };
        let mut b = ErrorBudget::new(1e-8);
        b.accumulate(0.1, 0.1, 0.0, 0.0, true, &cfg, 0.5);
        assert_eq!(b.e_global, 1e-8);
        // local_space = tau h^2 F, local_time = tau^2 G
        b.accumulate(0.2, 0.1, 1e-6 / (0.1 * 0.25), 0.0, true, &cfg, 0.5);
        b.accumulate(0.3, 0.1, 0.0, 2e-6 / 0.01, true, &cfg, 0.5);
        assert!((b.e_global - 3.01e-6).abs() < 1e-18);
        let mut last = 0.0;
        for e in &b.entries {
            assert!(e.e_global >= last);
            last = e.e_global;
        }
        b.accumulate(0.4, 0.1, f64::NAN, 0.0, true, &cfg, 0.5);
        assert!(b.e_global.is_infinite() && !b.all_trusted());
    }

    #[test]
    fn local_space_scales_with_h() {
        let cfg = RunConfig::default();
        let hs = [0.1, 0.05, 0.025];
        let vals: Vec<f64> = hs
            .iter()
            .map(|h| {
                let mut b = ErrorBudget::new(0.0);
                b.accumulate(0.01, 0.01, 1.0, 0.0, true, &cfg, *h);
                b.entries[0].local_space
            })
            .collect();
        for i in 0..2 {
            let slope = (vals[i] / vals[i + 1]).ln() / (hs[i] / hs[i + 1]).ln();
            assert!((slope - 4.0).abs() < 0.01);
        }
    }

    #[test]
    fn initial_error_examples() {
        let space = DgSpace::new(Mesh::new(0.0, 10.0, 20).unwrap(), 2).unwrap();
        let poly = |x: f64| 0.3 + 0.1 * x - 0.01 * x * x;
        let u = project_l2(poly, &space).unwrap();
        assert!(initial_error(&u, poly) < 1e-12);

        let coarse = DgSpace::new(Mesh::new(0.0, 10.0, 5).unwrap(), 1).unwrap();
        let u = project_l2(f64::sin, &coarse).unwrap();
        let e0 = initial_error(&u, f64::sin);
        let (nodes, weights) = gauss_legendre(40);
        let mut refined = 0.0;
        for j in 0..5 {
            for sub in 0..10 {
                let (a, b) = (2.0 * j as f64 + 0.2 * sub as f64, 2.0 * j as f64 + 0.2 * (sub + 1) as f64);
                for (x, w) in nodes.iter().zip(&weights) {
                    let xp = (a + b) / 2.0 + (b - a) / 2.0 * x;
                    refined += w * (b - a) / 2.0 * (xp.sin() - u.eval(xp, 0).unwrap()).abs();
                }
            }
        }
        assert!((e0 / refined - 1.0).abs() < 0.01, "{e0} {refined}");

        let space = DgSpace::new(Mesh::with_width(0.0, 10.0, 0.05).unwrap(), 4).unwrap();
        let g = |x: f64| 0.5 + 0.25 * (std::f64::consts::PI * x / 5.0).sin();
        let u = project_l2(g, &space).unwrap();
        assert!(initial_error(&u, g) <= 1e-9 * 10.0);
    }
}
