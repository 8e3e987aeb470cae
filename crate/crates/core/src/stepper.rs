//! TVD (strong-stability-preserving) Runge-Kutta steps of order 1, 2 and 3,
//! and time-step selection under the standard and strengthened CFL conditions.

use serde::{Deserialize, Serialize};

use crate::boundary::BoundaryModel;
use crate::config::{CflMode, RunConfig};
use crate::error::{Error, Result};
use crate::field::{CoeffField, DgSolution};
use crate::flux::FluxModel;
use crate::mesh::Mesh;
use crate::operator::semi_discrete_rhs;

/// One convex stage `u_s = a u_n + b u_{s-1} + c tau L(u_{s-1}, t_n + theta tau)`.
#[derive(Debug, Clone, Copy)]
struct Stage {
    keep: f64,
    previous: f64,
    rate: f64,
    /// Stage abscissa as a fraction of `tau`, used for the inflow data.
    theta: f64,
}

const EULER: [Stage; 1] = [Stage { keep: 0.0, previous: 1.0, rate: 1.0, theta: 0.0 }];

const SSP2: [Stage; 2] = [
    Stage { keep: 0.0, previous: 1.0, rate: 1.0, theta: 0.0 },
    Stage { keep: 0.5, previous: 0.5, rate: 0.5, theta: 1.0 },
];

const SSP3: [Stage; 3] = [
    Stage { keep: 0.0, previous: 1.0, rate: 1.0, theta: 0.0 },
    Stage { keep: 3.0 / 4.0, previous: 1.0 / 4.0, rate: 1.0 / 4.0, theta: 1.0 },
    Stage { keep: 1.0 / 3.0, previous: 2.0 / 3.0, rate: 2.0 / 3.0, theta: 0.5 },
];

fn stages(order: usize) -> Result<&'static [Stage]> {
    match order {
        1 => Ok(&EULER),
        2 => Ok(&SSP2),
        3 => Ok(&SSP3),
        _ => Err(Error::Config(format!("RK order {order} is not 1, 2 or 3"))),
    }
}

/// Advance `u` by one TVD-RK step of the given order.
pub fn step_tvd_rk(
    u: &DgSolution,
    tau: f64,
    order: usize,
    flux: &FluxModel,
    bc: &BoundaryModel,
) -> Result<DgSolution> {
    if !(tau > 0.0) {
        return Err(Error::Config(format!("time step {tau} must be positive")));
    }
    let t = u.t;
    let mut current = u.clone();
    for (s, stage) in stages(order)?.iter().enumerate() {
        let rate = semi_discrete_rhs(&current, flux, bc, t + stage.theta * tau).map_err(|e| {
            if e.is_blow_up() {
                Error::BlowUp { stage: s + 1 }
            } else {
                e
            }
        })?;
        let mut next: CoeffField = current.coeffs.clone();
        next.scale(stage.previous);
        if stage.keep != 0.0 {
            next.axpy(stage.keep, &u.coeffs);
        }
        next.axpy(stage.rate * tau, &rate);
        if !next.is_finite() {
            return Err(Error::BlowUp { stage: s + 1 });
        }
        current = DgSolution::new(u.space.clone(), next, t + tau);
    }
    Ok(current)
}

/// Outcome of time-step selection.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct TauChoice {
    pub tau: f64,
    /// `beta tau > h`
    pub standard_cfl_violated: bool,
    /// `tau > gamma h^{1 + alpha}`
    pub strengthened_cfl_violated: bool,
    /// The step was shortened to land on the target time.
    pub clipped: bool,
}

impl TauChoice {
    pub fn warns(&self) -> bool {
        self.standard_cfl_violated || self.strengthened_cfl_violated
    }
}

const CFL_SLACK: f64 = 1e-12;

/// Time step for the step starting at `t_now` that must not pass `t_target`.
pub fn select_tau(cfg: &RunConfig, flux: &FluxModel, mesh: &Mesh, t_now: f64, t_target: f64) -> Result<TauChoice> {
    let h = mesh.h();
    let standard = h / flux.beta();
    let strengthened = cfg.gamma * h.powf(1.0 + cfg.alpha());
    let base = match cfg.cfl_mode {
        CflMode::Auto => standard.min(strengthened),
        CflMode::Fixed => match cfg.tau_fixed {
            Some(tau) if tau > 0.0 => tau,
            other => {
                return Err(Error::Config(format!("fixed time step {other:?} must be positive")))
            }
        },
    };
    let remaining = t_target - t_now;
    let (tau, clipped) = if remaining <= base * (1.0 + 1e-9) {
        (remaining, true)
    } else {
        (base, false)
    };
    Ok(TauChoice {
        tau,
        standard_cfl_violated: flux.beta() * tau > h * (1.0 + CFL_SLACK),
        strengthened_cfl_violated: tau > strengthened * (1.0 + CFL_SLACK),
        clipped,
    })
}
