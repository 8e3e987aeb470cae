use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum CflMode {
    /// Use `tau_fixed` on every step (clipped at output times).
    Fixed,
    /// `tau = min(h / beta, gamma h^{1 + alpha})`.
    Auto,
}

/// Discretization and estimator parameters of a run.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct RunConfig {
    /// Polynomial degree `p`.
    pub p: usize,
    /// TVD-RK order `k`.
    pub k: usize,
    /// Cell width.
    pub h: f64,
    /// Jump-order exponent `mu` in `[0, 1]`.
    pub mu: f64,
    /// Strengthened CFL constant.
    pub gamma: f64,
    pub tau_fixed: Option<f64>,
    pub t_final: f64,
    pub cfl_mode: CflMode,
    /// Safety factor on the `N^{p+1}` surrogate.
    pub kappa: f64,
    /// Indicator magnitude above which a step's estimate is flagged untrusted.
    pub ceiling: f64,
}

impl Default for RunConfig {
    fn default() -> Self {
        Self {
            p: 3,
            k: 3,
            h: 0.05,
            mu: 1.0,
            gamma: 0.3,
            tau_fixed: Some(0.005),
            t_final: 2.0,
            cfl_mode: CflMode::Fixed,
            kappa: 2.0,
            ceiling: 1e4,
        }
    }
}

impl RunConfig {
    /// `alpha = mu / p`; degree 0 has no strengthened condition and uses 0.
    pub fn alpha(&self) -> f64 {
        if self.p == 0 {
            0.0
        } else {
            self.mu / self.p as f64
        }
    }

    /// Exponent `p + 1 + mu - l (1 + alpha)` relating the jump `J^l` to `D^l`.
    pub fn jump_exponent(&self, order: usize) -> f64 {
        self.p as f64 + 1.0 + self.mu - order as f64 * (1.0 + self.alpha())
    }

    /// Upper limit from the strengthened CFL condition, `gamma h^{1 + alpha}`.
    pub fn strengthened_limit(&self) -> f64 {
        self.gamma * self.h.powf(1.0 + self.alpha())
    }

    pub fn validate(&self) -> Result<()> {
        if self.p > crate::basis::MAX_DEGREE {
            return Err(Error::Config(format!("p = {} is above {}", self.p, crate::basis::MAX_DEGREE)));
        }
        if !(1..=3).contains(&self.k) {
            return Err(Error::Config(format!("RK order k = {} must be 1, 2 or 3", self.k)));
        }
        if !(self.h > 0.0) {
            return Err(Error::Config(format!("h = {} must be positive", self.h)));
        }
        if !(0.0..=1.0).contains(&self.mu) {
            return Err(Error::Config(format!("mu = {} must lie in [0, 1]", self.mu)));
        }
        if !(self.gamma > 0.0) {
            return Err(Error::Config(format!("gamma = {} must be positive", self.gamma)));
        }
        if !(self.t_final >= 0.0) {
            return Err(Error::Config(format!("t_final = {} must be non-negative", self.t_final)));
        }
        if !(self.kappa > 0.0 && self.ceiling > 0.0) {
            return Err(Error::Config("kappa and ceiling must be positive".into()));
        }
        match (self.cfl_mode, self.tau_fixed) {
            (CflMode::Fixed, None) => Err(Error::Config("fixed CFL mode needs tau".into())),
            (_, Some(tau)) if !(tau > 0.0) => Err(Error::Config(format!("tau = {tau} must be positive"))),
            _ => Ok(()),
        }
    }
}
