//! Boundary models: inflow Dirichlet data at `x = a`, or periodic wrap-around.

use std::fmt;
use std::sync::Arc;

use crate::error::{Error, Result};

pub type SignalFn = Arc<dyn Fn(f64) -> f64 + Send + Sync>;

/// Inflow boundary value `u_L(t)` together with its time derivatives.
#[derive(Clone)]
pub enum InflowSignal {
    Constant(f64),
    /// `value + slope * t`
    Linear { value: f64, slope: f64 },
    /// `mean + amplitude * sin(omega * t + phase)`
    Sine {
        mean: f64,
        amplitude: f64,
        omega: f64,
        phase: f64,
    },
    /// Caller-supplied `[u_L, u_L', u_L'', ...]`; orders beyond the list are unavailable.
    Custom(Vec<SignalFn>),
}

impl InflowSignal {
    pub fn value(&self, t: f64) -> f64 {
        self.derivative(t, 0).unwrap_or(f64::NAN)
    }

    /// `d^order/dt^order u_L(t)`, or `None` when the signal does not provide it.
    pub fn derivative(&self, t: f64, order: usize) -> Option<f64> {
        match self {
            InflowSignal::Constant(c) => Some(if order == 0 { *c } else { 0.0 }),
            InflowSignal::Linear { value, slope } => Some(match order {
                0 => value + slope * t,
                1 => *slope,
                _ => 0.0,
            }),
            InflowSignal::Sine {
                mean,
                amplitude,
                omega,
                phase,
            } => {
                let arg = omega * t + phase + order as f64 * std::f64::consts::FRAC_PI_2;
                let d = amplitude * omega.powi(order as i32) * arg.sin();
                Some(if order == 0 { mean + d } else { d })
            }
            InflowSignal::Custom(fs) => fs.get(order).map(|f| f(t)),
        }
    }

    /// `[u_L(t), ..., d^n/dt^n u_L(t)]`
    pub fn derivatives(&self, t: f64, n: usize) -> Result<Vec<f64>> {
        (0..=n)
            .map(|order| {
                self.derivative(t, order)
                    .ok_or(Error::MissingBoundaryDerivative(order))
            })
            .collect()
    }
}

impl fmt::Debug for InflowSignal {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            InflowSignal::Constant(c) => write!(f, "Constant({c})"),
            InflowSignal::Linear { value, slope } => write!(f, "Linear({value} + {slope} t)"),
            InflowSignal::Sine {
                mean,
                amplitude,
                omega,
                phase,
            } => write!(f, "Sine({mean} + {amplitude} sin({omega} t + {phase}))"),
            InflowSignal::Custom(fs) => write!(f, "Custom({} derivatives)", fs.len()),
        }
    }
}

#[derive(Debug, Clone)]
pub enum BoundaryModel {
    Inflow(InflowSignal),
    /// Interface `m` is identified with interface 0.
    Periodic,
}

impl BoundaryModel {
    pub fn is_periodic(&self) -> bool {
        matches!(self, BoundaryModel::Periodic)
    }

    pub fn inflow(&self) -> Option<&InflowSignal> {
        match self {
            BoundaryModel::Inflow(s) => Some(s),
            BoundaryModel::Periodic => None,
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn sine_derivatives_rotate() {
        let s = InflowSignal::Sine {
            mean: 1.0,
            amplitude: 0.5,
            omega: 2.0,
            phase: 0.0,
        };
        let t = 0.3f64;
        assert!((s.value(t) - (1.0 + 0.5 * (0.6f64).sin())).abs() < 1e-15);
        assert!((s.derivative(t, 1).unwrap() - (0.6f64).cos()).abs() < 1e-15);
        assert!((s.derivative(t, 2).unwrap() + 2.0 * (0.6f64).sin()).abs() < 1e-14);
        assert!((s.derivative(t, 3).unwrap() + 4.0 * (0.6f64).cos()).abs() < 1e-14);
    }

    #[test]
    fn custom_signal_reports_missing_order() {
        let s = InflowSignal::Custom(vec![Arc::new(|t| t), Arc::new(|_| 1.0)]);
        assert_eq!(s.derivatives(2.0, 1).unwrap(), vec![2.0, 1.0]);
        assert!(matches!(
            s.derivatives(2.0, 2),
            Err(Error::MissingBoundaryDerivative(2))
        ));
    }
}
