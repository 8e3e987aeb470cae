//! Flux functions and the west-wind flux model.

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

/// Highest flux derivative tracked by [`FluxModel::derivative_bound`].
pub const MAX_FLUX_DERIVATIVE: usize = 12;

const SAMPLES: usize = 10_000;

/// Scalar flux `f(u)` with derivatives of every order.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "snake_case")]
pub enum FluxFunction {
    /// `f(u) = u^2 / 2`
    Burgers,
    /// `f(u) = speed * u`
    Linear { speed: f64 },
    /// `f(u) = exp(u)`, convex with `f' > 0` everywhere.
    Exponential,
}

impl FluxFunction {
    pub fn derivative(&self, u: f64, order: usize) -> f64 {
        match *self {
            FluxFunction::Burgers => match order {
                0 => 0.5 * u * u,
                1 => u,
                2 => 1.0,
                _ => 0.0,
            },
            FluxFunction::Linear { speed } => match order {
                0 => speed * u,
                1 => speed,
                _ => 0.0,
            },
            FluxFunction::Exponential => u.exp(),
        }
    }

    pub fn value(&self, u: f64) -> f64 {
        self.derivative(u, 0)
    }

    /// Scalar Godunov flux: `min f` over `[ul, ur]` when `ul <= ur`, else `max f`
    /// over `[ur, ul]`. Every variant is convex, so the extremes are explicit.
    pub fn godunov(&self, ul: f64, ur: f64) -> f64 {
        if ul <= ur {
            match *self {
                FluxFunction::Burgers => self.value(0.0f64.clamp(ul, ur)),
                FluxFunction::Linear { .. } => self.value(ul).min(self.value(ur)),
                FluxFunction::Exponential => self.value(ul),
            }
        } else {
            self.value(ul).max(self.value(ur))
        }
    }

    pub fn name(&self) -> String {
        match self {
            FluxFunction::Burgers => "burgers".into(),
            FluxFunction::Linear { speed } => format!("linear({speed})"),
            FluxFunction::Exponential => "exponential".into(),
        }
    }
}

/// A flux restricted to an admissible state interval on which `f' > 0`.
///
/// `beta` bounds the wave speed and `delta` bounds `|f''|` over the interval;
/// both are taken from a dense sample.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct FluxModel {
    function: FluxFunction,
    lo: f64,
    hi: f64,
    beta: f64,
    delta: f64,
    bounds: Vec<f64>,
}

impl FluxModel {
    pub fn new(function: FluxFunction, lo: f64, hi: f64) -> Result<Self> {
        if !(lo.is_finite() && hi.is_finite()) || hi < lo {
            return Err(Error::Config(format!("bad state range [{lo}, {hi}]")));
        }
        let mut bounds = vec![0.0f64; MAX_FLUX_DERIVATIVE + 1];
        let mut beta = f64::NEG_INFINITY;
        for s in 0..=SAMPLES {
            let w = lo + (hi - lo) * s as f64 / SAMPLES as f64;
            let speed = function.derivative(w, 1);
            if !(speed > 0.0) {
                return Err(Error::WestWindViolated { state: w, speed });
            }
            beta = beta.max(speed);
            for (order, b) in bounds.iter_mut().enumerate() {
                *b = b.max(function.derivative(w, order).abs());
            }
        }
        Ok(Self {
            function,
            lo,
            hi,
            beta,
            delta: bounds[2],
            bounds,
        })
    }

    pub fn function(&self) -> FluxFunction {
        self.function
    }

    pub fn f(&self, u: f64) -> f64 {
        self.function.value(u)
    }

    pub fn f_prime(&self, u: f64) -> f64 {
        self.function.derivative(u, 1)
    }

    pub fn f_double_prime(&self, u: f64) -> f64 {
        self.function.derivative(u, 2)
    }

    pub fn derivative(&self, u: f64, order: usize) -> f64 {
        self.function.derivative(u, order)
    }

    /// Maximum wave speed over the admissible range.
    pub fn beta(&self) -> f64 {
        self.beta
    }

    /// Bound on `|f''|` over the admissible range.
    pub fn delta(&self) -> f64 {
        self.delta
    }

    /// Bound on `|f^{(order)}|` over the admissible range.
    pub fn derivative_bound(&self, order: usize) -> f64 {
        self.bounds.get(order).copied().unwrap_or(f64::INFINITY)
    }

    pub fn range(&self) -> (f64, f64) {
        (self.lo, self.hi)
    }

    /// Amplitude bound `U` with `|u| <= U` on the admissible range.
    pub fn amplitude(&self) -> f64 {
        self.lo.abs().max(self.hi.abs())
    }

    pub fn check_state(&self, u: f64) -> Result<()> {
        if u >= self.lo && u <= self.hi {
            Ok(())
        } else {
            Err(Error::StateOutOfRange {
                value: u,
                lo: self.lo,
                hi: self.hi,
            })
        }
    }

    /// Godunov flux between two admissible states. Under west wind this is the
    /// upwind value `f(u_left)`.
    pub fn godunov_flux(&self, u_left: f64, u_right: f64) -> Result<f64> {
        self.check_state(u_left)?;
        self.check_state(u_right)?;
        let flux = self.function.godunov(u_left, u_right);
        debug_assert_eq!(flux, self.f(u_left), "Godunov flux is not upwind");
        Ok(flux)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    #[test]
    fn burgers_godunov_values() {
        let flux = FluxModel::new(FluxFunction::Burgers, 0.25, 1.75).unwrap();
        assert_eq!(flux.godunov_flux(1.0, 1.0).unwrap(), 0.5);
        assert!((flux.godunov_flux(0.8, 1.2).unwrap() - 0.32).abs() < 1e-15);
        assert_eq!(flux.godunov_flux(1.2, 0.8).unwrap(), flux.f(1.2));
        assert!(matches!(
            flux.godunov_flux(2.0, 1.0),
            Err(Error::StateOutOfRange { .. })
        ));
    }

    #[test]
    fn linear_flux_is_upwind() {
        let flux = FluxModel::new(FluxFunction::Linear { speed: 1.0 }, -5.0, 5.0).unwrap();
        for &(a, b) in &[(0.3, -2.0), (-1.0, 4.0), (2.0, 2.0)] {
            assert_eq!(flux.godunov_flux(a, b).unwrap(), a);
        }
    }

    #[test]
    fn general_godunov_handles_sonic_point() {
        // transonic rarefaction: min of u^2/2 over [-1, 2] is 0
        assert_eq!(FluxFunction::Burgers.godunov(-1.0, 2.0), 0.0);
        // shock: max of endpoint values
        assert_eq!(FluxFunction::Burgers.godunov(2.0, -3.0), 4.5);
    }

    #[test]
    fn west_wind_enforced_on_construction() {
        assert!(matches!(
            FluxModel::new(FluxFunction::Burgers, -0.5, 1.0),
            Err(Error::WestWindViolated { .. })
        ));
        assert!(FluxModel::new(FluxFunction::Linear { speed: -1.0 }, 0.0, 1.0).is_err());
    }

    #[test]
    fn bounds_cover_the_range() {
        let flux = FluxModel::new(FluxFunction::Burgers, 0.5, 1.25).unwrap();
        assert_eq!(flux.beta(), 1.25);
        assert_eq!(flux.delta(), 1.0);
        assert_eq!(flux.amplitude(), 1.25);
        assert_eq!(flux.derivative_bound(3), 0.0);
        let exp = FluxModel::new(FluxFunction::Exponential, -1.0, 1.0).unwrap();
        assert!((exp.derivative_bound(5) - 1f64.exp()).abs() < 1e-12);
    }

    proptest! {
        #[test]
        fn godunov_consistent_on_equal_states(w in 0.1f64..2.0) {
            let flux = FluxModel::new(FluxFunction::Burgers, 0.1, 2.0).unwrap();
            prop_assert_eq!(flux.godunov_flux(w, w).unwrap(), flux.f(w));
        }
    }
}
