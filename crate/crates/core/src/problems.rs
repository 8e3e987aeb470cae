//! Test problems: the two Burgers examples and a few manufactured cases.

use std::fmt;
use std::sync::Arc;

use crate::boundary::{BoundaryModel, InflowSignal};
use crate::error::{Error, Result};
use crate::flux::{FluxFunction, FluxModel};

type ScalarFn = Arc<dyn Fn(f64) -> f64 + Send + Sync>;

/// Initial datum `u_I` with its first derivative.
#[derive(Clone)]
pub enum InitialDatum {
    Constant(f64),
    /// `1 - (x / 11)^3 sin x`
    CubicSine,
    /// `mean + amplitude * sin(wavenumber * x)`
    Sine { mean: f64, amplitude: f64, wavenumber: f64 },
    Custom { value: ScalarFn, slope: ScalarFn },
}

impl InitialDatum {
    pub fn value(&self, x: f64) -> f64 {
        match self {
            InitialDatum::Constant(c) => *c,
            InitialDatum::CubicSine => 1.0 - (x / 11.0).powi(3) * x.sin(),
            InitialDatum::Sine { mean, amplitude, wavenumber } => mean + amplitude * (wavenumber * x).sin(),
            InitialDatum::Custom { value, .. } => value(x),
        }
    }

    pub fn slope(&self, x: f64) -> f64 {
        match self {
            InitialDatum::Constant(_) => 0.0,
            InitialDatum::CubicSine => {
                let r = x / 11.0;
                -(3.0 * r * r / 11.0 * x.sin() + r.powi(3) * x.cos())
            }
            InitialDatum::Sine { amplitude, wavenumber, .. } => amplitude * wavenumber * (wavenumber * x).cos(),
            InitialDatum::Custom { slope, .. } => slope(x),
        }
    }
}

impl fmt::Debug for InitialDatum {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            InitialDatum::Constant(c) => write!(f, "Constant({c})"),
            InitialDatum::CubicSine => write!(f, "1 - (x/11)^3 sin x"),
            InitialDatum::Sine { mean, amplitude, wavenumber } => {
                write!(f, "{mean} + {amplitude} sin({wavenumber} x)")
            }
            InitialDatum::Custom { .. } => write!(f, "Custom"),
        }
    }
}

/// A complete initial-boundary value problem.
#[derive(Debug, Clone)]
pub struct ProblemSpec {
    pub name: String,
    pub flux: FluxModel,
    pub domain: (f64, f64),
    pub initial: InitialDatum,
    pub boundary: BoundaryModel,
    pub t_final: f64,
    pub shock_time_estimate: Option<f64>,
}

pub const PROBLEM_NAMES: [&str; 4] = ["example1", "example2", "linear", "inflow_wave"];

const RANGE_SAMPLES: usize = 10_000;

/// State range seen in the data over `[0, t_final]`, widened by a quarter of its
/// width plus 0.05 on each side. The west-wind check runs on this range.
fn admissible_range(initial: &InitialDatum, domain: (f64, f64), boundary: &BoundaryModel, t_final: f64) -> (f64, f64) {
    let (mut lo, mut hi) = (f64::INFINITY, f64::NEG_INFINITY);
    for s in 0..=RANGE_SAMPLES {
        let frac = s as f64 / RANGE_SAMPLES as f64;
        let v = initial.value(domain.0 + (domain.1 - domain.0) * frac);
        lo = lo.min(v);
        hi = hi.max(v);
        if let Some(signal) = boundary.inflow() {
            let v = signal.value(t_final * frac);
            lo = lo.min(v);
            hi = hi.max(v);
        }
    }
    let pad = 0.25 * (hi - lo) + 0.05;
    (lo - pad, hi + pad)
}

impl ProblemSpec {
    /// Build a problem and its flux model on the padded data range.
    pub fn new(
        name: &str,
        flux: FluxFunction,
        domain: (f64, f64),
        initial: InitialDatum,
        boundary: BoundaryModel,
        t_final: f64,
    ) -> Result<Self> {
        let (lo, hi) = admissible_range(&initial, domain, &boundary, t_final);
        let flux = FluxModel::new(flux, lo, hi)?;
        let mut problem = Self {
            name: name.to_string(),
            flux,
            domain,
            initial,
            boundary,
            t_final,
            shock_time_estimate: None,
        };
        let t_star = crate::oracle::crossing_time(&problem);
        problem.shock_time_estimate = t_star.is_finite().then_some(t_star);
        Ok(problem)
    }

    /// Burgers on `[0, 10]`, `u_I = 1 - (x/11)^3 sin x`, `u_L = 1`, `T = 2`.
    pub fn example1() -> Self {
        Self::new(
            "example1",
            FluxFunction::Burgers,
            (0.0, 10.0),
            InitialDatum::CubicSine,
            BoundaryModel::Inflow(InflowSignal::Constant(1.0)),
            2.0,
        )
        .expect("example 1 is well posed")
    }

    /// Periodic Burgers on `[0, 10]`, `u_I = 1/2 + 1/4 sin(pi x / 5)`, `T = 1`.
    pub fn example2() -> Self {
        Self::new(
            "example2",
            FluxFunction::Burgers,
            (0.0, 10.0),
            InitialDatum::Sine { mean: 0.5, amplitude: 0.25, wavenumber: std::f64::consts::PI / 5.0 },
            BoundaryModel::Periodic,
            1.0,
        )
        .expect("example 2 is well posed")
    }

    /// Periodic linear advection `u_t + u_x = 0` of the example-2 datum.
    pub fn linear_advection() -> Self {
        Self::new(
            "linear",
            FluxFunction::Linear { speed: 1.0 },
            (0.0, 10.0),
            InitialDatum::Sine { mean: 0.5, amplitude: 0.25, wavenumber: std::f64::consts::PI / 5.0 },
            BoundaryModel::Periodic,
            1.0,
        )
        .expect("linear advection is well posed")
    }

    /// Burgers from rest state 1 driven by `u_L(t) = 1 + 0.1 sin(2 t)`.
    pub fn inflow_wave() -> Self {
        Self::new(
            "inflow_wave",
            FluxFunction::Burgers,
            (0.0, 10.0),
            InitialDatum::Constant(1.0),
            BoundaryModel::Inflow(InflowSignal::Sine { mean: 1.0, amplitude: 0.1, omega: 2.0, phase: 0.0 }),
            1.0,
        )
        .expect("inflow wave is well posed")
    }

    pub fn by_name(name: &str) -> Result<Self> {
        match name {
            "example1" => Ok(Self::example1()),
            "example2" => Ok(Self::example2()),
            "linear" => Ok(Self::linear_advection()),
            "inflow_wave" => Ok(Self::inflow_wave()),
            other => Err(Error::Config(format!(
                "unknown problem '{other}' (expected one of {})",
                PROBLEM_NAMES.join(", ")
            ))),
        }
    }

    pub fn length(&self) -> f64 {
        self.domain.1 - self.domain.0
    }

    pub fn initial_value(&self, x: f64) -> f64 {
        self.initial.value(x)
    }

    /// Same problem with a different final time.
    pub fn with_t_final(mut self, t_final: f64) -> Self {
        self.t_final = t_final;
        self
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn example_data() {
        let p = ProblemSpec::example1();
        assert_eq!(p.initial_value(0.0), 1.0);
        assert!((p.initial_value(10.0) - (1.0 - (10.0f64 / 11.0).powi(3) * 10f64.sin())).abs() < 1e-15);
        assert_eq!(p.boundary.inflow().unwrap().value(3.0), 1.0);
        let (lo, hi) = p.flux.range();
        assert!(lo > 0.0 && hi > 1.41);

        let p = ProblemSpec::example2();
        assert!(p.boundary.is_periodic());
        assert!((p.initial_value(2.5) - 0.75).abs() < 1e-15);
    }

    #[test]
    fn slopes_match_finite_differences() {
        let data = [
            InitialDatum::CubicSine,
            InitialDatum::Sine { mean: 0.5, amplitude: 0.25, wavenumber: 0.6 },
            InitialDatum::Constant(2.0),
        ];
        for d in &data {
            for &x in &[0.3, 2.0, 7.7] {
                let fd = (d.value(x + 1e-6) - d.value(x - 1e-6)) / 2e-6;
                assert!((fd - d.slope(x)).abs() < 1e-8, "{d:?} {x}");
            }
        }
    }

    #[test]
    fn unknown_problem_is_rejected() {
        assert!(ProblemSpec::by_name("example3").is_err());
        for name in PROBLEM_NAMES {
            assert_eq!(ProblemSpec::by_name(name).unwrap().name, name);
        }
    }
}
