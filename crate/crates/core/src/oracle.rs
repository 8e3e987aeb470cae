//! Exact pre-shock solutions by the method of characteristics.

use crate::boundary::BoundaryModel;
use crate::error::{Error, Result};
use crate::problems::ProblemSpec;

const CROSSING_SAMPLES: usize = 10_000;

/// First time two characteristics meet, estimated on a sample of feet.
///
/// Initial characteristics cross at `-1 / min (f''(u_I) u_I')`. Boundary
/// characteristics launched at `s` cross at `s + f'(u_L) / (f''(u_L) u_L')`.
/// Inflow data that do not match `u_I(a)` at `t = 0` give `0`: the oracle
/// does not model the resulting shock or fan.
pub fn crossing_time(problem: &ProblemSpec) -> f64 {
    let flux = &problem.flux;
    let (a, b) = problem.domain;
    let mut t_star = f64::INFINITY;
    let mut steepest = 0.0f64;
    for s in 0..=CROSSING_SAMPLES {
        let x = a + (b - a) * s as f64 / CROSSING_SAMPLES as f64;
        let rate = flux.f_double_prime(problem.initial.value(x)) * problem.initial.slope(x);
        steepest = steepest.min(rate);
    }
    if steepest < 0.0 {
        t_star = -1.0 / steepest;
    }
    if let BoundaryModel::Inflow(signal) = &problem.boundary {
        if (signal.value(0.0) - problem.initial.value(a)).abs() > 1e-12 {
            return 0.0;
        }
        let horizon = 2.0 * problem.t_final.max(1.0);
        for i in 0..=CROSSING_SAMPLES {
            let s = horizon * i as f64 / CROSSING_SAMPLES as f64;
            let (Some(g), Some(dg)) = (signal.derivative(s, 0), signal.derivative(s, 1)) else {
                continue;
            };
            let rate = flux.f_double_prime(g) * dg;
            if rate > 0.0 {
                t_star = t_star.min(s + flux.f_prime(g) / rate);
            }
        }
    }
    t_star
}

/// Characteristic solver for a problem, valid before `t*`.
#[derive(Debug, Clone)]
pub struct ExactOracle {
    pub problem: ProblemSpec,
    pub newton_tol: f64,
    pub max_iter: usize,
    t_star: f64,
    speed_range: (f64, f64),
}

/// Root of an increasing function on `[lo, hi]` with `fun(lo) <= 0 <= fun(hi)`;
/// Newton steps that leave the bracket fall back to bisection.
fn solve_increasing<F>(fun: F, mut lo: f64, mut hi: f64, tol: f64, max_iter: usize) -> Option<f64>
where
    F: Fn(f64) -> (f64, f64),
{
    let mut y = 0.5 * (lo + hi);
    for _ in 0..max_iter {
        let (g, dg) = fun(y);
        if g.abs() <= tol {
            return Some(y);
        }
        if g < 0.0 {
            lo = y;
        } else {
            hi = y;
        }
        let newton = y - g / dg;
        y = if dg > 0.0 && newton > lo && newton < hi {
            newton
        } else {
            0.5 * (lo + hi)
        };
        if hi - lo <= f64::EPSILON * y.abs().max(1.0) {
            let (g, _) = fun(y);
            return (g.abs() <= 1e3 * tol).then_some(y);
        }
    }
    None
}

impl ExactOracle {
    pub fn new(problem: ProblemSpec) -> Self {
        let t_star = crossing_time(&problem);
        let (a, b) = problem.domain;
        let (mut lo, mut hi) = (f64::INFINITY, f64::NEG_INFINITY);
        for s in 0..=CROSSING_SAMPLES {
            let x = a + (b - a) * s as f64 / CROSSING_SAMPLES as f64;
            let v = problem.flux.f_prime(problem.initial.value(x));
            lo = lo.min(v);
            hi = hi.max(v);
        }
        Self {
            problem,
            newton_tol: 1e-13,
            max_iter: 100,
            t_star,
            speed_range: (lo, hi),
        }
    }

    pub fn crossing_time(&self) -> f64 {
        self.t_star
    }

    /// Error unless `t` lies strictly before the crossing time.
    pub fn check_time(&self, t: f64) -> Result<()> {
        if t < self.t_star || (t == 0.0 && self.t_star > 0.0) {
            Ok(())
        } else {
            Err(Error::OracleInvalid { t_star: self.t_star })
        }
    }

    fn initial_periodic(&self, y: f64) -> (f64, f64) {
        let (a, b) = self.problem.domain;
        let len = b - a;
        let wrapped = a + (y - a).rem_euclid(len);
        (self.problem.initial.value(wrapped), self.problem.initial.slope(wrapped))
    }

    /// `u(t, x)`.
    pub fn exact_solution(&self, t: f64, x: f64) -> Result<f64> {
        self.check_time(t)?;
        let (a, b) = self.problem.domain;
        let flux = &self.problem.flux;
        let periodic = self.problem.boundary.is_periodic();
        if !periodic && !(x >= a && x <= b) {
            return Err(Error::OutOfDomain { x, a, b });
        }
        if t == 0.0 {
            return Ok(if periodic { self.initial_periodic(x).0 } else { self.problem.initial.value(x) });
        }
        let tol = self.newton_tol * (1.0 + x.abs());
        let no_convergence = || Error::OracleNoConvergence { t, x };

        if periodic {
            let (smin, smax) = self.speed_range;
            let pad = 1e-6 * (smax - smin).abs() + 1e-9;
            let fun = |y: f64| {
                let (u, du) = self.initial_periodic(y);
                (y + t * flux.f_prime(u) - x, 1.0 + t * flux.f_double_prime(u) * du)
            };
            let foot = solve_increasing(fun, x - t * (smax + pad), x - t * (smin - pad), tol, self.max_iter)
                .ok_or_else(no_convergence)?;
            return Ok(self.initial_periodic(foot).0);
        }

        let initial = &self.problem.initial;
        if x >= a + t * flux.f_prime(initial.value(a)) {
            let fun = |y: f64| {
                let u = initial.value(y);
                (y + t * flux.f_prime(u) - x, 1.0 + t * flux.f_double_prime(u) * initial.slope(y))
            };
            let foot = solve_increasing(fun, a, x, tol, self.max_iter).ok_or_else(no_convergence)?;
            Ok(initial.value(foot))
        } else {
            self.boundary_family(t, x, t)
        }
    }

    /// Value carried by the boundary characteristic through `(t, x)`, solving
    /// `a + (t - s) f'(u_L(s)) = x` for the launch time `s in [0, s_max]`.
    /// Taking `s_max > t` extends the solution smoothly just left of `a`.
    pub fn boundary_family(&self, t: f64, x: f64, s_max: f64) -> Result<f64> {
        let signal = self
            .problem
            .boundary
            .inflow()
            .ok_or_else(|| Error::Config("boundary characteristics need an inflow boundary".into()))?;
        let flux = &self.problem.flux;
        let a = self.problem.domain.0;
        let tol = self.newton_tol * (1.0 + x.abs());
        // -(a + (t - s) f'(u_L(s)) - x) increases with s before crossing
        let fun = |s: f64| {
            let g = signal.value(s);
            let dg = signal.derivative(s, 1).unwrap_or(0.0);
            let h = a + (t - s) * flux.f_prime(g) - x;
            let dh = -flux.f_prime(g) + (t - s) * flux.f_double_prime(g) * dg;
            (-h, -dh)
        };
        let s = solve_increasing(fun, 0.0, s_max, tol, self.max_iter)
            .ok_or(Error::OracleNoConvergence { t, x })?;
        Ok(signal.value(s))
    }
}
