//! Time-marching driver: steps the solver, evaluates both indicators on every
//! step and accumulates the error budget.

use std::time::{Duration, Instant};

use serde::{Deserialize, Serialize};

use crate::config::RunConfig;
use crate::error::{Error, Result};
use crate::estimator::{
    derive_constants, indicators_trusted, initial_error, spatial_terms, temporal_terms, ErrorBudget,
    EstimatorConstants,
};
use crate::field::{project_l2, DgSolution, DgSpace};
use crate::indicators::{spatial_indicator, temporal_indicator, SpatialIndicator, TemporalIndicator};
use crate::mesh::Mesh;
use crate::problems::ProblemSpec;
use crate::stepper::{select_tau, step_tvd_rk};

/// Output times coinciding within this distance are treated as equal.
const TIME_EPS: f64 = 1e-12;

/// State and indicators at an output time.
#[derive(Debug, Clone)]
pub struct Snapshot {
    pub step: usize,
    pub t: f64,
    pub solution: DgSolution,
    /// Missing only when the indicators could not be evaluated on an aborted run.
    pub spatial: Option<SpatialIndicator>,
    pub temporal: Option<TemporalIndicator>,
}

/// Per-step indicator maxima and estimate, for the state at the start of step `n`.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct StepRecord {
    pub n: usize,
    pub t: f64,
    pub tau: f64,
    pub d_tilde: f64,
    pub m_max: Vec<f64>,
    pub j_max: Vec<f64>,
    pub d_max: Vec<f64>,
    /// Sup norms of the time derivatives, orders `1..=k+1`.
    pub time_derivative_max: Vec<f64>,
    pub f: f64,
    pub g: f64,
    pub trusted: bool,
    pub cfl_warning: bool,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(tag = "status", rename_all = "snake_case")]
pub enum RunStatus {
    Completed,
    /// The step starting at `t` failed; the last snapshot holds the state at `t`.
    Aborted { step: usize, t: f64, reason: String },
}

#[derive(Debug, Clone)]
pub struct RunArtifact {
    pub problem: String,
    pub config: RunConfig,
    pub constants: EstimatorConstants,
    pub snapshots: Vec<Snapshot>,
    pub series: Vec<StepRecord>,
    pub budget: ErrorBudget,
    pub status: RunStatus,
    pub final_solution: DgSolution,
    pub cfl_warnings: usize,
    pub elapsed: Duration,
}

impl RunArtifact {
    pub fn completed(&self) -> bool {
        self.status == RunStatus::Completed
    }

    pub fn steps(&self) -> usize {
        self.series.len()
    }

    pub fn snapshot_at(&self, t: f64) -> Option<&Snapshot> {
        self.snapshots.iter().find(|s| (s.t - t).abs() <= 1e-9)
    }
}

#[derive(Debug, Clone, Default, PartialEq, Serialize, Deserialize)]
pub struct RunOptions {
    /// Times at which snapshots are stored; `t_final` is always added.
    pub output_times: Vec<f64>,
}

impl RunOptions {
    pub fn at(times: &[f64]) -> Self {
        Self { output_times: times.to_vec() }
    }
}

fn indicators(
    u: &DgSolution,
    cfg: &RunConfig,
    problem: &ProblemSpec,
) -> Result<(SpatialIndicator, TemporalIndicator)> {
    let s = spatial_indicator(u, cfg, &problem.flux, &problem.boundary, u.t)?;
    let t = temporal_indicator(u, cfg.k, &problem.flux, &problem.boundary, u.t)?;
    Ok((s, t))
}

/// Sorted output times in `[0, t_final]`, always ending at `t_final`.
fn output_schedule(options: &RunOptions, t_final: f64) -> Result<Vec<f64>> {
    let mut times = Vec::with_capacity(options.output_times.len() + 1);
    for &t in &options.output_times {
        if !(t >= 0.0 && t <= t_final + TIME_EPS) {
            return Err(Error::Config(format!("output time {t} outside [0, {t_final}]")));
        }
        times.push(t.min(t_final));
    }
    times.push(t_final);
    times.sort_by(f64::total_cmp);
    times.dedup_by(|a, b| (*a - *b).abs() <= TIME_EPS);
    Ok(times)
}

/// Run `problem` under `cfg` to `cfg.t_final`.
///
/// A blow-up does not return an error: the artifact is marked aborted and
/// keeps the last good state as its final snapshot.
pub fn run_simulation(problem: &ProblemSpec, cfg: &RunConfig, options: &RunOptions) -> Result<RunArtifact> {
    cfg.validate()?;
    let started = Instant::now();
    let mesh = Mesh::with_width(problem.domain.0, problem.domain.1, cfg.h)?;
    let space = DgSpace::new(mesh, cfg.p)?;
    let constants = derive_constants(cfg.p, cfg.k)?;
    let length = problem.length();
    let h = mesh.h();

    let mut u = project_l2(|x| problem.initial_value(x), &space)?;
    let mut budget = ErrorBudget::new(initial_error(&u, |x| problem.initial_value(x)));
    let schedule = output_schedule(options, cfg.t_final)?;
    let mut next_output = 0;
    let mut snapshots = Vec::new();
    let mut series = Vec::new();
    let mut status = RunStatus::Completed;
    let mut cfl_warnings = 0;

    let mut current: Option<(SpatialIndicator, TemporalIndicator)> = None;
    loop {
        if next_output < schedule.len() && (u.t - schedule[next_output]).abs() <= TIME_EPS {
            let (s, t) = match indicators(&u, cfg, problem) {
                Ok(pair) => pair,
                Err(e) if e.is_blow_up() => {
                    status = RunStatus::Aborted { step: series.len() + 1, t: u.t, reason: e.to_string() };
                    snapshots.push(Snapshot { step: series.len(), t: u.t, solution: u.clone(), spatial: None, temporal: None });
                    break;
                }
                Err(e) => return Err(e),
            };
            snapshots.push(Snapshot {
                step: series.len(),
                t: u.t,
                solution: u.clone(),
                spatial: Some(s.clone()),
                temporal: Some(t.clone()),
            });
            current = Some((s, t));
            next_output += 1;
        }
        if next_output >= schedule.len() {
            break;
        }
        let target = schedule[next_output];
        let choice = select_tau(cfg, &problem.flux, &mesh, u.t, target)?;
        if choice.warns() {
            cfl_warnings += 1;
        }

        let step_result = (|| -> Result<_> {
            let (s, t) = match current.take() {
                Some(pair) => pair,
                None => indicators(&u, cfg, problem)?,
            };
            let next = step_tvd_rk(&u, choice.tau, cfg.k, &problem.flux, &problem.boundary)?;
            Ok((s, t, next))
        })();
        let (s, t, mut next) = match step_result {
            Ok(v) => v,
            Err(e) if e.is_blow_up() => {
                status = RunStatus::Aborted { step: series.len() + 1, t: u.t, reason: e.to_string() };
                let (spatial, temporal) = match indicators(&u, cfg, problem) {
                    Ok((s, t)) => (Some(s), Some(t)),
                    Err(_) => (None, None),
                };
                snapshots.push(Snapshot { step: series.len(), t: u.t, solution: u.clone(), spatial, temporal });
                break;
            }
            Err(e) => return Err(e),
        };
        if choice.clipped {
            next.t = target;
        }

        let f_terms = spatial_terms(&s, &constants, cfg, &problem.flux, length);
        let g_terms = temporal_terms(&t, &constants, cfg, &problem.flux, h, length);
        let trusted = indicators_trusted(&s, &t, cfg.ceiling);
        budget.accumulate(next.t, choice.tau, f_terms.total, g_terms.total, trusted, cfg, h);
        let entry_trusted = budget.entries.last().map_or(trusted, |e| e.trusted);
        series.push(StepRecord {
            n: series.len() + 1,
            t: u.t,
            tau: choice.tau,
            d_tilde: s.d_tilde,
            m_max: s.m_max.clone(),
            j_max: s.j_max.clone(),
            d_max: s.d_max.clone(),
            time_derivative_max: t.sup_norms.clone(),
            f: f_terms.total,
            g: g_terms.total,
            trusted: entry_trusted,
            cfl_warning: choice.warns(),
        });
        u = next;
    }

    Ok(RunArtifact {
        problem: problem.name.clone(),
        config: cfg.clone(),
        constants,
        snapshots,
        series,
        budget,
        status,
        final_solution: u,
        cfl_warnings,
        elapsed: started.elapsed(),
    })
}
