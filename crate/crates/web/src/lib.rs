//! WebAssembly entry points for the static demo page in `www/`.
//!
//! Each exported function returns a JSON string. The `*_json` functions do
//! the work and are plain Rust, so they are tested natively.

use serde::Serialize;
use wasm_bindgen::prelude::*;

use rkdg::{
    derive_constants, l1_error_vs_oracle, run_simulation, CflMode, ExactOracle, ProblemSpec, RunConfig, RunOptions,
    RunStatus,
};

/// Runs in the page must stay interactive.
const MAX_STEPS: f64 = 5_000.0;

#[derive(Serialize)]
struct JumpProfile {
    order: usize,
    /// `log_h |J^l|` per interface, `null` where the jump vanishes.
    log_h_jump: Vec<Option<f64>>,
    mean: Option<f64>,
}

#[derive(Serialize)]
struct IndicatorRun {
    problem: String,
    status: String,
    steps: usize,
    t: f64,
    x: Vec<f64>,
    u: Vec<f64>,
    jumps: Vec<JumpProfile>,
    d_max: Vec<f64>,
    time_derivative_max: Vec<f64>,
    step_t: Vec<f64>,
    step_d_tilde: Vec<f64>,
    e_global: Vec<f64>,
}

#[derive(Serialize)]
struct ExactComparison {
    problem: String,
    t: f64,
    crossing_time: f64,
    x: Vec<f64>,
    numerical: Vec<f64>,
    exact: Vec<f64>,
    l1_error: f64,
    estimate: f64,
}

fn config(p: usize, k: usize, h: f64, tau: f64, t_final: f64) -> Result<RunConfig, String> {
    let cfg = RunConfig { p, k, h, tau_fixed: Some(tau), t_final, cfl_mode: CflMode::Fixed, ..Default::default() };
    cfg.validate().map_err(|e| e.to_string())?;
    if t_final / tau > MAX_STEPS {
        return Err(format!("{} steps is too many for the page; raise tau or lower t", (t_final / tau).ceil()));
    }
    Ok(cfg)
}

fn mean(values: impl Iterator<Item = f64>) -> Option<f64> {
    let (sum, n) = values.fold((0.0, 0usize), |(s, n), v| (s + v, n + 1));
    (n > 0).then(|| sum / n as f64)
}

/// Run `problem` and return the final state, the jump profile per derivative
/// order and the per-step indicator history.
pub fn indicator_run_json(problem: &str, p: usize, k: usize, h: f64, tau: f64, t_final: f64) -> Result<String, String> {
    let problem = ProblemSpec::by_name(problem).map_err(|e| e.to_string())?.with_t_final(t_final);
    let cfg = config(p, k, h, tau, t_final)?;
    let art = run_simulation(&problem, &cfg, &RunOptions::default()).map_err(|e| e.to_string())?;
    let snap = art.snapshots.last().ok_or("run produced no snapshot")?;
    let u = &snap.solution;
    let mesh = u.mesh();

    let mut x = Vec::new();
    let mut values = Vec::new();
    for j in 0..mesh.cells() {
        for (q, xi) in u.basis().nodes().iter().enumerate() {
            x.push(mesh.to_physical(j, *xi));
            values.push(u.value_at_node(j, q));
        }
    }
    let jumps = match &snap.spatial {
        Some(s) => (0..=p)
            .map(|l| {
                let log_h_jump: Vec<Option<f64>> =
                    (0..s.cells).map(|j| Some(s.log_h_jump(j, l)).filter(|v| v.is_finite())).collect();
                // the inflow cell compares against boundary data, so it is left out of the mean
                let mean = mean(log_h_jump.iter().skip(1).flatten().copied());
                JumpProfile { order: l, log_h_jump, mean }
            })
            .collect(),
        None => Vec::new(),
    };
    let status = match &art.status {
        RunStatus::Completed => "completed".to_string(),
        RunStatus::Aborted { step, reason, .. } => format!("aborted in step {step}: {reason}"),
    };
    let out = IndicatorRun {
        problem: art.problem.clone(),
        status,
        steps: art.steps(),
        t: u.t,
        x,
        u: values,
        jumps,
        d_max: snap.spatial.as_ref().map(|s| s.d_max.clone()).unwrap_or_default(),
        time_derivative_max: snap.temporal.as_ref().map(|t| t.sup_norms.clone()).unwrap_or_default(),
        step_t: art.series.iter().map(|r| r.t).collect(),
        step_d_tilde: art.series.iter().map(|r| r.d_tilde).collect(),
        e_global: art.budget.entries.iter().map(|e| e.e_global).collect(),
    };
    serde_json::to_string(&out).map_err(|e| e.to_string())
}

/// Numerical against exact solution at `t_final`, sampled at `samples` points.
pub fn exact_comparison_json(problem: &str, p: usize, h: f64, tau: f64, t_final: f64, samples: usize) -> Result<String, String> {
    let problem = ProblemSpec::by_name(problem).map_err(|e| e.to_string())?.with_t_final(t_final);
    let cfg = config(p, 3, h, tau, t_final)?;
    let oracle = ExactOracle::new(problem.clone());
    oracle.check_time(t_final).map_err(|e| e.to_string())?;
    let art = run_simulation(&problem, &cfg, &RunOptions::default()).map_err(|e| e.to_string())?;
    if !art.completed() {
        return Err(format!("run did not complete: {:?}", art.status));
    }
    let u = &art.final_solution;
    let (a, b) = problem.domain;
    let n = samples.max(2);
    let x: Vec<f64> = (0..n).map(|i| a + (b - a) * i as f64 / (n - 1) as f64).collect();
    let numerical = x.iter().map(|&x| u.eval(x, 0)).collect::<Result<Vec<_>, _>>().map_err(|e| e.to_string())?;
    let exact = x
        .iter()
        .map(|&x| oracle.exact_solution(u.t, x))
        .collect::<Result<Vec<_>, _>>()
        .map_err(|e| e.to_string())?;
    let out = ExactComparison {
        problem: problem.name.clone(),
        t: u.t,
        crossing_time: oracle.crossing_time(),
        x,
        numerical,
        exact,
        l1_error: l1_error_vs_oracle(u, &oracle).map_err(|e| e.to_string())?,
        estimate: art.budget.e_global,
    };
    serde_json::to_string(&out).map_err(|e| e.to_string())
}

/// Estimator constants for degree `p` and RK order `k`.
pub fn constants_json(p: usize, k: usize) -> Result<String, String> {
    let c = derive_constants(p, k).map_err(|e| e.to_string())?;
    serde_json::to_string(&c).map_err(|e| e.to_string())
}

#[wasm_bindgen]
pub fn indicator_run(problem: &str, p: usize, k: usize, h: f64, tau: f64, t_final: f64) -> Result<String, JsError> {
    indicator_run_json(problem, p, k, h, tau, t_final).map_err(|e| JsError::new(&e))
}

#[wasm_bindgen]
pub fn exact_comparison(problem: &str, p: usize, h: f64, tau: f64, t_final: f64, samples: usize) -> Result<String, JsError> {
    exact_comparison_json(problem, p, h, tau, t_final, samples).map_err(|e| JsError::new(&e))
}

#[wasm_bindgen]
pub fn constants(p: usize, k: usize) -> Result<String, JsError> {
    constants_json(p, k).map_err(|e| JsError::new(&e))
}
