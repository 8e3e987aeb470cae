//! Mesh-refinement studies against the characteristics oracle.

use serde::{Deserialize, Serialize};

use crate::basis::gauss_legendre;
use crate::config::RunConfig;
use crate::error::{Error, Result};
use crate::field::DgSolution;
use crate::oracle::ExactOracle;
use crate::problems::ProblemSpec;
use crate::run::{run_simulation, RunOptions, RunStatus};

/// Studies must end before this fraction of the crossing time.
pub const CROSSING_MARGIN: f64 = 0.9;

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct ConvergenceRow {
    pub h: f64,
    pub cells: usize,
    pub steps: usize,
    pub l1_error: f64,
    pub estimate: f64,
    pub effectivity: f64,
    pub trusted: bool,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct ConvergenceTable {
    pub problem: String,
    pub p: usize,
    pub k: usize,
    pub t_final: f64,
    pub rows: Vec<ConvergenceRow>,
    /// Least-squares slope of `log error` against `log h`.
    pub fitted_order: f64,
}

impl ConvergenceTable {
    /// Observed orders between consecutive meshes.
    pub fn pairwise_orders(&self) -> Vec<f64> {
        self.rows
            .windows(2)
            .map(|w| (w[0].l1_error / w[1].l1_error).ln() / (w[0].h / w[1].h).ln())
            .collect()
    }
}

/// Least-squares slope of `ys` against `xs` in log-log scale.
pub fn fitted_slope(xs: &[f64], ys: &[f64]) -> f64 {
    let n = xs.len() as f64;
    let lx: Vec<f64> = xs.iter().map(|x| x.ln()).collect();
    let ly: Vec<f64> = ys.iter().map(|y| y.ln()).collect();
    let mx = lx.iter().sum::<f64>() / n;
    let my = ly.iter().sum::<f64>() / n;
    let cov: f64 = lx.iter().zip(&ly).map(|(x, y)| (x - mx) * (y - my)).sum();
    let var: f64 = lx.iter().map(|x| (x - mx).powi(2)).sum();
    cov / var
}

/// `||u(t) - u_h||_{L1}` against the oracle, `4 (p + 2)` Gauss points per cell.
pub fn l1_error_vs_oracle(u: &DgSolution, oracle: &ExactOracle) -> Result<f64> {
    let p = u.degree();
    let (nodes, weights) = gauss_legendre(4 * (p + 2));
    let mesh = u.mesh();
    let basis = u.basis();
    let mut total = 0.0;
    for j in 0..mesh.cells() {
        let c = u.coeffs.cell(j);
        let mut cell = 0.0;
        for (xi, w) in nodes.iter().zip(&weights) {
            let exact = oracle.exact_solution(u.t, mesh.to_physical(j, *xi))?;
            cell += w * (exact - basis.eval_reference(c, *xi, 0)).abs();
        }
        total += cell * mesh.h() / 2.0;
    }
    Ok(total)
}

fn study_case(problem: &ProblemSpec, cfg: &RunConfig, oracle: &ExactOracle) -> Result<ConvergenceRow> {
    let art = run_simulation(problem, cfg, &RunOptions::default())?;
    if let RunStatus::Aborted { step, t, reason } = &art.status {
        return Err(Error::Config(format!("h = {}: run aborted at step {step} (t = {t}): {reason}", cfg.h)));
    }
    let l1_error = l1_error_vs_oracle(&art.final_solution, oracle)?;
    let estimate = art.budget.e_global;
    Ok(ConvergenceRow {
        h: cfg.h,
        cells: art.final_solution.mesh().cells(),
        steps: art.steps(),
        l1_error,
        estimate,
        effectivity: estimate / l1_error,
        trusted: art.budget.all_trusted(),
    })
}

/// Run `problem` on every width in `h_list` (one worker thread per mesh) and
/// compare the final states with the exact solution.
pub fn convergence_study(problem: &ProblemSpec, cfg_base: &RunConfig, h_list: &[f64]) -> Result<ConvergenceTable> {
    if h_list.len() < 2 {
        return Err(Error::Config("a convergence study needs at least two meshes".into()));
    }
    let oracle = ExactOracle::new(problem.clone());
    let t_star = oracle.crossing_time();
    if cfg_base.t_final > CROSSING_MARGIN * t_star {
        return Err(Error::OracleInvalid { t_star });
    }
    let rows: Vec<Result<ConvergenceRow>> = std::thread::scope(|scope| {
        let handles: Vec<_> = h_list
            .iter()
            .map(|&h| {
                let cfg = RunConfig { h, ..cfg_base.clone() };
                let oracle = &oracle;
                scope.spawn(move || study_case(problem, &cfg, oracle))
            })
            .collect();
        handles
            .into_iter()
            .map(|handle| handle.join().expect("convergence worker panicked"))
            .collect()
    });
    let rows = rows.into_iter().collect::<Result<Vec<_>>>()?;
    let hs: Vec<f64> = rows.iter().map(|r| r.h).collect();
    let errors: Vec<f64> = rows.iter().map(|r| r.l1_error).collect();
    Ok(ConvergenceTable {
        problem: problem.name.clone(),
        p: cfg_base.p,
        k: cfg_base.k,
        t_final: cfg_base.t_final,
        fitted_order: fitted_slope(&hs, &errors),
        rows,
    })
}
