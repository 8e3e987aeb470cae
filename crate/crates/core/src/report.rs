//! CSV and JSON output of a run.
//!
//! Floats are written with Rust's shortest round-trip formatting, so parsing a
//! file back gives the in-memory values bit for bit.

use std::fs;
use std::path::{Path, PathBuf};

use serde::Serialize;
use sha2::{Digest, Sha256};

use crate::config::RunConfig;
use crate::error::Result;
use crate::estimator::EstimatorConstants;
use crate::field::DgSolution;
use crate::indicators::{sample_points, SpatialIndicator, TemporalIndicator};
use crate::run::{RunArtifact, RunStatus};

/// Time label used in file names: fixed point, trailing zeros removed.
pub fn time_label(t: f64) -> String {
    let s = format!("{t:.6}");
    let s = s.trim_end_matches('0').trim_end_matches('.');
    if s.is_empty() || s == "-0" {
        "0".to_string()
    } else {
        s.to_string()
    }
}

fn num(v: f64) -> String {
    format!("{v}")
}

pub fn spatial_header(p: usize) -> Vec<String> {
    let mut header = vec!["t".to_string(), "j".to_string()];
    for prefix in ["M", "J", "D", "loghJ"] {
        header.extend((0..=p).map(|l| format!("{prefix}{l}")));
    }
    header
}

pub fn temporal_header(k: usize) -> Vec<String> {
    let mut header = vec!["t".to_string(), "j".to_string(), "node".to_string()];
    header.extend((1..=k + 1).map(|l| format!("d{l}")));
    header
}

pub const BUDGET_HEADER: [&str; 9] = ["n", "t", "tau", "F", "G", "local_space", "local_time", "E_global", "trusted"];

pub fn write_spatial_csv(path: &Path, s: &SpatialIndicator) -> Result<()> {
    let mut w = csv::Writer::from_path(path)?;
    w.write_record(spatial_header(s.degree))?;
    let p = s.degree;
    for j in 0..s.cells {
        let mut row = vec![num(s.t), j.to_string()];
        row.extend((0..=p).map(|l| num(s.m(j, l))));
        row.extend((0..=p).map(|l| num(s.jump(j, l))));
        row.extend((0..=p).map(|l| num(s.d(j, l))));
        row.extend((0..=p).map(|l| num(s.log_h_jump(j, l))));
        w.write_record(&row)?;
    }
    w.flush()?;
    Ok(())
}

/// One row per cell and sample point: node 0 is the left end, nodes
/// `1..=p+2` the quadrature nodes, the last node the right end.
pub fn write_temporal_csv(path: &Path, u: &DgSolution, t: &TemporalIndicator) -> Result<()> {
    let mut w = csv::Writer::from_path(path)?;
    let order = t.highest_order();
    w.write_record(temporal_header(order - 1))?;
    let space = &*u.space;
    for j in 0..space.mesh.cells() {
        let columns: Vec<Vec<f64>> = t.fields.iter().map(|f| sample_points(space, f, j)).collect();
        for node in 0..columns[0].len() {
            let mut row = vec![num(t.t), j.to_string(), node.to_string()];
            row.extend(columns.iter().map(|c| num(c[node])));
            w.write_record(&row)?;
        }
    }
    w.flush()?;
    Ok(())
}

/// `x, u` at every quadrature node of every cell.
pub fn write_solution_csv(path: &Path, u: &DgSolution) -> Result<()> {
    let mut w = csv::Writer::from_path(path)?;
    w.write_record(["x", "u"])?;
    let mesh = u.mesh();
    for j in 0..mesh.cells() {
        for (q, xi) in u.basis().nodes().iter().enumerate() {
            w.write_record([num(mesh.to_physical(j, *xi)), num(u.value_at_node(j, q))])?;
        }
    }
    w.flush()?;
    Ok(())
}

/// Row 0 carries the initial projection error.
pub fn write_budget_csv(path: &Path, art: &RunArtifact) -> Result<()> {
    let mut w = csv::Writer::from_path(path)?;
    w.write_record(BUDGET_HEADER)?;
    let b = &art.budget;
    w.write_record(["0", "0", "0", "0", "0", "0", "0", &num(b.e0), "true"])?;
    for e in &b.entries {
        w.write_record([
            e.n.to_string(),
            num(e.t),
            num(e.tau),
            num(e.f),
            num(e.g),
            num(e.local_space),
            num(e.local_time),
            num(e.e_global),
            e.trusted.to_string(),
        ])?;
    }
    w.flush()?;
    Ok(())
}

#[derive(Debug, Clone, Serialize)]
pub struct Maxima {
    pub d_tilde: f64,
    pub m_max: Vec<f64>,
    pub j_max: Vec<f64>,
    pub d_max: Vec<f64>,
    pub time_derivative_max: Vec<f64>,
}

#[derive(Debug, Clone, Serialize)]
pub struct Summary {
    pub problem: String,
    pub config: RunConfig,
    pub config_hash: String,
    pub constants: EstimatorConstants,
    pub status: RunStatus,
    pub steps: usize,
    pub t_reached: f64,
    pub e0: f64,
    pub e_global: f64,
    pub all_trusted: bool,
    pub untrusted_steps: usize,
    pub cfl_warnings: usize,
    pub maxima: Maxima,
    pub snapshot_times: Vec<f64>,
    pub elapsed_seconds: f64,
    pub files: Vec<String>,
}

/// SHA-256 of the config's JSON form.
pub fn config_hash(cfg: &RunConfig) -> String {
    let json = serde_json::to_string(cfg).expect("config serializes");
    let digest = Sha256::digest(json.as_bytes());
    digest.iter().map(|b| format!("{b:02x}")).collect()
}

fn running_max(acc: &mut Vec<f64>, values: &[f64]) {
    if acc.len() < values.len() {
        acc.resize(values.len(), 0.0);
    }
    for (a, v) in acc.iter_mut().zip(values) {
        // NaN must show up in the summary rather than vanish in max()
        *a = if v.is_nan() || a.is_nan() { f64::NAN } else { a.max(*v) };
    }
}

pub fn summarize(art: &RunArtifact, files: Vec<String>) -> Summary {
    let mut maxima = Maxima {
        d_tilde: 0.0,
        m_max: Vec::new(),
        j_max: Vec::new(),
        d_max: Vec::new(),
        time_derivative_max: Vec::new(),
    };
    let mut fold = |d_tilde: f64, m: &[f64], j: &[f64], d: &[f64], dt: &[f64]| {
        maxima.d_tilde = if d_tilde.is_nan() { f64::NAN } else { maxima.d_tilde.max(d_tilde) };
        running_max(&mut maxima.m_max, m);
        running_max(&mut maxima.j_max, j);
        running_max(&mut maxima.d_max, d);
        running_max(&mut maxima.time_derivative_max, dt);
    };
    for r in &art.series {
        fold(r.d_tilde, &r.m_max, &r.j_max, &r.d_max, &r.time_derivative_max);
    }
    for snap in &art.snapshots {
        if let (Some(s), Some(t)) = (&snap.spatial, &snap.temporal) {
            fold(s.d_tilde, &s.m_max, &s.j_max, &s.d_max, &t.sup_norms);
        }
    }
    Summary {
        problem: art.problem.clone(),
        config: art.config.clone(),
        config_hash: config_hash(&art.config),
        constants: art.constants,
        status: art.status.clone(),
        steps: art.steps(),
        t_reached: art.final_solution.t,
        e0: art.budget.e0,
        e_global: art.budget.e_global,
        all_trusted: art.budget.all_trusted(),
        untrusted_steps: art.budget.entries.iter().filter(|e| !e.trusted).count(),
        cfl_warnings: art.cfl_warnings,
        maxima,
        snapshot_times: art.snapshots.iter().map(|s| s.t).collect(),
        elapsed_seconds: art.elapsed.as_secs_f64(),
        files,
    }
}

/// Write every report file for `art` into `out_dir` and return their paths.
pub fn emit_reports(art: &RunArtifact, out_dir: &Path) -> Result<Vec<PathBuf>> {
    fs::create_dir_all(out_dir)?;
    let mut written = Vec::new();
    for snap in &art.snapshots {
        let label = time_label(snap.t);
        if let Some(s) = &snap.spatial {
            let path = out_dir.join(format!("indicators_spatial_{label}.csv"));
            write_spatial_csv(&path, s)?;
            written.push(path);
        }
        if let Some(t) = &snap.temporal {
            let path = out_dir.join(format!("indicators_temporal_{label}.csv"));
            write_temporal_csv(&path, &snap.solution, t)?;
            written.push(path);
        }
        let path = out_dir.join(format!("solution_{label}.csv"));
        write_solution_csv(&path, &snap.solution)?;
        written.push(path);
    }
    let path = out_dir.join("error_budget.csv");
    write_budget_csv(&path, art)?;
    written.push(path);

    let summary_path = out_dir.join("summary.json");
    let mut names: Vec<String> = written
        .iter()
        .filter_map(|p| p.file_name().map(|n| n.to_string_lossy().into_owned()))
        .collect();
    names.push("summary.json".into());
    let summary = summarize(art, names);
    fs::write(&summary_path, serde_json::to_string_pretty(&summary)?)?;
    written.push(summary_path);
    Ok(written)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn labels() {
        assert_eq!(time_label(0.05), "0.05");
        assert_eq!(time_label(2.0), "2");
        assert_eq!(time_label(1.05), "1.05");
        assert_eq!(time_label(0.0), "0");
        assert_eq!(time_label(0.12000000000000001), "0.12");
    }

    #[test]
    fn headers() {
        assert_eq!(spatial_header(1), ["t", "j", "M0", "M1", "J0", "J1", "D0", "D1", "loghJ0", "loghJ1"]);
        assert_eq!(temporal_header(3), ["t", "j", "node", "d1", "d2", "d3", "d4"]);
    }

    #[test]
    fn hash_depends_on_config() {
        let a = RunConfig::default();
        let b = RunConfig { p: 2, ..Default::default() };
        assert_eq!(config_hash(&a), config_hash(&a.clone()));
        assert_ne!(config_hash(&a), config_hash(&b));
        assert_eq!(config_hash(&a).len(), 64);
    }
}
