//! Run settings from a `key = value` file with command-line overrides.

use std::path::PathBuf;

use rkdg::{CflMode, ProblemSpec, RunConfig};

pub const KEYS: [&str; 14] = [
    "problem", "p", "k", "h", "tau", "gamma", "mu", "tfinal", "kappa", "ceiling", "cfl", "outputs", "hs", "out",
];

#[derive(Debug, Clone, Default, PartialEq)]
pub struct Settings {
    pub problem: Option<String>,
    pub p: Option<usize>,
    pub k: Option<usize>,
    pub h: Option<f64>,
    pub tau: Option<f64>,
    pub gamma: Option<f64>,
    pub mu: Option<f64>,
    pub tfinal: Option<f64>,
    pub kappa: Option<f64>,
    pub ceiling: Option<f64>,
    pub cfl: Option<CflMode>,
    pub outputs: Option<Vec<f64>>,
    pub hs: Option<Vec<f64>>,
    pub out: Option<PathBuf>,
}

fn number<T: std::str::FromStr>(key: &str, value: &str) -> Result<T, String> {
    value
        .parse()
        .map_err(|_| format!("{key}: cannot parse '{value}'"))
}

pub fn parse_list(key: &str, value: &str) -> Result<Vec<f64>, String> {
    value
        .split(',')
        .map(str::trim)
        .filter(|s| !s.is_empty())
        .map(|s| number(key, s))
        .collect()
}

pub fn parse_cfl(value: &str) -> Result<CflMode, String> {
    match value {
        "fixed" => Ok(CflMode::Fixed),
        "auto" => Ok(CflMode::Auto),
        other => Err(format!("cfl: expected 'fixed' or 'auto', got '{other}'")),
    }
}

impl Settings {
    /// Parse one `key = value` per line; `#` starts a comment.
    pub fn parse(text: &str) -> Result<Self, String> {
        let mut s = Settings::default();
        for (lineno, raw) in text.lines().enumerate() {
            let line = raw.split('#').next().unwrap_or("").trim();
            if line.is_empty() {
                continue;
            }
            let (key, value) = line
                .split_once('=')
                .ok_or_else(|| format!("line {}: expected key = value", lineno + 1))?;
            s.set(key.trim(), value.trim())
                .map_err(|e| format!("line {}: {e}", lineno + 1))?;
        }
        Ok(s)
    }

    pub fn set(&mut self, key: &str, value: &str) -> Result<(), String> {
        match key {
            "problem" => self.problem = Some(value.to_string()),
            "p" => self.p = Some(number(key, value)?),
            "k" => self.k = Some(number(key, value)?),
            "h" => self.h = Some(number(key, value)?),
            "tau" => self.tau = Some(number(key, value)?),
            "gamma" => self.gamma = Some(number(key, value)?),
            "mu" => self.mu = Some(number(key, value)?),
            "tfinal" => self.tfinal = Some(number(key, value)?),
            "kappa" => self.kappa = Some(number(key, value)?),
            "ceiling" => self.ceiling = Some(number(key, value)?),
            "cfl" => self.cfl = Some(parse_cfl(value)?),
            "outputs" => self.outputs = Some(parse_list(key, value)?),
            "hs" => self.hs = Some(parse_list(key, value)?),
            "out" => self.out = Some(PathBuf::from(value)),
            other => return Err(format!("unknown key '{other}' (known: {})", KEYS.join(", "))),
        }
        Ok(())
    }

    /// Fields set in `other` replace those in `self`.
    pub fn overlay(self, other: Settings) -> Settings {
        Settings {
            problem: other.problem.or(self.problem),
            p: other.p.or(self.p),
            k: other.k.or(self.k),
            h: other.h.or(self.h),
            tau: other.tau.or(self.tau),
            gamma: other.gamma.or(self.gamma),
            mu: other.mu.or(self.mu),
            tfinal: other.tfinal.or(self.tfinal),
            kappa: other.kappa.or(self.kappa),
            ceiling: other.ceiling.or(self.ceiling),
            cfl: other.cfl.or(self.cfl),
            outputs: other.outputs.or(self.outputs),
            hs: other.hs.or(self.hs),
            out: other.out.or(self.out),
        }
    }

    /// Problem and run configuration. Without an explicit `cfl`, a given
    /// `tau` selects fixed stepping and its absence selects `default_mode`.
    pub fn resolve(&self, default_mode: CflMode) -> Result<(ProblemSpec, RunConfig), String> {
        let problem = ProblemSpec::by_name(self.problem.as_deref().unwrap_or("example1")).map_err(|e| e.to_string())?;
        let base = RunConfig::default();
        let cfl_mode = self.cfl.unwrap_or(if self.tau.is_some() { CflMode::Fixed } else { default_mode });
        let tau_fixed = match cfl_mode {
            CflMode::Fixed => Some(self.tau.or(base.tau_fixed).expect("default tau")),
            CflMode::Auto => self.tau,
        };
        let cfg = RunConfig {
            p: self.p.unwrap_or(base.p),
            k: self.k.unwrap_or(base.k),
            h: self.h.unwrap_or(base.h),
            mu: self.mu.unwrap_or(base.mu),
            gamma: self.gamma.unwrap_or(base.gamma),
            tau_fixed,
            t_final: self.tfinal.unwrap_or(problem.t_final),
            cfl_mode,
            kappa: self.kappa.unwrap_or(base.kappa),
            ceiling: self.ceiling.unwrap_or(base.ceiling),
        };
        cfg.validate().map_err(|e| e.to_string())?;
        let problem = problem.with_t_final(cfg.t_final);
        Ok((problem, cfg))
    }
}
