mod settings;

use std::fs;
use std::path::{Path, PathBuf};
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand};
use rkdg::{convergence_study, emit_reports, run_simulation, CflMode, Error, RunOptions, RunStatus};

use settings::{parse_cfl, parse_list, Settings};

const EXIT_FAILURE: u8 = 1;
const EXIT_CONFIG: u8 = 2;
const EXIT_BLOW_UP: u8 = 3;
const EXIT_ORACLE: u8 = 4;

#[derive(Parser)]
#[command(name = "rkdg", version, about = "RKDG solver with smoothness indicators and an L1 error bound")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Run one problem and write indicator, solution and budget files.
    Run(RunArgs),
    /// Mesh-refinement study against the exact solution.
    Converge(ConvergeArgs),
    /// Print the summary of a finished run directory.
    Report {
        #[arg(long, default_value = "out")]
        out: PathBuf,
    },
}

#[derive(Args, Clone, Default)]
struct Common {
    /// key = value file; flags override its entries
    #[arg(long)]
    config: Option<PathBuf>,
    /// example1, example2, linear or inflow_wave
    #[arg(long)]
    problem: Option<String>,
    #[arg(long = "p")]
    p: Option<usize>,
    #[arg(long = "k")]
    k: Option<usize>,
    #[arg(long = "h")]
    h: Option<f64>,
    #[arg(long)]
    tau: Option<f64>,
    #[arg(long)]
    gamma: Option<f64>,
    #[arg(long)]
    mu: Option<f64>,
    #[arg(long)]
    tfinal: Option<f64>,
    #[arg(long)]
    kappa: Option<f64>,
    #[arg(long)]
    ceiling: Option<f64>,
    /// fixed or auto
    #[arg(long, value_parser = parse_cfl)]
    cfl: Option<CflMode>,
    #[arg(long)]
    out: Option<PathBuf>,
}

#[derive(Args)]
struct RunArgs {
    #[command(flatten)]
    common: Common,
    /// Comma-separated snapshot times; the final time is always included
    #[arg(long)]
    outputs: Option<String>,
}

#[derive(Args)]
struct ConvergeArgs {
    #[command(flatten)]
    common: Common,
    /// Comma-separated cell widths [default: 0.2,0.1,0.05,0.025]
    #[arg(long)]
    hs: Option<String>,
}

struct Failure {
    code: u8,
    message: String,
}

impl Failure {
    fn config(message: impl Into<String>) -> Self {
        Self { code: EXIT_CONFIG, message: message.into() }
    }
}

impl From<Error> for Failure {
    fn from(e: Error) -> Self {
        let code = match &e {
            Error::OracleInvalid { .. } | Error::OracleNoConvergence { .. } => EXIT_ORACLE,
            e if e.is_blow_up() => EXIT_BLOW_UP,
            Error::Config(_)
            | Error::InvalidMesh(_)
            | Error::DerivativeDepth { .. }
            | Error::MissingBoundaryDerivative(_)
            | Error::WestWindViolated { .. } => EXIT_CONFIG,
            _ => EXIT_FAILURE,
        };
        Self { code, message: e.to_string() }
    }
}

fn load_settings(common: &Common) -> Result<Settings, Failure> {
    let file = match &common.config {
        Some(path) => {
            let text = fs::read_to_string(path)
                .map_err(|e| Failure::config(format!("cannot read {}: {e}", path.display())))?;
            Settings::parse(&text).map_err(|e| Failure::config(format!("{}: {e}", path.display())))?
        }
        None => Settings::default(),
    };
    let flags = Settings {
        problem: common.problem.clone(),
        p: common.p,
        k: common.k,
        h: common.h,
        tau: common.tau,
        gamma: common.gamma,
        mu: common.mu,
        tfinal: common.tfinal,
        kappa: common.kappa,
        ceiling: common.ceiling,
        cfl: common.cfl,
        outputs: None,
        hs: None,
        out: common.out.clone(),
    };
    Ok(file.overlay(flags))
}

fn run(args: RunArgs) -> Result<(), Failure> {
    let mut settings = load_settings(&args.common)?;
    if let Some(list) = &args.outputs {
        settings.outputs = Some(parse_list("outputs", list).map_err(Failure::config)?);
    }
    let (problem, cfg) = settings.resolve(CflMode::Fixed).map_err(Failure::config)?;
    let out = settings.out.clone().unwrap_or_else(|| PathBuf::from("out"));
    let options = RunOptions::at(settings.outputs.as_deref().unwrap_or(&[]));

    let art = run_simulation(&problem, &cfg, &options)?;
    let files = emit_reports(&art, &out)?;
    println!(
        "{}: p={} k={} h={} steps={} t={} E0={:e} E_global={:e} trusted={} cfl_warnings={}",
        art.problem,
        cfg.p,
        cfg.k,
        cfg.h,
        art.steps(),
        art.final_solution.t,
        art.budget.e0,
        art.budget.e_global,
        art.budget.all_trusted(),
        art.cfl_warnings
    );
    println!("wrote {} files to {}", files.len(), out.display());
    match art.status {
        RunStatus::Completed => Ok(()),
        RunStatus::Aborted { step, t, reason } => Err(Failure {
            code: EXIT_BLOW_UP,
            message: format!("aborted in step {step} at t = {t}: {reason}"),
        }),
    }
}

fn converge(args: ConvergeArgs) -> Result<(), Failure> {
    let mut settings = load_settings(&args.common)?;
    if let Some(list) = &args.hs {
        settings.hs = Some(parse_list("hs", list).map_err(Failure::config)?);
    }
    if settings.tfinal.is_none() {
        settings.tfinal = Some(0.5);
    }
    let (problem, cfg) = settings.resolve(CflMode::Auto).map_err(Failure::config)?;
    let hs = settings.hs.clone().unwrap_or_else(|| vec![0.2, 0.1, 0.05, 0.025]);
    let out = settings.out.clone().unwrap_or_else(|| PathBuf::from("out"));

    let table = convergence_study(&problem, &cfg, &hs)?;
    fs::create_dir_all(&out).map_err(Error::from)?;
    let orders = table.pairwise_orders();

    let mut w = csv::Writer::from_path(out.join("convergence.csv")).map_err(Error::from)?;
    w.write_record(["h", "cells", "steps", "l1_error", "estimate", "effectivity", "trusted", "order"])
        .map_err(Error::from)?;
    for (i, r) in table.rows.iter().enumerate() {
        let order = if i == 0 { String::new() } else { orders[i - 1].to_string() };
        w.write_record([
            r.h.to_string(),
            r.cells.to_string(),
            r.steps.to_string(),
            r.l1_error.to_string(),
            r.estimate.to_string(),
            r.effectivity.to_string(),
            r.trusted.to_string(),
            order,
        ])
        .map_err(Error::from)?;
    }
    w.flush().map_err(Error::from)?;
    let json = serde_json::to_string_pretty(&table).map_err(Error::from)?;
    fs::write(out.join("convergence.json"), json).map_err(Error::from)?;

    println!("{} p={} k={} T={}", table.problem, table.p, table.k, table.t_final);
    println!("{:>8} {:>6} {:>6} {:>12} {:>12} {:>10} {:>6}", "h", "cells", "steps", "L1 error", "estimate", "effectiv.", "order");
    for (i, r) in table.rows.iter().enumerate() {
        let order = if i == 0 { "-".to_string() } else { format!("{:.2}", orders[i - 1]) };
        println!(
            "{:>8} {:>6} {:>6} {:>12.4e} {:>12.4e} {:>10.3e} {:>6}",
            r.h, r.cells, r.steps, r.l1_error, r.estimate, r.effectivity, order
        );
    }
    println!("fitted order {:.3}", table.fitted_order);
    Ok(())
}

fn report(out: &Path) -> Result<(), Failure> {
    let path = out.join("summary.json");
    let text = fs::read_to_string(&path).map_err(|e| Failure::config(format!("cannot read {}: {e}", path.display())))?;
    let summary: serde_json::Value = serde_json::from_str(&text).map_err(Error::from)?;
    let field = |key: &str| summary.get(key).cloned().unwrap_or(serde_json::Value::Null);
    println!("problem             {}", field("problem"));
    println!("status              {}", field("status"));
    println!("config hash         {}", field("config_hash"));
    println!("steps               {}", field("steps"));
    println!("t reached           {}", field("t_reached"));
    println!("E0                  {}", field("e0"));
    println!("E_global            {}", field("e_global"));
    println!("all trusted         {}", field("all_trusted"));
    if let Some(maxima) = summary.get("maxima") {
        for key in ["d_tilde", "m_max", "j_max", "d_max", "time_derivative_max"] {
            println!("{key:<20}{}", maxima.get(key).cloned().unwrap_or_default());
        }
    }

    let budget = out.join("error_budget.csv");
    let mut reader = csv::Reader::from_path(&budget).map_err(Error::from)?;
    let (mut rows, mut worst_f, mut worst_g) = (0usize, 0.0f64, 0.0f64);
    let mut last = None;
    for record in reader.records() {
        let record = record.map_err(Error::from)?;
        let value = |i: usize| record.get(i).and_then(|s| s.parse::<f64>().ok()).unwrap_or(f64::NAN);
        worst_f = worst_f.max(value(3));
        worst_g = worst_g.max(value(4));
        last = Some(value(7));
        rows += 1;
    }
    println!("budget rows         {rows} (max F {worst_f:e}, max G {worst_g:e}, final E_global {})", last.unwrap_or(f64::NAN));
    Ok(())
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    let result = match cli.command {
        Command::Run(args) => run(args),
        Command::Converge(args) => converge(args),
        Command::Report { out } => report(&out),
    };
    match result {
        Ok(()) => ExitCode::SUCCESS,
        Err(f) => {
            eprintln!("error: {}", f.message);
            ExitCode::from(f.code)
        }
    }
}
