//! Runge-Kutta discontinuous Galerkin solver for 1D scalar conservation laws
//! `u_t + f(u)_x = 0` that tracks spatial and temporal numerical smoothness
//! indicators every step and accumulates an a-posteriori L1 error bound.

pub mod basis;
pub mod boundary;
pub mod config;
pub mod convergence;
pub mod error;
pub mod estimator;
pub mod field;
pub mod flux;
pub mod indicators;
pub mod jet;
pub mod mesh;
pub mod operator;
pub mod oracle;
pub mod problems;
pub mod report;
pub mod run;
pub mod stepper;

pub use basis::{Basis, Side};
pub use boundary::{BoundaryModel, InflowSignal};
pub use config::{CflMode, RunConfig};
pub use convergence::{convergence_study, l1_error_vs_oracle, ConvergenceRow, ConvergenceTable};
pub use error::{Error, Result};
pub use estimator::{derive_constants, initial_error, spatial_f, temporal_g, BudgetEntry, ErrorBudget, EstimatorConstants};
pub use field::{project_l2, CoeffField, DgSolution, DgSpace};
pub use flux::{FluxFunction, FluxModel};
pub use indicators::{boundary_derivatives, spatial_indicator, temporal_indicator, SpatialIndicator, TemporalIndicator};
pub use mesh::Mesh;
pub use oracle::{crossing_time, ExactOracle};
pub use problems::{InitialDatum, ProblemSpec};
pub use operator::{apply_h, godunov_flux, mass_solve, semi_discrete_rhs};
pub use report::{emit_reports, summarize, Summary};
pub use run::{run_simulation, RunArtifact, RunOptions, RunStatus, Snapshot, StepRecord};
pub use stepper::{select_tau, step_tvd_rk, TauChoice};
