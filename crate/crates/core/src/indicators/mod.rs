//! Numerical smoothness indicators of a computed DG solution.

mod spatial;
mod temporal;

pub use spatial::{boundary_derivatives, spatial_indicator, SpatialIndicator};
pub use temporal::{differentiated_operator, sample_points, temporal_indicator, TemporalIndicator, MAX_TIME_DERIVATIVE};
