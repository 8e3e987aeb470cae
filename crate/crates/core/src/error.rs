use thiserror::Error;

pub type Result<T, E = Error> = std::result::Result<T, E>;

#[derive(Debug, Error)]
pub enum Error {
    #[error("invalid mesh: {0}")]
    InvalidMesh(String),

    #[error("non-finite input value {value} at x = {x}")]
    NonFiniteInput { x: f64, value: f64 },

    #[error("x = {x} lies outside the domain [{a}, {b}]")]
    OutOfDomain { x: f64, a: f64, b: f64 },

    #[error("inflow trace requires boundary model")]
    InflowTraceRequiresBoundary,

    #[error("interface index {index} out of range 0..={cells}")]
    InterfaceOutOfRange { index: usize, cells: usize },

    #[error("state {value} outside the admissible range [{lo}, {hi}]")]
    StateOutOfRange { value: f64, lo: f64, hi: f64 },

    #[error("west wind violated: f'({state}) = {speed} is not positive")]
    WestWindViolated { state: f64, speed: f64 },

    #[error("blow-up at stage {stage}")]
    BlowUp { stage: usize },

    #[error("invalid configuration: {0}")]
    Config(String),

    #[error("boundary signal does not provide the time derivative of order {0}")]
    MissingBoundaryDerivative(usize),

    #[error("singular boundary: f'(u_L) = {0}")]
    SingularBoundary(f64),

    #[error("time-derivative order {requested} exceeds the supported depth {max}")]
    DerivativeDepth { requested: usize, max: usize },

    #[error("pre-shock oracle invalid beyond t* = {t_star}")]
    OracleInvalid { t_star: f64 },

    #[error("oracle did not converge at (t, x) = ({t}, {x})")]
    OracleNoConvergence { t: f64, x: f64 },

    #[error(transparent)]
    Io(#[from] std::io::Error),

    #[error(transparent)]
    Csv(#[from] csv::Error),

    #[error(transparent)]
    Json(#[from] serde_json::Error),
}

impl Error {
    /// True for failures that mean the discrete solution left its admissible state.
    pub fn is_blow_up(&self) -> bool {
        matches!(self, Error::BlowUp { .. } | Error::StateOutOfRange { .. })
    }
}
