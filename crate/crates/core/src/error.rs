use thiserror::Error;

pub type Result<T, E = Error> = std::result::Result<T, E>;

#[derive(Debug, Error)]
pub enum Error {
    #[error("invalid parameter: {0}")]
    InvalidParameter(String),

    #[error("polygon does not close: residual {residual:.3e}")]
    NotClosed { residual: f64 },

    #[error("outside the planar angle chart: {0}")]
    ChartDomain(String),

    #[error("degenerate configuration: {0}")]
    DegenerateConfiguration(String),

    #[error("domain error: {0}")]
    Domain(String),

    /// The Hamiltonian has no negative eigenvalue for this coupling.
    #[error("no discrete spectrum (alpha = {alpha}{})", critical_suffix(.alpha_crit))]
    NoDiscreteSpectrum { alpha: f64, alpha_crit: Option<f64> },

    #[error("numerical failure: {0}")]
    Numerical(String),

    #[error("sampler failure: {0}")]
    Sampler(String),

    #[error(transparent)]
    Io(#[from] std::io::Error),

    #[error(transparent)]
    Json(#[from] serde_json::Error),

    #[error(transparent)]
    Csv(#[from] csv::Error),
}

fn critical_suffix(alpha_crit: &Option<f64>) -> String {
    match alpha_crit {
        Some(a) => format!(", critical alpha = {a}"),
        None => String::new(),
    }
}

impl Error {
    pub(crate) fn param(msg: impl Into<String>) -> Self {
        Error::InvalidParameter(msg.into())
    }
}
