use thiserror::Error;

pub type Result<T> = std::result::Result<T, Error>;

#[derive(Debug, Error)]
pub enum Error {
    /// A point left the open unit disk, a radius went negative, or a similar
    /// violation of a geometric precondition.
    #[error("geometry domain error: {0}")]
    Domain(String),

    /// A quadrature rule failed to reach its target accuracy; carries the
    /// residual that was actually achieved.
    #[error("quadrature did not converge: {context} (achieved residual {achieved:.3e}, wanted {wanted:.3e})")]
    Quadrature {
        context: String,
        achieved: f64,
        wanted: f64,
    },

    /// An L_p norm whose quadrature tail estimate exceeds the tolerated
    /// fraction of the result; enlarging the domain radius is the fix.
    #[error("domain truncation too severe: tail estimate {tail:.3e} exceeds {limit:.3e} of the norm; increase the domain radius")]
    TailTooLarge { tail: f64, limit: f64 },

    /// Lattice construction could not certify the covering property.
    #[error("lattice covering certificate failed after {attempts} attempts (worst gap {worst_gap:.6} > {allowed:.6})")]
    CoveringFailed {
        attempts: u32,
        worst_gap: f64,
        allowed: f64,
    },

    /// The synthesis dictionary is numerically rank-deficient.
    #[error("ill-posed dictionary: Gram condition {cond:.3e} exceeds 1e12; use fewer or better-separated centers")]
    IllPosedDictionary { cond: f64 },

    #[error("invalid argument: {0}")]
    InvalidArgument(String),

    #[error("config error: {0}")]
    Config(String),

    #[error(transparent)]
    Io(#[from] std::io::Error),

    #[error(transparent)]
    Json(#[from] serde_json::Error),
}
