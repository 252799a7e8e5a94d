use thiserror::Error;

#[derive(Debug, Error)]
pub enum Error {
    #[error("malformed rational {0:?}")]
    BadRational(String),

    #[error("GNS vectors belong to different states ({0} vs {1})")]
    OwnerMismatch(String, String),

    #[error("canonical reduction requires a {expected} state, got {got}")]
    WrongStateKind { expected: &'static str, got: String },

    #[error("nonexistent observable: {0}")]
    NonexistentObservable(&'static str),

    #[error("vectors live in different representations ({0} vs {1})")]
    FlavorMismatch(&'static str, &'static str),

    #[error("eigenvalue iteration did not converge on a {0}x{0} Gram matrix")]
    EigenFailure(usize),

    #[error("invalid argument: {0}")]
    InvalidArgument(String),

    #[error("quadrature window [{x_min}, {x_max}] too small: {reason}")]
    WindowTooSmall { x_min: f64, x_max: f64, reason: String },

    #[error("shift {shift} exceeds a quarter of the window width {width}")]
    ShiftOutOfWindow { shift: f64, width: f64 },

    #[error("unknown state {0:?} (expected position:<λ>, momentum:<μ> or vacuum)")]
    UnknownState(String),

    #[error(transparent)]
    Json(#[from] serde_json::Error),
}

pub type Result<T, E = Error> = std::result::Result<T, E>;
