use thiserror::Error;

pub type Result<T> = std::result::Result<T, Error>;

#[derive(Debug, Error)]
pub enum Error {
    #[error("invalid argument: {0}")]
    InvalidArgument(String),

    /// A matrix that must be unitary is not, `deviation` is ||A^dagger A - I||_F.
    #[error("{what} is not unitary (deviation {deviation:.3e})")]
    NotUnitary { what: String, deviation: f64 },

    #[error("{what} is not special-unitary (|det - 1| = {deviation:.3e})")]
    NotSpecialUnitary { what: String, deviation: f64 },

    #[error("invalid circuit: {0}")]
    InvalidCircuit(String),

    #[error("circuit JSON: {0}")]
    Json(#[from] serde_json::Error),
}
