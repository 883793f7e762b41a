use thiserror::Error;

#[derive(Debug, Error)]
pub enum Error {
    #[error("signature mismatch: {0}")]
    SignatureMismatch(String),
    #[error("dimension mismatch: expected {expected}, got {got}")]
    Dimension { expected: usize, got: usize },
    #[error("input error: {0}")]
    Input(String),
    #[error("jacobi identity fails; [pi,pi] = {witness}")]
    NotJacobi { witness: String },
    #[error("not unimodular; witness {witness}")]
    NotUnimodular { witness: String },
    #[error("degenerate pairing")]
    DegeneratePairing,
}

pub type Result<T> = std::result::Result<T, Error>;
