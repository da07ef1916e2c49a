use thiserror::Error;

#[derive(Debug, Clone, PartialEq, Error)]
pub enum WitnessError {
    #[error("invalid witness problem: {0}")]
    InvalidProblem(String),

    #[error("frame is not orthonormal: max |V^T V - I| = {error:e} exceeds {tolerance:e}")]
    NotOrthonormal { error: f64, tolerance: f64 },

    #[error("retraction hit a rank-deficient matrix")]
    RankDeficient,

    #[error("shape mismatch: expected {expected:?}, found {found:?}")]
    ShapeMismatch {
        expected: (usize, usize),
        found: (usize, usize),
    },

    #[error("map returned a non-finite value on restart {restart}, iteration {iteration}")]
    NonFinite { restart: usize, iteration: usize },
}
