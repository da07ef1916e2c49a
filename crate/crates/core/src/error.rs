use thiserror::Error;

/// Precondition failures for the exact computations.
///
/// Every message names the violated precondition so it can be shown to a
/// command-line user as a one-line diagnostic.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("invalid flip Stiefel parameters n={n}, 2k={frame}: requires 1 < 2k <= n")]
    InvalidFlip { n: u64, frame: u64 },

    #[error("closed-form cohomology of FV_{{{n},{frame}}} requires 2k < n (got 2k = n)")]
    SquareFrame { n: u64, frame: u64 },

    #[error("invalid projective Stiefel parameters n={n}, k={k}: requires 1 <= k <= n")]
    InvalidProjective { n: u64, k: u64 },

    #[error("invalid sphere S^{{n-1}} with n={n}: requires n >= 1")]
    InvalidSphere { n: u64 },

    #[error("invalid SO(n) with n={n}: requires n >= 2")]
    InvalidSpecialOrthogonal { n: u64 },

    #[error("invalid O(2k) with 2k={frame}: requires an even value >= 2")]
    InvalidOrthogonal { frame: u64 },

    #[error("no exponent j in ({lo}, {hi}] with odd binomial coefficient")]
    NoTruncation { lo: u64, hi: u64 },

    #[error("frame of {frame} exterior generators exceeds the supported limit of {limit}")]
    TooLarge { frame: u64, limit: u64 },

    #[error("malformed space spec `{0}`: expected flip:n,2k | pstiefel:n,k | sphere:n | so:n | o:2k")]
    MalformedSpace(String),
}

pub type Result<T> = std::result::Result<T, Error>;
