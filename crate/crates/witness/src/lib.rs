//! Numerical search for frames `(v_1, ..., v_{2k})` whose consecutive pairs collide
//! under a map `f: S^{n-1} -> R^m`.
//!
//! The search minimizes `sum_i |f(v_{2i-1}) - f(v_{2i})|^2` over the Stiefel manifold
//! of orthonormal `n x 2k` frames by Riemannian gradient descent with a QR retraction.
//! When `m` exceeds the coincidence threshold of `(n, k)` the search may still
//! report convergence, but nothing guarantees a zero in that regime.

pub mod error;
pub mod frame;
pub mod map;
pub mod problem;
pub mod solver;

pub use error::WitnessError;
pub use frame::{orthonormality_error, retract, StiefelFrame, FRAME_TOLERANCE};
pub use map::{QuadraticMap, SphereMap};
pub use problem::WitnessProblem;
pub use solver::{
    descend, retract_or_perturb, riemannian_gradient, solve, Budget, Descent, WitnessResult,
    RESTART_BATCH,
};
