//! Exact mod-2 topology of the flip Stiefel manifolds `FV_{n,2k}`.
//!
//! `FV_{n,2k}` is the quotient of the Stiefel manifold `V_{n,2k}` by the free
//! involution that swaps the frame vectors pairwise,
//! `(v1, v2, ..., v2k) -> (v2, v1, ..., v2k, v2k-1)`.
//!
//! The crate computes
//! - the truncation exponent `N_F(n,2k)` and the additive cohomology
//!   ([`cohomology`]),
//! - an independent check of that cohomology through the Koszul model of
//!   the Serre spectral sequence over `RP^inf` ([`spectral`]),
//! - Stiefel-Whitney classes and the parallelizability / span classifier
//!   ([`char_classes`]),
//! - index ideals, equivariant-map obstructions and coincidence thresholds
//!   ([`index`]).
//!
//! Throughout, `k` denotes half the frame size: the manifold `FV_{n,2k}`
//! is addressed by `(n, k)`.

pub mod char_classes;
pub mod cohomology;
pub mod error;
pub mod gf2;
pub mod index;
pub mod matrix;
pub mod spectral;

pub use char_classes::{classify, residue_table, sw_total, Parallelizable, SpanReport, SwClass};
pub use cohomology::{betti, euler_characteristic, nf, np, presentation, CohomologyPresentation, FlipManifold, GradedDims};
pub use error::{Error, Result};
pub use gf2::{binom_mod2, neg_binom_mod2, poly_pow_trunc, Dyadic, TruncPoly2};
pub use index::{coincidence_threshold, index_exponent, nf_is_minimal, obstruct, rn, C2Space, IndexIdeal, ObstructionVerdict, Verdict};
pub use spectral::{crosscheck, e_infinity_dims, transgression_table, KoszulComplex, TransgressionTable};
