//! Truncation exponents and the additive mod-2 cohomology of `FV_{n,2k}`.
//!
//! For `2k < n`,
//!
//! ```text
//! H*(FV_{n,2k}; Z/2) = Z/2[x]/(x^N) (x) Lambda(y_j : n-2k <= j <= n-1, j != N-1)
//! ```
//!
//! additively, with `|x| = 1`, `|y_j| = j` and
//! `N = N_F(n,2k) = min { j : n-2k < j <= n, C(k+j-1, j) odd }`.

use serde::Serialize;

use crate::error::{Error, Result};
use crate::gf2::{binom_mod2, neg_binom_mod2};

/// The flip Stiefel manifold `FV_{n,2k}`, stored as `(n, k)`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize)]
pub struct FlipManifold {
    n: u64,
    k: u64,
}

impl FlipManifold {
    pub fn new(n: u64, k: u64) -> Result<Self> {
        check_flip(n, k)?;
        Ok(Self { n, k })
    }

    /// Builds from the frame size `2k` as written in `FV_{n,2k}`.
    pub fn from_frame(n: u64, frame: u64) -> Result<Self> {
        if !frame.is_multiple_of(2) {
            return Err(Error::InvalidFlip { n, frame });
        }
        Self::new(n, frame / 2)
    }

    pub fn n(&self) -> u64 {
        self.n
    }

    pub fn k(&self) -> u64 {
        self.k
    }

    pub fn frame(&self) -> u64 {
        2 * self.k
    }

    /// `k(2n - 2k - 1)`, the dimension of `V_{n,2k}` and of its quotient.
    pub fn dimension(&self) -> u64 {
        self.k * (2 * self.n - 2 * self.k - 1)
    }

    /// True when `2k = n`, i.e. the manifold is `O(n)/C_2`.
    pub fn is_square(&self) -> bool {
        2 * self.k == self.n
    }

    pub fn nf(&self) -> u64 {
        // parameters were validated on construction
        nf(self.n, self.k).expect("N_F exists for every valid flip manifold")
    }
}

fn check_flip(n: u64, k: u64) -> Result<()> {
    match k.checked_mul(2) {
        Some(frame) if k >= 1 && frame <= n => Ok(()),
        frame => Err(Error::InvalidFlip {
            n,
            frame: frame.unwrap_or(u64::MAX),
        }),
    }
}

/// `N_F(n,2k)`: least `j` in `(n-2k, n]` with `C(k+j-1, j)` odd.
pub fn nf(n: u64, k: u64) -> Result<u64> {
    check_flip(n, k)?;
    let lo = n - 2 * k;
    (lo + 1..=n)
        .find(|&j| neg_binom_mod2(k, j))
        .ok_or(Error::NoTruncation { lo, hi: n })
}

/// `N_P(n,k)`: truncation exponent of the projective Stiefel manifold
/// `PV_{n,k}`, the least `j` in `(n-k, n]` with `C(n, j)` odd.
pub fn np(n: u64, k: u64) -> Result<u64> {
    if k == 0 || k > n {
        return Err(Error::InvalidProjective { n, k });
    }
    // j = n always qualifies
    Ok((n - k + 1..=n).find(|&j| binom_mod2(n, j)).unwrap_or(n))
}

/// Truncation exponent plus exterior generator degrees.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct CohomologyPresentation {
    manifold: FlipManifold,
    nf: u64,
    generator_degrees: Vec<u64>,
}

impl CohomologyPresentation {
    pub fn manifold(&self) -> FlipManifold {
        self.manifold
    }

    pub fn nf(&self) -> u64 {
        self.nf
    }

    pub fn generator_degrees(&self) -> &[u64] {
        &self.generator_degrees
    }

    /// Degree of the top class `x^{N-1} * prod y_j`.
    pub fn top_degree(&self) -> u64 {
        self.nf - 1 + self.generator_degrees.iter().sum::<u64>()
    }
}

pub fn presentation(m: &FlipManifold) -> Result<CohomologyPresentation> {
    if m.is_square() {
        return Err(Error::SquareFrame {
            n: m.n,
            frame: m.frame(),
        });
    }
    let nf = m.nf();
    let generator_degrees = (m.n - 2 * m.k..m.n).filter(|&d| d != nf - 1).collect();
    Ok(CohomologyPresentation {
        manifold: *m,
        nf,
        generator_degrees,
    })
}

/// Dense graded dimensions, `dims[t] = dim H^t`.
#[derive(Debug, Clone, PartialEq, Eq, Hash, Serialize)]
pub struct GradedDims(Vec<u64>);

impl GradedDims {
    pub fn new(mut dims: Vec<u64>) -> Self {
        while dims.len() > 1 && dims.last() == Some(&0) {
            dims.pop();
        }
        Self(dims)
    }

    pub fn get(&self, t: usize) -> u64 {
        self.0.get(t).copied().unwrap_or(0)
    }

    pub fn as_slice(&self) -> &[u64] {
        &self.0
    }

    pub fn total(&self) -> u64 {
        self.0.iter().sum()
    }

    /// Highest degree with a nonzero entry.
    pub fn top_degree(&self) -> Option<usize> {
        self.0.iter().rposition(|&d| d != 0)
    }

    /// `dims[t] == dims[top - t]` for all `t`.
    pub fn is_palindromic(&self) -> bool {
        let Some(top) = self.top_degree() else {
            return true;
        };
        (0..=top).all(|t| self.0[t] == self.0[top - t])
    }
}

/// Poincare series of `Z/2[x]/(x^N) (x) Lambda(generators)`.
pub fn betti(p: &CohomologyPresentation) -> GradedDims {
    let mut series = vec![1u64; p.nf as usize];
    for &d in &p.generator_degrees {
        let d = d as usize;
        let mut next = vec![0u64; series.len() + d];
        for (t, &c) in series.iter().enumerate() {
            next[t] += c;
            next[t + d] += c;
        }
        series = next;
    }
    GradedDims::new(series)
}

pub fn euler_characteristic(g: &GradedDims) -> i64 {
    g.0.iter()
        .enumerate()
        .map(|(t, &d)| if t % 2 == 0 { d as i64 } else { -(d as i64) })
        .sum()
}
