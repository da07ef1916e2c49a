//! Index ideals of free `C_2`-actions on Stiefel manifolds.
//!
//! For every space handled here the index is a principal ideal `(x^e)` of
//! `H*(BC_2; Z/2) = Z/2[x]`, so ideal containment is a comparison of
//! exponents. An equivariant map `X -> Y` forces
//! `Index(Y) ⊆ Index(X)`, i.e. `e(Y) >= e(X)`; when that fails the map is
//! ruled out. The converse never holds in general, so the only verdicts are
//! "forbidden" and "unknown".

use std::fmt;
use std::str::FromStr;

use serde::Serialize;

use crate::cohomology::{nf, np, FlipManifold};
use crate::error::{Error, Result};
use crate::gf2::Dyadic;

/// A Stiefel manifold together with one of its two free involutions.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize)]
#[serde(tag = "kind", rename_all = "snake_case")]
pub enum C2Space {
    /// `V_{n,2k}` with the pairwise flip.
    FlipStiefel { n: u64, k: u64 },
    /// `V_{n,k}` with `v -> -v`.
    AntipodalStiefel { n: u64, k: u64 },
    /// `S^{n-1} = V_{n,1}` with the antipodal map.
    AntipodalSphere { n: u64 },
    /// `O(2k) = V_{2k,2k}` with the pairwise flip.
    FlipOrthogonal { k: u64 },
    /// `SO(n) = V_{n,n-1}` with `v -> -v`.
    AntipodalSO { n: u64 },
}

impl C2Space {
    pub fn validate(&self) -> Result<()> {
        match *self {
            C2Space::FlipStiefel { n, k } => FlipManifold::new(n, k).map(|_| ()),
            C2Space::AntipodalStiefel { n, k } => np(n, k).map(|_| ()),
            C2Space::AntipodalSphere { n } if n >= 1 => Ok(()),
            C2Space::AntipodalSphere { n } => Err(Error::InvalidSphere { n }),
            C2Space::FlipOrthogonal { k } if k >= 1 => Ok(()),
            C2Space::FlipOrthogonal { k } => Err(Error::InvalidOrthogonal { frame: 2 * k }),
            C2Space::AntipodalSO { n } if n >= 2 => Ok(()),
            C2Space::AntipodalSO { n } => Err(Error::InvalidSpecialOrthogonal { n }),
        }
    }
}

impl fmt::Display for C2Space {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match *self {
            C2Space::FlipStiefel { n, k } => write!(f, "flip:{n},{}", 2 * k),
            C2Space::AntipodalStiefel { n, k } => write!(f, "pstiefel:{n},{k}"),
            C2Space::AntipodalSphere { n } => write!(f, "sphere:{n}"),
            C2Space::FlipOrthogonal { k } => write!(f, "o:{}", 2 * k),
            C2Space::AntipodalSO { n } => write!(f, "so:{n}"),
        }
    }
}

impl FromStr for C2Space {
    type Err = Error;

    /// `flip:n,2k | pstiefel:n,k | sphere:n | so:n | o:2k`
    fn from_str(s: &str) -> Result<Self> {
        let malformed = || Error::MalformedSpace(s.to_string());
        let (kind, args) = s.trim().split_once(':').ok_or_else(malformed)?;
        let nums: Vec<u64> = args
            .split(',')
            .map(|a| a.trim().parse::<u64>())
            .collect::<std::result::Result<_, _>>()
            .map_err(|_| malformed())?;
        let space = match (kind, nums.as_slice()) {
            ("flip", &[n, frame]) => {
                if frame % 2 != 0 {
                    return Err(Error::InvalidFlip { n, frame });
                }
                C2Space::FlipStiefel { n, k: frame / 2 }
            }
            ("pstiefel", &[n, k]) => C2Space::AntipodalStiefel { n, k },
            ("sphere", &[n]) => C2Space::AntipodalSphere { n },
            ("so", &[n]) => C2Space::AntipodalSO { n },
            ("o", &[frame]) => {
                if frame % 2 != 0 || frame == 0 {
                    return Err(Error::InvalidOrthogonal { frame });
                }
                C2Space::FlipOrthogonal { k: frame / 2 }
            }
            _ => return Err(malformed()),
        };
        space.validate()?;
        Ok(space)
    }
}

/// The principal ideal `(x^exponent)`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize)]
pub struct IndexIdeal {
    pub exponent: u64,
}

impl IndexIdeal {
    /// `(x^a) ⊆ (x^b)` iff `a >= b`.
    pub fn is_contained_in(&self, other: &IndexIdeal) -> bool {
        self.exponent >= other.exponent
    }
}

impl fmt::Display for IndexIdeal {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "(x^{})", self.exponent)
    }
}

pub fn index_exponent(s: &C2Space) -> Result<IndexIdeal> {
    s.validate()?;
    let exponent = match *s {
        C2Space::FlipStiefel { n, k } => nf(n, k)?,
        C2Space::FlipOrthogonal { k } => nf(2 * k, k)?,
        C2Space::AntipodalStiefel { n, k } => np(n, k)?,
        C2Space::AntipodalSphere { n } => np(n, 1)?,
        C2Space::AntipodalSO { n } => np(n, n - 1)?,
    };
    Ok(IndexIdeal { exponent })
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum Verdict {
    Forbidden,
    Unknown,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize)]
pub struct ObstructionVerdict {
    pub verdict: Verdict,
    pub source_exp: u64,
    pub target_exp: u64,
}

/// Tests whether an equivariant map `source -> target` is ruled out by
/// index containment.
pub fn obstruct(source: &C2Space, target: &C2Space) -> Result<ObstructionVerdict> {
    let src = index_exponent(source)?;
    let dst = index_exponent(target)?;
    let verdict = if dst.is_contained_in(&src) {
        Verdict::Unknown
    } else {
        Verdict::Forbidden
    };
    Ok(ObstructionVerdict {
        verdict,
        source_exp: src.exponent,
        target_exp: dst.exponent,
    })
}

/// Largest `m` with `k*m < N_F(n,2k)`: every continuous `S^{n-1} -> R^m`
/// then has `k` mutually orthogonal pairs `v_{2i-1} ⟂ v_{2i}` with equal
/// values.
///
/// If `f-hat(v) = (f(v1)-f(v2), ..., f(v2k-1)-f(v2k))` never vanished it would
/// give an equivariant map to `S^{km-1}` and force `x^{km} = 0` in
/// `H*(FV_{n,2k})`. Applied to the width function of a convex body this
/// yields orthogonal splittings in which every body is inscribed in a
/// product of squares.
pub fn coincidence_threshold(n: u64, k: u64) -> Result<u64> {
    Ok((nf(n, k)? - 1) / k)
}

/// Offset in the three-pair threshold `floor((n - r_n - 1) / 3)`.
pub fn rn(n: u64) -> u64 {
    match n % 4 {
        1 | 2 => 5,
        0 => 4,
        _ => 3,
    }
}

/// Digit criterion for `N_F(n,2k) = n-2k+1`: the binary digits of
/// `n-2k+1` must all appear among those of `n-k`.
pub fn nf_is_minimal(n: u64, k: u64) -> Result<bool> {
    FlipManifold::new(n, k)?;
    let top = Dyadic::new(n - k);
    let bottom = Dyadic::new(n - 2 * k + 1);
    Ok(bottom.is_contained_in(&top))
}
