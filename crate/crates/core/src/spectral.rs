//! Independent computation of `H*(FV_{n,2k}; Z/2)` from the Serre spectral
//! sequence of `V_{n,2k} -> FV_{n,2k} -> RP^inf`.
//!
//! The `E_2` page is `Z/2[x] (x) H*(V_{n,2k})`, where the fibre cohomology has
//! a simple system of generators `z_j` in degrees `n-2k <= j <= n-1`. Each
//! `z_{j-1}` transgresses to `C(k+j-1, j) x^j`. All transgressions are applied
//! at once, as a Koszul differential
//!
//! ```text
//! d(x^a z_S) = sum_{j in S, c_{j+1} = 1} x^{a+j+1} z_{S \ {j}}
//! ```
//!
//! and the homology is read off degree by degree with exact GF(2) ranks.

use std::collections::BTreeMap;

use rayon::prelude::*;
use serde::Serialize;

use crate::cohomology::{betti, presentation, FlipManifold, GradedDims};
use crate::error::{Error, Result};
use crate::gf2::neg_binom_mod2;
use crate::matrix::Gf2Matrix;

const MAX_GENERATORS: u64 = 20;

/// Transgression coefficients `c_j = C(k+j-1, j) mod 2` for `n-2k < j <= n`.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct TransgressionTable {
    entries: BTreeMap<u64, bool>,
}

impl TransgressionTable {
    pub fn entries(&self) -> &BTreeMap<u64, bool> {
        &self.entries
    }

    /// `c_j`; zero outside the table's range.
    pub fn coefficient(&self, j: u64) -> bool {
        self.entries.get(&j).copied().unwrap_or(false)
    }

    /// First `j` with `c_j = 1`.
    pub fn first_nonzero(&self) -> Option<u64> {
        self.entries.iter().find(|(_, &c)| c).map(|(&j, _)| j)
    }
}

pub fn transgression_table(n: u64, k: u64) -> Result<TransgressionTable> {
    let m = FlipManifold::new(n, k)?;
    if m.is_square() {
        return Err(Error::SquareFrame { n, frame: 2 * k });
    }
    let entries = (n - 2 * k + 1..=n).map(|j| (j, neg_binom_mod2(k, j))).collect();
    Ok(TransgressionTable { entries })
}

/// A basis monomial `x^a z_S`; `generators` is a bitmask over the fibre
/// generators in ascending degree.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Monomial {
    pub x_power: u64,
    pub generators: u64,
}

/// `Z/2[x] (x) Lambda(z_{n-2k}, ..., z_{n-1})` graded by total degree.
#[derive(Debug, Clone)]
pub struct KoszulComplex {
    manifold: FlipManifold,
    degrees: Vec<u64>,
    max_degree: u64,
}

impl KoszulComplex {
    pub fn new(n: u64, k: u64) -> Result<Self> {
        let manifold = FlipManifold::new(n, k)?;
        if manifold.is_square() {
            return Err(Error::SquareFrame { n, frame: 2 * k });
        }
        if 2 * k > MAX_GENERATORS {
            return Err(Error::TooLarge {
                frame: 2 * k,
                limit: MAX_GENERATORS,
            });
        }
        Ok(Self {
            manifold,
            degrees: (n - 2 * k..n).collect(),
            max_degree: manifold.dimension(),
        })
    }

    pub fn manifold(&self) -> FlipManifold {
        self.manifold
    }

    /// Degrees of the fibre generators `z_j`, ascending.
    pub fn generator_degrees(&self) -> &[u64] {
        &self.degrees
    }

    /// Top degree of the manifold; homology vanishes above it.
    pub fn max_degree(&self) -> u64 {
        self.max_degree
    }

    fn mask_degree(&self, mask: u64) -> u64 {
        self.degrees
            .iter()
            .enumerate()
            .filter(|(i, _)| mask >> i & 1 == 1)
            .map(|(_, &d)| d)
            .sum()
    }

    /// Basis of total degree `t`, ordered lexicographically by
    /// `(a, S as a sorted index list)`.
    pub fn basis(&self, t: u64) -> Vec<Monomial> {
        let mut out: Vec<(u64, Vec<usize>, u64)> = (0..1u64 << self.degrees.len())
            .filter_map(|mask| {
                let d = self.mask_degree(mask);
                (d <= t).then(|| {
                    let idx = (0..self.degrees.len()).filter(|i| mask >> i & 1 == 1).collect();
                    (t - d, idx, mask)
                })
            })
            .collect();
        out.sort();
        out.into_iter()
            .map(|(x_power, _, generators)| Monomial { x_power, generators })
            .collect()
    }
}

/// Matrix of `d_t`: columns index the degree-`t` basis, rows the degree-`t+1`
/// basis.
pub fn differential_matrix(c: &KoszulComplex, tt: &TransgressionTable, t: u64) -> Gf2Matrix {
    let source = c.basis(t);
    let target = c.basis(t + 1);
    // each generator set occurs at most once per degree
    let position: std::collections::HashMap<u64, usize> =
        target.iter().enumerate().map(|(i, m)| (m.generators, i)).collect();
    let mut d = Gf2Matrix::zero(target.len(), source.len());
    for (col, m) in source.iter().enumerate() {
        for (i, &deg) in c.degrees.iter().enumerate() {
            if m.generators >> i & 1 == 1 && tt.coefficient(deg + 1) {
                let row = position[&(m.generators & !(1 << i))];
                debug_assert_eq!(target[row].x_power, m.x_power + deg + 1);
                d.flip(row, col);
            }
        }
    }
    d
}

/// Graded homology of the Koszul complex in degrees `0..=up_to`.
pub fn koszul_homology(c: &KoszulComplex, tt: &TransgressionTable, up_to: u64) -> GradedDims {
    let ranks: Vec<(usize, usize)> = (0..=up_to)
        .into_par_iter()
        .map(|t| {
            let d = differential_matrix(c, tt, t);
            (d.cols(), d.rank())
        })
        .collect();
    let dims = ranks
        .iter()
        .enumerate()
        .map(|(t, &(size, rank))| {
            let incoming = if t == 0 { 0 } else { ranks[t - 1].1 };
            (size - rank - incoming) as u64
        })
        .collect();
    GradedDims::new(dims)
}

/// Dimensions of `E_inf`, degree by degree up to the manifold dimension.
pub fn e_infinity_dims(n: u64, k: u64) -> Result<GradedDims> {
    let c = KoszulComplex::new(n, k)?;
    let tt = transgression_table(n, k)?;
    Ok(koszul_homology(&c, &tt, c.max_degree()))
}

/// True iff the spectral sequence reproduces the closed-form Betti numbers.
pub fn crosscheck(n: u64, k: u64) -> Result<bool> {
    let spectral = e_infinity_dims(n, k)?;
    let closed = betti(&presentation(&FlipManifold::new(n, k)?)?);
    Ok(spectral == closed)
}
