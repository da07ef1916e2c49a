//! Stiefel-Whitney classes of `TFV_{n,2k}` and what they say about
//! parallelizability and span.
//!
//! The total class is `w(TFV_{n,2k}) = (1+x)^{k(n-k-1)}` in
//! `Z/2[x]/(x^{N_F})`. A nonzero `w_i` rules out parallelizability; the
//! converse is not available, so the only positive verdicts come from the
//! Lie-group quotients `FV_{n,n} = O(n)/C_2` (n even) and
//! `FV_{n,n-1} = SO(n)/C_2` (n odd).

use std::fmt;

use serde::Serialize;

use crate::cohomology::FlipManifold;
use crate::error::{Error, Result};
use crate::gf2::{binom_mod2, poly_pow_trunc, TruncPoly2};

/// Total Stiefel-Whitney class of the tangent bundle.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SwClass {
    manifold: FlipManifold,
    poly: TruncPoly2,
    exponent: u64,
}

impl SwClass {
    pub fn manifold(&self) -> FlipManifold {
        self.manifold
    }

    pub fn poly(&self) -> &TruncPoly2 {
        &self.poly
    }

    /// `k(n-k-1)`.
    pub fn exponent(&self) -> u64 {
        self.exponent
    }

    /// Whether `w_i` is nonzero; always false at or above the truncation.
    pub fn w(&self, i: usize) -> bool {
        self.poly.coeff(i)
    }

    /// Least `i >= 1` with `w_i != 0`.
    pub fn first_obstruction(&self) -> Option<usize> {
        self.poly.support().find(|&i| i >= 1)
    }
}

pub fn sw_total(m: &FlipManifold) -> Result<SwClass> {
    if m.is_square() {
        return Err(Error::SquareFrame {
            n: m.n(),
            frame: m.frame(),
        });
    }
    let cap = m.nf() as usize;
    let exponent = tangent_exponent(m);
    let poly = poly_pow_trunc(&TruncPoly2::one_plus_x(cap.max(2)).truncate(cap), exponent, cap);
    Ok(SwClass {
        manifold: *m,
        poly,
        exponent,
    })
}

fn tangent_exponent(m: &FlipManifold) -> u64 {
    m.k() * (m.n() - m.k() - 1)
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum Parallelizable {
    No,
    Yes,
    Unknown,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum SpanEquality {
    Yes,
    Unknown,
}

/// Manifolds that are quotients of a Lie group by a finite subgroup.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum SpecialCase {
    /// `FV_{n,n} = O(n)/C_2`, n even.
    OrthogonalEven,
    /// `FV_{n,n-1} = SO(n)/C_2`, n odd.
    SpecialOrthogonalOdd,
}

impl fmt::Display for SpecialCase {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            SpecialCase::OrthogonalEven => "FV_{n,n} = O(n)/C2 with n even",
            SpecialCase::SpecialOrthogonalOdd => "FV_{n,n-1} = SO(n)/C2 with n odd",
        })
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct SpanReport {
    pub manifold: FlipManifold,
    pub w1: bool,
    pub w2: bool,
    pub dim_mod4: u8,
    pub dim_mod8: u8,
    pub parallelizable: Parallelizable,
    pub span_equals_stable_span: SpanEquality,
    pub special_case: Option<SpecialCase>,
    /// Least `i >= 1` with `w_i != 0` below the truncation; absent when
    /// `2k = n`, where the class is not computed.
    pub first_obstruction: Option<u64>,
    /// `w_1` or `w_2` is nonzero below the truncation.
    pub low_degree_obstruction: bool,
    /// A Lie-group special case whose Stiefel-Whitney class is nonetheless
    /// nontrivial. The special case wins in `parallelizable`.
    pub whitney_conflict: bool,
}

pub fn classify(m: &FlipManifold) -> SpanReport {
    let (n, k) = (m.n(), m.k());
    let e = tangent_exponent(m);
    let w1 = binom_mod2(e, 1);
    let w2 = binom_mod2(e, 2);
    let dim = m.dimension();

    let special_case = if m.is_square() {
        Some(SpecialCase::OrthogonalEven)
    } else if n % 2 == 1 && 2 * k == n - 1 {
        Some(SpecialCase::SpecialOrthogonalOdd)
    } else {
        None
    };

    let (first_obstruction, low_degree_obstruction) = match sw_total(m) {
        Ok(sw) => (sw.first_obstruction().map(|i| i as u64), sw.w(1) || sw.w(2)),
        Err(_) => (None, false),
    };

    let parallelizable = match (special_case, first_obstruction) {
        (Some(_), _) => Parallelizable::Yes,
        (None, Some(_)) => Parallelizable::No,
        (None, None) => Parallelizable::Unknown,
    };

    SpanReport {
        manifold: *m,
        w1,
        w2,
        dim_mod4: (dim % 4) as u8,
        dim_mod8: (dim % 8) as u8,
        parallelizable,
        span_equals_stable_span: span_equality(n, k),
        special_case,
        first_obstruction,
        low_degree_obstruction,
        whitney_conflict: special_case.is_some() && first_obstruction.is_some(),
    }
}

/// Residue classes where span and stable span are known to agree.
fn span_equality(n: u64, k: u64) -> SpanEquality {
    let holds = match (k % 4, n % 4) {
        (0, _) | (2, _) => true,
        (1, 0) | (1, 2) => k > 1,
        (3, 0) => k > 3,
        _ => false,
    };
    if holds {
        SpanEquality::Yes
    } else {
        SpanEquality::Unknown
    }
}

/// Qualifier on a span = stable span conclusion.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum SpanProviso {
    Always,
    KGreaterThan(u64),
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize)]
pub struct Conclusion {
    pub not_parallelizable: bool,
    pub span_equals_stable_span: Option<SpanProviso>,
}

impl fmt::Display for Conclusion {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let mut parts = Vec::new();
        match self.span_equals_stable_span {
            Some(SpanProviso::Always) => parts.push("Span = Stable span".to_string()),
            Some(SpanProviso::KGreaterThan(b)) => parts.push(format!("Span = Stable span when k > {b}")),
            None => {}
        }
        if self.not_parallelizable {
            parts.push("not parallelizable".to_string());
        }
        if parts.is_empty() {
            f.write_str("no conclusion")
        } else {
            f.write_str(&parts.join("; "))
        }
    }
}

/// One `(k mod 4, n mod 4)` residue class, evaluated on its smallest member
/// with `2k < n`.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct ResidueRow {
    pub k_mod4: u8,
    pub n_mod4: u8,
    pub representative: FlipManifold,
    pub w1: bool,
    pub w2: bool,
    pub dim_mod8: u8,
    pub conclusion: Conclusion,
}

impl ResidueRow {
    pub fn dim_mod(&self, modulus: u8) -> u8 {
        debug_assert!(matches!(modulus, 1 | 2 | 4 | 8));
        self.dim_mod8 % modulus
    }
}

/// Smallest `FV_{n,2k}` with `2k < n`, `k >= min_k` in the given residue
/// class.
pub fn class_representative(k_mod4: u8, n_mod4: u8, min_k: u64) -> FlipManifold {
    let mut k = if k_mod4 == 0 { 4 } else { k_mod4 as u64 };
    while k < min_k {
        k += 4;
    }
    let mut n = 2 * k + 1;
    while n % 4 != n_mod4 as u64 {
        n += 1;
    }
    FlipManifold::new(n, k).expect("representative satisfies 2k < n")
}

pub fn residue_table() -> Vec<ResidueRow> {
    let mut rows = Vec::with_capacity(16);
    for k_mod4 in 0..4u8 {
        for n_mod4 in 0..4u8 {
            let rep = class_representative(k_mod4, n_mod4, 1);
            let report = classify(&rep);
            let k0 = rep.k();
            let span = (0..3)
                .map(|step| classify(&class_representative(k_mod4, n_mod4, k0 + 4 * step)).span_equals_stable_span)
                .position(|s| s == SpanEquality::Yes)
                .and_then(|first| match first {
                    0 => Some(SpanProviso::Always),
                    1 => Some(SpanProviso::KGreaterThan(k0)),
                    _ => None,
                });
            rows.push(ResidueRow {
                k_mod4,
                n_mod4,
                representative: rep,
                w1: report.w1,
                w2: report.w2,
                dim_mod8: report.dim_mod8,
                conclusion: Conclusion {
                    not_parallelizable: report.low_degree_obstruction,
                    span_equals_stable_span: span,
                },
            });
        }
    }
    rows
}
