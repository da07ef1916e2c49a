//! Parity combinatorics over GF(2).
//!
//! Binomial coefficients are only ever needed modulo 2 here, so they reduce
//! to bit tests on the dyadic expansions of their arguments (Lucas). The
//! truncated polynomial ring `Z/2[x]/(x^cap)` carries Stiefel-Whitney
//! classes and index ideals.

use std::fmt;
use std::ops::{Add, Mul};

/// Dyadic expansion of a non-negative integer, least significant digit first.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct Dyadic {
    bits: Vec<bool>,
}

impl Dyadic {
    pub fn new(value: u64) -> Self {
        let len = (u64::BITS - value.leading_zeros()) as usize;
        let bits = (0..len).map(|i| (value >> i) & 1 == 1).collect();
        Self { bits }
    }

    /// Digit at position `i`; positions past the leading digit are zero.
    pub fn digit(&self, i: usize) -> bool {
        self.bits.get(i).copied().unwrap_or(false)
    }

    pub fn digits(&self) -> &[bool] {
        &self.bits
    }

    pub fn len(&self) -> usize {
        self.bits.len()
    }

    pub fn is_empty(&self) -> bool {
        self.bits.is_empty()
    }

    pub fn value(&self) -> u64 {
        self.bits
            .iter()
            .enumerate()
            .filter(|(_, &b)| b)
            .map(|(i, _)| 1u64 << i)
            .sum()
    }

    /// Digit-wise product `prod_i C(a_i, b_i)` mod 2.
    ///
    /// Equal to [`binom_mod2`] by Lucas' theorem; kept as the literal product
    /// form so the two can be compared.
    pub fn lucas_product(top: &Dyadic, bottom: &Dyadic) -> bool {
        let width = top.len().max(bottom.len());
        (0..width).all(|i| top.digit(i) || !bottom.digit(i))
    }

    /// True if some position carries a 1 in both expansions.
    pub fn shares_digit(&self, other: &Dyadic) -> bool {
        self.bits.iter().zip(&other.bits).any(|(&a, &b)| a && b)
    }

    /// True if every 1 of `self` is also a 1 of `other`.
    pub fn is_contained_in(&self, other: &Dyadic) -> bool {
        Self::lucas_product(other, self)
    }
}

impl fmt::Display for Dyadic {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.bits.is_empty() {
            return f.write_str("0");
        }
        for &b in self.bits.iter().rev() {
            f.write_str(if b { "1" } else { "0" })?;
        }
        Ok(())
    }
}

/// `C(a, b) mod 2`. Zero when `b > a`.
pub fn binom_mod2(a: u64, b: u64) -> bool {
    b & !a == 0
}

/// Parity of the coefficient of `x^r` in `(1+x)^(-k)`, i.e. `C(r+k-1, r) mod 2`.
pub fn neg_binom_mod2(k: u64, r: u64) -> bool {
    debug_assert!(k >= 1);
    let top = r as u128 + k as u128 - 1;
    (r as u128) & !top == 0
}

const WORD: usize = 64;

/// A polynomial in `Z/2[x]/(x^cap)`, coefficients packed into words.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct TruncPoly2 {
    cap: usize,
    words: Vec<u64>,
}

impl TruncPoly2 {
    pub fn zero(cap: usize) -> Self {
        assert!(cap >= 1, "truncation exponent must be positive");
        Self {
            cap,
            words: vec![0; cap.div_ceil(WORD)],
        }
    }

    pub fn one(cap: usize) -> Self {
        let mut p = Self::zero(cap);
        p.set(0, true);
        p
    }

    /// `x^i`, which is zero when `i >= cap`.
    pub fn monomial(i: usize, cap: usize) -> Self {
        let mut p = Self::zero(cap);
        if i < cap {
            p.set(i, true);
        }
        p
    }

    /// `1 + x`.
    pub fn one_plus_x(cap: usize) -> Self {
        &Self::one(cap) + &Self::monomial(1, cap)
    }

    /// Builds from a coefficient list; entries at degree `>= cap` are dropped.
    pub fn from_coeffs(coeffs: &[bool], cap: usize) -> Self {
        let mut p = Self::zero(cap);
        for (i, &c) in coeffs.iter().enumerate().take(cap) {
            p.set(i, c);
        }
        p
    }

    pub fn cap(&self) -> usize {
        self.cap
    }

    pub fn coeff(&self, i: usize) -> bool {
        i < self.cap && (self.words[i / WORD] >> (i % WORD)) & 1 == 1
    }

    fn set(&mut self, i: usize, value: bool) {
        let mask = 1u64 << (i % WORD);
        if value {
            self.words[i / WORD] |= mask;
        } else {
            self.words[i / WORD] &= !mask;
        }
    }

    pub fn coeffs(&self) -> Vec<bool> {
        (0..self.cap).map(|i| self.coeff(i)).collect()
    }

    pub fn is_zero(&self) -> bool {
        self.words.iter().all(|&w| w == 0)
    }

    /// Degree of the highest nonzero term, `None` for the zero polynomial.
    pub fn degree(&self) -> Option<usize> {
        self.words
            .iter()
            .enumerate()
            .rev()
            .find(|(_, &w)| w != 0)
            .map(|(i, &w)| i * WORD + (WORD - 1 - w.leading_zeros() as usize))
    }

    /// Indices of the nonzero coefficients, ascending.
    pub fn support(&self) -> impl Iterator<Item = usize> + '_ {
        (0..self.cap).filter(move |&i| self.coeff(i))
    }

    /// `self * x^shift`, truncated.
    pub fn shifted(&self, shift: usize) -> Self {
        let mut out = Self::zero(self.cap);
        if shift >= self.cap {
            return out;
        }
        let (word_shift, bit_shift) = (shift / WORD, shift % WORD);
        for i in (word_shift..out.words.len()).rev() {
            let src = i - word_shift;
            let mut w = self.words[src] << bit_shift;
            if bit_shift != 0 && src > 0 {
                w |= self.words[src - 1] >> (WORD - bit_shift);
            }
            out.words[i] = w;
        }
        out.clear_tail();
        out
    }

    fn clear_tail(&mut self) {
        let used = self.cap % WORD;
        if used != 0 {
            let last = self.words.len() - 1;
            self.words[last] &= (1u64 << used) - 1;
        }
    }

    pub fn pow(&self, e: u64) -> Self {
        poly_pow_trunc(self, e, self.cap)
    }

    /// Reinterpret in `Z/2[x]/(x^cap)`; only shrinking drops information.
    pub fn truncate(&self, cap: usize) -> Self {
        let coeffs: Vec<bool> = self.coeffs();
        Self::from_coeffs(&coeffs, cap)
    }
}

impl fmt::Debug for TruncPoly2 {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "TruncPoly2({self} mod x^{})", self.cap)
    }
}

impl fmt::Display for TruncPoly2 {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let terms: Vec<String> = self
            .support()
            .map(|i| match i {
                0 => "1".to_string(),
                1 => "x".to_string(),
                _ => format!("x^{i}"),
            })
            .collect();
        if terms.is_empty() {
            f.write_str("0")
        } else {
            f.write_str(&terms.join(" + "))
        }
    }
}

impl Add for &TruncPoly2 {
    type Output = TruncPoly2;

    fn add(self, rhs: &TruncPoly2) -> TruncPoly2 {
        assert_eq!(self.cap, rhs.cap, "truncation exponents differ");
        let words = self.words.iter().zip(&rhs.words).map(|(a, b)| a ^ b).collect();
        TruncPoly2 {
            cap: self.cap,
            words,
        }
    }
}

impl Mul for &TruncPoly2 {
    type Output = TruncPoly2;

    fn mul(self, rhs: &TruncPoly2) -> TruncPoly2 {
        assert_eq!(self.cap, rhs.cap, "truncation exponents differ");
        let mut acc = TruncPoly2::zero(self.cap);
        for i in self.support() {
            let term = rhs.shifted(i);
            for (a, t) in acc.words.iter_mut().zip(&term.words) {
                *a ^= t;
            }
        }
        acc
    }
}

/// `base^e` in `Z/2[x]/(x^cap)` by square-and-multiply.
pub fn poly_pow_trunc(base: &TruncPoly2, e: u64, cap: usize) -> TruncPoly2 {
    let mut square = base.truncate(cap);
    let mut acc = TruncPoly2::one(cap);
    let mut e = e;
    while e > 0 {
        if e & 1 == 1 {
            acc = &acc * &square;
        }
        e >>= 1;
        if e > 0 {
            square = &square * &square;
        }
    }
    acc
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    fn pascal_mod2(rows: usize) -> Vec<Vec<bool>> {
        let mut table: Vec<Vec<bool>> = Vec::with_capacity(rows + 1);
        table.push(vec![true]);
        for a in 1..=rows {
            let prev = &table[a - 1];
            let mut row = vec![true; a + 1];
            for b in 1..a {
                row[b] = prev[b - 1] ^ prev[b];
            }
            table.push(row);
        }
        table
    }

    #[test]
    fn binom_examples() {
        let pascal = pascal_mod2(16);
        assert!(binom_mod2(9, 0));
        assert!(pascal[7][3]);
        assert!(binom_mod2(7, 3));
        // C(10,2) = 45 is odd
        assert!(pascal[10][2]);
        assert!(binom_mod2(10, 2));
        assert!(!pascal[10][3]);
        assert!(!binom_mod2(10, 3));
        assert!(!binom_mod2(3, 5));
    }

    #[test]
    fn binom_matches_pascal_up_to_4096() {
        let pascal = pascal_mod2(4096);
        for (a, row) in pascal.iter().enumerate() {
            for (b, &bit) in row.iter().enumerate() {
                assert_eq!(binom_mod2(a as u64, b as u64), bit, "C({a},{b})");
            }
        }
    }

    #[test]
    fn lucas_product_agrees_with_bit_test() {
        for a in 0..300u64 {
            for b in 0..300u64 {
                assert_eq!(
                    Dyadic::lucas_product(&Dyadic::new(a), &Dyadic::new(b)),
                    binom_mod2(a, b)
                );
            }
        }
    }

    #[test]
    fn neg_binom_examples() {
        let pascal = pascal_mod2(16);
        for r in 0..40 {
            assert!(neg_binom_mod2(1, r));
        }
        // C(4,3) = 4, C(7,4) = 35
        assert!(!pascal[4][3]);
        assert!(!neg_binom_mod2(2, 3));
        assert!(pascal[7][4]);
        assert!(neg_binom_mod2(4, 4));
    }

    #[test]
    fn neg_binom_is_series_of_inverse_power() {
        // (1+x)^k * sum_r C(r+k-1,r) x^r == 1 mod x^cap
        let cap = 96;
        for k in 1..40u64 {
            let series: Vec<bool> = (0..cap as u64).map(|r| neg_binom_mod2(k, r)).collect();
            let inv = TruncPoly2::from_coeffs(&series, cap);
            let power = TruncPoly2::one_plus_x(cap).pow(k);
            assert_eq!(&power * &inv, TruncPoly2::one(cap), "k={k}");
        }
    }

    #[test]
    fn dyadic_roundtrip_and_display() {
        assert!(Dyadic::new(0).is_empty());
        assert_eq!(Dyadic::new(0).value(), 0);
        let d = Dyadic::new(0b10110);
        assert_eq!(d.to_string(), "10110");
        assert_eq!(*d.digits().last().unwrap(), true);
        assert!(!d.digit(0) && d.digit(1) && !d.digit(40));
    }

    #[test]
    fn pow_examples() {
        let p = poly_pow_trunc(&TruncPoly2::one_plus_x(4), 3, 4);
        assert_eq!(p.coeffs(), vec![true, true, true, true]);
        let q = TruncPoly2::from_coeffs(&[false, true, true], 5);
        assert_eq!(poly_pow_trunc(&q, 0, 5), TruncPoly2::one(5));
        let r = poly_pow_trunc(&TruncPoly2::one_plus_x(3), 4, 3);
        assert_eq!(r, TruncPoly2::one(3));
    }

    #[test]
    fn pow_of_one_plus_x_is_binomial_row() {
        for e in 0..=512u64 {
            let cap = 140;
            let p = poly_pow_trunc(&TruncPoly2::one_plus_x(cap), e, cap);
            for i in 0..cap {
                assert_eq!(p.coeff(i), binom_mod2(e, i as u64), "e={e} i={i}");
            }
        }
    }

    #[test]
    fn x_to_cap_vanishes() {
        for cap in 1..200 {
            let x = TruncPoly2::monomial(1, cap.max(2)).truncate(cap);
            assert!(x.pow(cap as u64).is_zero());
            assert!(TruncPoly2::monomial(cap, cap).is_zero());
        }
    }

    #[test]
    fn degree_and_display() {
        let p = TruncPoly2::from_coeffs(&[true, false, true], 130);
        assert_eq!(p.degree(), Some(2));
        assert_eq!(p.to_string(), "1 + x^2");
        assert_eq!(TruncPoly2::zero(3).degree(), None);
        assert_eq!(TruncPoly2::monomial(127, 130).degree(), Some(127));
        assert_eq!(TruncPoly2::zero(2).to_string(), "0");
    }

    fn poly(cap: usize) -> impl Strategy<Value = TruncPoly2> {
        proptest::collection::vec(any::<bool>(), cap).prop_map(move |c| TruncPoly2::from_coeffs(&c, cap))
    }

    proptest! {
        #[test]
        fn ring_laws((a, b, c) in (1usize..150).prop_flat_map(|cap| (poly(cap), poly(cap), poly(cap)))) {
            prop_assert_eq!(&(&a * &b) * &c, &a * &(&b * &c));
            prop_assert_eq!(&a * &(&b + &c), &(&a * &b) + &(&a * &c));
            prop_assert_eq!(&a * &b, &b * &a);
            prop_assert!((&a + &a).is_zero());
        }

        #[test]
        fn vandermonde_parity(a in 0u64..=64, b in 0u64..=64, c in 0u64..=64) {
            let sum = (0..=c).filter(|&j| binom_mod2(a, j) && binom_mod2(b, c - j)).count() % 2 == 1;
            prop_assert_eq!(binom_mod2(a + b, c), sum);
        }

        #[test]
        fn shift_matches_monomial_product(p in poly(100), s in 0usize..120) {
            prop_assert_eq!(p.shifted(s), &p * &TruncPoly2::monomial(s, 100));
        }
    }
}
