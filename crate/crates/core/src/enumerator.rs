//! Homogeneous bivariate enumerators `sum_i A_i X^(n-i) Y^i` with exact
//! integer coefficients.

use std::ops::{Add, Sub};

use num_bigint::BigInt;
use num_traits::{Signed, Zero};
use serde_json::{json, Value};

/// Coefficient `A_i` multiplies `X^(n-i) Y^i`; for a code enumerator `i` is
/// the weight.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct WeightEnumerator {
    n: usize,
    counts: Vec<BigInt>,
}

/// The same algebra viewed as a homogeneous polynomial.
pub type BivariateEnumerator = WeightEnumerator;

impl WeightEnumerator {
    pub fn zero(n: usize) -> Self {
        WeightEnumerator { n, counts: vec![BigInt::zero(); n + 1] }
    }

    /// `X^n`.
    pub fn x_power(n: usize) -> Self {
        let mut w = Self::zero(n);
        w.counts[0] = BigInt::from(1);
        w
    }

    pub fn from_counts(counts: Vec<BigInt>) -> Self {
        assert!(!counts.is_empty(), "an enumerator has at least one coefficient");
        WeightEnumerator { n: counts.len() - 1, counts }
    }

    pub fn from_u64(counts: &[u64]) -> Self {
        Self::from_counts(counts.iter().map(|&c| BigInt::from(c)).collect())
    }

    /// Homogeneous degree.
    pub fn n(&self) -> usize {
        self.n
    }

    pub fn counts(&self) -> &[BigInt] {
        &self.counts
    }

    /// `A_i`, the coefficient of `X^(n-i) Y^i`.
    pub fn coeff(&self, i: usize) -> &BigInt {
        &self.counts[i]
    }

    /// Coefficient of `X^k Y^(n-k)`.
    pub fn coeff_x(&self, k: usize) -> &BigInt {
        &self.counts[self.n - k]
    }

    pub fn add_to(&mut self, i: usize, value: impl Into<BigInt>) {
        self.counts[i] += value.into();
    }

    /// Adds `value` to the coefficient of `X^k Y^(n-k)`.
    pub fn add_to_x(&mut self, k: usize, value: impl Into<BigInt>) {
        let i = self.n - k;
        self.counts[i] += value.into();
    }

    pub fn total(&self) -> BigInt {
        self.counts.iter().sum()
    }

    pub fn scale(&self, factor: &BigInt) -> Self {
        WeightEnumerator { n: self.n, counts: self.counts.iter().map(|c| c * factor).collect() }
    }

    pub fn is_nonnegative(&self) -> bool {
        self.counts.iter().all(|c| !c.is_negative())
    }

    /// Counts as decimal strings.
    pub fn to_json(&self) -> Value {
        json!({
            "n": self.n,
            "counts": self.counts.iter().map(|c| c.to_string()).collect::<Vec<_>>(),
        })
    }
}

impl Add for &WeightEnumerator {
    type Output = WeightEnumerator;
    fn add(self, rhs: &WeightEnumerator) -> WeightEnumerator {
        assert_eq!(self.n, rhs.n, "degree mismatch");
        WeightEnumerator { n: self.n, counts: self.counts.iter().zip(&rhs.counts).map(|(a, b)| a + b).collect() }
    }
}

impl Sub for &WeightEnumerator {
    type Output = WeightEnumerator;
    fn sub(self, rhs: &WeightEnumerator) -> WeightEnumerator {
        assert_eq!(self.n, rhs.n, "degree mismatch");
        WeightEnumerator { n: self.n, counts: self.counts.iter().zip(&rhs.counts).map(|(a, b)| a - b).collect() }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn indexing_conventions() {
        let mut w = WeightEnumerator::x_power(4);
        w.add_to_x(1, 5);
        assert_eq!(w.coeff(3), &BigInt::from(5));
        assert_eq!(w.coeff_x(4), &BigInt::from(1));
        assert_eq!(w.total(), BigInt::from(6));
        let d = &w - &WeightEnumerator::x_power(4);
        assert_eq!(d.total(), BigInt::from(5));
        assert_eq!(w.to_json()["counts"][3], "5");
    }
}
