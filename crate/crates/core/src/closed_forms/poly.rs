//! Univariate polynomials in `q` with exact rational coefficients.

use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};

/// `sum_i coeffs[i] q^i`; no trailing zero coefficients.
#[derive(Clone, Debug, PartialEq, Eq, Hash, Default)]
pub struct QPolynomial {
    coeffs: Vec<BigRational>,
}

impl QPolynomial {
    pub fn zero() -> Self {
        QPolynomial { coeffs: Vec::new() }
    }

    pub fn constant(c: BigRational) -> Self {
        QPolynomial { coeffs: vec![c] }.trimmed()
    }

    pub fn integer(c: i64) -> Self {
        Self::constant(BigRational::from_integer(BigInt::from(c)))
    }

    /// The indeterminate `q`.
    pub fn q() -> Self {
        QPolynomial { coeffs: vec![BigRational::zero(), BigRational::one()] }
    }

    pub fn from_coeffs(coeffs: Vec<BigRational>) -> Self {
        QPolynomial { coeffs }.trimmed()
    }

    fn trimmed(mut self) -> Self {
        while self.coeffs.last().is_some_and(|c| c.is_zero()) {
            self.coeffs.pop();
        }
        self
    }

    pub fn coeffs(&self) -> &[BigRational] {
        &self.coeffs
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    /// `None` for the zero polynomial.
    pub fn degree(&self) -> Option<usize> {
        self.coeffs.len().checked_sub(1)
    }

    pub fn leading_coefficient(&self) -> BigRational {
        self.coeffs.last().cloned().unwrap_or_else(BigRational::zero)
    }

    /// The constant value, if the polynomial has degree at most 0.
    pub fn as_constant(&self) -> Option<BigRational> {
        match self.coeffs.len() {
            0 => Some(BigRational::zero()),
            1 => Some(self.coeffs[0].clone()),
            _ => None,
        }
    }

    pub fn scale(&self, c: &BigRational) -> Self {
        QPolynomial { coeffs: self.coeffs.iter().map(|x| x * c).collect() }.trimmed()
    }

    pub fn pow(&self, e: u32) -> Self {
        let mut acc = Self::integer(1);
        for _ in 0..e {
            acc = &acc * self;
        }
        acc
    }

    /// `self (self - 1) ... (self - k + 1) / k!`.
    pub fn binomial(&self, k: u32) -> Self {
        let mut acc = Self::integer(1);
        let mut fact = BigInt::one();
        for i in 0..k {
            acc = &acc * &(self - &Self::integer(i as i64));
            fact *= BigInt::from(i + 1);
        }
        acc.scale(&BigRational::new(BigInt::one(), fact))
    }

    /// Horner evaluation.
    pub fn eval(&self, q: &BigRational) -> BigRational {
        self.coeffs.iter().rev().fold(BigRational::zero(), |acc, c| acc * q + c)
    }

    pub fn eval_int(&self, q: u64) -> BigRational {
        self.eval(&BigRational::from_integer(BigInt::from(q)))
    }
}

impl Add for &QPolynomial {
    type Output = QPolynomial;
    fn add(self, rhs: &QPolynomial) -> QPolynomial {
        let len = self.coeffs.len().max(rhs.coeffs.len());
        let zero = BigRational::zero();
        let coeffs =
            (0..len).map(|i| self.coeffs.get(i).unwrap_or(&zero) + rhs.coeffs.get(i).unwrap_or(&zero)).collect();
        QPolynomial { coeffs }.trimmed()
    }
}

impl Neg for &QPolynomial {
    type Output = QPolynomial;
    fn neg(self) -> QPolynomial {
        QPolynomial { coeffs: self.coeffs.iter().map(|c| -c).collect() }
    }
}

impl Sub for &QPolynomial {
    type Output = QPolynomial;
    fn sub(self, rhs: &QPolynomial) -> QPolynomial {
        self + &(-rhs)
    }
}

impl Mul for &QPolynomial {
    type Output = QPolynomial;
    fn mul(self, rhs: &QPolynomial) -> QPolynomial {
        if self.is_zero() || rhs.is_zero() {
            return QPolynomial::zero();
        }
        let mut coeffs = vec![BigRational::zero(); self.coeffs.len() + rhs.coeffs.len() - 1];
        for (i, a) in self.coeffs.iter().enumerate() {
            for (j, b) in rhs.coeffs.iter().enumerate() {
                coeffs[i + j] += a * b;
            }
        }
        QPolynomial { coeffs }.trimmed()
    }
}

impl fmt::Display for QPolynomial {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero() {
            return write!(f, "0");
        }
        let mut first = true;
        for (i, c) in self.coeffs.iter().enumerate().rev() {
            if c.is_zero() {
                continue;
            }
            let sign = if c.is_negative() { "-" } else { "+" };
            if first {
                if c.is_negative() {
                    write!(f, "-")?;
                }
            } else {
                write!(f, " {sign} ")?;
            }
            first = false;
            let a = c.abs();
            match (i, a.is_one()) {
                (0, _) => write!(f, "{a}")?,
                (_, true) => {}
                _ => write!(f, "{a}*")?,
            }
            match i {
                0 => {}
                1 => write!(f, "q")?,
                _ => write!(f, "q^{i}")?,
            }
        }
        Ok(())
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    fn poly(cs: &[i64]) -> QPolynomial {
        QPolynomial::from_coeffs(cs.iter().map(|&c| BigRational::from_integer(c.into())).collect())
    }

    #[test]
    fn arithmetic_basics() {
        let p = &QPolynomial::q() + &QPolynomial::integer(1);
        let sq = p.pow(2);
        assert_eq!(sq, poly(&[1, 2, 1]));
        assert_eq!(sq.degree(), Some(2));
        assert_eq!((&sq - &sq).degree(), None);
        assert_eq!(sq.to_string(), "q^2 + 2*q + 1");
        assert_eq!(poly(&[0, -3]).to_string(), "-3*q");
    }

    #[test]
    fn binomial_matches_integer_binomials() {
        let c = QPolynomial::q().binomial(4);
        for n in 0u64..20 {
            let expected = if n < 4 { 0 } else { n * (n - 1) * (n - 2) * (n - 3) / 24 };
            assert_eq!(c.eval_int(n), BigRational::from_integer(expected.into()));
        }
        assert_eq!(QPolynomial::q().binomial(0), QPolynomial::integer(1));
    }

    proptest! {
        #[test]
        fn evaluation_is_a_ring_map(a in proptest::collection::vec(-50i64..50, 0..6),
                                    b in proptest::collection::vec(-50i64..50, 0..6),
                                    x in -20i64..20) {
            let (pa, pb) = (poly(&a), poly(&b));
            let x = BigRational::from_integer(x.into());
            prop_assert_eq!((&pa * &pb).eval(&x), pa.eval(&x) * pb.eval(&x));
            prop_assert_eq!((&pa + &pb).eval(&x), pa.eval(&x) + pb.eval(&x));
            prop_assert_eq!((&pa - &pb).eval(&x), pa.eval(&x) - pb.eval(&x));
        }
    }
}
