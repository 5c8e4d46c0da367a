//! MacWilliams substitutions `W(X + aY, X - Y)` and the exact solver for
//! unknown low-degree coefficients.

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Zero};

use crate::enumerator::WeightEnumerator;
use crate::error::{Error, Result};

/// Coefficients of `(1 + aT)^m` in `T`.
fn binomial_row(m: usize, a: &BigInt) -> Vec<BigInt> {
    let mut row = vec![BigInt::one()];
    for _ in 0..m {
        let mut next = vec![BigInt::zero(); row.len() + 1];
        for (i, c) in row.iter().enumerate() {
            next[i] += c;
            next[i + 1] += c * a;
        }
        row = next;
    }
    row
}

/// Table `t[j][i]`: coefficient of `X^(n-i) Y^i` in
/// `(X + aY)^(n-j) (X - Y)^j`.
pub fn substitution_table(n: usize, a: &BigInt) -> Vec<Vec<BigInt>> {
    let plus: Vec<Vec<BigInt>> = (0..=n).map(|m| binomial_row(m, a)).collect();
    let minus: Vec<Vec<BigInt>> = (0..=n).map(|m| binomial_row(m, &BigInt::from(-1))).collect();
    (0..=n)
        .map(|j| {
            let (p, m) = (&plus[n - j], &minus[j]);
            let mut out = vec![BigInt::zero(); n + 1];
            for (u, x) in p.iter().enumerate() {
                for (v, y) in m.iter().enumerate() {
                    out[u + v] += x * y;
                }
            }
            out
        })
        .collect()
}

/// `W(X + aY, X - Y)`.
pub fn substitute(w: &WeightEnumerator, a: &BigInt) -> WeightEnumerator {
    let n = w.n();
    let table = substitution_table(n, a);
    let mut out = vec![BigInt::zero(); n + 1];
    for (j, c) in w.counts().iter().enumerate() {
        if c.is_zero() {
            continue;
        }
        for (i, t) in table[j].iter().enumerate() {
            out[i] += c * t;
        }
    }
    WeightEnumerator::from_counts(out)
}

fn divide_exact(w: WeightEnumerator, divisor: &BigInt) -> Result<WeightEnumerator> {
    let mut out = Vec::with_capacity(w.n() + 1);
    for (i, c) in w.counts().iter().enumerate() {
        let (quot, rem) = c.div_rem(divisor);
        if !rem.is_zero() {
            return Err(Error::NonIntegral {
                value: format!("{c}/{divisor}"),
                context: format!("transformed coefficient of weight {i}"),
            });
        }
        out.push(quot);
    }
    Ok(WeightEnumerator::from_counts(out))
}

/// Enumerator of the dual code: `W(X + (q-1)Y, X - Y) / |C|`.
pub fn macwilliams(w: &WeightEnumerator, q: u64, code_size: &BigInt) -> Result<WeightEnumerator> {
    divide_exact(substitute(w, &BigInt::from(q - 1)), code_size)
}

/// Second enumerator of the dual pair: `W2(X + (q^2-1)Y, X - Y) / (|C1| |C2|)`.
pub fn macwilliams2(w2: &WeightEnumerator, q: u64, size_product: &BigInt) -> Result<WeightEnumerator> {
    divide_exact(substitute(w2, &BigInt::from(q * q - 1)), size_product)
}

/// Inverse of [`substitute`]: applying the substitution twice multiplies
/// by `(1 + a)^n`.
pub fn unsubstitute(w: &WeightEnumerator, a: &BigInt) -> Result<WeightEnumerator> {
    let scale = (a + 1u32).pow(w.n() as u32);
    divide_exact(substitute(w, a), &scale)
}

/// Solves for unknown coefficients `c_0..c_(u-1)` of `X^j Y^(n-j)` given the
/// rest of a primal enumerator and the `u` lowest dual coefficients.
///
/// `known` holds every primal term except the unknowns; the dual side is
/// `substitute(known + sum_j c_j X^j Y^(n-j), a) = scale * targets` in
/// weights `0..u`.
pub fn solve_low_coefficients(
    known: &WeightEnumerator,
    targets: &[BigInt],
    a: &BigInt,
    scale: &BigInt,
) -> Result<Vec<BigRational>> {
    let n = known.n();
    let u = targets.len();
    if u == 0 || u > n + 1 {
        return Err(Error::InvalidArgument(format!("{u} unknowns for degree {n}")));
    }
    let table = substitution_table(n, a);
    let image = substitute(known, a);
    // Unknown c_j sits at weight n - j.
    let mut m: Vec<Vec<BigRational>> = (0..u)
        .map(|i| {
            let mut row: Vec<BigRational> =
                (0..u).map(|j| BigRational::from_integer(table[n - j][i].clone())).collect();
            row.push(BigRational::from_integer(scale * &targets[i] - image.coeff(i)));
            row
        })
        .collect();
    gauss_solve(&mut m, u)
}

/// Gaussian elimination on an augmented `u x (u+1)` matrix.
pub(crate) fn gauss_solve(m: &mut [Vec<BigRational>], u: usize) -> Result<Vec<BigRational>> {
    let mut det = BigRational::one();
    for col in 0..u {
        let Some(pivot) = (col..u).find(|&r| !m[r][col].is_zero()) else {
            return Err(Error::SingularSystem { det: "0".into() });
        };
        if pivot != col {
            m.swap(pivot, col);
            det = -det;
        }
        det *= &m[col][col];
        let inv = BigRational::one() / &m[col][col];
        for x in m[col].iter_mut() {
            *x *= &inv;
        }
        for r in 0..u {
            if r != col && !m[r][col].is_zero() {
                let f = m[r][col].clone();
                let pivot_row = m[col].clone();
                for (x, p) in m[r].iter_mut().zip(&pivot_row) {
                    *x -= &f * p;
                }
            }
        }
    }
    debug_assert!(!det.is_zero());
    Ok(m.iter().map(|row| row[u].clone()).collect())
}
