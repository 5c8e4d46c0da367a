//! Class numbers of imaginary quadratic orders, the Kronecker symbol and the
//! distribution of Frobenius traces of elliptic curves over F_q, weighted by
//! inverse automorphism counts.

use num_bigint::BigInt;
use num_integer::{Integer, Roots};
use num_rational::BigRational;
use num_traits::{ToPrimitive, Zero};
use serde_json::{json, Value};

use crate::enumerator::WeightEnumerator;
use crate::error::{Error, Result};

fn is_discriminant(d: i64) -> bool {
    d < 0 && matches!(d.rem_euclid(4), 0 | 1)
}

/// Number of reduced primitive positive definite forms `(a, b, c)` with
/// `b^2 - 4ac = d`.
pub fn class_number(d: i64) -> Result<u64> {
    if !is_discriminant(d) {
        return Err(Error::InvalidDiscriminant(d));
    }
    let mut h = 0;
    let mut a = 1i64;
    while 3 * a * a <= -d {
        for b in -a..=a {
            let num = b * b - d;
            if num % (4 * a) != 0 {
                continue;
            }
            let c = num / (4 * a);
            if c < a || a.gcd(&b).gcd(&c) != 1 {
                continue;
            }
            if b < 0 && (-b == a || a == c) {
                continue;
            }
            h += 1;
        }
        a += 1;
    }
    Ok(h)
}

/// `h(d)` divided by half the number of units of the order; zero off the
/// discriminants.
pub fn weighted_class_number(d: i64) -> BigRational {
    if !is_discriminant(d) {
        return BigRational::zero();
    }
    let h = BigInt::from(class_number(d).expect("checked discriminant"));
    let w = match d {
        -3 => 3,
        -4 => 2,
        _ => 1,
    };
    BigRational::new(h, BigInt::from(w))
}

/// Hurwitz class number `H(delta) = sum_{f^2 | delta} h_w(delta / f^2)`.
pub fn hurwitz_h(delta: i64) -> Result<BigRational> {
    if !is_discriminant(delta) {
        return Err(Error::InvalidDiscriminant(delta));
    }
    let mut sum = BigRational::zero();
    let mut f = 1i64;
    while f * f <= -delta {
        if delta % (f * f) == 0 {
            sum += weighted_class_number(delta / (f * f));
        }
        f += 1;
    }
    Ok(sum)
}

/// The Kronecker symbol `(a / n)`, completely multiplicative in `n >= 1`.
pub fn kronecker(a: i64, n: u64) -> i32 {
    assert!(n >= 1, "kronecker symbol needs n >= 1");
    let mut result = 1;
    let mut rest = n;
    let mut p = 2u64;
    while rest > 1 {
        if p * p > rest {
            p = rest;
        }
        while rest % p == 0 {
            rest /= p;
            result *= prime_symbol(a, p);
        }
        p += 1;
    }
    result
}

fn prime_symbol(a: i64, p: u64) -> i32 {
    if p == 2 {
        return match a.rem_euclid(8) {
            0 | 2 | 4 | 6 => 0,
            1 | 7 => 1,
            _ => -1,
        };
    }
    let r = a.rem_euclid(p as i64) as u64;
    if r == 0 {
        return 0;
    }
    // Euler's criterion.
    let mut acc = 1u128;
    let (mut base, mut e) = (r as u128, (p - 1) / 2);
    while e > 0 {
        if e & 1 == 1 {
            acc = acc * base % p as u128;
        }
        base = base * base % p as u128;
        e >>= 1;
    }
    if acc == 1 {
        1
    } else {
        -1
    }
}

/// `(p, v)` with `q = p^v`.
fn prime_power(q: u64) -> Result<(u64, u32)> {
    if q < 2 {
        return Err(Error::NotPrimePower(q));
    }
    let p = (2..=q).find(|d| q % d == 0).expect("q >= 2");
    let mut v = 0;
    let mut rest = q;
    while rest % p == 0 {
        rest /= p;
        v += 1;
    }
    if rest != 1 {
        return Err(Error::NotPrimePower(q));
    }
    Ok((p, v))
}

fn ratio(num: i64, den: i64) -> BigRational {
    BigRational::new(BigInt::from(num), BigInt::from(den))
}

/// Probability that an elliptic curve over F_q, weighted by inverse
/// automorphism count, has trace `t`.
pub fn trace_probability(q: u64, t: i64) -> Result<BigRational> {
    let (p, v) = prime_power(q)?;
    let (qi, pi) = (q as i64, p as i64);
    let t2 = t * t;
    if t2 > 4 * qi {
        return Ok(BigRational::zero());
    }
    if t2 < 4 * qi && t % pi != 0 {
        return Ok(hurwitz_h(t2 - 4 * qi)? / ratio(2 * qi, 1));
    }
    let value = if v % 2 == 1 {
        if t == 0 {
            hurwitz_h(-4 * pi)? / ratio(2 * qi, 1)
        } else if t2 == 2 * qi && p == 2 {
            ratio(1, 4 * qi)
        } else if t2 == 3 * qi && p == 3 {
            ratio(1, 6 * qi)
        } else {
            BigRational::zero()
        }
    } else if t == 0 {
        ratio(1 - kronecker(-4, p) as i64, 4 * qi)
    } else if t2 == qi {
        ratio(1 - kronecker(-3, p) as i64, 6 * qi)
    } else if t2 == 4 * qi {
        ratio(pi - 1, 24 * qi)
    } else {
        BigRational::zero()
    };
    Ok(value)
}

/// Traces in the Hasse interval, `t^2 <= 4q`.
pub fn hasse_range(q: u64) -> impl Iterator<Item = i64> {
    let bound = Roots::sqrt(&(4 * q)) as i64;
    -bound..=bound
}

/// `(t, P_q(t))` over the Hasse interval.
pub fn trace_table(q: u64) -> Result<Vec<(i64, BigRational)>> {
    hasse_range(q).map(|t| Ok((t, trace_probability(q, t)?))).collect()
}

/// Trace table as JSON with rationals as `"num/den"` strings.
pub fn trace_table_json(q: u64) -> Result<Value> {
    let rows: Vec<Value> = trace_table(q)?
        .into_iter()
        .map(|(t, p)| json!({ "t": t, "probability": format!("{}/{}", p.numer(), p.denom()) }))
        .collect();
    Ok(json!({ "q": q, "traces": rows }))
}

/// `(q^3 - 1)(q^3 - q)(q^3 - q^2) q`, the number of smooth cubic forms.
pub fn smooth_form_factor(q: u64) -> BigInt {
    let q = BigInt::from(q);
    let q3 = &q * &q * &q;
    (&q3 - 1) * (&q3 - &q) * (&q3 - &q * &q) * &q
}

/// Predicted enumerator of smooth cubic forms: the coefficient of
/// `X^(q+1-t) Y^(q^2+t)` is [`smooth_form_factor`] times `P_q(t)`.
pub fn predict_smooth_enumerator(q: u64) -> Result<WeightEnumerator> {
    if q < 3 {
        return Err(Error::OutOfRange { id: "smooth cubic enumerator".into(), q: q as u32, q_min: 3 });
    }
    let n = (q * q + q + 1) as usize;
    let factor = BigRational::from_integer(smooth_form_factor(q));
    let mut w = WeightEnumerator::zero(n);
    for (t, prob) in trace_table(q)? {
        let value = &factor * prob;
        if !value.is_integer() {
            return Err(Error::NonIntegral {
                value: value.to_string(),
                context: format!("smooth cubics, q={q}, t={t}"),
            });
        }
        let weight = (q * q) as i64 + t;
        w.add_to(weight.to_usize().expect("nonnegative weight"), value.to_integer());
    }
    Ok(w)
}

#[cfg(test)]
mod tests {
    use super::*;
    use num_traits::One;

    #[test]
    fn class_number_examples() {
        assert_eq!(class_number(-3).unwrap(), 1);
        assert_eq!(class_number(-4).unwrap(), 1);
        assert_eq!(class_number(-23).unwrap(), 3);
        assert_eq!(class_number(-12).unwrap(), 1);
        assert_eq!(class_number(-15).unwrap(), 2);
        assert_eq!(class_number(-7).unwrap(), 1);
        assert!(class_number(-5).is_err());
        assert!(class_number(4).is_err());
    }

    /// Class numbers counted by brute force over all forms with bounded
    /// coefficients, identified up to SL_2(Z) via reduction.
    #[test]
    fn class_numbers_match_form_reduction() {
        fn reduce(mut a: i64, mut b: i64, mut c: i64) -> (i64, i64, i64) {
            loop {
                if c < a {
                    std::mem::swap(&mut a, &mut c);
                    b = -b;
                } else if b > a || b <= -a {
                    let k = (a - b).div_euclid(2 * a);
                    let nb = b + 2 * k * a;
                    c += k * (b + k * a);
                    b = nb;
                } else {
                    if (a == c) && b < 0 {
                        b = -b;
                    }
                    return (a, b, c);
                }
            }
        }
        for d in (-200i64..-2).filter(|d| matches!(d.rem_euclid(4), 0 | 1)) {
            let mut classes = std::collections::BTreeSet::new();
            for a in 1..=40i64 {
                for b in -40..=40i64 {
                    let num = b * b - d;
                    if num % (4 * a) != 0 {
                        continue;
                    }
                    let c = num / (4 * a);
                    if c > 0 && a.gcd(&b).gcd(&c) == 1 {
                        classes.insert(reduce(a, b, c));
                    }
                }
            }
            assert_eq!(class_number(d).unwrap() as usize, classes.len(), "d = {d}");
        }
    }

    #[test]
    fn hurwitz_examples() {
        assert_eq!(hurwitz_h(-3).unwrap(), ratio(1, 3));
        assert_eq!(hurwitz_h(-4).unwrap(), ratio(1, 2));
        assert_eq!(hurwitz_h(-12).unwrap(), ratio(4, 3));
        assert_eq!(hurwitz_h(-16).unwrap(), ratio(3, 2));
    }

    #[test]
    fn kronecker_examples() {
        assert_eq!(kronecker(3, 2), -1);
        assert_eq!(kronecker(4, 2), 0);
        assert_eq!(kronecker(-4, 5), 1);
        assert_eq!(kronecker(-3, 7), 1);
        assert_eq!(kronecker(2, 15), kronecker(2, 3) * kronecker(2, 5));
        for n in 1..50 {
            assert_eq!(kronecker(1, n), 1);
        }
    }

    #[test]
    fn trace_probability_examples() {
        assert_eq!(trace_probability(3, 0).unwrap(), ratio(2, 9));
        assert_eq!(trace_probability(3, 3).unwrap(), ratio(1, 18));
        assert_eq!(trace_probability(3, 4).unwrap(), BigRational::zero());
        assert_eq!(trace_probability(4, 4).unwrap(), ratio(1, 96));
        assert_eq!(trace_probability(4, 2).unwrap(), ratio(1, 12));
        assert_eq!(trace_probability(4, 0).unwrap(), ratio(1, 16));
    }

    #[test]
    fn probabilities_sum_to_one() {
        for q in (2u64..=64).filter(|&q| prime_power(q).is_ok()) {
            let sum: BigRational = trace_table(q).unwrap().into_iter().map(|(_, p)| p).sum();
            assert!(sum.is_one(), "q = {q}: {sum}");
        }
    }

    #[test]
    fn predicted_smooth_counts() {
        let w = predict_smooth_enumerator(3).unwrap();
        assert_eq!(w.coeff(9), &BigInt::from(7488));
        for q in [3u64, 4, 5, 7, 8, 9, 11, 13, 16, 25, 27, 32, 49, 64] {
            let w = predict_smooth_enumerator(q).unwrap();
            assert_eq!(w.total(), smooth_form_factor(q));
            assert!(w.is_nonnegative());
        }
        assert!(predict_smooth_enumerator(2).is_err());
        assert!(trace_table_json(3).unwrap()["traces"][0]["probability"].is_string());
    }
}
