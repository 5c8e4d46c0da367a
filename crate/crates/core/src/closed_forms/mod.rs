//! Closed-form counts as polynomials in `q`, enumerator transforms and the
//! assembly of closed-form second enumerators.

pub mod assemble;
pub mod parse;
pub mod poly;
pub mod registry;
pub mod transform;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Zero};

pub use assemble::{assemble_second_enumerator, derive_free_coefficients, PairCase};
pub use poly::QPolynomial;
pub use registry::{Family, Formula, Registry, Slot};
pub use transform::{macwilliams, macwilliams2, solve_low_coefficients, substitute, unsubstitute};

/// Exact value of a registered formula at `q`.
pub fn eval_formula(id: &str, q: u64) -> crate::Result<BigRational> {
    Registry::global().eval(id, q)
}

/// Derangements `D_0..=D_m`.
fn derangements(m: usize) -> Vec<BigInt> {
    let mut d = vec![BigInt::one(), BigInt::zero()];
    for i in 2..=m {
        let next = BigInt::from(i - 1) * (&d[i - 1] + &d[i - 2]);
        d.push(next);
    }
    d.truncate(m + 1);
    d
}

/// Proportion of permutations of `m` letters with exactly `k` fixed points.
pub fn fixed_point_proportion(k: usize, m: usize) -> BigRational {
    assert!(k <= m && m <= 12, "need 0 <= k <= m <= 12");
    let fact = |n: usize| (1..=n).fold(BigInt::one(), |acc, i| acc * i);
    let choose = fact(m) / (fact(k) * fact(m - k));
    BigRational::new(choose * &derangements(m)[m - k], fact(m))
}

/// `g_d(m)`: ordered pairs of nonzero dual codewords supported on `m`
/// collinear points whose supports cover all `m`.
pub fn collinear_pair_poly(d: u32, m: u32) -> QPolynomial {
    let f = |a: u32| parse::parse(&registry::collinear_full_support_expr(d, a)).expect("generated expression");
    let choose = |n: u32, k: u32| -> BigRational {
        let fact = |x: u32| (1..=x).fold(BigInt::one(), |acc, i| acc * i);
        BigRational::from_integer(fact(n) / (fact(k) * fact(n - k)))
    };
    let mut acc = QPolynomial::zero();
    for a in d + 2..=m {
        for b in d + 2..=m {
            if a + b < m {
                continue;
            }
            let weight = choose(m, a) * choose(a, b + a - m);
            acc = &acc + &(&f(a) * &f(b)).scale(&weight);
        }
    }
    acc
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn fixed_point_examples() {
        assert_eq!(fixed_point_proportion(9, 9), BigRational::new(1.into(), 362880.into()));
        assert!(fixed_point_proportion(8, 9).is_zero());
        assert_eq!(fixed_point_proportion(0, 9), BigRational::new(133496.into(), 362880.into()));
        for m in 0..=12 {
            let total: BigRational = (0..=m).map(|k| fixed_point_proportion(k, m)).sum();
            assert!(total.is_one());
        }
    }

    #[test]
    fn registry_has_the_full_inventory() {
        let reg = Registry::global();
        assert!(reg.len() >= 60, "{}", reg.len());
        assert!(reg.to_json().as_array().unwrap().len() == reg.len());
        assert!(matches!(eval_formula("nope", 3), Err(crate::Error::UnknownFormula(_))));
        assert!(matches!(eval_formula("c9_cubic_cubic", 2), Err(crate::Error::OutOfRange { .. })));
        assert!(reg.eval_unchecked("c9_cubic_cubic", 2).unwrap().is_zero());
    }

    #[test]
    fn spot_values() {
        let int = |v: i64| BigRational::from_integer(v.into());
        assert_eq!(eval_formula("c9_cubic_cubic", 3).unwrap(), int(624));
        assert!(eval_formula("c8_cubic_cubic", 3).unwrap().is_zero());
        assert_eq!(eval_formula("I9", 3).unwrap(), int(13));
        assert_eq!(eval_formula("I9", 4).unwrap(), int(1400));
        assert_eq!(eval_formula("B4_dual_conic", 3).unwrap(), int(26));
        assert_eq!(eval_formula("J8", 3).unwrap(), int(117));
        assert_eq!(eval_formula("J8", 4).unwrap(), int(12600));
        assert!(eval_formula("C_ge7", 3).unwrap().is_zero());
        assert!(eval_formula("triples332", 3).unwrap().is_zero());
    }

    /// Degree `top` with leading coefficient the fixed-point proportion, or
    /// lower degree where that proportion vanishes.
    fn check_main_terms(case: &str, m: usize, top: usize) {
        let reg = Registry::global();
        for k in 0..=m {
            let p = &reg.lookup(&format!("c{k}_{case}")).unwrap().poly;
            let share = fixed_point_proportion(k, m);
            if share.is_zero() {
                assert_eq!(p.degree(), Some(top - 1), "c{k}_{case}");
            } else {
                assert_eq!(p.degree(), Some(top), "c{k}_{case}");
                assert_eq!(p.leading_coefficient(), share, "c{k}_{case}");
            }
        }
    }

    #[test]
    fn free_pair_main_terms_are_fixed_point_proportions() {
        check_main_terms("cubic_cubic", 9, 20);
        check_main_terms("conic_cubic", 6, 16);
        check_main_terms("conic_conic", 4, 12);
        check_main_terms("affine_conic", 4, 12);
    }

    #[test]
    fn counts_are_nonnegative_integers_across_range() {
        let reg = Registry::global();
        for f in reg.formulas() {
            for q in f.q_min as u64..=64 {
                let v = reg.eval_count(&f.id, q).unwrap_or_else(|e| panic!("{}: {e}", f.id));
                assert!(v >= BigInt::zero(), "{} at q={q} is {v}", f.id);
            }
        }
    }

    #[test]
    fn listed_collinear_pair_counts_match_the_general_sum() {
        let reg = Registry::global();
        for m in 5..=9u32 {
            let general = collinear_pair_poly(3, m);
            assert_eq!(general, reg.lookup(&format!("g3_{m}")).unwrap().poly, "m={m}");
        }
    }

    #[test]
    fn common_line_pairs_extend_affine_conic_pairs() {
        // Pairs of cubics sharing only a line with q+3..q+5 common points are
        // the line times affine conic pairs with 2..4 common points.
        let reg = Registry::global();
        for q in 3u64..=20 {
            let n = BigRational::from_integer(BigInt::from(q * q + q + 1));
            for i in 2..=4 {
                let a = reg.eval(&format!("a_q{}_common", i + 1), q).unwrap();
                let c = reg.eval(&format!("c{i}_affine_conic"), q).unwrap();
                assert_eq!(a, &n * c, "q={q} i={i}");
            }
        }
    }
}
