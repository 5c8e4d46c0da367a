//! Exhaustive enumeration: Hamming and second weight enumerators,
//! support-subspace enumerators, cubic point scans and pair censuses.
//!
//! Work is done per projective class; every nonzero class stands for `q - 1`
//! codewords with the same support, and every pair of classes for
//! `(q - 1)^2` pairs of codewords.

pub mod census;
pub mod pairs;
pub mod walk;

use num_bigint::BigInt;

use crate::codes::LinearCode;
use crate::enumerator::WeightEnumerator;
use crate::error::{Error, Result};
use crate::geometry::{monomial_count, HomogeneousForm, Plane};
use crate::gf::Field;
use crate::linalg::Row;
use crate::mask::MaskWord;

pub use census::{pair_census, CensusTable};
pub use walk::{zero_bits, ClassWalker};

/// Work limits checked before any enumeration starts.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct Budget {
    /// Maximum `q^k` for a single code or form space.
    pub forms: u128,
    /// Maximum number of ordered class pairs in a quadratic scan.
    pub class_pairs: u128,
    /// Maximum number of point subsets in a configuration scan.
    pub subsets: u128,
}

impl Budget {
    pub const DEFAULT: Budget = Budget { forms: 1 << 32, class_pairs: 10_000_000_000, subsets: 1_000_000 };
    pub const EXTENDED: Budget = Budget { forms: 1 << 32, class_pairs: 200_000_000_000, subsets: 50_000_000 };

    pub fn check_forms(&self, q: u32, k: usize) -> Result<()> {
        let required = (q as u128).pow(k as u32);
        if required > self.forms {
            return Err(Error::BudgetExceeded { required, budget: self.forms });
        }
        Ok(())
    }

    pub fn check_pairs(&self, a: u64, b: u64) -> Result<()> {
        let required = a as u128 * b as u128;
        if required > self.class_pairs {
            return Err(Error::BudgetExceeded { required, budget: self.class_pairs });
        }
        Ok(())
    }

    /// Checks `C(n, k)` against the subset limit.
    pub fn check_subsets(&self, n: usize, k: usize) -> Result<()> {
        if k > n {
            return Ok(());
        }
        let required = (0..k as u128).fold(1u128, |acc, i| acc * (n as u128 - i) / (i + 1));
        if required > self.subsets {
            return Err(Error::BudgetExceeded { required, budget: self.subsets });
        }
        Ok(())
    }
}

impl Default for Budget {
    fn default() -> Self {
        Budget::DEFAULT
    }
}

/// Classes per parallel work unit of a walk.
const WALK_CHUNK: u64 = 1 << 14;

/// Zero masks of all classes of the row space of `rows` (width at most 128).
pub fn class_zero_masks(field: &Field, rows: &[Row]) -> Vec<u128> {
    let walker = ClassWalker::new(field, rows);
    let parts = walker.par_fold(
        WALK_CHUNK,
        Vec::new,
        |acc: &mut Vec<(u64, Vec<u128>)>, idx, sym| match acc.last_mut() {
            Some((start, v)) if *start + v.len() as u64 == idx => v.push(zero_bits(sym)),
            _ => acc.push((idx, vec![zero_bits(sym)])),
        },
        |mut a, b| {
            a.extend(b);
            a
        },
    );
    let mut parts = parts;
    parts.sort_by_key(|(start, _)| *start);
    parts.into_iter().flat_map(|(_, v)| v).collect()
}

fn weight_histogram(field: &Field, code: &LinearCode) -> Vec<u64> {
    let n = code.len();
    let walker = ClassWalker::new(field, code.generator());
    walker.par_fold(
        WALK_CHUNK,
        || vec![0u64; n + 1],
        |h, _, sym| h[n - zero_bits(sym).count_ones() as usize] += 1,
        |mut a, b| {
            a.iter_mut().zip(b).for_each(|(x, y)| *x += y);
            a
        },
    )
}

/// Hamming weight enumerator by exhaustive class enumeration.
pub fn hamming_enumerator(field: &Field, code: &LinearCode, budget: &Budget) -> Result<WeightEnumerator> {
    budget.check_forms(field.q(), code.dimension())?;
    let q1 = BigInt::from(field.q() - 1);
    let mut w = WeightEnumerator::x_power(code.len());
    for (wt, c) in weight_histogram(field, code).into_iter().enumerate() {
        w.add_to(wt, BigInt::from(c) * &q1);
    }
    Ok(w)
}

/// Runs `body` with the narrowest mask word holding `n` bits.
macro_rules! with_word {
    ($n:expr, $t:ident => $body:expr) => {
        if $n <= 32 {
            type $t = u32;
            $body
        } else if $n <= 64 {
            type $t = u64;
            $body
        } else {
            type $t = u128;
            $body
        }
    };
}
pub(crate) use with_word;

fn narrow<T: MaskWord>(masks: &[u128]) -> Vec<T> {
    masks.iter().map(|&m| T::from_mask(crate::mask::SupportMask::from_u128(m))).collect()
}

/// Second weight enumerator of `(c1, c2)`: `A_i` counts ordered pairs
/// `(x, y)` whose supports have a union of size `i`.
pub fn second_enumerator(field: &Field, c1: &LinearCode, c2: &LinearCode, budget: &Budget) -> Result<WeightEnumerator> {
    let n = c1.len();
    if c2.len() != n {
        return Err(Error::LengthMismatch { expected: n, actual: c2.len() });
    }
    let walk1 = ClassWalker::new(field, c1.generator());
    let walk2 = ClassWalker::new(field, c2.generator());
    budget.check_pairs(walk1.count(), walk2.count())?;
    budget.check_forms(field.q(), c1.dimension().max(c2.dimension()))?;
    let q1 = BigInt::from(field.q() - 1);
    let q1sq = &q1 * &q1;
    let m1 = class_zero_masks(field, c1.generator());
    let same = c1.generator() == c2.generator();
    let m2 = if same { m1.clone() } else { class_zero_masks(field, c2.generator()) };
    let mut w = WeightEnumerator::x_power(n);
    for m in m1.iter().chain(&m2) {
        w.add_to(n - m.count_ones() as usize, q1.clone());
    }
    let hist = with_word!(n, W => {
        let (a, b) = (narrow::<W>(&m1), narrow::<W>(&m2));
        if same {
            let mut h = pairs::intersect_within(&a, n + 1);
            h.iter_mut().for_each(|x| *x *= 2);
            for m in &m1 {
                h[m.count_ones() as usize] += 1;
            }
            h
        } else {
            pairs::intersect_across(&a, &b, n + 1)
        }
    });
    for (k, c) in hist.into_iter().enumerate() {
        w.add_to(n - k, BigInt::from(c) * &q1sq);
    }
    Ok(w)
}

/// Enumerators of the supports of 1- and 2-dimensional subcodes.
pub fn support_r_enumerators(
    field: &Field,
    code: &LinearCode,
    budget: &Budget,
) -> Result<(WeightEnumerator, WeightEnumerator)> {
    let n = code.len();
    let walker = ClassWalker::new(field, code.generator());
    budget.check_pairs(walker.count(), walker.count())?;
    let masks = class_zero_masks(field, code.generator());
    let mut w1 = WeightEnumerator::zero(n);
    for m in &masks {
        w1.add_to(n - m.count_ones() as usize, 1);
    }
    let hist = with_word!(n, W => pairs::intersect_within(&narrow::<W>(&masks), n + 1));
    // Each plane holds (q+1)q ordered pairs of distinct classes.
    let q = field.q() as u64;
    let per_plane = (q + 1) * q;
    let mut w2 = WeightEnumerator::zero(n);
    for (k, c) in hist.into_iter().enumerate() {
        let ordered = 2 * c;
        if ordered % per_plane != 0 {
            return Err(Error::NonIntegral {
                value: format!("{ordered}/{per_plane}"),
                context: "two-dimensional subcode count".into(),
            });
        }
        w2.add_to(n - k, ordered / per_plane);
    }
    Ok((w1, w2))
}

/// Per-class results of the exhaustive cubic scan, indexed by number of
/// rational points.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CubicScan {
    pub q: u32,
    /// Classes of nonzero cubic forms by number of zeros.
    pub all: Vec<u64>,
    /// Classes of smooth cubics by number of zeros.
    pub smooth: Vec<u64>,
}

impl CubicScan {
    /// Hamming enumerator of `C_{2,3}`.
    pub fn hamming(&self) -> WeightEnumerator {
        let n = self.all.len() - 1;
        let mut w = WeightEnumerator::x_power(n);
        for (z, &c) in self.all.iter().enumerate() {
            w.add_to(n - z, BigInt::from(c) * BigInt::from(self.q - 1));
        }
        w
    }

    /// Enumerator of smooth cubic forms.
    pub fn smooth_enumerator(&self) -> WeightEnumerator {
        let n = self.smooth.len() - 1;
        let mut w = WeightEnumerator::zero(n);
        for (z, &c) in self.smooth.iter().enumerate() {
            w.add_to(n - z, BigInt::from(c) * BigInt::from(self.q - 1));
        }
        w
    }
}

/// Visits every cubic class once, recording its number of rational points
/// and whether it is smooth.
///
/// A cubic is smooth iff it has a rational point, no rational singular
/// point and contains no rational line: a singular absolutely irreducible
/// cubic has a unique, hence rational, singular point; a cubic splitting
/// over F_q contains a rational line; three conjugate lines either meet in
/// a rational singular point or have no rational point at all.
pub fn cubic_scan(plane: &Plane, budget: &Budget) -> Result<CubicScan> {
    let field = plane.field();
    let q = field.q();
    let n = plane.n();
    budget.check_forms(q, monomial_count(3))?;
    let rows: Vec<Row> = (0..monomial_count(3))
        .map(|m| {
            let mut coeffs = vec![crate::gf::FieldElement::ZERO; 10];
            coeffs[m] = crate::gf::FieldElement::ONE;
            let f = HomogeneousForm::new(3, coeffs).expect("ten coefficients");
            let parts = [f.partial(field, 0), f.partial(field, 1), f.partial(field, 2)];
            let mut row: Row = (0..n).map(|p| plane.eval(&f, p)).collect();
            for g in &parts {
                row.extend((0..n).map(|p| plane.eval(g, p)));
            }
            row
        })
        .collect();
    let lines: Vec<u128> = plane.lines().iter().map(|l| l.mask.as_u128()).collect();
    let line_size = q + 1;
    let walker = ClassWalker::new(field, &rows);
    let (all, smooth) = walker.par_fold(
        WALK_CHUNK,
        || (vec![0u64; n + 1], vec![0u64; n + 1]),
        |(all, smooth), _, sym| {
            let z = zero_bits(&sym[..n]);
            let count = z.count_ones();
            all[count as usize] += 1;
            if z == 0 {
                return;
            }
            let sing = z & zero_bits(&sym[n..2 * n]) & zero_bits(&sym[2 * n..3 * n]) & zero_bits(&sym[3 * n..]);
            if sing != 0 {
                return;
            }
            if count >= line_size && lines.iter().any(|&l| l & !z == 0) {
                return;
            }
            smooth[count as usize] += 1;
        },
        |(mut a, mut b), (c, d)| {
            a.iter_mut().zip(c).for_each(|(x, y)| *x += y);
            b.iter_mut().zip(d).for_each(|(x, y)| *x += y);
            (a, b)
        },
    );
    Ok(CubicScan { q, all, smooth })
}
