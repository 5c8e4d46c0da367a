//! Pair census: ordered pairs of nonzero forms of degrees `d` and `e`, split
//! by whether they share a component and by their number of common zeros.

use num_bigint::{BigInt, BigUint};
use serde_json::{json, Value};

use super::{pairs, with_word, Budget};
use crate::classify::{ComponentTable, CurveGeometry};
use crate::codes::{build_code, Evaluation};
use crate::engine::class_zero_masks;
use crate::enumerator::WeightEnumerator;
use crate::error::{Error, Result};
use crate::geometry::ClassSpace;
use crate::mask::{MaskWord, SupportMask};

/// Census of ordered pairs `(f, g)` of forms, indexed by the number `k` of
/// common zeros among the evaluation points.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CensusTable {
    pub q: u32,
    pub d: u32,
    pub e: u32,
    pub evaluation: Evaluation,
    /// Number of evaluation points.
    pub n: usize,
    pub dims: (usize, usize),
    /// Nonzero pairs without a common component.
    pub no_common: Vec<BigUint>,
    /// Non-proportional nonzero pairs with a common component.
    pub common: Vec<BigUint>,
    /// Pairs with at least one zero form.
    pub zero_pairs: Vec<BigUint>,
    /// Pairs of proportional nonzero forms (only when `d == e`).
    pub proportional: Vec<BigUint>,
}

impl CensusTable {
    /// `c_k`.
    pub fn c(&self, k: usize) -> &BigUint {
        &self.no_common[k]
    }

    pub fn total(&self) -> BigUint {
        [&self.no_common, &self.common, &self.zero_pairs, &self.proportional].iter().flat_map(|v| v.iter()).sum()
    }

    /// `q^(dim1 + dim2)`.
    pub fn expected_total(&self) -> BigUint {
        BigUint::from(self.q).pow((self.dims.0 + self.dims.1) as u32)
    }

    /// Second weight enumerator of the two evaluation codes, graded by the
    /// size `n - k` of the union of supports.
    pub fn second_enumerator(&self) -> WeightEnumerator {
        let mut w = WeightEnumerator::zero(self.n);
        for table in [&self.no_common, &self.common, &self.zero_pairs, &self.proportional] {
            for (k, c) in table.iter().enumerate() {
                w.add_to(self.n - k, BigInt::from(c.clone()));
            }
        }
        w
    }

    /// Common-component pairs as an enumerator `sum_k common_k X^k Y^(n-k)`.
    pub fn common_enumerator(&self) -> WeightEnumerator {
        let mut w = WeightEnumerator::zero(self.n);
        for (k, c) in self.common.iter().enumerate() {
            w.add_to_x(k, BigInt::from(c.clone()));
        }
        w
    }

    pub fn to_json(&self) -> Value {
        let strs = |v: &[BigUint]| v.iter().map(|c| c.to_string()).collect::<Vec<_>>();
        json!({
            "q": self.q,
            "d": self.d,
            "e": self.e,
            "evaluation": match self.evaluation { Evaluation::Projective => "projective", Evaluation::Affine => "affine" },
            "points": self.n,
            "no_common": strs(&self.no_common),
            "common": strs(&self.common),
            "zero_pairs": strs(&self.zero_pairs),
            "proportional": strs(&self.proportional),
            "total": self.total().to_string(),
        })
    }

    /// One row per `k`: `k,no_common,common,zero_pairs,proportional`.
    pub fn to_csv(&self) -> String {
        let mut out = String::from("k,no_common,common,zero_pairs,proportional\n");
        for k in 0..=self.n {
            out.push_str(&format!(
                "{k},{},{},{},{}\n",
                self.no_common[k], self.common[k], self.zero_pairs[k], self.proportional[k]
            ));
        }
        out
    }
}

fn pair_data<T: MaskWord>(zeros: &[u128], table: &ComponentTable, drop_line: u128) -> pairs::PairData<T> {
    let word = |m: u128| T::from_mask(SupportMask::from_u128(m));
    pairs::PairData {
        zeros: zeros.iter().map(|&z| word(z)).collect(),
        lines: table.lines.iter().map(|&l| word(l & !drop_line)).collect(),
        tags: table.tags.clone(),
    }
}

/// Exhaustive census of ordered pairs of degree-`d` and degree-`e` forms.
///
/// Affine evaluation treats forms as polynomials of degree at most `d` in
/// the affine plane `z = 1`; the line at infinity is then not a component.
pub fn pair_census(
    geometry: &CurveGeometry,
    d: u32,
    e: u32,
    evaluation: Evaluation,
    budget: &Budget,
) -> Result<CensusTable> {
    for deg in [d, e] {
        if !(1..=3).contains(&deg) {
            return Err(Error::UnsupportedDegree(deg));
        }
    }
    let plane = geometry.plane();
    let field = plane.field();
    let q = field.q();
    let (s1, s2) = (ClassSpace::for_degree(q, d), ClassSpace::for_degree(q, e));
    budget.check_pairs(s1.count(), s2.count())?;
    let code1 = build_code(plane, d, evaluation)?;
    let code2 = build_code(plane, e, evaluation)?;
    let t1 = geometry.component_table(d, budget)?;
    let t2 = if e == d { t1.clone() } else { geometry.component_table(e, budget)? };
    let (zeros1, zeros2, drop_line) = match evaluation {
        Evaluation::Projective => (t1.zeros.clone(), t2.zeros.clone(), 0),
        Evaluation::Affine => {
            let infinity = plane
                .index_of([crate::FieldElement::ZERO, crate::FieldElement::ZERO, crate::FieldElement::ONE])
                .expect("z = 0");
            let z1 = class_zero_masks(field, code1.generator());
            let z2 = if e == d { z1.clone() } else { class_zero_masks(field, code2.generator()) };
            (z1, z2, 1u128 << infinity)
        }
    };
    let n = code1.len();
    let bins = n + 1;
    let (free, shared) = with_word!(plane.n(), W => {
        let a = pair_data::<W>(&zeros1, &t1, drop_line);
        if d == e {
            let (f, s) = pairs::census_within(&a, bins);
            (f.into_iter().map(|x| 2 * x).collect::<Vec<_>>(), s.into_iter().map(|x| 2 * x).collect::<Vec<_>>())
        } else {
            let b = pair_data::<W>(&zeros2, &t2, drop_line);
            pairs::census_across(&a, &b, bins)
        }
    });
    let q1 = BigUint::from(q - 1);
    let q1sq = &q1 * &q1;
    let scale = |v: Vec<u64>| v.into_iter().map(|x| BigUint::from(x) * &q1sq).collect::<Vec<_>>();
    let mut zero_pairs = vec![BigUint::default(); bins];
    zero_pairs[n] += 1u32;
    for z in zeros1.iter().chain(&zeros2) {
        zero_pairs[z.count_ones() as usize] += &q1;
    }
    let mut proportional = vec![BigUint::default(); bins];
    if d == e {
        for z in &zeros1 {
            proportional[z.count_ones() as usize] += &q1sq;
        }
    }
    let table = CensusTable {
        q,
        d,
        e,
        evaluation,
        n,
        dims: (code1.dimension(), code2.dimension()),
        no_common: scale(free),
        common: scale(shared),
        zero_pairs,
        proportional,
    };
    debug_assert_eq!(table.total(), table.expected_total());
    Ok(table)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::engine::second_enumerator;
    use crate::geometry::HomogeneousForm;

    fn naive(g: &CurveGeometry, d: u32, e: u32) -> (Vec<u64>, Vec<u64>) {
        let field = g.field();
        let (s1, s2) = (ClassSpace::for_degree(field.q(), d), ClassSpace::for_degree(field.q(), e));
        let n = g.plane().n();
        let (mut free, mut shared) = (vec![0u64; n + 1], vec![0u64; n + 1]);
        let forms = |s: ClassSpace, deg| -> Vec<HomogeneousForm> {
            (0..s.count()).map(|i| HomogeneousForm::new(deg, s.coeffs_at(field, i)).unwrap()).collect()
        };
        let (f1, f2) = (forms(s1, d), forms(s2, e));
        let prep = |fs: &[HomogeneousForm]| -> Vec<(Vec<HomogeneousForm>, u128)> {
            fs.iter()
                .map(|f| {
                    let fac = g.factorize(f).unwrap();
                    (fac.factors.into_iter().map(|x| x.form).collect(), g.plane().zero_mask(f).as_u128())
                })
                .collect()
        };
        let (p1, p2) = (prep(&f1), prep(&f2));
        for (i, (a, za)) in p1.iter().enumerate() {
            for (j, (b, zb)) in p2.iter().enumerate() {
                if d == e && i == j {
                    continue;
                }
                let k = (za & zb).count_ones() as usize;
                if a.iter().any(|x| b.contains(x)) {
                    shared[k] += 1;
                } else {
                    free[k] += 1;
                }
            }
        }
        (free, shared)
    }

    #[test]
    fn census_matches_per_form_classification() {
        for (q, d, e) in [(2u64, 1, 2), (2, 2, 2), (3, 1, 1), (3, 2, 2), (3, 1, 2), (3, 2, 3)] {
            let g = CurveGeometry::for_q(q).unwrap();
            let t = pair_census(&g, d, e, Evaluation::Projective, &Budget::DEFAULT).unwrap();
            let (free, shared) = naive(&g, d, e);
            let q1sq = BigUint::from((q - 1) * (q - 1));
            let big = |v: Vec<u64>| v.into_iter().map(|x| BigUint::from(x) * &q1sq).collect::<Vec<_>>();
            assert_eq!(t.no_common, big(free), "q={q} d={d} e={e}");
            assert_eq!(t.common, big(shared));
            assert_eq!(t.total(), t.expected_total());
        }
    }

    #[test]
    fn census_reproduces_second_enumerator() {
        for (q, d, e, ev) in [
            (3u64, 2, 2, Evaluation::Projective),
            (4, 2, 2, Evaluation::Projective),
            (3, 2, 2, Evaluation::Affine),
            (4, 2, 2, Evaluation::Affine),
            (3, 2, 3, Evaluation::Projective),
        ] {
            let g = CurveGeometry::for_q(q).unwrap();
            let t = pair_census(&g, d, e, ev, &Budget::DEFAULT).unwrap();
            let c1 = build_code(g.plane(), d, ev).unwrap();
            let c2 = build_code(g.plane(), e, ev).unwrap();
            let w = second_enumerator(g.field(), &c1, &c2, &Budget::DEFAULT).unwrap();
            assert_eq!(t.second_enumerator(), w);
        }
    }

    #[test]
    fn conic_pairs_obey_bezout() {
        let g = CurveGeometry::for_q(5).unwrap();
        let t = pair_census(&g, 2, 2, Evaluation::Projective, &Budget::DEFAULT).unwrap();
        assert!(t.no_common[5..].iter().all(|c| *c == BigUint::default()));
        let csv = t.to_csv();
        assert!(csv.starts_with("k,no_common,common,zero_pairs,proportional\n"));
        assert_eq!(csv.lines().count(), 33);
        assert_eq!(t.to_json()["total"], BigUint::from(5u32).pow(12).to_string());
    }

    #[test]
    fn out_of_budget_is_rejected_before_work() {
        let g = CurveGeometry::for_q(5).unwrap();
        let err = pair_census(&g, 3, 3, Evaluation::Projective, &Budget::EXTENDED).unwrap_err();
        assert!(matches!(err, Error::BudgetExceeded { .. }));
    }
}
