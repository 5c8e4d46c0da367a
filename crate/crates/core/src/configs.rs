//! Point sets that fail to impose independent conditions on conics and
//! cubics: rank tests, configuration tags and exhaustive subset counts.

use std::collections::BTreeMap;
use std::fmt;

use num_bigint::BigInt;
use rayon::prelude::*;
use serde::Serialize;

use crate::classify::{ConicClass, CurveGeometry, FormKind};
use crate::closed_forms::registry::{collinear_full_support_expr, integral};
use crate::closed_forms::{collinear_pair_poly, parse, Registry};
use crate::engine::Budget;
use crate::error::{Error, Result};
use crate::geometry::{monomial_count, HomogeneousForm, Plane};
use crate::gf::{Field, FieldElement};
use crate::linalg::{nullspace, rank, Row};

/// Distinct points of the plane, strictly increasing.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize)]
pub struct PointSet {
    indices: Vec<usize>,
}

impl PointSet {
    /// Sorts `indices`; rejects repeats and indices outside the plane.
    pub fn new(plane: &Plane, mut indices: Vec<usize>) -> Result<Self> {
        indices.sort_unstable();
        if indices.windows(2).any(|w| w[0] == w[1]) {
            return Err(Error::InvalidArgument("repeated point in a point set".into()));
        }
        if let Some(&p) = indices.last().filter(|&&p| p >= plane.n()) {
            return Err(Error::InvalidArgument(format!("point index {p} outside a plane of {} points", plane.n())));
        }
        Ok(PointSet { indices })
    }

    pub fn from_mask(mask: u128) -> Self {
        PointSet { indices: (0..128).filter(|&i| mask >> i & 1 == 1).collect() }
    }

    pub fn indices(&self) -> &[usize] {
        &self.indices
    }

    pub fn len(&self) -> usize {
        self.indices.len()
    }

    pub fn is_empty(&self) -> bool {
        self.indices.is_empty()
    }

    pub fn mask(&self) -> u128 {
        mask_of(&self.indices)
    }

    fn without(&self, i: usize) -> PointSet {
        let mut indices = self.indices.clone();
        indices.remove(i);
        PointSet { indices }
    }
}

fn mask_of(indices: &[usize]) -> u128 {
    indices.iter().fold(0u128, |m, &p| m | 1 << p)
}

fn ones(x: u128) -> u32 {
    x.count_ones()
}

/// One row of monomial values per point (`d <= 3`).
pub fn evaluation_matrix(plane: &Plane, s: &PointSet, d: u32) -> Vec<Row> {
    s.indices.iter().map(|&p| plane.monomial_row(d, p).to_vec()).collect()
}

/// Dimension of the space of degree-`d` forms vanishing on `s`.
pub fn gamma_dim(plane: &Plane, s: &PointSet, d: u32) -> usize {
    monomial_count(d) - rank(plane.field(), &evaluation_matrix(plane, s, d))
}

/// A basis of the degree-`d` forms vanishing on `s`.
pub fn gamma_basis(plane: &Plane, s: &PointSet, d: u32) -> Vec<HomogeneousForm> {
    nullspace(plane.field(), &evaluation_matrix(plane, s, d), monomial_count(d))
        .into_iter()
        .map(|v| HomogeneousForm::new(d, v).expect("length matches the degree"))
        .collect()
}

pub fn imposes_independent(plane: &Plane, s: &PointSet, d: u32) -> bool {
    rank(plane.field(), &evaluation_matrix(plane, s, d)) == s.len()
}

/// Every nonzero combination of `basis` whose first nonzero coefficient is 1.
fn normalized_combinations(field: &Field, dim: usize, mut visit: impl FnMut(&[FieldElement])) {
    let q = field.q() as usize;
    let mut c = vec![FieldElement::ZERO; dim];
    for lead in 0..dim {
        let free = dim - lead - 1;
        for code in 0..q.pow(free as u32) {
            c.iter_mut().for_each(|x| *x = FieldElement::ZERO);
            c[lead] = FieldElement::ONE;
            let mut rest = code;
            for x in &mut c[lead + 1..] {
                *x = field.from_code((rest % q) as u32);
                rest /= q;
            }
            visit(&c);
        }
    }
}

/// One representative per projective class of the span of `basis`.
pub fn span_classes(field: &Field, basis: &[HomogeneousForm]) -> Vec<HomogeneousForm> {
    let mut out = Vec::new();
    let Some(first) = basis.first() else { return out };
    normalized_combinations(field, basis.len(), |c| {
        let mut f = HomogeneousForm::zero(first.degree());
        for (b, &a) in basis.iter().zip(c) {
            if !a.is_zero() {
                f = f.add(field, &b.scale(field, a));
            }
        }
        out.push(f);
    });
    out
}

/// Number of vectors in the span of `basis` (all of length `len`) with no
/// zero coordinate, and a per-support tally when `tally` is given.
fn full_support_words(field: &Field, basis: &[Row], len: usize, mut tally: Option<&mut [u64]>) -> u64 {
    let q = field.q() as u64;
    let dim = basis.len();
    let mut full = 0;
    let mut word = vec![FieldElement::ZERO; len];
    for code in 0..q.pow(dim as u32) {
        word.iter_mut().for_each(|x| *x = FieldElement::ZERO);
        let mut rest = code;
        for b in basis {
            let a = field.from_code((rest % q) as u32);
            rest /= q;
            if a.is_zero() {
                continue;
            }
            for (w, &x) in word.iter_mut().zip(b) {
                *w = field.add(*w, field.mul(a, x));
            }
        }
        let support = word.iter().enumerate().fold(0usize, |m, (i, x)| m | ((!x.is_zero() as usize) << i));
        if support == (1 << len) - 1 {
            full += 1;
        }
        if let Some(t) = tally.as_deref_mut() {
            t[support] += 1;
        }
    }
    full
}

/// Basis of the dual codewords of the degree-`d` code supported inside `s`,
/// as coefficient vectors indexed like `s`.
pub fn supported_dual_basis(plane: &Plane, s: &PointSet, d: u32) -> Vec<Row> {
    let m = evaluation_matrix(plane, s, d);
    let transposed: Vec<Row> = (0..monomial_count(d)).map(|j| m.iter().map(|r| r[j]).collect()).collect();
    nullspace(plane.field(), &transposed, s.len())
}

/// Visits every `k`-subset of `0..n` with its mask, in lexicographic
/// order within each leading index; partitions by leading index run in
/// parallel and merge in index order.
fn scan_subsets<A, I, V, M>(n: usize, k: usize, init: I, visit: V, merge: M) -> A
where
    A: Send,
    I: Fn() -> A + Sync + Send,
    V: Fn(&mut A, &[usize], u128) + Sync + Send,
    M: Fn(A, A) -> A + Sync + Send,
{
    if k == 0 {
        let mut acc = init();
        visit(&mut acc, &[], 0);
        return acc;
    }
    if k > n {
        return init();
    }
    (0..=n - k)
        .into_par_iter()
        .map(|lead| {
            let mut acc = init();
            let mut idx: Vec<usize> = (lead..lead + k).collect();
            loop {
                visit(&mut acc, &idx, mask_of(&idx));
                let mut i = k;
                loop {
                    if i == 1 {
                        return acc;
                    }
                    i -= 1;
                    if idx[i] < n - k + i {
                        break;
                    }
                }
                idx[i] += 1;
                for j in i + 1..k {
                    idx[j] = idx[j - 1] + 1;
                }
            }
        })
        .reduce(&init, &merge)
}

fn merge_maps(mut a: BTreeMap<ConfigClass, u64>, b: BTreeMap<ConfigClass, u64>) -> BTreeMap<ConfigClass, u64> {
    for (k, v) in b {
        *a.entry(k).or_default() += v;
    }
    a
}

/// Shape of a point set that fails to impose independent conditions.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize)]
pub enum ConfigClass {
    Collinear(usize),
    ConicSmooth(usize),
    /// Points off the intersection on each line, larger count first.
    TwoLines {
        first: usize,
        second: usize,
        through_intersection: bool,
    },
    /// Exactly the common zeros of two cubics without a common component.
    CubicPencilBase,
    Other,
}

impl fmt::Display for ConfigClass {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match *self {
            ConfigClass::Collinear(k) => write!(f, "collinear({k})"),
            ConfigClass::ConicSmooth(k) => write!(f, "conic_smooth({k})"),
            ConfigClass::TwoLines { first, second, through_intersection } => {
                let with = if through_intersection { "with" } else { "without" };
                write!(f, "two_lines({first},{second},{with})")
            }
            ConfigClass::CubicPencilBase => write!(f, "cubic_pencil_base(9)"),
            ConfigClass::Other => write!(f, "other"),
        }
    }
}

/// 9-set scan results, including the sets that test the converse of the
/// pencil-base characterization.
#[derive(Clone, Debug, Default, PartialEq, Eq, Serialize)]
pub struct PencilBaseCount {
    pub count: u64,
    /// Sets with a two-dimensional cubic space and every 8-subset independent.
    pub independent_eights: u64,
    /// Of those, sets whose pencil has no component-free pair.
    pub independent_eights_without_pencil: u64,
    /// Pencil bases with some dependent 8-subset.
    pub pencil_with_dependent_eight: u64,
}

impl PencilBaseCount {
    fn merge(self, o: Self) -> Self {
        PencilBaseCount {
            count: self.count + o.count,
            independent_eights: self.independent_eights + o.independent_eights,
            independent_eights_without_pencil: self.independent_eights_without_pencil
                + o.independent_eights_without_pencil,
            pencil_with_dependent_eight: self.pencil_with_dependent_eight + o.pencil_with_dependent_eight,
        }
    }
}

/// Counts of 8-point families over all 8-subsets of the plane.
#[derive(Clone, Debug, Default, PartialEq, Eq, Serialize)]
pub struct EightPointCensus {
    pub total: u64,
    pub conic_ge7: u64,
    pub line_ge4: u64,
    pub general: u64,
    pub singular_irreducible: u64,
    pub conic_six_line_two: u64,
    pub two_triples: u64,
    pub j8: u64,
}

impl EightPointCensus {
    fn merge(self, o: Self) -> Self {
        EightPointCensus {
            total: self.total + o.total,
            conic_ge7: self.conic_ge7 + o.conic_ge7,
            line_ge4: self.line_ge4 + o.line_ge4,
            general: self.general + o.general,
            singular_irreducible: self.singular_irreducible + o.singular_irreducible,
            conic_six_line_two: self.conic_six_line_two + o.conic_six_line_two,
            two_triples: self.two_triples + o.two_triples,
            j8: self.j8 + o.j8,
        }
    }
}

/// One brute-force count beside its closed form (absent below the
/// formula's range).
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct FamilyCountRow {
    pub id: String,
    pub brute_force: u64,
    pub formula: Option<BigInt>,
    pub matches: bool,
}

/// Dual codewords of one weight found by scanning all supports of that size.
#[derive(Clone, Debug, Default, PartialEq, Eq, Serialize)]
pub struct DualSupportCensus {
    pub degree: u32,
    pub weight: usize,
    pub words: u64,
    /// Failing sets per tag.
    pub sets: BTreeMap<ConfigClass, u64>,
    /// Full-support codewords per tag.
    pub words_by_class: BTreeMap<ConfigClass, u64>,
}

/// Dual codewords supported on `size` points of one line.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct CollinearDualCounts {
    pub degree: u32,
    pub size: u32,
    pub dimension: usize,
    pub full_support: u64,
    pub covering_pairs: u64,
    pub dimension_formula: usize,
    pub full_support_formula: BigInt,
    pub covering_pairs_formula: BigInt,
}

/// Direct enumeration of the dual codewords supported on `m` points of a
/// line, against the closed forms.
pub fn collinear_dual_counts(plane: &Plane, d: u32, m: u32) -> Result<CollinearDualCounts> {
    if !(2..=3).contains(&d) {
        return Err(Error::UnsupportedDegree(d));
    }
    let q = plane.q();
    if m < d + 2 || m > q + 1 {
        return Err(Error::InvalidArgument(format!("collinear size {m} outside {}..={} for degree {d}", d + 2, q + 1)));
    }
    let s = PointSet::new(plane, plane.lines()[0].points[..m as usize].to_vec())?;
    let basis = supported_dual_basis(plane, &s, d);
    let mut tally = vec![0u64; 1 << m];
    let full_support = full_support_words(plane.field(), &basis, m as usize, Some(&mut tally));
    let full = (1usize << m) - 1;
    let mut covering_pairs = 0;
    for a in 1..=full {
        for b in 1..=full {
            if a | b == full {
                covering_pairs += tally[a] * tally[b];
            }
        }
    }
    let f = parse::parse(&collinear_full_support_expr(d, m))?.eval_int(q as u64);
    let g = collinear_pair_poly(d, m).eval_int(q as u64);
    Ok(CollinearDualCounts {
        degree: d,
        size: m,
        dimension: basis.len(),
        full_support,
        covering_pairs,
        dimension_formula: (m - d - 1) as usize,
        full_support_formula: integral(f, || format!("f_{d}({m})"))?,
        covering_pairs_formula: integral(g, || format!("g_{d}({m})"))?,
    })
}

/// Line and smooth-conic incidence tables for configuration tests.
pub struct ConfigScanner<'a> {
    geometry: &'a CurveGeometry,
    lines: Vec<u128>,
    smooth_conics: Vec<u128>,
}

impl<'a> ConfigScanner<'a> {
    pub fn new(geometry: &'a CurveGeometry) -> Self {
        let lines = geometry.plane().lines().iter().map(|l| l.mask.as_u128()).collect();
        let conics = geometry.conic_table();
        let smooth_conics = conics
            .kinds
            .iter()
            .zip(&conics.zeros)
            .filter(|(k, _)| **k == FormKind::Conic(ConicClass::Smooth))
            .map(|(_, &z)| z)
            .collect();
        ConfigScanner { geometry, lines, smooth_conics }
    }

    pub fn plane(&self) -> &Plane {
        self.geometry.plane()
    }

    pub fn smooth_conic_count(&self) -> usize {
        self.smooth_conics.len()
    }

    /// Most points of `mask` on one line.
    pub fn max_collinear(&self, mask: u128) -> u32 {
        self.lines.iter().map(|&l| ones(l & mask)).max().unwrap_or(0)
    }

    /// Most points of `mask` on one smooth conic.
    pub fn max_on_smooth_conic(&self, mask: u128) -> u32 {
        self.smooth_conics.iter().map(|&c| ones(c & mask)).max().unwrap_or(0)
    }

    fn line_through(&self, a: usize, b: usize) -> u128 {
        self.lines[self.plane().line_through(a, b)]
    }

    /// Tag of a failing set of at most `2d + 3` points.
    pub fn classify_failing(&self, s: &PointSet, d: u32) -> Result<ConfigClass> {
        if !(2..=3).contains(&d) {
            return Err(Error::UnsupportedDegree(d));
        }
        let k = s.len();
        if k > 2 * d as usize + 3 {
            return Err(Error::InvalidArgument(format!("{k} points exceed the classified range for degree {d}")));
        }
        let plane = self.plane();
        if imposes_independent(plane, s, d) {
            return Err(Error::InvalidArgument("the set imposes independent conditions".into()));
        }
        let mask = s.mask();
        if self.max_collinear(mask) as usize == k {
            return Ok(ConfigClass::Collinear(k));
        }
        if self.smooth_conics.iter().any(|&c| c & mask == mask) {
            return Ok(ConfigClass::ConicSmooth(k));
        }
        if let Some(tag) = self.two_lines(mask) {
            return Ok(tag);
        }
        if d == 3 && k == 9 && (0..9).all(|i| imposes_independent(plane, &s.without(i), 3)) && self.is_pencil_base(s)? {
            return Ok(ConfigClass::CubicPencilBase);
        }
        Ok(ConfigClass::Other)
    }

    /// `mask` covered by a richest line and a second line holding at least
    /// two of the remaining points.
    fn two_lines(&self, mask: u128) -> Option<ConfigClass> {
        let first = (0..self.lines.len()).max_by_key(|&i| (ones(self.lines[i] & mask), std::cmp::Reverse(i)))?;
        let rest = mask & !self.lines[first];
        if ones(rest) < 2 {
            return None;
        }
        let a = rest.trailing_zeros() as usize;
        let b = 127 - rest.leading_zeros() as usize;
        let second = self.line_through(a, b);
        if rest & second != rest {
            return None;
        }
        let meet = self.lines[first] & second;
        let through = mask & meet != 0;
        Some(ConfigClass::TwoLines {
            first: ones(mask & self.lines[first] & !meet) as usize,
            second: ones(rest) as usize,
            through_intersection: through,
        })
    }

    /// Whether `s` is exactly the common zero set of two cubics without a
    /// common component, tested over every pair of classes in its pencil.
    pub fn is_pencil_base(&self, s: &PointSet) -> Result<bool> {
        let plane = self.plane();
        let basis = gamma_basis(plane, s, 3);
        if basis.len() != 2 {
            return Ok(false);
        }
        let members = span_classes(plane.field(), &basis);
        let zeros: Vec<u128> = members.iter().map(|f| plane.zero_mask(f).as_u128()).collect();
        let mask = s.mask();
        for i in 0..members.len() {
            for j in i + 1..members.len() {
                if zeros[i] & zeros[j] == mask && self.geometry.common_component_degree(&members[i], &members[j])? == 0
                {
                    return Ok(true);
                }
            }
        }
        Ok(false)
    }

    /// 9-sets that are the complete intersection of two cubics; sets with 5
    /// collinear points are skipped since every cubic through them contains
    /// the line.
    pub fn count_i9(&self, budget: &Budget) -> Result<PencilBaseCount> {
        let plane = self.plane();
        budget.check_subsets(plane.n(), 9)?;
        let result = scan_subsets(
            plane.n(),
            9,
            || Ok(PencilBaseCount::default()),
            |acc: &mut Result<PencilBaseCount>, idx, mask| {
                if acc.is_err() || self.max_collinear(mask) >= 5 {
                    return;
                }
                let s = PointSet { indices: idx.to_vec() };
                if gamma_dim(plane, &s, 3) != 2 {
                    return;
                }
                let eights = (0..9).all(|i| imposes_independent(plane, &s.without(i), 3));
                match (self.is_pencil_base(&s), acc.as_mut()) {
                    (Err(e), _) => *acc = Err(e),
                    (Ok(_), Err(_)) => {}
                    (Ok(base), Ok(tally)) => {
                        tally.count += base as u64;
                        tally.independent_eights += eights as u64;
                        tally.independent_eights_without_pencil += (eights && !base) as u64;
                        tally.pencil_with_dependent_eight += (base && !eights) as u64;
                    }
                }
            },
            |a, b| Ok(a?.merge(b?)),
        );
        result
    }

    /// Some cubic through `s` is absolutely irreducible and singular at a
    /// point of `s`.
    pub fn on_singular_irreducible_cubic(&self, s: &PointSet) -> Result<bool> {
        let plane = self.plane();
        let field = plane.field();
        for f in span_classes(field, &gamma_basis(plane, s, 3)) {
            let parts = [f.partial(field, 0), f.partial(field, 1), f.partial(field, 2)];
            let singular_in_s =
                s.indices.iter().any(|&p| parts.iter().all(|g| g.is_zero() || plane.eval(g, p).is_zero()));
            if singular_in_s && self.geometry.factorize(&f)?.is_absolutely_irreducible() {
                return Ok(true);
            }
        }
        Ok(false)
    }

    /// 6 points of `mask` on a smooth conic, and the line through the other
    /// two meets exactly one of the six.
    pub fn conic_six_line_two(&self, mask: u128) -> bool {
        self.smooth_conics.iter().any(|&c| {
            let six = c & mask;
            ones(six) == 6 && ones(mask) == 8 && {
                let rest = mask & !c;
                let line = self.line_through(rest.trailing_zeros() as usize, 127 - rest.leading_zeros() as usize);
                ones(line & six) == 1
            }
        })
    }

    /// Two lines with exactly 3 points of `mask` each, missing their
    /// intersection, and the line through the other two meets exactly one of
    /// the six.
    pub fn two_triples(&self, mask: u128) -> bool {
        let triples: Vec<u128> = self.lines.iter().copied().filter(|&l| ones(l & mask) == 3).collect();
        for (i, &l1) in triples.iter().enumerate() {
            for &l2 in &triples[i + 1..] {
                if l1 & l2 & mask != 0 {
                    continue;
                }
                let six = mask & (l1 | l2);
                let rest = mask & !six;
                if ones(rest) != 2 {
                    continue;
                }
                let line = self.line_through(rest.trailing_zeros() as usize, 127 - rest.leading_zeros() as usize);
                if ones(line & six) == 1 {
                    return true;
                }
            }
        }
        false
    }

    /// All 8-subsets, tested against each family definition.
    pub fn eight_point_census(&self, budget: &Budget) -> Result<EightPointCensus> {
        let plane = self.plane();
        budget.check_subsets(plane.n(), 8)?;
        scan_subsets(
            plane.n(),
            8,
            || Ok(EightPointCensus::default()),
            |acc: &mut Result<EightPointCensus>, idx, mask| {
                if acc.is_err() {
                    return;
                }
                let s = PointSet { indices: idx.to_vec() };
                let ge7 = self.max_on_smooth_conic(mask) >= 7;
                let ge4 = self.max_collinear(mask) >= 4;
                let singular = match self.on_singular_irreducible_cubic(&s) {
                    Ok(b) => b,
                    Err(e) => {
                        *acc = Err(e);
                        return;
                    }
                };
                let conic = self.conic_six_line_two(mask);
                let triples = self.two_triples(mask);
                let general = !ge7 && !ge4;
                let Ok(t) = acc else { return };
                t.total += 1;
                t.conic_ge7 += ge7 as u64;
                t.line_ge4 += ge4 as u64;
                t.general += general as u64;
                t.singular_irreducible += singular as u64;
                t.conic_six_line_two += conic as u64;
                t.two_triples += triples as u64;
                t.j8 += (general && !singular && !conic && !triples) as u64;
            },
            |a, b| Ok(a?.merge(b?)),
        )
    }

    /// 8-subsets with no 4 collinear, no 7 on a conic, and none of the three
    /// configurations whose ninth base point is infinitely near.
    pub fn count_j8(&self, budget: &Budget) -> Result<u64> {
        Ok(self.eight_point_census(budget)?.j8)
    }

    /// Brute-force family counts beside their closed forms.
    pub fn family_counts(&self, budget: &Budget) -> Result<Vec<FamilyCountRow>> {
        let q = self.plane().q() as u64;
        let eight = self.eight_point_census(budget)?;
        let nine = self.count_i9(budget)?;
        let reg = Registry::global();
        [
            ("C_ge7", eight.conic_ge7),
            ("L_ge4", eight.line_ge4),
            ("general8", eight.general),
            ("sing_irred8", eight.singular_irreducible),
            ("conic6_line2", eight.conic_six_line_two),
            ("triples332", eight.two_triples),
            ("J8", eight.j8),
            ("I9", nine.count),
        ]
        .into_iter()
        .map(|(id, brute_force)| {
            let formula = match reg.eval_count(id, q) {
                Ok(v) => Some(v),
                Err(Error::OutOfRange { .. }) => None,
                Err(e) => return Err(e),
            };
            let matches = formula.as_ref().map_or(true, |v| *v == BigInt::from(brute_force));
            Ok(FamilyCountRow { id: id.to_string(), brute_force, formula, matches })
        })
        .collect()
    }

    /// Dual codewords of weight `k` of the degree-`d` code, found by scanning
    /// every `k`-subset, with failing sets tallied by tag.
    pub fn dual_support_census(&self, d: u32, k: usize, budget: &Budget) -> Result<DualSupportCensus> {
        let plane = self.plane();
        budget.check_subsets(plane.n(), k)?;
        let init = || Ok(DualSupportCensus { degree: d, weight: k, ..Default::default() });
        scan_subsets(
            plane.n(),
            k,
            init,
            |acc: &mut Result<DualSupportCensus>, idx, _| {
                let s = PointSet { indices: idx.to_vec() };
                if acc.is_err() || imposes_independent(plane, &s, d) {
                    return;
                }
                let words = full_support_words(plane.field(), &supported_dual_basis(plane, &s, d), k, None);
                match (self.classify_failing(&s, d), acc.as_mut()) {
                    (Err(e), _) => *acc = Err(e),
                    (Ok(_), Err(_)) => {}
                    (Ok(tag), Ok(t)) => {
                        t.words += words;
                        *t.sets.entry(tag).or_default() += 1;
                        *t.words_by_class.entry(tag).or_default() += words;
                    }
                }
            },
            |a, b| {
                let (a, b) = (a?, b?);
                Ok(DualSupportCensus {
                    degree: d,
                    weight: k,
                    words: a.words + b.words,
                    sets: merge_maps(a.sets, b.sets),
                    words_by_class: merge_maps(a.words_by_class, b.words_by_class),
                })
            },
        )
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::geometry::{apply_matrix, determinant, monomials, Coords};
    use proptest::prelude::*;

    fn geometry(q: u64) -> CurveGeometry {
        CurveGeometry::for_q(q).unwrap()
    }

    fn set(plane: &Plane, idx: &[usize]) -> PointSet {
        PointSet::new(plane, idx.to_vec()).unwrap()
    }

    #[test]
    fn point_set_validation() {
        let g = geometry(3);
        assert!(PointSet::new(g.plane(), vec![1, 1]).is_err());
        assert!(PointSet::new(g.plane(), vec![13]).is_err());
        assert_eq!(set(g.plane(), &[5, 2, 9]).indices(), &[2, 5, 9]);
    }

    #[test]
    fn gamma_dim_examples() {
        let g = geometry(5);
        let p = g.plane();
        assert_eq!(gamma_dim(p, &set(p, &[]), 3), 10);
        let line = &p.lines()[3].points;
        let five = set(p, &line[..5]);
        assert_eq!(gamma_dim(p, &five, 3), 6);
        assert!(!imposes_independent(p, &five, 3));
        for i in 0..p.n() {
            assert!(imposes_independent(p, &set(p, &[i]), 2));
        }
    }

    #[test]
    fn four_general_points_impose_independent_conditions_on_conics() {
        let g = geometry(3);
        let p = g.plane();
        let f = p.field();
        let e = [f.from_int(1), f.from_int(0)];
        let coords: [Coords; 4] = [[e[0], e[1], e[1]], [e[1], e[0], e[1]], [e[1], e[1], e[0]], [e[0], e[0], e[0]]];
        let s = PointSet::new(p, coords.iter().map(|&c| p.index_of(c).unwrap()).collect()).unwrap();
        assert!(imposes_independent(p, &s, 2));
    }

    #[test]
    fn tags_of_failing_configurations() {
        let g = geometry(7);
        let scan = ConfigScanner::new(&g);
        let p = g.plane();
        let conic = scan.smooth_conics[0];
        let six = PointSet::from_mask(conic).indices()[..6].to_vec();
        assert_eq!(scan.classify_failing(&set(p, &six), 2).unwrap(), ConfigClass::ConicSmooth(6));
        let line = &p.lines()[0].points;
        assert_eq!(scan.classify_failing(&set(p, &line[..7]), 3).unwrap(), ConfigClass::Collinear(7));
        let (l1, l2) = (p.lines()[0].mask.as_u128(), p.lines()[1].mask.as_u128());
        let meet = l1 & l2;
        let four = |m: u128| PointSet::from_mask(m & !meet).indices()[..4].to_vec();
        let mut eight = four(l1);
        eight.extend(four(l2));
        let tag = scan.classify_failing(&set(p, &eight), 3).unwrap();
        assert_eq!(tag, ConfigClass::TwoLines { first: 4, second: 4, through_intersection: false });
        eight.push(meet.trailing_zeros() as usize);
        let tag = scan.classify_failing(&set(p, &eight), 3).unwrap();
        assert_eq!(tag, ConfigClass::TwoLines { first: 4, second: 4, through_intersection: true });
        assert_eq!(tag.to_string(), "two_lines(4,4,with)");
    }

    #[test]
    fn classify_rejects_unlisted_sets() {
        let g = geometry(3);
        let scan = ConfigScanner::new(&g);
        let p = g.plane();
        assert!(scan.classify_failing(&set(p, &[0, 1, 2]), 3).is_err());
        assert!(scan.classify_failing(&set(p, &(0..10).collect::<Vec<_>>()), 3).is_err());
        assert!(matches!(scan.classify_failing(&set(p, &[0]), 4), Err(Error::UnsupportedDegree(4))));
    }

    #[test]
    fn pencil_of_two_cubics() {
        let g = geometry(7);
        let scan = ConfigScanner::new(&g);
        let p = g.plane();
        let f = p.field();
        // x(x-z)(x+z) and y(y-z)(y+z) meet in a 3 x 3 grid.
        let a = HomogeneousForm::from_int_terms(f, 3, &[(1, [3, 0, 0]), (-1, [1, 0, 2])]);
        let b = HomogeneousForm::from_int_terms(f, 3, &[(1, [0, 3, 0]), (-1, [0, 1, 2])]);
        let grid = PointSet::from_mask(p.zero_mask(&a).as_u128() & p.zero_mask(&b).as_u128());
        assert_eq!(grid.len(), 9);
        assert_eq!(gamma_dim(p, &grid, 3), 2);
        assert!(scan.is_pencil_base(&grid).unwrap());
        assert_eq!(scan.classify_failing(&grid, 3).unwrap(), ConfigClass::CubicPencilBase);
    }

    #[test]
    fn subset_scan_visits_each_subset_once() {
        for (n, k) in [(7, 0), (7, 1), (7, 3), (7, 7), (3, 5)] {
            let seen = scan_subsets(
                n,
                k,
                Vec::new,
                |acc: &mut Vec<u128>, idx, m| {
                    assert!(idx.windows(2).all(|w| w[0] < w[1]));
                    acc.push(m)
                },
                |mut a, b| {
                    a.extend(b);
                    a
                },
            );
            let mut sorted = seen.clone();
            sorted.sort_unstable();
            sorted.dedup();
            let expect = (0..1u128 << n).filter(|m| m.count_ones() as usize == k).count();
            assert_eq!((seen.len(), sorted.len()), (expect, expect));
        }
    }

    #[test]
    fn independence_criterion_is_exhaustive_at_q3() {
        let g = geometry(3);
        let scan = ConfigScanner::new(&g);
        let p = g.plane();
        for d in 2..=3u32 {
            for k in 0..=(2 * d as usize + 2) {
                let bad = scan_subsets(
                    p.n(),
                    k,
                    || 0u32,
                    |acc, idx, mask| {
                        let s = PointSet { indices: idx.to_vec() };
                        let predicted =
                            scan.max_collinear(mask) >= d + 2 || (k == 2 * d as usize + 2 && gamma_dim(p, &s, 2) > 0);
                        *acc += (predicted == imposes_independent(p, &s, d)) as u32;
                    },
                    |a, b| a + b,
                );
                assert_eq!(bad, 0, "d={d} k={k}");
            }
        }
    }

    #[test]
    fn collinear_duals_match_closed_forms() {
        for q in [4u64, 5, 7] {
            let g = geometry(q);
            for d in 2..=3 {
                for m in d + 2..=q as u32 + 1 {
                    let c = collinear_dual_counts(g.plane(), d, m).unwrap();
                    assert_eq!(c.dimension, c.dimension_formula, "q={q} d={d} m={m}");
                    assert_eq!(BigInt::from(c.full_support), c.full_support_formula, "q={q} d={d} m={m}");
                    assert_eq!(BigInt::from(c.covering_pairs), c.covering_pairs_formula, "q={q} d={d} m={m}");
                }
            }
            let c = collinear_dual_counts(g.plane(), 3, 5).unwrap();
            assert_eq!(c.full_support, q - 1);
            assert_eq!(c.covering_pairs, (q - 1).pow(2));
            if q >= 5 {
                let c = collinear_dual_counts(g.plane(), 3, 6).unwrap();
                assert_eq!(c.covering_pairs, (q * q + 2 * q - 5) * (q - 1).pow(2));
            }
        }
        let g = geometry(4);
        assert!(collinear_dual_counts(g.plane(), 3, 4).is_err());
        assert!(collinear_dual_counts(g.plane(), 3, 6).is_err());
    }

    #[test]
    fn nine_point_counts_at_q3() {
        let g = geometry(3);
        let scan = ConfigScanner::new(&g);
        let nine = scan.count_i9(&Budget::DEFAULT).unwrap();
        assert_eq!(nine.count, 13);
        assert_eq!(nine.independent_eights_without_pencil, 0);
        assert_eq!(nine.pencil_with_dependent_eight, 0);
        assert_eq!(scan.count_j8(&Budget::DEFAULT).unwrap(), 117);
    }

    #[test]
    fn nine_point_count_at_q2_is_zero() {
        let g = geometry(2);
        assert_eq!(ConfigScanner::new(&g).count_i9(&Budget::DEFAULT).unwrap().count, 0);
    }

    #[test]
    fn subset_budget_is_enforced() {
        let g = geometry(4);
        let tight = Budget { subsets: 1000, ..Budget::DEFAULT };
        let scan = ConfigScanner::new(&g);
        assert!(matches!(scan.count_i9(&tight), Err(Error::BudgetExceeded { .. })));
    }

    fn random_projectivity(field: &Field, seed: &[u32; 9]) -> Option<[Coords; 3]> {
        let e = |i: usize| field.from_code(seed[i] % field.q());
        let m = [[e(0), e(1), e(2)], [e(3), e(4), e(5)], [e(6), e(7), e(8)]];
        (!determinant(field, &m).is_zero()).then_some(m)
    }

    proptest! {
        #![proptest_config(ProptestConfig::with_cases(40))]
        #[test]
        fn gamma_dim_is_projectively_invariant(
            q in prop::sample::select(vec![3u64, 4, 5]),
            picks in prop::collection::vec(0usize..31, 1..10),
            seeds in prop::collection::vec(prop::array::uniform9(0u32..9), 20),
            scales in prop::collection::vec(1u32..9, 10),
        ) {
            let g = geometry(q);
            let p = g.plane();
            let f = p.field();
            let mut idx: Vec<usize> = picks.iter().map(|&i| i % p.n()).collect();
            idx.sort_unstable();
            idx.dedup();
            let s = PointSet::new(p, idx.clone()).unwrap();
            for d in 2..=3 {
                let base = gamma_dim(p, &s, d);
                let scaled: Vec<Row> = idx.iter().rev().zip(&scales).map(|(&i, &c)| {
                    let a = f.from_code(c % (f.q() - 1) + 1);
                    let pt = p.point(i).coords.map(|x| f.mul(a, x));
                    monomials(d).iter()
                        .map(|e| (0..3).fold(FieldElement::ONE, |acc, v| f.mul(acc, f.pow(pt[v], e[v] as i64).unwrap())))
                        .collect()
                }).collect();
                prop_assert_eq!(monomial_count(d) - rank(f, &scaled), base);
                for seed in &seeds {
                    let Some(m) = random_projectivity(f, seed) else { continue };
                    let moved: Vec<usize> =
                        idx.iter().map(|&i| p.index_of(apply_matrix(f, &m, &p.point(i).coords)).unwrap()).collect();
                    prop_assert_eq!(gamma_dim(p, &PointSet::new(p, moved).unwrap(), d), base);
                }
            }
        }
    }
}
