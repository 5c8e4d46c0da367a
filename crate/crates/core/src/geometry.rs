//! The projective plane over F_q: canonical points, lines, homogeneous forms
//! and projective classes of forms.
//!
//! A point is stored by its canonical representative, whose first nonzero
//! coordinate is 1. Points are ordered first by the position of that leading
//! 1 and then lexicographically by the additive codes of the remaining
//! coordinates, so the first point is `[1:0:0]` and the last is `[0:0:1]`.
//! Projective classes of forms use the same convention on coefficient
//! vectors, which makes the class index of a linear form equal to the index
//! of its dual point.

use serde_json::{json, Value};

use crate::error::{Error, Result};
use crate::gf::{Field, FieldElement};
use crate::mask::{SupportMask, MASK_CAPACITY};

pub type Coords = [FieldElement; 3];

/// Upper bound on `q^len` accepted by class enumeration by default.
pub const DEFAULT_FORM_BUDGET: u64 = 1 << 32;

/// A point of P²(F_q) with its position in the canonical ordering.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub struct ProjectivePoint {
    pub coords: Coords,
    pub index: usize,
}

/// Number of points of P²(F_q).
pub fn plane_size(q: u32) -> usize {
    (q * q + q + 1) as usize
}

/// Scales `c` so its first nonzero coordinate is 1.
pub fn canonicalize(field: &Field, c: Coords) -> Option<Coords> {
    let lead = c.iter().copied().find(|x| !x.is_zero())?;
    let inv = field.inv(lead).expect("nonzero");
    Some(c.map(|x| field.mul(x, inv)))
}

/// Position of a canonical representative in the point ordering.
pub fn point_index(field: &Field, c: &Coords) -> usize {
    let q = field.q() as usize;
    let code = |x: FieldElement| field.code(x) as usize;
    if c[0] == FieldElement::ONE {
        code(c[1]) * q + code(c[2])
    } else if c[1] == FieldElement::ONE {
        debug_assert!(c[0].is_zero());
        q * q + code(c[2])
    } else {
        debug_assert!(c[0].is_zero() && c[1].is_zero() && c[2] == FieldElement::ONE);
        q * q + q
    }
}

/// All points of P²(F_q) in canonical order.
pub fn enumerate_points(field: &Field) -> Vec<ProjectivePoint> {
    let q = field.q();
    let mut out = Vec::with_capacity(plane_size(q));
    let e = |code: u32| field.from_code(code);
    for a in 0..q {
        for b in 0..q {
            out.push([FieldElement::ONE, e(a), e(b)]);
        }
    }
    for b in 0..q {
        out.push([FieldElement::ZERO, FieldElement::ONE, e(b)]);
    }
    out.push([FieldElement::ZERO, FieldElement::ZERO, FieldElement::ONE]);
    out.into_iter().enumerate().map(|(index, coords)| ProjectivePoint { coords, index }).collect()
}

/// Degree-`d` monomials `x^i y^j z^k` in graded-lexicographic order
/// (`x > y > z`).
pub fn monomials(d: u32) -> Vec<[u32; 3]> {
    let mut out = Vec::with_capacity(monomial_count(d));
    for i in (0..=d).rev() {
        for j in (0..=d - i).rev() {
            out.push([i, j, d - i - j]);
        }
    }
    out
}

/// `C(d+2, 2)`.
pub fn monomial_count(d: u32) -> usize {
    ((d + 1) * (d + 2) / 2) as usize
}

/// Position of the exponent triple `e` in [`monomials`]`(d)`.
#[inline]
pub fn monomial_position(d: u32, e: [u32; 3]) -> usize {
    let (i, j) = (e[0], e[1]);
    ((d - i) * (d - i + 1) / 2 + (d - i - j)) as usize
}

/// Value of a monomial at a point, `0^0 = 1`.
fn monomial_value(field: &Field, e: [u32; 3], c: &Coords) -> FieldElement {
    (0..3).fold(FieldElement::ONE, |acc, v| field.mul(acc, field.pow(c[v], e[v] as i64).expect("nonnegative exponent")))
}

/// A homogeneous form in `x, y, z`, coefficients indexed by
/// [`monomials`]`(degree)`.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct HomogeneousForm {
    degree: u32,
    coeffs: Vec<FieldElement>,
}

impl HomogeneousForm {
    pub fn new(degree: u32, coeffs: Vec<FieldElement>) -> Result<Self> {
        let expected = monomial_count(degree);
        if coeffs.len() != expected {
            return Err(Error::LengthMismatch { expected, actual: coeffs.len() });
        }
        Ok(HomogeneousForm { degree, coeffs })
    }

    pub fn zero(degree: u32) -> Self {
        HomogeneousForm { degree, coeffs: vec![FieldElement::ZERO; monomial_count(degree)] }
    }

    /// Sum of `c * x^i y^j z^k` over the given terms, `c` taken in the prime
    /// subfield.
    pub fn from_int_terms(field: &Field, degree: u32, terms: &[(i64, [u32; 3])]) -> Self {
        let mut f = Self::zero(degree);
        for &(c, e) in terms {
            assert_eq!(e.iter().sum::<u32>(), degree, "term degree");
            let pos = monomial_position(degree, e);
            f.coeffs[pos] = field.add(f.coeffs[pos], field.from_int(c));
        }
        f
    }

    /// The linear form `a x + b y + c z`.
    pub fn linear(c: Coords) -> Self {
        HomogeneousForm { degree: 1, coeffs: c.to_vec() }
    }

    #[inline]
    pub fn degree(&self) -> u32 {
        self.degree
    }

    #[inline]
    pub fn coeffs(&self) -> &[FieldElement] {
        &self.coeffs
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.iter().all(|c| c.is_zero())
    }

    /// Position of the first nonzero coefficient.
    pub fn leading_position(&self) -> Option<usize> {
        self.coeffs.iter().position(|c| !c.is_zero())
    }

    pub fn evaluate(&self, field: &Field, c: &Coords) -> FieldElement {
        monomials(self.degree)
            .into_iter()
            .zip(&self.coeffs)
            .filter(|(_, a)| !a.is_zero())
            .fold(FieldElement::ZERO, |acc, (e, &a)| field.add(acc, field.mul(a, monomial_value(field, e, c))))
    }

    pub fn scale(&self, field: &Field, a: FieldElement) -> Self {
        HomogeneousForm { degree: self.degree, coeffs: self.coeffs.iter().map(|&c| field.mul(a, c)).collect() }
    }

    pub fn add(&self, field: &Field, other: &Self) -> Self {
        assert_eq!(self.degree, other.degree, "degree mismatch");
        HomogeneousForm {
            degree: self.degree,
            coeffs: self.coeffs.iter().zip(&other.coeffs).map(|(&a, &b)| field.add(a, b)).collect(),
        }
    }

    pub fn sub(&self, field: &Field, other: &Self) -> Self {
        self.add(field, &other.scale(field, field.minus_one()))
    }

    pub fn mul(&self, field: &Field, other: &Self) -> Self {
        let degree = self.degree + other.degree;
        let mut out = Self::zero(degree);
        let (ma, mb) = (monomials(self.degree), monomials(other.degree));
        for (ea, &a) in ma.iter().zip(&self.coeffs) {
            if a.is_zero() {
                continue;
            }
            for (eb, &b) in mb.iter().zip(&other.coeffs) {
                if b.is_zero() {
                    continue;
                }
                let pos = monomial_position(degree, [ea[0] + eb[0], ea[1] + eb[1], ea[2] + eb[2]]);
                out.coeffs[pos] = field.add(out.coeffs[pos], field.mul(a, b));
            }
        }
        out
    }

    /// The scalar multiple whose first nonzero coefficient is 1, or a copy of
    /// the zero form.
    pub fn canonical(&self, field: &Field) -> Self {
        match self.leading_position() {
            None => self.clone(),
            Some(pos) => self.scale(field, field.inv(self.coeffs[pos]).expect("nonzero")),
        }
    }

    pub fn is_canonical(&self) -> bool {
        self.leading_position().is_some_and(|pos| self.coeffs[pos] == FieldElement::ONE)
    }

    /// Formal partial derivative with respect to variable `var` (0, 1, 2).
    pub fn partial(&self, field: &Field, var: usize) -> Self {
        if self.degree == 0 {
            return Self::zero(0);
        }
        let degree = self.degree - 1;
        let mut out = Self::zero(degree);
        for (e, &a) in monomials(self.degree).iter().zip(&self.coeffs) {
            if a.is_zero() || e[var] == 0 {
                continue;
            }
            let mut lowered = *e;
            lowered[var] -= 1;
            let pos = monomial_position(degree, lowered);
            let term = field.mul(a, field.from_int(e[var] as i64));
            out.coeffs[pos] = field.add(out.coeffs[pos], term);
        }
        out
    }

    /// `f(L_0, L_1, L_2)` where `L_i = m[i][0] x + m[i][1] y + m[i][2] z`.
    pub fn substitute(&self, field: &Field, m: &[Coords; 3]) -> Self {
        let lin: Vec<Self> = m.iter().map(|row| Self::linear(*row)).collect();
        let one = HomogeneousForm { degree: 0, coeffs: vec![FieldElement::ONE] };
        let power = |v: usize, k: u32| (0..k).fold(one.clone(), |acc, _| acc.mul(field, &lin[v]));
        let mut out = Self::zero(self.degree);
        for (e, &a) in monomials(self.degree).iter().zip(&self.coeffs) {
            if a.is_zero() {
                continue;
            }
            let term = power(0, e[0]).mul(field, &power(1, e[1])).mul(field, &power(2, e[2]));
            out = out.add(field, &term.scale(field, a));
        }
        out
    }

    /// `self / divisor` when the division is exact.
    pub fn divide_exact(&self, field: &Field, divisor: &Self) -> Option<Self> {
        let lead = divisor.leading_position()?;
        if divisor.degree > self.degree {
            return self.is_zero().then(|| Self::zero(0));
        }
        let dm = monomials(divisor.degree);
        let lead_exp = dm[lead];
        let lead_inv = field.inv(divisor.coeffs[lead]).expect("nonzero");
        let qdeg = self.degree - divisor.degree;
        let mut rem = self.coeffs.clone();
        let mut quot = Self::zero(qdeg);
        // Monomials in decreasing lex order; each step clears the leading term.
        for (pos, e) in monomials(self.degree).into_iter().enumerate() {
            let c = rem[pos];
            if c.is_zero() {
                continue;
            }
            if (0..3).any(|v| e[v] < lead_exp[v]) {
                return None;
            }
            let qe = [e[0] - lead_exp[0], e[1] - lead_exp[1], e[2] - lead_exp[2]];
            let factor = field.mul(c, lead_inv);
            quot.coeffs[monomial_position(qdeg, qe)] = factor;
            for (de, &dc) in dm.iter().zip(&divisor.coeffs) {
                if dc.is_zero() {
                    continue;
                }
                let target = monomial_position(self.degree, [qe[0] + de[0], qe[1] + de[1], qe[2] + de[2]]);
                rem[target] = field.sub(rem[target], field.mul(factor, dc));
            }
        }
        Some(quot)
    }

    /// Applies `map` to every coefficient, e.g. an embedding into an
    /// extension field.
    pub fn map_coeffs(&self, map: impl Fn(FieldElement) -> FieldElement) -> Self {
        HomogeneousForm { degree: self.degree, coeffs: self.coeffs.iter().map(|&c| map(c)).collect() }
    }

    /// Applies a partial map to every coefficient.
    pub fn try_map_coeffs(&self, map: impl Fn(FieldElement) -> Option<FieldElement>) -> Option<Self> {
        let coeffs = self.coeffs.iter().map(|&c| map(c)).collect::<Option<Vec<_>>>()?;
        Some(HomogeneousForm { degree: self.degree, coeffs })
    }
}

/// Applies the matrix `m` to the coordinates of `c`.
pub fn apply_matrix(field: &Field, m: &[Coords; 3], c: &Coords) -> Coords {
    let row = |r: &Coords| (0..3).fold(FieldElement::ZERO, |acc, j| field.add(acc, field.mul(r[j], c[j])));
    [row(&m[0]), row(&m[1]), row(&m[2])]
}

/// Determinant of a 3x3 matrix over F_q.
pub fn determinant(field: &Field, m: &[Coords; 3]) -> FieldElement {
    let t = |a: usize, b: usize, c: usize| field.mul(m[0][a], field.mul(m[1][b], m[2][c]));
    let pos = field.add(t(0, 1, 2), field.add(t(1, 2, 0), t(2, 0, 1)));
    let neg = field.add(t(2, 1, 0), field.add(t(0, 2, 1), t(1, 0, 2)));
    field.sub(pos, neg)
}

/// A rational line with its points.
#[derive(Clone, Debug)]
pub struct Line {
    pub form: HomogeneousForm,
    pub points: Vec<usize>,
    pub mask: SupportMask,
}

/// P²(F_q) with cached evaluation tables, for `q <= 9` (at most 128 points).
#[derive(Clone, Debug)]
pub struct Plane {
    field: Field,
    points: Vec<ProjectivePoint>,
    lines: Vec<Line>,
    /// Per degree `0..=3`: value of monomial `m` at point `p` at `[p * len + m]`.
    values: Vec<Vec<FieldElement>>,
}

impl Plane {
    pub fn new(field: Field) -> Result<Plane> {
        let n = plane_size(field.q());
        if n > MASK_CAPACITY {
            return Err(Error::InvalidArgument(format!(
                "P^2(F_{}) has {n} points; masks hold at most {MASK_CAPACITY}",
                field.q()
            )));
        }
        let points = enumerate_points(&field);
        let values = (0..=3u32)
            .map(|d| {
                let mons = monomials(d);
                points
                    .iter()
                    .flat_map(|p| mons.iter().map(|&e| monomial_value(&field, e, &p.coords)).collect::<Vec<_>>())
                    .collect()
            })
            .collect();
        let mut plane = Plane { field, points, lines: Vec::new(), values };
        plane.lines = plane
            .points
            .iter()
            .map(|dual| {
                let form = HomogeneousForm::linear(dual.coords);
                let mask = plane.zero_mask(&form);
                Line { form, points: mask.iter().collect(), mask }
            })
            .collect();
        Ok(plane)
    }

    #[inline]
    pub fn field(&self) -> &Field {
        &self.field
    }

    #[inline]
    pub fn q(&self) -> u32 {
        self.field.q()
    }

    /// Number of points `N = q² + q + 1`.
    #[inline]
    pub fn n(&self) -> usize {
        self.points.len()
    }

    pub fn points(&self) -> &[ProjectivePoint] {
        &self.points
    }

    pub fn point(&self, i: usize) -> &ProjectivePoint {
        &self.points[i]
    }

    /// Index of the point with (not necessarily canonical) coordinates `c`.
    pub fn index_of(&self, c: Coords) -> Option<usize> {
        canonicalize(&self.field, c).map(|c| point_index(&self.field, &c))
    }

    /// Lines, indexed like their dual points.
    pub fn lines(&self) -> &[Line] {
        &self.lines
    }

    /// Index of the line through two distinct points.
    pub fn line_through(&self, a: usize, b: usize) -> usize {
        let (p, r) = (&self.points[a].coords, &self.points[b].coords);
        let f = &self.field;
        let cross = [
            f.sub(f.mul(p[1], r[2]), f.mul(p[2], r[1])),
            f.sub(f.mul(p[2], r[0]), f.mul(p[0], r[2])),
            f.sub(f.mul(p[0], r[1]), f.mul(p[1], r[0])),
        ];
        self.index_of(cross).expect("distinct points span a line")
    }

    /// Value of monomial `m` of degree `d <= 3` at point `p`.
    #[inline]
    pub fn monomial_value(&self, d: u32, p: usize, m: usize) -> FieldElement {
        self.values[d as usize][p * monomial_count(d) + m]
    }

    /// Row of monomial values of degree `d` at point `p`.
    pub fn monomial_row(&self, d: u32, p: usize) -> &[FieldElement] {
        let len = monomial_count(d);
        &self.values[d as usize][p * len..(p + 1) * len]
    }

    /// `f(p)` using the cached tables (degree at most 3).
    pub fn eval(&self, f: &HomogeneousForm, p: usize) -> FieldElement {
        if f.degree() > 3 {
            return f.evaluate(&self.field, &self.points[p].coords);
        }
        self.monomial_row(f.degree(), p)
            .iter()
            .zip(f.coeffs())
            .fold(FieldElement::ZERO, |acc, (&v, &c)| self.field.add(acc, self.field.mul(v, c)))
    }

    /// Points where `f` vanishes.
    pub fn zero_mask(&self, f: &HomogeneousForm) -> SupportMask {
        SupportMask::from_indices((0..self.n()).filter(|&p| self.eval(f, p).is_zero()))
    }

    /// Points where `f` does not vanish.
    pub fn support_mask(&self, f: &HomogeneousForm) -> SupportMask {
        self.zero_mask(f).complement(self.n())
    }

    /// Point ordering as a JSON array of coordinate triples (element indices).
    pub fn points_json(&self) -> Value {
        Value::Array(self.points.iter().map(|p| json!([p.coords[0].0, p.coords[1].0, p.coords[2].0])).collect())
    }
}

/// Indexing of projective classes of nonzero coefficient vectors of a fixed
/// length. Classes are ordered by leading position, then by the additive
/// codes of the trailing coefficients with the last one least significant.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct ClassSpace {
    q: u32,
    len: usize,
}

impl ClassSpace {
    pub fn new(q: u32, len: usize) -> Self {
        ClassSpace { q, len }
    }

    pub fn for_degree(q: u32, d: u32) -> Self {
        Self::new(q, monomial_count(d))
    }

    pub fn len(&self) -> usize {
        self.len
    }

    pub fn is_empty(&self) -> bool {
        self.len == 0
    }

    /// `(q^len - 1)/(q - 1)`.
    pub fn count(&self) -> u64 {
        (0..self.len).map(|lead| self.segment_len(lead)).sum()
    }

    /// Number of classes with leading position `lead`.
    pub fn segment_len(&self, lead: usize) -> u64 {
        (self.q as u64).pow((self.len - 1 - lead) as u32)
    }

    /// Index of the first class with leading position `lead`.
    pub fn segment_start(&self, lead: usize) -> u64 {
        (0..lead).map(|l| self.segment_len(l)).sum()
    }

    /// Leading position and offset within its segment.
    pub fn locate(&self, index: u64) -> (usize, u64) {
        let mut rest = index;
        for lead in 0..self.len {
            let size = self.segment_len(lead);
            if rest < size {
                return (lead, rest);
            }
            rest -= size;
        }
        panic!("class index {index} out of range")
    }

    /// Class index of a nonzero vector (scaled internally).
    pub fn index_of(&self, field: &Field, coeffs: &[FieldElement]) -> Option<u64> {
        let lead = coeffs.iter().position(|c| !c.is_zero())?;
        let inv = field.inv(coeffs[lead]).expect("nonzero");
        let q = self.q as u64;
        let offset = coeffs[lead + 1..].iter().fold(0u64, |acc, &c| acc * q + field.code(field.mul(c, inv)) as u64);
        Some(self.segment_start(lead) + offset)
    }

    /// Canonical coefficient vector of a class.
    pub fn coeffs_at(&self, field: &Field, index: u64) -> Vec<FieldElement> {
        let (lead, mut offset) = self.locate(index);
        let mut out = vec![FieldElement::ZERO; self.len];
        out[lead] = FieldElement::ONE;
        let q = self.q as u64;
        for slot in out[lead + 1..].iter_mut().rev() {
            *slot = field.from_code((offset % q) as u32);
            offset /= q;
        }
        out
    }
}

/// A projective class of nonzero forms, represented by its canonical form.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ProjectiveCurveClass {
    pub index: u64,
    pub form: HomogeneousForm,
}

impl ProjectiveCurveClass {
    /// Number of nonzero forms in the class.
    pub fn class_size(q: u32) -> u64 {
        q as u64 - 1
    }
}

/// All projective classes of nonzero degree-`d` forms, in class-index order.
pub fn enumerate_curve_classes(
    field: &Field,
    d: u32,
    form_budget: u64,
) -> Result<impl Iterator<Item = ProjectiveCurveClass> + '_> {
    if !(1..=3).contains(&d) {
        return Err(Error::UnsupportedDegree(d));
    }
    let len = monomial_count(d);
    let forms = (field.q() as u128).pow(len as u32);
    if forms > form_budget as u128 {
        return Err(Error::BudgetExceeded { required: forms, budget: form_budget as u128 });
    }
    let space = ClassSpace::new(field.q(), len);
    Ok((0..space.count()).map(move |index| ProjectiveCurveClass {
        index,
        form: HomogeneousForm { degree: d, coeffs: space.coeffs_at(field, index) },
    }))
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    const X: [u32; 3] = [1, 0, 0];

    #[test]
    fn point_counts_and_order() {
        for q in [2u64, 3, 4, 5, 7, 8, 9] {
            let field = Field::new(q).unwrap();
            let pts = enumerate_points(&field);
            assert_eq!(pts.len(), plane_size(q as u32));
            assert_eq!(pts[0].coords, [FieldElement::ONE, FieldElement::ZERO, FieldElement::ZERO]);
            for p in &pts {
                assert_eq!(canonicalize(&field, p.coords), Some(p.coords));
                assert_eq!(point_index(&field, &p.coords), p.index);
            }
        }
    }

    #[test]
    fn monomial_lists() {
        assert_eq!(monomials(1).len(), 3);
        assert_eq!(monomials(2).len(), 6);
        assert_eq!(monomials(3).len(), 10);
        assert_eq!(monomials(2), vec![[2, 0, 0], [1, 1, 0], [1, 0, 1], [0, 2, 0], [0, 1, 1], [0, 0, 2]]);
        for d in 0..=4 {
            for (i, e) in monomials(d).into_iter().enumerate() {
                assert_eq!(monomial_position(d, e), i);
            }
        }
    }

    #[test]
    fn evaluation_examples() {
        let f3 = Field::new(3).unwrap();
        let one = FieldElement::ONE;
        let zero = FieldElement::ZERO;
        let xyz = HomogeneousForm::from_int_terms(&f3, 3, &[(1, [1, 1, 1])]);
        assert_eq!(xyz.evaluate(&f3, &[one, one, one]), one);
        let x = HomogeneousForm::from_int_terms(&f3, 1, &[(1, X)]);
        assert_eq!(x.evaluate(&f3, &[zero, one, zero]), zero);
        let q = HomogeneousForm::from_int_terms(&f3, 2, &[(1, [2, 0, 0]), (1, [0, 2, 0])]);
        assert_eq!(q.evaluate(&f3, &[one, one, zero]), f3.from_int(2));
    }

    #[test]
    fn incidence_counts() {
        for q in [2u64, 3, 4, 5, 7, 8, 9] {
            let plane = Plane::new(Field::new(q).unwrap()).unwrap();
            for line in plane.lines() {
                assert_eq!(line.points.len() as u64, q + 1);
            }
            for p in 0..plane.n() {
                let through = plane.lines().iter().filter(|l| l.mask.contains(p)).count();
                assert_eq!(through as u64, q + 1);
            }
            let (a, b) = (0, plane.n() - 1);
            let l = plane.line_through(a, b);
            assert!(plane.lines()[l].mask.contains(a) && plane.lines()[l].mask.contains(b));
        }
    }

    #[test]
    fn class_counts() {
        let f3 = Field::new(3).unwrap();
        let f4 = Field::new(4).unwrap();
        assert_eq!(enumerate_curve_classes(&f3, 3, DEFAULT_FORM_BUDGET).unwrap().count(), 29_524);
        assert_eq!(enumerate_curve_classes(&f4, 2, DEFAULT_FORM_BUDGET).unwrap().count(), 1365);
        assert_eq!(enumerate_curve_classes(&f3, 1, DEFAULT_FORM_BUDGET).unwrap().count(), 13);
        assert!(matches!(
            enumerate_curve_classes(&f3, 3, 1000).err(),
            Some(Error::BudgetExceeded { required: 59049, budget: 1000 })
        ));
    }

    #[test]
    fn class_index_roundtrip_and_line_duality() {
        for q in [2u64, 3, 4, 5] {
            let field = Field::new(q).unwrap();
            for d in 1..=2 {
                for class in enumerate_curve_classes(&field, d, DEFAULT_FORM_BUDGET).unwrap() {
                    let space = ClassSpace::for_degree(field.q(), d);
                    assert!(class.form.is_canonical());
                    assert_eq!(space.index_of(&field, class.form.coeffs()), Some(class.index));
                    for a in field.nonzero() {
                        let scaled = class.form.scale(&field, a);
                        assert_eq!(space.index_of(&field, scaled.coeffs()), Some(class.index));
                    }
                    if d == 1 {
                        let c = class.form.coeffs();
                        assert_eq!(point_index(&field, &[c[0], c[1], c[2]]), class.index as usize);
                    }
                }
            }
        }
    }

    #[test]
    fn exact_division() {
        let f = Field::new(5).unwrap();
        let a = HomogeneousForm::from_int_terms(&f, 1, &[(1, [1, 0, 0]), (2, [0, 1, 0])]);
        let b = HomogeneousForm::from_int_terms(&f, 2, &[(1, [0, 2, 0]), (3, [1, 0, 1]), (4, [0, 0, 2])]);
        let prod = a.mul(&f, &b);
        assert_eq!(prod.divide_exact(&f, &a), Some(b.clone()));
        assert_eq!(prod.divide_exact(&f, &b), Some(a.clone()));
        let z = HomogeneousForm::from_int_terms(&f, 1, &[(1, [0, 0, 1])]);
        assert_eq!(prod.divide_exact(&f, &z), None);
    }

    #[test]
    fn partial_derivatives() {
        let f = Field::new(3).unwrap();
        // y^2 z - x^3 has partials (0, 2yz, y^2) in characteristic 3.
        let c = HomogeneousForm::from_int_terms(&f, 3, &[(1, [0, 2, 1]), (-1, [3, 0, 0])]);
        assert!(c.partial(&f, 0).is_zero());
        assert_eq!(c.partial(&f, 1), HomogeneousForm::from_int_terms(&f, 2, &[(2, [0, 1, 1])]));
        assert_eq!(c.partial(&f, 2), HomogeneousForm::from_int_terms(&f, 2, &[(1, [0, 2, 0])]));
    }

    fn small_field() -> impl Strategy<Value = u64> {
        prop_oneof![Just(2u64), Just(3), Just(4), Just(5), Just(7), Just(8), Just(9)]
    }

    proptest! {
        #[test]
        fn zero_set_is_scale_invariant_and_evaluation_linear(
            q in small_field(),
            d in 1u32..=3,
            seed in proptest::collection::vec(0u32..1000, 21),
            alpha in 1u32..1000,
        ) {
            let field = Field::new(q).unwrap();
            let plane = Plane::new(field.clone()).unwrap();
            let len = monomial_count(d);
            let pick = |s: u32| FieldElement(s % field.q());
            let f = HomogeneousForm::new(d, seed[..len].iter().map(|&s| pick(s)).collect()).unwrap();
            let g = HomogeneousForm::new(d, seed[len..2 * len].iter().map(|&s| pick(s * 7 + 3)).collect()).unwrap();
            let a = FieldElement(1 + alpha % (field.q() - 1));
            prop_assert_eq!(plane.zero_mask(&f), plane.zero_mask(&f.scale(&field, a)));
            let combo = f.scale(&field, a).add(&field, &g);
            for p in 0..plane.n() {
                let lhs = plane.eval(&combo, p);
                let rhs = field.add(field.mul(a, plane.eval(&f, p)), plane.eval(&g, p));
                prop_assert_eq!(lhs, rhs);
                prop_assert_eq!(plane.eval(&f, p), f.evaluate(&field, &plane.point(p).coords));
                // Another representative scales the value by a^d.
                let moved = plane.point(p).coords.map(|c| field.mul(c, a));
                let ad = field.pow(a, d as i64).unwrap();
                prop_assert_eq!(f.evaluate(&field, &moved), field.mul(ad, plane.eval(&f, p)));
            }
        }

        #[test]
        fn substitution_matches_pointwise_evaluation(
            q in small_field(),
            seed in proptest::collection::vec(0u32..1000, 19),
        ) {
            let field = Field::new(q).unwrap();
            let pick = |s: u32| FieldElement(s % field.q());
            let f = HomogeneousForm::new(3, seed[..10].iter().map(|&s| pick(s)).collect()).unwrap();
            let m = [
                [pick(seed[10]), pick(seed[11]), pick(seed[12])],
                [pick(seed[13]), pick(seed[14]), pick(seed[15])],
                [pick(seed[16]), pick(seed[17]), pick(seed[18])],
            ];
            let g = f.substitute(&field, &m);
            for p in enumerate_points(&field) {
                let image = apply_matrix(&field, &m, &p.coords);
                prop_assert_eq!(g.evaluate(&field, &p.coords), f.evaluate(&field, &image));
            }
        }
    }
}
