//! Factorization-based classification of lines, conics and cubics.
//!
//! Forms are factored by trial division by the rational lines. A residual
//! conic or cubic without rational line factors splits over the closure iff
//! it contains a line of P²(F_{q^2}), respectively P²(F_{q^3}), that is not
//! defined over F_q. A form of degree `d` contains a line iff it vanishes at
//! `d + 1` distinct points of it.

use std::sync::OnceLock;

use crate::engine::{class_zero_masks, Budget};
use crate::error::{Error, Result};
use crate::geometry::{
    enumerate_points, monomial_count, monomial_position, monomials, ClassSpace, Coords, HomogeneousForm, Plane,
};
use crate::gf::{Extension, Field, FieldElement};
use crate::linalg::Row;

/// The lines of P²(F_{q^m}) not defined over F_q, with probe points for
/// containment tests of degree-`m` forms.
#[derive(Clone, Debug)]
pub struct ExtensionLines {
    ext: Extension,
    lines: Vec<Coords>,
    /// `m + 1` points per line, each as its degree-`m` monomial values.
    probes: Vec<FieldElement>,
}

impl ExtensionLines {
    pub fn new(field: &Field, degree: u32) -> Result<Self> {
        let ext = field.extend(degree)?;
        let big = &ext.field;
        let rational = |c: &Coords| c.iter().all(|&x| ext.restrict(x).is_some());
        let g = big.generator();
        let mono = monomials(degree);
        let mut lines = Vec::new();
        let mut probes = Vec::new();
        for p in enumerate_points(big) {
            let l = p.coords;
            if rational(&l) {
                continue;
            }
            let (p1, p2) = span_of_line(big, &l);
            let comb = |s: FieldElement| [0, 1, 2].map(|i| big.add(p1[i], big.mul(s, p2[i])));
            let pts = [p1, p2, comb(FieldElement::ONE), comb(g)];
            for pt in &pts[..degree as usize + 1] {
                for e in &mono {
                    let f = HomogeneousForm::from_int_terms(big, degree, &[(1, *e)]);
                    probes.push(f.evaluate(big, pt));
                }
            }
            lines.push(l);
        }
        Ok(ExtensionLines { ext, lines, probes })
    }

    pub fn extension(&self) -> &Extension {
        &self.ext
    }

    pub fn lines(&self) -> &[Coords] {
        &self.lines
    }

    /// First non-rational line contained in the zero set of `form`, a
    /// degree-`m` form over F_q.
    pub fn contained_line(&self, form: &HomogeneousForm) -> Option<usize> {
        let m = self.ext.degree as usize;
        assert_eq!(form.degree() as usize, m, "probe degree");
        let big = &self.ext.field;
        let coeffs: Vec<FieldElement> = form.coeffs().iter().map(|&c| self.ext.embed(c)).collect();
        let len = coeffs.len();
        let stride = (m + 1) * len;
        (0..self.lines.len()).find(|&i| {
            self.probes[i * stride..(i + 1) * stride].chunks(len).all(|vals| {
                vals.iter().zip(&coeffs).fold(FieldElement::ZERO, |acc, (&v, &c)| big.add(acc, big.mul(v, c))).is_zero()
            })
        })
    }

    /// Product of the Galois conjugates of line `i`, a form over F_q.
    pub fn norm_form(&self, i: usize) -> HomogeneousForm {
        let big = &self.ext.field;
        let mut l = self.lines[i];
        let mut prod = HomogeneousForm::linear(l);
        for _ in 1..self.ext.degree {
            l = l.map(|x| self.ext.conjugate(x));
            prod = prod.mul(big, &HomogeneousForm::linear(l));
        }
        prod.try_map_coeffs(|c| self.ext.restrict(c)).expect("norm is Galois invariant")
    }
}

/// Two points spanning the line with coordinates `l`.
fn span_of_line(field: &Field, l: &Coords) -> (Coords, Coords) {
    let (z, o) = (FieldElement::ZERO, FieldElement::ONE);
    let ratio = |a: FieldElement, b: FieldElement| field.neg(field.div(a, b).expect("nonzero"));
    if !l[2].is_zero() {
        ([o, z, ratio(l[0], l[2])], [z, o, ratio(l[1], l[2])])
    } else if !l[1].is_zero() {
        ([o, ratio(l[0], l[1]), z], [z, z, o])
    } else {
        ([z, o, z], [z, z, o])
    }
}

/// Geometric type of a conic.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum ConicClass {
    Zero,
    DoubleLine,
    TwoRationalLines,
    ConjugateLinePair,
    Smooth,
}

impl ConicClass {
    /// Rational points of a nonzero conic of this type.
    pub fn point_count(self, q: u32) -> Option<u32> {
        match self {
            ConicClass::Zero => None,
            ConicClass::DoubleLine | ConicClass::Smooth => Some(q + 1),
            ConicClass::TwoRationalLines => Some(2 * q + 1),
            ConicClass::ConjugateLinePair => Some(1),
        }
    }
}

/// Factorization type of a nonzero cubic.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum CubicType {
    TripleLine,
    DoubleLineAndLine,
    ThreeLines,
    LineAndSmoothConic,
    LineAndConjugatePair,
    ConjugateTriple,
    AbsolutelyIrreducible,
}

/// Singularity type of a cubic.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum SingularCubicType {
    Smooth,
    Cuspidal,
    SplitNodal,
    NonsplitNodal,
    Reducible,
}

impl SingularCubicType {
    /// Rational points of an absolutely irreducible singular cubic.
    pub fn point_count(self, q: u32) -> Option<u32> {
        match self {
            SingularCubicType::Cuspidal => Some(q + 1),
            SingularCubicType::SplitNodal => Some(q),
            SingularCubicType::NonsplitNodal => Some(q + 2),
            _ => None,
        }
    }
}

/// An F_q-irreducible factor, canonically scaled.
#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord)]
pub struct Factor {
    pub form: HomogeneousForm,
    pub multiplicity: u32,
    pub absolutely_irreducible: bool,
}

impl Factor {
    pub fn degree(&self) -> u32 {
        self.form.degree()
    }
}

/// Factorization over F_q of a nonzero form, up to a scalar.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Factorization {
    pub factors: Vec<Factor>,
}

impl Factorization {
    pub fn degree(&self) -> u32 {
        self.factors.iter().map(|f| f.degree() * f.multiplicity).sum()
    }

    pub fn is_absolutely_irreducible(&self) -> bool {
        matches!(self.factors.as_slice(), [f] if f.multiplicity == 1 && f.absolutely_irreducible)
    }

    /// Canonical product of the factors.
    pub fn product(&self, field: &Field) -> HomogeneousForm {
        let one = HomogeneousForm::new(0, vec![FieldElement::ONE]).expect("constant");
        self.factors
            .iter()
            .flat_map(|f| std::iter::repeat(&f.form).take(f.multiplicity as usize))
            .fold(one, |acc, f| acc.mul(field, f))
            .canonical(field)
    }

    pub fn conic_class(&self) -> ConicClass {
        match self.factors.as_slice() {
            [] => ConicClass::Zero,
            [l] if l.degree() == 1 => ConicClass::DoubleLine,
            [_, _] => ConicClass::TwoRationalLines,
            [c] if c.absolutely_irreducible => ConicClass::Smooth,
            _ => ConicClass::ConjugateLinePair,
        }
    }

    pub fn cubic_type(&self) -> CubicType {
        let lines: Vec<u32> = self.factors.iter().filter(|f| f.degree() == 1).map(|f| f.multiplicity).collect();
        let rest = self.factors.iter().find(|f| f.degree() > 1);
        match (rest, lines.as_slice()) {
            (None, [3]) => CubicType::TripleLine,
            (None, [_, _]) => CubicType::DoubleLineAndLine,
            (None, _) => CubicType::ThreeLines,
            (Some(c), _) if c.degree() == 2 && c.absolutely_irreducible => CubicType::LineAndSmoothConic,
            (Some(c), _) if c.degree() == 2 => CubicType::LineAndConjugatePair,
            (Some(c), _) if c.absolutely_irreducible => CubicType::AbsolutelyIrreducible,
            _ => CubicType::ConjugateTriple,
        }
    }
}

/// Factor type of a class in a [`ComponentTable`].
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum FormKind {
    Line,
    Conic(ConicClass),
    Cubic(CubicType),
}

/// Per-class data of all nonzero forms of one degree, in class-index order.
///
/// Two classes share a component iff their `lines` masks intersect or
/// their `tags` agree; a tag names the unique F_q-irreducible component of
/// degree at least 2, and classes without one get a tag used nowhere else.
#[derive(Clone, Debug)]
pub struct ComponentTable {
    pub degree: u32,
    pub kinds: Vec<FormKind>,
    /// Zero set over P²(F_q).
    pub zeros: Vec<u128>,
    /// Rational line factors, as a mask over line indices.
    pub lines: Vec<u128>,
    pub tags: Vec<u32>,
}

impl ComponentTable {
    pub fn len(&self) -> usize {
        self.kinds.len()
    }

    pub fn is_empty(&self) -> bool {
        self.kinds.is_empty()
    }
}

/// The plane together with lazily built extension-line tables.
#[derive(Debug)]
pub struct CurveGeometry {
    plane: Plane,
    quadratic: OnceLock<ExtensionLines>,
    cubic: OnceLock<ExtensionLines>,
}

impl CurveGeometry {
    pub fn new(plane: Plane) -> Self {
        CurveGeometry { plane, quadratic: OnceLock::new(), cubic: OnceLock::new() }
    }

    pub fn for_q(q: u64) -> Result<Self> {
        Ok(Self::new(Plane::new(Field::new(q)?)?))
    }

    pub fn plane(&self) -> &Plane {
        &self.plane
    }

    pub fn field(&self) -> &Field {
        self.plane.field()
    }

    /// Non-rational lines over F_{q^2}.
    pub fn quadratic_lines(&self) -> &ExtensionLines {
        self.quadratic.get_or_init(|| ExtensionLines::new(self.field(), 2).expect("q <= 9 fits the tables"))
    }

    /// Non-rational lines over F_{q^3}.
    pub fn cubic_lines(&self) -> &ExtensionLines {
        self.cubic.get_or_init(|| ExtensionLines::new(self.field(), 3).expect("q <= 9 fits the tables"))
    }

    /// Factorization over F_q with absolute-irreducibility flags.
    pub fn factorize(&self, form: &HomogeneousForm) -> Result<Factorization> {
        if form.is_zero() {
            return Err(Error::InvalidArgument("the zero form has no factorization".into()));
        }
        if !(1..=3).contains(&form.degree()) {
            return Err(Error::UnsupportedDegree(form.degree()));
        }
        let field = self.field();
        let mut rest = form.canonical(field);
        let mut factors = Vec::new();
        for line in self.plane.lines() {
            if rest.degree() == 0 {
                break;
            }
            let mut multiplicity = 0;
            while rest.degree() > 0 {
                match rest.divide_exact(field, &line.form) {
                    Some(quot) => {
                        rest = quot;
                        multiplicity += 1;
                    }
                    None => break,
                }
            }
            if multiplicity > 0 {
                factors.push(Factor { form: line.form.clone(), multiplicity, absolutely_irreducible: true });
            }
        }
        let splits = match rest.degree() {
            0 => None,
            2 => Some(self.quadratic_lines().contained_line(&rest).is_some()),
            3 => Some(self.cubic_lines().contained_line(&rest).is_some()),
            d => unreachable!("a residual of degree {d} has a rational line factor"),
        };
        if let Some(splits) = splits {
            factors.push(Factor { form: rest.canonical(field), multiplicity: 1, absolutely_irreducible: !splits });
        }
        Ok(Factorization { factors })
    }

    pub fn classify_conic(&self, form: &HomogeneousForm) -> Result<ConicClass> {
        if form.degree() != 2 {
            return Err(Error::UnsupportedDegree(form.degree()));
        }
        if form.is_zero() {
            return Ok(ConicClass::Zero);
        }
        Ok(self.factorize(form)?.conic_class())
    }

    /// Degree of `gcd(f, g)`; zero iff no common component over the closure.
    pub fn common_component_degree(&self, f: &HomogeneousForm, g: &HomogeneousForm) -> Result<u32> {
        let (a, b) = (self.factorize(f)?, self.factorize(g)?);
        Ok(a.factors
            .iter()
            .filter_map(|x| {
                b.factors.iter().find(|y| y.form == x.form).map(|y| x.degree() * x.multiplicity.min(y.multiplicity))
            })
            .sum())
    }

    /// Number of rational points where both forms vanish.
    pub fn common_zero_count(&self, f: &HomogeneousForm, g: &HomogeneousForm) -> u32 {
        (self.plane.zero_mask(f) & self.plane.zero_mask(g)).count()
    }

    /// Rational singular points, as point indices.
    pub fn rational_singular_points(&self, form: &HomogeneousForm) -> Vec<usize> {
        let field = self.field();
        let parts = [form.partial(field, 0), form.partial(field, 1), form.partial(field, 2)];
        (0..self.plane.n())
            .filter(|&p| self.plane.eval(form, p).is_zero() && parts.iter().all(|g| self.plane.eval(g, p).is_zero()))
            .collect()
    }

    /// Smooth, reducible, or the type of the singular point.
    ///
    /// The singular point of an absolutely irreducible cubic is unique, hence
    /// rational, and its tangent cone is read off after moving it to
    /// `[0:0:1]`.
    pub fn classify_singular_cubic(&self, form: &HomogeneousForm) -> Result<SingularCubicType> {
        if form.degree() != 3 {
            return Err(Error::UnsupportedDegree(form.degree()));
        }
        if form.is_zero() || !self.factorize(form)?.is_absolutely_irreducible() {
            return Ok(SingularCubicType::Reducible);
        }
        match self.rational_singular_points(form).first() {
            None => Ok(SingularCubicType::Smooth),
            Some(&p) => Ok(tangent_cone_type(self.field(), form, &self.plane.point(p).coords)),
        }
    }

    pub fn line_table(&self) -> ComponentTable {
        let field = self.field();
        let tags = TagScheme::new(field.q());
        let space = ClassSpace::for_degree(field.q(), 1);
        let mut t = ComponentTable { degree: 1, kinds: vec![], zeros: vec![], lines: vec![], tags: vec![] };
        for idx in 0..space.count() {
            let coeffs = space.coeffs_at(field, idx);
            let li = self.plane.index_of([coeffs[0], coeffs[1], coeffs[2]]).expect("nonzero");
            t.kinds.push(FormKind::Line);
            t.zeros.push(self.plane.lines()[li].mask.as_u128());
            t.lines.push(1u128 << li);
            t.tags.push(tags.unique(1, idx));
        }
        t
    }

    /// Conic classes from products of lines; all others are F_q-irreducible.
    pub fn conic_table(&self) -> ComponentTable {
        let field = self.field();
        let tags = TagScheme::new(field.q());
        let space = ClassSpace::for_degree(field.q(), 2);
        let count = space.count() as usize;
        let mut t = ComponentTable {
            degree: 2,
            kinds: vec![FormKind::Conic(ConicClass::Smooth); count],
            zeros: class_zero_masks(field, &monomial_rows(&self.plane, 2)),
            lines: vec![0; count],
            tags: (0..count as u64).map(|i| tags.irreducible(2, i)).collect(),
        };
        let lines = self.plane.lines();
        for i in 0..lines.len() {
            for j in i..lines.len() {
                let idx =
                    space.index_of(field, lines[i].form.mul(field, &lines[j].form).coeffs()).expect("nonzero") as usize;
                let kind = if i == j { ConicClass::DoubleLine } else { ConicClass::TwoRationalLines };
                t.kinds[idx] = FormKind::Conic(kind);
                t.lines[idx] = (1u128 << i) | (1u128 << j);
                t.tags[idx] = tags.unique(2, idx as u64);
            }
        }
        let ext = self.quadratic_lines();
        for i in 0..ext.lines().len() {
            let idx = space.index_of(field, ext.norm_form(i).coeffs()).expect("nonzero") as usize;
            t.kinds[idx] = FormKind::Conic(ConicClass::ConjugateLinePair);
        }
        t
    }

    /// Cubic classes from line-times-conic products and conjugate triples;
    /// all others are absolutely irreducible.
    pub fn cubic_table(&self, conics: &ComponentTable, budget: &Budget) -> Result<ComponentTable> {
        let field = self.field();
        if field.q() < 3 {
            return Err(Error::FieldTooSmall { what: "cubic table", q: field.q(), d: 3 });
        }
        budget.check_forms(field.q(), monomial_count(3))?;
        let tags = TagScheme::new(field.q());
        let space = ClassSpace::for_degree(field.q(), 3);
        let conic_space = ClassSpace::for_degree(field.q(), 2);
        let count = space.count() as usize;
        let mut t = ComponentTable {
            degree: 3,
            kinds: vec![FormKind::Cubic(CubicType::AbsolutelyIrreducible); count],
            zeros: class_zero_masks(field, &monomial_rows(&self.plane, 3)),
            lines: vec![0; count],
            tags: (0..count as u64).map(|i| tags.irreducible(3, i)).collect(),
        };
        for (i, line) in self.plane.lines().iter().enumerate() {
            let bit = 1u128 << i;
            for c in 0..conics.len() {
                let conic = HomogeneousForm::new(2, conic_space.coeffs_at(field, c as u64))?;
                let idx = space.index_of(field, line.form.mul(field, &conic).coeffs()).expect("nonzero") as usize;
                let FormKind::Conic(kind) = conics.kinds[c] else { unreachable!("conic table") };
                let has = conics.lines[c] & bit != 0;
                let (cubic, tag) = match kind {
                    ConicClass::DoubleLine if has => (CubicType::TripleLine, None),
                    ConicClass::DoubleLine | ConicClass::TwoRationalLines if has => {
                        (CubicType::DoubleLineAndLine, None)
                    }
                    ConicClass::DoubleLine => (CubicType::DoubleLineAndLine, None),
                    ConicClass::TwoRationalLines => (CubicType::ThreeLines, None),
                    ConicClass::Smooth => (CubicType::LineAndSmoothConic, Some(conics.tags[c])),
                    ConicClass::ConjugateLinePair => (CubicType::LineAndConjugatePair, Some(conics.tags[c])),
                    ConicClass::Zero => unreachable!("nonzero classes only"),
                };
                t.kinds[idx] = FormKind::Cubic(cubic);
                t.lines[idx] = conics.lines[c] | bit;
                t.tags[idx] = tag.unwrap_or_else(|| tags.unique(3, idx as u64));
            }
        }
        let ext = self.cubic_lines();
        for i in 0..ext.lines().len() {
            let idx = space.index_of(field, ext.norm_form(i).coeffs()).expect("nonzero") as usize;
            t.kinds[idx] = FormKind::Cubic(CubicType::ConjugateTriple);
        }
        Ok(t)
    }

    /// Table for degree 1, 2 or 3.
    pub fn component_table(&self, degree: u32, budget: &Budget) -> Result<ComponentTable> {
        match degree {
            1 => Ok(self.line_table()),
            2 => Ok(self.conic_table()),
            3 => self.cubic_table(&self.conic_table(), budget),
            d => Err(Error::UnsupportedDegree(d)),
        }
    }
}

/// Generator rows of the degree-`d` evaluation map.
pub(crate) fn monomial_rows(plane: &Plane, d: u32) -> Vec<Row> {
    (0..monomial_count(d)).map(|m| (0..plane.n()).map(|p| plane.monomial_value(d, p, m)).collect()).collect()
}

/// Tag allocation shared by the tables of all degrees over one field.
#[derive(Clone, Copy, Debug)]
struct TagScheme {
    conics: u64,
    cubics: u64,
    lines: u64,
}

impl TagScheme {
    fn new(q: u32) -> Self {
        let count = |d| ClassSpace::for_degree(q, d).count();
        TagScheme { conics: count(2), cubics: count(3), lines: count(1) }
    }

    fn fit(tag: u64) -> u32 {
        u32::try_from(tag).expect("tags fit in 32 bits for q <= 9")
    }

    /// Tag of an F_q-irreducible class of degree 2 or 3.
    fn irreducible(&self, degree: u32, index: u64) -> u32 {
        Self::fit(if degree == 2 { index } else { self.conics + index })
    }

    /// A tag no other class of any degree carries.
    fn unique(&self, degree: u32, index: u64) -> u32 {
        let base = self.conics + self.cubics;
        Self::fit(match degree {
            1 => base + index,
            2 => base + self.lines + index,
            _ => base + self.lines + self.conics + index,
        })
    }
}

/// Tangent-cone type at the rational double point `p` of a cubic.
fn tangent_cone_type(field: &Field, form: &HomogeneousForm, p: &Coords) -> SingularCubicType {
    let lead = p.iter().position(|c| !c.is_zero()).expect("a point");
    let others: Vec<usize> = (0..3).filter(|&i| i != lead).collect();
    // Columns: two unit vectors completing `p`, then `p`.
    let m: [Coords; 3] = [0, 1, 2].map(|i| {
        let unit = |j: usize| if i == j { FieldElement::ONE } else { FieldElement::ZERO };
        [unit(others[0]), unit(others[1]), p[i]]
    });
    let g = form.substitute(field, &m);
    let c = |e: [u32; 3]| g.coeffs()[monomial_position(3, e)];
    let (a, b, d) = (c([2, 0, 1]), c([1, 1, 1]), c([0, 2, 1]));
    if a.is_zero() && b.is_zero() && d.is_zero() {
        return SingularCubicType::Reducible;
    }
    let quad = |s: FieldElement, t: FieldElement| {
        let s2 = field.mul(a, field.mul(s, s));
        let st = field.mul(b, field.mul(s, t));
        field.add(s2, field.add(st, field.mul(d, field.mul(t, t))))
    };
    let roots = field.elements().filter(|&t| quad(FieldElement::ONE, t).is_zero()).count()
        + quad(FieldElement::ZERO, FieldElement::ONE).is_zero() as usize;
    match roots {
        2 => SingularCubicType::SplitNodal,
        1 => SingularCubicType::Cuspidal,
        _ => SingularCubicType::NonsplitNodal,
    }
}

/// All points of P²(field) where `form` and its partials vanish.
pub fn singular_points(field: &Field, form: &HomogeneousForm) -> Vec<Coords> {
    let parts = [form.partial(field, 0), form.partial(field, 1), form.partial(field, 2)];
    enumerate_points(field)
        .into_iter()
        .map(|p| p.coords)
        .filter(|c| form.evaluate(field, c).is_zero() && parts.iter().all(|g| g.evaluate(field, c).is_zero()))
        .collect()
}

#[cfg(test)]
mod tests {
    use super::*;
    use std::collections::HashMap;

    fn geom(q: u64) -> CurveGeometry {
        CurveGeometry::for_q(q).unwrap()
    }

    fn form(g: &CurveGeometry, d: u32, terms: &[(i64, [u32; 3])]) -> HomogeneousForm {
        HomogeneousForm::from_int_terms(g.field(), d, terms)
    }

    #[test]
    fn conic_examples() {
        let g = geom(3);
        assert_eq!(g.classify_conic(&form(&g, 2, &[(1, [1, 0, 1])])).unwrap(), ConicClass::TwoRationalLines);
        assert_eq!(g.classify_conic(&form(&g, 2, &[(1, [2, 0, 0])])).unwrap(), ConicClass::DoubleLine);
        let sum = form(&g, 2, &[(1, [2, 0, 0]), (1, [0, 2, 0])]);
        assert_eq!(g.classify_conic(&sum).unwrap(), ConicClass::ConjugateLinePair);
        let smooth = form(&g, 2, &[(1, [1, 1, 0]), (-1, [0, 0, 2])]);
        assert_eq!(g.classify_conic(&smooth).unwrap(), ConicClass::Smooth);
        assert_eq!(g.classify_conic(&HomogeneousForm::zero(2)).unwrap(), ConicClass::Zero);
        // Over F_5, -1 is a square and x^2 + y^2 splits.
        let g5 = geom(5);
        let sum5 = form(&g5, 2, &[(1, [2, 0, 0]), (1, [0, 2, 0])]);
        assert_eq!(g5.classify_conic(&sum5).unwrap(), ConicClass::TwoRationalLines);
    }

    #[test]
    fn conic_inventory_and_point_counts() {
        for q in [2u64, 3, 4, 5, 7] {
            let g = geom(q);
            let t = g.conic_table();
            let n = (q * q + q + 1) as usize;
            let mut counts: HashMap<FormKind, usize> = HashMap::new();
            for (k, z) in t.kinds.iter().zip(&t.zeros) {
                *counts.entry(*k).or_default() += 1;
                let FormKind::Conic(c) = k else { panic!() };
                assert_eq!(Some(z.count_ones()), c.point_count(q as u32), "{c:?} at q={q}");
            }
            let q = q as usize;
            assert_eq!(counts[&FormKind::Conic(ConicClass::DoubleLine)], n);
            assert_eq!(counts[&FormKind::Conic(ConicClass::TwoRationalLines)], n * (n - 1) / 2);
            assert_eq!(counts[&FormKind::Conic(ConicClass::ConjugateLinePair)], n * (q * q - q) / 2);
            assert_eq!(counts[&FormKind::Conic(ConicClass::Smooth)], q.pow(5) - q * q);
        }
    }

    #[test]
    fn conic_table_matches_trial_division() {
        for q in [3u64, 4] {
            let g = geom(q);
            let t = g.conic_table();
            let space = ClassSpace::for_degree(q as u32, 2);
            for idx in 0..space.count() {
                let f = HomogeneousForm::new(2, space.coeffs_at(g.field(), idx)).unwrap();
                let fac = g.factorize(&f).unwrap();
                assert_eq!(fac.product(g.field()), f);
                assert_eq!(t.kinds[idx as usize], FormKind::Conic(fac.conic_class()));
            }
        }
    }

    #[test]
    fn cubic_table_matches_trial_division() {
        let g = geom(3);
        let conics = g.conic_table();
        let t = g.cubic_table(&conics, &Budget::DEFAULT).unwrap();
        let space = ClassSpace::for_degree(3, 3);
        let mut seen: HashMap<CubicType, usize> = HashMap::new();
        for idx in 0..space.count() {
            let f = HomogeneousForm::new(3, space.coeffs_at(g.field(), idx)).unwrap();
            let fac = g.factorize(&f).unwrap();
            assert_eq!(fac.degree(), 3);
            assert_eq!(fac.product(g.field()), f);
            assert_eq!(t.kinds[idx as usize], FormKind::Cubic(fac.cubic_type()), "class {idx}");
            let lines: u128 = fac
                .factors
                .iter()
                .filter(|x| x.degree() == 1)
                .map(|x| {
                    1u128 << g.plane().index_of([x.form.coeffs()[0], x.form.coeffs()[1], x.form.coeffs()[2]]).unwrap()
                })
                .sum();
            assert_eq!(t.lines[idx as usize], lines);
            *seen.entry(fac.cubic_type()).or_default() += 1;
        }
        // Conjugate triples: (q^6 + q^3 + 1 - (q^2 + q + 1)) / 3 lines orbits.
        assert_eq!(seen[&CubicType::ConjugateTriple], (729 + 27 + 1 - 13) / 3);
        assert_eq!(seen.values().sum::<usize>(), 29524);
    }

    #[test]
    fn cubic_table_samples_at_q4() {
        let g = geom(4);
        let t = g.cubic_table(&g.conic_table(), &Budget::DEFAULT).unwrap();
        let space = ClassSpace::for_degree(4, 3);
        for idx in (0..space.count()).step_by(211) {
            let f = HomogeneousForm::new(3, space.coeffs_at(g.field(), idx)).unwrap();
            assert_eq!(t.kinds[idx as usize], FormKind::Cubic(g.factorize(&f).unwrap().cubic_type()));
        }
    }

    #[test]
    fn shared_components_follow_tags() {
        let g = geom(3);
        let conics = g.conic_table();
        let cubics = g.cubic_table(&conics, &Budget::DEFAULT).unwrap();
        let cs = ClassSpace::for_degree(3, 2);
        let ks = ClassSpace::for_degree(3, 3);
        for (i, j) in [(0u64, 5u64), (17, 4000), (100, 29000), (363, 12345), (200, 7)]
            .into_iter()
            .chain((0..300).map(|s| (s * 37 % 364, s * 9973 % 29524)))
        {
            let f = HomogeneousForm::new(2, cs.coeffs_at(g.field(), i)).unwrap();
            let h = HomogeneousForm::new(3, ks.coeffs_at(g.field(), j)).unwrap();
            let (i, j) = (i as usize, j as usize);
            let share = conics.lines[i] & cubics.lines[j] != 0 || conics.tags[i] == cubics.tags[j];
            assert_eq!(share, g.common_component_degree(&f, &h).unwrap() > 0);
        }
    }

    #[test]
    fn common_component_examples() {
        let g = geom(5);
        let x3 = form(&g, 3, &[(1, [3, 0, 0])]);
        let y3 = form(&g, 3, &[(1, [0, 3, 0])]);
        assert_eq!(g.common_component_degree(&x3, &y3).unwrap(), 0);
        let xc = form(&g, 3, &[(1, [1, 2, 0]), (-1, [2, 0, 1])]);
        let xz2 = form(&g, 3, &[(1, [1, 0, 2])]);
        assert!(g.common_component_degree(&xc, &xz2).unwrap() >= 1);
        let conic = form(&g, 2, &[(1, [0, 2, 0]), (-1, [1, 0, 1])]);
        let l1 = form(&g, 1, &[(1, [1, 0, 0])]);
        let l2 = form(&g, 1, &[(1, [0, 1, 0]), (2, [0, 0, 1])]);
        let a = conic.mul(g.field(), &l1);
        let b = conic.mul(g.field(), &l2);
        assert_eq!(g.common_component_degree(&a, &b).unwrap(), 2);
        assert!(g.common_component_degree(&HomogeneousForm::zero(3), &a).is_err());
        let x = form(&g, 1, &[(1, [1, 0, 0])]);
        let y = form(&g, 1, &[(1, [0, 1, 0])]);
        assert_eq!(g.common_zero_count(&x, &y), 1);
        assert_eq!(g.common_zero_count(&a, &a), g.plane().zero_mask(&a).count());
    }

    #[test]
    fn singular_point_examples() {
        let g = geom(3);
        let f = g.field();
        let smooth = form(&g, 2, &[(1, [1, 1, 0]), (-1, [0, 0, 2])]);
        assert!(singular_points(f, &smooth).is_empty());
        let x3 = form(&g, 3, &[(1, [3, 0, 0])]);
        assert_eq!(singular_points(f, &x3).len(), 4);
        let cusp = form(&g, 3, &[(1, [0, 2, 1]), (-1, [3, 0, 0])]);
        let z = [FieldElement::ZERO, FieldElement::ZERO, FieldElement::ONE];
        assert_eq!(singular_points(f, &cusp), vec![z]);
    }

    #[test]
    fn singular_cubic_examples() {
        for q in [3u64, 4, 5, 7, 8, 9] {
            let g = geom(q);
            let q = q as u32;
            let cusp = form(&g, 3, &[(1, [0, 2, 1]), (-1, [3, 0, 0])]);
            assert_eq!(g.classify_singular_cubic(&cusp).unwrap(), SingularCubicType::Cuspidal);
            assert_eq!(g.plane().zero_mask(&cusp).count(), q + 1);
            if g.field().p() != 2 {
                let node = form(&g, 3, &[(1, [0, 2, 1]), (-1, [3, 0, 0]), (-1, [2, 0, 1])]);
                assert_eq!(g.classify_singular_cubic(&node).unwrap(), SingularCubicType::SplitNodal);
                assert_eq!(g.plane().zero_mask(&node).count(), q);
            }
            let red = form(&g, 3, &[(1, [1, 2, 0]), (-1, [2, 0, 1])]);
            assert_eq!(g.classify_singular_cubic(&red).unwrap(), SingularCubicType::Reducible);
        }
    }

    /// Per-class singular types over all cubics, checked against point counts;
    /// also confirms no absolutely irreducible cubic has a singular point off
    /// the rational points.
    #[test]
    fn singular_types_have_expected_point_counts() {
        let g = geom(3);
        let ext = g.quadratic_lines().extension().clone();
        let space = ClassSpace::for_degree(3, 3);
        let mut per_type: HashMap<String, usize> = HashMap::new();
        for idx in 0..space.count() {
            let f = HomogeneousForm::new(3, space.coeffs_at(g.field(), idx)).unwrap();
            let ty = g.classify_singular_cubic(&f).unwrap();
            *per_type.entry(format!("{ty:?}")).or_default() += 1;
            if let Some(n) = ty.point_count(3) {
                assert_eq!(g.plane().zero_mask(&f).count(), n);
            }
            if ty == SingularCubicType::Smooth && idx % 7 == 0 {
                let big = f.map_coeffs(|c| ext.embed(c));
                assert!(singular_points(&ext.field, &big).is_empty());
            }
        }
        for key in ["Cuspidal", "SplitNodal", "NonsplitNodal", "Smooth", "Reducible"] {
            assert!(per_type[key] > 0, "{key}");
        }
    }

    #[test]
    fn bezout_bound_over_extensions() {
        let g = geom(3);
        let field = g.field();
        let conics = g.conic_table();
        let cubics = g.cubic_table(&conics, &Budget::DEFAULT).unwrap();
        let exts = [g.quadratic_lines().extension().clone(), g.cubic_lines().extension().clone()];
        let ks = ClassSpace::for_degree(3, 3);
        let mut tested = 0;
        for s in 0..120u64 {
            let (i, j) = ((s * 7919) % ks.count(), (s * 104_729 + 11) % ks.count());
            let (ui, uj) = (i as usize, j as usize);
            if cubics.lines[ui] & cubics.lines[uj] != 0 || cubics.tags[ui] == cubics.tags[uj] {
                continue;
            }
            let f = HomogeneousForm::new(3, ks.coeffs_at(field, i)).unwrap();
            let h = HomogeneousForm::new(3, ks.coeffs_at(field, j)).unwrap();
            assert!(g.common_zero_count(&f, &h) <= 9);
            for ext in &exts {
                let (fe, he) = (f.map_coeffs(|c| ext.embed(c)), h.map_coeffs(|c| ext.embed(c)));
                let common = enumerate_points(&ext.field)
                    .iter()
                    .filter(|p| {
                        fe.evaluate(&ext.field, &p.coords).is_zero() && he.evaluate(&ext.field, &p.coords).is_zero()
                    })
                    .count();
                assert!(common <= 9);
            }
            tested += 1;
        }
        assert!(tested > 50);
    }
}
