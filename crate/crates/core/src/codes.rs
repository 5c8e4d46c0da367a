//! Projective and affine Reed-Muller codes in the plane, dual codes and
//! encoding.

use std::fmt;

use serde_json::{json, Value};

use crate::error::{Error, Result};
use crate::geometry::{monomial_count, monomials, Coords, HomogeneousForm, Plane};
use crate::gf::{Field, FieldElement};
use crate::linalg::{nullspace, rank, Row};
use crate::mask::{SupportMask, MASK_CAPACITY};

/// How a code was obtained.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum CodeKind {
    /// Evaluations of degree-`d` forms at the points of P²(F_q).
    Projective(u32),
    /// Evaluations of polynomials of degree at most `d` at the points of the
    /// affine plane.
    Affine(u32),
    /// Dual of another code.
    Dual(Box<CodeKind>),
    /// Spanned by explicit rows.
    Custom,
}

impl fmt::Display for CodeKind {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            CodeKind::Projective(d) => write!(f, "projective({d})"),
            CodeKind::Affine(d) => write!(f, "affine({d})"),
            CodeKind::Dual(inner) => write!(f, "dual({inner})"),
            CodeKind::Custom => write!(f, "custom"),
        }
    }
}

/// Which evaluation points a Reed-Muller code uses.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Evaluation {
    Projective,
    Affine,
}

/// A linear code over F_q given by linearly independent generator rows.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct LinearCode {
    q: u32,
    n: usize,
    kind: CodeKind,
    rows: Vec<Row>,
}

/// A codeword with its support.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Codeword {
    pub symbols: Vec<FieldElement>,
    pub mask: SupportMask,
}

impl Codeword {
    pub fn weight(&self) -> u32 {
        self.mask.count()
    }
}

impl LinearCode {
    /// Code spanned by `rows`, which must be linearly independent.
    pub fn from_rows(field: &Field, n: usize, rows: Vec<Row>, kind: CodeKind) -> Result<Self> {
        if n > MASK_CAPACITY {
            return Err(Error::InvalidArgument(format!("length {n} exceeds {MASK_CAPACITY}")));
        }
        if let Some(bad) = rows.iter().find(|r| r.len() != n) {
            return Err(Error::LengthMismatch { expected: n, actual: bad.len() });
        }
        if rank(field, &rows) != rows.len() {
            return Err(Error::InvalidArgument("generator rows are linearly dependent".into()));
        }
        Ok(LinearCode { q: field.q(), n, kind, rows })
    }

    pub fn q(&self) -> u32 {
        self.q
    }

    pub fn len(&self) -> usize {
        self.n
    }

    pub fn is_empty(&self) -> bool {
        self.n == 0
    }

    pub fn dimension(&self) -> usize {
        self.rows.len()
    }

    pub fn kind(&self) -> &CodeKind {
        &self.kind
    }

    pub fn generator(&self) -> &[Row] {
        &self.rows
    }

    /// `message . G`.
    pub fn encode(&self, field: &Field, message: &[FieldElement]) -> Result<Codeword> {
        if message.len() != self.rows.len() {
            return Err(Error::LengthMismatch { expected: self.rows.len(), actual: message.len() });
        }
        let mut symbols = vec![FieldElement::ZERO; self.n];
        for (&m, row) in message.iter().zip(&self.rows) {
            if m.is_zero() {
                continue;
            }
            for (s, &g) in symbols.iter_mut().zip(row) {
                *s = field.add(*s, field.mul(m, g));
            }
        }
        let mask = SupportMask::from_indices((0..self.n).filter(|&i| !symbols[i].is_zero()));
        Ok(Codeword { symbols, mask })
    }

    /// Generator matrix as JSON (element indices).
    pub fn to_json(&self) -> Value {
        let rows: Vec<Vec<u32>> = self.rows.iter().map(|r| r.iter().map(|e| e.0).collect()).collect();
        json!({
            "q": self.q,
            "n": self.n,
            "k": self.rows.len(),
            "kind": self.kind.to_string(),
            "generator": rows,
        })
    }
}

/// Affine points `(a, b)`, represented as `[a:b:1]`, with `a` then `b` in
/// additive-code order.
pub fn affine_points(field: &Field) -> Vec<Coords> {
    let q = field.q();
    (0..q)
        .flat_map(|a| (0..q).map(move |b| (a, b)))
        .map(|(a, b)| [field.from_code(a), field.from_code(b), FieldElement::ONE])
        .collect()
}

/// Builds `C_{2,d}` (projective) or `C^A_{2,d}` (affine).
pub fn build_code(plane: &Plane, d: u32, evaluation: Evaluation) -> Result<LinearCode> {
    if !(1..=3).contains(&d) {
        return Err(Error::UnsupportedDegree(d));
    }
    let field = plane.field();
    let q = field.q();
    match evaluation {
        Evaluation::Projective => {
            if q < d {
                return Err(Error::FieldTooSmall { what: "projective code", q, d });
            }
            let rows = (0..monomial_count(d))
                .map(|m| (0..plane.n()).map(|p| plane.monomial_value(d, p, m)).collect())
                .collect();
            LinearCode::from_rows(field, plane.n(), rows, CodeKind::Projective(d))
        }
        Evaluation::Affine => {
            if q < d + 1 {
                return Err(Error::FieldTooSmall { what: "affine code", q, d });
            }
            let pts = affine_points(field);
            let rows = monomials(d)
                .into_iter()
                .map(|e| {
                    let mono = HomogeneousForm::from_int_terms(field, d, &[(1, e)]);
                    pts.iter().map(|c| mono.evaluate(field, c)).collect()
                })
                .collect();
            LinearCode::from_rows(field, pts.len(), rows, CodeKind::Affine(d))
        }
    }
}

/// The dual code under `<x, y> = sum x_i y_i`.
pub fn dual_code(field: &Field, code: &LinearCode) -> LinearCode {
    let rows = nullspace(field, &code.rows, code.n);
    LinearCode { q: code.q, n: code.n, kind: CodeKind::Dual(Box::new(code.kind.clone())), rows }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::linalg::rref;

    fn plane(q: u64) -> Plane {
        Plane::new(Field::new(q).unwrap()).unwrap()
    }

    #[test]
    fn dimensions() {
        let p3 = plane(3);
        let c33 = build_code(&p3, 3, Evaluation::Projective).unwrap();
        assert_eq!((c33.len(), c33.dimension()), (13, 10));
        let c32 = build_code(&p3, 2, Evaluation::Projective).unwrap();
        assert_eq!((c32.len(), c32.dimension()), (13, 6));
        let a32 = build_code(&p3, 2, Evaluation::Affine).unwrap();
        assert_eq!((a32.len(), a32.dimension()), (9, 6));
        assert!(build_code(&plane(2), 3, Evaluation::Projective).is_err());
        assert!(build_code(&plane(2), 2, Evaluation::Affine).is_err());
        assert!(build_code(&p3, 3, Evaluation::Affine).is_err());
    }

    #[test]
    fn duals_are_orthogonal_complements() {
        for q in [3u64, 4, 5, 7] {
            let p = plane(q);
            let field = p.field();
            for d in 1..=3 {
                for ev in [Evaluation::Projective, Evaluation::Affine] {
                    let Ok(code) = build_code(&p, d, ev) else { continue };
                    let dual = dual_code(field, &code);
                    assert_eq!(dual.dimension() + code.dimension(), code.len());
                    for a in dual.generator() {
                        for b in code.generator() {
                            let dot = a
                                .iter()
                                .zip(b)
                                .fold(FieldElement::ZERO, |acc, (&x, &y)| field.add(acc, field.mul(x, y)));
                            assert_eq!(dot, FieldElement::ZERO);
                        }
                    }
                    let back = dual_code(field, &dual);
                    let (mut r1, mut r2) = (code.generator().to_vec(), back.generator().to_vec());
                    rref(field, &mut r1);
                    rref(field, &mut r2);
                    assert_eq!(r1, r2);
                }
            }
        }
        let p3 = plane(3);
        let dual = dual_code(p3.field(), &build_code(&p3, 3, Evaluation::Projective).unwrap());
        assert_eq!(dual.dimension(), 3);
        let dual2 = dual_code(p3.field(), &build_code(&p3, 2, Evaluation::Projective).unwrap());
        assert_eq!(dual2.dimension(), 7);
    }

    #[test]
    fn encoding_examples() {
        let p = plane(3);
        let f = p.field();
        let c1 = build_code(&p, 1, Evaluation::Projective).unwrap();
        let zero = c1.encode(f, &[FieldElement::ZERO; 3]).unwrap();
        assert!(zero.mask.is_empty());
        let x = c1.encode(f, &[FieldElement::ONE, FieldElement::ZERO, FieldElement::ZERO]).unwrap();
        assert_eq!(x.weight(), 9);
        let c2 = build_code(&p, 2, Evaluation::Projective).unwrap();
        let xz = HomogeneousForm::from_int_terms(f, 2, &[(1, [1, 0, 1])]);
        let w = c2.encode(f, xz.coeffs()).unwrap();
        assert_eq!(w.weight(), 6);
        assert_eq!(w.mask, p.support_mask(&xz));
        assert!(matches!(c2.encode(f, &[FieldElement::ONE]), Err(Error::LengthMismatch { .. })));
    }

    #[test]
    fn linear_forms_have_weight_q_squared() {
        for q in [2u64, 3, 4, 5, 7, 8, 9] {
            let p = plane(q);
            let code = build_code(&p, 1, Evaluation::Projective).unwrap();
            for a in p.field().elements() {
                for b in p.field().elements() {
                    for c in p.field().elements() {
                        let w = code.encode(p.field(), &[a, b, c]).unwrap().weight();
                        if a.is_zero() && b.is_zero() && c.is_zero() {
                            assert_eq!(w, 0);
                        } else {
                            assert_eq!(w as u64, q * q);
                        }
                    }
                }
            }
        }
    }

    #[test]
    fn json_export_shape() {
        let p = plane(3);
        let v = build_code(&p, 2, Evaluation::Projective).unwrap().to_json();
        assert_eq!(v["n"], 13);
        assert_eq!(v["generator"].as_array().unwrap().len(), 6);
        assert_eq!(v["kind"], "projective(2)");
    }
}
