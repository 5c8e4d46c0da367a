//! Registry of closed-form counts as polynomials in `q`.
//!
//! Enumerator families place each formula at a monomial: `Slot::X(e)` is the
//! coefficient of `X^e Y^(n-e)` and `Slot::Weight(e)` the coefficient of
//! `X^(n-e) Y^e`, with `e` itself a polynomial in `q`.

use std::collections::HashMap;
use std::sync::OnceLock;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::ToPrimitive;
use serde_json::{json, Value};

use super::parse::{parse, parse_with};
use super::poly::QPolynomial;
use crate::enumerator::WeightEnumerator;
use crate::error::{Error, Result};

/// Below this `q` pure-conic formulas are evaluated for information only.
pub const CONIC_CHECKED_FROM: u32 = 3;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum Family {
    HammingConic,
    HammingAffineConic,
    SingularCubic,
    CommonConicConic,
    CommonAffineConic,
    CommonConicCubic,
    CommonCubicCubic,
    FreeConicConic,
    FreeAffineConic,
    FreeConicCubic,
    FreeCubicCubic,
    SecondConicConic,
    DualConic,
    DualAffineConic,
    DualCubic,
    JointConicConic,
    JointAffineConic,
    JointConicCubic,
    JointCubicCubic,
    Collinear,
    Configuration,
}

impl Family {
    pub fn name(self) -> &'static str {
        match self {
            Family::HammingConic => "hamming_conic",
            Family::HammingAffineConic => "hamming_affine_conic",
            Family::SingularCubic => "singular_cubic",
            Family::CommonConicConic => "common_conic_conic",
            Family::CommonAffineConic => "common_affine_conic",
            Family::CommonConicCubic => "common_conic_cubic",
            Family::CommonCubicCubic => "common_cubic_cubic",
            Family::FreeConicConic => "free_conic_conic",
            Family::FreeAffineConic => "free_affine_conic",
            Family::FreeConicCubic => "free_conic_cubic",
            Family::FreeCubicCubic => "free_cubic_cubic",
            Family::SecondConicConic => "second_conic_conic",
            Family::DualConic => "dual_conic",
            Family::DualAffineConic => "dual_affine_conic",
            Family::DualCubic => "dual_cubic",
            Family::JointConicConic => "joint_dual_conic_conic",
            Family::JointAffineConic => "joint_dual_affine_conic",
            Family::JointConicCubic => "joint_dual_conic_cubic",
            Family::JointCubicCubic => "joint_dual_cubic_cubic",
            Family::Collinear => "collinear",
            Family::Configuration => "configuration",
        }
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
enum SlotSpec {
    X(&'static str),
    Weight(&'static str),
    Scalar,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Slot {
    X(QPolynomial),
    Weight(QPolynomial),
    Scalar,
}

struct Spec {
    id: &'static str,
    family: Family,
    slot: SlotSpec,
    q_min: u32,
    expr: &'static str,
    description: &'static str,
}

const fn spec(
    id: &'static str,
    family: Family,
    slot: SlotSpec,
    q_min: u32,
    expr: &'static str,
    description: &'static str,
) -> Spec {
    Spec { id, family, slot, q_min, expr, description }
}

use Family::*;
use SlotSpec::{Scalar, Weight, X};

// Order matters: a `[id]` reference must name an earlier entry.
const SPECS: &[Spec] = &[
    // Hamming enumerator of conic forms.
    spec("W_conic_xN", HammingConic, X("N"), 2, "1", "conic forms: the zero form"),
    spec("W_conic_x1", HammingConic, X("1"), 2, "N q (q-1)^2 / 2", "conic forms with one rational point"),
    spec("W_conic_xq1", HammingConic, X("q+1"), 2, "(q^3-q^2+1) N (q-1)", "conic forms with q+1 points"),
    spec("W_conic_x2q1", HammingConic, X("2q+1"), 2, "N (q+1) q (q-1) / 2", "line-pair conic forms"),
    // Hamming enumerator of affine conic polynomials.
    spec("W_affine_xq2", HammingAffineConic, X("q^2"), 3, "1", "affine conics: the zero polynomial"),
    spec("W_affine_x0", HammingAffineConic, X("0"), 3, "(q-1)(q^3-q+2) / 2", "affine conics without points"),
    spec("W_affine_x1", HammingAffineConic, X("1"), 3, "(q-1)^2 q^3 / 2", "affine conics with one point"),
    spec("W_affine_xqm1", HammingAffineConic, X("q-1"), 3, "(q-1)^2 q^3 (q+1) / 2", "affine conics with q-1 points"),
    spec("W_affine_xq", HammingAffineConic, X("q"), 3, "(q^3-q)(q^2-q+2)", "affine conics with q points"),
    spec("W_affine_xq1", HammingAffineConic, X("q+1"), 3, "(q-1)^3 q^3 / 2", "affine conics with q+1 points"),
    spec("W_affine_x2qm1", HammingAffineConic, X("2q-1"), 3, "(q-1)(q+1) q^3 / 2", "affine conics with 2q-1 points"),
    spec("W_affine_x2q", HammingAffineConic, X("2q"), 3, "q (q+1)(q-1)^2 / 2", "affine conics with 2q points"),
    // Cubic forms defining singular curves, including the zero form.
    spec("sing_xN", SingularCubic, X("N"), 3, "1", "singular cubic forms: the zero form"),
    spec("sing_x3q1", SingularCubic, X("3q+1"), 3, "(q^3-1)(q^3-q) / 6", "three concurrent rational lines"),
    spec("sing_x3q", SingularCubic, X("3q"), 3, "(q^3-1)(q^4+q^3) / 6", "three rational lines in general position"),
    spec("sing_x2q2", SingularCubic, X("2q+2"), 3, "(q^3-1)(q^3-q^2)(q^2-q) / 2", "rational line and secant conic"),
    spec("sing_x2q1", SingularCubic, X("2q+1"), 3, "(q^3-1)(q^2+q)(q^2-q+1)", "singular cubics with 2q+1 points"),
    spec("sing_x2q", SingularCubic, X("2q"), 3, "(q^6-q^3)(q^2-1) / 2", "line and exterior-line conic"),
    spec("sing_xq2", SingularCubic, X("q+2"), 3, "(q^3-1)(q^6-q^5) / 2", "singular cubics with q+2 points"),
    spec("sing_xq1", SingularCubic, X("q+1"), 3, "(q^3-1)(2q^5-q^3-q+2) / 2", "singular cubics with q+1 points"),
    spec("sing_xq", SingularCubic, X("q"), 3, "(q^3-1)(q^3-q)(q^3-q^2) / 2", "singular cubics with q points"),
    spec("sing_x1", SingularCubic, X("1"), 3, "(q^3-1)(q^3-q) / 3", "singular cubics with one point"),
    spec("sing_x0", SingularCubic, X("0"), 3, "(q-1)(q^3-q)(q^3-q^2) / 3", "conjugate line triples without points"),
    // Pairs of distinct curves sharing a component.
    spec("com_conic_conic_xq2", CommonConicConic, X("q+2"), 2, "N (q^2+q) q^2 (q-1)^2", "conic pairs sharing one line, q+2 common points"),
    spec("com_conic_conic_xq1", CommonConicConic, X("q+1"), 2, "(q^2-1)(q^2-q) N (q+1)", "conic pairs sharing one line, q+1 common points"),
    spec("com_affine_xq", CommonAffineConic, X("q"), 3, "(2q+1)(q+1)^2 (q-1)^2 q^2", "affine conic pairs sharing a line, q common points"),
    spec("com_affine_xq1", CommonAffineConic, X("q+1"), 3, "(q+1)^2 (q-1)^3 q^3", "affine conic pairs sharing a line, q+1 common points"),
    spec("com_conic_cubic_x1", CommonConicCubic, X("1"), 3, "(q^2-q)/2 (q-1)^2 N^2", "conic-cubic pairs sharing a conjugate line pair"),
    spec("com_conic_cubic_x2q1", CommonConicCubic, X("2q+1"), 3, "1/2 q (q+1)(q^3-1)^2", "conic-cubic pairs sharing two rational lines"),
    spec("com_conic_cubic_xq3", CommonConicCubic, X("q+3"), 3, "1/2 N (q+1)(q-1)^3 q^5", "conic-cubic pairs sharing one line, q+3 common points"),
    spec("com_conic_cubic_xq2", CommonConicCubic, X("q+2"), 3, "2 N (q+1)(q-1)^2 q^5", "conic-cubic pairs sharing one line, q+2 common points"),
    spec("com_conic_cubic_xq1", CommonConicCubic, X("q+1"), 3, "1/2 N (q-1)^2 (q^7+5q^5+4q^4+2q^3+2q+2)", "conic-cubic pairs with q+1 common points"),
    spec("a_1_common", CommonCubicCubic, X("1"), 3, "1/2 (q-1)^2 N (q^2-q)(q+1) q", "cubic pairs sharing a conjugate line pair, one common point"),
    spec("a_2_common", CommonCubicCubic, X("2"), 3, "1/2 (q-1)^2 N (q^2-q)(q^2+q)(q+1) q", "cubic pairs sharing a conjugate line pair, two common points"),
    spec("a_2q1_common", CommonCubicCubic, X("2q+1"), 3, "1/2 N (2q+1)(q-1)^2 q^2 (q+1)^2", "cubic pairs sharing two lines, 2q+1 common points"),
    spec("a_2q2_common", CommonCubicCubic, X("2q+2"), 3, "1/2 N (q-1)^2 (q^2+q)^2 (q^2-q)", "cubic pairs sharing two lines, 2q+2 common points"),
    spec("a_q1_common", CommonCubicCubic, X("q+1"), 3,
        "1/24 (9q^8 + 8q^7 + 21q^6 - 19q^5 + 66q^4 + 59q^3 - 48q^2 + 24) N (q+1)(q-1)^2 q",
        "cubic pairs with a common component and q+1 common points"),
    spec("a_q2_common", CommonCubicCubic, X("q+2"), 3,
        "1/6 (2q^5 + 2q^4 - 7q^3 + 42q^2 - 33q + 6) N (q+1)^2 (q-1)^2 q^3",
        "cubic pairs with a common component and q+2 common points"),
    spec("a_q3_common", CommonCubicCubic, X("q+3"), 3,
        "1/4 (q^3 - 2q^2 + 14q - 11) N (q+1)^2 (q-1)^3 q^4",
        "cubic pairs sharing one line, q+3 common points"),
    spec("a_q4_common", CommonCubicCubic, X("q+4"), 3, "1/6 N (4q-5)(q+1)^2 (q-1)^4 q^4", "cubic pairs sharing one line, q+4 common points"),
    spec("a_q5_common", CommonCubicCubic, X("q+5"), 3, "1/24 (q-1)^4 q^4 (q+1)^2 N (q^2-3q+3)", "cubic pairs sharing one line, q+5 common points"),
    // Pairs without a common component, by number of common points.
    spec("c0_conic_conic", FreeConicConic, X("0"), 2, "1/8 (q+1)(q-1)^3 q^4 (3q^2+1) N", "conic pairs, no common component, 0 common points"),
    spec("c1_conic_conic", FreeConicConic, X("1"), 2, "1/6 (q+1)(q-1)^2 q^2 N (2q^5 + q^4 - 2q^3 + 5q^2 + 6q - 6)", "conic pairs, no common component, 1 common point"),
    spec("c2_conic_conic", FreeConicConic, X("2"), 2, "1/4 (q-1)^2 (q+1)^2 q^3 N (q^3 - 2q^2 + 7q - 4)", "conic pairs, no common component, 2 common points"),
    spec("c3_conic_conic", FreeConicConic, X("3"), 2, "1/2 (q+1)^2 (q-1)^3 q^4 N", "conic pairs, no common component, 3 common points"),
    spec("c4_conic_conic", FreeConicConic, X("4"), 2, "1/24 (q+1)^2 (q-1)^4 q^4 N", "conic pairs, no common component, 4 common points"),
    spec("c0_affine_conic", FreeAffineConic, X("0"), 3,
        "3/8 q (q+1)(q-1)^2 (q^8 + 8/9 q^7 + 7/3 q^6 - 19/9 q^5 + 14/3 q^4 + 59/9 q^3 - 8/3 q^2 + 8/3)",
        "affine conic pairs, no common component, 0 common points"),
    spec("c1_affine_conic", FreeAffineConic, X("1"), 3,
        "1/3 (q+1)(q-1)^2 q^3 (q^6 + 2q^5 - 5/2 q^4 + 29/2 q^3 + 15/2 q^2 - 27/2 q + 3)",
        "affine conic pairs, no common component, 1 common point"),
    spec("c2_affine_conic", FreeAffineConic, X("2"), 3, "1/4 (q+1)^2 (q-1)^3 q^4 (q^3 - 2q^2 + 14q - 11)", "affine conic pairs, no common component, 2 common points"),
    spec("c3_affine_conic", FreeAffineConic, X("3"), 3, "2/3 (q - 5/4)(q+1)^2 (q-1)^4 q^4", "affine conic pairs, no common component, 3 common points"),
    spec("c4_affine_conic", FreeAffineConic, X("4"), 3, "1/24 (q+1)^2 (q-1)^4 q^4 (q^2-3q+3)", "affine conic pairs, no common component, 4 common points"),
    spec("c0_conic_cubic", FreeConicCubic, X("0"), 3,
        "53/144 (q-1)^3 q^6 N (q^5 + q^4 + 9/53 q^3 + 27/53 q^2 + 58/53 q - 32/53)",
        "conic-cubic pairs, no common component, 0 common points"),
    spec("c1_conic_cubic", FreeConicCubic, X("1"), 3,
        "11/30 q^4 (q-1)^2 N (q+1) (q^7 + 1/44 q^6 + 5/11 q^5 + 20/11 q^4 - 31/11 q^3 + 159/44 q^2 + 15/11 q - 30/11)",
        "conic-cubic pairs, no common component, 1 common point"),
    spec("c2_conic_cubic", FreeConicCubic, X("2"), 3,
        "3/16 (q-1)^2 (q+1)^2 q^5 N (q^5 - 2/9 q^4 + 35/9 q^3 - 70/9 q^2 + 160/9 q - 32/3)",
        "conic-cubic pairs, no common component, 2 common points"),
    spec("c3_conic_cubic", FreeConicCubic, X("3"), 3,
        "1/18 (q+1)(q-1)^3 q^5 N (q^5 + 9/2 q^4 + 3/2 q^3 + 39/2 q^2 + 79/2 q - 9)",
        "conic-cubic pairs, no common component, 3 common points"),
    spec("c4_conic_cubic", FreeConicCubic, X("4"), 3, "1/48 (q+1)(q-1)^3 q^6 N (q^4 + 13q^2 + 26q - 48)", "conic-cubic pairs, no common component, 4 common points"),
    spec("c5_conic_cubic", FreeConicCubic, X("5"), 3, "1/24 (q+1)(q-1)^4 q^6 N (q^2+2q-5)", "conic-cubic pairs, no common component, 5 common points"),
    spec("c6_conic_cubic", FreeConicCubic, X("6"), 3, "1/720 (q-2)(q+1)(q-1)^4 q^6 N (q^2+3q-8)", "conic-cubic pairs, no common component, 6 common points"),
    spec("c0_cubic_cubic", FreeCubicCubic, X("0"), 3,
        "16687/45360 (q+1)^2 (q-1)^3 q^5 N (q^8 - q^7 + 15988/16687 q^6 + 882/16687 q^5 - 126/451 q^4 + 3192/16687 q^3 + 4397/16687 q^2 - 2507/16687 q - 2170/16687)",
        "cubic pairs, no common component, 0 common points"),
    spec("c1_cubic_cubic", FreeCubicCubic, X("1"), 3,
        "2119/5760 (q+1)(q-1)^2 q^3 N (q^12 - 1/14833 q^11 + 2390/2119 q^10 - 10240/14833 q^9 + 2459/2119 q^8 + 99/2119 q^7 + 3440/2119 q^6 - 8630/14833 q^5 - 4748/2119 q^4 + 76978/14833 q^3 + 100/2119 q^2 - 14160/2119 q + 5760/2119)",
        "cubic pairs, no common component, 1 common point"),
    spec("c2_cubic_cubic", FreeCubicCubic, X("2"), 3,
        "103/560 (q-1)^2 (q+1)^2 q^4 N (q^10 + 1/927 q^9 + 1634/927 q^8 + 742/927 q^7 + 1589/927 q^6 + 1729/927 q^5 + 4106/927 q^4 - 2818/103 q^3 + 21608/309 q^2 - 22610/309 q + 2520/103)",
        "cubic pairs, no common component, 2 common points"),
    spec("c3_cubic_cubic", FreeCubicCubic, X("3"), 3,
        "53/864 (q+1)^2 (q-1)^3 q^4 N (q^9 + 527/265 q^8 + 221/53 q^7 + 1533/265 q^6 + 738/53 q^5 + 5958/265 q^4 - 3956/53 q^3 + 67402/265 q^2 - 11348/53 q + 2376/53)",
        "cubic pairs, no common component, 3 common points"),
    spec("c4_cubic_cubic", FreeCubicCubic, X("4"), 3,
        "11/720 (q+1)^2 (q-1)^3 q^4 N (q^9 + 34/11 q^8 + 48/11 q^7 + 182/11 q^6 + 109/11 q^5 - 1564/11 q^4 + 712 q^3 - 13292/11 q^2 + 7120/11 q - 600/11)",
        "cubic pairs, no common component, 4 common points"),
    spec("c5_cubic_cubic", FreeCubicCubic, X("5"), 3,
        "1/320 (q+1)^2 (q-1)^4 q^4 N (q^8 + 40/9 q^7 + 151/9 q^6 + 50/9 q^5 - 874/9 q^4 + 2890/3 q^3 - 7022/3 q^2 + 4940/3 q - 40)",
        "cubic pairs, no common component, 5 common points"),
    spec("c6_cubic_cubic", FreeCubicCubic, X("6"), 3,
        "1/2160 (q+1)^2 (q-1)^4 q^5 N (q^7 + 9q^6 - 5q^5 - 17q^4 + 910q^3 - 4316q^2 + 7416q - 4670)",
        "cubic pairs, no common component, 6 common points"),
    spec("c7_cubic_cubic", FreeCubicCubic, X("7"), 3,
        "1/10080 (q-2)(q+1)^2 (q-1)^4 q^5 N (q^6 + 2q^5 + 25q^4 + 288q^3 - 1692q^2 + 3574q - 3290)",
        "cubic pairs, no common component, 7 common points"),
    spec("c8_cubic_cubic", FreeCubicCubic, X("8"), 3,
        "1/5040 (q-3)(q-2)(q+1)^2 (q-1)^4 q^5 N (q^4 + 6q^3 - 31q^2 + 69q - 105)",
        "cubic pairs, no common component, 8 common points"),
    spec("c9_cubic_cubic", FreeCubicCubic, X("9"), 3,
        "1/362880 (q-2)(q+1)^2 (q-1)^4 q^5 N (q^6 + 2q^5 - 73q^4 + 344q^3 - 838q^2 + 1754q - 2030)",
        "cubic pairs, no common component, 9 common points"),
    // Full second enumerator of conic pairs away from the free slots.
    spec("W2_conic_conic_xN", SecondConicConic, X("N"), 2, "1", "conic pairs: both forms zero"),
    spec("W2_conic_conic_x2q1", SecondConicConic, X("2q+1"), 2, "(q-1) q (q+1)^2 N / 2", "conic pairs with 2q+1 common points"),
    spec("W2_conic_conic_xq2", SecondConicConic, X("q+2"), 2, "(q-1)^2 q^3 (q+1) N", "conic pairs with q+2 common points"),
    spec("W2_conic_conic_xq1", SecondConicConic, X("q+1"), 2, "(q-1)(q+1) N (2q^3-q^2-q+1)", "conic pairs with q+1 common points"),
    spec("W2_conic_conic_x4", SecondConicConic, X("4"), 2, "(q-1)^4 q^4 (q+1)^2 N / 24", "conic pairs with 4 common points"),
    spec("W2_conic_conic_x3", SecondConicConic, X("3"), 2, "(q-1)^3 q^4 (q+1)^2 N / 2", "conic pairs with 3 common points"),
    spec("W2_conic_conic_x2", SecondConicConic, X("2"), 2, "(q-1)^2 q^3 (q+1)^2 N (q^3-2q^2+7q-4) / 4", "conic pairs with 2 common points"),
    spec("W2_conic_conic_x1", SecondConicConic, X("1"), 2, "(q^3-q)(q^3-1)(2q^6+q^5-2q^4+5q^3+6q^2-6q+3) / 6", "conic pairs with 1 common point"),
    spec("W2_conic_conic_x0", SecondConicConic, X("0"), 2, "(q-1)^3 q^4 (q+1) N (3q^2+1) / 8", "conic pairs without common points"),
    // Intersections of nine points cut out by two cubics.
    spec("I9", Configuration, Scalar, 3,
        "1/362880 (q^6 + 2q^5 - 73q^4 + 344q^3 - 838q^2 + 1754q - 2030) N (q+1)(q-1)^2 (q-2) q^4",
        "9-point sets that are the complete intersection of two cubics"),
    // Low-weight dual codewords.
    spec("B4_dual_conic", DualConic, Weight("4"), 2, "(q-1) N C(q+1,4)", "conic dual codewords of weight 4"),
    spec("B5_dual_conic", DualConic, Weight("5"), 2, "((q^2-1) - 5(q-1)) N C(q+1,5)", "conic dual codewords of weight 5"),
    spec("B6_dual_conic", DualConic, Weight("6"), 2,
        "((q^3-1) - 6(q^2-1) + 15(q-1)) N C(q+1,6) + (q-1)(q^5-q^2) C(q+1,6) + (q-1) C(N,2) C(q,3)^2",
        "conic dual codewords of weight 6"),
    spec("B4_dual_affine", DualAffineConic, Weight("4"), 3, "(q-1)(q^2+q) C(q,4)", "affine conic dual codewords of weight 4"),
    spec("B5_dual_cubic", DualCubic, Weight("5"), 3, "(q-1) N C(q+1,5)", "cubic dual codewords of weight 5"),
    spec("B6_dual_cubic", DualCubic, Weight("6"), 3, "((q^2-1) - 6(q-1)) N C(q+1,6)", "cubic dual codewords of weight 6"),
    spec("B7_dual_cubic", DualCubic, Weight("7"), 3, "((q^3-1) - 7(q^2-1) + 21(q-1)) N C(q+1,7)", "cubic dual codewords of weight 7"),
    spec("B8_dual_cubic", DualCubic, Weight("8"), 3,
        "((q^4-1) - 8(q^3-1) + 28(q^2-1) - 56(q-1)) N C(q+1,8) + (q-1)(q^5-q^2) C(q+1,8) + (q-1) C(N,2) C(q,4)^2",
        "cubic dual codewords of weight 8"),
    spec("B9_dual_cubic", DualCubic, Weight("9"), 3,
        "(q-1)[I9] + (q^5-q^2) C(q+1,9) ((q^2-1) - 9(q-1)) + N C(q+1,9) (q^5 - 9q^4 + 36q^3 - 84q^2 + 126q - 70) + 2 C(N,2) C(q,5) C(q,4) (q^2-6q+5) + C(N,2) C(q,4)^2 (q^2-3q+2)",
        "cubic dual codewords of weight 9"),
    // Full-support pairs on collinear points.
    spec("g3_5", Collinear, Scalar, 4, "(q-1)^2", "pairs of cubic dual codewords covering 5 collinear points"),
    spec("g3_6", Collinear, Scalar, 5, "(q^2+2q-5)(q-1)^2", "pairs of cubic dual codewords covering 6 collinear points"),
    spec("g3_7", Collinear, Scalar, 6, "(q^4+2q^3-4q^2-12q+15)(q-1)^2", "pairs of cubic dual codewords covering 7 collinear points"),
    spec("g3_8", Collinear, Scalar, 7, "(q^5+3q^4-2q^3-14q^2-7q+35)(q-1)^3", "pairs of cubic dual codewords covering 8 collinear points"),
    spec("g3_9", Collinear, Scalar, 8, "(q^8+2q^7-6q^6-14q^5+14q^4+40q^3-112q+70)(q-1)^2", "pairs of cubic dual codewords covering 9 collinear points"),
    // Low-weight coefficients of joint dual enumerators.
    spec("B2_4_conic_conic", JointConicConic, Weight("4"), 2, "(q^2-1) N C(q+1,4)", "conic dual pairs of joint weight 4"),
    spec("B2_4_affine_conic", JointAffineConic, Weight("4"), 3, "(q^2-1)(q^2+q) C(q,4)", "affine conic dual pairs of joint weight 4"),
    spec("B2_4_conic_cubic", JointConicCubic, Weight("4"), 3, "[B4_dual_conic]", "conic-cubic dual pairs of joint weight 4"),
    spec("B2_5_conic_cubic", JointConicCubic, Weight("5"), 3,
        "[B5_dual_conic] + [B5_dual_cubic] + (q^3-1)(q^2-1) C(q+1,5)", "conic-cubic dual pairs of joint weight 5"),
    spec("B2_6_conic_cubic", JointConicCubic, Weight("6"), 3,
        "[B6_dual_conic] + [B6_dual_cubic] + (q^3-1)(q^2-1)(q^2+q-5) C(q+1,6)", "conic-cubic dual pairs of joint weight 6"),
    spec("B2_5_cubic_cubic", JointCubicCubic, Weight("5"), 3, "2[B5_dual_cubic] + N C(q+1,5) [g3_5]", "cubic dual pairs of joint weight 5"),
    spec("B2_6_cubic_cubic", JointCubicCubic, Weight("6"), 3, "2[B6_dual_cubic] + N C(q+1,6) [g3_6]", "cubic dual pairs of joint weight 6"),
    spec("B2_7_cubic_cubic", JointCubicCubic, Weight("7"), 3, "2[B7_dual_cubic] + N C(q+1,7) [g3_7]", "cubic dual pairs of joint weight 7"),
    spec("B2_8_cubic_cubic", JointCubicCubic, Weight("8"), 3,
        "2[B8_dual_cubic] + N C(q+1,8) [g3_8] + (q^5-q^2) C(q+1,8) (q-1)^2 + C(N,2) C(q,4)^2 (q-1)^2",
        "cubic dual pairs of joint weight 8"),
    spec("B2_9_cubic_cubic", JointCubicCubic, Weight("9"), 3,
        "2[B9_dual_cubic] + N C(q+1,9) [g3_9] + 2 C(N,2) C(q,4) C(q,5) (q^4-8q^2+12q-5) + C(N,2) C(q,4)^2 (q^4-5q^2+6q-2) + (q^5-q^2) C(q+1,9) (q^4-11q^2+18q-8) + [I9] (q-1)^2",
        "cubic dual pairs of joint weight 9"),
    // Eight-point configurations.
    spec("C_ge7", Configuration, Scalar, 3, "(q^5-q^2)(C(q+1,8) + C(q+1,7) q^2)", "8-sets with at least 7 points on a smooth conic"),
    spec("L_ge4", Configuration, Scalar, 3,
        "N (C(q+1,8) + C(q+1,7) q^2 + C(q+1,6) C(q^2,2) + C(q+1,5) C(q^2,3) + C(q+1,4) C(q^2,4)) - N (q^2+q) C(q,4) C(q,3) - C(N,2) C(q,4)^2 - C(N,2) C(q,3)^2 (q^2-q)",
        "8-sets with at least 4 collinear points"),
    spec("general8", Configuration, Scalar, 3, "C(N,8) - [C_ge7] - [L_ge4]", "8-sets with no 4 collinear and no 7 on a conic"),
    spec("sing_irred8", Configuration, Scalar, 3,
        "N (q^3-q) q^2 C(q,7) + N (q^3-q) (q^3-q^2)/2 C(q-1,7) + N (q^3-q) (q^3-q^2)/2 C(q+1,7)",
        "8-sets on an irreducible singular cubic through its singular point"),
    spec("conic6_line2", Configuration, Scalar, 3,
        "(q^5-q^2) C(q+1,6) (6(q-5) C(q-1,2) + 6 C(q,2))",
        "6 points on a smooth conic plus 2 whose line meets exactly one of them"),
    spec("triples332", Configuration, Scalar, 3,
        "C(N,2) C(q,3)^2 3(q-3) C(q-1,2)",
        "two collinear triples plus 2 points whose line meets exactly one of them"),
    spec("J8", Configuration, Scalar, 3,
        "[general8] - [sing_irred8] - [conic6_line2] - [triples332]",
        "8-sets determining a ninth distinct base point"),
];

/// A parsed registry entry.
#[derive(Clone, Debug)]
pub struct Formula {
    pub id: String,
    pub family: Family,
    pub slot: Slot,
    pub q_min: u32,
    pub expr: String,
    pub description: String,
    pub poly: QPolynomial,
}

/// All registered formulas, in registration order.
#[derive(Debug)]
pub struct Registry {
    formulas: Vec<Formula>,
    index: HashMap<String, usize>,
}

/// `f_d(m)` by inclusion-exclusion over vanishing coordinates.
pub fn collinear_full_support_expr(d: u32, m: u32) -> String {
    let top = m - d - 1;
    let terms: Vec<String> =
        (0..top).map(|i| format!("{}(q^{} - 1) C({m},{i})", if i % 2 == 0 { "+" } else { "-" }, top - i)).collect();
    terms.join(" ")
}

impl Registry {
    fn build() -> Result<Self> {
        let mut reg = Registry { formulas: Vec::new(), index: HashMap::new() };
        let mut generated = Vec::new();
        for (d, ms) in [(2u32, 4u32..=6), (3, 5..=9)] {
            for m in ms {
                generated.push((format!("f{d}_{m}"), collinear_full_support_expr(d, m), m - 1, d, m));
            }
        }
        for (id, expr, q_min, d, m) in generated {
            let poly = parse(&expr)?;
            reg.push(Formula {
                id,
                family: Family::Collinear,
                slot: Slot::Scalar,
                q_min: q_min.max(2),
                expr,
                description: format!("degree-{d} dual codewords with full support on {m} collinear points"),
                poly,
            });
        }
        for s in SPECS {
            let poly = parse_with(s.expr, &|id| {
                reg.get(id).map(|f| f.poly.clone()).ok_or_else(|| Error::UnknownFormula(id.to_string()))
            })?;
            let slot = match s.slot {
                SlotSpec::X(e) => Slot::X(parse(e)?),
                SlotSpec::Weight(e) => Slot::Weight(parse(e)?),
                SlotSpec::Scalar => Slot::Scalar,
            };
            reg.push(Formula {
                id: s.id.to_string(),
                family: s.family,
                slot,
                q_min: s.q_min,
                expr: s.expr.to_string(),
                description: s.description.to_string(),
                poly,
            });
        }
        Ok(reg)
    }

    fn push(&mut self, f: Formula) {
        let previous = self.index.insert(f.id.clone(), self.formulas.len());
        assert!(previous.is_none(), "duplicate formula id {}", f.id);
        self.formulas.push(f);
    }

    pub fn global() -> &'static Registry {
        static REGISTRY: OnceLock<Registry> = OnceLock::new();
        REGISTRY.get_or_init(|| Registry::build().expect("registered formulas parse"))
    }

    pub fn len(&self) -> usize {
        self.formulas.len()
    }

    pub fn is_empty(&self) -> bool {
        self.formulas.is_empty()
    }

    pub fn formulas(&self) -> &[Formula] {
        &self.formulas
    }

    pub fn get(&self, id: &str) -> Option<&Formula> {
        self.index.get(id).map(|&i| &self.formulas[i])
    }

    pub fn lookup(&self, id: &str) -> Result<&Formula> {
        self.get(id).ok_or_else(|| Error::UnknownFormula(id.to_string()))
    }

    pub fn family(&self, family: Family) -> impl Iterator<Item = &Formula> {
        self.formulas.iter().filter(move |f| f.family == family)
    }

    /// Exact value at `q`, refusing `q` below the formula's range.
    pub fn eval(&self, id: &str, q: u64) -> Result<BigRational> {
        let f = self.lookup(id)?;
        if q < f.q_min as u64 {
            return Err(Error::OutOfRange { id: id.to_string(), q: q as u32, q_min: f.q_min });
        }
        Ok(f.poly.eval_int(q))
    }

    /// Exact value at any `q`, for informational use outside the range.
    pub fn eval_unchecked(&self, id: &str, q: u64) -> Result<BigRational> {
        Ok(self.lookup(id)?.poly.eval_int(q))
    }

    /// Value of a count formula; non-integral values are an error.
    pub fn eval_count(&self, id: &str, q: u64) -> Result<BigInt> {
        integral(self.eval(id, q)?, || format!("{id} at q={q}"))
    }

    /// Sum of a family's entries placed at their monomials in degree `n`.
    pub fn family_enumerator(&self, family: Family, q: u64, n: usize) -> Result<WeightEnumerator> {
        let mut w = WeightEnumerator::zero(n);
        for f in self.family(family) {
            let value = self.eval_count(&f.id, q)?;
            let place = |e: &QPolynomial| -> Result<usize> {
                integral(e.eval_int(q), || format!("slot of {}", f.id))?
                    .to_usize()
                    .filter(|&k| k <= n)
                    .ok_or_else(|| Error::InvalidArgument(format!("slot of {} outside degree {n}", f.id)))
            };
            match &f.slot {
                Slot::X(e) => w.add_to_x(place(e)?, value),
                Slot::Weight(e) => w.add_to(place(e)?, value),
                Slot::Scalar => {
                    return Err(Error::InvalidArgument(format!("{} has no monomial slot", f.id)));
                }
            }
        }
        Ok(w)
    }

    pub fn to_json(&self) -> Value {
        Value::Array(
            self.formulas
                .iter()
                .map(|f| {
                    json!({
                        "id": f.id,
                        "family": f.family.name(),
                        "q_min": f.q_min,
                        "expression": f.expr,
                        "description": f.description,
                        "expanded": f.poly.to_string(),
                    })
                })
                .collect(),
        )
    }
}

pub(crate) fn integral(value: BigRational, context: impl FnOnce() -> String) -> Result<BigInt> {
    if value.is_integer() {
        Ok(value.to_integer())
    } else {
        Err(Error::NonIntegral { value: value.to_string(), context: context() })
    }
}
