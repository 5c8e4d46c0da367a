//! Closed-form second enumerators for pairs of plane curves, assembled from
//! registered ingredients at a numeric `q`.

use num_bigint::BigInt;
use num_rational::BigRational;

use super::registry::{Family, Registry};
use super::transform::solve_low_coefficients;
use crate::classnum::predict_smooth_enumerator;
use crate::enumerator::WeightEnumerator;
use crate::error::Result;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum PairCase {
    ConicConic,
    AffineConic,
    ConicCubic,
    CubicCubic,
}

impl PairCase {
    pub const ALL: [PairCase; 4] =
        [PairCase::ConicConic, PairCase::AffineConic, PairCase::ConicCubic, PairCase::CubicCubic];

    pub fn name(self) -> &'static str {
        match self {
            PairCase::ConicConic => "conic_conic",
            PairCase::AffineConic => "affine_conic",
            PairCase::ConicCubic => "conic_cubic",
            PairCase::CubicCubic => "cubic_cubic",
        }
    }

    pub fn degrees(self) -> (u32, u32) {
        match self {
            PairCase::ConicConic | PairCase::AffineConic => (2, 2),
            PairCase::ConicCubic => (2, 3),
            PairCase::CubicCubic => (3, 3),
        }
    }

    /// Number of evaluation points.
    pub fn length(self, q: u64) -> usize {
        match self {
            PairCase::AffineConic => (q * q) as usize,
            _ => (q * q + q + 1) as usize,
        }
    }

    /// Number of unknown free coefficients, `de + 1`.
    pub fn unknowns(self) -> usize {
        let (d, e) = self.degrees();
        (d * e + 1) as usize
    }

    /// `|C1| |C2| = q^(dim1 + dim2)`.
    pub fn size_product(self, q: u64) -> BigInt {
        let dim = |d: u32| (d + 1) * (d + 2) / 2;
        let (d, e) = self.degrees();
        BigInt::from(q).pow(dim(d) + dim(e))
    }

    pub fn q_min(self) -> u64 {
        match self {
            PairCase::ConicConic => 2,
            _ => 3,
        }
    }

    fn families(self) -> (Family, Family, Family) {
        match self {
            PairCase::ConicConic => (Family::CommonConicConic, Family::FreeConicConic, Family::JointConicConic),
            PairCase::AffineConic => (Family::CommonAffineConic, Family::FreeAffineConic, Family::JointAffineConic),
            PairCase::ConicCubic => (Family::CommonConicCubic, Family::FreeConicCubic, Family::JointConicCubic),
            PairCase::CubicCubic => (Family::CommonCubicCubic, Family::FreeCubicCubic, Family::JointCubicCubic),
        }
    }
}

/// Hamming enumerator of conic forms.
pub fn hamming_conic(q: u64) -> Result<WeightEnumerator> {
    Registry::global().family_enumerator(Family::HammingConic, q, PairCase::ConicConic.length(q))
}

/// Hamming enumerator of affine conic polynomials.
pub fn hamming_affine_conic(q: u64) -> Result<WeightEnumerator> {
    Registry::global().family_enumerator(Family::HammingAffineConic, q, PairCase::AffineConic.length(q))
}

/// Hamming enumerator of cubic forms: singular part plus the smooth part
/// predicted from the trace distribution.
pub fn hamming_cubic(q: u64) -> Result<WeightEnumerator> {
    let sing = Registry::global().family_enumerator(Family::SingularCubic, q, PairCase::CubicCubic.length(q))?;
    Ok(&sing + &predict_smooth_enumerator(q)?)
}

/// Every term of the second enumerator except the free coefficients:
/// zero and proportional pairs from the Hamming enumerators plus the
/// common-component pairs.
pub fn known_part(case: PairCase, q: u64) -> Result<WeightEnumerator> {
    let n = case.length(q);
    let reg = Registry::global();
    let xn = WeightEnumerator::x_power(n);
    let base = match case {
        PairCase::ConicConic => proportional_closure(&hamming_conic(q)?, q),
        PairCase::AffineConic => proportional_closure(&hamming_affine_conic(q)?, q),
        PairCase::CubicCubic => proportional_closure(&hamming_cubic(q)?, q),
        PairCase::ConicCubic => &(&hamming_conic(q)? + &hamming_cubic(q)?) - &xn,
    };
    let common = reg.family_enumerator(case.families().0, q, n)?;
    Ok(&base + &common)
}

/// `(q + 1) W - q X^n`: pairs with a zero form or proportional forms.
fn proportional_closure(w: &WeightEnumerator, q: u64) -> WeightEnumerator {
    let scaled = w.scale(&BigInt::from(q + 1));
    &scaled - &WeightEnumerator::x_power(w.n()).scale(&BigInt::from(q))
}

/// Registered free coefficients `c_0..c_de` as an enumerator.
pub fn free_part(case: PairCase, q: u64) -> Result<WeightEnumerator> {
    Registry::global().family_enumerator(case.families().1, q, case.length(q))
}

/// Closed-form second enumerator.
pub fn assemble_second_enumerator(case: PairCase, q: u64) -> Result<WeightEnumerator> {
    Ok(&known_part(case, q)? + &free_part(case, q)?)
}

/// Lowest `de + 1` coefficients of the joint dual enumerator.
pub fn dual_targets(case: PairCase, q: u64) -> Result<Vec<BigInt>> {
    let u = case.unknowns();
    let joint = Registry::global().family_enumerator(case.families().2, q, case.length(q))?;
    let mut out: Vec<BigInt> = joint.counts()[..u].to_vec();
    out[0] += 1;
    Ok(out)
}

/// Free coefficients derived from the known part and the dual targets, as
/// exact rationals; they must agree with the registered ones.
pub fn derive_free_coefficients(case: PairCase, q: u64) -> Result<Vec<BigRational>> {
    let known = known_part(case, q)?;
    let targets = dual_targets(case, q)?;
    solve_low_coefficients(&known, &targets, &BigInt::from(q * q - 1), &case.size_product(q))
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn assembled_enumerators_conserve_pairs() {
        for case in PairCase::ALL {
            for q in [3u64, 4, 5, 7, 8, 9] {
                let w = assemble_second_enumerator(case, q).unwrap();
                assert_eq!(w.total(), case.size_product(q), "{} q={q}", case.name());
                assert!(w.is_nonnegative());
            }
        }
    }

    #[test]
    fn hamming_enumerators_conserve_forms() {
        for q in [3u64, 4, 5, 7, 8, 9, 11] {
            assert_eq!(hamming_conic(q).unwrap().total(), BigInt::from(q).pow(6));
            assert_eq!(hamming_affine_conic(q).unwrap().total(), BigInt::from(q).pow(6));
            assert_eq!(hamming_cubic(q).unwrap().total(), BigInt::from(q).pow(10));
        }
    }

    #[test]
    fn solver_reproduces_registered_free_coefficients() {
        for case in PairCase::ALL {
            for q in [3u64, 4, 5, 7] {
                let derived = derive_free_coefficients(case, q).unwrap();
                let free = free_part(case, q).unwrap();
                let registered: Vec<BigRational> =
                    (0..case.unknowns()).map(|j| BigRational::from_integer(free.coeff_x(j).clone())).collect();
                assert_eq!(derived, registered, "{} q={q}", case.name());
            }
        }
    }
}
