//! m-dissection: splitting a series into residue-class components, plus the
//! catalog of 3-dissection identities the congruence proofs lean on.

use std::fmt;

use crate::error::{Error, Result};
use crate::etatheta::{theta_eta, IdentityCheck, ThetaKind};
use crate::series::{Coefficient, EtaQuotient, Ring, Series};

/// Component `j` of the m-dissection of `a`: coefficient n of the result is
/// the coefficient of q^{mn+j} in `a`, i.e. extract the class, divide by q^j,
/// and replace q^m by q. The result is known through floor((T - j) / m).
pub fn extract(a: &Series, m: usize, j: usize) -> Result<Series> {
    if m == 0 || j >= m {
        return Err(Error::ResidueOutOfRange { j, m });
    }
    if a.trunc() < j {
        return Err(Error::BeyondTruncation {
            n: j,
            trunc: a.trunc(),
        });
    }
    let trunc = (a.trunc() - j) / m;
    let coeffs: Vec<_> = (0..=trunc)
        .map(|n| a.coeff(m * n + j).map(|c| c.to_bigint()))
        .collect::<Result<_>>()?;
    Series::new(a.ring(), trunc, coeffs)
}

/// Witness that a series coefficient survives in a progression.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct NonzeroWitness {
    /// Index within the extracted component.
    pub n: usize,
    /// The original exponent m*n + j.
    pub exponent: usize,
    pub value: Coefficient,
}

/// Outcome of a vanishing check on one residue class.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct VanishCheck {
    pub vanishes: bool,
    pub witness: Option<NonzeroWitness>,
}

/// Whether component (m, j) of `a` is identically zero through its
/// truncation, in the ring `a` lives in. On failure the smallest nonzero
/// index is reported for diagnosis.
pub fn component_vanishes(a: &Series, m: usize, j: usize) -> Result<VanishCheck> {
    let component = extract(a, m, j)?;
    match component.leading_nonzero() {
        None => Ok(VanishCheck {
            vanishes: true,
            witness: None,
        }),
        Some((n, value)) => Ok(VanishCheck {
            vanishes: false,
            witness: Some(NonzeroWitness {
                n,
                exponent: m * n + j,
                value,
            }),
        }),
    }
}

/// Identifies one of the catalogued 3-dissections by its left-hand side.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum DissectionId {
    /// f_2^3 / f_1^3
    F2CubedOverF1Cubed,
    /// 1 / (f_1 f_2)
    ReciprocalF1F2,
    /// f_1 f_2
    F1TimesF2,
    /// f_1^2 / f_2
    F1SquaredOverF2,
    /// psi(q)
    Psi,
    /// 1 / psi(q)
    PsiReciprocal,
}

impl DissectionId {
    pub const ALL: [DissectionId; 6] = [
        DissectionId::F2CubedOverF1Cubed,
        DissectionId::ReciprocalF1F2,
        DissectionId::F1TimesF2,
        DissectionId::F1SquaredOverF2,
        DissectionId::Psi,
        DissectionId::PsiReciprocal,
    ];
}

impl fmt::Display for DissectionId {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let name = match self {
            DissectionId::F2CubedOverF1Cubed => "f2^3/f1^3",
            DissectionId::ReciprocalF1F2 => "1/(f1*f2)",
            DissectionId::F1TimesF2 => "f1*f2",
            DissectionId::F1SquaredOverF2 => "f1^2/f2",
            DissectionId::Psi => "psi(q)",
            DissectionId::PsiReciprocal => "1/psi(q)",
        };
        write!(f, "{name}")
    }
}

/// One factor of a right-hand-side term, taken at argument q^{arg_power}.
#[derive(Clone, Debug)]
pub enum FactorBase {
    /// An eta quotient already written in the scaled variable.
    Eta(EtaQuotient),
    /// psi at q^{arg_power}.
    Psi,
    /// P at q^{arg_power}.
    P,
}

#[derive(Clone, Debug)]
pub struct ScaledFactor {
    pub base: FactorBase,
    pub arg_power: usize,
    pub exponent: i64,
}

impl ScaledFactor {
    fn eta(pairs: &[(u64, i64)]) -> Self {
        ScaledFactor {
            base: FactorBase::Eta(
                EtaQuotient::new(pairs.iter().copied()).expect("static factor lists are valid"),
            ),
            arg_power: 1,
            exponent: 1,
        }
    }

    fn psi_at(arg_power: usize, exponent: i64) -> Self {
        ScaledFactor {
            base: FactorBase::Psi,
            arg_power,
            exponent,
        }
    }

    fn p_at(arg_power: usize, exponent: i64) -> Self {
        ScaledFactor {
            base: FactorBase::P,
            arg_power,
            exponent,
        }
    }

    /// Expand the factor to truncation `trunc`. Scaled arguments are realized
    /// by expanding at q to ceil(trunc / arg_power) and then substituting, so
    /// no knowledge is lost at the target truncation.
    fn expand(&self, ring: Ring, trunc: usize) -> Result<Series> {
        let base = match &self.base {
            FactorBase::Eta(eq) => {
                debug_assert_eq!(self.arg_power, 1, "eta factors are pre-scaled");
                return eq.expand(ring, trunc)?.pow(self.exponent);
            }
            FactorBase::Psi => theta_eta(ThetaKind::Psi, ring, trunc.div_ceil(self.arg_power))?,
            FactorBase::P => theta_eta(ThetaKind::P, ring, trunc.div_ceil(self.arg_power))?,
        };
        Ok(base
            .pow(self.exponent)?
            .substitute_qm(self.arg_power)
            .truncated(trunc))
    }
}

/// scalar * q^shift * (product of factors)
#[derive(Clone, Debug)]
pub struct DissectionTerm {
    pub scalar: i64,
    pub shift: usize,
    pub factors: Vec<ScaledFactor>,
}

impl DissectionTerm {
    fn new(scalar: i64, shift: usize, factors: Vec<ScaledFactor>) -> Self {
        DissectionTerm {
            scalar,
            shift,
            factors,
        }
    }

    fn expand(&self, ring: Ring, trunc: usize) -> Result<Series> {
        let mut acc = Series::one(ring, trunc)?;
        for factor in &self.factors {
            acc = acc.mul(&factor.expand(ring, trunc)?)?;
        }
        Ok(acc.scale(self.scalar).shift_up(self.shift))
    }
}

/// A catalogued identity: an eta-quotient left side and its displayed
/// right-hand terms (shifts can exceed m - 1; classes regroup modulo m).
#[derive(Clone, Debug)]
pub struct DissectionIdentity {
    pub id: DissectionId,
    pub lhs: EtaQuotient,
    pub rhs: Vec<DissectionTerm>,
}

impl DissectionIdentity {
    pub fn get(id: DissectionId) -> Self {
        let eq = |pairs: &[(u64, i64)]| {
            EtaQuotient::new(pairs.iter().copied()).expect("static factor lists are valid")
        };
        match id {
            DissectionId::F2CubedOverF1Cubed => DissectionIdentity {
                id,
                lhs: eq(&[(2, 3), (1, -3)]),
                rhs: vec![
                    DissectionTerm::new(1, 0, vec![ScaledFactor::eta(&[(6, 1), (3, -1)])]),
                    DissectionTerm::new(
                        3,
                        1,
                        vec![ScaledFactor::eta(&[(6, 4), (9, 5), (3, -8), (18, -1)])],
                    ),
                    DissectionTerm::new(
                        6,
                        2,
                        vec![ScaledFactor::eta(&[(6, 3), (9, 2), (18, 2), (3, -7)])],
                    ),
                    DissectionTerm::new(
                        12,
                        3,
                        vec![ScaledFactor::eta(&[(6, 2), (18, 5), (3, -6), (9, -1)])],
                    ),
                ],
            },
            DissectionId::ReciprocalF1F2 => DissectionIdentity {
                id,
                lhs: eq(&[(1, -1), (2, -1)]),
                rhs: vec![
                    DissectionTerm::new(
                        1,
                        0,
                        vec![ScaledFactor::eta(&[(9, 9), (3, -6), (6, -2), (18, -3)])],
                    ),
                    DissectionTerm::new(1, 1, vec![ScaledFactor::eta(&[(9, 6), (3, -5), (6, -3)])]),
                    DissectionTerm::new(
                        3,
                        2,
                        vec![ScaledFactor::eta(&[(9, 3), (18, 3), (3, -4), (6, -4)])],
                    ),
                    DissectionTerm::new(
                        -2,
                        3,
                        vec![ScaledFactor::eta(&[(18, 6), (3, -3), (6, -5)])],
                    ),
                    DissectionTerm::new(
                        4,
                        4,
                        vec![ScaledFactor::eta(&[(18, 1), (3, -2), (6, -6), (9, -3)])],
                    ),
                ],
            },
            DissectionId::F1TimesF2 => DissectionIdentity {
                id,
                lhs: eq(&[(1, 1), (2, 1)]),
                rhs: vec![
                    DissectionTerm::new(
                        1,
                        0,
                        vec![ScaledFactor::eta(&[(6, 1), (9, 4), (3, -1), (18, -2)])],
                    ),
                    DissectionTerm::new(-1, 1, vec![ScaledFactor::eta(&[(9, 1), (18, 1)])]),
                    DissectionTerm::new(
                        -2,
                        2,
                        vec![ScaledFactor::eta(&[(3, 1), (18, 4), (6, -1), (9, -2)])],
                    ),
                ],
            },
            DissectionId::F1SquaredOverF2 => DissectionIdentity {
                id,
                lhs: eq(&[(1, 2), (2, -1)]),
                rhs: vec![
                    DissectionTerm::new(1, 0, vec![ScaledFactor::eta(&[(9, 2), (18, -1)])]),
                    DissectionTerm::new(
                        -2,
                        1,
                        vec![ScaledFactor::eta(&[(3, 1), (18, 2), (6, -1), (9, -1)])],
                    ),
                ],
            },
            DissectionId::Psi => DissectionIdentity {
                id,
                lhs: eq(&[(2, 2), (1, -1)]),
                rhs: vec![
                    DissectionTerm::new(1, 0, vec![ScaledFactor::p_at(3, 1)]),
                    DissectionTerm::new(1, 1, vec![ScaledFactor::psi_at(9, 1)]),
                ],
            },
            DissectionId::PsiReciprocal => DissectionIdentity {
                id,
                lhs: eq(&[(1, 1), (2, -2)]),
                rhs: vec![
                    DissectionTerm::new(
                        1,
                        0,
                        vec![
                            ScaledFactor::psi_at(9, 1),
                            ScaledFactor::psi_at(3, -4),
                            ScaledFactor::p_at(3, 2),
                        ],
                    ),
                    DissectionTerm::new(
                        -1,
                        1,
                        vec![
                            ScaledFactor::psi_at(9, 2),
                            ScaledFactor::psi_at(3, -4),
                            ScaledFactor::p_at(3, 1),
                        ],
                    ),
                    DissectionTerm::new(
                        1,
                        2,
                        vec![ScaledFactor::psi_at(9, 3), ScaledFactor::psi_at(3, -4)],
                    ),
                ],
            },
        }
    }
}

/// Expand both sides of the identity over the exact integers and compare
/// coefficientwise through `trunc`. These are exact identities, not
/// congruences; a pass certifies them to O(q^{trunc+1}).
pub fn verify_dissection(id: DissectionId, trunc: usize) -> Result<IdentityCheck> {
    if trunc < 9 {
        return Err(Error::DepthTooSmall {
            min: 9,
            got: trunc,
        });
    }
    let identity = DissectionIdentity::get(id);
    let lhs = identity.lhs.expand(Ring::Exact, trunc)?;
    let mut rhs = Series::zero(Ring::Exact, trunc)?;
    for term in &identity.rhs {
        rhs = rhs.add(&term.expand(Ring::Exact, trunc)?)?;
    }
    Ok(IdentityCheck::from_mismatch(
        lhs.first_mismatch(&rhs)?,
        trunc,
    ))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::etatheta::theta_direct;

    #[test]
    fn extract_reindexes_by_dividing_exponents() {
        let a = Series::from_i64(Ring::Exact, 6, &[9, 0, 1, 8, 0, 2, 7]).unwrap();
        let c0 = extract(&a, 3, 0).unwrap();
        assert_eq!(c0, Series::from_i64(Ring::Exact, 2, &[9, 8, 7]).unwrap());
        let c2 = extract(&a, 3, 2).unwrap();
        assert_eq!(c2, Series::from_i64(Ring::Exact, 1, &[1, 2]).unwrap());
    }

    #[test]
    fn extract_of_constant_one() {
        let one = Series::one(Ring::Exact, 20).unwrap();
        assert!(extract(&one, 4, 0).unwrap().coeff(0).unwrap().to_bigint() == 1.into());
        for j in 1..4 {
            assert!(extract(&one, 4, j).unwrap().is_zero());
        }
    }

    #[test]
    fn extract_rejects_bad_residue() {
        let a = Series::one(Ring::Exact, 5).unwrap();
        assert!(matches!(
            extract(&a, 3, 3),
            Err(Error::ResidueOutOfRange { .. })
        ));
    }

    #[test]
    fn psi_has_no_class_two_component() {
        let psi = theta_direct(ThetaKind::Psi, Ring::Exact, 300).unwrap();
        let check = component_vanishes(&psi, 3, 2).unwrap();
        assert!(check.vanishes);
    }

    #[test]
    fn function_of_q3_has_single_component() {
        let eq = EtaQuotient::new([(3, 4), (6, -2)]).unwrap();
        let s = eq.expand(Ring::Exact, 120).unwrap();
        assert!(component_vanishes(&s, 3, 1).unwrap().vanishes);
        assert!(component_vanishes(&s, 3, 2).unwrap().vanishes);
        assert!(!component_vanishes(&s, 3, 0).unwrap().vanishes);
    }

    #[test]
    fn partition_progression_5n4_mod3_does_not_vanish() {
        let partitions = EtaQuotient::new([(1, -1)])
            .unwrap()
            .expand(Ring::Exact, 60)
            .unwrap()
            .reduce_mod(3)
            .unwrap();
        let check = component_vanishes(&partitions, 5, 4).unwrap();
        assert!(!check.vanishes);
        let w = check.witness.unwrap();
        // p(4) = 5, which is 2 mod 3
        assert_eq!(w.n, 0);
        assert_eq!(w.exponent, 4);
        assert_eq!(w.value, Coefficient::Mod(2));
    }

    #[test]
    fn reassembly_recovers_the_series() {
        let a = EtaQuotient::new([(1, -2), (2, 1)])
            .unwrap()
            .expand(Ring::Exact, 53)
            .unwrap();
        for m in 1..=6usize {
            let mut sum = Series::zero(Ring::Exact, a.trunc()).unwrap();
            for j in 0..m {
                let piece = extract(&a, m, j).unwrap().substitute_qm(m).shift_up(j);
                sum = sum.add(&piece.truncated(a.trunc())).unwrap();
            }
            // Components jointly cover every exponent through the truncation.
            assert_eq!(sum.first_mismatch(&a).unwrap(), None, "m={m}");
        }
    }

    #[test]
    fn extraction_is_linear() {
        let a = EtaQuotient::new([(1, 1), (2, 2)])
            .unwrap()
            .expand(Ring::Exact, 40)
            .unwrap();
        let b = EtaQuotient::new([(1, -1)])
            .unwrap()
            .expand(Ring::Exact, 40)
            .unwrap();
        let sum_first = extract(&a.add(&b).unwrap(), 4, 3).unwrap();
        let extract_first = extract(&a, 4, 3)
            .unwrap()
            .add(&extract(&b, 4, 3).unwrap())
            .unwrap();
        assert_eq!(sum_first, extract_first);

        let scaled = extract(&a.scale(-7), 4, 1).unwrap();
        assert_eq!(scaled, extract(&a, 4, 1).unwrap().scale(-7));
    }

    #[test]
    fn all_six_dissections_hold_to_moderate_depth() {
        for id in DissectionId::ALL {
            let check = verify_dissection(id, 150).unwrap();
            assert!(check.ok, "{id}: mismatch at {:?}", check.first_mismatch);
        }
    }

    #[test]
    fn dissection_depth_floor() {
        assert_eq!(
            verify_dissection(DissectionId::Psi, 5),
            Err(Error::DepthTooSmall { min: 9, got: 5 })
        );
    }
}
