//! Classical theta-style expansions, each available as a sparse direct sum
//! and/or as an eta quotient, with cross-checks between the two routes.
//!
//! All checks are certified only up to the requested truncation: a passing
//! result means "verified to O(q^{T+1})", never "proven".

use std::fmt;

use crate::error::{Error, Result};
use crate::series::{pentagonal_series, EtaQuotient, Ring, Series};

/// The catalog of expansions used by the workbench.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum ThetaKind {
    /// f_1 = (q; q)_inf, pentagonal-number sum.
    F1,
    /// f_1^3, the alternating sum of odd weights over triangular exponents.
    F1Cubed,
    /// f_2^5 / f_1^2 = sum (-1)^k (3k+1) q^{3k^2+2k} over all integers k.
    F2FifthOverF1Squared,
    /// phi(q): two-sided sum of q^{n^2}.
    Phi,
    /// phi(-q) = f_1^2 / f_2.
    PhiNeg,
    /// psi(q): sum of q^{n(n+1)/2} for n >= 0, equal to f_2^2 / f_1.
    Psi,
    /// P(q) = f_2 f_3^2 / (f_1 f_6); eta-quotient form only.
    P,
}

impl ThetaKind {
    pub const ALL: [ThetaKind; 7] = [
        ThetaKind::F1,
        ThetaKind::F1Cubed,
        ThetaKind::F2FifthOverF1Squared,
        ThetaKind::Phi,
        ThetaKind::PhiNeg,
        ThetaKind::Psi,
        ThetaKind::P,
    ];

    /// Kinds carrying both a sparse sum and an eta-quotient realization.
    pub const DUAL: [ThetaKind; 5] = [
        ThetaKind::F1,
        ThetaKind::F1Cubed,
        ThetaKind::F2FifthOverF1Squared,
        ThetaKind::PhiNeg,
        ThetaKind::Psi,
    ];

    /// The eta-quotient form, when one is defined for this kind.
    pub fn eta_form(self) -> Option<EtaQuotient> {
        let pairs: &[(u64, i64)] = match self {
            ThetaKind::F1 => &[(1, 1)],
            ThetaKind::F1Cubed => &[(1, 3)],
            ThetaKind::F2FifthOverF1Squared => &[(2, 5), (1, -2)],
            ThetaKind::Phi => return None,
            ThetaKind::PhiNeg => &[(1, 2), (2, -1)],
            ThetaKind::Psi => &[(2, 2), (1, -1)],
            ThetaKind::P => &[(2, 1), (3, 2), (1, -1), (6, -1)],
        };
        Some(EtaQuotient::new(pairs.iter().copied()).expect("static factor lists are valid"))
    }
}

impl fmt::Display for ThetaKind {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let name = match self {
            ThetaKind::F1 => "f1",
            ThetaKind::F1Cubed => "f1^3",
            ThetaKind::F2FifthOverF1Squared => "f2^5/f1^2",
            ThetaKind::Phi => "phi(q)",
            ThetaKind::PhiNeg => "phi(-q)",
            ThetaKind::Psi => "psi(q)",
            ThetaKind::P => "P(q)",
        };
        write!(f, "{name}")
    }
}

/// Expand `kind` as its sparse bilateral/unilateral sum, including every
/// index whose exponent lies within the truncation.
pub fn theta_direct(kind: ThetaKind, ring: Ring, trunc: usize) -> Result<Series> {
    let mut s = Series::zero(ring, trunc)?;
    match kind {
        ThetaKind::F1 => return pentagonal_series(ring, trunc),
        ThetaKind::F1Cubed => {
            let mut k: u64 = 0;
            loop {
                let exponent = (k * (k + 1) / 2) as usize;
                if exponent > trunc {
                    break;
                }
                let weight = (2 * k + 1) as i64;
                s.add_term(exponent, if k % 2 == 0 { weight } else { -weight });
                k += 1;
            }
        }
        ThetaKind::F2FifthOverF1Squared => {
            let mut k: i64 = 0;
            loop {
                let pos = 3 * k * k + 2 * k;
                let neg = 3 * k * k - 2 * k;
                if pos as usize > trunc && neg as usize > trunc && k > 0 {
                    break;
                }
                let sign = if k % 2 == 0 { 1 } else { -1 };
                if (pos as usize) <= trunc {
                    s.add_term(pos as usize, sign * (3 * k + 1));
                }
                if k > 0 && (neg as usize) <= trunc {
                    s.add_term(neg as usize, sign * (-3 * k + 1));
                }
                k += 1;
            }
        }
        ThetaKind::Phi | ThetaKind::PhiNeg => {
            s.add_term(0, 1);
            let mut n: u64 = 1;
            loop {
                let exponent = (n * n) as usize;
                if exponent > trunc {
                    break;
                }
                let sign = match kind {
                    ThetaKind::Phi => 1,
                    _ => {
                        // (-q)^{n^2} carries the parity of n
                        if n % 2 == 0 {
                            1
                        } else {
                            -1
                        }
                    }
                };
                s.add_term(exponent, 2 * sign);
                n += 1;
            }
        }
        ThetaKind::Psi => {
            let mut n: u64 = 0;
            loop {
                let exponent = (n * (n + 1) / 2) as usize;
                if exponent > trunc {
                    break;
                }
                s.add_term(exponent, 1);
                n += 1;
            }
        }
        ThetaKind::P => return Err(Error::NoDirectSum(kind)),
    }
    Ok(s)
}

/// Expand `kind` through its eta-quotient form.
pub fn theta_eta(kind: ThetaKind, ring: Ring, trunc: usize) -> Result<Series> {
    match kind.eta_form() {
        Some(eq) => eq.expand(ring, trunc),
        None => Err(Error::NoEtaForm(kind)),
    }
}

/// f_1 by literal term-by-term multiplication of (1 - q^n), n <= trunc.
/// This is the independent product route used to certify the pentagonal sum.
pub fn product_f1(ring: Ring, trunc: usize) -> Result<Series> {
    let mut s = Series::one(ring, trunc)?;
    for n in 1..=trunc {
        s.mul_one_minus_qn(n);
    }
    Ok(s)
}

/// Outcome of a truncation-level identity comparison.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct IdentityCheck {
    pub ok: bool,
    pub first_mismatch: Option<usize>,
    pub trunc: usize,
}

impl IdentityCheck {
    pub(crate) fn from_mismatch(mismatch: Option<usize>, trunc: usize) -> Self {
        IdentityCheck {
            ok: mismatch.is_none(),
            first_mismatch: mismatch,
            trunc,
        }
    }
}

/// Compare the two expansion routes of `kind` coefficientwise over the exact
/// integers. For `F1` the reference side is the literal product of
/// (1 - q^n), so the pentagonal route is checked against independent code.
pub fn check_theta_identity(kind: ThetaKind, trunc: usize) -> Result<IdentityCheck> {
    let direct = theta_direct(kind, Ring::Exact, trunc)?;
    let reference = match kind {
        ThetaKind::F1 => product_f1(Ring::Exact, trunc)?,
        _ => theta_eta(kind, Ring::Exact, trunc)?,
    };
    Ok(IdentityCheck::from_mismatch(
        direct.first_mismatch(&reference)?,
        trunc,
    ))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::series::Coefficient;
    use num_bigint::BigInt;

    #[test]
    fn pentagonal_direct_leading_terms() {
        let s = theta_direct(ThetaKind::F1, Ring::Exact, 7).unwrap();
        assert_eq!(s, Series::from_i64(Ring::Exact, 7, &[1, -1, -1, 0, 0, 1, 0, 1]).unwrap());
    }

    #[test]
    fn cube_direct_leading_terms() {
        let s = theta_direct(ThetaKind::F1Cubed, Ring::Exact, 3).unwrap();
        assert_eq!(s, Series::from_i64(Ring::Exact, 3, &[1, -3, 0, 5]).unwrap());
    }

    #[test]
    fn psi_direct_leading_terms() {
        let s = theta_direct(ThetaKind::Psi, Ring::Exact, 6).unwrap();
        assert_eq!(s, Series::from_i64(Ring::Exact, 6, &[1, 1, 0, 1, 0, 0, 1]).unwrap());
    }

    #[test]
    fn phi_coefficients_are_0_1_2() {
        let s = theta_direct(ThetaKind::Phi, Ring::Exact, 200).unwrap();
        assert_eq!(s.coeff(0).unwrap(), Coefficient::Exact(BigInt::from(1)));
        for n in 1..=200 {
            let c = s.coeff(n).unwrap().to_bigint();
            assert!(c == BigInt::from(0) || c == BigInt::from(2), "n={n}");
        }
    }

    #[test]
    fn psi_coefficients_are_0_1() {
        let s = theta_direct(ThetaKind::Psi, Ring::Exact, 200).unwrap();
        for n in 0..=200 {
            let c = s.coeff(n).unwrap().to_bigint();
            assert!(c == BigInt::from(0) || c == BigInt::from(1), "n={n}");
        }
    }

    #[test]
    fn p_has_no_direct_sum_and_phi_no_eta_form() {
        assert_eq!(
            theta_direct(ThetaKind::P, Ring::Exact, 5),
            Err(Error::NoDirectSum(ThetaKind::P))
        );
        assert_eq!(
            theta_eta(ThetaKind::Phi, Ring::Exact, 5),
            Err(Error::NoEtaForm(ThetaKind::Phi))
        );
    }

    #[test]
    fn p_constant_term_is_one() {
        let s = theta_eta(ThetaKind::P, Ring::Exact, 0).unwrap();
        assert_eq!(s, Series::one(Ring::Exact, 0).unwrap());
    }

    #[test]
    fn dual_forms_agree_to_moderate_depth() {
        for kind in ThetaKind::DUAL {
            let check = check_theta_identity(kind, 500).unwrap();
            assert!(check.ok, "{kind}: mismatch at {:?}", check.first_mismatch);
        }
    }

    #[test]
    fn psi_times_phi_neg_is_f1_f2() {
        let psi = theta_direct(ThetaKind::Psi, Ring::Exact, 200).unwrap();
        let phi_neg = theta_direct(ThetaKind::PhiNeg, Ring::Exact, 200).unwrap();
        let left = psi.mul(&phi_neg).unwrap();
        let right = EtaQuotient::new([(1, 1), (2, 1)])
            .unwrap()
            .expand(Ring::Exact, 200)
            .unwrap();
        assert_eq!(left, right);
    }

    #[test]
    fn increasing_truncation_preserves_prefix() {
        for kind in [ThetaKind::F1, ThetaKind::Phi, ThetaKind::F2FifthOverF1Squared] {
            let small = theta_direct(kind, Ring::Exact, 60).unwrap();
            let large = theta_direct(kind, Ring::Exact, 150).unwrap();
            assert_eq!(large.first_mismatch(&small).unwrap(), None, "{kind}");
        }
    }
}
