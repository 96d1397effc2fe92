//! The congruence-family registry: every claim the workbench can check,
//! encoded as data. Identifiers are stable strings used by the CLI.

use std::sync::OnceLock;

use crate::engine::{is_prime, legendre};
use crate::error::{Error, Result};

/// How a residue class r in [1, p-1] qualifies for a family.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum ResidueMode {
    /// scale*r + offset is a quadratic non-residue mod p.
    QuadraticNonResidue,
    /// p divides scale*r + offset.
    Divisible,
    /// Either of the above.
    NonResidueOrDivisible,
    /// r itself is a quadratic non-residue mod p.
    RawNonResidue,
}

/// The linear form scale*r + offset together with its admissibility mode.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct ResidueCondition {
    pub scale: u64,
    pub offset: u64,
    pub mode: ResidueMode,
}

impl ResidueCondition {
    pub const fn new(scale: u64, offset: u64, mode: ResidueMode) -> Self {
        ResidueCondition {
            scale,
            offset,
            mode,
        }
    }

    /// All admissible r in [1, p-1], ascending. In `Divisible` mode this is
    /// the unique solution when it lies in range, possibly empty.
    pub fn admissible(&self, p: u64) -> Result<Vec<u64>> {
        let mut out = Vec::new();
        for r in 1..p {
            let value = (self.scale * r + self.offset) as i64;
            let symbol = match self.mode {
                ResidueMode::RawNonResidue => legendre(r as i64, p)?,
                _ => legendre(value, p)?,
            };
            let take = match self.mode {
                ResidueMode::QuadraticNonResidue | ResidueMode::RawNonResidue => symbol == -1,
                ResidueMode::Divisible => symbol == 0,
                ResidueMode::NonResidueOrDivisible => symbol <= 0,
            };
            if take {
                out.push(r);
            }
        }
        Ok(out)
    }

    /// Human-readable evaluation of the condition at one residue.
    pub fn describe(&self, r: u64, p: u64) -> String {
        let value = self.scale * r + self.offset;
        let form = if self.scale == 1 && self.offset == 0 {
            format!("r = {r}")
        } else {
            format!("{}r + {} = {value}", self.scale, self.offset)
        };
        let verdict = match self.mode {
            ResidueMode::RawNonResidue => match legendre(r as i64, p) {
                Ok(-1) => "is a quadratic non-residue".to_string(),
                Ok(0) => "is divisible".to_string(),
                _ => "is a quadratic residue".to_string(),
            },
            _ => match legendre(value as i64, p) {
                Ok(-1) => "is a quadratic non-residue".to_string(),
                Ok(0) => format!("is 0 (mod {p})"),
                _ => "is a quadratic residue".to_string(),
            },
        };
        format!("{form} {verdict} mod {p}")
    }
}

/// Affine color assignment in the lifting grid (k, j) and the prime p:
/// even colors  r = rk*p*(k-j) + rp*p + rc,
/// odd colors   s = sk*p*k     + sp*p + sc.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct ColorMap {
    pub rk: i64,
    pub rp: i64,
    pub rc: i64,
    pub sk: i64,
    pub sp: i64,
    pub sc: i64,
}

impl ColorMap {
    pub const fn lifted(rk: i64, rc: i64, sk: i64, sc: i64) -> Self {
        ColorMap {
            rk,
            rp: 0,
            rc,
            sk,
            sp: 0,
            sc,
        }
    }

    pub const fn per_prime(rc: i64, sc: i64) -> Self {
        ColorMap {
            rk: 1,
            rp: 1,
            rc,
            sk: 1,
            sp: 1,
            sc,
        }
    }

    /// Evaluate at (p, k, j); both color counts must come out >= 1.
    pub fn eval(&self, p: u64, k: u32, j: u32) -> Result<(u32, u32)> {
        assert!(k >= j, "color maps require k >= j");
        let p = p as i64;
        let (k, j) = (k as i64, j as i64);
        let r = self.rk * p * (k - j) + self.rp * p + self.rc;
        let s = self.sk * p * k + self.sp * p + self.sc;
        if r < 1 || s < 1 {
            return Err(Error::ColorsOutOfRange { r, s });
        }
        Ok((r as u32, s as u32))
    }
}

/// Which primes a per-prime family admits.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum PrimeConstraint {
    /// Any odd prime.
    OddPrime,
    /// Primes p >= 5.
    AtLeast5,
    /// Primes congruent to 5 or 11 mod 12.
    FiveOrElevenMod12,
}

impl PrimeConstraint {
    pub fn admits(&self, p: u64) -> bool {
        if !is_prime(p) || p < 3 {
            return false;
        }
        match self {
            PrimeConstraint::OddPrime => true,
            PrimeConstraint::AtLeast5 => p >= 5,
            PrimeConstraint::FiveOrElevenMod12 => p % 12 == 5 || p % 12 == 11,
        }
    }

    pub fn describe(&self) -> &'static str {
        match self {
            PrimeConstraint::OddPrime => "p must be an odd prime",
            PrimeConstraint::AtLeast5 => "p must be a prime with p >= 5",
            PrimeConstraint::FiveOrElevenMod12 => "p must be a prime with p = 5 or 11 (mod 12)",
        }
    }
}

/// One congruence row a_{1,s}(step*n + residue) = 0 (mod p).
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct PriorRow {
    /// Odd-color count is s_scale*j + s_const (s_scale = 0 for fixed rows).
    pub s_scale: u64,
    pub s_const: u64,
    pub residue: u64,
}

/// One side of an internal congruence: coefficients of the colored series on
/// the progression step*n + offset.
#[derive(Clone, Copy, Debug)]
pub struct SubSeq {
    pub colors: ColorMap,
    pub step: u64,
    pub offset: u64,
}

/// Progression generator for self-replicating families.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum IteratedRule {
    /// colors (1,5): step 3^{2a+3}, residue (153 * 9^a - 1) / 8.
    OddFiveColor,
    /// colors (2,4): step 3^{2a+3}, residues 9^{a+1} and 2 * 9^{a+1}.
    TwoFourColor,
}

impl IteratedRule {
    pub fn colors(&self) -> (u32, u32) {
        match self {
            IteratedRule::OddFiveColor => (1, 5),
            IteratedRule::TwoFourColor => (2, 4),
        }
    }

    /// (step, residues) at iteration alpha; integrality of the residue
    /// formula is asserted here, at construction of the progression.
    pub fn progression(&self, alpha: u32) -> (u64, Vec<u64>) {
        let step = 3u64.pow(2 * alpha + 3);
        match self {
            IteratedRule::OddFiveColor => {
                let numerator = 153 * 9u64.pow(alpha) - 1;
                assert!(numerator % 8 == 0, "residue formula must be integral");
                (step, vec![numerator / 8])
            }
            IteratedRule::TwoFourColor => {
                let b = 9u64.pow(alpha + 1);
                (step, vec![b, 2 * b])
            }
        }
    }
}

/// The shape of one registered family.
#[derive(Clone, Debug)]
pub enum FamilyDef {
    /// a(step*n + b) = 0 (mod modulus) for each b, colors from the (k, j) grid.
    LiftedVanishing {
        modulus: u64,
        step: u64,
        residues: &'static [u64],
        colors: ColorMap,
    },
    /// Fixed congruence rows over a_{1,s}; the k report column indexes the
    /// row, and when `color_grid` is set the j column sweeps the color step.
    PriorRows {
        modulus: u64,
        step: u64,
        rows: Vec<PriorRow>,
        color_grid: bool,
    },
    /// a(p*n + r) = 0 (mod p) for admissible r, over the grid primes.
    PerPrime {
        constraint: PrimeConstraint,
        colors: ColorMap,
        rule: ResidueCondition,
        lift_grid: bool,
    },
    /// coeff(lhs) = coeff(rhs) (mod modulus) along the paired progressions.
    InternalPair {
        modulus: u64,
        lhs: SubSeq,
        rhs: SubSeq,
        grid: bool,
    },
    /// a(step(alpha)*n + b(alpha)) = 0 (mod 3) for every iteration alpha.
    Iterated(IteratedRule),
}

/// A registered congruence family.
#[derive(Clone, Debug)]
pub struct TheoremFamily {
    pub id: &'static str,
    pub claim: &'static str,
    pub def: FamilyDef,
}

fn build_registry() -> Vec<TheoremFamily> {
    use FamilyDef::*;
    use ResidueMode::*;

    let mut families = Vec::new();

    families.push(TheoremFamily {
        id: "t1.1",
        claim: "five mod-7 rows: a_{1,7j+c}(7n+b) = 0 (mod 7) for (c,b) in \
                {(1,5),(3,2),(4,4),(5,6),(7,3)}",
        def: PriorRows {
            modulus: 7,
            step: 7,
            rows: vec![
                PriorRow { s_scale: 7, s_const: 1, residue: 5 },
                PriorRow { s_scale: 7, s_const: 3, residue: 2 },
                PriorRow { s_scale: 7, s_const: 4, residue: 4 },
                PriorRow { s_scale: 7, s_const: 5, residue: 6 },
                PriorRow { s_scale: 7, s_const: 7, residue: 3 },
            ],
            color_grid: true,
        },
    });

    families.push(TheoremFamily {
        id: "t1.2",
        claim: "a_{1,5}(3^{2a+3} n + (153*9^a - 1)/8) = 0 (mod 3) for every a >= 0",
        def: Iterated(IteratedRule::OddFiveColor),
    });

    families.push(TheoremFamily {
        id: "t1.3",
        claim: "a_{1,5}(5n+3) = 0 (mod 5)",
        def: PriorRows {
            modulus: 5,
            step: 5,
            rows: vec![PriorRow { s_scale: 0, s_const: 5, residue: 3 }],
            color_grid: false,
        },
    });

    families.push(TheoremFamily {
        id: "t1.4",
        claim: "a_{1,3t+2}(27n + 18 + t) = 0 (mod 3) for t in [0, 8]",
        def: PriorRows {
            modulus: 3,
            step: 27,
            rows: (0..=8)
                .map(|t| PriorRow {
                    s_scale: 0,
                    s_const: 3 * t + 2,
                    residue: 18 + t,
                })
                .collect(),
            color_grid: false,
        },
    });

    families.push(TheoremFamily {
        id: "t1.5",
        claim: "a_{p-1,1}(pn+r) = 0 (mod p) for odd primes p when 8r+1 is a \
                quadratic non-residue mod p",
        def: PerPrime {
            constraint: PrimeConstraint::OddPrime,
            colors: ColorMap {
                rk: 0,
                rp: 1,
                rc: -1,
                sk: 0,
                sp: 0,
                sc: 1,
            },
            rule: ResidueCondition::new(8, 1, QuadraticNonResidue),
            lift_grid: false,
        },
    });

    families.push(TheoremFamily {
        id: "t1.6",
        claim: "a_{3(k-j)+3, 3k+6}(3n+1) = a_{3(k-j)+3, 3k+6}(3n+2) = 0 (mod 3)",
        def: LiftedVanishing {
            modulus: 3,
            step: 3,
            residues: &[1, 2],
            colors: ColorMap::lifted(1, 3, 1, 6),
        },
    });

    families.push(TheoremFamily {
        id: "t1.8",
        claim: "a_{27(k-j)+2, 27k+4}(27n+9) = a_{27(k-j)+2, 27k+4}(27n+18) = 0 (mod 3)",
        def: LiftedVanishing {
            modulus: 3,
            step: 27,
            residues: &[9, 18],
            colors: ColorMap::lifted(9, 2, 9, 4),
        },
    });

    families.push(TheoremFamily {
        id: "t1.9",
        claim: "a_{2,4}(27n) = a_{2,4}(3n) (mod 3)",
        def: InternalPair {
            modulus: 3,
            lhs: SubSeq {
                colors: ColorMap::lifted(0, 2, 0, 4),
                step: 27,
                offset: 0,
            },
            rhs: SubSeq {
                colors: ColorMap::lifted(0, 2, 0, 4),
                step: 3,
                offset: 0,
            },
            grid: false,
        },
    });

    families.push(TheoremFamily {
        id: "t1.10",
        claim: "a_{9(k-j)+4, 9k+2}(9n+7) = 0 (mod 3)",
        def: LiftedVanishing {
            modulus: 3,
            step: 9,
            residues: &[7],
            colors: ColorMap::lifted(3, 4, 3, 2),
        },
    });

    families.push(TheoremFamily {
        id: "t1.11",
        claim: "a_{3(k-j)+5, 3k+1}(3n+2) = 0 (mod 3)",
        def: LiftedVanishing {
            modulus: 3,
            step: 3,
            residues: &[2],
            colors: ColorMap::lifted(1, 5, 1, 1),
        },
    });

    families.push(TheoremFamily {
        id: "t1.12",
        claim: "a_{3(k-j)+5, 3k+1}(9n+6) = 0 (mod 3)",
        def: LiftedVanishing {
            modulus: 3,
            step: 9,
            residues: &[6],
            colors: ColorMap::lifted(1, 5, 1, 1),
        },
    });

    families.push(TheoremFamily {
        id: "t1.13",
        claim: "a_{p(k-j)+p-4, pk+p}(pn+r) = 0 (mod p) for p = 5, 11 (mod 12) \
                and the unique r with p | 3r+1",
        def: PerPrime {
            constraint: PrimeConstraint::FiveOrElevenMod12,
            colors: ColorMap::per_prime(-4, 0),
            rule: ResidueCondition::new(3, 1, Divisible),
            lift_grid: true,
        },
    });

    families.push(TheoremFamily {
        id: "t1.15",
        claim: "a_{p(k-j)+p-3, pk+p}(pn+r) = 0 (mod p) for p >= 5 when 4r+1 is \
                a quadratic non-residue mod p",
        def: PerPrime {
            constraint: PrimeConstraint::AtLeast5,
            colors: ColorMap::per_prime(-3, 0),
            rule: ResidueCondition::new(4, 1, QuadraticNonResidue),
            lift_grid: true,
        },
    });

    families.push(TheoremFamily {
        id: "t1.15b",
        claim: "a_{p(k-j)+p-3, pk+p}(pn+r) = 0 (mod p) for p >= 5 and the \
                unique r with p | 4r+1",
        def: PerPrime {
            constraint: PrimeConstraint::AtLeast5,
            colors: ColorMap::per_prime(-3, 0),
            rule: ResidueCondition::new(4, 1, Divisible),
            lift_grid: true,
        },
    });

    families.push(TheoremFamily {
        id: "t1.16",
        claim: "a_{p(k-j)+p-1, pk+p-2}(pn+r) = 0 (mod p) for p >= 5 when r is \
                a quadratic non-residue mod p",
        def: PerPrime {
            constraint: PrimeConstraint::AtLeast5,
            colors: ColorMap::per_prime(-1, -2),
            rule: ResidueCondition::new(1, 0, RawNonResidue),
            lift_grid: true,
        },
    });

    families.push(TheoremFamily {
        id: "t1.18",
        claim: "a_{p(k-j)+p-1, pk+p}(pn+r) = 0 (mod p) for p >= 5 when 12r+1 \
                is a quadratic non-residue mod p",
        def: PerPrime {
            constraint: PrimeConstraint::AtLeast5,
            colors: ColorMap::per_prime(-1, 0),
            rule: ResidueCondition::new(12, 1, QuadraticNonResidue),
            lift_grid: true,
        },
    });

    families.push(TheoremFamily {
        id: "t1.19",
        claim: "a_{p(k-j)+p-1, pk+p+1}(pn+r) = 0 (mod p) for odd p when 8r+1 \
                is a quadratic non-residue mod p",
        def: PerPrime {
            constraint: PrimeConstraint::OddPrime,
            colors: ColorMap::per_prime(-1, 1),
            rule: ResidueCondition::new(8, 1, QuadraticNonResidue),
            lift_grid: true,
        },
    });

    families.push(TheoremFamily {
        id: "t1.20",
        claim: "a_{p(k-j)+p-3, pk+p+2}(pn+r) = 0 (mod p) for p >= 5 when 3r+1 \
                is a quadratic non-residue mod p or divisible by p",
        def: PerPrime {
            constraint: PrimeConstraint::AtLeast5,
            colors: ColorMap::per_prime(-3, 2),
            rule: ResidueCondition::new(3, 1, NonResidueOrDivisible),
            lift_grid: true,
        },
    });

    families.push(TheoremFamily {
        id: "e1.5",
        claim: "a_{1,5}(27n+10) = a_{1,5}(3n+1) (mod 3)",
        def: InternalPair {
            modulus: 3,
            lhs: SubSeq {
                colors: ColorMap::lifted(0, 1, 0, 5),
                step: 27,
                offset: 10,
            },
            rhs: SubSeq {
                colors: ColorMap::lifted(0, 1, 0, 5),
                step: 3,
                offset: 1,
            },
            grid: false,
        },
    });

    families.push(TheoremFamily {
        id: "e1.6",
        claim: "a_{1,5}(27n+19) = 0 (mod 3)",
        def: PriorRows {
            modulus: 3,
            step: 27,
            rows: vec![PriorRow { s_scale: 0, s_const: 5, residue: 19 }],
            color_grid: false,
        },
    });

    families.push(TheoremFamily {
        id: "c3.1",
        claim: "a_{27(k-j)+1, 27k+5}(27n+19) = 0 (mod 3)",
        def: LiftedVanishing {
            modulus: 3,
            step: 27,
            residues: &[19],
            colors: ColorMap::lifted(9, 1, 9, 5),
        },
    });

    families.push(TheoremFamily {
        id: "c3.2",
        claim: "a_{27(k-j)+1, 27k+5}(27n+10) = a_{3(k-j)+1, 3k+5}(3n+1) (mod 3)",
        def: InternalPair {
            modulus: 3,
            lhs: SubSeq {
                colors: ColorMap::lifted(9, 1, 9, 5),
                step: 27,
                offset: 10,
            },
            rhs: SubSeq {
                colors: ColorMap::lifted(1, 1, 1, 5),
                step: 3,
                offset: 1,
            },
            grid: true,
        },
    });

    families.push(TheoremFamily {
        id: "c4.1",
        claim: "a_{27(k-j)+2, 27k+4}(27n) = a_{3(k-j)+2, 3k+4}(3n) (mod 3)",
        def: InternalPair {
            modulus: 3,
            lhs: SubSeq {
                colors: ColorMap::lifted(9, 2, 9, 4),
                step: 27,
                offset: 0,
            },
            rhs: SubSeq {
                colors: ColorMap::lifted(1, 2, 1, 4),
                step: 3,
                offset: 0,
            },
            grid: true,
        },
    });

    families.push(TheoremFamily {
        id: "c4.2",
        claim: "a_{2,4}(3^{2a+3} n + 9^{a+1}) = a_{2,4}(3^{2a+3} n + 2*9^{a+1}) \
                = 0 (mod 3) for every a >= 0",
        def: Iterated(IteratedRule::TwoFourColor),
    });

    families
}

/// The full registry, built once.
pub fn registry() -> &'static [TheoremFamily] {
    static REGISTRY: OnceLock<Vec<TheoremFamily>> = OnceLock::new();
    REGISTRY.get_or_init(build_registry)
}

/// Look up a family by id.
pub fn family(id: &str) -> Result<&'static TheoremFamily> {
    registry()
        .iter()
        .find(|f| f.id == id)
        .ok_or_else(|| Error::UnknownFamily(id.to_string()))
}

pub fn family_ids() -> Vec<&'static str> {
    registry().iter().map(|f| f.id).collect()
}
