//! Verification engine: plans check cells for registered congruence
//! families, runs them in mod-p rings, and aggregates deterministic reports.

mod registry;
mod report;

pub use registry::{
    family, family_ids, registry, ColorMap, FamilyDef, IteratedRule, PrimeConstraint, PriorRow,
    ResidueCondition, ResidueMode, SubSeq, TheoremFamily,
};
pub use report::{CellReport, Status, VerificationReport, Witness};

use crate::dissect::{component_vanishes, extract, NonzeroWitness, VanishCheck};
use crate::error::{Error, Result};
use crate::etatheta::IdentityCheck;
use crate::series::{EtaQuotient, Ring, Series};

/// Trial-division primality; grid primes are small.
pub fn is_prime(n: u64) -> bool {
    if n < 2 {
        return false;
    }
    if n % 2 == 0 {
        return n == 2;
    }
    let mut d = 3;
    while d * d <= n {
        if n % d == 0 {
            return false;
        }
        d += 2;
    }
    true
}

fn mod_pow(mut base: u64, mut exp: u64, modulus: u64) -> u64 {
    let mut acc: u64 = 1;
    base %= modulus;
    while exp > 0 {
        if exp & 1 == 1 {
            acc = ((acc as u128 * base as u128) % modulus as u128) as u64;
        }
        base = ((base as u128 * base as u128) % modulus as u128) as u64;
        exp >>= 1;
    }
    acc
}

/// Legendre symbol by Euler's criterion: 0 when p | a, +1 for nonzero
/// squares, -1 otherwise. `p` must be an odd prime.
pub fn legendre(a: i64, p: u64) -> Result<i8> {
    if p < 3 || !is_prime(p) {
        return Err(Error::NotOddPrime(p));
    }
    let a = a.rem_euclid(p as i64) as u64;
    if a == 0 {
        return Ok(0);
    }
    let e = mod_pow(a, (p - 1) / 2, p);
    debug_assert!(e == 1 || e == p - 1);
    Ok(if e == 1 { 1 } else { -1 })
}

struct Timer {
    #[cfg(not(target_arch = "wasm32"))]
    start: std::time::Instant,
}

impl Timer {
    fn start() -> Self {
        Timer {
            #[cfg(not(target_arch = "wasm32"))]
            start: std::time::Instant::now(),
        }
    }

    #[cfg(not(target_arch = "wasm32"))]
    fn ms(&self) -> u64 {
        self.start.elapsed().as_millis() as u64
    }

    #[cfg(target_arch = "wasm32")]
    fn ms(&self) -> u64 {
        0
    }
}

/// Grid defaults: k in {0, 1, 2}, j <= k, small primes filtered per family,
/// depth 2000 in the mod-p ring.
#[derive(Clone, Debug)]
pub struct GridSpec {
    pub depth: usize,
    pub kmax: u32,
    pub primes: Vec<u64>,
}

impl Default for GridSpec {
    fn default() -> Self {
        GridSpec {
            depth: 2000,
            kmax: 2,
            primes: vec![3, 5, 7, 11, 13],
        }
    }
}

/// What one cell checks.
#[derive(Clone, Debug)]
pub enum CellTask {
    /// Every listed residue class of the progression vanishes mod `modulus`.
    Vanish {
        colors: (u32, u32),
        modulus: u64,
        step: u64,
        residues: Vec<u64>,
    },
    /// Coefficientwise congruence between two progressions mod `modulus`.
    Compare {
        lhs_colors: (u32, u32),
        rhs_colors: (u32, u32),
        modulus: u64,
        lhs: (u64, u64),
        rhs: (u64, u64),
    },
}

/// An independently runnable unit of the verification grid.
#[derive(Clone, Debug)]
pub struct CheckCell {
    pub family: &'static str,
    pub p: u64,
    pub k: u32,
    pub j: u32,
    pub task: CellTask,
}

fn colored_series_mod(colors: (u32, u32), modulus: u64, depth: usize) -> Result<Series> {
    EtaQuotient::colored_partitions(colors.0, colors.1).expand(Ring::Mod(modulus), depth)
}

fn kj_grid(kmax: u32) -> impl Iterator<Item = (u32, u32)> {
    (0..=kmax).flat_map(|k| (0..=k).map(move |j| (k, j)))
}

/// All admissible residues r in [1, p-1] for a family at prime p.
/// Families with fixed residue sets return them when p matches.
pub fn admissible_residues(fam: &TheoremFamily, p: u64) -> Result<Vec<u64>> {
    match &fam.def {
        FamilyDef::PerPrime {
            constraint, rule, ..
        } => {
            if !constraint.admits(p) {
                return Err(Error::PrimeConstraint {
                    p,
                    constraint: constraint.describe().to_string(),
                });
            }
            rule.admissible(p)
        }
        FamilyDef::LiftedVanishing {
            modulus, residues, ..
        } => {
            if p != *modulus {
                return Err(Error::PrimeConstraint {
                    p,
                    constraint: format!("family is fixed at modulus {modulus}"),
                });
            }
            Ok(residues.to_vec())
        }
        FamilyDef::PriorRows { modulus, rows, .. } => {
            if p != *modulus {
                return Err(Error::PrimeConstraint {
                    p,
                    constraint: format!("family is fixed at modulus {modulus}"),
                });
            }
            let mut out: Vec<u64> = rows.iter().map(|r| r.residue).collect();
            out.sort_unstable();
            out.dedup();
            Ok(out)
        }
        _ => Err(Error::PrimeConstraint {
            p,
            constraint: "family has no single admissible-residue set".to_string(),
        }),
    }
}

/// Plan the grid cells of one family.
pub fn plan_family(fam: &'static TheoremFamily, grid: &GridSpec) -> Result<Vec<CheckCell>> {
    let mut cells = Vec::new();
    match &fam.def {
        FamilyDef::LiftedVanishing {
            modulus,
            step,
            residues,
            colors,
        } => {
            if !grid.primes.contains(modulus) {
                return Ok(cells);
            }
            for (k, j) in kj_grid(grid.kmax) {
                cells.push(CheckCell {
                    family: fam.id,
                    p: *modulus,
                    k,
                    j,
                    task: CellTask::Vanish {
                        colors: colors.eval(*modulus, k, j)?,
                        modulus: *modulus,
                        step: *step,
                        residues: residues.to_vec(),
                    },
                });
            }
        }
        FamilyDef::PriorRows {
            modulus,
            step,
            rows,
            color_grid,
        } => {
            if !grid.primes.contains(modulus) {
                return Ok(cells);
            }
            let jmax = if *color_grid { grid.kmax } else { 0 };
            for (row_idx, row) in rows.iter().enumerate() {
                for j in 0..=jmax {
                    cells.push(CheckCell {
                        family: fam.id,
                        p: *modulus,
                        k: row_idx as u32,
                        j,
                        task: CellTask::Vanish {
                            colors: (1, (row.s_scale * j as u64 + row.s_const) as u32),
                            modulus: *modulus,
                            step: *step,
                            residues: vec![row.residue],
                        },
                    });
                }
            }
        }
        FamilyDef::PerPrime {
            constraint,
            colors,
            rule,
            lift_grid,
        } => {
            for &p in grid.primes.iter().filter(|&&p| constraint.admits(p)) {
                if *constraint == PrimeConstraint::FiveOrElevenMod12 {
                    // For these primes -3 is a non-residue, which the
                    // divisibility argument relies on.
                    assert_eq!(legendre(-3, p)?, -1);
                }
                let residues = rule.admissible(p)?;
                let pairs: Vec<(u32, u32)> = if *lift_grid {
                    kj_grid(grid.kmax).collect()
                } else {
                    vec![(0, 0)]
                };
                for (k, j) in pairs {
                    cells.push(CheckCell {
                        family: fam.id,
                        p,
                        k,
                        j,
                        task: CellTask::Vanish {
                            colors: colors.eval(p, k, j)?,
                            modulus: p,
                            step: p,
                            residues: residues.clone(),
                        },
                    });
                }
            }
        }
        FamilyDef::InternalPair {
            modulus,
            lhs,
            rhs,
            grid: has_grid,
        } => {
            if !grid.primes.contains(modulus) {
                return Ok(cells);
            }
            let pairs: Vec<(u32, u32)> = if *has_grid {
                kj_grid(grid.kmax).collect()
            } else {
                vec![(0, 0)]
            };
            for (k, j) in pairs {
                cells.push(CheckCell {
                    family: fam.id,
                    p: *modulus,
                    k,
                    j,
                    task: CellTask::Compare {
                        lhs_colors: lhs.colors.eval(*modulus, k, j)?,
                        rhs_colors: rhs.colors.eval(*modulus, k, j)?,
                        modulus: *modulus,
                        lhs: (lhs.step, lhs.offset),
                        rhs: (rhs.step, rhs.offset),
                    },
                });
            }
        }
        FamilyDef::Iterated(rule) => {
            if !grid.primes.contains(&3) {
                return Ok(cells);
            }
            let mut alpha = 0;
            loop {
                let (step, residues) = rule.progression(alpha);
                if step as usize > grid.depth {
                    break;
                }
                cells.push(CheckCell {
                    family: fam.id,
                    p: 3,
                    k: alpha,
                    j: 0,
                    task: CellTask::Vanish {
                        colors: rule.colors(),
                        modulus: 3,
                        step,
                        residues,
                    },
                });
                alpha += 1;
            }
        }
    }
    Ok(cells)
}

/// Plan cells for several families at once.
pub fn plan_grid(families: &[&'static TheoremFamily], grid: &GridSpec) -> Result<Vec<CheckCell>> {
    let mut cells = Vec::new();
    for fam in families {
        cells.extend(plan_family(fam, grid)?);
    }
    Ok(cells)
}

/// Run a single cell to the given depth.
pub fn run_cell(cell: &CheckCell, depth: usize) -> Result<CellReport> {
    let timer = Timer::start();
    let (residues, status, witness) = match &cell.task {
        CellTask::Vanish {
            colors,
            modulus,
            step,
            residues,
        } => {
            let reachable: Vec<u64> = residues
                .iter()
                .copied()
                .filter(|&b| b as usize <= depth)
                .collect();
            if reachable.is_empty() {
                (residues.clone(), Status::Skipped, None)
            } else {
                let series = colored_series_mod(*colors, *modulus, depth)?;
                let mut witness = None;
                for &b in &reachable {
                    let check = component_vanishes(&series, *step as usize, b as usize)?;
                    if let Some(w) = check.witness {
                        if witness.is_none() {
                            witness = Some(Witness {
                                residue: Some(b),
                                n: w.n as u64,
                                exponent: w.exponent as u64,
                                value: w.value.to_string(),
                            });
                        }
                    }
                }
                let status = if witness.is_none() {
                    Status::Pass
                } else {
                    Status::Fail
                };
                (residues.clone(), status, witness)
            }
        }
        CellTask::Compare {
            lhs_colors,
            rhs_colors,
            modulus,
            lhs: (step_l, off_l),
            rhs: (step_r, off_r),
        } => {
            let residues = vec![*off_l, *off_r];
            if *off_l as usize > depth || *off_r as usize > depth {
                (residues, Status::Skipped, None)
            } else {
                let left = colored_series_mod(*lhs_colors, *modulus, depth)?;
                let right = colored_series_mod(*rhs_colors, *modulus, depth)?;
                let n_max = ((depth as u64 - off_l) / step_l).min((depth as u64 - off_r) / step_r);
                let mut witness = None;
                for n in 0..=n_max {
                    let el = left.coeff_mod((step_l * n + off_l) as usize)?;
                    let er = right.coeff_mod((step_r * n + off_r) as usize)?;
                    if el != er {
                        witness = Some(Witness {
                            residue: None,
                            n,
                            exponent: step_l * n + off_l,
                            value: format!("{el} != {er}"),
                        });
                        break;
                    }
                }
                let status = if witness.is_none() {
                    Status::Pass
                } else {
                    Status::Fail
                };
                (residues, status, witness)
            }
        }
    };
    Ok(CellReport {
        family: cell.family.to_string(),
        p: cell.p,
        k: cell.k,
        j: cell.j,
        residues,
        status,
        witness,
        ms: timer.ms(),
    })
}

/// Run a batch of cells sequentially and aggregate.
pub fn run_plan(cells: &[CheckCell], depth: usize) -> Result<VerificationReport> {
    let timer = Timer::start();
    let reports: Vec<CellReport> = cells
        .iter()
        .map(|cell| run_cell(cell, depth))
        .collect::<Result<_>>()?;
    Ok(VerificationReport::from_cells(reports, timer.ms()))
}

/// Verify one (p, k, j) cell of a vanishing family.
pub fn verify_family(
    fam: &'static TheoremFamily,
    p: u64,
    k: u32,
    j: u32,
    depth: usize,
) -> Result<VerificationReport> {
    let timer = Timer::start();
    let cell = match &fam.def {
        FamilyDef::LiftedVanishing {
            modulus,
            step,
            residues,
            colors,
        } => {
            if p != *modulus {
                return Err(Error::PrimeConstraint {
                    p,
                    constraint: format!("family is fixed at modulus {modulus}"),
                });
            }
            if depth < *step as usize {
                return Err(Error::DepthTooSmall {
                    min: *step as usize,
                    got: depth,
                });
            }
            CheckCell {
                family: fam.id,
                p,
                k,
                j,
                task: CellTask::Vanish {
                    colors: colors.eval(p, k, j)?,
                    modulus: *modulus,
                    step: *step,
                    residues: residues.to_vec(),
                },
            }
        }
        FamilyDef::PerPrime {
            constraint,
            colors,
            rule,
            lift_grid,
        } => {
            if !constraint.admits(p) {
                return Err(Error::PrimeConstraint {
                    p,
                    constraint: constraint.describe().to_string(),
                });
            }
            if depth < p as usize {
                return Err(Error::DepthTooSmall {
                    min: p as usize,
                    got: depth,
                });
            }
            let (k, j) = if *lift_grid { (k, j) } else { (0, 0) };
            CheckCell {
                family: fam.id,
                p,
                k,
                j,
                task: CellTask::Vanish {
                    colors: colors.eval(p, k, j)?,
                    modulus: p,
                    step: p,
                    residues: rule.admissible(p)?,
                },
            }
        }
        FamilyDef::PriorRows {
            modulus,
            step,
            rows,
            color_grid,
        } => {
            if p != *modulus {
                return Err(Error::PrimeConstraint {
                    p,
                    constraint: format!("family is fixed at modulus {modulus}"),
                });
            }
            let row = rows.get(k as usize).ok_or(Error::ResidueOutOfRange {
                j: k as usize,
                m: rows.len(),
            })?;
            let j = if *color_grid { j } else { 0 };
            CheckCell {
                family: fam.id,
                p,
                k,
                j,
                task: CellTask::Vanish {
                    colors: (1, (row.s_scale * j as u64 + row.s_const) as u32),
                    modulus: *modulus,
                    step: *step,
                    residues: vec![row.residue],
                },
            }
        }
        FamilyDef::InternalPair { .. } | FamilyDef::Iterated(_) => {
            return Err(Error::PrimeConstraint {
                p,
                constraint: format!(
                    "family `{}` is an internal/iterated claim; use its dedicated verifier",
                    fam.id
                ),
            })
        }
    };
    let report = run_cell(&cell, depth)?;
    Ok(VerificationReport::from_cells(vec![report], timer.ms()))
}

/// Verify an internal (subsequence-vs-subsequence) congruence family over
/// its grid, when it has one.
pub fn verify_internal(
    fam: &'static TheoremFamily,
    kmax: u32,
    depth: usize,
) -> Result<VerificationReport> {
    match &fam.def {
        FamilyDef::InternalPair { .. } => {
            let grid = GridSpec {
                depth,
                kmax,
                primes: vec![3],
            };
            let cells = plan_family(fam, &grid)?;
            run_plan(&cells, depth)
        }
        _ => Err(Error::UnknownFamily(format!(
            "{} is not an internal congruence family",
            fam.id
        ))),
    }
}

/// Verify an iterated family for alpha in [0, alpha_max]; iterations whose
/// progression outgrows the depth are reported as skipped, never passed.
pub fn verify_iterated(
    fam: &'static TheoremFamily,
    alpha_max: u32,
    depth: usize,
) -> Result<VerificationReport> {
    let FamilyDef::Iterated(rule) = &fam.def else {
        return Err(Error::UnknownFamily(format!(
            "{} is not an iterated family",
            fam.id
        )));
    };
    let timer = Timer::start();
    let mut reports = Vec::new();
    for alpha in 0..=alpha_max {
        let (step, residues) = rule.progression(alpha);
        let cell = CheckCell {
            family: fam.id,
            p: 3,
            k: alpha,
            j: 0,
            task: CellTask::Vanish {
                colors: rule.colors(),
                modulus: 3,
                step,
                residues,
            },
        };
        if step as usize > depth {
            let mut report = run_cell(&cell, 0)?;
            report.status = Status::Skipped;
            reports.push(report);
        } else {
            reports.push(run_cell(&cell, depth)?);
        }
    }
    Ok(VerificationReport::from_cells(reports, timer.ms()))
}

/// Check f_m^{p^k} = f_{mp}^{p^{k-1}} in the mod-p^k ring through `depth`.
pub fn check_binomial_lemma(m: u64, p: u64, k: u32, depth: usize) -> Result<IdentityCheck> {
    assert!(m >= 1 && k >= 1, "binomial congruence needs m, k >= 1");
    if !is_prime(p) {
        return Err(Error::PrimeConstraint {
            p,
            constraint: "p must be prime".to_string(),
        });
    }
    let modulus = p.pow(k);
    let lhs = EtaQuotient::new([(m, modulus as i64)])?.expand(Ring::Mod(modulus), depth)?;
    let rhs =
        EtaQuotient::new([(m * p, p.pow(k - 1) as i64)])?.expand(Ring::Mod(modulus), depth)?;
    Ok(IdentityCheck::from_mismatch(
        lhs.first_mismatch(&rhs)?,
        depth,
    ))
}

/// Outcome of the reduction/lifting check on a pair of quotients.
#[derive(Clone, Debug)]
pub struct LiftingOutcome {
    pub base: VanishCheck,
    pub lifted: VanishCheck,
}

impl LiftingOutcome {
    pub fn both_vanish(&self) -> bool {
        self.base.vanishes && self.lifted.vanishes
    }
}

/// Exercise the lifting machinery on a concrete pair: `lifted` must differ
/// from `base` by exponent gaps divisible by p^lambda, and then both
/// quotients' (p^lambda n + c) classes are independently checked to vanish
/// mod p — the conclusion is verified, not assumed.
pub fn check_lifting(
    base: &EtaQuotient,
    lifted: &EtaQuotient,
    p: u64,
    lambda: u32,
    c: u64,
    depth: usize,
) -> Result<LiftingOutcome> {
    if !is_prime(p) {
        return Err(Error::PrimeConstraint {
            p,
            constraint: "p must be prime".to_string(),
        });
    }
    let step = p.pow(lambda);
    if c < 1 || c >= step {
        return Err(Error::ShiftOutOfRange { c, max: step - 1 });
    }
    let mut subscripts: Vec<u64> = base.factors().map(|(m, _)| m).collect();
    subscripts.extend(lifted.factors().map(|(m, _)| m));
    subscripts.sort_unstable();
    subscripts.dedup();
    for m in subscripts {
        let eb = base.factors().find(|&(s, _)| s == m).map_or(0, |(_, e)| e);
        let el = lifted
            .factors()
            .find(|&(s, _)| s == m)
            .map_or(0, |(_, e)| e);
        let gap = el - eb;
        if gap.rem_euclid(step as i64) != 0 {
            return Err(Error::LiftingGap {
                subscript: m,
                gap,
                step,
            });
        }
    }
    let base_series = base.expand(Ring::Mod(p), depth)?;
    let lifted_series = lifted.expand(Ring::Mod(p), depth)?;
    Ok(LiftingOutcome {
        base: component_vanishes(&base_series, step as usize, c as usize)?,
        lifted: component_vanishes(&lifted_series, step as usize, c as usize)?,
    })
}

/// A probe of one unclaimed residue class: either the smallest surviving
/// coefficient, or a warning that the class is zero to the scanned depth.
#[derive(Clone, Debug)]
pub struct ControlFinding {
    pub residue: u64,
    pub witness: Option<NonzeroWitness>,
}

impl ControlFinding {
    /// True when the class was identically zero to depth — a warning, since
    /// controls are expected to produce nonzero coefficients.
    pub fn is_silent(&self) -> bool {
        self.witness.is_none()
    }
}

/// Scan arbitrary residue classes of a colored series for surviving
/// coefficients mod `modulus`.
pub fn control_scan(
    colors: (u32, u32),
    modulus: u64,
    step: u64,
    residues: &[u64],
    depth: usize,
) -> Result<Vec<ControlFinding>> {
    let series = colored_series_mod(colors, modulus, depth)?;
    residues
        .iter()
        .map(|&b| {
            let check = component_vanishes(&series, step as usize, b as usize)?;
            Ok(ControlFinding {
                residue: b,
                witness: check.witness,
            })
        })
        .collect()
}

/// Probe every residue class the family does NOT claim at (p, k, j) for a
/// nonzero witness; guards the harness against vacuous passes.
pub fn negative_control(
    fam: &'static TheoremFamily,
    p: u64,
    k: u32,
    j: u32,
    depth: usize,
) -> Result<Vec<ControlFinding>> {
    let single = verify_family(fam, p, k, j, depth)?;
    let cell = &single.cells[0];
    let plan = match &fam.def {
        FamilyDef::LiftedVanishing {
            modulus,
            step,
            colors,
            ..
        } => Some((colors.eval(p, k, j)?, *modulus, *step)),
        FamilyDef::PerPrime { colors, .. } => Some((colors.eval(p, k, j)?, p, p)),
        FamilyDef::PriorRows {
            modulus,
            step,
            rows,
            color_grid,
        } => {
            let row = &rows[k as usize];
            let jj = if *color_grid { j as u64 } else { 0 };
            let colors = (1u32, (row.s_scale * jj + row.s_const) as u32);
            Some((colors, *modulus, *step))
        }
        _ => None,
    };
    let Some((colors, modulus, step)) = plan else {
        return Err(Error::UnknownFamily(format!(
            "{} has no vanishing progression to control",
            fam.id
        )));
    };
    let unclaimed: Vec<u64> = (0..step).filter(|b| !cell.residues.contains(b)).collect();
    control_scan(colors, modulus, step, &unclaimed, depth)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn primality_basics() {
        let primes: Vec<u64> = (0..30).filter(|&n| is_prime(n)).collect();
        assert_eq!(primes, vec![2, 3, 5, 7, 11, 13, 17, 19, 23, 29]);
    }

    #[test]
    fn legendre_small_cases() {
        assert_eq!(legendre(1, 5).unwrap(), 1);
        assert_eq!(legendre(2, 5).unwrap(), -1);
        assert_eq!(legendre(10, 5).unwrap(), 0);
        assert!(legendre(3, 4).is_err());
        assert!(legendre(3, 1).is_err());
    }

    #[test]
    fn legendre_is_multiplicative() {
        for p in [3u64, 5, 7, 11, 13, 17, 19, 23] {
            for a in 1..(p as i64) {
                for b in 1..(p as i64) {
                    let ab = legendre(a * b, p).unwrap();
                    let prod = legendre(a, p).unwrap() * legendre(b, p).unwrap();
                    assert_eq!(ab, prod, "p={p} a={a} b={b}");
                }
            }
        }
    }

    #[test]
    fn minus_three_is_nonresidue_for_5_11_mod_12() {
        for p in (5..500).filter(|&p| is_prime(p) && (p % 12 == 5 || p % 12 == 11)) {
            assert_eq!(legendre(-3, p).unwrap(), -1, "p={p}");
        }
    }

    #[test]
    fn divisible_mode_returns_unique_residue() {
        let fam = family("t1.13").unwrap();
        assert_eq!(admissible_residues(fam, 5).unwrap(), vec![3]);
        assert_eq!(admissible_residues(fam, 11).unwrap(), vec![7]);
        assert!(admissible_residues(fam, 7).is_err());
    }

    #[test]
    fn raw_nonresidue_mode_counts_half() {
        let fam = family("t1.16").unwrap();
        assert_eq!(admissible_residues(fam, 5).unwrap(), vec![2, 3]);
        for p in [5u64, 7, 11, 13] {
            let rs = admissible_residues(fam, p).unwrap();
            assert_eq!(rs.len() as u64, (p - 1) / 2, "p={p}");
        }
    }

    #[test]
    fn qnr_mode_excludes_divisible_points() {
        // 8r+1 mod 3: r=1 gives 0 (excluded), r=2 gives 2 (a non-residue)
        let fam = family("t1.19").unwrap();
        assert_eq!(admissible_residues(fam, 3).unwrap(), vec![2]);
    }

    #[test]
    fn registry_has_all_required_ids() {
        for id in [
            "t1.1", "t1.2", "t1.3", "t1.4", "t1.6", "t1.8", "t1.9", "t1.10", "t1.11", "t1.12",
            "t1.13", "t1.15", "t1.15b", "t1.16", "t1.18", "t1.19", "t1.20", "e1.5", "e1.6",
            "c3.2", "c4.1", "c4.2",
        ] {
            assert!(family(id).is_ok(), "missing {id}");
        }
        assert!(family("t1.7").is_err());
    }

    #[test]
    fn t1_6_first_cell_passes_at_moderate_depth() {
        let fam = family("t1.6").unwrap();
        let report = verify_family(fam, 3, 1, 0, 600).unwrap();
        assert!(report.all_passed());
        assert_eq!(report.cells[0].residues, vec![1, 2]);
    }

    #[test]
    fn t1_10_base_cell_passes() {
        let fam = family("t1.10").unwrap();
        let report = verify_family(fam, 3, 0, 0, 600).unwrap();
        assert!(report.all_passed());
    }

    #[test]
    fn t1_18_all_admissible_residues_pass_at_p5() {
        let fam = family("t1.18").unwrap();
        let report = verify_family(fam, 5, 0, 0, 600).unwrap();
        assert!(report.all_passed());
    }

    #[test]
    fn t1_13_at_p5_reproduces_the_mod5_congruence() {
        // The unique residue is 3, so the checked progression is 5n+3 on
        // colors (1, 5) — exactly the fixed mod-5 row.
        let fam = family("t1.13").unwrap();
        let report = verify_family(fam, 5, 0, 0, 400).unwrap();
        assert!(report.all_passed());
        assert_eq!(report.cells[0].residues, vec![3]);
        let fixed = family("t1.3").unwrap();
        let fixed_report = verify_family(fixed, 5, 0, 0, 400).unwrap();
        assert!(fixed_report.all_passed());
        assert_eq!(fixed_report.cells[0].residues, vec![3]);
    }

    #[test]
    fn internal_congruence_small_run() {
        let fam = family("e1.5").unwrap();
        let report = verify_internal(fam, 0, 400).unwrap();
        assert!(report.all_passed());
    }

    #[test]
    fn iterated_overflow_is_skipped_not_passed() {
        let fam = family("t1.2").unwrap();
        let report = verify_iterated(fam, 3, 400).unwrap();
        // alpha = 0 runs (27n+19); alpha >= 1 outgrows depth 400
        assert_eq!(report.cells.len(), 4);
        assert_eq!(report.cells[0].status, Status::Pass);
        for cell in &report.cells[1..] {
            assert_eq!(cell.status, Status::Skipped);
        }
    }

    #[test]
    fn binomial_congruence_examples() {
        assert!(check_binomial_lemma(1, 3, 1, 300).unwrap().ok);
        assert!(check_binomial_lemma(2, 3, 2, 300).unwrap().ok);
        assert!(check_binomial_lemma(1, 2, 1, 300).unwrap().ok);
        // f_1^3 = f_3 holds mod 3 but certainly not mod 9
        let weaker = {
            let lhs = EtaQuotient::new([(1, 3)])
                .unwrap()
                .expand(Ring::Mod(9), 50)
                .unwrap();
            let rhs = EtaQuotient::new([(3, 1)])
                .unwrap()
                .expand(Ring::Mod(9), 50)
                .unwrap();
            lhs.first_mismatch(&rhs).unwrap()
        };
        assert!(weaker.is_some());
    }

    #[test]
    fn lifting_gap_precondition_is_enforced() {
        let base = EtaQuotient::colored_partitions(3, 6);
        let bad = EtaQuotient::colored_partitions(4, 7);
        let err = check_lifting(&base, &bad, 3, 1, 1, 100).unwrap_err();
        assert!(matches!(err, Error::LiftingGap { .. }));
        assert!(matches!(
            check_lifting(&base, &base, 3, 1, 3, 100),
            Err(Error::ShiftOutOfRange { .. })
        ));
    }

    #[test]
    fn lifting_worked_instance() {
        let base = EtaQuotient::colored_partitions(3, 6);
        let lifted = EtaQuotient::colored_partitions(6, 9);
        let outcome = check_lifting(&base, &lifted, 3, 1, 1, 300).unwrap();
        assert!(outcome.both_vanish());
    }

    #[test]
    fn negative_control_finds_survivors() {
        let fam = family("t1.6").unwrap();
        let findings = negative_control(fam, 3, 0, 0, 200).unwrap();
        assert_eq!(findings.len(), 1); // only class 0 is unclaimed
        let f = &findings[0];
        assert_eq!(f.residue, 0);
        let w = f.witness.as_ref().expect("class 3n should survive");
        assert_eq!(w.n, 0);
        assert_eq!(w.exponent, 0);
    }

    #[test]
    fn control_scan_sees_e1_5_survivor() {
        // The 27n+10 class of a_{1,5} mod 3 is congruent to a_{1,5}(3n+1),
        // not zero; the control must find a witness.
        let findings = control_scan((1, 5), 3, 27, &[10], 400).unwrap();
        assert!(!findings[0].is_silent());
    }
}
