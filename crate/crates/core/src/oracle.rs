//! Brute-force counts of colored partitions.
//!
//! This module is the ground truth the generating-function pipeline is tested
//! against. It deliberately shares no code with the series engine: counts come
//! from a stars-and-bars recurrence over part sizes, with binomials from the
//! Pascal triangle in arbitrary precision.

use num_bigint::BigUint;
use num_traits::{One, Zero};

use crate::error::{Error, Result};

/// Number of colors available to even and odd part sizes.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct ColorProfile {
    even: u32,
    odd: u32,
}

impl ColorProfile {
    pub fn new(even_colors: u32, odd_colors: u32) -> Result<Self> {
        if even_colors < 1 || odd_colors < 1 {
            return Err(Error::ColorsOutOfRange {
                r: even_colors as i64,
                s: odd_colors as i64,
            });
        }
        Ok(ColorProfile {
            even: even_colors,
            odd: odd_colors,
        })
    }

    pub fn even_colors(&self) -> u32 {
        self.even
    }

    pub fn odd_colors(&self) -> u32 {
        self.odd
    }

    fn colors_for(&self, part: usize) -> u32 {
        if part % 2 == 0 {
            self.even
        } else {
            self.odd
        }
    }
}

/// Pascal triangle of binomial coefficients C(n, k) for n <= rows.
fn pascal(rows: usize) -> Vec<Vec<BigUint>> {
    let mut table = Vec::with_capacity(rows + 1);
    table.push(vec![BigUint::one()]);
    for n in 1..=rows {
        let prev: &Vec<BigUint> = &table[n - 1];
        let mut row = Vec::with_capacity(n + 1);
        row.push(BigUint::one());
        for k in 1..n {
            row.push(&prev[k - 1] + &prev[k]);
        }
        row.push(BigUint::one());
        table.push(row);
    }
    table
}

/// Counts of colored partitions of 0..=n_max: part t may take any of the
/// profile's colors for its parity, and a multiset of k equal parts in c
/// colors contributes C(k + c - 1, c - 1) choices.
pub fn count_colored_table(n_max: usize, profile: ColorProfile) -> Vec<BigUint> {
    let cmax = profile.even.max(profile.odd) as usize;
    let binom = pascal(n_max + cmax);
    let mut table = vec![BigUint::zero(); n_max + 1];
    table[0] = BigUint::one();
    for part in 1..=n_max {
        let c = profile.colors_for(part) as usize;
        let mut next = vec![BigUint::zero(); n_max + 1];
        for total in 0..=n_max {
            for k in 0..=total / part {
                let ways = &binom[k + c - 1][c - 1];
                next[total] += ways * &table[total - k * part];
            }
        }
        table = next;
    }
    table
}

/// Number of partitions of n with `even_colors` colors on even parts and
/// `odd_colors` colors on odd parts; n = 0 counts as 1 for every profile.
pub fn count_colored(n: usize, profile: ColorProfile) -> BigUint {
    count_colored_table(n, profile).pop().expect("nonempty table")
}

/// Unrestricted partition counts p(0)..p(n_max) by the bounded-part
/// recurrence (every color count 1).
pub fn count_unrestricted_table(n_max: usize) -> Vec<BigUint> {
    let mut table = vec![BigUint::zero(); n_max + 1];
    table[0] = BigUint::one();
    for part in 1..=n_max {
        for total in part..=n_max {
            let add = table[total - part].clone();
            table[total] += add;
        }
    }
    table
}

pub fn count_unrestricted(n: usize) -> BigUint {
    count_unrestricted_table(n).pop().expect("nonempty table")
}

/// Overpartition counts: the first occurrence of each part size may be
/// overlined, so a part size used k >= 1 times contributes a factor 2.
pub fn count_overpartitions_table(n_max: usize) -> Vec<BigUint> {
    let mut table = vec![BigUint::zero(); n_max + 1];
    table[0] = BigUint::one();
    for part in 1..=n_max {
        let mut next = table.clone();
        for total in part..=n_max {
            for k in 1..=total / part {
                next[total] += &table[total - k * part] * 2u32;
            }
        }
        table = next;
    }
    table
}

pub fn count_overpartitions(n: usize) -> BigUint {
    count_overpartitions_table(n).pop().expect("nonempty table")
}

#[cfg(test)]
mod tests {
    use super::*;

    fn big(x: u64) -> BigUint {
        BigUint::from(x)
    }

    #[test]
    fn zero_counts_as_one_for_every_profile() {
        for (r, s) in [(1, 1), (2, 4), (7, 3), (31, 59)] {
            let profile = ColorProfile::new(r, s).unwrap();
            assert_eq!(count_colored(0, profile), big(1));
        }
    }

    #[test]
    fn profile_requires_positive_colors() {
        assert!(ColorProfile::new(0, 3).is_err());
        assert!(ColorProfile::new(3, 0).is_err());
    }

    #[test]
    fn two_four_profile_at_two() {
        // part 2 in 2 colors: 2 ways; 1+1 as a 2-multiset of 4 colors: 10 ways
        let profile = ColorProfile::new(2, 4).unwrap();
        assert_eq!(count_colored(2, profile), big(12));
    }

    #[test]
    fn one_five_profile_at_three() {
        // 3 (5 ways) + 2+1 (5 ways) + 1+1+1 (C(7,3) = 35 ways) = 45
        let profile = ColorProfile::new(1, 5).unwrap();
        let count = count_colored(3, profile);
        assert_eq!(count, big(45));
        assert_eq!(&count % 5u32, BigUint::zero());
    }

    #[test]
    fn unrestricted_matches_hand_enumeration() {
        assert_eq!(count_unrestricted(0), big(1));
        // {4, 3+1, 2+2, 2+1+1, 1+1+1+1}
        assert_eq!(count_unrestricted(4), big(5));
        assert_eq!(count_unrestricted(9), big(30));
    }

    #[test]
    fn single_color_profile_agrees_with_unrestricted() {
        let profile = ColorProfile::new(1, 1).unwrap();
        let colored = count_colored_table(100, profile);
        let plain = count_unrestricted_table(100);
        assert_eq!(colored, plain);
    }

    #[test]
    fn extra_even_colors_never_decrease_counts() {
        for n in 2..=40 {
            for r in 1..=3 {
                for s in 1..=3 {
                    let lo = count_colored(n, ColorProfile::new(r, s).unwrap());
                    let hi = count_colored(n, ColorProfile::new(r + 1, s).unwrap());
                    assert!(hi >= lo, "n={n} r={r} s={s}");
                }
            }
        }
    }

    #[test]
    fn overpartitions_small_values() {
        assert_eq!(count_overpartitions(0), big(1));
        // 2, 2-overlined, 1+1, 1-overlined+1
        assert_eq!(count_overpartitions(2), big(4));
        assert_eq!(count_overpartitions(4), big(14));
        let table = count_overpartitions_table(8);
        assert_eq!(
            table,
            [1u64, 2, 4, 8, 14, 24, 40, 64, 100].map(big).to_vec()
        );
    }
}
