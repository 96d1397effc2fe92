//! Truncated formal power series over exact integers or integers mod m.
//!
//! A [`Series`] stores the coefficients of q^0 .. q^T for a truncation order
//! T; everything above q^T is unknown, and reading past T is an error rather
//! than an implicit zero. Binary operations require identical ring tags and
//! truncate the result to the shorter operand.

use std::collections::BTreeMap;
use std::fmt;

use num_bigint::BigInt;
use num_traits::{Signed, ToPrimitive, Zero};

use crate::error::{Error, Result};

/// Coefficient ring tag.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Ring {
    /// Arbitrary-precision integers.
    Exact,
    /// Integers modulo m (m >= 2), stored as canonical residues in [0, m).
    Mod(u64),
}

impl Ring {
    pub(crate) fn validate(self) -> Result<()> {
        match self {
            Ring::Mod(m) if m < 2 => Err(Error::ModulusTooSmall(m)),
            _ => Ok(()),
        }
    }
}

impl fmt::Display for Ring {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Ring::Exact => write!(f, "Z"),
            Ring::Mod(m) => write!(f, "Z/{m}"),
        }
    }
}

/// A single coefficient, tagged by the ring it came from.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Coefficient {
    Exact(BigInt),
    Mod(u64),
}

impl Coefficient {
    pub fn is_zero(&self) -> bool {
        match self {
            Coefficient::Exact(x) => x.is_zero(),
            Coefficient::Mod(x) => *x == 0,
        }
    }

    /// The coefficient as a signed big integer (residues come back in [0, m)).
    pub fn to_bigint(&self) -> BigInt {
        match self {
            Coefficient::Exact(x) => x.clone(),
            Coefficient::Mod(x) => BigInt::from(*x),
        }
    }
}

impl fmt::Display for Coefficient {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Coefficient::Exact(x) => write!(f, "{x}"),
            Coefficient::Mod(x) => write!(f, "{x}"),
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
enum CoeffData {
    Exact(Vec<BigInt>),
    Mod(Vec<u64>),
}

/// Truncated formal power series with an explicit coefficient ring.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Series {
    ring: Ring,
    trunc: usize,
    data: CoeffData,
}

fn mod_of(ring: Ring) -> u64 {
    match ring {
        Ring::Mod(m) => m,
        Ring::Exact => unreachable!("mod_of called on exact ring"),
    }
}

fn reduce_bigint(x: &BigInt, m: u64) -> u64 {
    let m_big = BigInt::from(m);
    let mut r = x % &m_big;
    if r.is_negative() {
        r += &m_big;
    }
    r.to_u64().expect("residue fits in u64")
}

fn reduce_i64(x: i64, m: u64) -> u64 {
    let r = (x as i128).rem_euclid(m as i128);
    r as u64
}

fn mul_mod(a: u64, b: u64, m: u64) -> u64 {
    ((a as u128 * b as u128) % m as u128) as u64
}

fn add_mod(a: u64, b: u64, m: u64) -> u64 {
    ((a as u128 + b as u128) % m as u128) as u64
}

fn sub_mod(a: u64, b: u64, m: u64) -> u64 {
    ((a as u128 + m as u128 - b as u128) % m as u128) as u64
}

/// Modular inverse by extended Euclid; `None` when gcd(a, m) != 1.
pub(crate) fn inv_mod(a: u64, m: u64) -> Option<u64> {
    let (mut old_r, mut r) = (a as i128, m as i128);
    let (mut old_s, mut s) = (1i128, 0i128);
    while r != 0 {
        let q = old_r / r;
        (old_r, r) = (r, old_r - q * r);
        (old_s, s) = (s, old_s - q * s);
    }
    if old_r != 1 {
        return None;
    }
    Some(old_s.rem_euclid(m as i128) as u64)
}

impl Series {
    /// Build a series from explicit coefficients. Mod-m input is reduced to
    /// canonical residues; the length must be exactly `trunc + 1`.
    pub fn new(ring: Ring, trunc: usize, coeffs: Vec<BigInt>) -> Result<Self> {
        ring.validate()?;
        if coeffs.len() != trunc + 1 {
            return Err(Error::CoeffLength {
                trunc,
                expected: trunc + 1,
                got: coeffs.len(),
            });
        }
        let data = match ring {
            Ring::Exact => CoeffData::Exact(coeffs),
            Ring::Mod(m) => CoeffData::Mod(coeffs.iter().map(|x| reduce_bigint(x, m)).collect()),
        };
        Ok(Series { ring, trunc, data })
    }

    /// Convenience constructor from machine integers.
    pub fn from_i64(ring: Ring, trunc: usize, coeffs: &[i64]) -> Result<Self> {
        Self::new(ring, trunc, coeffs.iter().map(|&x| BigInt::from(x)).collect())
    }

    pub fn zero(ring: Ring, trunc: usize) -> Result<Self> {
        ring.validate()?;
        let data = match ring {
            Ring::Exact => CoeffData::Exact(vec![BigInt::zero(); trunc + 1]),
            Ring::Mod(_) => CoeffData::Mod(vec![0; trunc + 1]),
        };
        Ok(Series { ring, trunc, data })
    }

    pub fn one(ring: Ring, trunc: usize) -> Result<Self> {
        let mut s = Self::zero(ring, trunc)?;
        s.add_term(0, 1);
        Ok(s)
    }

    pub fn ring(&self) -> Ring {
        self.ring
    }

    /// Truncation order T: coefficients of q^0 .. q^T are known.
    pub fn trunc(&self) -> usize {
        self.trunc
    }

    /// The stored coefficient of q^n. Reading past the truncation order is an
    /// error: the caller must recompute at higher depth, never assume zero.
    pub fn coeff(&self, n: usize) -> Result<Coefficient> {
        if n > self.trunc {
            return Err(Error::BeyondTruncation {
                n,
                trunc: self.trunc,
            });
        }
        Ok(match &self.data {
            CoeffData::Exact(v) => Coefficient::Exact(v[n].clone()),
            CoeffData::Mod(v) => Coefficient::Mod(v[n]),
        })
    }

    /// Residue coefficient access; the series must live in a mod-m ring.
    pub fn coeff_mod(&self, n: usize) -> Result<u64> {
        let Ring::Mod(m) = self.ring else {
            return Err(Error::RingMismatch(self.ring, Ring::Mod(2)));
        };
        let _ = m;
        match self.coeff(n)? {
            Coefficient::Mod(x) => Ok(x),
            Coefficient::Exact(_) => unreachable!("ring tag and data variant agree"),
        }
    }

    pub fn is_zero(&self) -> bool {
        match &self.data {
            CoeffData::Exact(v) => v.iter().all(Zero::is_zero),
            CoeffData::Mod(v) => v.iter().all(|&x| x == 0),
        }
    }

    /// Index and value of the first nonzero coefficient, if any.
    pub fn leading_nonzero(&self) -> Option<(usize, Coefficient)> {
        match &self.data {
            CoeffData::Exact(v) => v
                .iter()
                .position(|x| !x.is_zero())
                .map(|n| (n, Coefficient::Exact(v[n].clone()))),
            CoeffData::Mod(v) => v
                .iter()
                .position(|&x| x != 0)
                .map(|n| (n, Coefficient::Mod(v[n]))),
        }
    }

    fn same_ring(&self, other: &Series) -> Result<Ring> {
        if self.ring != other.ring {
            return Err(Error::RingMismatch(self.ring, other.ring));
        }
        Ok(self.ring)
    }

    /// In-place `self[n] += c` for small integer contributions (sparse-sum
    /// generators). `n` must be within truncation.
    pub(crate) fn add_term(&mut self, n: usize, c: i64) {
        debug_assert!(n <= self.trunc);
        match &mut self.data {
            CoeffData::Exact(v) => v[n] += c,
            CoeffData::Mod(v) => {
                let m = mod_of(self.ring);
                v[n] = add_mod(v[n], reduce_i64(c, m), m);
            }
        }
    }

    pub fn add(&self, other: &Series) -> Result<Series> {
        let ring = self.same_ring(other)?;
        let trunc = self.trunc.min(other.trunc);
        let data = match (&self.data, &other.data) {
            (CoeffData::Exact(a), CoeffData::Exact(b)) => {
                CoeffData::Exact((0..=trunc).map(|i| &a[i] + &b[i]).collect())
            }
            (CoeffData::Mod(a), CoeffData::Mod(b)) => {
                let m = mod_of(ring);
                CoeffData::Mod((0..=trunc).map(|i| add_mod(a[i], b[i], m)).collect())
            }
            _ => unreachable!("ring tag and data variant agree"),
        };
        Ok(Series { ring, trunc, data })
    }

    pub fn sub(&self, other: &Series) -> Result<Series> {
        let ring = self.same_ring(other)?;
        let trunc = self.trunc.min(other.trunc);
        let data = match (&self.data, &other.data) {
            (CoeffData::Exact(a), CoeffData::Exact(b)) => {
                CoeffData::Exact((0..=trunc).map(|i| &a[i] - &b[i]).collect())
            }
            (CoeffData::Mod(a), CoeffData::Mod(b)) => {
                let m = mod_of(ring);
                CoeffData::Mod((0..=trunc).map(|i| sub_mod(a[i], b[i], m)).collect())
            }
            _ => unreachable!("ring tag and data variant agree"),
        };
        Ok(Series { ring, trunc, data })
    }

    pub fn negate(&self) -> Series {
        let data = match &self.data {
            CoeffData::Exact(v) => CoeffData::Exact(v.iter().map(|x| -x).collect()),
            CoeffData::Mod(v) => {
                let m = mod_of(self.ring);
                CoeffData::Mod(v.iter().map(|&x| sub_mod(0, x, m)).collect())
            }
        };
        Series {
            ring: self.ring,
            trunc: self.trunc,
            data,
        }
    }

    /// Multiply by an integer scalar.
    pub fn scale(&self, c: i64) -> Series {
        let data = match &self.data {
            CoeffData::Exact(v) => CoeffData::Exact(v.iter().map(|x| x * c).collect()),
            CoeffData::Mod(v) => {
                let m = mod_of(self.ring);
                let c = reduce_i64(c, m);
                CoeffData::Mod(v.iter().map(|&x| mul_mod(x, c, m)).collect())
            }
        };
        Series {
            ring: self.ring,
            trunc: self.trunc,
            data,
        }
    }

    /// Cauchy product truncated to the shorter operand.
    pub fn mul(&self, other: &Series) -> Result<Series> {
        let ring = self.same_ring(other)?;
        let trunc = self.trunc.min(other.trunc);
        match (&self.data, &other.data) {
            (CoeffData::Exact(a), CoeffData::Exact(b)) => {
                let mut c = vec![BigInt::zero(); trunc + 1];
                for (i, ai) in a.iter().enumerate().take(trunc + 1) {
                    if ai.is_zero() {
                        continue;
                    }
                    for (j, bj) in b.iter().enumerate().take(trunc + 1 - i) {
                        if bj.is_zero() {
                            continue;
                        }
                        c[i + j] += ai * bj;
                    }
                }
                Ok(Series {
                    ring,
                    trunc,
                    data: CoeffData::Exact(c),
                })
            }
            (CoeffData::Mod(a), CoeffData::Mod(b)) => {
                let m = mod_of(ring) as u128;
                let mut c = vec![0u64; trunc + 1];
                for (i, &ai) in a.iter().enumerate().take(trunc + 1) {
                    if ai == 0 {
                        continue;
                    }
                    for (j, &bj) in b.iter().enumerate().take(trunc + 1 - i) {
                        if bj == 0 {
                            continue;
                        }
                        let k = i + j;
                        c[k] = ((c[k] as u128 + ai as u128 * bj as u128) % m) as u64;
                    }
                }
                Ok(Series {
                    ring,
                    trunc,
                    data: CoeffData::Mod(c),
                })
            }
            _ => unreachable!("ring tag and data variant agree"),
        }
    }

    /// Multiplicative inverse by the standard coefficient recurrence.
    /// The constant term must be a unit: +-1 over the integers, coprime to m
    /// in the mod-m ring.
    pub fn invert(&self) -> Result<Series> {
        let trunc = self.trunc;
        match &self.data {
            CoeffData::Exact(a) => {
                let a0 = &a[0];
                if a0.magnitude().to_u64() != Some(1) {
                    return Err(Error::NonUnitConstant(self.ring));
                }
                let mut b = vec![BigInt::zero(); trunc + 1];
                b[0] = a0.clone(); // 1/(+-1) = +-1
                for n in 1..=trunc {
                    let mut acc = BigInt::zero();
                    for (k, ak) in a.iter().enumerate().take(n + 1).skip(1) {
                        if ak.is_zero() {
                            continue;
                        }
                        acc += ak * &b[n - k];
                    }
                    b[n] = -(a0 * acc);
                }
                Ok(Series {
                    ring: self.ring,
                    trunc,
                    data: CoeffData::Exact(b),
                })
            }
            CoeffData::Mod(a) => {
                let m = mod_of(self.ring);
                let inv0 = inv_mod(a[0], m).ok_or(Error::NonUnitConstant(self.ring))?;
                let mut b = vec![0u64; trunc + 1];
                b[0] = inv0;
                for n in 1..=trunc {
                    let mut acc: u64 = 0;
                    for (k, &ak) in a.iter().enumerate().take(n + 1).skip(1) {
                        if ak == 0 {
                            continue;
                        }
                        acc = add_mod(acc, mul_mod(ak, b[n - k], m), m);
                    }
                    b[n] = mul_mod(sub_mod(0, acc, m), inv0, m);
                }
                Ok(Series {
                    ring: self.ring,
                    trunc,
                    data: CoeffData::Mod(b),
                })
            }
        }
    }

    /// Integer power by binary exponentiation; negative exponents invert
    /// first, so they carry the unit-constant requirement of [`Series::invert`].
    pub fn pow(&self, e: i64) -> Result<Series> {
        if e == 0 {
            return Series::one(self.ring, self.trunc);
        }
        let base = if e < 0 { self.invert()? } else { self.clone() };
        let mut exp = e.unsigned_abs();
        let mut acc = Series::one(self.ring, self.trunc)?;
        let mut sq = base;
        while exp > 0 {
            if exp & 1 == 1 {
                acc = acc.mul(&sq)?;
            }
            exp >>= 1;
            if exp > 0 {
                sq = sq.mul(&sq)?;
            }
        }
        Ok(acc)
    }

    /// Map q to q^m: coefficient n moves to position m*n, the rest are zero.
    /// The result is known through q^{trunc * m}.
    pub fn substitute_qm(&self, m: usize) -> Series {
        assert!(m >= 1, "substitution exponent must be positive");
        let trunc = self.trunc * m;
        let data = match &self.data {
            CoeffData::Exact(v) => {
                let mut out = vec![BigInt::zero(); trunc + 1];
                for (n, x) in v.iter().enumerate() {
                    out[n * m] = x.clone();
                }
                CoeffData::Exact(out)
            }
            CoeffData::Mod(v) => {
                let mut out = vec![0u64; trunc + 1];
                for (n, &x) in v.iter().enumerate() {
                    out[n * m] = x;
                }
                CoeffData::Mod(out)
            }
        };
        Series {
            ring: self.ring,
            trunc,
            data,
        }
    }

    /// Reduce an exact series into the mod-m ring.
    pub fn reduce_mod(&self, m: u64) -> Result<Series> {
        Ring::Mod(m).validate()?;
        match &self.data {
            CoeffData::Exact(v) => Ok(Series {
                ring: Ring::Mod(m),
                trunc: self.trunc,
                data: CoeffData::Mod(v.iter().map(|x| reduce_bigint(x, m)).collect()),
            }),
            CoeffData::Mod(_) => Err(Error::RingMismatch(self.ring, Ring::Exact)),
        }
    }

    /// Restrict to a smaller truncation order (no-op when t >= trunc).
    pub fn truncated(&self, t: usize) -> Series {
        if t >= self.trunc {
            return self.clone();
        }
        let data = match &self.data {
            CoeffData::Exact(v) => CoeffData::Exact(v[..=t].to_vec()),
            CoeffData::Mod(v) => CoeffData::Mod(v[..=t].to_vec()),
        };
        Series {
            ring: self.ring,
            trunc: t,
            data,
        }
    }

    /// Multiply by q^sh without losing knowledge: the result is known
    /// through q^{trunc + sh}.
    pub fn shift_up(&self, sh: usize) -> Series {
        let trunc = self.trunc + sh;
        let data = match &self.data {
            CoeffData::Exact(v) => {
                let mut out = vec![BigInt::zero(); trunc + 1];
                out[sh..].clone_from_slice(v);
                CoeffData::Exact(out)
            }
            CoeffData::Mod(v) => {
                let mut out = vec![0u64; trunc + 1];
                out[sh..].copy_from_slice(v);
                CoeffData::Mod(out)
            }
        };
        Series {
            ring: self.ring,
            trunc,
            data,
        }
    }

    /// In-place multiplication by (1 - q^n), the building block of literal
    /// product expansions.
    pub(crate) fn mul_one_minus_qn(&mut self, n: usize) {
        if n == 0 || n > self.trunc {
            return;
        }
        match &mut self.data {
            CoeffData::Exact(v) => {
                for i in (n..v.len()).rev() {
                    let low = v[i - n].clone();
                    v[i] -= low;
                }
            }
            CoeffData::Mod(v) => {
                let m = mod_of(self.ring);
                for i in (n..v.len()).rev() {
                    v[i] = sub_mod(v[i], v[i - n], m);
                }
            }
        }
    }

    /// First index (through the shorter truncation) where the two series
    /// differ, or `None` if they agree.
    pub fn first_mismatch(&self, other: &Series) -> Result<Option<usize>> {
        self.same_ring(other)?;
        let trunc = self.trunc.min(other.trunc);
        match (&self.data, &other.data) {
            (CoeffData::Exact(a), CoeffData::Exact(b)) => {
                Ok((0..=trunc).find(|&i| a[i] != b[i]))
            }
            (CoeffData::Mod(a), CoeffData::Mod(b)) => Ok((0..=trunc).find(|&i| a[i] != b[i])),
            _ => unreachable!("ring tag and data variant agree"),
        }
    }

    /// Iterate the stored coefficients as big integers (residues canonical).
    pub fn iter_bigint(&self) -> impl Iterator<Item = BigInt> + '_ {
        (0..=self.trunc).map(move |n| match &self.data {
            CoeffData::Exact(v) => v[n].clone(),
            CoeffData::Mod(v) => BigInt::from(v[n]),
        })
    }
}

/// The series of f_1 = prod (1 - q^n) as the sparse pentagonal-number sum,
/// summing every index whose exponent lies within the truncation.
pub(crate) fn pentagonal_series(ring: Ring, trunc: usize) -> Result<Series> {
    let mut s = Series::zero(ring, trunc)?;
    let mut k: i64 = 0;
    loop {
        // exponents k(3k-1)/2 for k and -k
        let pos = (k * (3 * k - 1) / 2) as usize;
        let neg = (k * (3 * k + 1) / 2) as usize;
        if pos > trunc && neg > trunc && k > 0 {
            break;
        }
        let sign = if k % 2 == 0 { 1 } else { -1 };
        if pos <= trunc {
            s.add_term(pos, sign);
        }
        if k > 0 && neg <= trunc {
            s.add_term(neg, sign);
        }
        k += 1;
    }
    Ok(s)
}

/// A finite product prod_m f_m^{e_m} with f_m = (q^m; q^m)_infinity.
///
/// Subscripts are positive, exponents nonzero; composing two quotients adds
/// exponents and drops canceled subscripts.
#[derive(Clone, Debug, PartialEq, Eq, Default)]
pub struct EtaQuotient {
    factors: BTreeMap<u64, i64>,
}

impl EtaQuotient {
    /// The empty product (constant 1).
    pub fn one() -> Self {
        Self::default()
    }

    /// Build from (subscript, exponent) pairs. Duplicate subscripts are
    /// summed; an explicit zero exponent or zero subscript is rejected.
    pub fn new(factors: impl IntoIterator<Item = (u64, i64)>) -> Result<Self> {
        let mut map = BTreeMap::new();
        for (m, e) in factors {
            if m == 0 {
                return Err(Error::ZeroSubscript);
            }
            if e == 0 {
                return Err(Error::ZeroExponent);
            }
            *map.entry(m).or_insert(0) += e;
        }
        map.retain(|_, e| *e != 0);
        Ok(EtaQuotient { factors: map })
    }

    /// The generating quotient f_2^{s-r} / f_1^s for partitions with r-colored
    /// even parts and s-colored odd parts.
    pub fn colored_partitions(r: u32, s: u32) -> Self {
        let mut factors = BTreeMap::new();
        factors.insert(1, -(s as i64));
        let e2 = s as i64 - r as i64;
        if e2 != 0 {
            factors.insert(2, e2);
        }
        EtaQuotient { factors }
    }

    pub fn compose(&self, other: &EtaQuotient) -> EtaQuotient {
        let mut map = self.factors.clone();
        for (&m, &e) in &other.factors {
            *map.entry(m).or_insert(0) += e;
        }
        map.retain(|_, e| *e != 0);
        EtaQuotient { factors: map }
    }

    /// Multiply every subscript by `scale` (the substitution q -> q^scale).
    pub fn scaled(&self, scale: u64) -> EtaQuotient {
        EtaQuotient {
            factors: self.factors.iter().map(|(&m, &e)| (m * scale, e)).collect(),
        }
    }

    pub fn factors(&self) -> impl Iterator<Item = (u64, i64)> + '_ {
        self.factors.iter().map(|(&m, &e)| (m, e))
    }

    pub fn is_one(&self) -> bool {
        self.factors.is_empty()
    }

    /// Expand the quotient as a series: each base f_m comes from the
    /// pentagonal sum followed by q -> q^m, then integer powering. Negative
    /// exponents invert the positive expansion (f_m has constant term 1).
    pub fn expand(&self, ring: Ring, trunc: usize) -> Result<Series> {
        ring.validate()?;
        let mut acc = Series::one(ring, trunc)?;
        for (&m, &e) in &self.factors {
            let sub = trunc.div_ceil(m as usize);
            let base = pentagonal_series(ring, sub)?
                .substitute_qm(m as usize)
                .truncated(trunc);
            acc = acc.mul(&base.pow(e)?)?;
        }
        Ok(acc)
    }

    /// Parse the `fM^E` grammar: terms joined by `*` and `/`, exponents
    /// optional (default 1), `1` allowed as a term, whitespace ignored.
    pub fn parse(input: &str) -> Result<Self> {
        let bytes: Vec<(usize, char)> = input
            .char_indices()
            .filter(|(_, c)| !c.is_whitespace())
            .collect();
        let mut factors: Vec<(u64, i64)> = Vec::new();
        let mut i = 0;
        let mut sign = 1i64; // exponent sign applied by the preceding operator
        let err = |pos: usize, msg: &str| Error::Parse {
            pos,
            msg: msg.to_string(),
        };

        if bytes.is_empty() {
            return Err(err(0, "empty expression"));
        }
        loop {
            // one term: '1' or fM(^E)?
            match bytes.get(i) {
                Some(&(_, '1')) => {
                    i += 1;
                }
                Some(&(_, 'f')) | Some(&(_, 'F')) => {
                    i += 1;
                    let start = i;
                    while matches!(bytes.get(i), Some(&(_, c)) if c.is_ascii_digit()) {
                        i += 1;
                    }
                    if i == start {
                        let pos = bytes.get(i).map_or(input.len(), |&(p, _)| p);
                        return Err(err(pos, "expected subscript digits after `f`"));
                    }
                    let sub: u64 = bytes[start..i]
                        .iter()
                        .map(|&(_, c)| c)
                        .collect::<String>()
                        .parse()
                        .map_err(|_| err(bytes[start].0, "subscript out of range"))?;
                    if sub == 0 {
                        return Err(err(bytes[start].0, "subscript must be positive"));
                    }
                    let mut exp: i64 = 1;
                    if matches!(bytes.get(i), Some(&(_, '^'))) {
                        i += 1;
                        let mut neg = false;
                        if matches!(bytes.get(i), Some(&(_, '-'))) {
                            neg = true;
                            i += 1;
                        }
                        let dstart = i;
                        while matches!(bytes.get(i), Some(&(_, c)) if c.is_ascii_digit()) {
                            i += 1;
                        }
                        if i == dstart {
                            let pos = bytes.get(i).map_or(input.len(), |&(p, _)| p);
                            return Err(err(pos, "expected exponent digits after `^`"));
                        }
                        exp = bytes[dstart..i]
                            .iter()
                            .map(|&(_, c)| c)
                            .collect::<String>()
                            .parse()
                            .map_err(|_| err(bytes[dstart].0, "exponent out of range"))?;
                        if neg {
                            exp = -exp;
                        }
                    }
                    if exp != 0 {
                        factors.push((sub, sign * exp));
                    }
                }
                Some(&(p, _)) => return Err(err(p, "expected `1` or an `fM` term")),
                None => return Err(err(input.len(), "expected a term")),
            }
            // operator or end
            match bytes.get(i) {
                None => break,
                Some(&(_, '*')) => {
                    sign = 1;
                    i += 1;
                }
                Some(&(_, '/')) => {
                    sign = -1;
                    i += 1;
                }
                Some(&(p, _)) => return Err(err(p, "expected `*`, `/`, or end of input")),
            }
        }
        let mut map = BTreeMap::new();
        for (m, e) in factors {
            *map.entry(m).or_insert(0) += e;
        }
        map.retain(|_, e| *e != 0);
        Ok(EtaQuotient { factors: map })
    }
}

impl fmt::Display for EtaQuotient {
    /// Canonical form within the parse grammar: positive-exponent factors
    /// joined by `*` (or `1` when there are none), each negative-exponent
    /// factor appended as `/fM^E`.
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let pos: Vec<_> = self.factors.iter().filter(|(_, &e)| e > 0).collect();
        let neg: Vec<_> = self.factors.iter().filter(|(_, &e)| e < 0).collect();
        if pos.is_empty() {
            write!(f, "1")?;
        } else {
            for (idx, (m, e)) in pos.iter().enumerate() {
                if idx > 0 {
                    write!(f, "*")?;
                }
                if **e == 1 {
                    write!(f, "f{m}")?;
                } else {
                    write!(f, "f{m}^{e}")?;
                }
            }
        }
        for (m, e) in neg {
            if *e == -1 {
                write!(f, "/f{m}")?;
            } else {
                write!(f, "/f{m}^{}", -e)?;
            }
        }
        Ok(())
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn exact(trunc: usize, coeffs: &[i64]) -> Series {
        Series::from_i64(Ring::Exact, trunc, coeffs).unwrap()
    }

    /// Brute-force partition counts by bounded-part DP, independent of any
    /// series arithmetic.
    fn partitions_upto(n_max: usize) -> Vec<i64> {
        let mut table = vec![0i64; n_max + 1];
        table[0] = 1;
        for part in 1..=n_max {
            for m in part..=n_max {
                table[m] += table[m - part];
            }
        }
        table
    }

    #[test]
    fn make_series_normalizes_mod_coefficients() {
        let s = Series::from_i64(Ring::Mod(3), 1, &[4, -1]).unwrap();
        assert_eq!(s.coeff_mod(0).unwrap(), 1);
        assert_eq!(s.coeff_mod(1).unwrap(), 2);
    }

    #[test]
    fn make_series_rejects_bad_input() {
        assert_eq!(
            Series::from_i64(Ring::Exact, 2, &[1, 0]),
            Err(Error::CoeffLength {
                trunc: 2,
                expected: 3,
                got: 2
            })
        );
        assert_eq!(
            Series::from_i64(Ring::Mod(1), 0, &[1]),
            Err(Error::ModulusTooSmall(1))
        );
    }

    #[test]
    fn constant_series() {
        let s = exact(0, &[7]);
        assert_eq!(s.coeff(0).unwrap(), Coefficient::Exact(BigInt::from(7)));
        assert!(s.coeff(1).is_err());
    }

    #[test]
    fn add_of_inverse_pair_is_pentagonal_plus_partitions() {
        // f_1 + 1/f_1 through q^3: (1,-1,-1,0) + (1,1,2,3)
        let f1 = pentagonal_series(Ring::Exact, 3).unwrap();
        let inv = f1.invert().unwrap();
        let sum = f1.add(&inv).unwrap();
        let expect = exact(3, &[2, 0, 1, 3]);
        assert_eq!(sum, expect);
    }

    #[test]
    fn add_requires_matching_rings() {
        let a = exact(1, &[1, 1]);
        let b = Series::from_i64(Ring::Mod(3), 1, &[1, 1]).unwrap();
        assert!(matches!(a.add(&b), Err(Error::RingMismatch(_, _))));
        let c = Series::from_i64(Ring::Mod(5), 1, &[1, 1]).unwrap();
        assert!(matches!(b.add(&c), Err(Error::RingMismatch(_, _))));
    }

    #[test]
    fn mod_addition_wraps() {
        let a = Series::from_i64(Ring::Mod(3), 1, &[1, 2]).unwrap();
        let b = Series::from_i64(Ring::Mod(3), 1, &[2, 2]).unwrap();
        let s = a.add(&b).unwrap();
        assert_eq!(s, Series::from_i64(Ring::Mod(3), 1, &[0, 1]).unwrap());
    }

    #[test]
    fn mul_of_inverse_pair_is_one() {
        let f1 = pentagonal_series(Ring::Exact, 50).unwrap();
        let prod = f1.mul(&f1.invert().unwrap()).unwrap();
        assert_eq!(prod, Series::one(Ring::Exact, 50).unwrap());
    }

    #[test]
    fn two_colored_partition_numbers() {
        // (1/f_1)^2 counts 2-colored partitions: 1, 2, 5, 10, 20
        let inv = pentagonal_series(Ring::Exact, 4).unwrap().invert().unwrap();
        let sq = inv.mul(&inv).unwrap();
        assert_eq!(sq, exact(4, &[1, 2, 5, 10, 20]));
    }

    #[test]
    fn invert_gives_partition_numbers() {
        let p = partitions_upto(9);
        let inv = pentagonal_series(Ring::Exact, 9).unwrap().invert().unwrap();
        for (n, &expect) in p.iter().enumerate() {
            assert_eq!(inv.coeff(n).unwrap().to_bigint(), BigInt::from(expect));
        }
        assert_eq!(p[5], 7);
        assert_eq!(p[9], 30);
    }

    #[test]
    fn invert_requires_unit_constant() {
        let s = exact(2, &[2, 0, 0]);
        assert_eq!(s.invert(), Err(Error::NonUnitConstant(Ring::Exact)));
        let m = Series::from_i64(Ring::Mod(6), 1, &[3, 1]).unwrap();
        assert_eq!(m.invert(), Err(Error::NonUnitConstant(Ring::Mod(6))));
        // 2 is a unit mod 9
        let ok = Series::from_i64(Ring::Mod(9), 1, &[2, 1]).unwrap();
        assert_eq!(ok.invert().unwrap().coeff_mod(0).unwrap(), 5);
    }

    #[test]
    fn invert_of_one_is_one() {
        let one = Series::one(Ring::Exact, 10).unwrap();
        assert_eq!(one.invert().unwrap(), one);
    }

    #[test]
    fn pow_cube_of_f1() {
        let f1 = pentagonal_series(Ring::Exact, 10).unwrap();
        let cube = f1.pow(3).unwrap();
        assert_eq!(cube, exact(10, &[1, -3, 0, 5, 0, 0, -7, 0, 0, 0, 9]));
    }

    #[test]
    fn pow_zero_is_one() {
        let s = exact(3, &[4, 7, -2, 9]);
        assert_eq!(s.pow(0).unwrap(), Series::one(Ring::Exact, 3).unwrap());
    }

    #[test]
    fn pow_negative_inverts() {
        let f1 = pentagonal_series(Ring::Exact, 20).unwrap();
        let double_inv = f1.invert().unwrap().pow(-1).unwrap();
        assert_eq!(double_inv, f1);
    }

    #[test]
    fn substitution_stretches_exponents() {
        let s = exact(1, &[1, 2]);
        assert_eq!(s.substitute_qm(2), exact(2, &[1, 0, 2]));
        let one = Series::one(Ring::Exact, 3).unwrap();
        assert_eq!(one.substitute_qm(7).truncated(3), one);
    }

    #[test]
    fn reduce_mod_examples() {
        let cube = pentagonal_series(Ring::Exact, 6).unwrap().pow(3).unwrap();
        let red = cube.reduce_mod(3).unwrap();
        assert_eq!(red, Series::from_i64(Ring::Mod(3), 6, &[1, 0, 0, 2, 0, 0, 2]).unwrap());

        let p = pentagonal_series(Ring::Exact, 5).unwrap().invert().unwrap();
        assert_eq!(
            p.reduce_mod(5).unwrap(),
            Series::from_i64(Ring::Mod(5), 5, &[1, 1, 2, 3, 0, 2]).unwrap()
        );

        assert_eq!(
            Series::zero(Ring::Exact, 4).unwrap().reduce_mod(5).unwrap(),
            Series::zero(Ring::Mod(5), 4).unwrap()
        );
        assert!(p.reduce_mod(1).is_err());
    }

    #[test]
    fn coeff_beyond_truncation_is_an_error() {
        let s = exact(2, &[1, 1, 1]);
        assert_eq!(
            s.coeff(3),
            Err(Error::BeyondTruncation { n: 3, trunc: 2 })
        );
    }

    #[test]
    fn pentagonal_leading_terms() {
        let f1 = pentagonal_series(Ring::Exact, 7).unwrap();
        assert_eq!(f1, exact(7, &[1, -1, -1, 0, 0, 1, 0, 1]));
    }

    #[test]
    fn eta_expansion_of_inverse_f1_is_partition_series() {
        let eq = EtaQuotient::new([(1, -1)]).unwrap();
        let s = eq.expand(Ring::Exact, 5).unwrap();
        assert_eq!(s, exact(5, &[1, 1, 2, 3, 5, 7]));
    }

    #[test]
    fn eta_expansion_matches_two_color_count() {
        // f_2^2 / f_1^4 begins 1, 4, 12: four colors for 1, two colors for 2
        // (2 ways) plus two-element multisets from four colors (10 ways).
        let eq = EtaQuotient::colored_partitions(2, 4);
        let s = eq.expand(Ring::Exact, 2).unwrap();
        assert_eq!(s, exact(2, &[1, 4, 12]));
    }

    #[test]
    fn eta_expansion_negative_numerator() {
        // f_1^2 / f_2^2 at tiny truncation against a direct product oracle:
        // (1 - q)^2 (1 - q^2)^{-2} (1 - q^3)^2 (1 - q^4)^{-2} ...
        let eq = EtaQuotient::new([(1, 2), (2, -2)]).unwrap();
        let got = eq.expand(Ring::Exact, 4).unwrap();
        let mut oracle = Series::one(Ring::Exact, 4).unwrap();
        for n in 1..=4usize {
            let mut factor = Series::zero(Ring::Exact, 4).unwrap();
            factor.add_term(0, 1);
            factor.add_term(n, -1);
            let e = if n % 2 == 0 { -2 } else { 2 };
            oracle = oracle.mul(&factor.pow(e).unwrap()).unwrap();
        }
        assert_eq!(got, oracle);
    }

    #[test]
    fn eta_quotient_construction_rules() {
        assert_eq!(EtaQuotient::new([(0, 1)]), Err(Error::ZeroSubscript));
        assert_eq!(EtaQuotient::new([(2, 0)]), Err(Error::ZeroExponent));
        let a = EtaQuotient::new([(1, 2), (2, 1)]).unwrap();
        let b = EtaQuotient::new([(1, -2), (3, 4)]).unwrap();
        let c = a.compose(&b);
        assert_eq!(c, EtaQuotient::new([(2, 1), (3, 4)]).unwrap());
    }

    #[test]
    fn colored_partitions_equal_colors_drops_f2() {
        let eq = EtaQuotient::colored_partitions(3, 3);
        assert_eq!(eq, EtaQuotient::new([(1, -3)]).unwrap());
    }

    #[test]
    fn parser_round_trips() {
        for (input, canon) in [
            ("f2^3/f1^6", "f2^3/f1^6"),
            (" f2 ^ 2 / f1 ^ 4 ", "f2^2/f1^4"),
            ("1", "1"),
            ("1/f1/f2", "1/f1/f2"),
            ("f1*f2", "f1*f2"),
            ("f1^2*f1^-1", "f1"),
            ("f9^9/f3^6/f6^2/f18^3", "f9^9/f3^6/f6^2/f18^3"),
        ] {
            let parsed = EtaQuotient::parse(input).unwrap();
            assert_eq!(parsed.to_string(), canon, "for input {input:?}");
            let reparsed = EtaQuotient::parse(&parsed.to_string()).unwrap();
            assert_eq!(parsed, reparsed);
        }
    }

    #[test]
    fn parser_reports_position() {
        let e = EtaQuotient::parse("f2^3/g1").unwrap_err();
        assert_eq!(
            e,
            Error::Parse {
                pos: 5,
                msg: "expected `1` or an `fM` term".to_string()
            }
        );
        assert!(EtaQuotient::parse("").is_err());
        assert!(EtaQuotient::parse("f").is_err());
        assert!(EtaQuotient::parse("f2^").is_err());
        assert!(EtaQuotient::parse("f0").is_err());
    }
}
