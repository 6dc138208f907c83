//! Partitions, conjugacy classes and characters of symmetric groups.
//!
//! Characters are evaluated per conjugacy class. Groups only ever act through
//! class data and fixed-point counts, so no group elements are enumerated.

use std::collections::BTreeMap;

use num_bigint::BigInt;
use num_traits::{Signed, ToPrimitive, Zero};
use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::poly::Rational;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum SymrepError {
    #[error("the hook character needs k >= 2, got k = {k}")]
    HookUndefined { k: u32 },
    #[error("isotype multiplicity {value} is not a non-negative integer")]
    NonIntegerMultiplicity { value: String },
    #[error("no fixed-point count supplied for the class {parts:?}")]
    MissingClass { parts: Vec<u32> },
    #[error("top row ranks need 1 <= d < s, got s = {s}, d = {d}")]
    InvalidRange { s: u32, d: u32 },
    #[error("corner rank {found} differs from the binomial {expected}")]
    CornerMismatch { found: String, expected: String },
}

/// A partition of `k`, read as the cycle type of a permutation.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub struct PartitionData {
    pub k: u32,
    /// Parts in non-increasing order.
    pub parts: Vec<u32>,
    /// `alpha[i - 1]` is the number of parts equal to `i`.
    pub alpha: Vec<u32>,
    /// Number of permutations with this cycle type.
    pub class_size: u64,
    /// Sign of any permutation with this cycle type.
    pub sign: i8,
}

impl PartitionData {
    /// Builds the class data from parts given in any order.
    pub fn from_parts(parts: &[u32]) -> Self {
        let mut parts: Vec<u32> = parts.iter().copied().filter(|&p| p > 0).collect();
        parts.sort_unstable_by(|a, b| b.cmp(a));
        let k: u32 = parts.iter().sum();
        let mut alpha = vec![0u32; k as usize];
        for &p in &parts {
            alpha[p as usize - 1] += 1;
        }
        let mut centraliser: u64 = 1;
        for (i, &a) in alpha.iter().enumerate() {
            centraliser *= (i as u64 + 1).pow(a) * factorial(a as u64);
        }
        let class_size = factorial(k as u64) / centraliser;
        let sign = if (k - parts.len() as u32).is_multiple_of(2) { 1 } else { -1 };
        PartitionData { k, parts, alpha, class_size, sign }
    }

    /// Number of parts, i.e. the sum of the multiplicities `alpha_i`.
    pub fn num_parts(&self) -> u32 {
        self.parts.len() as u32
    }

    /// Number of fixed points of a permutation of this type.
    pub fn fixed_points(&self) -> u32 {
        self.alpha.first().copied().unwrap_or(0)
    }

    /// The cycle type obtained by adding one extra fixed point.
    pub fn with_fixed_point(&self) -> PartitionData {
        let mut parts = self.parts.clone();
        parts.push(1);
        PartitionData::from_parts(&parts)
    }

    /// Order of the centraliser, `k! / class_size`.
    pub fn centraliser_order(&self) -> u64 {
        factorial(self.k as u64) / self.class_size
    }
}

impl std::fmt::Display for PartitionData {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        let s: Vec<String> = self.parts.iter().map(u32::to_string).collect();
        write!(f, "({})", s.join(","))
    }
}

pub fn factorial(n: u64) -> u64 {
    (1..=n).product()
}

/// Binomial coefficient `C(n, k)`, zero when `k > n`.
pub fn binomial(n: u64, k: u64) -> u64 {
    if k > n {
        return 0;
    }
    let k = k.min(n - k);
    let mut acc: u128 = 1;
    for i in 0..k {
        acc = acc * (n - i) as u128 / (i + 1) as u128;
    }
    acc as u64
}

/// All partitions of `k` in reverse lexicographic order, e.g. `(3), (2,1), (1,1,1)`.
pub fn partitions_of(k: u32) -> Vec<PartitionData> {
    fn go(rest: u32, max: u32, cur: &mut Vec<u32>, out: &mut Vec<Vec<u32>>) {
        if rest == 0 {
            out.push(cur.clone());
            return;
        }
        for p in (1..=rest.min(max)).rev() {
            cur.push(p);
            go(rest - p, p, cur, out);
            cur.pop();
        }
    }
    let mut raw = Vec::new();
    go(k, k, &mut Vec::new(), &mut raw);
    raw.iter().map(|p| PartitionData::from_parts(p)).collect()
}

/// The coefficient `(-1)^(sum alpha_i + 1) / prod i^alpha_i alpha_i!` of a
/// stratum in the Euler characteristic of the image.
pub fn marar_coefficient(gamma: &PartitionData) -> Rational {
    let denom = gamma.centraliser_order();
    let sign: i64 = if (gamma.num_parts() + 1).is_multiple_of(2) { 1 } else { -1 };
    Rational::new(BigInt::from(sign), BigInt::from(denom))
}

/// The irreducible representations used by the equivariant counts.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "SCREAMING_SNAKE_CASE")]
pub enum Isotype {
    Alternating,
    Trivial,
    /// The representation labelled by the hook `(2,1,...,1)`.
    Hook,
}

/// Value of the hook character `sign(sigma) (fix(sigma) - 1)` on the class `gamma`.
pub fn hook_character(gamma: &PartitionData) -> Result<i64, SymrepError> {
    if gamma.k < 2 {
        return Err(SymrepError::HookUndefined { k: gamma.k });
    }
    Ok(gamma.sign as i64 * (gamma.fixed_points() as i64 - 1))
}

/// Character value of `which` on the class `gamma`.
pub fn character(which: Isotype, gamma: &PartitionData) -> Result<i64, SymrepError> {
    match which {
        Isotype::Alternating => Ok(gamma.sign as i64),
        Isotype::Trivial => Ok(1),
        Isotype::Hook => hook_character(gamma),
    }
}

/// Class-weighted inner product `(1/k!) sum class_size * a(gamma) * b(gamma)`.
pub fn class_inner_product<A, B>(k: u32, a: A, b: B) -> Rational
where
    A: Fn(&PartitionData) -> Rational,
    B: Fn(&PartitionData) -> Rational,
{
    let mut acc = Rational::zero();
    for g in partitions_of(k) {
        acc += a(&g) * b(&g) * Rational::from_integer(g.class_size.into());
    }
    acc / Rational::from_integer(factorial(k as u64).into())
}

/// Multiplicity of `which` in the permutation representation on a finite
/// point set, given the number of points fixed by a permutation of each
/// cycle type (keyed by the parts).
pub fn isotype_rank_points(fixcounts: &BTreeMap<Vec<u32>, u64>, k: u32, which: Isotype) -> Result<u64, SymrepError> {
    let mut acc = Rational::zero();
    for g in partitions_of(k) {
        let fix = *fixcounts.get(&g.parts).ok_or(SymrepError::MissingClass { parts: g.parts.clone() })?;
        let chi = character(which, &g)?;
        acc += Rational::from_integer(BigInt::from(g.class_size) * BigInt::from(chi) * BigInt::from(fix));
    }
    acc /= Rational::from_integer(factorial(k as u64).into());
    integral_non_negative(&acc)
}

fn integral_non_negative(r: &Rational) -> Result<u64, SymrepError> {
    if r.is_integer() && !r.is_negative() {
        if let Some(v) = r.to_integer().to_u64() {
            return Ok(v);
        }
    }
    Err(SymrepError::NonIntegerMultiplicity { value: r.to_string() })
}

/// Ranks of the top row of the image computing spectral sequence for a
/// multi-germ with `s` branches and maximal multiplicity `d`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub struct TopRowRanks {
    /// `|sum_{l=d+1}^{s} (-1)^l C(s,l)|`, which equals `C(s-1,d)`.
    pub corner_rank: u64,
    /// `|sum_{l=d+1}^{s} (-1)^l l C(s,l)|`.
    pub weighted_rank: u64,
}

pub fn top_row_ranks(s: u32, d: u32) -> Result<TopRowRanks, SymrepError> {
    if d < 1 || d >= s {
        return Err(SymrepError::InvalidRange { s, d });
    }
    let (mut corner, mut weighted) = (BigInt::zero(), BigInt::zero());
    for l in d + 1..=s {
        let c = BigInt::from(binomial(s as u64, l as u64));
        let signed = if l % 2 == 0 { c } else { -c };
        weighted += &signed * BigInt::from(l);
        corner += signed;
    }
    let expected = BigInt::from(binomial(s as u64 - 1, d as u64));
    let corner = corner.abs();
    if corner != expected {
        return Err(SymrepError::CornerMismatch { found: corner.to_string(), expected: expected.to_string() });
    }
    Ok(TopRowRanks {
        corner_rank: corner.to_u64().expect("small"),
        weighted_rank: weighted.abs().to_u64().expect("small"),
    })
}

/// The closed form `d s^2 / (s-1) * C(s-1,d)` written as the final equality
/// of the weighted rank computation; kept for side-by-side reporting with
/// [`TopRowRanks::weighted_rank`], which it does not match in general.
pub fn stated_weighted_rank(s: u32, d: u32) -> Rational {
    let num = BigInt::from(d) * BigInt::from(s) * BigInt::from(s) * BigInt::from(binomial(s as u64 - 1, d as u64));
    Rational::new(num, BigInt::from(s - 1))
}

/// The closed form `d (d+1) / (s-1) * C(s, d+1)`, equal to the weighted rank.
pub fn weighted_rank_closed_form(s: u32, d: u32) -> Rational {
    let num = BigInt::from(d) * BigInt::from(d + 1) * BigInt::from(binomial(s as u64, d as u64 + 1));
    Rational::new(num, BigInt::from(s - 1))
}

/// Multiplicity of the alternating representation of the subgroup
/// `Sigma_{k-1}` fixing the first entry, on a permutation module of `Sigma_k`
/// described by its fixed-point counts.
pub fn restricted_alternating_rank(fixcounts: &BTreeMap<Vec<u32>, u64>, k: u32) -> Result<u64, SymrepError> {
    if k < 2 {
        return Err(SymrepError::HookUndefined { k });
    }
    let mut restricted = BTreeMap::new();
    for g in partitions_of(k - 1) {
        let lifted = g.with_fixed_point();
        let fix = *fixcounts.get(&lifted.parts).ok_or(SymrepError::MissingClass { parts: lifted.parts })?;
        restricted.insert(g.parts.clone(), fix);
    }
    isotype_rank_points(&restricted, k - 1, Isotype::Alternating)
}

/// Fixed-point counts of the disjoint union of `orbits` free orbits of `Sigma_k`.
pub fn free_orbit_fixcounts(k: u32, orbits: u64) -> BTreeMap<Vec<u32>, u64> {
    partitions_of(k)
        .into_iter()
        .map(|g| {
            let fix = if g.fixed_points() == k { orbits * factorial(k as u64) } else { 0 };
            (g.parts, fix)
        })
        .collect()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::poly::rat;

    #[test]
    fn partitions_of_three() {
        let p = partitions_of(3);
        let parts: Vec<Vec<u32>> = p.iter().map(|g| g.parts.clone()).collect();
        assert_eq!(parts, vec![vec![3], vec![2, 1], vec![1, 1, 1]]);
        let sizes: Vec<u64> = p.iter().map(|g| g.class_size).collect();
        assert_eq!(sizes, vec![2, 3, 1]);
        assert_eq!(partitions_of(1).len(), 1);
        let five = partitions_of(5);
        assert_eq!(five.len(), 7);
        assert_eq!(five.iter().map(|g| g.class_size).sum::<u64>(), 120);
    }

    #[test]
    fn marar_values() {
        let c = |p: &[u32]| marar_coefficient(&PartitionData::from_parts(p));
        assert_eq!(c(&[1, 1]), rat(-1, 2));
        assert_eq!(c(&[2]), rat(1, 2));
        assert_eq!(c(&[1, 1, 1]), rat(1, 6));
        assert_eq!(c(&[2, 1]), rat(-1, 2));
        assert_eq!(c(&[3]), rat(1, 3));
        assert_eq!(c(&[1]), rat(1, 1));
    }

    #[test]
    fn hook_on_sigma3() {
        let h = |p: &[u32]| hook_character(&PartitionData::from_parts(p)).unwrap();
        assert_eq!((h(&[1, 1, 1]), h(&[2, 1]), h(&[3])), (2, 0, -1));
        assert!(hook_character(&PartitionData::from_parts(&[1])).is_err());
    }

    #[test]
    fn isotype_examples() {
        let m = |pairs: &[(&[u32], u64)], k| {
            let map: BTreeMap<Vec<u32>, u64> = pairs.iter().map(|(p, c)| (p.to_vec(), *c)).collect();
            isotype_rank_points(&map, k, Isotype::Alternating)
        };
        assert_eq!(m(&[(&[1, 1, 1], 6), (&[2, 1], 0), (&[3], 0)], 3), Ok(1));
        assert_eq!(m(&[(&[1, 1], 2), (&[2], 2)], 2), Ok(0));
        assert_eq!(m(&[(&[1, 1], 2), (&[2], 0)], 2), Ok(1));
        assert!(matches!(m(&[(&[1, 1], 1), (&[2], 0)], 2), Err(SymrepError::NonIntegerMultiplicity { .. })));
        assert!(matches!(m(&[(&[1, 1], 1)], 2), Err(SymrepError::MissingClass { .. })));
    }

    #[test]
    fn top_row_examples() {
        let r = |s, d| {
            let t = top_row_ranks(s, d).unwrap();
            (t.corner_rank, t.weighted_rank)
        };
        assert_eq!(r(4, 2), (3, 8));
        assert_eq!(r(2, 1), (1, 2));
        assert_eq!(r(3, 2), (1, 3));
        assert_eq!(stated_weighted_rank(4, 2), rat(32, 1));
        assert_eq!(weighted_rank_closed_form(4, 2), rat(8, 1));
        assert!(top_row_ranks(2, 2).is_err());
    }
}
