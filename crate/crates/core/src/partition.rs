//! Partition and bipartition calculus.
//!
//! Partitions are stored as weakly decreasing sequences of positive integers
//! with no trailing zeros; the empty sequence is the unique partition of 0.
//! The 2-core / 2-quotient calculus runs through beta-sets of even length,
//! with beads split by parity: a bead `b` contributes `b/2` to quotient
//! component `b mod 2`.  The roundtrip and size-identity tests pin this
//! convention.

use crate::error::{Error, Result};
use serde::de::Error as _;
use serde::{Deserialize, Deserializer, Serialize, Serializer};
use std::fmt;

/// A partition: weakly decreasing positive parts.
#[derive(Clone, PartialEq, Eq, Hash, PartialOrd, Ord, Debug, Default)]
pub struct Partition(Vec<u32>);

impl Partition {
    /// The empty partition of 0.
    pub fn empty() -> Self {
        Partition(Vec::new())
    }

    /// Builds a partition from parts that must already be weakly decreasing
    /// and positive.
    pub fn new(parts: Vec<u32>) -> Result<Self> {
        for w in parts.windows(2) {
            if w[0] < w[1] {
                return Err(Error::NotAPartition(format!("{parts:?} is not decreasing")));
            }
        }
        if parts.last().is_some_and(|&p| p == 0) {
            return Err(Error::NotAPartition(format!("{parts:?} has zero parts")));
        }
        Ok(Partition(parts))
    }

    /// Builds a partition from arbitrary nonnegative entries: zeros are
    /// dropped and the rest re-sorted decreasing.
    pub fn from_unsorted(mut parts: Vec<u32>) -> Self {
        parts.retain(|&p| p > 0);
        parts.sort_unstable_by(|a, b| b.cmp(a));
        Partition(parts)
    }

    pub fn parts(&self) -> &[u32] {
        &self.0
    }

    /// Number of cells.
    pub fn size(&self) -> u32 {
        self.0.iter().sum()
    }

    /// Number of parts.
    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    /// Part at 1-based row `i`, zero-padded.
    pub fn part(&self, i: usize) -> u32 {
        if i >= 1 && i <= self.0.len() {
            self.0[i - 1]
        } else {
            0
        }
    }

    /// The staircase (k, k-1, ..., 1); `k = 0` gives the empty partition.
    pub fn staircase(k: u32) -> Self {
        Partition((1..=k).rev().collect())
    }

    /// Returns `Some(k)` when the partition is the staircase (k, ..., 1).
    pub fn staircase_parameter(&self) -> Option<u32> {
        let k = self.0.len() as u32;
        for (i, &p) in self.0.iter().enumerate() {
            if p != k - i as u32 {
                return None;
            }
        }
        Some(k)
    }

    /// Multiset union of the parts with {d}; d = 0 is discarded.
    pub fn union_with_part(&self, d: u32) -> Partition {
        if d == 0 {
            return self.clone();
        }
        let mut parts = self.0.clone();
        let pos = parts.partition_point(|&p| p >= d);
        parts.insert(pos, d);
        Partition(parts)
    }

    /// The 2-core: result of removing rim dominoes until none remains.
    pub fn two_core(&self) -> Partition {
        let beta = BetaSet::of_partition(self, even_length(self.len()));
        let (evens, odds) = beta.split_parity();
        // Smallest possible beads of each parity class.
        let mut beads: Vec<u32> = (0..evens.len() as u32).map(|j| 2 * j).collect();
        beads.extend((0..odds.len() as u32).map(|j| 2 * j + 1));
        beads.sort_unstable_by(|a, b| b.cmp(a));
        BetaSet::new(beads).to_partition()
    }

    /// The 2-quotient under the fixed beta-set convention.
    pub fn two_quotient(&self) -> BiPartition {
        let beta = BetaSet::of_partition(self, even_length(self.len()));
        let (evens, odds) = beta.split_parity();
        let q0 = BetaSet::new(evens.iter().map(|b| b / 2).collect()).to_partition();
        let q1 = BetaSet::new(odds.iter().map(|b| (b - 1) / 2).collect()).to_partition();
        BiPartition::new(q0, q1)
    }
}

/// Smallest even length >= max(len, 1).
fn even_length(len: usize) -> usize {
    let m = len.max(1);
    m + m % 2
}

impl fmt::Display for Partition {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "(")?;
        for (i, p) in self.0.iter().enumerate() {
            if i > 0 {
                write!(f, ",")?;
            }
            write!(f, "{p}")?;
        }
        write!(f, ")")
    }
}

impl Serialize for Partition {
    fn serialize<S: Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        self.0.serialize(s)
    }
}

impl<'de> Deserialize<'de> for Partition {
    fn deserialize<D: Deserializer<'de>>(d: D) -> std::result::Result<Self, D::Error> {
        let parts = Vec::<u32>::deserialize(d)?;
        Partition::new(parts).map_err(D::Error::custom)
    }
}

/// An ordered pair of partitions.  Serializes as a two-element array of
/// part arrays, e.g. `[[2],[1]]`.
#[derive(Clone, PartialEq, Eq, Hash, PartialOrd, Ord, Debug, Default)]
pub struct BiPartition {
    pub first: Partition,
    pub second: Partition,
}

impl Serialize for BiPartition {
    fn serialize<S: Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        (&self.first, &self.second).serialize(s)
    }
}

impl<'de> Deserialize<'de> for BiPartition {
    fn deserialize<D: Deserializer<'de>>(d: D) -> std::result::Result<Self, D::Error> {
        let (first, second) = <(Partition, Partition)>::deserialize(d)?;
        Ok(BiPartition { first, second })
    }
}

impl BiPartition {
    pub fn new(first: Partition, second: Partition) -> Self {
        BiPartition { first, second }
    }

    pub fn empty() -> Self {
        BiPartition::new(Partition::empty(), Partition::empty())
    }

    /// Total size |first| + |second|.
    pub fn size(&self) -> u32 {
        self.first.size() + self.second.size()
    }
}

impl fmt::Display for BiPartition {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "({},{})", self.first, self.second)
    }
}

/// Beta-set encoding of a partition: strictly decreasing beads
/// `beta_i = lambda_i + (m - i)` for a fixed length `m`.
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct BetaSet {
    beads: Vec<u32>,
}

impl BetaSet {
    /// Beads must be pairwise distinct; they are stored sorted decreasing.
    pub fn new(mut beads: Vec<u32>) -> Self {
        beads.sort_unstable_by(|a, b| b.cmp(a));
        debug_assert!(beads.windows(2).all(|w| w[0] > w[1]), "beads must be distinct");
        BetaSet { beads }
    }

    pub fn of_partition(p: &Partition, m: usize) -> Self {
        assert!(m >= p.len());
        let beads = (1..=m)
            .map(|i| p.part(i) + (m - i) as u32)
            .collect::<Vec<_>>();
        BetaSet::new(beads)
    }

    pub fn beads(&self) -> &[u32] {
        &self.beads
    }

    pub fn to_partition(&self) -> Partition {
        let m = self.beads.len();
        let parts = self
            .beads
            .iter()
            .enumerate()
            .map(|(idx, &b)| b - (m - idx - 1) as u32)
            .collect();
        Partition::from_unsorted(parts)
    }

    /// (even beads, odd beads), each sorted decreasing.
    pub fn split_parity(&self) -> (Vec<u32>, Vec<u32>) {
        let evens = self.beads.iter().copied().filter(|b| b % 2 == 0).collect();
        let odds = self.beads.iter().copied().filter(|b| b % 2 == 1).collect();
        (evens, odds)
    }
}

/// Dominance order on partitions of equal size: every prefix sum of `mu`
/// is at most the corresponding prefix sum of `nu`.
pub fn dominance_leq(mu: &Partition, nu: &Partition) -> Result<bool> {
    if mu.size() != nu.size() {
        return Err(Error::IncomparableSizes {
            left: mu.size(),
            right: nu.size(),
        });
    }
    let rows = mu.len().max(nu.len());
    let (mut su, mut sv) = (0u64, 0u64);
    for i in 1..=rows {
        su += u64::from(mu.part(i));
        sv += u64::from(nu.part(i));
        if su > sv {
            return Ok(false);
        }
    }
    Ok(true)
}

/// Reassembles the partition with the given 2-core and 2-quotient.
/// Inverse of `(two_core, two_quotient)`.
pub fn from_core_quotient(core: &Partition, quot: &BiPartition) -> Result<Partition> {
    if core.staircase_parameter().is_none() {
        return Err(Error::NotATwoCore(core.to_string()));
    }
    // An even beta-set length large enough for every bead of the result.
    let m = even_length(2 * (core.size() + quot.size()) as usize + 2);
    let beta = BetaSet::of_partition(core, m);
    let (evens, odds) = beta.split_parity();
    let b0 = BetaSet::of_partition(&quot.first, evens.len());
    let b1 = BetaSet::of_partition(&quot.second, odds.len());
    let mut beads: Vec<u32> = b0.beads().iter().map(|v| 2 * v).collect();
    beads.extend(b1.beads().iter().map(|w| 2 * w + 1));
    Ok(BetaSet::new(beads).to_partition())
}

/// Adjoins `d` copies of 1 to a multiset of positive integers
/// (kept sorted decreasing).
pub fn union_ones(t: &[u32], d: u32) -> Vec<u32> {
    let mut out = t.to_vec();
    out.extend(std::iter::repeat(1).take(d as usize));
    out.sort_unstable_by(|a, b| b.cmp(a));
    out
}

/// Componentwise sum after zero-padding to a common length.
pub fn add_pointwise(mus: &[Partition]) -> Partition {
    let rows = mus.iter().map(|m| m.len()).max().unwrap_or(0);
    let parts = (1..=rows)
        .map(|i| mus.iter().map(|m| m.part(i)).sum())
        .collect();
    Partition::from_unsorted(parts)
}

/// All partitions of `n` in decreasing lexicographic order.
pub fn enumerate_partitions(n: u32) -> Vec<Partition> {
    let mut out = Vec::new();
    let mut current = Vec::new();
    gen_partitions(n, n, &mut current, &mut out);
    out
}

fn gen_partitions(remaining: u32, max_part: u32, current: &mut Vec<u32>, out: &mut Vec<Partition>) {
    if remaining == 0 {
        out.push(Partition(current.clone()));
        return;
    }
    for p in (1..=max_part.min(remaining)).rev() {
        current.push(p);
        gen_partitions(remaining - p, p, current, out);
        current.pop();
    }
}

/// All bipartitions of total size `r`, ordered by decreasing size of the
/// first component, lexicographic within.
pub fn enumerate_bipartitions(r: u32) -> Vec<BiPartition> {
    let mut out = Vec::new();
    for a in (0..=r).rev() {
        for first in enumerate_partitions(a) {
            for second in enumerate_partitions(r - a) {
                out.push(BiPartition::new(first.clone(), second));
            }
        }
    }
    out
}
