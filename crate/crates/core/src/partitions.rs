//! Integer partitions: enumeration in canonical order and multiset splitting.

use std::cmp::Ordering;
use std::collections::BTreeMap;
use std::fmt;
use std::str::FromStr;

use crate::error::{Error, Result};

/// A weakly decreasing sequence of positive integers.
///
/// `Ord` is the canonical order: descending lexicographic on the part
/// sequence, so among partitions of `n` the first is `(n)` and the last is
/// `(1, ..., 1)`. Serializations of vectors and matrices indexed by
/// partitions follow this order.
#[derive(Clone, Debug, Default, PartialEq, Eq, Hash)]
pub struct Partition(Vec<u32>);

impl Partition {
    /// Builds a partition from parts in any order. Zero parts are rejected.
    pub fn new(mut parts: Vec<u32>) -> Result<Self> {
        if parts.contains(&0) {
            return Err(Error::InvalidArgument(format!(
                "partition parts must be positive, got {parts:?}"
            )));
        }
        parts.sort_unstable_by(|a, b| b.cmp(a));
        Ok(Partition(parts))
    }

    pub fn empty() -> Self {
        Partition(Vec::new())
    }

    /// `(1, ..., 1)` with `n` ones.
    pub fn ones(n: u32) -> Self {
        Partition(vec![1; n as usize])
    }

    /// The one-part partition `(n)`; empty for `n = 0`.
    pub fn single(n: u32) -> Self {
        if n == 0 {
            Self::empty()
        } else {
            Partition(vec![n])
        }
    }

    pub fn parts(&self) -> &[u32] {
        &self.0
    }

    pub fn weight(&self) -> u32 {
        self.0.iter().sum()
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    /// Part value -> multiplicity.
    pub fn multiplicities(&self) -> BTreeMap<u32, u32> {
        let mut m = BTreeMap::new();
        for &p in &self.0 {
            *m.entry(p).or_default() += 1;
        }
        m
    }

    /// Number of parts that are at least `bound`.
    pub fn count_parts_at_least(&self, bound: u32) -> usize {
        self.0.iter().filter(|&&p| p >= bound).count()
    }

    /// Multiset union.
    pub fn union(&self, other: &Partition) -> Partition {
        let mut parts = self.0.clone();
        parts.extend_from_slice(&other.0);
        parts.sort_unstable_by(|a, b| b.cmp(a));
        Partition(parts)
    }

    pub fn with_part(&self, part: u32) -> Partition {
        self.union(&Partition(vec![part]))
    }
}

impl Ord for Partition {
    fn cmp(&self, other: &Self) -> Ordering {
        other.0.cmp(&self.0)
    }
}

impl PartialOrd for Partition {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl fmt::Display for Partition {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let parts: Vec<String> = self.0.iter().map(u32::to_string).collect();
        write!(f, "[{}]", parts.join(","))
    }
}

impl FromStr for Partition {
    type Err = Error;

    /// Accepts `"[2,1]"`, `"2,1"`, `"[]"` and `""`.
    fn from_str(s: &str) -> Result<Self> {
        let inner = s.trim();
        let inner = inner
            .strip_prefix('[')
            .and_then(|t| t.strip_suffix(']'))
            .unwrap_or(inner)
            .trim();
        if inner.is_empty() {
            return Ok(Partition::empty());
        }
        let parts = inner
            .split(',')
            .map(|t| {
                t.trim()
                    .parse::<u32>()
                    .map_err(|_| Error::Parse(format!("invalid partition `{s}`")))
            })
            .collect::<Result<Vec<_>>>()?;
        Partition::new(parts)
    }
}

impl TryFrom<Vec<u32>> for Partition {
    type Error = Error;
    fn try_from(parts: Vec<u32>) -> Result<Self> {
        Partition::new(parts)
    }
}

/// All partitions of `n`, in canonical order.
pub fn enumerate(n: u32) -> Vec<Partition> {
    fn rec(remaining: u32, max: u32, prefix: &mut Vec<u32>, out: &mut Vec<Partition>) {
        if remaining == 0 {
            out.push(Partition(prefix.clone()));
            return;
        }
        for part in (1..=remaining.min(max)).rev() {
            prefix.push(part);
            rec(remaining - part, part, prefix, out);
            prefix.pop();
        }
    }
    let mut out = Vec::new();
    rec(n, n, &mut Vec::new(), &mut out);
    out
}

/// All ordered pairs `(J1, J2)` of sub-multisets with `J1 ⊎ J2 = J`, each
/// pair once. The number of pairs is the product of `mult + 1` over the
/// distinct parts.
pub fn ordered_splittings(j: &Partition) -> Vec<(Partition, Partition)> {
    // Largest part is the most significant odometer digit.
    let mults: Vec<(u32, u32)> = j.multiplicities().into_iter().rev().collect();
    let mut counts = vec![0u32; mults.len()];
    let mut out = Vec::new();
    loop {
        let mut left = Vec::new();
        let mut right = Vec::new();
        for (&(part, mult), &take) in mults.iter().zip(&counts) {
            left.extend(std::iter::repeat(part).take(take as usize));
            right.extend(std::iter::repeat(part).take((mult - take) as usize));
        }
        out.push((Partition(left), Partition(right)));

        let mut pos = mults.len();
        loop {
            if pos == 0 {
                return out;
            }
            pos -= 1;
            if counts[pos] < mults[pos].1 {
                counts[pos] += 1;
                break;
            }
            counts[pos] = 0;
        }
    }
}
