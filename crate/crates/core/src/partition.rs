//! Integer partitions, the canonical form of an anonymized histogram.
//!
//! A partition is stored as its positive parts in nonincreasing order; the
//! infinite tail of zeros is implicit. Anything that needs a fixed number of
//! coordinates (prevalences, rank windows) takes the length explicitly.

use std::fmt;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

/// A nonincreasing sequence of positive integers together with its sum.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord, Default, Serialize, Deserialize)]
#[serde(try_from = "Vec<i64>", into = "Vec<i64>")]
pub struct IntegerPartition {
    parts: Vec<i64>,
    size: i64,
}

impl IntegerPartition {
    pub fn empty() -> Self {
        Self::default()
    }

    /// Builds a partition from parts that are already in canonical form.
    ///
    /// Rejects zeros, negative values and increasing steps. Use
    /// [`IntegerPartition::from_counts`] for unsorted bucket counts.
    pub fn new(parts: Vec<i64>) -> Result<Self> {
        for (index, w) in parts.windows(2).enumerate() {
            if w[1] > w[0] {
                return Err(Error::NotCanonical {
                    index: index + 1,
                    value: w[1],
                });
            }
        }
        if let Some((index, &value)) = parts.iter().enumerate().find(|(_, &v)| v < 1) {
            return Err(Error::NotCanonical { index, value });
        }
        let size = checked_sum(&parts)?;
        Ok(Self { parts, size })
    }

    /// Anonymizes a multiset of bucket counts: zeros are dropped and the rest
    /// sorted in nonincreasing order.
    pub fn from_counts<I>(counts: I) -> Result<Self>
    where
        I: IntoIterator<Item = i64>,
    {
        let mut parts = Vec::new();
        for c in counts {
            match c {
                c if c < 0 => return Err(Error::NegativeCount(c)),
                0 => {}
                c => parts.push(c),
            }
        }
        parts.sort_unstable_by(|a, b| b.cmp(a));
        let size = checked_sum(&parts)?;
        Ok(Self { parts, size })
    }

    /// Drops trailing zeros from a nonincreasing nonnegative vector.
    pub(crate) fn from_sorted_nonnegative(mut values: Vec<i64>) -> Result<Self> {
        while values.last() == Some(&0) {
            values.pop();
        }
        Self::new(values)
    }

    pub fn parts(&self) -> &[i64] {
        &self.parts
    }

    pub fn into_parts(self) -> Vec<i64> {
        self.parts
    }

    pub fn size(&self) -> i64 {
        self.size
    }

    /// Number of stored (positive) parts, i.e. φ≥1.
    pub fn len(&self) -> usize {
        self.parts.len()
    }

    pub fn is_empty(&self) -> bool {
        self.parts.is_empty()
    }

    /// The largest part, or 0 for the empty partition.
    pub fn largest(&self) -> i64 {
        self.parts.first().copied().unwrap_or(0)
    }

    /// The part at 0-based rank `index`, with the implicit zero tail.
    pub fn part(&self, index: usize) -> i64 {
        self.parts.get(index).copied().unwrap_or(0)
    }

    /// Cumulative prevalences `(φ≥1, …, φ≥m)`, where `φ≥r` counts the parts
    /// that are at least `r`.
    pub fn prevalence(&self, m: usize) -> PrevalenceVector {
        // ends[r] = number of parts whose value clipped to m equals r
        let mut ends = vec![0i64; m + 1];
        for &v in &self.parts {
            let clipped = usize::try_from(v).map_or(m, |v| v.min(m));
            ends[clipped] += 1;
        }
        let mut values = vec![0i64; m];
        let mut running = 0;
        for r in (1..=m).rev() {
            running += ends[r];
            values[r - 1] = running;
        }
        PrevalenceVector { values }
    }

    /// Multiset union of the parts of both partitions.
    pub fn union(&self, other: &IntegerPartition) -> Result<IntegerPartition> {
        let size = self
            .size
            .checked_add(other.size)
            .ok_or(Error::Overflow("partition size"))?;
        let mut parts = Vec::with_capacity(self.len() + other.len());
        let (mut a, mut b) = (self.parts.iter().peekable(), other.parts.iter().peekable());
        loop {
            match (a.peek(), b.peek()) {
                (Some(&&x), Some(&&y)) if x >= y => {
                    parts.push(x);
                    a.next();
                }
                (_, Some(&&y)) => {
                    parts.push(y);
                    b.next();
                }
                (Some(&&x), None) => {
                    parts.push(x);
                    a.next();
                }
                (None, None) => break,
            }
        }
        Ok(IntegerPartition { parts, size })
    }

    /// Splits by rank: the first `m` parts (zero-padded to exactly `m`
    /// entries) and the partition formed by the remaining parts.
    pub fn split_at_rank(&self, m: usize) -> (Vec<i64>, IntegerPartition) {
        let cut = m.min(self.parts.len());
        let mut head = self.parts[..cut].to_vec();
        head.resize(m, 0);
        let tail_parts = self.parts[cut..].to_vec();
        let tail_size = tail_parts.iter().sum();
        (
            head,
            IntegerPartition {
                parts: tail_parts,
                size: tail_size,
            },
        )
    }
}

impl TryFrom<Vec<i64>> for IntegerPartition {
    type Error = Error;

    fn try_from(counts: Vec<i64>) -> Result<Self> {
        Self::from_counts(counts)
    }
}

impl From<IntegerPartition> for Vec<i64> {
    fn from(p: IntegerPartition) -> Self {
        p.parts
    }
}

impl fmt::Display for IntegerPartition {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "(")?;
        for (i, p) in self.parts.iter().enumerate() {
            if i > 0 {
                write!(f, ", ")?;
            }
            write!(f, "{p}")?;
        }
        write!(f, ")")
    }
}

fn checked_sum(values: &[i64]) -> Result<i64> {
    values
        .iter()
        .try_fold(0i64, |acc, &v| acc.checked_add(v))
        .ok_or(Error::Overflow("partition size"))
}

/// Cumulative prevalences `(φ≥1, φ≥2, …)`: nonincreasing and nonnegative.
#[derive(Debug, Clone, PartialEq, Eq, Hash, Default, Serialize)]
#[serde(transparent)]
pub struct PrevalenceVector {
    values: Vec<i64>,
}

impl PrevalenceVector {
    pub fn new(values: Vec<i64>) -> Result<Self> {
        for (index, &value) in values.iter().enumerate() {
            if value < 0 || (index > 0 && value > values[index - 1]) {
                return Err(Error::InvalidPrevalence { index, value });
            }
        }
        Ok(Self { values })
    }

    pub fn values(&self) -> &[i64] {
        &self.values
    }

    pub fn into_values(self) -> Vec<i64> {
        self.values
    }

    pub fn len(&self) -> usize {
        self.values.len()
    }

    pub fn is_empty(&self) -> bool {
        self.values.is_empty()
    }

    /// The unique partition `q` with no part above `len()` whose prevalence
    /// vector is exactly `self`.
    ///
    /// Part `i` of `q` is the number of thresholds `r` with `φ≥r ≥ i`.
    pub fn conjugate(&self) -> IntegerPartition {
        let count = self.values.first().copied().unwrap_or(0);
        let mut parts = Vec::with_capacity(usize::try_from(count).unwrap_or(0));
        // values is nonincreasing, so the number of entries >= i shrinks as i grows
        let mut width = self.values.len();
        for i in 1..=count {
            while width > 0 && self.values[width - 1] < i {
                width -= 1;
            }
            parts.push(width as i64);
        }
        let size = self.values.iter().sum();
        IntegerPartition { parts, size }
    }
}

/// Distance between integer vectors of possibly different lengths; the
/// shorter one is padded with zeros.
pub fn l1_distance(a: &[i64], b: &[i64]) -> u64 {
    let common = a.len().min(b.len());
    let shared: u64 = a[..common]
        .iter()
        .zip(&b[..common])
        .map(|(x, y)| x.abs_diff(*y))
        .sum();
    let rest: u64 = a[common..]
        .iter()
        .chain(&b[common..])
        .map(|x| x.unsigned_abs())
        .sum();
    shared + rest
}

/// `φ≥(p)` restricted to the first `m` thresholds.
pub fn prevalence(p: &IntegerPartition, m: usize) -> PrevalenceVector {
    p.prevalence(m)
}

/// Checks and conjugates a raw prevalence vector.
pub fn conjugate(values: &[i64]) -> Result<IntegerPartition> {
    Ok(PrevalenceVector::new(values.to_vec())?.conjugate())
}

/// Integer-valued vector after noise; sign and monotonicity are not
/// guaranteed.
#[derive(Debug, Clone, PartialEq, Eq, Hash, Default, Serialize, Deserialize)]
#[serde(transparent)]
pub struct NoisedIntVector(pub Vec<i64>);

impl NoisedIntVector {
    pub fn values(&self) -> &[i64] {
        &self.0
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }
}

impl From<Vec<i64>> for NoisedIntVector {
    fn from(v: Vec<i64>) -> Self {
        Self(v)
    }
}
