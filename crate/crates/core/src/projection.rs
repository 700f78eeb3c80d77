//! Projection of noisy integer vectors back onto partitions.
//!
//! The workhorse is ℓ1 isotonic regression onto nonincreasing, nonnegative
//! integer vectors: pool-adjacent-violators where each pooled block takes
//! the lower median of its members, followed by clipping at zero. Block
//! medians of integer data are integers, so the fit is exact. Among co-optimal
//! fits the lower median is always chosen, which makes the output
//! deterministic.

use std::cmp::Reverse;
use std::collections::BinaryHeap;

use serde::Serialize;

use crate::partition::{l1_distance, IntegerPartition, PrevalenceVector};

/// A nonincreasing nonnegative fit and its ℓ1 distance to the input.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct IsotonicFit {
    pub values: Vec<i64>,
    pub cost: u64,
}

/// Multiset with O(log n) lower-median queries: `lower` holds the smaller
/// half (one extra element when the count is odd).
#[derive(Debug, Default)]
struct MedianBlock {
    lower: BinaryHeap<i64>,
    upper: BinaryHeap<Reverse<i64>>,
}

impl MedianBlock {
    fn singleton(x: i64) -> Self {
        let mut b = Self::default();
        b.lower.push(x);
        b
    }

    fn len(&self) -> usize {
        self.lower.len() + self.upper.len()
    }

    fn median(&self) -> i64 {
        *self.lower.peek().expect("blocks are never empty")
    }

    fn insert(&mut self, x: i64) {
        if self.lower.peek().is_none_or(|&m| x <= m) {
            self.lower.push(x);
        } else {
            self.upper.push(Reverse(x));
        }
        if self.lower.len() > self.upper.len() + 1 {
            let moved = self.lower.pop().unwrap();
            self.upper.push(Reverse(moved));
        } else if self.upper.len() > self.lower.len() {
            let Reverse(moved) = self.upper.pop().unwrap();
            self.lower.push(moved);
        }
    }

    /// Smaller-into-larger merge keeps the total work at O(n log² n).
    fn absorb(mut self, other: Self) -> Self {
        let (mut big, small) = if self.len() >= other.len() {
            (std::mem::take(&mut self), other)
        } else {
            (other, self)
        };
        for x in small.lower {
            big.insert(x);
        }
        for Reverse(x) in small.upper {
            big.insert(x);
        }
        big
    }
}

/// Closest nonincreasing nonnegative integer vector in ℓ1, same length as
/// `v`.
pub fn isotonic_l1(v: &[i64]) -> IsotonicFit {
    // Walk the input from the back: a nonincreasing fit read backwards is a
    // nondecreasing fit, which is what the pooling below produces.
    let mut blocks: Vec<MedianBlock> = Vec::new();
    for &x in v.iter().rev() {
        blocks.push(MedianBlock::singleton(x));
        while blocks.len() >= 2 {
            let top = blocks.len() - 1;
            if blocks[top - 1].median() <= blocks[top].median() {
                break;
            }
            let last = blocks.pop().unwrap();
            let prev = blocks.pop().unwrap();
            blocks.push(prev.absorb(last));
        }
    }
    let mut values = Vec::with_capacity(v.len());
    for block in blocks.iter().rev() {
        let level = block.median().max(0);
        values.extend(std::iter::repeat_n(level, block.len()));
    }
    let cost = l1_distance(&values, v);
    IsotonicFit { values, cost }
}

/// Nearest partition (in ℓ1) among those with at most `v.len()` parts.
///
/// The size of the result is not capped; see [`trim_to_size`].
pub fn project_to_partition(v: &[i64]) -> IntegerPartition {
    IntegerPartition::from_sorted_nonnegative(isotonic_l1(v).values)
        .expect("isotonic fit is nonincreasing and nonnegative")
}

/// Nearest partition when `v` is read as noisy cumulative prevalences
/// `(φ≥1, …, φ≥len)`; every part of the result is at most `v.len()`.
pub fn project_prevalence(v: &[i64]) -> IntegerPartition {
    PrevalenceVector::new(isotonic_l1(v).values)
        .expect("isotonic fit is nonincreasing and nonnegative")
        .conjugate()
}

/// Removes `size − cap` units, smallest parts first, when the partition is
/// larger than `cap`. The result is at distance exactly `max(0, size − cap)`,
/// which no partition of size at most `cap` can beat.
pub fn trim_to_size(p: &IntegerPartition, cap: u64) -> IntegerPartition {
    let size = p.size() as u64;
    if size <= cap {
        return p.clone();
    }
    let mut excess = (size - cap) as i64;
    let mut parts = p.parts().to_vec();
    while excess > 0 {
        let last = parts.last_mut().expect("excess never exceeds the size");
        let take = (*last).min(excess);
        *last -= take;
        excess -= take;
        if *last == 0 {
            parts.pop();
        }
    }
    IntegerPartition::new(parts).expect("decrementing the smallest part keeps the order")
}

#[cfg(test)]
mod tests {
    use super::*;

    /// Exhaustive minimum over nonincreasing vectors with entries in
    /// `0..=hi`.
    fn brute_isotonic(v: &[i64], hi: i64) -> u64 {
        fn go(v: &[i64], i: usize, cap: i64, acc: u64, best: &mut u64) {
            if acc >= *best {
                return;
            }
            if i == v.len() {
                *best = acc;
                return;
            }
            for x in 0..=cap {
                go(v, i + 1, x, acc + x.abs_diff(v[i]), best);
            }
        }
        let mut best = u64::MAX;
        go(v, 0, hi, 0, &mut best);
        best
    }

    #[test]
    fn examples() {
        assert_eq!(
            isotonic_l1(&[5, 2]),
            IsotonicFit {
                values: vec![5, 2],
                cost: 0
            }
        );
        assert_eq!(
            isotonic_l1(&[3, 5, 2]),
            IsotonicFit {
                values: vec![3, 3, 2],
                cost: 2
            }
        );
        assert_eq!(
            isotonic_l1(&[-1, -2]),
            IsotonicFit {
                values: vec![0, 0],
                cost: 3
            }
        );
        assert_eq!(
            isotonic_l1(&[]),
            IsotonicFit {
                values: vec![],
                cost: 0
            }
        );
    }

    #[test]
    fn co_optimal_alternatives_have_same_cost() {
        for alt in [[4, 4, 2], [5, 5, 2]] {
            assert_eq!(l1_distance(&alt, &[3, 5, 2]), 2);
        }
        assert_eq!(brute_isotonic(&[3, 5, 2], 6), 2);
    }

    #[test]
    fn exhaustive_small_grid() {
        let mut v = [0i64; 5];
        for len in 0..=5usize {
            let total = 7usize.pow(len as u32);
            for code in 0..total {
                let mut c = code;
                for x in v.iter_mut().take(len) {
                    *x = (c % 7) as i64 - 2;
                    c /= 7;
                }
                let fit = isotonic_l1(&v[..len]);
                assert!(fit.values.windows(2).all(|w| w[0] >= w[1]));
                assert!(fit.values.iter().all(|&x| x >= 0));
                assert_eq!(fit.cost, brute_isotonic(&v[..len], 4), "{:?}", &v[..len]);
            }
        }
    }

    #[test]
    fn projections() {
        assert_eq!(project_to_partition(&[3, 5, 2]).parts(), &[3, 3, 2]);
        assert!(project_to_partition(&[0, 0, 0]).is_empty());
        assert!(project_to_partition(&[]).is_empty());

        assert_eq!(project_prevalence(&[3, 2, 0]).parts(), &[2, 2, 1]);
        assert_eq!(project_prevalence(&[2, 3]).parts(), &[2, 2]);
        assert!(project_prevalence(&[0, 0, 0, 0]).is_empty());
        assert!(project_prevalence(&[-4, 1]).is_empty());
    }

    #[test]
    fn trim_examples() {
        let p = IntegerPartition::new(vec![3, 2]).unwrap();
        assert_eq!(trim_to_size(&p, 10), p);
        let t = trim_to_size(&p, 4);
        assert_eq!(t.parts(), &[3, 1]);
        assert_eq!(l1_distance(t.parts(), p.parts()), 1);
        let t = trim_to_size(&p, 0);
        assert!(t.is_empty());
        assert_eq!(l1_distance(t.parts(), p.parts()), 5);
        let q = IntegerPartition::new(vec![4, 1, 1, 1]).unwrap();
        assert_eq!(trim_to_size(&q, 5).parts(), &[4, 1]);
    }

    #[test]
    fn long_flat_input_is_fast() {
        // worst case for naive block merging: one block absorbing everything
        let v: Vec<i64> = (0..200_000).map(|i| i % 3).collect();
        let fit = isotonic_l1(&v);
        assert_eq!(fit.values.len(), v.len());
        assert!(fit.values.windows(2).all(|w| w[0] >= w[1]));
        assert!(fit.cost <= l1_distance(&vec![1; v.len()], &v));
    }
}
