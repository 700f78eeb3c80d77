//! Exhaustive reference implementations. Slow by design; each has a hard
//! size limit and fails rather than truncating.

use anonhist::partition::{l1_distance, IntegerPartition};

use crate::error::{guardrail, Result};

pub const ENUMERATION_LIMIT: u64 = 40;
pub const PROJECTION_LIMIT: u64 = 20;

/// All partitions of size at most `n`, sorted lexicographically by parts.
pub fn enumerate_partitions(n: u64) -> Result<Vec<IntegerPartition>> {
    if n > ENUMERATION_LIMIT {
        return Err(guardrail("n", ENUMERATION_LIMIT, n));
    }
    let mut out = Vec::new();
    let mut prefix = Vec::new();
    extend(n as i64, n as i64, &mut prefix, &mut out);
    out.sort();
    Ok(out)
}

fn extend(left: i64, cap: i64, prefix: &mut Vec<i64>, out: &mut Vec<IntegerPartition>) {
    out.push(IntegerPartition::new(prefix.clone()).expect("generated parts are canonical"));
    for part in 1..=cap.min(left) {
        prefix.push(part);
        extend(left - part, part, prefix, out);
        prefix.pop();
    }
}

/// Exact ℓ1 projection of `v` onto partitions of size at most `n` by
/// scanning all of them. Ties go to the lexicographically smallest.
pub fn brute_force_project(v: &[i64], n: u64) -> Result<(IntegerPartition, u64)> {
    if n > PROJECTION_LIMIT {
        return Err(guardrail("n", PROJECTION_LIMIT, n));
    }
    let mut best: Option<(IntegerPartition, u64)> = None;
    for q in enumerate_partitions(n)? {
        let cost = l1_distance(q.parts(), v);
        if best.as_ref().is_none_or(|(_, c)| cost < *c) {
            best = Some((q, cost));
        }
    }
    Ok(best.expect("the empty partition is always feasible"))
}

/// Minimum ℓ1 distance from `v` to a nonincreasing, nonnegative vector of
/// the same length, found by trying every such vector with entries in
/// `[0, max(v)]`. Some optimum always takes values among the data, so the
/// range is enough. Limited to length 8.
pub fn brute_force_isotonic_cost(v: &[i64]) -> Result<u64> {
    if v.len() > 8 {
        return Err(guardrail("len", 8, v.len() as u64));
    }
    let top = v.iter().copied().max().unwrap_or(0).max(0);
    let mut best = u64::MAX;
    let mut candidate = Vec::with_capacity(v.len());
    descend(v, top, &mut candidate, &mut best);
    Ok(best)
}

fn descend(v: &[i64], cap: i64, candidate: &mut Vec<i64>, best: &mut u64) {
    if candidate.len() == v.len() {
        *best = (*best).min(l1_distance(candidate, v));
        return;
    }
    for x in 0..=cap {
        candidate.push(x);
        descend(v, x, candidate, best);
        candidate.pop();
    }
}
