use anonhist::mechanism::sensitivity_map;
use anonhist::partition::l1_distance;
use serde::Serialize;

use crate::error::{guardrail, Result};
use crate::oracle::enumerate_partitions;

pub const AUDIT_LIMIT: u64 = 12;

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct AuditReport {
    pub n: u64,
    pub pairs_checked: u64,
    pub max_image_distance: u64,
}

/// Largest ℓ1 distance between sensitivity-map images over all ordered pairs
/// of partitions of size at most `n` that are at ℓ1 distance exactly 1.
pub fn sensitivity_audit(n: u64) -> Result<AuditReport> {
    if n > AUDIT_LIMIT {
        return Err(guardrail("n", AUDIT_LIMIT, n));
    }
    let all = enumerate_partitions(n)?;
    let mut report = AuditReport {
        n,
        pairs_checked: 0,
        max_image_distance: 0,
    };
    if n == 0 {
        return Ok(report);
    }
    let images = all
        .iter()
        .map(|p| sensitivity_map(p, n))
        .collect::<anonhist::Result<Vec<_>>>()?;
    for (i, p) in all.iter().enumerate() {
        for (j, q) in all.iter().enumerate() {
            if l1_distance(p.parts(), q.parts()) != 1 {
                continue;
            }
            let (a, b) = (&images[i], &images[j]);
            let d = l1_distance(&a.0, &b.0) + l1_distance(&a.1, &b.1);
            report.pairs_checked += 1;
            report.max_image_distance = report.max_image_distance.max(d);
        }
    }
    Ok(report)
}
