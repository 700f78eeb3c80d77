#![allow(dead_code)]

use anonhist::partition::IntegerPartition;

/// Every partition of size at most `n`, by plain recursion on the largest
/// part.
pub fn partitions_up_to(n: i64) -> Vec<IntegerPartition> {
    fn go(remaining: i64, max_part: i64, prefix: &mut Vec<i64>, out: &mut Vec<Vec<i64>>) {
        out.push(prefix.clone());
        for part in (1..=max_part.min(remaining)).rev() {
            prefix.push(part);
            go(remaining - part, part, prefix, out);
            prefix.pop();
        }
    }
    let mut raw = Vec::new();
    go(n, n, &mut Vec::new(), &mut raw);
    raw.into_iter()
        .map(|parts| IntegerPartition::new(parts).unwrap())
        .collect()
}

/// Neighbors of `p` obtained by adding or removing one unit, staying sorted.
pub fn unit_neighbors(p: &IntegerPartition) -> Vec<IntegerPartition> {
    let parts = p.parts();
    let mut out = Vec::new();
    for i in 0..=parts.len() {
        let mut up = parts.to_vec();
        if i == parts.len() {
            up.push(1);
        } else {
            up[i] += 1;
        }
        if let Ok(q) = IntegerPartition::new(up) {
            out.push(q);
        }
        if i < parts.len() {
            let mut down = parts.to_vec();
            down[i] -= 1;
            if down[i] == 0 {
                down.remove(i);
            }
            if let Ok(q) = IntegerPartition::new(down) {
                out.push(q);
            }
        }
    }
    out
}
