//! On-disk partition formats.
//!
//! Line format: one positive integer per line, nonincreasing, each line
//! terminated by `\n`. An empty file is the empty partition.
//!
//! JSON format: a single array of nonnegative integers in any order; zeros
//! are dropped on ingest.

use crate::error::{Error, Result};
use crate::partition::IntegerPartition;

/// Parses either accepted format, dispatching on the first non-blank byte.
pub fn parse_partition(input: &str) -> Result<IntegerPartition> {
    if input.trim_start().starts_with('[') {
        parse_json(input)
    } else {
        parse_lines(input)
    }
}

pub fn parse_json(input: &str) -> Result<IntegerPartition> {
    let counts: Vec<i64> =
        serde_json::from_str(input).map_err(|e| Error::Parse(format!("json: {e}")))?;
    IntegerPartition::from_counts(counts)
}

pub fn parse_lines(input: &str) -> Result<IntegerPartition> {
    if input.is_empty() {
        return Ok(IntegerPartition::empty());
    }
    let Some(body) = input.strip_suffix('\n') else {
        return Err(Error::Parse("last line is not LF-terminated".into()));
    };
    let mut parts = Vec::new();
    for (lineno, line) in body.split('\n').enumerate() {
        let value: i64 = line.parse().map_err(|_| {
            Error::Parse(format!("line {}: {line:?} is not an integer", lineno + 1))
        })?;
        if value < 1 {
            return Err(Error::Parse(format!(
                "line {}: part {value} is not positive",
                lineno + 1
            )));
        }
        if parts.last().is_some_and(|&prev| value > prev) {
            return Err(Error::Parse(format!(
                "line {}: parts must be nonincreasing",
                lineno + 1
            )));
        }
        parts.push(value);
    }
    IntegerPartition::new(parts)
}

/// Renders a partition in the line format.
pub fn format_lines(p: &IntegerPartition) -> String {
    let mut out = String::new();
    for part in p.parts() {
        out.push_str(&part.to_string());
        out.push('\n');
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn line_format_round_trip() {
        let p = IntegerPartition::new(vec![5, 3, 3, 1]).unwrap();
        let text = format_lines(&p);
        assert_eq!(text, "5\n3\n3\n1\n");
        assert_eq!(parse_partition(&text).unwrap(), p);
        assert_eq!(parse_partition("").unwrap(), IntegerPartition::empty());
    }

    #[test]
    fn line_format_rejects_violations() {
        for bad in [
            "3\n5\n", "3\n0\n", "3\n-1\n", "3\n\n1\n", "3\n1", "3\r\n", "x\n", " 3\n",
        ] {
            assert!(parse_lines(bad).is_err(), "{bad:?} accepted");
        }
    }

    #[test]
    fn json_drops_zeros_and_sorts() {
        let p = parse_partition("[0, 2, 5, 0, 2]\n").unwrap();
        assert_eq!(p.parts(), &[5, 2, 2]);
        assert!(parse_partition("[1, -3]").is_err());
        assert!(parse_partition("[1, 2").is_err());
    }
}
