//! Seeded Monte-Carlo estimates of `E‖A(p) − p‖₁`.

use std::time::Instant;

use anonhist::mechanism::{MechanismKind, ReleaseConfig};
use anonhist::noise::stream;
use anonhist::partition::{l1_distance, IntegerPartition};
use rayon::prelude::*;
use serde::Serialize;

use crate::error::Result;

/// Canonical test inputs of size at most `n`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, clap::ValueEnum, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum Shape {
    /// `(k, k−1, …, 1)` with the largest `k` such that `k(k+1)/2 ≤ n`.
    Staircase,
    /// `n` parts equal to 1.
    Flat,
    /// A single part `n`.
    Block,
}

impl Shape {
    pub const ALL: [Shape; 3] = [Shape::Staircase, Shape::Flat, Shape::Block];

    pub fn name(self) -> &'static str {
        match self {
            Shape::Staircase => "staircase",
            Shape::Flat => "flat",
            Shape::Block => "block",
        }
    }

    pub fn build(self, n: u64) -> IntegerPartition {
        let n = n as i64;
        let parts = match self {
            Shape::Staircase => {
                let mut k = 0;
                while (k + 1) * (k + 2) / 2 <= n {
                    k += 1;
                }
                (1..=k).rev().collect()
            }
            Shape::Flat => vec![1; n as usize],
            Shape::Block if n == 0 => Vec::new(),
            Shape::Block => vec![n],
        };
        IntegerPartition::new(parts).expect("shapes are canonical")
    }
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct ExperimentReport {
    pub mechanism_kind: MechanismKind,
    /// Size bound given to the mechanism, or the input size for `alg2`.
    pub n: u64,
    pub epsilon: f64,
    pub trials: u64,
    pub mean_error: f64,
    /// Sample standard deviation of the per-trial error.
    pub std_error: f64,
    pub max_error: u64,
    pub seed: u64,
    /// Present only when timing was requested.
    pub wall_time_ms: Option<u64>,
    /// Shape name or file the input came from.
    pub input: String,
}

/// Runs `trials` independent releases of `input`; trial `t` draws from
/// stream `t` of `config.seed`, so results do not depend on thread count.
pub fn run_error_experiment(
    config: &ReleaseConfig,
    input: &IntegerPartition,
    label: &str,
    trials: u64,
    timed: bool,
) -> Result<ExperimentReport> {
    config.validate()?;
    if trials == 0 {
        return Err(anonhist::Error::Precondition("trials must be positive".into()).into());
    }
    let start = Instant::now();
    let errors = (0..trials)
        .into_par_iter()
        .map(|t| {
            let released = config.release(input, &mut stream(config.seed, t))?;
            Ok(l1_distance(released.parts(), input.parts()))
        })
        .collect::<anonhist::Result<Vec<u64>>>()?;
    let elapsed = start.elapsed();

    let count = errors.len() as f64;
    let mean = errors.iter().map(|&e| e as f64).sum::<f64>() / count;
    let var = if errors.len() > 1 {
        errors
            .iter()
            .map(|&e| (e as f64 - mean).powi(2))
            .sum::<f64>()
            / (count - 1.0)
    } else {
        0.0
    };
    Ok(ExperimentReport {
        mechanism_kind: config.mechanism_kind,
        n: config.size_bound.unwrap_or(input.size() as u64),
        epsilon: config.epsilon,
        trials,
        mean_error: mean,
        std_error: var.sqrt(),
        max_error: errors.iter().copied().max().unwrap_or(0),
        seed: config.seed,
        wall_time_ms: timed.then_some(elapsed.as_millis() as u64),
        input: label.to_string(),
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn shapes() {
        assert_eq!(Shape::Staircase.build(10).parts(), &[4, 3, 2, 1]);
        assert_eq!(Shape::Staircase.build(9).parts(), &[3, 2, 1]);
        assert_eq!(Shape::Staircase.build(10_000).largest(), 140);
        assert_eq!(Shape::Flat.build(3).parts(), &[1, 1, 1]);
        assert_eq!(Shape::Block.build(7).parts(), &[7]);
        assert!(Shape::Block.build(0).is_empty());
    }

    #[test]
    fn single_trial_is_reproducible() {
        let config = ReleaseConfig {
            epsilon: 1.0,
            size_bound: Some(100),
            mechanism_kind: MechanismKind::Alg1,
            seed: 9,
        };
        let p = Shape::Staircase.build(100);
        let a = run_error_experiment(&config, &p, "staircase", 1, false).unwrap();
        let b = run_error_experiment(&config, &p, "staircase", 1, false).unwrap();
        assert_eq!(a, b);
        assert_eq!(a.std_error, 0.0);
        assert_eq!(a.max_error as f64, a.mean_error);
    }

    #[test]
    fn zero_trials_rejected() {
        let config = ReleaseConfig {
            epsilon: 1.0,
            size_bound: Some(10),
            mechanism_kind: MechanismKind::Alg1,
            seed: 0,
        };
        let err = run_error_experiment(&config, &IntegerPartition::empty(), "x", 0, false);
        assert_eq!(err.unwrap_err().exit_code(), 2);
    }
}
