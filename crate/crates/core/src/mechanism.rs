//! Differentially private release of an integer partition.
//!
//! [`dp_anon_hist`] splits the input by rank at `m = ⌈√n⌉`: the top `m`
//! parts are noised directly, the remaining parts are noised through their
//! cumulative prevalences `φ≥1..φ≥m`. The map
//! `p ↦ (p_1..p_m, φ≥(p_{m+1}, …)_{[m]})` has ℓ1 sensitivity 1, so adding
//! `Geo(e^{−ε})` to all `2m` coordinates is ε-DP. Both halves are projected
//! back onto partitions and merged.
//!
//! Noise is drawn head coordinates first, then prevalence coordinates, one
//! 64-bit word each.

use std::fmt;
use std::str::FromStr;

use rand::RngCore;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::noise::{add_geo_noise, GeometricNoise};
use crate::partition::IntegerPartition;
use crate::projection::{project_prevalence, project_to_partition, trim_to_size};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum MechanismKind {
    /// Known size bound, rank split.
    Alg1,
    /// Unknown size: spend ε = 1 on the size, the rest on `Alg1`.
    Alg2,
    /// Noise every one of the first `n` counts.
    Baseline,
}

impl fmt::Display for MechanismKind {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            MechanismKind::Alg1 => "alg1",
            MechanismKind::Alg2 => "alg2",
            MechanismKind::Baseline => "baseline",
        })
    }
}

impl FromStr for MechanismKind {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s {
            "alg1" => Ok(Self::Alg1),
            "alg2" => Ok(Self::Alg2),
            "baseline" => Ok(Self::Baseline),
            other => Err(Error::Precondition(format!("unknown mechanism {other:?}"))),
        }
    }
}

/// Everything needed to reproduce a release.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct ReleaseConfig {
    pub epsilon: f64,
    pub size_bound: Option<u64>,
    pub mechanism_kind: MechanismKind,
    pub seed: u64,
}

impl ReleaseConfig {
    pub fn validate(&self) -> Result<()> {
        check_epsilon(self.epsilon)?;
        match (self.mechanism_kind, self.size_bound) {
            (MechanismKind::Alg1 | MechanismKind::Baseline, None) => Err(Error::Precondition(
                format!("{} needs a size bound n", self.mechanism_kind),
            )),
            (MechanismKind::Alg1 | MechanismKind::Baseline, Some(0)) => {
                Err(Error::Precondition("size bound n must be positive".into()))
            }
            (MechanismKind::Alg2, Some(_)) => Err(Error::Precondition(
                "alg2 estimates the size itself; do not pass a size bound".into(),
            )),
            (MechanismKind::Alg2, None) if self.epsilon < 2.0 => Err(Error::InvalidEpsilon(
                self.epsilon,
                "alg2 needs epsilon >= 2",
            )),
            _ => Ok(()),
        }
    }

    /// Runs the configured mechanism on `p` with randomness from `rng`.
    pub fn release<R: RngCore + ?Sized>(
        &self,
        p: &IntegerPartition,
        rng: &mut R,
    ) -> Result<IntegerPartition> {
        self.validate()?;
        match (self.mechanism_kind, self.size_bound) {
            (MechanismKind::Alg1, Some(n)) => dp_anon_hist(p, self.epsilon, n, rng),
            (MechanismKind::Baseline, Some(n)) => baseline_noise_all(p, self.epsilon, n, rng),
            (MechanismKind::Alg2, _) => dp_anon_hist_unknown_n(p, self.epsilon, rng),
            _ => unreachable!("validated above"),
        }
    }
}

/// `⌈√n⌉` in exact integer arithmetic.
pub fn ceil_sqrt(n: u64) -> u64 {
    let s = n.isqrt();
    if s * s < n {
        s + 1
    } else {
        s
    }
}

/// The calibrated distribution `Geo(e^{−ε})`.
pub fn noise_for_epsilon(epsilon: f64) -> Result<GeometricNoise> {
    check_epsilon(epsilon)?;
    let alpha = (-epsilon).exp();
    if alpha == 0.0 {
        return Err(Error::InvalidEpsilon(
            epsilon,
            "too large: e^-epsilon underflows",
        ));
    }
    GeometricNoise::new(alpha)
}

fn check_epsilon(epsilon: f64) -> Result<()> {
    if epsilon.is_finite() && epsilon > 0.0 {
        Ok(())
    } else {
        Err(Error::InvalidEpsilon(
            epsilon,
            "must be positive and finite",
        ))
    }
}

fn check_size(p: &IntegerPartition, n: u64) -> Result<()> {
    if n == 0 {
        return Err(Error::Precondition("size bound n must be positive".into()));
    }
    if p.size() as u64 > n {
        return Err(Error::SizeExceedsBound {
            size: p.size(),
            bound: n,
        });
    }
    Ok(())
}

fn rank_window(p: &IntegerPartition, m: usize) -> (Vec<i64>, Vec<i64>) {
    let (head, tail) = p.split_at_rank(m);
    (head, tail.prevalence(m).into_values())
}

/// The sensitivity-1 map `p ↦ (p_1..p_m, φ≥(p_{m+1}, …)_{[m]})` with
/// `m = ⌈√n⌉`.
pub fn sensitivity_map(p: &IntegerPartition, n: u64) -> Result<(Vec<i64>, Vec<i64>)> {
    check_size(p, n)?;
    Ok(rank_window(p, ceil_sqrt(n) as usize))
}

/// Noise, project and merge with window `m`. No size check: the privacy
/// argument only uses the sensitivity of the window map, which holds for
/// every input.
fn release_window<R: RngCore + ?Sized>(
    p: &IntegerPartition,
    noise: &GeometricNoise,
    m: usize,
    rng: &mut R,
) -> Result<IntegerPartition> {
    let (head, low_prev) = rank_window(p, m);
    let noised_head = add_geo_noise(&head, noise, rng);
    let noised_prev = add_geo_noise(&low_prev, noise, rng);
    let high = project_to_partition(noised_head.values());
    let low = project_prevalence(noised_prev.values());
    high.union(&low)
}

/// ε-DP release of a partition of size at most `n`.
///
/// Any ε > 0 gives ε-DP; the O(√n/e^ε) error guarantee is stated for
/// ε ≥ 1, so smaller values only log a warning.
pub fn dp_anon_hist<R: RngCore + ?Sized>(
    p: &IntegerPartition,
    epsilon: f64,
    n: u64,
    rng: &mut R,
) -> Result<IntegerPartition> {
    let noise = noise_for_epsilon(epsilon)?;
    check_size(p, n)?;
    if epsilon < 1.0 {
        log::warn!("epsilon {epsilon} < 1: private, but outside the low-privacy utility regime");
    }
    release_window(p, &noise, ceil_sqrt(n) as usize, rng)
}

/// ε-DP release without a known size bound (ε ≥ 2).
///
/// Draws `n̂ = size + Geo(1/e)` (one word), sets `n' = 2·max(1, n̂)`, runs
/// the rank-split release at budget ε − 1 with window `⌈√n'⌉`, and trims the
/// result to size `n'`.
pub fn dp_anon_hist_unknown_n<R: RngCore + ?Sized>(
    p: &IntegerPartition,
    epsilon: f64,
    rng: &mut R,
) -> Result<IntegerPartition> {
    check_epsilon(epsilon)?;
    if epsilon < 2.0 {
        return Err(Error::InvalidEpsilon(epsilon, "alg2 needs epsilon >= 2"));
    }
    let size_noise = noise_for_epsilon(1.0)?;
    let noise = noise_for_epsilon(epsilon - 1.0)?;
    let estimate = p.size().saturating_add(size_noise.sample(rng));
    let inflated = 2 * estimate.max(1) as u64;
    let released = release_window(p, &noise, ceil_sqrt(inflated) as usize, rng)?;
    Ok(trim_to_size(&released, inflated))
}

/// Noise-everything baseline: `Geo(e^{−ε})` on each of `p_1..p_n`, then
/// project.
pub fn baseline_noise_all<R: RngCore + ?Sized>(
    p: &IntegerPartition,
    epsilon: f64,
    n: u64,
    rng: &mut R,
) -> Result<IntegerPartition> {
    let noise = noise_for_epsilon(epsilon)?;
    check_size(p, n)?;
    let len = usize::try_from(n).map_err(|_| Error::Precondition("n too large".into()))?;
    let (head, _) = p.split_at_rank(len);
    let noised = add_geo_noise(&head, &noise, rng);
    Ok(project_to_partition(noised.values()))
}

/// Probability that `n' < n` in [`dp_anon_hist_unknown_n`] for an input of
/// size `n`, i.e. `Pr[Geo(1/e) < −n/2]` (and 0 when `n ≤ 2`, where `n' ≥ 2`
/// already covers the input).
pub fn undershoot_probability(n: u64) -> f64 {
    if n <= 2 {
        return 0.0;
    }
    let alpha = (-1.0f64).exp();
    // Geo(1/e) < -n/2  <=>  Geo(1/e) <= -(floor(n/2) + 1)
    alpha.powf((n / 2 + 1) as f64) / (1.0 + alpha)
}
