//! Two-sided geometric (discrete Laplace) noise.
//!
//! `Geo(α)` puts mass `α^|i| (1 − α)/(1 + α)` on every integer `i`. Adding
//! it independently to each coordinate of a sensitivity-1 integer vector,
//! with `α = e^{−ε}`, is ε-DP. This module is only the distribution; the
//! mapping from ε to α lives with the mechanisms.
//!
//! # Randomness contract
//!
//! Every sample consumes exactly one `next_u64` from the stream. Bit 0 is
//! the sign (set means negative) and the upper 63 bits `k` give
//! `u = 1 − k/2^63 ∈ (0, 1]`; the magnitude is the largest `M ≥ 0` with
//! `Pr[|X| ≥ M] ≥ u`. An all-zero word therefore yields 0, which is what the
//! zero-noise stubs rely on.
//!
//! Seeded streams come from [`stream`]: ChaCha20 keyed with
//! `SeedableRng::seed_from_u64(seed)` and the ChaCha stream id set to the
//! stream index. Both steps are specified by `rand_core`/`rand_chacha` and
//! are platform independent.

use rand::{RngCore, SeedableRng};
use rand_chacha::ChaCha20Rng;

use crate::error::{Error, Result};

/// The seeded generator used for all releases and experiments.
pub type NoiseRng = ChaCha20Rng;

/// Deterministic stream number `index` under `seed`.
pub fn stream(seed: u64, index: u64) -> NoiseRng {
    let mut rng = ChaCha20Rng::seed_from_u64(seed);
    rng.set_stream(index);
    rng
}

/// A stream that always returns the same word. `ConstantStream(0)` makes every
/// geometric draw zero.
#[derive(Debug, Clone, Copy, Default)]
pub struct ConstantStream(pub u64);

impl RngCore for ConstantStream {
    fn next_u32(&mut self) -> u32 {
        self.0 as u32
    }

    fn next_u64(&mut self) -> u64 {
        self.0
    }

    fn fill_bytes(&mut self, dst: &mut [u8]) {
        let bytes = self.0.to_le_bytes();
        for (i, b) in dst.iter_mut().enumerate() {
            *b = bytes[i % 8];
        }
    }
}

/// An (ε, δ) privacy guarantee.
#[derive(Debug, Clone, Copy, PartialEq, serde::Serialize)]
pub struct PrivacyBudget {
    epsilon: f64,
    delta: f64,
}

impl PrivacyBudget {
    pub fn new(epsilon: f64, delta: f64) -> Result<Self> {
        if !(epsilon.is_finite() && epsilon > 0.0) {
            return Err(Error::InvalidEpsilon(
                epsilon,
                "must be positive and finite",
            ));
        }
        if !(0.0..1.0).contains(&delta) {
            return Err(Error::InvalidDelta(delta));
        }
        Ok(Self { epsilon, delta })
    }

    pub fn pure(epsilon: f64) -> Result<Self> {
        Self::new(epsilon, 0.0)
    }

    pub fn epsilon(&self) -> f64 {
        self.epsilon
    }

    pub fn delta(&self) -> f64 {
        self.delta
    }
}

/// Guarantee of an (ε, δ)-DP algorithm on inputs that are `k` neighbor steps
/// apart: `(kε, δ (e^{kε} − 1)/(e^ε − 1))`.
///
/// Fails when the resulting δ is 1 or more, since that guarantee is vacuous
/// and not a valid [`PrivacyBudget`].
pub fn group_privacy(budget: PrivacyBudget, k: u64) -> Result<PrivacyBudget> {
    if k == 0 {
        return Err(Error::Precondition(
            "group size k must be at least 1".into(),
        ));
    }
    if k == 1 {
        return Ok(budget);
    }
    let eps = budget.epsilon;
    let k_eps = k as f64 * eps;
    let delta = if budget.delta == 0.0 {
        0.0
    } else {
        // exp_m1 keeps precision when ε is small
        budget.delta * k_eps.exp_m1() / eps.exp_m1()
    };
    PrivacyBudget::new(k_eps, delta)
}

/// The two-sided geometric distribution `Geo(α)`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct GeometricNoise {
    alpha: f64,
}

impl GeometricNoise {
    pub fn new(alpha: f64) -> Result<Self> {
        if !(alpha > 0.0 && alpha < 1.0) {
            return Err(Error::InvalidAlpha(alpha));
        }
        Ok(Self { alpha })
    }

    pub fn alpha(&self) -> f64 {
        self.alpha
    }

    pub fn pmf(&self, i: i64) -> f64 {
        let a = self.alpha;
        a.powf(i.unsigned_abs() as f64) * (1.0 - a) / (1.0 + a)
    }

    /// `Pr[X ≤ k]`.
    pub fn cdf(&self, k: i64) -> f64 {
        let a = self.alpha;
        if k < 0 {
            a.powf(k.unsigned_abs() as f64) / (1.0 + a)
        } else {
            1.0 - a.powf(k as f64 + 1.0) / (1.0 + a)
        }
    }

    /// `Pr[X ≥ k]`; equals `cdf(−k)` by symmetry.
    pub fn survival(&self, k: i64) -> f64 {
        self.cdf(k.saturating_neg())
    }

    /// `E|X| = 2α/(1 − α²)`.
    pub fn expected_abs(&self) -> f64 {
        let a = self.alpha;
        2.0 * a / (1.0 - a * a)
    }

    pub fn sample<R: RngCore + ?Sized>(&self, rng: &mut R) -> i64 {
        let word = rng.next_u64();
        let negative = word & 1 == 1;
        // u = 1 - k/2^63 in (0, 1]; ln(u) computed via ln_1p for small k
        let k = (word >> 1) as f64;
        let ln_u = (-k / 9_223_372_036_854_775_808.0).ln_1p();
        // Pr[|X| >= M] = 2 α^M / (1 + α) for M >= 1
        let ln_threshold = ln_u + ((1.0 + self.alpha) / 2.0).ln();
        let magnitude = (ln_threshold / self.alpha.ln()).floor();
        let magnitude = if magnitude <= 0.0 {
            0
        } else {
            magnitude as i64
        };
        if negative {
            -magnitude
        } else {
            magnitude
        }
    }
}

/// One draw from `noise`, consuming exactly one 64-bit word.
pub fn geo_sample<R: RngCore + ?Sized>(noise: &GeometricNoise, rng: &mut R) -> i64 {
    noise.sample(rng)
}

/// Adds an independent draw to each coordinate, in coordinate order.
pub fn add_geo_noise<R: RngCore + ?Sized>(
    values: &[i64],
    noise: &GeometricNoise,
    rng: &mut R,
) -> crate::partition::NoisedIntVector {
    values
        .iter()
        .map(|&v| v.saturating_add(noise.sample(rng)))
        .collect::<Vec<_>>()
        .into()
}
