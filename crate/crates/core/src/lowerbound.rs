//! Encodings of bit vectors into partitions that preserve ℓ1 distance up to
//! scaling, plus the machinery built on them: the decode-nearest reduction
//! from private partition release to private bit-vector release, and packing
//! generation.
//!
//! The main encoding splits `m = R·L` bits into `L` levels of `R` bits. Level
//! `ℓ` has representative counts `p^ℓ_r = s^ℓ + (R − r)·d^ℓ` for
//! `r = 0..R`; bit `(ℓ, r)` selects `p^ℓ_r` (0) or `p^ℓ_{r−1}` (1), and the
//! chosen count is repeated `2^{ℓ−1}` times. Flipping one bit of level `ℓ`
//! moves the partition by exactly `2^{ℓ−1}·d^ℓ`, which lies in
//! `[Δ/(8m), Δ/(2m)]`.

use rand::RngCore;
use serde::Serialize;

use crate::error::{Error, Result};
use crate::noise::{group_privacy, PrivacyBudget};
use crate::partition::{l1_distance, IntegerPartition};

/// Largest `m` accepted by [`decode_exhaustive`].
pub const EXHAUSTIVE_DECODE_LIMIT: usize = 20;

/// Parameters of the level encoding for a given `(n, Δ)`.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct EncodingSpec {
    pub n: u64,
    pub delta: u64,
    #[serde(rename = "L")]
    pub levels: u32,
    #[serde(rename = "R")]
    pub per_level: u64,
    pub m: usize,
    /// `s^ℓ` for `ℓ = 1..=L`.
    #[serde(rename = "s")]
    pub base: Vec<u64>,
    /// `d^ℓ` for `ℓ = 1..=L`.
    #[serde(rename = "d")]
    pub step: Vec<u64>,
    /// `p^ℓ_r` for `ℓ = 1..=L`, `r = 0..=R`.
    pub p_grid: Vec<Vec<u64>>,
}

impl EncodingSpec {
    /// Builds and checks the encoding for `n ≥ Δ > 10√n`.
    ///
    /// `L = ⌊½ log₂(Δ/√n)⌋` is computed from the bit length of
    /// `⌊Δ/√n⌋ = isqrt(⌊Δ²/n⌋)`, so no floating point enters the parameter
    /// schedule.
    pub fn new(n: u64, delta: u64) -> Result<Self> {
        let (n128, d128) = (u128::from(n), u128::from(delta));
        if n == 0 || delta == 0 || delta > n || d128 * d128 <= 100 * n128 {
            return Err(Error::Precondition(format!(
                "need n >= delta > 10*sqrt(n), got n = {n}, delta = {delta}"
            )));
        }
        let ratio = (d128 * d128 / n128).isqrt();
        let levels = (127 - ratio.leading_zeros()) / 2;
        let per_level = n / delta;
        if levels == 0 || per_level == 0 {
            return Err(Error::EncodingInvariant(format!(
                "L = {levels}, R = {per_level}"
            )));
        }
        let m = usize::try_from(u64::from(levels) * per_level)
            .map_err(|_| Error::Precondition("m does not fit in memory".into()))?;

        let mut base = Vec::with_capacity(levels as usize);
        let mut step = Vec::with_capacity(levels as usize);
        let mut p_grid = Vec::with_capacity(levels as usize);
        for level in 1..=levels {
            // L * 2^l, exact
            let scale = u128::from(levels) << level;
            let s = (d128 / scale) as u64;
            let d = s / per_level;
            let (s128, dd) = (u128::from(s), u128::from(d));
            let r128 = u128::from(per_level);
            let rounding_ok = d128 <= 2 * scale * s128
                && scale * s128 <= d128
                && d128 <= 4 * scale * r128 * dd
                && scale * r128 * dd <= d128;
            if !rounding_ok {
                return Err(Error::EncodingInvariant(format!(
                    "rounding bounds fail at level {level}: s = {s}, d = {d}"
                )));
            }
            base.push(s);
            step.push(d);
            p_grid.push((0..=per_level).map(|r| s + (per_level - r) * d).collect());
        }

        let spec = Self {
            n,
            delta,
            levels,
            per_level,
            m,
            base,
            step,
            p_grid,
        };

        let bound =
            (n as f64 / delta as f64) * 0.5 * (d128 as f64 * d128 as f64 / n as f64).log2() / 8.0;
        if (spec.m as f64) < bound {
            return Err(Error::EncodingInvariant(format!(
                "m = {} is below {bound}",
                spec.m
            )));
        }
        for level in 1..levels as usize {
            if spec.p_grid[level][0] > spec.p_grid[level - 1][per_level as usize] {
                return Err(Error::EncodingInvariant(format!(
                    "levels {level} and {} overlap",
                    level + 1
                )));
            }
        }
        if spec.p_grid[levels as usize - 1][per_level as usize] == 0 {
            return Err(Error::EncodingInvariant("zero representative count".into()));
        }
        let max_size: u128 = (0..levels as usize)
            .map(|l| {
                (1u128 << l)
                    * spec.p_grid[l][..per_level as usize]
                        .iter()
                        .map(|&x| u128::from(x))
                        .sum::<u128>()
            })
            .sum();
        if max_size > n128 {
            return Err(Error::EncodingInvariant(format!(
                "all-ones encoding has size {max_size} > n"
            )));
        }
        Ok(spec)
    }

    /// Repetition count `2^{ℓ−1}` of level `ℓ` (1-based).
    pub fn repeats(&self, level: u32) -> usize {
        1 << (level - 1)
    }

    /// ℓ1 change caused by flipping one bit of level `ℓ`: `2^{ℓ−1}·d^ℓ`.
    pub fn flip_cost(&self, level: u32) -> u64 {
        (self.repeats(level) as u64) * self.step[level as usize - 1]
    }

    /// Largest single-bit image distance; the group size for privacy
    /// accounting of the reduction.
    pub fn max_flip_cost(&self) -> u64 {
        (1..=self.levels)
            .map(|l| self.flip_cost(l))
            .max()
            .unwrap_or(0)
    }

    /// Number of partition coordinates the encoding occupies, `(2^L − 1)·R`.
    pub fn encoded_len(&self) -> usize {
        ((1usize << self.levels) - 1) * self.per_level as usize
    }

    /// `(first position, repeats, value for bit 0, value for bit 1)` for
    /// every bit, in bit order.
    fn coordinates(&self) -> impl Iterator<Item = (usize, usize, u64, u64)> + '_ {
        let r_count = self.per_level as usize;
        (1..=self.levels).flat_map(move |level| {
            let reps = self.repeats(level);
            let offset = r_count * (reps - 1);
            let grid = &self.p_grid[level as usize - 1];
            (1..=r_count).map(move |r| (offset + (r - 1) * reps, reps, grid[r], grid[r - 1]))
        })
    }
}

pub fn build_encoding_spec(n: u64, delta: u64) -> Result<EncodingSpec> {
    EncodingSpec::new(n, delta)
}

/// The level encoding `ψ(z)`.
pub fn encode(spec: &EncodingSpec, z: &[bool]) -> Result<IntegerPartition> {
    if z.len() != spec.m {
        return Err(Error::WrongLength {
            expected: spec.m,
            got: z.len(),
        });
    }
    let mut parts = Vec::with_capacity(spec.encoded_len());
    for ((_, reps, zero, one), &bit) in spec.coordinates().zip(z) {
        let value = if bit { one } else { zero };
        parts.extend(std::iter::repeat_n(value as i64, reps));
    }
    let p = IntegerPartition::new(parts)
        .map_err(|e| Error::EncodingInvariant(format!("encoding is not a partition: {e}")))?;
    if p.size() as u64 > spec.n {
        return Err(Error::EncodingInvariant(format!(
            "encoding has size {} > n = {}",
            p.size(),
            spec.n
        )));
    }
    Ok(p)
}

/// The bit vector whose encoding is closest to `p` in ℓ1 (ties toward 0).
///
/// ‖ψ(z) − p‖₁ is a sum over positions, and each bit alone decides the values
/// at its own block of `2^{ℓ−1}` positions, so the minimum is found bit by
/// bit by comparing the cost of the two candidate values on those positions.
/// Positions past the encoding contribute a constant.
pub fn decode_nearest(spec: &EncodingSpec, p: &IntegerPartition) -> Vec<bool> {
    spec.coordinates()
        .map(|(start, reps, zero, one)| {
            let (mut cost0, mut cost1) = (0u64, 0u64);
            for pos in start..start + reps {
                let x = p.part(pos);
                cost0 += x.abs_diff(zero as i64);
                cost1 += x.abs_diff(one as i64);
            }
            cost1 < cost0
        })
        .collect()
}

/// Brute-force argmin over all `2^m` bit vectors. Ties go to the smallest
/// vector read as a binary number with bit `j` worth `2^j`, which agrees with
/// the per-bit tie rule of [`decode_nearest`].
pub fn decode_exhaustive(spec: &EncodingSpec, p: &IntegerPartition) -> Result<Vec<bool>> {
    if spec.m > EXHAUSTIVE_DECODE_LIMIT {
        return Err(Error::Guardrail {
            what: "m",
            limit: EXHAUSTIVE_DECODE_LIMIT as u64,
            got: spec.m as u64,
        });
    }
    let mut best: Option<(u64, u64)> = None;
    for code in 0u64..(1 << spec.m) {
        let z = bits_of(code, spec.m);
        let cost = l1_distance(encode(spec, &z)?.parts(), p.parts());
        if best.is_none_or(|(c, _)| cost < c) {
            best = Some((cost, code));
        }
    }
    Ok(bits_of(best.map_or(0, |(_, code)| code), spec.m))
}

fn bits_of(code: u64, m: usize) -> Vec<bool> {
    (0..m).map(|j| (code >> j) & 1 == 1).collect()
}

/// The exact isometry `u ↦ (2(m − i) + u_i)_{i ∈ [m]}` with `m = ⌊√n⌋`.
pub fn encode_lowpriv(u: &[bool], n: u64) -> Result<IntegerPartition> {
    let m = n.isqrt() as usize;
    if u.len() != m {
        return Err(Error::WrongLength {
            expected: m,
            got: u.len(),
        });
    }
    let values = u
        .iter()
        .enumerate()
        .map(|(i, &bit)| 2 * (m - 1 - i) as i64 + i64::from(bit))
        .collect();
    IntegerPartition::from_sorted_nonnegative(values)
}

pub fn hamming(a: &[bool], b: &[bool]) -> u64 {
    assert_eq!(a.len(), b.len(), "bit vectors of different lengths");
    a.iter().zip(b).filter(|(x, y)| x != y).count() as u64
}

/// `m` independent fair bits, 64 per word drawn.
pub fn random_bits<R: RngCore + ?Sized>(m: usize, rng: &mut R) -> Vec<bool> {
    let mut bits = Vec::with_capacity(m);
    while bits.len() < m {
        let word = rng.next_u64();
        let take = (m - bits.len()).min(64);
        bits.extend((0..take).map(|j| (word >> j) & 1 == 1));
    }
    bits
}

/// Parses a hex string into `m` bits, most significant bit of the first
/// digit first. Exactly `⌈m/4⌉` digits are required and padding bits must be
/// zero.
pub fn bits_from_hex(hex: &str, m: usize) -> Result<Vec<bool>> {
    let hex = hex.strip_prefix("0x").unwrap_or(hex);
    let digits = m.div_ceil(4);
    if hex.len() != digits {
        return Err(Error::Precondition(format!(
            "expected {digits} hex digits for {m} bits, got {}",
            hex.len()
        )));
    }
    let mut bits = Vec::with_capacity(digits * 4);
    for c in hex.chars() {
        let v = c
            .to_digit(16)
            .ok_or_else(|| Error::Precondition(format!("invalid hex digit {c:?}")))?;
        bits.extend((0..4).rev().map(|j| (v >> j) & 1 == 1));
    }
    if bits[m..].iter().any(|&b| b) {
        return Err(Error::Precondition(
            "nonzero padding bits after bit m".into(),
        ));
    }
    bits.truncate(m);
    Ok(bits)
}

pub fn bits_to_hex(bits: &[bool]) -> String {
    bits.chunks(4)
        .map(|chunk| {
            let v = chunk
                .iter()
                .enumerate()
                .fold(0u32, |acc, (j, &b)| acc | (u32::from(b) << (3 - j)));
            char::from_digit(v, 16).unwrap()
        })
        .collect()
}

pub fn bits_to_string(bits: &[bool]) -> String {
    bits.iter().map(|&b| if b { '1' } else { '0' }).collect()
}

/// Outcome of running a mechanism through the encode / release / decode
/// reduction.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct ProbeReport {
    pub trials: u64,
    pub m: usize,
    pub mean_error: f64,
    /// Largest ℓ1 image distance of a single bit flip.
    pub group_size: u64,
    /// Guarantee of the reduction on neighboring bit vectors; `None` when
    /// group privacy gives nothing (δ' ≥ 1).
    pub induced_budget: Option<PrivacyBudget>,
    /// `e^{−ε'}·m·½(1 − δ')` for the induced budget, 0 when vacuous.
    pub lemma2_floor: f64,
}

/// Mean Hamming error of `z ↦ decode(mechanism(encode(z)))` over uniform
/// `z`, reported next to the lower bound implied by the mechanism's budget.
pub fn reduction_error_probe<R, F>(
    mut mechanism: F,
    budget: PrivacyBudget,
    spec: &EncodingSpec,
    trials: u64,
    rng: &mut R,
) -> Result<ProbeReport>
where
    R: RngCore + ?Sized,
    F: FnMut(&IntegerPartition, &mut R) -> Result<IntegerPartition>,
{
    if trials == 0 {
        return Err(Error::Precondition("trials must be positive".into()));
    }
    let mut total = 0u64;
    for _ in 0..trials {
        let z = random_bits(spec.m, rng);
        let released = mechanism(&encode(spec, &z)?, rng)?;
        total += hamming(&decode_nearest(spec, &released), &z);
    }
    let group_size = spec.max_flip_cost();
    let induced = group_privacy(budget, group_size).ok();
    let lemma2_floor = induced.map_or(0.0, |b| {
        (-b.epsilon()).exp() * spec.m as f64 * 0.5 * (1.0 - b.delta())
    });
    Ok(ProbeReport {
        trials,
        m: spec.m,
        mean_error: total as f64 / trials as f64,
        group_size,
        induced_budget: induced,
        lemma2_floor,
    })
}

/// Certified pairwise-distance summary of a packing.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct Certification {
    pub count: usize,
    pub min_pairwise: Option<u64>,
    pub max_pairwise: Option<u64>,
    /// `⌈0.01·Δ⌉`.
    pub required_min: u64,
    /// `Δ`.
    pub required_max: u64,
    /// `⌈0.1·m⌉`.
    pub code_distance: u64,
    pub attempts: u64,
    pub spec: EncodingSpec,
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct Packing {
    pub partitions: Vec<IntegerPartition>,
    pub certification: Certification,
}

/// Greedy random code with relative distance 0.1, pushed through
/// [`encode`], with every pairwise ℓ1 distance checked to lie in
/// `[⌈0.01Δ⌉, Δ]`.
pub fn generate_packing<R: RngCore + ?Sized>(
    n: u64,
    delta: u64,
    attempts: u64,
    rng: &mut R,
) -> Result<Packing> {
    let spec = EncodingSpec::new(n, delta)?;
    let code_distance = (spec.m as u64).div_ceil(10);
    let words = spec.m.div_ceil(64);

    // codewords packed 64 bits per word for cheap Hamming distances
    let mut kept: Vec<Vec<u64>> = Vec::new();
    for _ in 0..attempts {
        let bits = random_bits(spec.m, rng);
        let packed = pack(&bits, words);
        let far = kept.iter().all(|other| {
            let d: u32 = other
                .iter()
                .zip(&packed)
                .map(|(a, b)| (a ^ b).count_ones())
                .sum();
            u64::from(d) >= code_distance
        });
        if far {
            kept.push(packed);
        }
    }

    let partitions = kept
        .iter()
        .map(|w| encode(&spec, &unpack(w, spec.m)))
        .collect::<Result<Vec<_>>>()?;
    let required_min = delta.div_ceil(100);
    let (mut lo, mut hi) = (None::<u64>, None::<u64>);
    for i in 0..partitions.len() {
        for j in i + 1..partitions.len() {
            let d = l1_distance(partitions[i].parts(), partitions[j].parts());
            if d < required_min || d > delta {
                return Err(Error::Certification(format!(
                    "partitions {i} and {j} are at distance {d}, outside [{required_min}, {delta}]"
                )));
            }
            lo = Some(lo.map_or(d, |x| x.min(d)));
            hi = Some(hi.map_or(d, |x| x.max(d)));
        }
    }
    Ok(Packing {
        certification: Certification {
            count: partitions.len(),
            min_pairwise: lo,
            max_pairwise: hi,
            required_min,
            required_max: delta,
            code_distance,
            attempts,
            spec,
        },
        partitions,
    })
}

fn pack(bits: &[bool], words: usize) -> Vec<u64> {
    let mut out = vec![0u64; words];
    for (j, &b) in bits.iter().enumerate() {
        out[j / 64] |= u64::from(b) << (j % 64);
    }
    out
}

fn unpack(words: &[u64], m: usize) -> Vec<bool> {
    (0..m)
        .map(|j| (words[j / 64] >> (j % 64)) & 1 == 1)
        .collect()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::noise::stream;

    #[test]
    fn large_spec_parameters() {
        let spec = EncodingSpec::new(1_000_000, 100_000).unwrap();
        assert_eq!((spec.levels, spec.per_level, spec.m), (3, 10, 30));
        assert_eq!(spec.base[0], 16_666);
        assert_eq!(spec.step[0], 1_666);
        assert_eq!(spec.p_grid[0][0], 33_326);
        assert_eq!(spec.base, vec![16_666, 8_333, 4_166]);
        assert_eq!(spec.step, vec![1_666, 833, 416]);
        // 30 >= (1/8) * 10 * log2(100)
        assert!(30.0 >= 10.0 * 100f64.log2() / 8.0);
    }

    #[test]
    fn rejects_bad_parameters() {
        assert!(EncodingSpec::new(10_000, 1_000).is_err()); // delta = 10 sqrt(n)
        assert!(EncodingSpec::new(10_000, 10_001).is_err());
        assert!(EncodingSpec::new(0, 0).is_err());
        assert!(EncodingSpec::new(10_000, 1_001).is_ok());
    }

    #[test]
    fn level_count_matches_float_formula_away_from_boundaries() {
        for n in [100u64, 1_000, 10_000, 123_457, 1_000_000] {
            for delta in (1..=40).map(|k| n * k / 40).filter(|&d| d * d > 100 * n) {
                let Ok(spec) = EncodingSpec::new(n, delta) else {
                    continue;
                };
                let x = 0.5 * (delta as f64 / (n as f64).sqrt()).log2();
                if (x - x.round()).abs() > 1e-9 {
                    assert_eq!(spec.levels, x.floor() as u32, "n = {n}, delta = {delta}");
                }
            }
        }
    }

    #[test]
    fn all_zero_encoding() {
        let spec = EncodingSpec::new(1_000_000, 100_000).unwrap();
        let p = encode(&spec, &[false; 30]).unwrap();
        assert_eq!(p.len(), spec.encoded_len());
        let expected: u64 = (1..=3u32)
            .map(|l| {
                spec.repeats(l) as u64
                    * (1..=10)
                        .map(|r| spec.p_grid[l as usize - 1][r])
                        .sum::<u64>()
            })
            .sum();
        assert_eq!(p.size() as u64, expected);
        assert!(expected <= 1_000_000);
    }

    #[test]
    fn unit_flip_costs() {
        let spec = EncodingSpec::new(1_000_000, 100_000).unwrap();
        let zero = encode(&spec, &vec![false; spec.m]).unwrap();
        for j in 0..spec.m {
            let mut z = vec![false; spec.m];
            z[j] = true;
            let level = (j as u64 / spec.per_level) as u32 + 1;
            let d = l1_distance(encode(&spec, &z).unwrap().parts(), zero.parts());
            assert_eq!(d, spec.flip_cost(level));
        }
    }

    #[test]
    fn distortion_bounds_random_pairs() {
        let spec = EncodingSpec::new(1_000_000, 100_000).unwrap();
        let mut rng = stream(11, 0);
        let m = spec.m as u64;
        let mut checked = 0;
        while checked < 200 {
            let (y, z) = (random_bits(spec.m, &mut rng), random_bits(spec.m, &mut rng));
            let h = hamming(&y, &z);
            if h == 0 {
                continue;
            }
            let d = l1_distance(
                encode(&spec, &y).unwrap().parts(),
                encode(&spec, &z).unwrap().parts(),
            );
            assert!(8 * m * d >= spec.delta * h);
            assert!(2 * m * d <= spec.delta * h);
            checked += 1;
        }
    }

    #[test]
    fn wrong_length_rejected() {
        let spec = EncodingSpec::new(10_000, 1_100).unwrap();
        assert!(matches!(
            encode(&spec, &[true]),
            Err(Error::WrongLength {
                expected: 9,
                got: 1
            })
        ));
        assert!(encode_lowpriv(&[true, false], 9).is_err());
    }

    #[test]
    fn decode_round_trip_and_ties() {
        let spec = EncodingSpec::new(10_000, 1_100).unwrap();
        let mut rng = stream(5, 0);
        for _ in 0..50 {
            let z = random_bits(spec.m, &mut rng);
            assert_eq!(decode_nearest(&spec, &encode(&spec, &z).unwrap()), z);
        }
        // level 1 has a single position per bit; put it halfway between the
        // two candidates of bit 0
        let mut parts = encode(&spec, &vec![false; spec.m]).unwrap().into_parts();
        let (lo, hi) = (spec.p_grid[0][1] as i64, spec.p_grid[0][0] as i64);
        assert_eq!(
            (hi - lo) % 2,
            1,
            "choose a spec with an odd gap for this test"
        );
        parts[0] = (lo + hi) / 2; // cost to lo is one less than to hi: bit 0
        let p = IntegerPartition::new(parts.clone()).unwrap();
        assert!(!decode_nearest(&spec, &p)[0]);
        parts[0] += 1; // now strictly closer to hi
        let p = IntegerPartition::new(parts).unwrap();
        assert!(decode_nearest(&spec, &p)[0]);
    }

    #[test]
    fn exact_tie_goes_to_zero() {
        // n = 10^4, delta = 5000: L = 2, R = 2; level 2 bits cover two positions
        let spec = EncodingSpec::new(10_000, 5_000).unwrap();
        assert_eq!((spec.levels, spec.per_level), (2, 2));
        let mut parts = encode(&spec, &vec![false; spec.m]).unwrap().into_parts();
        let (lo, hi) = (spec.p_grid[1][1] as i64, spec.p_grid[1][0] as i64);
        // positions 2 and 3 belong to bit (level 2, r = 1): one at each
        // candidate makes both choices cost hi - lo
        parts[2] = hi;
        parts[3] = lo;
        let p = IntegerPartition::new(parts).unwrap();
        assert!(!decode_nearest(&spec, &p)[2]);
        assert!(!decode_exhaustive(&spec, &p).unwrap()[2]);
    }

    #[test]
    fn exhaustive_guardrail() {
        let spec = EncodingSpec::new(10_000, 1_100).unwrap();
        assert!(decode_exhaustive(&spec, &IntegerPartition::empty()).is_ok());
        let big = EncodingSpec::new(1_000_000, 20_000).unwrap();
        assert!(big.m > EXHAUSTIVE_DECODE_LIMIT);
        assert!(matches!(
            decode_exhaustive(&big, &IntegerPartition::empty()),
            Err(Error::Guardrail { .. })
        ));
    }

    #[test]
    fn lowpriv_examples() {
        let p = encode_lowpriv(&[true, false, true], 9).unwrap();
        assert_eq!(p.parts(), &[5, 2, 1]);
        assert_eq!(p.size(), 8);
        assert_eq!(encode_lowpriv(&[false; 3], 9).unwrap().parts(), &[4, 2]);
        assert_eq!(encode_lowpriv(&[false; 3], 15).unwrap().parts(), &[4, 2]);
    }

    #[test]
    fn lowpriv_isometry_m3() {
        for a in 0..8u64 {
            for b in 0..8u64 {
                let (u, v) = (bits_of(a, 3), bits_of(b, 3));
                let d = l1_distance(
                    encode_lowpriv(&u, 9).unwrap().parts(),
                    encode_lowpriv(&v, 9).unwrap().parts(),
                );
                assert_eq!(d, hamming(&u, &v));
            }
        }
    }

    #[test]
    fn hex_round_trip() {
        let bits = bits_from_hex("a8", 5).unwrap();
        assert_eq!(bits, vec![true, false, true, false, true]);
        assert_eq!(bits_to_hex(&bits), "a8");
        assert!(bits_from_hex("a9", 5).is_err());
        assert!(bits_from_hex("a", 5).is_err());
        assert!(bits_from_hex("zz", 5).is_err());
        assert_eq!(bits_to_string(&bits), "10101");
    }

    #[test]
    fn probe_identity_and_constant() {
        let spec = EncodingSpec::new(10_000, 1_100).unwrap();
        let budget = PrivacyBudget::pure(1.0).unwrap();
        let mut rng = stream(1, 0);
        let id = reduction_error_probe(|p, _| Ok(p.clone()), budget, &spec, 100, &mut rng).unwrap();
        assert_eq!(id.mean_error, 0.0);
        assert_eq!(id.group_size, 61);

        let fixed = encode(&spec, &vec![false; spec.m]).unwrap();
        let c = reduction_error_probe(|_, _| Ok(fixed.clone()), budget, &spec, 4_000, &mut rng)
            .unwrap();
        // Hamming weight of a uniform 9-bit vector: mean 4.5, sd 1.5
        assert!((c.mean_error - 4.5).abs() < 4.0 * 1.5 / (4_000f64).sqrt());
    }

    #[test]
    fn small_packing_is_certified() {
        let mut rng = stream(2, 0);
        let pack = generate_packing(10_000, 1_100, 2_000, &mut rng).unwrap();
        let c = &pack.certification;
        assert_eq!(c.count, pack.partitions.len());
        assert!(c.count > 1);
        assert!(c.min_pairwise.unwrap() >= 11);
        assert!(c.max_pairwise.unwrap() <= 1_100);
    }
}
