//! Finite-shot readout emulation with independent bit-flip errors.
//!
//! Each call draws from a ChaCha8 stream selected by `(seed, stream_index)`,
//! so grid points can be sampled in any order or in parallel with identical
//! results.

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::error::{Error, Result};

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct NoiseConfig {
    /// Measurement shots per grid point; 0 means exact expectations.
    pub shots: u32,
    /// Probability that a measured bit is reported flipped, in [0, 0.5).
    pub readout_flip_prob: f64,
    pub seed: Option<u64>,
}

impl NoiseConfig {
    /// Exact expectation values, no sampling.
    pub fn exact() -> Self {
        Self {
            shots: 0,
            readout_flip_prob: 0.0,
            seed: None,
        }
    }

    pub fn sampled(shots: u32, readout_flip_prob: f64, seed: u64) -> Self {
        Self {
            shots,
            readout_flip_prob,
            seed: Some(seed),
        }
    }

    pub fn validate(&self) -> Result<()> {
        if !(0.0..0.5).contains(&self.readout_flip_prob) {
            return Err(Error::InvalidArgument(format!(
                "readout flip probability must be in [0, 0.5), got {}",
                self.readout_flip_prob
            )));
        }
        if self.shots > 0 && self.seed.is_none() {
            return Err(Error::MissingSeed);
        }
        Ok(())
    }
}

impl Default for NoiseConfig {
    fn default() -> Self {
        Self::exact()
    }
}

/// Expected attenuation `(1 − 2p)^k` of a k-qubit parity under independent
/// readout flips with probability `p`.
pub fn attenuation_factor(k: u32, readout_flip_prob: f64) -> f64 {
    (1.0 - 2.0 * readout_flip_prob).powi(k as i32)
}

/// Monte Carlo estimate of the Z-parity over `parity_qubits`.
///
/// Draws `config.shots` basis outcomes from `probabilities`, flips each
/// measured bit independently with `config.readout_flip_prob`, and returns
/// `(even − odd) / shots`.
pub fn sample_parity(
    probabilities: &[f64],
    parity_qubits: &[usize],
    config: &NoiseConfig,
    stream_index: u64,
) -> Result<f64> {
    config.validate()?;
    if config.shots == 0 {
        return Err(Error::InvalidArgument(
            "shots = 0 requests exact expectations; use the exact path".into(),
        ));
    }
    let seed = config.seed.ok_or(Error::MissingSeed)?;
    let dim = probabilities.len();
    if dim == 0 || !dim.is_power_of_two() {
        return Err(Error::InvalidArgument(format!(
            "probability vector length {dim} is not a power of two"
        )));
    }
    if probabilities.iter().any(|&p| !(p >= 0.0)) {
        return Err(Error::InvalidArgument("negative or NaN probability".into()));
    }
    let total: f64 = probabilities.iter().sum();
    if (total - 1.0).abs() > 1e-9 {
        return Err(Error::Unnormalized(total));
    }
    let mut mask = 0usize;
    for &q in parity_qubits {
        if (1usize << q) >= dim {
            return Err(Error::InvalidArgument(format!("parity qubit {q} out of range")));
        }
        mask |= 1 << q;
    }
    if mask == 0 {
        return Err(Error::InvalidArgument("empty parity qubit set".into()));
    }

    let mut cdf = Vec::with_capacity(dim);
    let mut acc = 0.0;
    for &p in probabilities {
        acc += p;
        cdf.push(acc);
    }

    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    rng.set_stream(stream_index);
    let flip = config.readout_flip_prob;

    let mut even: i64 = 0;
    for _ in 0..config.shots {
        let u: f64 = rng.gen::<f64>() * total;
        let outcome = cdf.partition_point(|&c| c <= u).min(dim - 1);
        let mut parity = (outcome & mask).count_ones() & 1;
        if flip > 0.0 {
            for _ in parity_qubits {
                if rng.gen::<f64>() < flip {
                    parity ^= 1;
                }
            }
        }
        even += if parity == 0 { 1 } else { -1 };
    }
    Ok(even as f64 / config.shots as f64)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn attenuation_values() {
        assert_eq!(attenuation_factor(1, 0.0), 1.0);
        assert!((attenuation_factor(1, 0.1) - 0.8).abs() < 1e-15);
        assert!((attenuation_factor(3, 0.05) - 0.729).abs() < 1e-12);
    }

    #[test]
    fn deterministic_distribution() {
        let cfg = NoiseConfig::sampled(1000, 0.0, 7);
        assert_eq!(sample_parity(&[1.0, 0.0], &[0], &cfg, 0).unwrap(), 1.0);
        assert_eq!(sample_parity(&[0.0, 1.0], &[0], &cfg, 3).unwrap(), -1.0);
    }

    #[test]
    fn uniform_single_qubit_within_five_sigma() {
        let cfg = NoiseConfig::sampled(8192, 0.0, 11);
        let est = sample_parity(&[0.5, 0.5], &[0], &cfg, 0).unwrap();
        assert!(est.abs() <= 5.0 / 8192f64.sqrt(), "{est}");
    }

    #[test]
    fn same_stream_same_result() {
        let p = [0.1, 0.2, 0.3, 0.4];
        let cfg = NoiseConfig::sampled(500, 0.03, 99);
        let a = sample_parity(&p, &[0, 1], &cfg, 42).unwrap();
        let b = sample_parity(&p, &[0, 1], &cfg, 42).unwrap();
        assert_eq!(a, b);
        let others: Vec<f64> = (0..8)
            .map(|s| sample_parity(&p, &[0, 1], &cfg, s).unwrap())
            .collect();
        assert!(others.iter().any(|&v| v != a));
    }

    #[test]
    fn rejects_bad_input() {
        let cfg = NoiseConfig::sampled(10, 0.0, 1);
        assert!(matches!(
            sample_parity(&[0.5, 0.4], &[0], &cfg, 0),
            Err(Error::Unnormalized(_))
        ));
        assert!(sample_parity(&[1.0, 0.0], &[0], &NoiseConfig::exact(), 0).is_err());
        let unseeded = NoiseConfig {
            shots: 10,
            readout_flip_prob: 0.0,
            seed: None,
        };
        assert!(matches!(
            sample_parity(&[1.0, 0.0], &[0], &unseeded, 0),
            Err(Error::MissingSeed)
        ));
        assert!(NoiseConfig::sampled(10, 0.5, 1).validate().is_err());
        assert!(sample_parity(&[1.0, 0.0], &[1], &cfg, 0).is_err());
        assert!(sample_parity(&[1.0, 0.0], &[], &cfg, 0).is_err());
    }
}
