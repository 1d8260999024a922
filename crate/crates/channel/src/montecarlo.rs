//! Seeded Monte-Carlo estimators used as the independent stochastic oracle
//! for the closed-form performance expressions.
//!
//! Trials are partitioned across independent streams, each seeded by a
//! documented hash of (master_seed, stream_index), so an estimate is a pure
//! function of (master_seed, stream_count, trials) no matter how the streams
//! are scheduled across threads. Partial sums are reduced pairwise to keep
//! floating-point drift bounded, and stream partials are combined in stream
//! order.

use crate::error::{ChannelError, Result};
use crate::fading::ShadowedRicianParams;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use rand_distr::Distribution;

/// Monte-Carlo run configuration.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct McConfig {
    /// Total number of draws, split across streams.
    pub trials: u64,
    /// Master seed; stream seeds derive from it.
    pub master_seed: u64,
    /// Number of independent streams (also the worker parallelism).
    pub stream_count: u32,
    /// Width of the acceptance band in standard errors.
    pub confidence_sigma: f64,
}

impl McConfig {
    pub fn new(trials: u64, master_seed: u64, stream_count: u32) -> Result<Self> {
        if trials < 1_000 {
            return Err(ChannelError::invalid(
                "Monte-Carlo runs need at least 10^3 trials",
            ));
        }
        if stream_count < 1 {
            return Err(ChannelError::invalid("at least one stream is required"));
        }
        Ok(Self {
            trials,
            master_seed,
            stream_count,
            confidence_sigma: 3.0,
        })
    }

    pub fn with_confidence_sigma(mut self, sigma: f64) -> Self {
        self.confidence_sigma = sigma;
        self
    }
}

impl Default for McConfig {
    fn default() -> Self {
        Self {
            trials: 1_000_000,
            master_seed: 1,
            stream_count: 8,
            confidence_sigma: 3.0,
        }
    }
}

/// A Monte-Carlo point estimate with its standard error.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct McEstimate {
    pub mean: f64,
    pub std_error: f64,
    pub trials: u64,
}

impl McEstimate {
    /// Whether `reference` lies within `sigma` standard errors of the
    /// estimate.
    pub fn agrees_with(&self, reference: f64, sigma: f64) -> bool {
        (self.mean - reference).abs() <= sigma * self.std_error
    }
}

// splitmix64 finalizer; the documented stream-seed derivation is
// seed_i = splitmix64(master .+ splitmix64(i)), with wrapping adds.
fn splitmix64(mut z: u64) -> u64 {
    z = z.wrapping_add(0x9E37_79B9_7F4A_7C15);
    z = (z ^ (z >> 30)).wrapping_mul(0xBF58_476D_1CE4_E5B9);
    z = (z ^ (z >> 27)).wrapping_mul(0x94D0_49BB_1331_11EB);
    z ^ (z >> 31)
}

/// Seed of stream `stream` under `master_seed`.
pub fn stream_seed(master_seed: u64, stream: u32) -> u64 {
    splitmix64(master_seed.wrapping_add(splitmix64(stream as u64)))
}

// Pairwise reduction of block sums.
fn pairwise_sum(values: &mut Vec<f64>) -> f64 {
    while values.len() > 1 {
        let mut merged = Vec::with_capacity(values.len().div_ceil(2));
        for pair in values.chunks(2) {
            merged.push(pair.iter().sum());
        }
        *values = merged;
    }
    values.first().copied().unwrap_or(0.0)
}

const BLOCK: u64 = 4096;

// Per-stream accumulation of sum and sum-of-squares with block-pairwise
// summation.
fn stream_moments<F>(
    params: &ShadowedRicianParams,
    seed: u64,
    count: u64,
    metric: &F,
) -> (f64, f64)
where
    F: Fn(f64) -> f64,
{
    let sampler = params.sampler();
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut block_sums = Vec::with_capacity((count / BLOCK + 1) as usize);
    let mut block_sqs = Vec::with_capacity((count / BLOCK + 1) as usize);
    let mut remaining = count;
    while remaining > 0 {
        let this_block = remaining.min(BLOCK);
        let mut s = 0.0;
        let mut s2 = 0.0;
        for _ in 0..this_block {
            let v = metric(sampler.sample(&mut rng));
            s += v;
            s2 += v * v;
        }
        block_sums.push(s);
        block_sqs.push(s2);
        remaining -= this_block;
    }
    (pairwise_sum(&mut block_sums), pairwise_sum(&mut block_sqs))
}

// Run the metric over all streams (threaded) and return (sum, sum_sq).
fn run_streams<F>(params: &ShadowedRicianParams, cfg: &McConfig, metric: F) -> (f64, f64)
where
    F: Fn(f64) -> f64 + Sync,
{
    let streams = cfg.stream_count as u64;
    let base = cfg.trials / streams;
    let remainder = cfg.trials % streams;
    let counts: Vec<u64> = (0..cfg.stream_count)
        .map(|i| base + u64::from((i as u64) < remainder))
        .collect();

    let mut partials: Vec<(f64, f64)> = Vec::with_capacity(counts.len());
    std::thread::scope(|scope| {
        let handles: Vec<_> = counts
            .iter()
            .enumerate()
            .map(|(i, &count)| {
                let metric = &metric;
                scope.spawn(move || {
                    stream_moments(params, stream_seed(cfg.master_seed, i as u32), count, metric)
                })
            })
            .collect();
        // joined in spawn order, so the reduction order is fixed
        for h in handles {
            partials.push(h.join().expect("stream worker panicked"));
        }
    });
    let mut sums: Vec<f64> = partials.iter().map(|p| p.0).collect();
    let mut sqs: Vec<f64> = partials.iter().map(|p| p.1).collect();
    (pairwise_sum(&mut sums), pairwise_sum(&mut sqs))
}

/// Estimate the outage probability P(lambda_t |h|^2 < gamma_th) as the
/// failure fraction, with the binomial standard error sqrt(p(1-p)/n).
pub fn estimate_outage(
    params: &ShadowedRicianParams,
    lambda_t: f64,
    gamma_th: f64,
    cfg: &McConfig,
) -> Result<McEstimate> {
    if !(lambda_t >= 0.0) {
        return Err(ChannelError::invalid("lambda_t must be non-negative"));
    }
    if !(gamma_th > 0.0) {
        return Err(ChannelError::invalid("outage threshold must be positive"));
    }
    let (sum, _) = run_streams(params, cfg, |h2| {
        if lambda_t * h2 < gamma_th {
            1.0
        } else {
            0.0
        }
    });
    let n = cfg.trials as f64;
    let p = sum / n;
    Ok(McEstimate {
        mean: p,
        std_error: (p * (1.0 - p) / n).sqrt(),
        trials: cfg.trials,
    })
}

/// Estimate the ergodic rate E[log2(1 + lambda_t |h|^2)] in bits/s/Hz.
pub fn estimate_ergodic_rate(
    params: &ShadowedRicianParams,
    lambda_t: f64,
    cfg: &McConfig,
) -> Result<McEstimate> {
    if !(lambda_t >= 0.0) {
        return Err(ChannelError::invalid("lambda_t must be non-negative"));
    }
    let (sum, sum_sq) = run_streams(params, cfg, |h2| (1.0 + lambda_t * h2).log2());
    Ok(moment_estimate(sum, sum_sq, cfg.trials))
}

/// Estimate the mean power E[|h|^2].
pub fn estimate_mean_power(params: &ShadowedRicianParams, cfg: &McConfig) -> Result<McEstimate> {
    let (sum, sum_sq) = run_streams(params, cfg, |h2| h2);
    Ok(moment_estimate(sum, sum_sq, cfg.trials))
}

fn moment_estimate(sum: f64, sum_sq: f64, trials: u64) -> McEstimate {
    let n = trials as f64;
    let mean = sum / n;
    let var = ((sum_sq - sum * sum / n) / (n - 1.0)).max(0.0);
    McEstimate {
        mean,
        std_error: (var / n).sqrt(),
        trials,
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn baseline() -> ShadowedRicianParams {
        ShadowedRicianParams::new(0.1, 0.8, 4).unwrap()
    }

    fn quick_cfg(seed: u64) -> McConfig {
        McConfig::new(100_000, seed, 4).unwrap()
    }

    #[test]
    fn config_guards() {
        assert!(McConfig::new(100, 1, 4).is_err());
        assert!(McConfig::new(10_000, 1, 0).is_err());
        assert!(McConfig::new(1_000, 0, 1).is_ok());
    }

    #[test]
    fn estimates_are_deterministic() {
        let p = baseline();
        let cfg = quick_cfg(42);
        let a = estimate_outage(&p, 10.0, 0.1, &cfg).unwrap();
        let b = estimate_outage(&p, 10.0, 0.1, &cfg).unwrap();
        assert_eq!(a, b);
        let c = estimate_ergodic_rate(&p, 10.0, &cfg).unwrap();
        let d = estimate_ergodic_rate(&p, 10.0, &cfg).unwrap();
        assert_eq!(c, d);
    }

    #[test]
    fn different_seeds_differ() {
        let p = baseline();
        let a = estimate_mean_power(&p, &quick_cfg(1)).unwrap();
        let b = estimate_mean_power(&p, &quick_cfg(2)).unwrap();
        assert_ne!(a.mean, b.mean);
    }

    #[test]
    fn stream_seeds_do_not_collide_for_small_indices() {
        let mut seen = std::collections::HashSet::new();
        for master in [0u64, 1, 42, u64::MAX] {
            for i in 0..64u32 {
                assert!(seen.insert(stream_seed(master, i)));
            }
        }
    }

    #[test]
    fn huge_snr_never_suffers_outage() {
        let est = estimate_outage(&baseline(), 1e12, 0.1, &quick_cfg(9)).unwrap();
        assert_eq!(est.mean, 0.0);
        assert_eq!(est.std_error, 0.0);
    }

    #[test]
    fn rayleigh_case_matches_exponential_outage() {
        // m = 1 normalized: P_out = 1 - exp(-gamma/lambda)
        let p = ShadowedRicianParams::normalized(4.0, 1).unwrap();
        let cfg = McConfig::new(200_000, 7, 4).unwrap();
        let lambda = 5.0;
        let gamma = 0.1;
        let est = estimate_outage(&p, lambda, gamma, &cfg).unwrap();
        let closed = 1.0 - (-gamma / lambda).exp();
        assert!(
            est.agrees_with(closed, 3.0),
            "MC {} +- {} vs {closed}",
            est.mean,
            est.std_error
        );
    }

    #[test]
    fn zero_snr_rate_is_exactly_zero() {
        let est = estimate_ergodic_rate(&baseline(), 0.0, &quick_cfg(3)).unwrap();
        assert_eq!(est.mean, 0.0);
        assert_eq!(est.std_error, 0.0);
    }

    #[test]
    fn rate_standard_error_shrinks_like_root_n() {
        let p = baseline();
        let small = McConfig::new(50_000, 11, 4).unwrap();
        let large = McConfig::new(200_000, 11, 4).unwrap();
        let se_small = estimate_ergodic_rate(&p, 10.0, &small).unwrap().std_error;
        let se_large = estimate_ergodic_rate(&p, 10.0, &large).unwrap().std_error;
        let ratio = se_small / se_large;
        assert!((ratio - 2.0).abs() < 0.4, "se ratio {ratio}");
    }

    #[test]
    fn mean_power_tracks_parameters() {
        let p = baseline();
        let est = estimate_mean_power(&p, &quick_cfg(5)).unwrap();
        assert!(
            est.agrees_with(p.mean_power(), 3.0),
            "MC {} +- {} vs {}",
            est.mean,
            est.std_error,
            p.mean_power()
        );

        let scatter_only = ShadowedRicianParams::new(0.35, 0.0, 2).unwrap();
        let est = estimate_mean_power(&scatter_only, &quick_cfg(6)).unwrap();
        assert!(est.agrees_with(0.7, 3.0));
    }

    #[test]
    fn stream_split_agrees_with_single_stream() {
        let p = baseline();
        let single = McConfig::new(120_000, 13, 1).unwrap();
        let split = McConfig::new(120_000, 13, 6).unwrap();
        let a = estimate_mean_power(&p, &single).unwrap();
        let b = estimate_mean_power(&p, &split).unwrap();
        let band = 3.0 * (a.std_error.powi(2) + b.std_error.powi(2)).sqrt();
        assert!(
            (a.mean - b.mean).abs() <= band,
            "single {} vs split {} (band {band})",
            a.mean,
            b.mean
        );
    }

    #[test]
    fn trials_partition_covers_all_draws() {
        // 10_007 trials over 8 streams: sums must use every draw; determinism
        // plus the exact trial count in the estimate covers this.
        let p = baseline();
        let cfg = McConfig::new(10_007, 17, 8).unwrap();
        let est = estimate_mean_power(&p, &cfg).unwrap();
        assert_eq!(est.trials, 10_007);
        assert!(est.std_error > 0.0);
    }
}
