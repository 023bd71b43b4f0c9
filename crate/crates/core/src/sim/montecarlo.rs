use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use super::channel::{fill_llrs, noise_sigma};
use super::decoder::{SumProductDecoder, DEFAULT_DECODER_ITERATIONS};
use super::pcm::SparseParityCheckMatrix;
use crate::pexit::{es_to_eb_db, rational_to_f64};

/// Two-sided 95% normal quantile.
pub const Z_95: f64 = 1.959963984540054;

/// Frames decoded per parallel batch; stopping is decided frame by frame
/// afterwards, so results do not depend on the thread count.
const CHUNK: u64 = 32;

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
#[serde(default)]
pub struct MonteCarloConfig {
    pub max_frames: u64,
    /// Stop a point after this many frame errors; 0 disables the rule.
    pub target_frame_errors: u64,
    pub max_iter: usize,
    pub seed: u64,
}

impl Default for MonteCarloConfig {
    fn default() -> Self {
        Self {
            max_frames: 10_000,
            target_frame_errors: 100,
            max_iter: DEFAULT_DECODER_ITERATIONS,
            seed: 0,
        }
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct MonteCarloRecord {
    pub es_n0_db: f64,
    pub eb_n0_db: f64,
    pub frames: u64,
    pub frame_errors: u64,
    pub bit_errors: u64,
    /// `frames * N`: every position, punctured ones included.
    pub bits_counted: u64,
    pub fer: f64,
    pub fer_ci_lo: f64,
    pub fer_ci_hi: f64,
    pub ber: f64,
    pub avg_iters: f64,
    pub max_iters: usize,
}

/// Wilson score interval for `k` successes in `n` trials.
pub fn wilson_interval(k: u64, n: u64, z: f64) -> (f64, f64) {
    if n == 0 {
        return (0.0, 1.0);
    }
    let n_f = n as f64;
    let p = k as f64 / n_f;
    let z2 = z * z;
    let denom = 1.0 + z2 / n_f;
    let center = (p + z2 / (2.0 * n_f)) / denom;
    let half = z / denom * (p * (1.0 - p) / n_f + z2 / (4.0 * n_f * n_f)).sqrt();
    let lo = if k == 0 { 0.0 } else { (center - half).max(0.0) };
    let hi = if k == n { 1.0 } else { (center + half).min(1.0) };
    (lo, hi)
}

#[derive(Debug, Clone, Copy)]
struct FrameResult {
    frame_error: bool,
    bit_errors: u64,
    iterations: usize,
}

/// Generator for frame `frame` of SNR point `snr_index`.
pub fn frame_rng(seed: u64, snr_index: usize, frame: u64) -> ChaCha8Rng {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    rng.set_stream(((snr_index as u64) << 40) | frame);
    rng
}

/// All-zero-codeword simulation over an `Es/N0` grid.
pub fn monte_carlo(h: &SparseParityCheckMatrix, es_n0_grid: &[f64], cfg: &MonteCarloConfig) -> Vec<MonteCarloRecord> {
    let rate = rational_to_f64(h.design_rate());
    let zeros = vec![0u8; h.cols()];
    let mask = h.punctured_mask();
    let n_bits = h.cols() as u64;

    es_n0_grid
        .iter()
        .enumerate()
        .map(|(snr_index, &es)| {
            let sigma = noise_sigma(es);
            let (mut frames, mut frame_errors, mut bit_errors, mut iters, mut max_iters) = (0u64, 0u64, 0u64, 0u64, 0usize);
            'outer: while frames < cfg.max_frames {
                let end = (frames + CHUNK).min(cfg.max_frames);
                let results: Vec<FrameResult> = (frames..end)
                    .into_par_iter()
                    .map_init(
                        || (SumProductDecoder::new(h), vec![0.0; h.cols()]),
                        |(dec, llr), frame| {
                            let mut rng = frame_rng(cfg.seed, snr_index, frame);
                            fill_llrs(&mut rng, sigma, &zeros, &mask, llr);
                            let (success, iterations) = dec.run(llr, cfg.max_iter);
                            let errs = dec.decisions().iter().filter(|&&b| b != 0).count() as u64;
                            FrameResult {
                                frame_error: !success || errs > 0,
                                bit_errors: errs,
                                iterations,
                            }
                        },
                    )
                    .collect();
                for r in results {
                    frames += 1;
                    frame_errors += u64::from(r.frame_error);
                    bit_errors += r.bit_errors;
                    iters += r.iterations as u64;
                    max_iters = max_iters.max(r.iterations);
                    if cfg.target_frame_errors > 0 && frame_errors >= cfg.target_frame_errors {
                        break 'outer;
                    }
                }
            }
            let bits_counted = frames * n_bits;
            let (lo, hi) = wilson_interval(frame_errors, frames, Z_95);
            let ratio = |a: u64, b: u64| if b == 0 { 0.0 } else { a as f64 / b as f64 };
            log::info!("Es/N0 {es:.3} dB: {frame_errors}/{frames} frame errors");
            MonteCarloRecord {
                es_n0_db: es,
                eb_n0_db: es_to_eb_db(es, rate),
                frames,
                frame_errors,
                bit_errors,
                bits_counted,
                fer: ratio(frame_errors, frames),
                fer_ci_lo: lo,
                fer_ci_hi: hi,
                ber: ratio(bit_errors, bits_counted),
                avg_iters: ratio(iters, frames),
                max_iters,
            }
        })
        .collect()
}

#[cfg(test)]
mod tests {
    use super::*;
    use approx::assert_abs_diff_eq;

    fn hamming() -> SparseParityCheckMatrix {
        SparseParityCheckMatrix::from_rows(7, vec![vec![0, 1, 2, 4], vec![0, 1, 3, 5], vec![0, 2, 3, 6]], vec![]).unwrap()
    }

    #[test]
    fn wilson_reference_values() {
        // 10 of 100: center 0.1, interval from the closed form
        let (lo, hi) = wilson_interval(10, 100, Z_95);
        assert_abs_diff_eq!(lo, 0.0552291370606751, epsilon = 1e-12);
        assert_abs_diff_eq!(hi, 0.17436566150491345, epsilon = 1e-12);
        let (lo, hi) = wilson_interval(0, 50, Z_95);
        assert_eq!(lo, 0.0);
        assert!(hi > 0.0 && hi < 0.1);
    }

    #[test]
    fn zero_target_runs_all_frames() {
        let cfg = MonteCarloConfig {
            max_frames: 77,
            target_frame_errors: 0,
            max_iter: 20,
            seed: 1,
        };
        let rec = monte_carlo(&hamming(), &[0.0], &cfg);
        assert_eq!(rec[0].frames, 77);
    }

    #[test]
    fn stops_at_target_errors() {
        let cfg = MonteCarloConfig {
            max_frames: 10_000,
            target_frame_errors: 5,
            max_iter: 20,
            seed: 1,
        };
        let rec = &monte_carlo(&hamming(), &[-5.0], &cfg)[0];
        assert_eq!(rec.frame_errors, 5);
        assert!(rec.frames < 10_000);
        assert!(rec.ber <= rec.fer);
        assert!(rec.fer_ci_lo <= rec.fer && rec.fer <= rec.fer_ci_hi);
    }

    #[test]
    fn reproducible() {
        let cfg = MonteCarloConfig {
            max_frames: 200,
            target_frame_errors: 20,
            max_iter: 30,
            seed: 9,
        };
        let a = monte_carlo(&hamming(), &[0.0, 3.0], &cfg);
        let b = monte_carlo(&hamming(), &[0.0, 3.0], &cfg);
        assert_eq!(a, b);
    }
}
