use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rand_distr::StandardNormal;

use crate::pexit::db_to_linear;

/// Noise standard deviation for unit-energy BPSK at `es_n0_db`.
pub fn noise_sigma(es_n0_db: f64) -> f64 {
    (1.0 / (2.0 * db_to_linear(es_n0_db))).sqrt()
}

/// BPSK (`0 -> +1`, `1 -> -1`) over AWGN with standard deviation `sigma_n`.
/// Returns channel LLRs `2y / sigma_n^2`; punctured positions get exactly 0.
pub fn simulate_channel(sigma_n: f64, bits: &[u8], punctured: &[bool], seed: u64) -> Vec<f64> {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut out = vec![0.0; bits.len()];
    fill_llrs(&mut rng, sigma_n, bits, punctured, &mut out);
    out
}

pub(crate) fn fill_llrs<R: Rng>(rng: &mut R, sigma_n: f64, bits: &[u8], punctured: &[bool], out: &mut [f64]) {
    let scale = 2.0 / (sigma_n * sigma_n);
    for ((llr, &b), &p) in out.iter_mut().zip(bits).zip(punctured) {
        let x = if b & 1 == 0 { 1.0 } else { -1.0 };
        let noise: f64 = rng.sample(StandardNormal);
        // draw even for punctured bits so frames stay aligned
        *llr = if p { 0.0 } else { scale * (x + sigma_n * noise) };
    }
}
