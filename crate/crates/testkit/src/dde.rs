//! Discretized density evolution for regular `(dv, dc)` ensembles on the
//! BI-AWGN channel, all-zero codeword, BPSK `0 -> +1`.
//!
//! Densities live on the LLR grid `k * delta`, `|k| <= n`; the variable node
//! convolves with saturation at the grid edge, and the check node combines
//! two densities at a time through the quantized tanh rule. Coarse, but it
//! shares no code or approximation with the Gaussian-MI analysis.

#[derive(Debug, Clone)]
pub struct DiscretizedDe {
    delta: f64,
    n: usize,
    /// `table[a * width + b]`: bin of `2 atanh(tanh(a/2) tanh(b/2))`.
    table: Vec<u32>,
}

impl DiscretizedDe {
    pub fn new(delta: f64, max_llr: f64) -> Self {
        let n = (max_llr / delta).round() as usize;
        let width = 2 * n + 1;
        let mut table = vec![0u32; width * width];
        for a in 0..width {
            let ta = (0.5 * (a as f64 - n as f64) * delta).tanh();
            for b in 0..width {
                let tb = (0.5 * (b as f64 - n as f64) * delta).tanh();
                let l = 2.0 * (ta * tb).clamp(-1.0 + 1e-16, 1.0 - 1e-16).atanh();
                let k = (l / delta).round().clamp(-(n as f64), n as f64) as i64 + n as i64;
                table[a * width + b] = k as u32;
            }
        }
        Self { delta, n, table }
    }

    fn width(&self) -> usize {
        2 * self.n + 1
    }

    /// Quantized channel LLR density for noise standard deviation `sigma`.
    pub fn channel(&self, sigma: f64) -> Vec<f64> {
        let mean = 2.0 / (sigma * sigma);
        let sd = 2.0 / sigma;
        let mut p: Vec<f64> = (0..self.width())
            .map(|k| {
                let x = (k as f64 - self.n as f64) * self.delta;
                let z = (x - mean) / sd;
                (-0.5 * z * z).exp()
            })
            .collect();
        let total: f64 = p.iter().sum();
        p.iter_mut().for_each(|x| *x /= total);
        p
    }

    fn check_pair(&self, a: &[f64], b: &[f64]) -> Vec<f64> {
        let w = self.width();
        let mut out = vec![0.0; w];
        for (i, &pa) in a.iter().enumerate() {
            if pa == 0.0 {
                continue;
            }
            let row = &self.table[i * w..(i + 1) * w];
            for (&pb, &k) in b.iter().zip(row) {
                out[k as usize] += pa * pb;
            }
        }
        out
    }

    fn var_pair(&self, a: &[f64], b: &[f64]) -> Vec<f64> {
        let w = self.width();
        let n = self.n as i64;
        let mut out = vec![0.0; w];
        for (i, &pa) in a.iter().enumerate() {
            if pa == 0.0 {
                continue;
            }
            for (j, &pb) in b.iter().enumerate() {
                let k = (i as i64 + j as i64 - 2 * n).clamp(-n, n) + n;
                out[k as usize] += pa * pb;
            }
        }
        out
    }

    fn error_probability(&self, p: &[f64]) -> f64 {
        p[..self.n].iter().sum::<f64>() + 0.5 * p[self.n]
    }

    /// Runs density evolution; true once the variable-to-check error
    /// probability drops below `target`.
    pub fn converges(&self, dv: usize, dc: usize, sigma: f64, max_iter: usize, target: f64) -> bool {
        let ch = self.channel(sigma);
        let mut v = ch.clone();
        let mut prev = self.error_probability(&v);
        for _ in 0..max_iter {
            let mut c = v.clone();
            for _ in 1..dc - 1 {
                c = self.check_pair(&c, &v);
            }
            let mut next = ch.clone();
            for _ in 0..dv - 1 {
                next = self.var_pair(&next, &c);
            }
            // keep rounding from compounding: the mass deficit is raised
            // to the power (dc - 1)(dv - 1) every iteration
            let total: f64 = next.iter().sum();
            next.iter_mut().for_each(|x| *x /= total);
            v = next;
            let pe = self.error_probability(&v);
            if pe < target {
                return true;
            }
            // stuck at a non-zero fixed point
            if prev - pe <= 1e-6 * prev {
                return false;
            }
            prev = pe;
        }
        false
    }
}

/// `Eb/N0` threshold in dB of the regular `(dv, dc)` ensemble by bisection
/// over `[lo_db, hi_db]`; returns the upper bracket edge.
pub fn regular_threshold_eb_n0_db(dv: usize, dc: usize, de: &DiscretizedDe, lo_db: f64, hi_db: f64, precision_db: f64) -> f64 {
    let rate = 1.0 - dv as f64 / dc as f64;
    let sigma = |db: f64| (1.0 / (2.0 * rate * 10f64.powf(db / 10.0))).sqrt();
    let (mut lo, mut hi) = (lo_db, hi_db);
    assert!(!de.converges(dv, dc, sigma(lo), 5000, 1e-6), "lower edge already converges");
    assert!(de.converges(dv, dc, sigma(hi), 5000, 1e-6), "upper edge does not converge");
    while hi - lo > precision_db {
        let mid = 0.5 * (lo + hi);
        if de.converges(dv, dc, sigma(mid), 5000, 1e-6) {
            hi = mid;
        } else {
            lo = mid;
        }
    }
    hi
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn regular_three_six() {
        let de = DiscretizedDe::new(0.1, 25.0);
        let t = regular_threshold_eb_n0_db(3, 6, &de, 0.6, 1.6, 0.01);
        assert!((t - 1.10).abs() < 0.08, "{t}");
    }
}
