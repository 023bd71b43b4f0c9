/// Maps a real vector onto the integer compositions of `h`.
///
/// Negative and non-finite coordinates are clamped to zero, the rest is
/// rescaled to sum to `h` and rounded by largest remainder (ties go to the
/// lower index). An all-zero input yields the most uniform composition.
/// Valid integer compositions are returned unchanged.
pub fn repair(raw: &[f64], h: u32) -> Vec<u32> {
    let n = raw.len();
    if n == 0 {
        return Vec::new();
    }
    let clamped: Vec<f64> = raw
        .iter()
        .map(|&x| if x.is_finite() && x > 0.0 { x } else { 0.0 })
        .collect();
    let total: f64 = clamped.iter().sum();
    let scaled: Vec<f64> = if total > 0.0 && total.is_finite() {
        clamped.iter().map(|&x| x * h as f64 / total).collect()
    } else {
        vec![h as f64 / n as f64; n]
    };

    let mut counts: Vec<u32> = scaled.iter().map(|&x| (x.floor() as u32).min(h)).collect();
    let assigned: u64 = counts.iter().map(|&c| c as u64).sum();
    if assigned > h as u64 {
        // rounding overshoot from huge inputs; fall back to exact trimming
        let mut excess = assigned - h as u64;
        for c in counts.iter_mut().rev() {
            let cut = (*c as u64).min(excess);
            *c -= cut as u32;
            excess -= cut;
        }
        return counts;
    }
    let deficit = (h as u64 - assigned) as usize;
    let mut order: Vec<usize> = (0..n).collect();
    order.sort_by(|&a, &b| {
        let ra = scaled[a] - scaled[a].floor();
        let rb = scaled[b] - scaled[b].floor();
        rb.total_cmp(&ra).then(a.cmp(&b))
    });
    for &i in order.iter().cycle().take(deficit) {
        counts[i] += 1;
    }
    counts
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;
    use rand::{Rng, SeedableRng};
    use rand_chacha::ChaCha8Rng;

    #[test]
    fn largest_remainder() {
        assert_eq!(repair(&[2.4, 5.6], 8), vec![2, 6]);
    }

    #[test]
    fn idempotent_on_compositions() {
        assert_eq!(repair(&[3.0, 5.0], 8), vec![3, 5]);
        assert_eq!(repair(&[0.0, 0.0, 8.0], 8), vec![0, 0, 8]);
    }

    #[test]
    fn all_zero_falls_back_to_uniform() {
        assert_eq!(repair(&[0.0, 0.0, 0.0], 8), vec![3, 3, 2]);
        assert_eq!(repair(&[-1.0, -4.0], 5), vec![3, 2]);
    }

    #[test]
    fn random_sweep() {
        let mut rng = ChaCha8Rng::seed_from_u64(1);
        for _ in 0..10_000 {
            let dim = rng.random_range(1..10);
            let h = rng.random_range(1..60);
            let raw: Vec<f64> = (0..dim).map(|_| rng.random_range(-5.0..20.0)).collect();
            let out = repair(&raw, h);
            assert_eq!(out.len(), dim);
            assert_eq!(out.iter().sum::<u32>(), h);
        }
    }

    proptest! {
        #[test]
        fn repair_is_a_projection(raw in prop::collection::vec(-1e6f64..1e6, 1..8), h in 1u32..100) {
            let once = repair(&raw, h);
            prop_assert_eq!(once.iter().sum::<u32>(), h);
            let as_f64: Vec<f64> = once.iter().map(|&c| c as f64).collect();
            prop_assert_eq!(repair(&as_f64, h), once);
        }
    }
}
