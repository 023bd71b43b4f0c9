use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use tbp_core::protograph::Protomatrix;
use tbp_core::sim::{
    construct_pcm, lift_protomatrix, monte_carlo, noise_sigma, simulate_channel, MonteCarloConfig, DEFAULT_MAX_PASSES,
};
use tbp_testkit::{degree_audit, four_cycle_row_pairs, random_lifting_instance};

#[test]
fn repaired_lifts_are_four_cycle_free() {
    let mut rng = ChaCha8Rng::seed_from_u64(21);
    for k in 0..8 {
        let (b, q) = random_lifting_instance(&mut rng);
        let (h, _) = construct_pcm(&b, q, k, DEFAULT_MAX_PASSES, 10).unwrap();
        assert_eq!(four_cycle_row_pairs(&h), 0, "{b:?} q={q}");
        degree_audit(&b, q, &h).unwrap();
    }
}

#[test]
fn dense_small_lift_is_repaired() {
    let b = Protomatrix::new(vec![vec![1, 1, 1]], vec![], 1).unwrap();
    let raw = lift_protomatrix(&b, 3, 4).unwrap();
    let (h, _) = construct_pcm(&b, 3, 4, DEFAULT_MAX_PASSES, 10).unwrap();
    assert_eq!(four_cycle_row_pairs(&h), 0);
    assert_eq!(h.row_degrees(), raw.row_degrees());
    assert_eq!(h.col_degrees(), raw.col_degrees());
}

#[test]
fn llr_moments() {
    let sigma = 0.8;
    let n = 1_000_000;
    let llr = simulate_channel(sigma, &vec![0u8; n], &vec![false; n], 99);
    let mean = llr.iter().sum::<f64>() / n as f64;
    let var = llr.iter().map(|x| (x - mean).powi(2)).sum::<f64>() / (n - 1) as f64;
    let (m0, v0) = (2.0 / (sigma * sigma), 4.0 / (sigma * sigma));
    assert!((mean / m0 - 1.0).abs() < 0.01, "mean {mean} vs {m0}");
    assert!((var / v0 - 1.0).abs() < 0.01, "variance {var} vs {v0}");
}

#[test]
fn punctured_positions_are_erased() {
    let llr = simulate_channel(noise_sigma(0.0), &[0, 1, 0], &[false, true, false], 1);
    assert_eq!(llr[1], 0.0);
}

#[test]
fn small_code_at_high_snr_is_error_free() {
    // 7 x 14
    let b = Protomatrix::new(vec![vec![3, 3]], vec![], 3).unwrap();
    let h = lift_protomatrix(&b, 7, 1).unwrap();
    assert_eq!((h.rows(), h.cols()), (7, 14));
    let cfg = MonteCarloConfig {
        max_frames: 10_000,
        target_frame_errors: 0,
        max_iter: 500,
        seed: 2,
    };
    let rec = &monte_carlo(&h, &[10.0], &cfg)[0];
    assert_eq!(rec.frames, 10_000);
    assert_eq!(rec.frame_errors, 0);
}

#[test]
fn fer_falls_across_the_waterfall() {
    let b = Protomatrix::new(vec![vec![3, 3]], vec![], 3).unwrap();
    let (h, _) = construct_pcm(&b, 200, 8, DEFAULT_MAX_PASSES, 10).unwrap();
    let cfg = MonteCarloConfig {
        max_frames: 2000,
        target_frame_errors: 50,
        max_iter: 100,
        seed: 6,
    };
    // Es/N0 grid for a rate-1/2 code: Eb/N0 0.5 dB and 3.0 dB
    let recs = monte_carlo(&h, &[-2.51, 0.0], &cfg);
    assert!(recs[1].fer_ci_hi < recs[0].fer_ci_lo, "{recs:?}");
    for r in &recs {
        assert!(r.ber <= r.fer);
        assert!(r.fer_ci_lo <= r.fer && r.fer <= r.fer_ci_hi);
    }
}
