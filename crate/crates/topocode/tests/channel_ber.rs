use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use statrs::function::erf::erfc;
use topocode::baselines::{ConvCode, LdpcCode};
use topocode::channel::{awgn, bpsk_modulate, demodulate, split_seed};

/// Gaussian tail probability.
fn q(x: f64) -> f64 {
    0.5 * erfc(x / std::f64::consts::SQRT_2)
}

fn random_bits(n: usize, seed: u64) -> Vec<u8> {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    (0..n).map(|_| rng.random_range(0..2u8)).collect()
}

fn errors(a: &[u8], b: &[u8]) -> usize {
    a.iter().zip(b).filter(|(x, y)| x != y).count()
}

#[test]
fn uncoded_ber_follows_the_q_function() {
    let n = 1_000_000;
    for (i, snr) in [0.0, 2.0, 4.0, 6.0].into_iter().enumerate() {
        let bits = random_bits(n, split_seed(11, i as u64));
        let rx = demodulate(&awgn(&bpsk_modulate(&bits), snr, split_seed(12, i as u64)));
        let ber = errors(&bits, &rx) as f64 / n as f64;
        let theory = q((2.0 * 10f64.powf(snr / 10.0)).sqrt());
        let rel = (ber - theory).abs() / theory;
        assert!(rel < 0.05, "{snr} dB: measured {ber}, expected {theory}");
    }
}

#[test]
fn noise_variance_matches_the_snr() {
    let snr = 3.0;
    let n = 200_000;
    let rx = awgn(&vec![1.0; n], snr, 5);
    let var = rx.iter().map(|s| (s - 1.0) * (s - 1.0)).sum::<f64>() / n as f64;
    let expected = 1.0 / (2.0 * 10f64.powf(snr / 10.0));
    assert!((var - expected).abs() / expected < 0.02, "{var} vs {expected}");
}

#[test]
fn coded_ber_beats_uncoded_at_4_db() {
    let snr = 4.0;
    let n = 120_000;
    let bits = random_bits(n, 21);
    let uncoded = demodulate(&awgn(&bpsk_modulate(&bits), snr, 22));
    let uncoded_ber = errors(&bits, &uncoded) as f64 / n as f64;

    let ldpc = LdpcCode::standard(0).unwrap();
    let rx = awgn(&bpsk_modulate(&ldpc.encode_stream(&bits)), snr, 23);
    let decoded = ldpc.decode_stream(&rx, n).unwrap();
    let ldpc_ber = errors(&bits, &decoded) as f64 / n as f64;

    let conv = ConvCode::standard();
    let rx = awgn(&bpsk_modulate(&conv.encode(&bits)), snr, 24);
    let conv_ber = errors(&bits, &conv.decode(&rx, n)) as f64 / n as f64;

    assert!(uncoded_ber > 0.005, "uncoded BER {uncoded_ber}");
    assert!(ldpc_ber < 0.1 * uncoded_ber, "LDPC {ldpc_ber} vs {uncoded_ber}");
    assert!(conv_ber < 0.1 * uncoded_ber, "conv {conv_ber} vs {uncoded_ber}");
}
