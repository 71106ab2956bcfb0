//! BPSK over an additive white Gaussian noise channel.
//!
//! Bit 0 maps to `+1` and bit 1 to `-1`. Symbols have unit energy and the
//! SNR is `Es/N0`: the noise added to each real symbol has variance
//! `1 / (2 * 10^(snr_db / 10))`, which gives an uncoded hard-decision bit
//! error rate of `Q(sqrt(2 * Es/N0))`.
//!
//! All randomness flows from explicit 64-bit seeds through ChaCha8, so equal
//! inputs and configs produce bit-identical outputs.

use rand::seq::index::sample;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rand_distr::StandardNormal;

use crate::image::{normalize_bytes, GrayImage, NormalizeMode};

/// Which pixels of an image the noise touches.
#[derive(Debug, Clone, Copy, PartialEq)]
pub enum NoisePattern {
    /// Every transmitted symbol.
    All,
    /// `ceil(fraction * W * H)` pixels drawn without replacement.
    PixelSubset(f64),
    /// `ceil(fraction * (W + H))` distinct rows or columns.
    LineSubset(f64),
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct ChannelConfig {
    /// `Es/N0` in dB; `f64::INFINITY` disables noise.
    pub snr_db: f64,
    pub seed: u64,
    pub pattern: NoisePattern,
}

impl ChannelConfig {
    pub fn new(snr_db: f64, seed: u64) -> Self {
        Self {
            snr_db,
            seed,
            pattern: NoisePattern::All,
        }
    }

    pub fn with_pattern(mut self, pattern: NoisePattern) -> Self {
        if let NoisePattern::PixelSubset(f) | NoisePattern::LineSubset(f) = pattern {
            assert!((0.0..=1.0).contains(&f), "noise fraction must lie in [0, 1]");
        }
        self.pattern = pattern;
        self
    }
}

/// Derives an independent seed for trial `index` (SplitMix64 finalizer over
/// `seed + index * golden gamma`).
pub fn split_seed(seed: u64, index: u64) -> u64 {
    let mut z = seed.wrapping_add(index.wrapping_add(1).wrapping_mul(0x9E37_79B9_7F4A_7C15));
    z = (z ^ (z >> 30)).wrapping_mul(0xBF58_476D_1CE4_E5B9);
    z = (z ^ (z >> 27)).wrapping_mul(0x94D0_49BB_1331_11EB);
    z ^ (z >> 31)
}

/// Standard deviation of the per-symbol noise at `snr_db`.
pub fn noise_sigma(snr_db: f64) -> f64 {
    if snr_db == f64::INFINITY {
        return 0.0;
    }
    (0.5 / 10f64.powf(snr_db / 10.0)).sqrt()
}

pub fn bpsk_modulate(bits: &[u8]) -> Vec<f64> {
    bits.iter()
        .map(|&b| if b == 0 { 1.0 } else { -1.0 })
        .collect()
}

/// Hard decision at zero; an exact zero decides for bit 0.
pub fn demodulate(symbols: &[f64]) -> Vec<u8> {
    symbols.iter().map(|&s| u8::from(s < 0.0)).collect()
}

/// Adds Gaussian noise to every symbol.
pub fn awgn(symbols: &[f64], snr_db: f64, seed: u64) -> Vec<f64> {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut out = symbols.to_vec();
    add_noise(&mut out, snr_db, &mut rng, |_| true);
    out
}

/// Adds noise in place to the symbols for which `noisy(index)` holds.
/// One normal sample is drawn per noisy symbol, in index order.
pub fn add_noise<R: Rng>(
    symbols: &mut [f64],
    snr_db: f64,
    rng: &mut R,
    noisy: impl Fn(usize) -> bool,
) {
    let sigma = noise_sigma(snr_db);
    if sigma == 0.0 {
        return;
    }
    for (i, s) in symbols.iter_mut().enumerate() {
        if noisy(i) {
            let n: f64 = rng.sample(StandardNormal);
            *s += sigma * n;
        }
    }
}

/// Big-endian bit expansion, most significant bit first.
pub fn bytes_to_bits(bytes: &[u8]) -> Vec<u8> {
    bytes
        .iter()
        .flat_map(|&b| (0..8).rev().map(move |k| (b >> k) & 1))
        .collect()
}

/// Inverse of [`bytes_to_bits`]; a trailing partial byte is dropped.
pub fn bits_to_bytes(bits: &[u8]) -> Vec<u8> {
    bits.chunks_exact(8)
        .map(|c| c.iter().fold(0u8, |acc, &b| (acc << 1) | (b & 1)))
        .collect()
}

/// Pixel mask selected by `pattern` on a `width x height` grid.
pub fn select_pixels<R: Rng>(
    width: usize,
    height: usize,
    pattern: NoisePattern,
    rng: &mut R,
) -> Vec<bool> {
    let n = width * height;
    match pattern {
        NoisePattern::All => vec![true; n],
        NoisePattern::PixelSubset(f) => {
            let k = ((f * n as f64).ceil() as usize).min(n);
            let mut mask = vec![false; n];
            for i in sample(rng, n, k) {
                mask[i] = true;
            }
            mask
        }
        NoisePattern::LineSubset(f) => {
            let lines = width + height;
            let k = ((f * lines as f64).ceil() as usize).min(lines);
            let mut mask = vec![false; n];
            // Candidates 0..height are rows, height.. are columns.
            for line in sample(rng, lines, k) {
                if line < height {
                    mask[line * width..(line + 1) * width].fill(true);
                } else {
                    let x = line - height;
                    for y in 0..height {
                        mask[y * width + x] = true;
                    }
                }
            }
            mask
        }
    }
}

/// Sends bytes through the channel with noise only on bytes where
/// `noisy_bytes[i]` is set. Returns the hard-decided bytes.
pub fn transmit_bytes<R: Rng>(
    bytes: &[u8],
    snr_db: f64,
    rng: &mut R,
    noisy_bytes: &[bool],
) -> Vec<u8> {
    assert_eq!(bytes.len(), noisy_bytes.len());
    let mut symbols = bpsk_modulate(&bytes_to_bits(bytes));
    add_noise(&mut symbols, snr_db, rng, |i| noisy_bytes[i / 8]);
    bits_to_bytes(&demodulate(&symbols))
}

/// Transmits an image's 8-bit pixels and renormalizes what arrives by its
/// own maximum.
pub fn transmit_image(image: &GrayImage, config: &ChannelConfig) -> GrayImage {
    let bytes = transmit_image_bytes(image, config);
    normalize_bytes(image.width(), image.height(), &bytes, NormalizeMode::PerImageMax)
        .expect("dimensions were valid on the way in")
}

/// Like [`transmit_image`] but returns the raw received bytes.
pub fn transmit_image_bytes(image: &GrayImage, config: &ChannelConfig) -> Vec<u8> {
    let mut rng = ChaCha8Rng::seed_from_u64(config.seed);
    let mask = select_pixels(image.width(), image.height(), config.pattern, &mut rng);
    transmit_bytes(&image.to_bytes(), config.snr_db, &mut rng, &mask)
}
