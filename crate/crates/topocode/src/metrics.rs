//! Image quality metrics and packet-length accounting.

use std::fmt;
use std::str::FromStr;

use crate::baselines::ConvCode;
use crate::image::GrayImage;

fn check_dims(a: &GrayImage, b: &GrayImage) {
    assert_eq!(
        (a.width(), a.height()),
        (b.width(), b.height()),
        "images must have equal dimensions"
    );
}

pub fn mse(a: &GrayImage, b: &GrayImage) -> f64 {
    check_dims(a, b);
    let sum: f64 = a
        .pixels()
        .iter()
        .zip(b.pixels())
        .map(|(x, y)| (x - y) * (x - y))
        .sum();
    sum / a.len() as f64
}

/// Peak signal-to-noise ratio in dB with peak 1.0. Identical images give
/// `f64::INFINITY`.
pub fn psnr(a: &GrayImage, b: &GrayImage) -> f64 {
    let e = mse(a, b);
    if e == 0.0 {
        f64::INFINITY
    } else {
        10.0 * (1.0 / e).log10()
    }
}

const SSIM_WINDOW: usize = 11;
const SSIM_SIGMA: f64 = 1.5;
const SSIM_K1: f64 = 0.01;
const SSIM_K2: f64 = 0.03;

fn gaussian_window(size: usize, sigma: f64) -> Vec<f64> {
    let c = (size as f64 - 1.0) / 2.0;
    let w: Vec<f64> = (0..size * size)
        .map(|i| {
            let (x, y) = ((i % size) as f64 - c, (i / size) as f64 - c);
            (-(x * x + y * y) / (2.0 * sigma * sigma)).exp()
        })
        .collect();
    let total: f64 = w.iter().sum();
    w.into_iter().map(|v| v / total).collect()
}

/// Structural similarity with an 11x11 Gaussian window (sigma 1.5),
/// `K1 = 0.01`, `K2 = 0.03`, dynamic range 1, averaged over every window
/// position that fits inside the image. Images smaller than the window use
/// the largest odd window that fits.
pub fn ssim(a: &GrayImage, b: &GrayImage) -> f64 {
    check_dims(a, b);
    let (w, h) = (a.width(), a.height());
    let mut size = SSIM_WINDOW.min(w).min(h);
    if size % 2 == 0 {
        size -= 1;
    }
    let kernel = gaussian_window(size, SSIM_SIGMA);
    let c1 = SSIM_K1 * SSIM_K1;
    let c2 = SSIM_K2 * SSIM_K2;
    let (pa, pb) = (a.pixels(), b.pixels());

    let mut total = 0.0;
    let mut count = 0usize;
    for y0 in 0..=h - size {
        for x0 in 0..=w - size {
            let (mut mu_a, mut mu_b) = (0.0, 0.0);
            let (mut aa, mut bb, mut ab) = (0.0, 0.0, 0.0);
            for dy in 0..size {
                for dx in 0..size {
                    let k = kernel[dy * size + dx];
                    let i = (y0 + dy) * w + x0 + dx;
                    let (va, vb) = (pa[i], pb[i]);
                    mu_a += k * va;
                    mu_b += k * vb;
                    aa += k * va * va;
                    bb += k * vb * vb;
                    ab += k * (va * vb);
                }
            }
            let var_a = aa - mu_a * mu_a;
            let var_b = bb - mu_b * mu_b;
            let cov = ab - mu_a * mu_b;
            let num = (2.0 * (mu_a * mu_b) + c1) * (2.0 * cov + c2);
            let den = (mu_a * mu_a + mu_b * mu_b + c1) * (var_a + var_b + c2);
            total += num / den;
            count += 1;
        }
    }
    total / count as f64
}

/// Transmission schemes compared by the experiments.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Scheme {
    Uncoded,
    Topocode,
    TopocodeNoBoundary,
    Ldpc,
    Conv,
}

impl Scheme {
    pub const ALL: [Scheme; 5] = [
        Scheme::Uncoded,
        Scheme::Topocode,
        Scheme::TopocodeNoBoundary,
        Scheme::Ldpc,
        Scheme::Conv,
    ];

    pub fn name(self) -> &'static str {
        match self {
            Scheme::Uncoded => "uncoded",
            Scheme::Topocode => "topocode",
            Scheme::TopocodeNoBoundary => "topocode-no-boundary",
            Scheme::Ldpc => "ldpc",
            Scheme::Conv => "conv",
        }
    }
}

impl fmt::Display for Scheme {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

impl FromStr for Scheme {
    type Err = String;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        Scheme::ALL
            .into_iter()
            .find(|sc| sc.name() == s)
            .ok_or_else(|| format!("unknown scheme {s:?}"))
    }
}

/// Code parameters needed to count channel bits per scheme.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct PacketAccounting {
    pub ldpc_n: usize,
    pub ldpc_k: usize,
    pub conv: ConvCode,
}

impl Default for PacketAccounting {
    fn default() -> Self {
        Self {
            ldpc_n: 1000,
            ldpc_k: 750,
            conv: ConvCode::standard(),
        }
    }
}

impl PacketAccounting {
    /// Bits on the channel for one `width x height` 8-bit image.
    ///
    /// Topocode schemes add `topocode_bits` to the raw payload; LDPC pads the
    /// payload to whole codewords; the convolutional code adds its tail.
    pub fn packet_length(
        &self,
        scheme: Scheme,
        width: usize,
        height: usize,
        topocode_bits: usize,
    ) -> usize {
        let data = 8 * width * height;
        match scheme {
            Scheme::Uncoded => data,
            Scheme::Topocode | Scheme::TopocodeNoBoundary => data + topocode_bits,
            Scheme::Ldpc => data.div_ceil(self.ldpc_k) * self.ldpc_n,
            Scheme::Conv => self.conv.encoded_len(data),
        }
    }
}
