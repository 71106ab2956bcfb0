//! Seeded experiment runs.
//!
//! Every trial draws its randomness from `split_seed(spec.seed, image)`, so
//! a run is a pure function of its spec and the dataset. Trials run in
//! parallel and are collected in input order.

use std::fmt;
use std::path::PathBuf;
use std::str::FromStr;

use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;
use serde_json::{json, Value};
use topocode::baselines::{ConvCode, LdpcCode};
use topocode::channel::{
    add_noise, bits_to_bytes, bpsk_modulate, bytes_to_bits, select_pixels,
    split_seed, transmit_bytes, ChannelConfig, NoisePattern,
};
use topocode::codec::{decode_packet, encode_packet, PacketLayout};
use topocode::diagram::{dequantize, quantize};
use topocode::image::normalize_bytes;
use topocode::metrics::{psnr, ssim, PacketAccounting, Scheme};
use topocode::pipeline::{correct, crop_interior, detect, CorrectionConfig, DetectionConfig};
use topocode::transport::{total_distance, Order};
use topocode::{diagram_of, GrayImage, NormalizeMode, Orientation};

use crate::datasets::{load_idx, load_pgm_dir, synthetic_glyphs};
use crate::error::HarnessError;

/// PSNR of identical images is infinite; means use this ceiling instead.
pub const PSNR_CAP_DB: f64 = 100.0;

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Experiment {
    DetectSingle,
    DetectBatch,
    CorrectCompare,
    SnrSweep,
}

impl Experiment {
    pub const ALL: [Experiment; 4] = [
        Experiment::DetectSingle,
        Experiment::DetectBatch,
        Experiment::CorrectCompare,
        Experiment::SnrSweep,
    ];

    pub fn name(self) -> &'static str {
        match self {
            Experiment::DetectSingle => "detect-single",
            Experiment::DetectBatch => "detect-batch",
            Experiment::CorrectCompare => "correct-compare",
            Experiment::SnrSweep => "snr-sweep",
        }
    }

    fn is_detection(self) -> bool {
        matches!(self, Experiment::DetectSingle | Experiment::DetectBatch)
    }
}

impl fmt::Display for Experiment {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

impl FromStr for Experiment {
    type Err = HarnessError;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        Experiment::ALL
            .into_iter()
            .find(|e| e.name() == s)
            .ok_or_else(|| HarnessError::ConfigInvalid(format!("unknown experiment {s:?}")))
    }
}

#[derive(Debug, Clone, PartialEq)]
pub enum Dataset {
    /// Procedural glyphs drawn from this seed.
    Synthetic { seed: u64 },
    Idx(PathBuf),
    PgmDir(PathBuf),
}

impl Dataset {
    /// The first `count` images, snapped to the 8-bit grid they are
    /// transmitted on so that a clean channel returns them exactly.
    pub fn load(&self, count: usize) -> Result<Vec<GrayImage>, HarnessError> {
        let mut images = match self {
            Dataset::Synthetic { seed } => synthetic_glyphs(count, *seed),
            Dataset::Idx(path) => load_idx(path)?,
            Dataset::PgmDir(path) => load_pgm_dir(path)?,
        };
        if images.len() < count {
            return Err(HarnessError::ConfigInvalid(format!(
                "dataset holds {} images, {count} requested",
                images.len()
            )));
        }
        images.truncate(count);
        images
            .iter()
            .map(|img| Ok(GrayImage::from_bytes(img.width(), img.height(), &img.to_bytes())?))
            .collect()
    }

    /// `synthetic[:seed]`, `idx:<path>` or `pgm:<dir>`.
    pub fn parse(s: &str) -> Result<Self, HarnessError> {
        if s == "synthetic" {
            return Ok(Dataset::Synthetic { seed: 0 });
        }
        if let Some(seed) = s.strip_prefix("synthetic:") {
            return seed
                .parse()
                .map(|seed| Dataset::Synthetic { seed })
                .map_err(|_| HarnessError::ConfigInvalid(format!("bad synthetic seed {seed:?}")));
        }
        if let Some(p) = s.strip_prefix("idx:") {
            return Ok(Dataset::Idx(p.into()));
        }
        if let Some(p) = s.strip_prefix("pgm:") {
            return Ok(Dataset::PgmDir(p.into()));
        }
        Err(HarnessError::ConfigInvalid(format!(
            "dataset {s:?} must be synthetic[:seed], idx:<file> or pgm:<dir>"
        )))
    }
}

impl fmt::Display for Dataset {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Dataset::Synthetic { seed } => write!(f, "synthetic:{seed}"),
            Dataset::Idx(p) => write!(f, "idx:{}", p.display()),
            Dataset::PgmDir(p) => write!(f, "pgm:{}", p.display()),
        }
    }
}

/// `all`, `pixels:<fraction>` or `lines:<fraction>`.
pub fn parse_pattern(s: &str) -> Result<NoisePattern, HarnessError> {
    let bad = || HarnessError::ConfigInvalid(format!("bad noise pattern {s:?}"));
    let fraction = |f: &str| -> Result<f64, HarnessError> {
        let v: f64 = f.parse().map_err(|_| bad())?;
        if (0.0..=1.0).contains(&v) {
            Ok(v)
        } else {
            Err(bad())
        }
    };
    match s.split_once(':') {
        None if s == "all" => Ok(NoisePattern::All),
        Some(("pixels", f)) => Ok(NoisePattern::PixelSubset(fraction(f)?)),
        Some(("lines", f)) => Ok(NoisePattern::LineSubset(fraction(f)?)),
        _ => Err(bad()),
    }
}

pub fn pattern_name(p: NoisePattern) -> String {
    match p {
        NoisePattern::All => "all".into(),
        NoisePattern::PixelSubset(f) => format!("pixels:{f}"),
        NoisePattern::LineSubset(f) => format!("lines:{f}"),
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct ExperimentSpec {
    pub experiment: Experiment,
    pub dataset: Dataset,
    pub images: usize,
    pub snrs: Vec<f64>,
    pub pattern: NoisePattern,
    pub alphas: Vec<f64>,
    pub epsilon: f64,
    pub order: Order,
    pub seed: u64,
    pub schemes: Vec<Scheme>,
    pub orientation: Orientation,
    pub gamma: f64,
    pub step: f64,
    pub iterations: usize,
    pub ldpc_seed: u64,
}

impl ExperimentSpec {
    /// Desk-scale defaults for each experiment.
    pub fn new(experiment: Experiment) -> Self {
        let correction = CorrectionConfig::default();
        let detection = DetectionConfig::default();
        let (images, snrs, pattern) = match experiment {
            // Two noisy rows or columns of a 28x28 image.
            Experiment::DetectSingle => (1, vec![1.0], NoisePattern::LineSubset(0.035)),
            Experiment::DetectBatch => (50, vec![3.0], NoisePattern::PixelSubset(0.25)),
            Experiment::CorrectCompare => (50, vec![3.0], NoisePattern::All),
            Experiment::SnrSweep => (50, (0..=6).map(f64::from).collect(), NoisePattern::All),
        };
        Self {
            experiment,
            dataset: Dataset::Synthetic { seed: 0 },
            images,
            snrs,
            pattern,
            alphas: detection.alphas,
            epsilon: detection.epsilon,
            order: detection.order,
            seed: 0,
            schemes: Scheme::ALL.to_vec(),
            orientation: Orientation::Superlevel,
            gamma: correction.gamma,
            step: correction.step,
            iterations: correction.iterations,
            ldpc_seed: 1,
        }
    }

    pub fn validate(&self) -> Result<(), HarnessError> {
        let invalid = |m: &str| Err(HarnessError::ConfigInvalid(m.to_string()));
        if self.images == 0 {
            return invalid("image count must be at least 1");
        }
        if self.snrs.is_empty() {
            return invalid("SNR list is empty");
        }
        if self.snrs.iter().any(|s| s.is_nan()) {
            return invalid("SNR values must be numbers");
        }
        if self.alphas.is_empty()
            || !self.alphas.windows(2).all(|w| w[0] <= w[1])
            || !self.alphas.iter().all(|a| (0.0..=1.0).contains(a))
        {
            return invalid("alphas must be a non-empty ascending list in [0, 1]");
        }
        if self.epsilon.is_nan() || self.epsilon < 0.0 {
            return invalid("epsilon must be non-negative");
        }
        if !self.experiment.is_detection() {
            if self.schemes.is_empty() {
                return invalid("scheme set is empty");
            }
            let coded = self.schemes.iter().any(|s| matches!(s, Scheme::Ldpc | Scheme::Conv));
            if coded && self.pattern != NoisePattern::All {
                return invalid("LDPC and convolutional baselines need noise pattern `all`");
            }
        }
        if !(self.gamma >= 0.0) || !(self.step > 0.0) || self.iterations == 0 {
            return invalid("correction needs gamma >= 0, step > 0 and at least one iteration");
        }
        Ok(())
    }

    pub fn detection_config(&self) -> DetectionConfig {
        DetectionConfig {
            alphas: self.alphas.clone(),
            order: self.order,
            epsilon: self.epsilon,
            dims: vec![0, 1],
            orientation: self.orientation,
        }
    }

    pub fn correction_config(&self) -> CorrectionConfig {
        CorrectionConfig {
            gamma: self.gamma,
            order: self.order,
            step: self.step,
            iterations: self.iterations,
            orientation: self.orientation,
            ..CorrectionConfig::default()
        }
    }

    pub fn to_json(&self) -> Value {
        json!({
            "experiment": self.experiment.name(),
            "dataset": self.dataset.to_string(),
            "images": self.images,
            "snrs_db": self.snrs,
            "pattern": pattern_name(self.pattern),
            "alphas": self.alphas,
            "epsilon": self.epsilon,
            "order": self.order.to_string(),
            "seed": self.seed,
            "schemes": self.schemes.iter().map(|s| s.name()).collect::<Vec<_>>(),
            "orientation": match self.orientation {
                Orientation::Sublevel => "sublevel",
                Orientation::Superlevel => "superlevel",
            },
            "gamma": self.gamma,
            "step": self.step,
            "iterations": self.iterations,
            "ldpc_seed": self.ldpc_seed,
        })
    }

    /// Inverse of [`ExperimentSpec::to_json`].
    pub fn from_json(v: &Value) -> Result<Self, HarnessError> {
        let missing = |k: &str| HarnessError::ConfigInvalid(format!("manifest field {k:?} missing or malformed"));
        let s = |k: &str| v[k].as_str().ok_or_else(|| missing(k));
        let f = |k: &str| v[k].as_f64().ok_or_else(|| missing(k));
        let u = |k: &str| v[k].as_u64().ok_or_else(|| missing(k));
        let fs = |k: &str| -> Result<Vec<f64>, HarnessError> {
            v[k].as_array()
                .ok_or_else(|| missing(k))?
                .iter()
                .map(|x| x.as_f64().ok_or_else(|| missing(k)))
                .collect()
        };
        let schemes = v["schemes"]
            .as_array()
            .ok_or_else(|| missing("schemes"))?
            .iter()
            .map(|x| {
                x.as_str()
                    .ok_or_else(|| missing("schemes"))?
                    .parse::<Scheme>()
                    .map_err(HarnessError::ConfigInvalid)
            })
            .collect::<Result<_, _>>()?;
        let spec = Self {
            experiment: s("experiment")?.parse()?,
            dataset: Dataset::parse(s("dataset")?)?,
            images: u("images")? as usize,
            snrs: fs("snrs_db")?,
            pattern: parse_pattern(s("pattern")?)?,
            alphas: fs("alphas")?,
            epsilon: f("epsilon")?,
            order: s("order")?.parse().map_err(HarnessError::ConfigInvalid)?,
            seed: u("seed")?,
            schemes,
            orientation: match s("orientation")? {
                "sublevel" => Orientation::Sublevel,
                "superlevel" => Orientation::Superlevel,
                _ => return Err(missing("orientation")),
            },
            gamma: f("gamma")?,
            step: f("step")?,
            iterations: u("iterations")? as usize,
            ldpc_seed: u("ldpc_seed")?,
        };
        spec.validate()?;
        Ok(spec)
    }
}

/// A finished run: one CSV table plus aggregate statistics.
#[derive(Debug, Clone, PartialEq)]
pub struct RunOutput {
    pub header: Vec<&'static str>,
    pub rows: Vec<Vec<String>>,
    /// Per-group means, written as a second CSV.
    pub summary_header: Vec<&'static str>,
    pub summary_rows: Vec<Vec<String>>,
}

pub const DETECTION_HEADER: [&str; 9] = [
    "image",
    "snr_db",
    "alpha",
    "distance_h0",
    "distance_h1",
    "distance_total",
    "accepted",
    "psnr_db",
    "ssim",
];

pub const CORRECTION_HEADER: [&str; 8] = [
    "image",
    "scheme",
    "snr_db",
    "psnr_db",
    "ssim",
    "wasserstein",
    "packet_bits",
    "topocode_bits",
];

pub fn run(spec: &ExperimentSpec) -> Result<RunOutput, HarnessError> {
    spec.validate()?;
    let images = spec.dataset.load(spec.images)?;
    if spec.experiment.is_detection() {
        run_detection(spec, &images)
    } else {
        run_correction(spec, &images)
    }
}

fn mean(xs: impl Iterator<Item = f64>) -> f64 {
    let (sum, n) = xs.fold((0.0, 0usize), |(s, n), x| (s + x, n + 1));
    if n == 0 {
        f64::NAN
    } else {
        sum / n as f64
    }
}

/// Channel seed for image `image` at SNR index `snr`.
fn trial_seed(spec: &ExperimentSpec, image: usize, snr: usize) -> u64 {
    split_seed(split_seed(spec.seed, image as u64), snr as u64)
}

struct DetectionTrial {
    image: usize,
    snr: f64,
    psnr: f64,
    ssim: f64,
    report: topocode::pipeline::DetectionReport,
}

fn run_detection(spec: &ExperimentSpec, images: &[GrayImage]) -> Result<RunOutput, HarnessError> {
    let cfg = spec.detection_config();
    let jobs: Vec<(usize, usize)> = (0..images.len())
        .flat_map(|i| (0..spec.snrs.len()).map(move |s| (i, s)))
        .collect();
    let trials: Vec<DetectionTrial> = jobs
        .par_iter()
        .map(|&(i, s)| {
            let src = &images[i];
            let diagram = diagram_of(src, spec.orientation).expect("valid image");
            // The sidecar is quantized exactly as it would be on the wire.
            let topocode = dequantize(&quantize(&diagram).expect("coordinates in [0, 1]"));
            let channel = ChannelConfig::new(spec.snrs[s], trial_seed(spec, i, s))
                .with_pattern(spec.pattern);
            let received = topocode::channel::transmit_image(src, &channel);
            DetectionTrial {
                image: i,
                snr: spec.snrs[s],
                psnr: psnr(src, &received),
                ssim: ssim(src, &received),
                report: detect(&received, &topocode, &cfg),
            }
        })
        .collect();

    let mut rows = Vec::new();
    for t in &trials {
        for e in &t.report.entries {
            let dim = |h: usize| e.per_dim.iter().find(|d| d.0 == h).map_or(0.0, |d| d.1);
            rows.push(vec![
                t.image.to_string(),
                t.snr.to_string(),
                e.alpha.to_string(),
                dim(0).to_string(),
                dim(1).to_string(),
                e.total.to_string(),
                (e.total < spec.epsilon).to_string(),
                t.psnr.to_string(),
                t.ssim.to_string(),
            ]);
        }
    }

    let mut summary_rows = Vec::new();
    for &snr in &spec.snrs {
        for (k, &alpha) in spec.alphas.iter().enumerate() {
            let at: Vec<f64> = trials
                .iter()
                .filter(|t| t.snr == snr)
                .map(|t| t.report.entries[k].total)
                .collect();
            let accepted = at.iter().filter(|&&d| d < spec.epsilon).count();
            summary_rows.push(vec![
                snr.to_string(),
                alpha.to_string(),
                mean(at.iter().copied()).to_string(),
                (accepted as f64 / at.len() as f64).to_string(),
                at.len().to_string(),
            ]);
        }
    }
    Ok(RunOutput {
        header: DETECTION_HEADER.to_vec(),
        rows,
        summary_header: vec!["snr_db", "alpha", "mean_distance", "accepted_fraction", "images"],
        summary_rows,
    })
}

/// What one scheme delivered for one image.
#[derive(Debug, Clone, PartialEq)]
pub struct Delivery {
    pub scheme: Scheme,
    pub psnr: f64,
    pub ssim: f64,
    pub wasserstein: f64,
    pub packet_bits: usize,
    pub topocode_bits: usize,
}

struct Codes {
    ldpc: Option<LdpcCode>,
    conv: ConvCode,
    accounting: PacketAccounting,
}

fn received_image(w: usize, h: usize, bytes: &[u8]) -> GrayImage {
    normalize_bytes(w, h, bytes, NormalizeMode::PerImageMax).expect("valid dimensions")
}

fn coded_transmission(
    bits: &[u8],
    snr: f64,
    seed: u64,
    encode: impl Fn(&[u8]) -> Vec<u8>,
    decode: impl Fn(&[f64]) -> Vec<u8>,
) -> Vec<u8> {
    let mut symbols = bpsk_modulate(&encode(bits));
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    add_noise(&mut symbols, snr, &mut rng, |_| true);
    bits_to_bytes(&decode(&symbols))
}

/// Runs every requested scheme on one image at one SNR.
fn deliver(
    spec: &ExperimentSpec,
    codes: &Codes,
    src: &GrayImage,
    snr: f64,
    seed: u64,
) -> Result<Vec<Delivery>, HarnessError> {
    let (w, h) = (src.width(), src.height());
    let order = spec.order;
    let dims = [0, 1];
    let diagram = diagram_of(src, spec.orientation).expect("valid image");
    let distance_to_source = |img: &GrayImage| {
        total_distance(&diagram, &diagram_of(img, spec.orientation).expect("valid image"), order, &dims)
    };
    let payload = src.to_bytes();
    let bits = bytes_to_bits(&payload);

    // Uncoded and both Topocode variants share one packet transmission: the
    // payload sees the noise pattern, the coordinate bytes always see noise,
    // and the fixed header and group headers arrive intact.
    let packet = encode_packet(w, h, &payload, &diagram, spec.orientation)?;
    let layout = PacketLayout::of(&packet)?;
    let topocode_bits = 8 * layout.topocode_len();
    let mut rng = ChaCha8Rng::seed_from_u64(split_seed(seed, 0));
    let pixel_mask = select_pixels(w, h, spec.pattern, &mut rng);
    let mut noisy = vec![false; packet.len()];
    for (k, m) in pixel_mask.iter().enumerate() {
        noisy[layout.payload.start + k] = *m;
    }
    for range in &layout.coordinates {
        noisy[range.clone()].fill(true);
    }
    let rx = transmit_bytes(&packet, snr, &mut rng, &noisy);
    let decoded = decode_packet(&rx)?;
    let received = received_image(w, h, &decoded.payload);

    let wants = |s: Scheme| spec.schemes.contains(&s);
    let corrected = (wants(Scheme::Topocode) || wants(Scheme::TopocodeNoBoundary))
        .then(|| correct(&received, &decoded.diagram, &spec.correction_config()).image);

    let mut out = Vec::new();
    for &scheme in &spec.schemes {
        let packet_bits = codes.accounting.packet_length(scheme, w, h, topocode_bits);
        let tbits = if matches!(scheme, Scheme::Topocode | Scheme::TopocodeNoBoundary) {
            topocode_bits
        } else {
            0
        };
        let (reference, delivered, wasserstein) = match scheme {
            Scheme::Uncoded => (src.clone(), received.clone(), distance_to_source(&received)),
            Scheme::Topocode => {
                let img = corrected.clone().expect("computed above");
                let d = distance_to_source(&img);
                (src.clone(), img, d)
            }
            Scheme::TopocodeNoBoundary => {
                let img = crop_interior(corrected.as_ref().expect("computed above"), 1)?;
                let reference = crop_interior(src, 1)?;
                let target = diagram_of(&reference, spec.orientation).expect("valid image");
                let d = total_distance(
                    &target,
                    &diagram_of(&img, spec.orientation).expect("valid image"),
                    order,
                    &dims,
                );
                (reference, img, d)
            }
            Scheme::Ldpc => {
                let ldpc = codes.ldpc.as_ref().expect("built when requested");
                let bytes = coded_transmission(
                    &bits,
                    snr,
                    split_seed(seed, 1),
                    |b| ldpc.encode_stream(b),
                    |s| ldpc.decode_stream(s, bits.len()).expect("length matches"),
                );
                let img = received_image(w, h, &bytes);
                let d = distance_to_source(&img);
                (src.clone(), img, d)
            }
            Scheme::Conv => {
                let bytes = coded_transmission(
                    &bits,
                    snr,
                    split_seed(seed, 2),
                    |b| codes.conv.encode(b),
                    |s| codes.conv.decode(s, bits.len()),
                );
                let img = received_image(w, h, &bytes);
                let d = distance_to_source(&img);
                (src.clone(), img, d)
            }
        };
        out.push(Delivery {
            scheme,
            psnr: psnr(&reference, &delivered),
            ssim: ssim(&reference, &delivered),
            wasserstein,
            packet_bits,
            topocode_bits: tbits,
        });
    }
    Ok(out)
}

fn run_correction(spec: &ExperimentSpec, images: &[GrayImage]) -> Result<RunOutput, HarnessError> {
    let snrs: &[f64] = if spec.experiment == Experiment::CorrectCompare {
        &spec.snrs[..1]
    } else {
        &spec.snrs
    };
    let ldpc = if spec.schemes.contains(&Scheme::Ldpc) {
        Some(LdpcCode::standard(spec.ldpc_seed).map_err(|e| {
            HarnessError::ConfigInvalid(format!("LDPC construction failed: {e}"))
        })?)
    } else {
        None
    };
    let accounting = PacketAccounting {
        ldpc_n: ldpc.as_ref().map_or(1000, LdpcCode::n),
        ldpc_k: ldpc.as_ref().map_or(750, LdpcCode::k),
        conv: ConvCode::standard(),
    };
    let codes = Codes {
        ldpc,
        conv: ConvCode::standard(),
        accounting,
    };
    let jobs: Vec<(usize, usize)> = (0..images.len())
        .flat_map(|i| (0..snrs.len()).map(move |s| (i, s)))
        .collect();
    let results: Vec<Vec<Delivery>> = jobs
        .par_iter()
        .map(|&(i, s)| deliver(spec, &codes, &images[i], snrs[s], trial_seed(spec, i, s)))
        .collect::<Result<_, _>>()?;

    // Rows ordered by (image, scheme, snr).
    let mut keyed: Vec<(usize, usize, usize, &Delivery)> = Vec::new();
    for (&(i, s), deliveries) in jobs.iter().zip(&results) {
        for (k, d) in deliveries.iter().enumerate() {
            keyed.push((i, k, s, d));
        }
    }
    keyed.sort_by_key(|&(i, k, s, _)| (i, k, s));
    let rows = keyed
        .iter()
        .map(|&(i, _, s, d)| {
            vec![
                i.to_string(),
                d.scheme.name().to_string(),
                snrs[s].to_string(),
                d.psnr.to_string(),
                d.ssim.to_string(),
                d.wasserstein.to_string(),
                d.packet_bits.to_string(),
                d.topocode_bits.to_string(),
            ]
        })
        .collect();

    let mut summary_rows = Vec::new();
    for (k, scheme) in spec.schemes.iter().enumerate() {
        for (s, snr) in snrs.iter().enumerate() {
            let group: Vec<&Delivery> = jobs
                .iter()
                .zip(&results)
                .filter(|((_, js), _)| *js == s)
                .map(|(_, d)| &d[k])
                .collect();
            summary_rows.push(vec![
                scheme.name().to_string(),
                snr.to_string(),
                mean(group.iter().map(|d| d.psnr.min(PSNR_CAP_DB))).to_string(),
                mean(group.iter().map(|d| d.ssim)).to_string(),
                mean(group.iter().map(|d| d.wasserstein)).to_string(),
                mean(group.iter().map(|d| d.packet_bits as f64)).to_string(),
                group.len().to_string(),
            ]);
        }
    }
    Ok(RunOutput {
        header: CORRECTION_HEADER.to_vec(),
        rows,
        summary_header: vec![
            "scheme",
            "snr_db",
            "mean_psnr_db",
            "mean_ssim",
            "mean_wasserstein",
            "mean_packet_bits",
            "images",
        ],
        summary_rows,
    })
}
