//! Image sources: IDX files, directories of binary PGM images, and a
//! procedural glyph set that needs no download.

use std::fs;
use std::path::Path;

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use topocode::channel::split_seed;
use topocode::image::normalize_bytes;
use topocode::{GrayImage, NormalizeMode};

use crate::error::HarnessError;

pub const IDX_IMAGE_MAGIC: u32 = 0x0000_0803;

fn read_file(path: &Path) -> Result<Vec<u8>, HarnessError> {
    if !path.exists() {
        return Err(HarnessError::DatasetNotFound {
            path: path.to_path_buf(),
        });
    }
    fs::read(path).map_err(HarnessError::io(format!("reading {}", path.display())))
}

/// Parses an IDX image file (`0x00000803`, big-endian counts, unsigned
/// bytes). Each image is normalized by its own maximum.
pub fn parse_idx(path: &Path, bytes: &[u8]) -> Result<Vec<GrayImage>, HarnessError> {
    let truncated = |field, needed, available| HarnessError::Truncated {
        path: path.to_path_buf(),
        field,
        needed,
        available,
    };
    let header = |i: usize, field| -> Result<u32, HarnessError> {
        let s = bytes
            .get(4 * i..4 * i + 4)
            .ok_or_else(|| truncated(field, 4 * i + 4, bytes.len()))?;
        Ok(u32::from_be_bytes([s[0], s[1], s[2], s[3]]))
    };
    let magic = header(0, "magic")?;
    if magic != IDX_IMAGE_MAGIC {
        return Err(HarnessError::BadMagic {
            path: path.to_path_buf(),
            found: magic,
            expected: IDX_IMAGE_MAGIC,
        });
    }
    let count = header(1, "image count")? as usize;
    let rows = header(2, "rows")? as usize;
    let cols = header(3, "columns")? as usize;
    let size = rows * cols;
    let data = &bytes[16..];
    let needed = count
        .checked_mul(size)
        .ok_or_else(|| truncated("pixels", usize::MAX, data.len()))?;
    if data.len() < needed {
        return Err(truncated("pixels", needed, data.len()));
    }
    data.chunks_exact(size.max(1))
        .take(count)
        .map(|px| Ok(normalize_bytes(cols, rows, px, NormalizeMode::PerImageMax)?))
        .collect()
}

pub fn load_idx(path: &Path) -> Result<Vec<GrayImage>, HarnessError> {
    parse_idx(path, &read_file(path)?)
}

/// Parses a binary (P5) PGM with `maxval <= 255`.
pub fn parse_pgm(path: &Path, bytes: &[u8]) -> Result<GrayImage, HarnessError> {
    let unsupported = |reason: &str| HarnessError::UnsupportedFormat {
        path: path.to_path_buf(),
        reason: reason.to_string(),
    };
    match bytes.get(..2) {
        Some(b"P5") => {}
        Some(b"P2") => return Err(unsupported("ASCII PGM (P2) is not supported")),
        _ => return Err(unsupported("not a binary PGM")),
    }
    let mut pos = 2;
    let mut fields = [0usize; 3];
    for field in &mut fields {
        // Whitespace and comments between header tokens.
        loop {
            match bytes.get(pos) {
                Some(b) if b.is_ascii_whitespace() => pos += 1,
                Some(b'#') => {
                    while bytes.get(pos).is_some_and(|&b| b != b'\n') {
                        pos += 1;
                    }
                }
                _ => break,
            }
        }
        let start = pos;
        while bytes.get(pos).is_some_and(u8::is_ascii_digit) {
            pos += 1;
        }
        *field = std::str::from_utf8(&bytes[start..pos])
            .ok()
            .and_then(|s| s.parse().ok())
            .ok_or_else(|| unsupported("malformed header"))?;
    }
    let [width, height, maxval] = fields;
    if maxval == 0 || maxval > 255 {
        return Err(unsupported("maxval must be in 1..=255"));
    }
    if !bytes.get(pos).is_some_and(u8::is_ascii_whitespace) {
        return Err(unsupported("malformed header"));
    }
    let data = &bytes[pos + 1..];
    let needed = width * height;
    if data.len() < needed {
        return Err(HarnessError::Truncated {
            path: path.to_path_buf(),
            field: "pixels",
            needed,
            available: data.len(),
        });
    }
    Ok(normalize_bytes(
        width,
        height,
        &data[..needed],
        NormalizeMode::PerImageMax,
    )?)
}

/// Loads every `*.pgm` file of a directory in file-name order.
pub fn load_pgm_dir(dir: &Path) -> Result<Vec<GrayImage>, HarnessError> {
    if !dir.is_dir() {
        return Err(HarnessError::DatasetNotFound {
            path: dir.to_path_buf(),
        });
    }
    let mut paths: Vec<_> = fs::read_dir(dir)
        .map_err(HarnessError::io(format!("listing {}", dir.display())))?
        .filter_map(|e| e.ok().map(|e| e.path()))
        .filter(|p| p.extension().is_some_and(|e| e.eq_ignore_ascii_case("pgm")))
        .collect();
    paths.sort();
    paths
        .iter()
        .map(|p| parse_pgm(p, &read_file(p)?))
        .collect()
}

/// Shapes in the procedural set, with their expected loop counts.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum GlyphKind {
    Bar,
    Ring,
    DoubleRing,
}

impl GlyphKind {
    pub fn loops(self) -> usize {
        match self {
            GlyphKind::Bar => 0,
            GlyphKind::Ring => 1,
            GlyphKind::DoubleRing => 2,
        }
    }

    /// Cycles through the ten digit classes by loop count (0 has one loop,
    /// 8 has two, 1 has none, ...), so the mix of shapes follows MNIST.
    pub fn of_index(i: usize) -> Self {
        use GlyphKind::{Bar, DoubleRing, Ring};
        [Ring, Bar, Bar, Bar, Ring, Bar, Ring, Bar, DoubleRing, Ring][i % 10]
    }
}

pub const GLYPH_SIZE: usize = 28;

fn segment_distance(p: (f64, f64), a: (f64, f64), b: (f64, f64)) -> f64 {
    let (dx, dy) = (b.0 - a.0, b.1 - a.1);
    let t = (((p.0 - a.0) * dx + (p.1 - a.1) * dy) / (dx * dx + dy * dy)).clamp(0.0, 1.0);
    ((p.0 - a.0 - t * dx).powi(2) + (p.1 - a.1 - t * dy).powi(2)).sqrt()
}

fn ellipse_distance(p: (f64, f64), c: (f64, f64), rx: f64, ry: f64) -> f64 {
    let (u, v) = ((p.0 - c.0) / rx, (p.1 - c.1) / ry);
    ((u * u + v * v).sqrt() - 1.0).abs() * rx.min(ry)
}

/// One bright glyph on a dark 28x28 background, quantized to 8 bits.
pub fn glyph(kind: GlyphKind, seed: u64) -> GrayImage {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let half_width = rng.random_range(1.0..1.8);
    let cx = rng.random_range(12.5..14.5);
    let cy = rng.random_range(12.5..14.5);
    let distance: Box<dyn Fn((f64, f64)) -> f64> = match kind {
        GlyphKind::Bar => {
            let angle: f64 = rng.random_range(-0.5..0.5);
            let len = rng.random_range(7.0..10.0);
            let (s, c) = angle.sin_cos();
            let a = (cx - len * s, cy - len * c);
            let b = (cx + len * s, cy + len * c);
            Box::new(move |p| segment_distance(p, a, b))
        }
        GlyphKind::Ring => {
            let rx = rng.random_range(5.0..7.5);
            let ry = rng.random_range(7.0..9.5);
            Box::new(move |p| ellipse_distance(p, (cx, cy), rx, ry))
        }
        GlyphKind::DoubleRing => {
            let r = rng.random_range(4.0..5.0);
            let top = (cx, cy - r);
            let bottom = (cx, cy + r);
            Box::new(move |p| {
                ellipse_distance(p, top, r, r).min(ellipse_distance(p, bottom, r, r))
            })
        }
    };
    let peak = rng.random_range(0.85..1.0);
    let bytes: Vec<u8> = (0..GLYPH_SIZE * GLYPH_SIZE)
        .map(|i| {
            let p = ((i % GLYPH_SIZE) as f64 + 0.5, (i / GLYPH_SIZE) as f64 + 0.5);
            let v = (half_width + 0.5 - distance(p)).clamp(0.0, 1.0) * peak;
            (v * 255.0).round() as u8
        })
        .collect();
    normalize_bytes(GLYPH_SIZE, GLYPH_SIZE, &bytes, NormalizeMode::PerImageMax)
        .expect("glyph has valid dimensions")
}

/// `count` glyphs in the order given by [`GlyphKind::of_index`].
pub fn synthetic_glyphs(count: usize, seed: u64) -> Vec<GrayImage> {
    (0..count)
        .map(|i| glyph(GlyphKind::of_index(i), split_seed(seed, i as u64)))
        .collect()
}
