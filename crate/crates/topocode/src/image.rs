//! Normalized grayscale images.

use crate::error::ImageError;

/// Which way intensities are swept when building a filtration.
///
/// `Sublevel` grows the complex from dark to bright pixels. `Superlevel`
/// grows it from bright to dark, which is implemented by filtering on
/// `1 - value`, so bright strokes on a dark background carry the loops.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Default)]
pub enum Orientation {
    Sublevel,
    #[default]
    Superlevel,
}

impl Orientation {
    /// Wire flag: 0 for sublevel, 1 for superlevel.
    pub fn to_flag(self) -> u8 {
        match self {
            Orientation::Sublevel => 0,
            Orientation::Superlevel => 1,
        }
    }

    pub fn from_flag(flag: u8) -> Option<Self> {
        match flag {
            0 => Some(Orientation::Sublevel),
            1 => Some(Orientation::Superlevel),
            _ => None,
        }
    }

    /// Maps a pixel intensity to its filtration value.
    #[inline]
    pub fn filtration_value(self, pixel: f64) -> f64 {
        match self {
            Orientation::Sublevel => pixel,
            Orientation::Superlevel => 1.0 - pixel,
        }
    }

    /// Derivative of [`Orientation::filtration_value`] with respect to the pixel.
    #[inline]
    pub fn slope(self) -> f64 {
        match self {
            Orientation::Sublevel => 1.0,
            Orientation::Superlevel => -1.0,
        }
    }
}

/// How raw intensities are scaled into `[0, 1]`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Default)]
pub enum NormalizeMode {
    /// Divide by the largest intensity in the grid.
    #[default]
    PerImageMax,
    /// Divide by 255.
    Fixed255,
}

/// A row-major grayscale image with every pixel in `[0, 1]`.
#[derive(Debug, Clone, PartialEq)]
pub struct GrayImage {
    width: usize,
    height: usize,
    pixels: Vec<f64>,
}

impl GrayImage {
    pub fn new(width: usize, height: usize, pixels: Vec<f64>) -> Result<Self, ImageError> {
        if width < 2 || height < 2 {
            return Err(ImageError::DimensionTooSmall { width, height });
        }
        if pixels.len() != width * height {
            return Err(ImageError::LengthMismatch {
                expected: width * height,
                actual: pixels.len(),
            });
        }
        if let Some((index, &value)) = pixels
            .iter()
            .enumerate()
            .find(|(_, v)| !(0.0..=1.0).contains(*v))
        {
            return Err(ImageError::PixelOutOfRange { index, value });
        }
        Ok(Self {
            width,
            height,
            pixels,
        })
    }

    /// Constant image.
    pub fn filled(width: usize, height: usize, value: f64) -> Result<Self, ImageError> {
        Self::new(width, height, vec![value; width * height])
    }

    /// Interprets 8-bit samples as `byte / 255`.
    pub fn from_bytes(width: usize, height: usize, bytes: &[u8]) -> Result<Self, ImageError> {
        Self::new(
            width,
            height,
            bytes.iter().map(|&b| f64::from(b) / 255.0).collect(),
        )
    }

    /// Quantizes every pixel to `round(v * 255)`.
    pub fn to_bytes(&self) -> Vec<u8> {
        self.pixels
            .iter()
            .map(|&v| (v * 255.0).round().clamp(0.0, 255.0) as u8)
            .collect()
    }

    /// Builds an image from arbitrary reals, clamping each pixel to `[0, 1]`.
    pub fn from_clamped(width: usize, height: usize, values: Vec<f64>) -> Result<Self, ImageError> {
        Self::new(
            width,
            height,
            values.into_iter().map(|v| v.clamp(0.0, 1.0)).collect(),
        )
    }

    pub fn width(&self) -> usize {
        self.width
    }

    pub fn height(&self) -> usize {
        self.height
    }

    pub fn len(&self) -> usize {
        self.pixels.len()
    }

    pub fn is_empty(&self) -> bool {
        self.pixels.is_empty()
    }

    pub fn pixels(&self) -> &[f64] {
        &self.pixels
    }

    pub fn into_pixels(self) -> Vec<f64> {
        self.pixels
    }

    #[inline]
    pub fn get(&self, x: usize, y: usize) -> f64 {
        self.pixels[y * self.width + x]
    }

    /// Largest absolute pixel difference. Panics on mismatched dimensions.
    pub fn max_abs_diff(&self, other: &GrayImage) -> f64 {
        assert_eq!(
            (self.width, self.height),
            (other.width, other.height),
            "image dimensions differ"
        );
        self.pixels
            .iter()
            .zip(&other.pixels)
            .map(|(a, b)| (a - b).abs())
            .fold(0.0, f64::max)
    }
}

/// Scales a grid of nonnegative raw intensities into a [`GrayImage`].
///
/// An all-zero grid is returned unchanged under [`NormalizeMode::PerImageMax`].
pub fn normalize(
    width: usize,
    height: usize,
    raw: &[f64],
    mode: NormalizeMode,
) -> Result<GrayImage, ImageError> {
    if let Some((index, &value)) = raw
        .iter()
        .enumerate()
        .find(|(_, v)| !(**v >= 0.0) || !v.is_finite())
    {
        return Err(ImageError::NegativeIntensity { index, value });
    }
    let scale = match mode {
        NormalizeMode::PerImageMax => raw.iter().copied().fold(0.0, f64::max),
        NormalizeMode::Fixed255 => 255.0,
    };
    let pixels = if scale > 0.0 {
        raw.iter().map(|v| v / scale).collect()
    } else {
        raw.to_vec()
    };
    GrayImage::new(width, height, pixels)
}

/// Normalizes 8-bit samples, the common case for decoded payloads.
pub fn normalize_bytes(
    width: usize,
    height: usize,
    raw: &[u8],
    mode: NormalizeMode,
) -> Result<GrayImage, ImageError> {
    let raw: Vec<f64> = raw.iter().map(|&b| f64::from(b)).collect();
    normalize(width, height, &raw, mode)
}
