//! Detection and correction on the receiver side.
//!
//! [`detect`] compares the received image's diagram with the transmitted one
//! at a schedule of noise floors and decides whether the damage matters.
//! [`correct`] runs a subgradient descent on the pixels that pulls the
//! received diagram towards the transmitted one.

mod correct;
mod detect;

pub use correct::{correct, loss_and_gradient, CorrectionConfig, CorrectionResult};
pub use detect::{detect, AlphaReport, DetectionConfig, DetectionReport, Verdict};

use crate::error::ImageError;
use crate::image::GrayImage;

/// Drops `margin` rows and columns from every side.
pub fn crop_interior(image: &GrayImage, margin: usize) -> Result<GrayImage, ImageError> {
    let (w, h) = (image.width(), image.height());
    if margin == 0 {
        return Ok(image.clone());
    }
    if margin >= w.min(h) / 2 {
        return Err(ImageError::MarginTooLarge {
            margin,
            width: w,
            height: h,
        });
    }
    let (cw, ch) = (w - 2 * margin, h - 2 * margin);
    let pixels = (margin..h - margin)
        .flat_map(|y| (margin..w - margin).map(move |x| (x, y)))
        .map(|(x, y)| image.get(x, y))
        .collect();
    GrayImage::new(cw, ch, pixels)
}
