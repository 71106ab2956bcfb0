//! Diagram statistics and transforms: total persistence, noise-floor
//! denoising, and 8-bit quantization for the wire.

use std::collections::BTreeMap;

use crate::error::QuantizeError;
use crate::homology::{BirthDeath, Essential, PersistenceDiagram};

/// Sum of `death - birth` over the finite pairs of dimension `h`.
///
/// Essential classes are excluded; an absent dimension sums to zero.
pub fn total_persistence(diagram: &PersistenceDiagram, h: usize) -> f64 {
    diagram.finite(h).iter().map(BirthDeath::persistence).sum()
}

/// Noise-floor settings for [`denoise_with`].
#[derive(Debug, Clone, PartialEq)]
pub struct DenoiseConfig {
    /// Fraction of total persistence used as the floor, in `[0, 1]`.
    pub alpha: f64,
    /// Dimensions to threshold; `None` thresholds every dimension.
    pub dims: Option<Vec<usize>>,
}

impl DenoiseConfig {
    pub fn new(alpha: f64) -> Self {
        Self { alpha, dims: None }
    }

    fn applies_to(&self, h: usize) -> bool {
        self.dims.as_ref().map_or(true, |d| d.contains(&h))
    }
}

/// Removes finite pairs whose persistence is strictly below
/// `alpha * total_persistence(diagram, h)`, each dimension on its own.
///
/// The floor is always taken from the diagram passed in. Every survivor sits
/// at or above the floor and a second pass sees a smaller total, so the
/// operation is idempotent at fixed `alpha`.
pub fn denoise(diagram: &PersistenceDiagram, alpha: f64) -> PersistenceDiagram {
    denoise_with(diagram, &DenoiseConfig::new(alpha))
}

pub fn denoise_with(diagram: &PersistenceDiagram, config: &DenoiseConfig) -> PersistenceDiagram {
    assert!(
        (0.0..=1.0).contains(&config.alpha),
        "alpha must lie in [0, 1], got {}",
        config.alpha
    );
    let mut out = diagram.clone();
    for h in diagram.dims() {
        if !config.applies_to(h) {
            continue;
        }
        let floor = config.alpha * total_persistence(diagram, h);
        out.group_mut(h).finite.retain(|p| p.persistence() >= floor);
    }
    out
}

/// One dimension of a [`QuantizedDiagram`].
#[derive(Debug, Clone, PartialEq, Eq, Default)]
pub struct QuantizedGroup {
    /// `(birth, death)` levels.
    pub finite: Vec<(u8, u8)>,
    pub essential: Vec<u8>,
}

/// Diagram with every coordinate stored as `round(v * 255)`.
#[derive(Debug, Clone, PartialEq, Eq, Default)]
pub struct QuantizedDiagram {
    pub groups: BTreeMap<usize, QuantizedGroup>,
}

impl QuantizedDiagram {
    pub fn finite_count(&self) -> usize {
        self.groups.values().map(|g| g.finite.len()).sum()
    }

    pub fn essential_count(&self) -> usize {
        self.groups.values().map(|g| g.essential.len()).sum()
    }
}

/// Quantizes a single coordinate in `[0, 1]`.
pub fn quantize_value(v: f64) -> Result<u8, QuantizeError> {
    if !(0.0..=1.0).contains(&v) {
        return Err(QuantizeError::OutOfRange { value: v });
    }
    Ok((v * 255.0).round() as u8)
}

#[inline]
pub fn dequantize_value(q: u8) -> f64 {
    f64::from(q) / 255.0
}

pub fn quantize(diagram: &PersistenceDiagram) -> Result<QuantizedDiagram, QuantizeError> {
    let mut groups = BTreeMap::new();
    for (h, group) in diagram.groups() {
        let finite = group
            .finite
            .iter()
            .map(|p| Ok((quantize_value(p.birth)?, quantize_value(p.death)?)))
            .collect::<Result<Vec<_>, _>>()?;
        let essential = group
            .essential
            .iter()
            .map(|e| quantize_value(e.birth))
            .collect::<Result<Vec<_>, _>>()?;
        groups.insert(h, QuantizedGroup { finite, essential });
    }
    Ok(QuantizedDiagram { groups })
}

/// Inverse of [`quantize`]. Pairs whose levels collapsed (`death <= birth`)
/// are dropped.
pub fn dequantize(q: &QuantizedDiagram) -> PersistenceDiagram {
    let mut out = PersistenceDiagram::with_dims(q.groups.keys().copied());
    for (&h, group) in &q.groups {
        for &(b, d) in &group.finite {
            if d > b {
                out.push_finite(h, BirthDeath::new(dequantize_value(b), dequantize_value(d)));
            }
        }
        for &b in &group.essential {
            out.push_essential(h, Essential::new(dequantize_value(b)));
        }
    }
    out
}
