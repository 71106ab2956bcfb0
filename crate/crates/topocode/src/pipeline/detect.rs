use crate::diagram::denoise;
use crate::homology::{diagram_of, PersistenceDiagram};
use crate::image::{GrayImage, Orientation};
use crate::transport::{wasserstein, Order};

#[derive(Debug, Clone, PartialEq)]
pub struct DetectionConfig {
    /// Noise floors to try, ascending in `[0, 1]`.
    pub alphas: Vec<f64>,
    pub order: Order,
    /// A total distance strictly below this accepts the image.
    pub epsilon: f64,
    pub dims: Vec<usize>,
    pub orientation: Orientation,
}

impl Default for DetectionConfig {
    fn default() -> Self {
        Self {
            alphas: vec![0.0, 0.15, 0.30, 0.45],
            order: Order::Finite(2.0),
            epsilon: 0.05,
            dims: vec![0, 1],
            orientation: Orientation::Superlevel,
        }
    }
}

impl DetectionConfig {
    fn validate(&self) {
        assert!(!self.alphas.is_empty(), "at least one alpha is required");
        assert!(
            self.alphas.windows(2).all(|w| w[0] <= w[1]),
            "alphas must be ascending"
        );
        assert!(
            self.alphas.iter().all(|a| (0.0..=1.0).contains(a)),
            "alphas must lie in [0, 1]"
        );
        assert!(self.epsilon >= 0.0, "epsilon must be non-negative");
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Verdict {
    Accept,
    Retransmit,
}

/// Distances at one noise floor.
#[derive(Debug, Clone, PartialEq)]
pub struct AlphaReport {
    pub alpha: f64,
    /// `(dimension, distance)` for each configured dimension.
    pub per_dim: Vec<(usize, f64)>,
    pub total: f64,
}

#[derive(Debug, Clone, PartialEq)]
pub struct DetectionReport {
    pub entries: Vec<AlphaReport>,
    pub verdict: Verdict,
    /// `1 - alpha` at the first floor that accepted.
    pub significance: Option<f64>,
}

impl DetectionReport {
    pub fn totals(&self) -> Vec<f64> {
        self.entries.iter().map(|e| e.total).collect()
    }
}

/// Compares the received image's diagram with `topocode` at each floor.
///
/// Both diagrams are denoised at the same `alpha`, each against its own
/// total persistence, before matching.
pub fn detect(
    received: &GrayImage,
    topocode: &PersistenceDiagram,
    config: &DetectionConfig,
) -> DetectionReport {
    config.validate();
    let observed = diagram_of(received, config.orientation).expect("image is a valid complex");
    let entries: Vec<AlphaReport> = config
        .alphas
        .iter()
        .map(|&alpha| {
            let target = denoise(topocode, alpha);
            let seen = denoise(&observed, alpha);
            let per_dim: Vec<(usize, f64)> = config
                .dims
                .iter()
                .map(|&h| (h, wasserstein(&target, &seen, h, config.order).0))
                .collect();
            let total = per_dim.iter().map(|&(_, d)| d).sum();
            AlphaReport {
                alpha,
                per_dim,
                total,
            }
        })
        .collect();
    let accepted = entries.iter().find(|e| e.total < config.epsilon);
    DetectionReport {
        verdict: if accepted.is_some() {
            Verdict::Accept
        } else {
            Verdict::Retransmit
        },
        significance: accepted.map(|e| 1.0 - e.alpha),
        entries,
    }
}
