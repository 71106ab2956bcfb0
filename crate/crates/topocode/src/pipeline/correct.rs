use crate::homology::{diagram_of, BirthDeath, PersistenceDiagram};
use crate::image::{GrayImage, Orientation};
use crate::transport::{wasserstein, DiagramMatching, Order, UNMATCHED_ESSENTIAL_COST};

#[derive(Debug, Clone, PartialEq)]
pub struct CorrectionConfig {
    /// Weight of the topological term against the binarizing regularizer.
    pub gamma: f64,
    pub order: Order,
    pub dims: Vec<usize>,
    /// The regularizer's minimum is a binary image, so `step * iterations`
    /// bounds how far soft strokes drift towards 0 or 1.
    pub step: f64,
    pub iterations: usize,
    /// Stop once the best loss improved by less than this over the last
    /// [`CorrectionConfig::PATIENCE`] steps.
    pub tolerance: f64,
    pub orientation: Orientation,
}

impl Default for CorrectionConfig {
    fn default() -> Self {
        Self {
            gamma: 100.0,
            order: Order::Finite(2.0),
            dims: vec![0, 1],
            step: 0.0005,
            iterations: 300,
            tolerance: 1e-6,
            orientation: Orientation::Superlevel,
        }
    }
}

impl CorrectionConfig {
    pub const PATIENCE: usize = 10;

    fn validate(&self) {
        assert!(self.gamma >= 0.0, "gamma must be non-negative");
        assert!(self.step > 0.0, "step must be positive");
        assert!(self.iterations >= 1, "at least one iteration is required");
    }
}

/// Sum of `min(x, 1 - x)` over pixels in `[0, 1]`.
fn regularizer(pixels: &[f64]) -> f64 {
    pixels.iter().map(|&x| x.abs().min((1.0 - x).abs())).sum()
}

/// Subgradient of `min(|x|, |1 - x|)`: zero at 0 and 1, `+1` up to and
/// including 0.5, `-1` above.
fn regularizer_slope(x: f64) -> f64 {
    if x == 0.0 || x == 1.0 {
        0.0
    } else if x.abs() <= (1.0 - x).abs() {
        x.signum()
    } else {
        -(1.0 - x).signum()
    }
}

fn sign(x: f64) -> f64 {
    if x > 0.0 {
        1.0
    } else if x < 0.0 {
        -1.0
    } else {
        0.0
    }
}

/// One edge of a matching with the filtration coordinates it depends on:
/// `(cost, [(pixel, d cost / d filtration value)])`.
type Edge = (f64, Vec<(usize, f64)>);

fn matched_edge(t: &BirthDeath, c: &BirthDeath, cost: f64) -> Edge {
    let db = c.birth - t.birth;
    let dd = c.death - t.death;
    let mut grads = Vec::with_capacity(1);
    if db.abs() >= dd.abs() {
        if let Some(px) = c.birth_pixel {
            grads.push((px, sign(db)));
        }
    } else if let Some(px) = c.death_pixel {
        grads.push((px, sign(dd)));
    }
    (cost, grads)
}

fn diagonal_edge(c: &BirthDeath, cost: f64) -> Edge {
    let mut grads = Vec::with_capacity(2);
    if let Some(px) = c.birth_pixel {
        grads.push((px, -0.5));
    }
    if let Some(px) = c.death_pixel {
        grads.push((px, 0.5));
    }
    (cost, grads)
}

/// Every edge of `matching`, with target on the left and candidate on the
/// right. Target-side diagonal edges and unpaired essentials are constants.
fn edges(
    matching: &DiagramMatching,
    target: &PersistenceDiagram,
    candidate: &PersistenceDiagram,
    h: usize,
) -> Vec<Edge> {
    let (tf, cf) = (target.finite(h), candidate.finite(h));
    let (te, ce) = (target.essential(h), candidate.essential(h));
    let mut out: Vec<Edge> = Vec::new();
    for m in &matching.matched {
        out.push(matched_edge(&tf[m.left], &cf[m.right], m.cost));
    }
    for d in &matching.left_to_diagonal {
        out.push((d.cost, Vec::new()));
    }
    for d in &matching.right_to_diagonal {
        out.push(diagonal_edge(&cf[d.index], d.cost));
    }
    for m in &matching.essential {
        let delta = ce[m.right].birth - te[m.left].birth;
        let grads = ce[m.right]
            .birth_pixel
            .map(|px| vec![(px, sign(delta))])
            .unwrap_or_default();
        out.push((m.cost, grads));
    }
    let unmatched =
        matching.left_unmatched_essential.len() + matching.right_unmatched_essential.len();
    out.extend((0..unmatched).map(|_| (UNMATCHED_ESSENTIAL_COST, Vec::new())));
    out
}

/// `d distance / d cost` for each edge.
fn edge_weights(order: Order, costs: &[f64], distance: f64) -> Vec<f64> {
    match order {
        Order::Finite(p) if p == 1.0 => vec![1.0; costs.len()],
        Order::Finite(_) if distance == 0.0 => vec![0.0; costs.len()],
        Order::Finite(p) => costs
            .iter()
            .map(|&c| (c / distance).powf(p - 1.0))
            .collect(),
        Order::Infinity => {
            let mut w = vec![0.0; costs.len()];
            let argmax = costs
                .iter()
                .enumerate()
                .fold(None, |best: Option<(usize, f64)>, (i, &c)| match best {
                    Some((_, b)) if b >= c => best,
                    _ => Some((i, c)),
                });
            if let Some((i, c)) = argmax {
                if c > 0.0 {
                    w[i] = 1.0;
                }
            }
            w
        }
    }
}

/// Loss and per-pixel subgradient of
/// `gamma * sum_h W_p(target_h, D_h(candidate)) + sum_i min(|x_i|, |1 - x_i|)`.
///
/// Each birth and death of the candidate's diagram is the filtration value
/// of one pixel, so the Wasserstein gradient lands on those pixels, scaled by
/// the orientation's slope. The matching is held fixed while differentiating.
pub fn loss_and_gradient(
    candidate: &GrayImage,
    target: &PersistenceDiagram,
    config: &CorrectionConfig,
) -> (f64, Vec<f64>) {
    let pixels = candidate.pixels();
    let mut grad: Vec<f64> = pixels.iter().map(|&x| regularizer_slope(x)).collect();
    let mut loss = regularizer(pixels);
    if config.gamma == 0.0 {
        return (loss, grad);
    }
    let diagram = diagram_of(candidate, config.orientation).expect("image is a valid complex");
    let slope = config.orientation.slope();
    for &h in &config.dims {
        let (distance, matching) = wasserstein(target, &diagram, h, config.order);
        loss += config.gamma * distance;
        let edges = edges(&matching, target, &diagram, h);
        let costs: Vec<f64> = edges.iter().map(|e| e.0).collect();
        let weights = edge_weights(config.order, &costs, distance);
        for ((_, grads), w) in edges.iter().zip(weights) {
            if w == 0.0 {
                continue;
            }
            for &(px, g) in grads {
                grad[px] += config.gamma * w * g * slope;
            }
        }
    }
    (loss, grad)
}

#[derive(Debug, Clone, PartialEq)]
pub struct CorrectionResult {
    /// The iterate with the lowest loss.
    pub image: GrayImage,
    /// Loss of every evaluated iterate, starting with the input.
    pub trace: Vec<f64>,
    pub best_iteration: usize,
}

impl CorrectionResult {
    pub fn best_loss(&self) -> f64 {
        self.trace[self.best_iteration]
    }
}

/// Fixed-step subgradient descent on the pixels, clamped to `[0, 1]`.
pub fn correct(
    received: &GrayImage,
    topocode: &PersistenceDiagram,
    config: &CorrectionConfig,
) -> CorrectionResult {
    config.validate();
    let (w, h) = (received.width(), received.height());
    let mut current = received.clone();
    let mut best = received.clone();
    let mut best_iteration = 0;
    let mut trace = Vec::with_capacity(config.iterations + 1);
    // best_so_far[i] is the lowest loss among the first i + 1 iterates.
    let mut best_so_far: Vec<f64> = Vec::with_capacity(config.iterations + 1);

    for it in 0..=config.iterations {
        let (loss, grad) = loss_and_gradient(&current, topocode, config);
        trace.push(loss);
        let prev_best = best_so_far.last().copied().unwrap_or(f64::INFINITY);
        if loss < prev_best {
            best = current.clone();
            best_iteration = it;
        }
        best_so_far.push(prev_best.min(loss));
        if it == config.iterations {
            break;
        }
        if it >= CorrectionConfig::PATIENCE {
            let gain = best_so_far[it - CorrectionConfig::PATIENCE] - best_so_far[it];
            if gain < config.tolerance {
                break;
            }
        }
        if grad.iter().all(|&g| g == 0.0) {
            break;
        }
        let next = current
            .pixels()
            .iter()
            .zip(&grad)
            .map(|(&x, &g)| (x - config.step * g).clamp(0.0, 1.0))
            .collect();
        current = GrayImage::new(w, h, next).expect("clamped pixels are valid");
    }

    CorrectionResult {
        image: best,
        trace,
        best_iteration,
    }
}
