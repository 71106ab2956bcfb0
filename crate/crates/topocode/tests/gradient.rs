//! Analytic subgradient against central finite differences.

mod common;

use common::{tie_free, with_pixel, FD_STEP as H};
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use topocode::pipeline::{loss_and_gradient, CorrectionConfig};
use topocode::transport::Order;

fn check(cfg: &CorrectionConfig, trials: usize, seed: u64) {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    for trial in 0..trials {
        let (img, target) = tie_free(&mut rng, cfg);
        let (_, grad) = loss_and_gradient(&img, &target, cfg);
        for i in 0..36 {
            let up = loss_and_gradient(&with_pixel(&img, i, H), &target, cfg).0;
            let down = loss_and_gradient(&with_pixel(&img, i, -H), &target, cfg).0;
            let fd = (up - down) / (2.0 * H);
            let tol = 1e-3 * grad[i].abs().max(fd.abs()) + 1e-6;
            assert!(
                (grad[i] - fd).abs() <= tol,
                "{} trial {trial} pixel {i}: analytic {} vs fd {fd}",
                cfg.order,
                grad[i]
            );
        }
    }
}

#[test]
fn gradient_matches_finite_differences_p2() {
    check(&CorrectionConfig::default(), 40, 1);
}

#[test]
fn gradient_matches_finite_differences_p1_and_bottleneck() {
    for (order, seed) in [(Order::Finite(1.0), 2), (Order::Infinity, 3), (Order::Finite(3.0), 4)] {
        let cfg = CorrectionConfig {
            order,
            gamma: 7.0,
            ..CorrectionConfig::default()
        };
        check(&cfg, 15, seed);
    }
}

#[test]
fn sublevel_gradient_matches_finite_differences() {
    let cfg = CorrectionConfig {
        orientation: topocode::Orientation::Sublevel,
        ..CorrectionConfig::default()
    };
    check(&cfg, 15, 5);
}
