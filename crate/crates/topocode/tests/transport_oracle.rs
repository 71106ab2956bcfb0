mod common;

use common::{distinct_image, exhaustive_distance, random_diagram};
use proptest::prelude::*;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use topocode::homology::BirthDeath;
use topocode::transport::{bottleneck, total_distance, wasserstein, Order};
use topocode::{diagram_of, GrayImage, Orientation, PersistenceDiagram};

const ORDERS: [Order; 3] = [Order::Finite(1.0), Order::Finite(2.0), Order::Infinity];

proptest! {
    #![proptest_config(ProptestConfig::with_cases(300))]

    #[test]
    fn solver_matches_enumeration(seed in any::<u64>()) {
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let a = random_diagram(&mut rng, 4);
        let b = random_diagram(&mut rng, 4);
        for order in ORDERS.into_iter().chain([Order::Finite(3.0)]) {
            let (d, matching) = wasserstein(&a, &b, 0, order);
            let oracle = exhaustive_distance(a.finite(0), b.finite(0), order);
            prop_assert!((d - oracle).abs() < 1e-9, "{order}: {d} vs {oracle}");
            // Every finite pair is used exactly once.
            let lefts = matching.matched.len() + matching.left_to_diagonal.len();
            let rights = matching.matched.len() + matching.right_to_diagonal.len();
            prop_assert_eq!(lefts, a.finite(0).len());
            prop_assert_eq!(rights, b.finite(0).len());
            prop_assert_eq!(matching.distance(), d);
        }
    }

    #[test]
    fn metric_axioms(seed in any::<u64>()) {
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let a = random_diagram(&mut rng, 4);
        let b = random_diagram(&mut rng, 4);
        let c = random_diagram(&mut rng, 4);
        for order in ORDERS {
            let d = |x: &PersistenceDiagram, y: &PersistenceDiagram| wasserstein(x, y, 0, order).0;
            prop_assert_eq!(d(&a, &a), 0.0);
            prop_assert_eq!(d(&a, &b), d(&b, &a));
            prop_assert!(d(&a, &c) <= d(&a, &b) + d(&b, &c) + 1e-9);
        }
    }

    #[test]
    fn bottleneck_is_stable(seed in any::<u64>(), scale in 0.001f64..0.3) {
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let x = distinct_image(&mut rng, 6, 6, 0.0, 1.0);
        let y: Vec<f64> = x
            .pixels()
            .iter()
            .map(|v| (v + rng.random_range(-scale..scale)).clamp(0.0, 1.0))
            .collect();
        let y = GrayImage::new(6, 6, y).unwrap();
        let bound = x.max_abs_diff(&y);
        for orientation in [Orientation::Sublevel, Orientation::Superlevel] {
            let (dx, dy) = (diagram_of(&x, orientation).unwrap(), diagram_of(&y, orientation).unwrap());
            for h in [0, 1] {
                prop_assert!(bottleneck(&dx, &dy, h) <= bound + 1e-12);
            }
        }
    }
}

fn pairs(ps: &[(f64, f64)]) -> PersistenceDiagram {
    let mut d = PersistenceDiagram::with_dims([0, 1]);
    for &(b, e) in ps {
        d.push_finite(0, BirthDeath::new(b, e));
    }
    d
}

#[test]
fn worked_examples() {
    let one = pairs(&[(0.0, 1.0)]);
    let empty = pairs(&[]);
    assert_eq!(wasserstein(&one, &empty, 0, Order::Finite(2.0)).0, 0.5);
    let a = pairs(&[(0.0, 1.0), (0.0, 0.4)]);
    let b = pairs(&[(0.1, 1.0)]);
    let d = wasserstein(&a, &b, 0, Order::Finite(2.0)).0;
    assert!((d - 0.05f64.sqrt()).abs() < 1e-12);
    assert_eq!(total_distance(&empty, &empty, Order::Finite(2.0), &[0, 1]), 0.0);
}

#[test]
fn mild_perturbation_is_closer_than_severe_change_for_every_order() {
    let base = pairs(&[(0.1, 0.9), (0.2, 0.5), (0.3, 0.4)]);
    let mild = pairs(&[(0.12, 0.88), (0.21, 0.52), (0.3, 0.41)]);
    let severe = pairs(&[(0.1, 0.3), (0.6, 0.95)]);
    for p in 1..=5 {
        let order = Order::Finite(p as f64);
        let near = wasserstein(&base, &mild, 0, order).0;
        let far = wasserstein(&base, &severe, 0, order).0;
        assert!(near < far, "p = {p}: {near} !< {far}");
    }
}

#[test]
fn essential_classes_match_by_birth() {
    let mut a = PersistenceDiagram::with_dims([0, 1]);
    let mut b = PersistenceDiagram::with_dims([0, 1]);
    a.push_essential(0, topocode::Essential::new(0.2));
    b.push_essential(0, topocode::Essential::new(0.5));
    assert!((wasserstein(&a, &b, 0, Order::Finite(2.0)).0 - 0.3).abs() < 1e-12);
    b.push_essential(0, topocode::Essential::new(0.1));
    // 0.1 pairs with 0.2, and 0.5 has no partner.
    let d = wasserstein(&a, &b, 0, Order::Finite(1.0)).0;
    assert!((d - 1.1).abs() < 1e-12);
}
