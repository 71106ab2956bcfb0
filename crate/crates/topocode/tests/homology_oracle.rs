mod common;

use common::{betti_from_diagram, distinct_image, sublevel_betti, union_find_h0};
use proptest::prelude::*;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use topocode::{build_complex, compute_persistence, diagram_of, GrayImage, Orientation};

fn finite_pairs(d: &topocode::PersistenceDiagram, h: usize) -> Vec<(f64, f64)> {
    let mut v: Vec<(f64, f64)> = d.finite(h).iter().map(|p| (p.birth, p.death)).collect();
    v.sort_by(|a, b| a.0.total_cmp(&b.0).then(a.1.total_cmp(&b.1)));
    v
}

fn image_from(seed: u64, w: usize, h: usize) -> GrayImage {
    distinct_image(&mut ChaCha8Rng::seed_from_u64(seed), w, h, 0.0, 1.0)
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(200))]

    #[test]
    fn h0_matches_union_find(seed in any::<u64>(), w in 2usize..8, h in 2usize..8) {
        let img = image_from(seed, w, h);
        let d = diagram_of(&img, Orientation::Sublevel).unwrap();
        let (pairs, essential) = union_find_h0(w, h, img.pixels());
        prop_assert_eq!(finite_pairs(&d, 0), pairs);
        prop_assert_eq!(d.essential(0).len(), 1);
        prop_assert_eq!(d.essential(0)[0].birth, essential);
        prop_assert!(d.essential(1).is_empty());
    }

    #[test]
    fn betti_numbers_agree_with_ranks(seed in any::<u64>()) {
        let img = image_from(seed, 5, 5);
        let d = diagram_of(&img, Orientation::Sublevel).unwrap();
        for &t in img.pixels() {
            let (b0, b1, v, e, f) = sublevel_betti(5, 5, img.pixels(), t);
            prop_assert_eq!(b0 as i64 - b1 as i64, v as i64 - e as i64 + f as i64);
            prop_assert_eq!(betti_from_diagram(&d, 0, t), b0);
            prop_assert_eq!(betti_from_diagram(&d, 1, t), b1);
        }
    }

    #[test]
    fn provenance_is_exact(seed in any::<u64>(), superlevel in any::<bool>()) {
        let img = image_from(seed, 6, 5);
        let orientation = if superlevel { Orientation::Superlevel } else { Orientation::Sublevel };
        let d = diagram_of(&img, orientation).unwrap();
        for h in [0, 1] {
            for p in d.finite(h) {
                let f = |px: Option<usize>| orientation.filtration_value(img.pixels()[px.unwrap()]);
                prop_assert_eq!(f(p.birth_pixel), p.birth);
                prop_assert_eq!(f(p.death_pixel), p.death);
                prop_assert!(p.death > p.birth);
                prop_assert!((0.0..=1.0).contains(&p.birth) && (0.0..=1.0).contains(&p.death));
            }
        }
    }

    #[test]
    fn constant_shift_moves_every_coordinate(seed in any::<u64>(), c in 0.0f64..0.2) {
        let base = distinct_image(&mut ChaCha8Rng::seed_from_u64(seed), 6, 6, 0.0, 0.8);
        let shifted = GrayImage::new(6, 6, base.pixels().iter().map(|v| v + c).collect()).unwrap();
        let d0 = diagram_of(&base, Orientation::Sublevel).unwrap();
        let d1 = diagram_of(&shifted, Orientation::Sublevel).unwrap();
        for h in [0, 1] {
            let a = finite_pairs(&d0, h);
            let b = finite_pairs(&d1, h);
            prop_assert_eq!(a.len(), b.len());
            for (p, q) in a.iter().zip(&b) {
                prop_assert_eq!(p.0 + c, q.0);
                prop_assert_eq!(p.1 + c, q.1);
            }
        }
    }

    #[test]
    fn full_complex_has_euler_characteristic_one(w in 2usize..10, h in 2usize..10, v in 0.0f64..=1.0) {
        let img = GrayImage::filled(w, h, v).unwrap();
        let c = build_complex(&img, Orientation::Superlevel).unwrap();
        prop_assert_eq!(c.euler_characteristic(), 1);
        let d = compute_persistence(&c).unwrap();
        prop_assert_eq!(d.finite_count(), 0);
        prop_assert_eq!(d.essential(0).len(), 1);
    }
}

#[test]
fn two_blobs_merge_once() {
    let mut px = vec![0.9; 36];
    for i in [7, 8, 13, 14] {
        px[i] = 0.1;
    }
    px[28] = 0.2;
    px[29] = 0.2;
    let img = GrayImage::new(6, 6, px).unwrap();
    let d = diagram_of(&img, Orientation::Sublevel).unwrap();
    assert_eq!(finite_pairs(&d, 0), vec![(0.2, 0.9)]);
    assert_eq!(d.essential(0).len(), 1);
    assert_eq!(d.essential(0)[0].birth, 0.1);
    assert!(d.finite(1).is_empty());
    let (pairs, _) = union_find_h0(6, 6, img.pixels());
    assert_eq!(pairs, vec![(0.2, 0.9)]);
}

#[test]
fn annulus_has_one_loop() {
    let mut px = vec![1.0; 81];
    for y in 2..7 {
        for x in 2..7 {
            if x == 2 || x == 6 || y == 2 || y == 6 {
                px[y * 9 + x] = 0.1;
            }
        }
    }
    let img = GrayImage::new(9, 9, px).unwrap();
    let d = diagram_of(&img, Orientation::Sublevel).unwrap();
    assert_eq!(finite_pairs(&d, 1), vec![(0.1, 1.0)]);
    assert!(d.finite(0).is_empty());
    let (_, b1, ..) = sublevel_betti(9, 9, img.pixels(), 0.1);
    assert_eq!(b1, 1);
    let (_, b1, ..) = sublevel_betti(9, 9, img.pixels(), 1.0);
    assert_eq!(b1, 0);
}

#[test]
fn bright_zero_glyph_has_one_loop_under_superlevel() {
    // A "0" drawn bright on a dark background.
    let rows = [
        "........",
        "..####..",
        ".#....#.",
        ".#....#.",
        ".#....#.",
        "..####..",
        "........",
    ];
    let px: Vec<f64> = rows
        .iter()
        .flat_map(|r| r.bytes().map(|b| if b == b'#' { 1.0 } else { 0.0 }))
        .collect();
    let img = GrayImage::new(8, 7, px).unwrap();
    let d = diagram_of(&img, Orientation::Superlevel).unwrap();
    assert_eq!(d.finite(1).len(), 1);
    assert_eq!(d.finite(0).len(), 0);
}
