//! Independent reference implementations used by the integration tests.
//!
//! Nothing here calls into the reduction or assignment code: each oracle
//! recomputes its answer from first principles on small inputs.

#![allow(dead_code)]

use rand::Rng;
use topocode::homology::{BirthDeath, PersistenceDiagram};
use topocode::pipeline::CorrectionConfig;
use topocode::transport::{diagonal_cost, pair_cost, wasserstein, Order};
use topocode::{diagram_of, GrayImage};

/// Image with pairwise distinct values drawn from `[lo, hi)`.
pub fn distinct_image<R: Rng>(rng: &mut R, w: usize, h: usize, lo: f64, hi: f64) -> GrayImage {
    loop {
        let px: Vec<f64> = (0..w * h).map(|_| rng.random_range(lo..hi)).collect();
        let mut sorted = px.clone();
        sorted.sort_by(f64::total_cmp);
        if sorted.windows(2).all(|p| p[0] != p[1]) {
            return GrayImage::new(w, h, px).unwrap();
        }
    }
}

fn find(parent: &mut [usize], mut x: usize) -> usize {
    while parent[x] != x {
        parent[x] = parent[parent[x]];
        x = parent[x];
    }
    x
}

/// H0 barcode of the sublevel filtration `values` on a grid with
/// 8-connectivity, by a union-find sweep with the elder rule.
/// Returns finite `(birth, death)` pairs (zero-length ones dropped) sorted,
/// and the essential birth.
pub fn union_find_h0(w: usize, h: usize, values: &[f64]) -> (Vec<(f64, f64)>, f64) {
    let n = w * h;
    let mut order: Vec<usize> = (0..n).collect();
    order.sort_by(|&a, &b| values[a].total_cmp(&values[b]).then(a.cmp(&b)));
    let mut parent: Vec<usize> = (0..n).collect();
    // Root's birth pixel.
    let birth: Vec<usize> = (0..n).collect();
    let mut present = vec![false; n];
    let mut pairs = Vec::new();
    for &p in &order {
        present[p] = true;
        let (x, y) = ((p % w) as isize, (p / w) as isize);
        for dy in -1..=1 {
            for dx in -1..=1 {
                let (nx, ny) = (x + dx, y + dy);
                if (dx, dy) == (0, 0) || nx < 0 || ny < 0 || nx >= w as isize || ny >= h as isize {
                    continue;
                }
                let q = ny as usize * w + nx as usize;
                if !present[q] {
                    continue;
                }
                let (rp, rq) = (find(&mut parent, p), find(&mut parent, q));
                if rp == rq {
                    continue;
                }
                let (bp, bq) = (birth[rp], birth[rq]);
                let older_p = (values[bp], bp) < (values[bq], bq);
                let (old, young) = if older_p { (rp, rq) } else { (rq, rp) };
                let b = values[birth[young]];
                if values[p] > b {
                    pairs.push((b, values[p]));
                }
                parent[young] = old;
            }
        }
    }
    pairs.sort_by(|a, b| a.0.total_cmp(&b.0).then(a.1.total_cmp(&b.1)));
    (pairs, values[order[0]])
}

/// Rank over GF(2) of a matrix given as rows of column indices.
pub fn gf2_rank(rows: Vec<Vec<usize>>, cols: usize) -> usize {
    let words = cols.div_ceil(64).max(1);
    let mut m: Vec<Vec<u64>> = rows
        .into_iter()
        .map(|r| {
            let mut bits = vec![0u64; words];
            for c in r {
                bits[c / 64] ^= 1 << (c % 64);
            }
            bits
        })
        .collect();
    let mut rank = 0;
    for c in 0..cols {
        let (wi, bit) = (c / 64, 1u64 << (c % 64));
        let Some(pivot) = (rank..m.len()).find(|&r| m[r][wi] & bit != 0) else {
            continue;
        };
        m.swap(rank, pivot);
        let prow = m[rank].clone();
        for (r, row) in m.iter_mut().enumerate() {
            if r != rank && row[wi] & bit != 0 {
                for (a, b) in row.iter_mut().zip(&prow) {
                    *a ^= b;
                }
            }
        }
        rank += 1;
    }
    rank
}

/// Betti numbers and cell counts of the T-construction sublevel complex at
/// threshold `t`, computed by cell enumeration and boundary ranks.
///
/// Returns `(beta0, beta1, vertices, edges, squares)`.
pub fn sublevel_betti(w: usize, h: usize, values: &[f64], t: f64) -> (usize, usize, usize, usize, usize) {
    let (gw, gh) = (2 * w + 1, 2 * h + 1);
    // Filtration value of grid cell (i, j): min over incident pixels.
    let value = |i: usize, j: usize| -> f64 {
        let xs: Vec<usize> = if i % 2 == 1 {
            vec![i / 2]
        } else {
            [i / 2, i / 2 + 1].into_iter().filter(|&x| x >= 1 && x <= w).map(|x| x - 1).collect()
        };
        let ys: Vec<usize> = if j % 2 == 1 {
            vec![j / 2]
        } else {
            [j / 2, j / 2 + 1].into_iter().filter(|&y| y >= 1 && y <= h).map(|y| y - 1).collect()
        };
        let mut m = f64::INFINITY;
        for &x in &xs {
            for &y in &ys {
                m = m.min(values[y * w + x]);
            }
        }
        m
    };
    let mut index = vec![usize::MAX; gw * gh];
    let (mut verts, mut edges, mut squares) = (Vec::new(), Vec::new(), Vec::new());
    for j in 0..gh {
        for i in 0..gw {
            if value(i, j) > t {
                continue;
            }
            let list = match (i % 2) + (j % 2) {
                0 => &mut verts,
                1 => &mut edges,
                _ => &mut squares,
            };
            index[j * gw + i] = list.len();
            list.push((i, j));
        }
    }
    let faces = |i: usize, j: usize| -> Vec<(usize, usize)> {
        let mut f = Vec::new();
        if i % 2 == 1 {
            f.push((i - 1, j));
            f.push((i + 1, j));
        }
        if j % 2 == 1 {
            f.push((i, j - 1));
            f.push((i, j + 1));
        }
        f
    };
    let d1 = edges
        .iter()
        .map(|&(i, j)| faces(i, j).into_iter().map(|(a, b)| index[b * gw + a]).collect())
        .collect();
    // Faces of a square are edges: (i +- 1, j) and (i, j +- 1).
    let d2 = squares
        .iter()
        .map(|&(i, j)| {
            [(i - 1, j), (i + 1, j), (i, j - 1), (i, j + 1)]
                .into_iter()
                .map(|(a, b)| index[b * gw + a])
                .collect()
        })
        .collect();
    let r1 = gf2_rank(d1, verts.len());
    let r2 = gf2_rank(d2, edges.len());
    (
        verts.len() - r1,
        edges.len() - r1 - r2,
        verts.len(),
        edges.len(),
        squares.len(),
    )
}

/// Betti number of dimension `h` at `t` read off a diagram.
pub fn betti_from_diagram(d: &PersistenceDiagram, h: usize, t: f64) -> usize {
    d.finite(h).iter().filter(|p| p.birth <= t && t < p.death).count()
        + d.essential(h).iter().filter(|e| e.birth <= t).count()
}

/// Distance by enumerating every partial injection of `left` into `right`.
pub fn exhaustive_distance(left: &[BirthDeath], right: &[BirthDeath], order: Order) -> f64 {
    fn go(
        i: usize,
        left: &[BirthDeath],
        right: &[BirthDeath],
        used: &mut Vec<bool>,
        costs: &mut Vec<f64>,
        order: Order,
        best: &mut f64,
    ) {
        if i == left.len() {
            let mut all = costs.clone();
            for (j, r) in right.iter().enumerate() {
                if !used[j] {
                    all.push(diagonal_cost(r.birth, r.death));
                }
            }
            let d = match order {
                Order::Infinity => all.iter().copied().fold(0.0, f64::max),
                Order::Finite(p) => all.iter().map(|c| c.powf(p)).sum::<f64>().powf(1.0 / p),
            };
            *best = best.min(d);
            return;
        }
        costs.push(diagonal_cost(left[i].birth, left[i].death));
        go(i + 1, left, right, used, costs, order, best);
        costs.pop();
        for j in 0..right.len() {
            if !used[j] {
                used[j] = true;
                costs.push(pair_cost(&left[i], &right[j]));
                go(i + 1, left, right, used, costs, order, best);
                costs.pop();
                used[j] = false;
            }
        }
    }
    let mut best = f64::INFINITY;
    go(0, left, right, &mut vec![false; right.len()], &mut Vec::new(), order, &mut best);
    best
}

/// Random H0 diagram with up to `max_pairs` finite pairs in `[0, 1]`.
pub fn random_diagram<R: Rng>(rng: &mut R, max_pairs: usize) -> PersistenceDiagram {
    let mut d = PersistenceDiagram::with_dims([0, 1]);
    for _ in 0..rng.random_range(0..=max_pairs) {
        let b: f64 = rng.random_range(0.0..0.9);
        let e: f64 = rng.random_range(b + 0.01..=1.0);
        d.push_finite(0, BirthDeath::new(b, e));
    }
    d
}

/// Finite-difference step for gradient checks.
pub const FD_STEP: f64 = 1e-4;

pub fn random_pixels<R: Rng>(rng: &mut R, n: usize) -> Vec<f64> {
    loop {
        let px: Vec<f64> = (0..n)
            .map(|_| loop {
                let v: f64 = rng.random_range(0.02..0.98);
                if (v - 0.5).abs() > 0.02 {
                    break v;
                }
            })
            .collect();
        let mut s = px.clone();
        s.sort_by(f64::total_cmp);
        if s.windows(2).all(|w| w[1] - w[0] > 4.0 * FD_STEP) {
            return px;
        }
    }
}

/// Everything the subgradient depends on: which pixels create each class and
/// which edges the optimal matching uses, including which coordinate
/// dominates each L∞ cost and which edge is the longest.
pub fn signature(img: &GrayImage, target: &PersistenceDiagram, cfg: &CorrectionConfig) -> String {
    let d = diagram_of(img, cfg.orientation).unwrap();
    let mut s = String::new();
    for &h in &cfg.dims {
        for p in d.finite(h) {
            s += &format!("f{h}:{:?}:{:?};", p.birth_pixel, p.death_pixel);
        }
        for e in d.essential(h) {
            s += &format!("e{h}:{:?};", e.birth_pixel);
        }
        let (_, m) = wasserstein(target, &d, h, cfg.order);
        let mut costs = Vec::new();
        for e in &m.matched {
            let (t, c) = (&target.finite(h)[e.left], &d.finite(h)[e.right]);
            let (db, dd) = (c.birth - t.birth, c.death - t.death);
            s += &format!("m{}-{}:{}:{}{};", e.left, e.right, db.abs() >= dd.abs(), db > 0.0, dd > 0.0);
            costs.push(e.cost);
        }
        for e in &m.left_to_diagonal {
            s += &format!("l{};", e.index);
            costs.push(e.cost);
        }
        for e in &m.right_to_diagonal {
            s += &format!("r{};", e.index);
            costs.push(e.cost);
        }
        for e in &m.essential {
            let delta = d.essential(h)[e.right].birth - target.essential(h)[e.left].birth;
            s += &format!("s{}-{}:{};", e.left, e.right, delta > 0.0);
            costs.push(e.cost);
        }
        if cfg.order == Order::Infinity {
            let argmax = costs
                .iter()
                .enumerate()
                .fold((0, f64::NEG_INFINITY), |b, (i, &c)| if c > b.1 { (i, c) } else { b });
            s += &format!("max{};", argmax.0);
        }
    }
    s
}

pub fn with_pixel(img: &GrayImage, i: usize, delta: f64) -> GrayImage {
    let mut px = img.pixels().to_vec();
    px[i] += delta;
    GrayImage::new(img.width(), img.height(), px).unwrap()
}

/// Draws a configuration whose signature is unchanged by every single-pixel
/// step of `H` in either direction.
pub fn tie_free<R: Rng>(rng: &mut R, cfg: &CorrectionConfig) -> (GrayImage, PersistenceDiagram) {
    loop {
        let img = GrayImage::new(6, 6, random_pixels(rng, 36)).unwrap();
        let other = GrayImage::new(6, 6, random_pixels(rng, 36)).unwrap();
        let target = diagram_of(&other, cfg.orientation).unwrap();
        let sig = signature(&img, &target, cfg);
        let stable = (0..36).all(|i| {
            signature(&with_pixel(&img, i, FD_STEP), &target, cfg) == sig
                && signature(&with_pixel(&img, i, -FD_STEP), &target, cfg) == sig
        });
        if stable {
            return (img, target);
        }
    }
}
