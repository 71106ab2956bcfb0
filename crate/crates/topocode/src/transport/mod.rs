//! Wasserstein and bottleneck distances between persistence diagrams.
//!
//! Two diagrams are compared by an optimal partial matching of their finite
//! pairs under the L∞ ground metric. Any pair left unmatched is charged its
//! distance to the diagonal. The finite-order problem is a square assignment
//! over the diagonal-augmented cost matrix; the bottleneck problem is a
//! threshold search over the same edges with a perfect-matching test.
//!
//! Essential classes never reach the diagonal. They are matched to essential
//! classes of the same dimension in birth order, and each class without a
//! partner costs [`UNMATCHED_ESSENTIAL_COST`].

mod assignment;

pub use assignment::{hungarian, perfect_matching};

use std::fmt;
use std::str::FromStr;

use crate::homology::{BirthDeath, Essential, PersistenceDiagram};

/// Charge for an essential class with no partner: the full coordinate range.
pub const UNMATCHED_ESSENTIAL_COST: f64 = 1.0;

/// Order of the Wasserstein distance.
#[derive(Debug, Clone, Copy, PartialEq)]
pub enum Order {
    /// `p >= 1`.
    Finite(f64),
    /// Bottleneck distance.
    Infinity,
}

impl Order {
    pub fn finite(p: f64) -> Self {
        assert!(p >= 1.0, "Wasserstein order must be >= 1, got {p}");
        Order::Finite(p)
    }

    #[inline]
    fn power(self, cost: f64) -> f64 {
        match self {
            Order::Finite(p) if p == 1.0 => cost,
            Order::Finite(p) if p == 2.0 => cost * cost,
            Order::Finite(p) => cost.powf(p),
            Order::Infinity => cost,
        }
    }

    /// Folds edge costs into a distance.
    pub fn aggregate(self, costs: impl IntoIterator<Item = f64>) -> f64 {
        let mut costs: Vec<f64> = costs.into_iter().collect();
        match self {
            Order::Infinity => costs.into_iter().fold(0.0, f64::max),
            Order::Finite(p) => {
                // Summing in sorted order makes the result independent of
                // which diagram came first.
                costs.sort_by(f64::total_cmp);
                let sum: f64 = costs.into_iter().map(|c| self.power(c)).sum();
                if p == 1.0 {
                    sum
                } else if p == 2.0 {
                    sum.sqrt()
                } else {
                    sum.powf(1.0 / p)
                }
            }
        }
    }
}

impl Default for Order {
    fn default() -> Self {
        Order::Finite(2.0)
    }
}

impl fmt::Display for Order {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Order::Finite(p) => write!(f, "{p}"),
            Order::Infinity => f.write_str("inf"),
        }
    }
}

impl FromStr for Order {
    type Err = String;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        match s.trim() {
            "inf" | "infinity" | "Inf" => Ok(Order::Infinity),
            other => match other.parse::<f64>() {
                Ok(p) if p >= 1.0 && p.is_finite() => Ok(Order::Finite(p)),
                _ => Err(format!("invalid Wasserstein order {other:?}; expected p >= 1 or inf")),
            },
        }
    }
}

/// L∞ distance from `(birth, death)` to the nearest diagonal point.
#[inline]
pub fn diagonal_cost(birth: f64, death: f64) -> f64 {
    (death - birth) / 2.0
}

/// L∞ distance between two pairs.
#[inline]
pub fn pair_cost(a: &BirthDeath, b: &BirthDeath) -> f64 {
    (a.birth - b.birth).abs().max((a.death - b.death).abs())
}

/// An edge between a pair of the first diagram and one of the second.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct MatchedPair {
    pub left: usize,
    pub right: usize,
    pub cost: f64,
}

/// A pair sent to the diagonal.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct DiagonalEdge {
    pub index: usize,
    pub cost: f64,
}

/// Optimal matching between one dimension of two diagrams.
#[derive(Debug, Clone, PartialEq)]
pub struct DiagramMatching {
    pub order: Order,
    pub matched: Vec<MatchedPair>,
    pub left_to_diagonal: Vec<DiagonalEdge>,
    pub right_to_diagonal: Vec<DiagonalEdge>,
    /// Essential classes matched by birth.
    pub essential: Vec<MatchedPair>,
    /// Essential classes of either side with no partner.
    pub left_unmatched_essential: Vec<usize>,
    pub right_unmatched_essential: Vec<usize>,
}

impl DiagramMatching {
    /// Costs of every edge of the matching, finite and essential.
    pub fn edge_costs(&self) -> impl Iterator<Item = f64> + '_ {
        self.matched
            .iter()
            .map(|m| m.cost)
            .chain(self.left_to_diagonal.iter().map(|d| d.cost))
            .chain(self.right_to_diagonal.iter().map(|d| d.cost))
            .chain(self.essential.iter().map(|m| m.cost))
            .chain(
                std::iter::repeat(UNMATCHED_ESSENTIAL_COST).take(
                    self.left_unmatched_essential.len() + self.right_unmatched_essential.len(),
                ),
            )
    }

    /// The distance this matching realizes.
    pub fn distance(&self) -> f64 {
        self.order.aggregate(self.edge_costs())
    }
}

/// Matches essential classes in birth order; ties keep index order.
fn match_essentials(
    left: &[Essential],
    right: &[Essential],
) -> (Vec<MatchedPair>, Vec<usize>, Vec<usize>) {
    let sorted = |xs: &[Essential]| {
        let mut idx: Vec<usize> = (0..xs.len()).collect();
        idx.sort_by(|&a, &b| xs[a].birth.total_cmp(&xs[b].birth).then(a.cmp(&b)));
        idx
    };
    let (ls, rs) = (sorted(left), sorted(right));
    let k = ls.len().min(rs.len());
    let matched = ls
        .iter()
        .zip(&rs)
        .map(|(&l, &r)| MatchedPair {
            left: l,
            right: r,
            cost: (left[l].birth - right[r].birth).abs(),
        })
        .collect();
    (matched, ls[k..].to_vec(), rs[k..].to_vec())
}

/// Finite-part matching in the augmented `(m1 + m2) x (m1 + m2)` problem.
///
/// Rows `0..m1` are left pairs, rows `m1..` are diagonal copies of right
/// pairs; columns `0..m2` are right pairs, columns `m2..` diagonal copies of
/// left pairs.
struct Augmented<'a> {
    left: &'a [BirthDeath],
    right: &'a [BirthDeath],
}

impl Augmented<'_> {
    fn size(&self) -> usize {
        self.left.len() + self.right.len()
    }

    /// Ground cost (not raised to p) of cell `(row, col)`.
    fn cost(&self, row: usize, col: usize) -> f64 {
        let (m1, m2) = (self.left.len(), self.right.len());
        match (row < m1, col < m2) {
            (true, true) => pair_cost(&self.left[row], &self.right[col]),
            (true, false) => diagonal_cost(self.left[row].birth, self.left[row].death),
            (false, true) => diagonal_cost(self.right[col].birth, self.right[col].death),
            (false, false) => 0.0,
        }
    }

    fn into_matching(&self, assignment: &[usize], order: Order) -> DiagramMatching {
        let (m1, m2) = (self.left.len(), self.right.len());
        let mut matching = DiagramMatching {
            order,
            matched: Vec::new(),
            left_to_diagonal: Vec::new(),
            right_to_diagonal: Vec::new(),
            essential: Vec::new(),
            left_unmatched_essential: Vec::new(),
            right_unmatched_essential: Vec::new(),
        };
        let mut right_matched = vec![false; m2];
        for (row, &col) in assignment.iter().enumerate().take(m1) {
            if col < m2 {
                right_matched[col] = true;
                matching.matched.push(MatchedPair {
                    left: row,
                    right: col,
                    cost: self.cost(row, col),
                });
            } else {
                matching.left_to_diagonal.push(DiagonalEdge {
                    index: row,
                    cost: self.cost(row, col),
                });
            }
        }
        for (j, done) in right_matched.iter().enumerate() {
            if !done {
                matching.right_to_diagonal.push(DiagonalEdge {
                    index: j,
                    cost: diagonal_cost(self.right[j].birth, self.right[j].death),
                });
            }
        }
        matching
    }
}

fn solve_finite(aug: &Augmented<'_>, order: Order) -> Vec<usize> {
    let n = aug.size();
    let mut cost = Vec::with_capacity(n * n);
    for r in 0..n {
        for c in 0..n {
            cost.push(order.power(aug.cost(r, c)));
        }
    }
    hungarian(&cost, n).0
}

fn solve_bottleneck(aug: &Augmented<'_>) -> Vec<usize> {
    let n = aug.size();
    if n == 0 {
        return Vec::new();
    }
    let mut candidates: Vec<f64> = (0..n)
        .flat_map(|r| (0..n).map(move |c| (r, c)))
        .map(|(r, c)| aug.cost(r, c))
        .collect();
    candidates.sort_by(f64::total_cmp);
    candidates.dedup();
    // The largest candidate always admits a perfect matching (everything is
    // allowed), so the search has a feasible upper end.
    let (mut lo, mut hi) = (0usize, candidates.len() - 1);
    while lo < hi {
        let mid = (lo + hi) / 2;
        let t = candidates[mid];
        if perfect_matching(n, |r, c| aug.cost(r, c) <= t).is_some() {
            hi = mid;
        } else {
            lo = mid + 1;
        }
    }
    let t = candidates[lo];
    perfect_matching(n, |r, c| aug.cost(r, c) <= t).expect("threshold is feasible")
}

/// Wasserstein distance of order `order` between dimension `h` of two
/// diagrams, with the matching that realizes it.
pub fn wasserstein(
    left: &PersistenceDiagram,
    right: &PersistenceDiagram,
    h: usize,
    order: Order,
) -> (f64, DiagramMatching) {
    let aug = Augmented {
        left: left.finite(h),
        right: right.finite(h),
    };
    let assignment = match order {
        Order::Finite(_) => solve_finite(&aug, order),
        Order::Infinity => solve_bottleneck(&aug),
    };
    let mut matching = aug.into_matching(&assignment, order);
    let (essential, lu, ru) = match_essentials(left.essential(h), right.essential(h));
    matching.essential = essential;
    matching.left_unmatched_essential = lu;
    matching.right_unmatched_essential = ru;
    (matching.distance(), matching)
}

/// Bottleneck distance of dimension `h`.
pub fn bottleneck(left: &PersistenceDiagram, right: &PersistenceDiagram, h: usize) -> f64 {
    wasserstein(left, right, h, Order::Infinity).0
}

/// Sum of per-dimension distances over `dims`.
pub fn total_distance(
    left: &PersistenceDiagram,
    right: &PersistenceDiagram,
    order: Order,
    dims: &[usize],
) -> f64 {
    dims.iter()
        .map(|&h| wasserstein(left, right, h, order).0)
        .sum()
}
