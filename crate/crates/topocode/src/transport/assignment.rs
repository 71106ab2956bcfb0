//! Dense linear assignment.

/// Solves the square assignment problem exactly with the Hungarian method
/// (shortest augmenting paths with row/column potentials), `O(n^3)`.
///
/// `cost` is row-major `n x n`. Returns `assignment[row] = column` and the
/// optimal total.
pub fn hungarian(cost: &[f64], n: usize) -> (Vec<usize>, f64) {
    assert_eq!(cost.len(), n * n, "cost matrix must be n x n");
    if n == 0 {
        return (Vec::new(), 0.0);
    }
    // 1-based internally; index 0 is the virtual source column.
    let mut u = vec![0.0f64; n + 1];
    let mut v = vec![0.0f64; n + 1];
    let mut col_owner = vec![0usize; n + 1];
    let mut way = vec![0usize; n + 1];
    let mut min_to = vec![f64::INFINITY; n + 1];
    let mut used = vec![false; n + 1];

    for row in 1..=n {
        col_owner[0] = row;
        let mut j0 = 0usize;
        min_to.iter_mut().for_each(|m| *m = f64::INFINITY);
        used.iter_mut().for_each(|x| *x = false);
        loop {
            used[j0] = true;
            let i0 = col_owner[j0];
            let mut delta = f64::INFINITY;
            let mut j1 = 0usize;
            for j in 1..=n {
                if used[j] {
                    continue;
                }
                let reduced = cost[(i0 - 1) * n + (j - 1)] - u[i0] - v[j];
                if reduced < min_to[j] {
                    min_to[j] = reduced;
                    way[j] = j0;
                }
                if min_to[j] < delta {
                    delta = min_to[j];
                    j1 = j;
                }
            }
            for j in 0..=n {
                if used[j] {
                    u[col_owner[j]] += delta;
                    v[j] -= delta;
                } else {
                    min_to[j] -= delta;
                }
            }
            j0 = j1;
            if col_owner[j0] == 0 {
                break;
            }
        }
        loop {
            let j1 = way[j0];
            col_owner[j0] = col_owner[j1];
            j0 = j1;
            if j0 == 0 {
                break;
            }
        }
    }

    let mut assignment = vec![0usize; n];
    for j in 1..=n {
        assignment[col_owner[j] - 1] = j - 1;
    }
    let total = assignment
        .iter()
        .enumerate()
        .map(|(r, &c)| cost[r * n + c])
        .sum();
    (assignment, total)
}

/// Maximum bipartite matching on an `n x n` graph given by `allowed(row, col)`.
///
/// Returns `Some(assignment)` when a perfect matching exists. Uses repeated
/// augmenting-path search (Kuhn), with rows and columns tried in index order
/// so the result is deterministic.
pub fn perfect_matching(n: usize, allowed: impl Fn(usize, usize) -> bool) -> Option<Vec<usize>> {
    let adjacency: Vec<Vec<usize>> = (0..n)
        .map(|r| (0..n).filter(|&c| allowed(r, c)).collect())
        .collect();
    let mut col_owner: Vec<Option<usize>> = vec![None; n];

    fn augment(
        row: usize,
        adjacency: &[Vec<usize>],
        seen: &mut [bool],
        col_owner: &mut [Option<usize>],
    ) -> bool {
        for &c in &adjacency[row] {
            if seen[c] {
                continue;
            }
            seen[c] = true;
            if col_owner[c].map_or(true, |r| augment(r, adjacency, seen, col_owner)) {
                col_owner[c] = Some(row);
                return true;
            }
        }
        false
    }

    let mut seen = vec![false; n];
    for row in 0..n {
        seen.iter_mut().for_each(|s| *s = false);
        if !augment(row, &adjacency, &mut seen, &mut col_owner) {
            return None;
        }
    }
    let mut assignment = vec![0usize; n];
    for (c, owner) in col_owner.iter().enumerate() {
        assignment[owner.expect("perfect matching covers every column")] = c;
    }
    Some(assignment)
}
