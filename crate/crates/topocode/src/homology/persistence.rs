//! Persistence diagrams and boundary-matrix reduction over Z/2.

use std::collections::BTreeMap;

use super::complex::CubicalComplex;
use crate::error::HomologyError;

/// A finite birth-death pair.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct BirthDeath {
    pub birth: f64,
    pub death: f64,
    /// Pixel that created the class, when the diagram came from an image.
    pub birth_pixel: Option<usize>,
    /// Pixel that destroyed the class.
    pub death_pixel: Option<usize>,
}

impl BirthDeath {
    /// Pair without pixel provenance.
    pub fn new(birth: f64, death: f64) -> Self {
        Self {
            birth,
            death,
            birth_pixel: None,
            death_pixel: None,
        }
    }

    /// `death - birth`.
    #[inline]
    pub fn persistence(&self) -> f64 {
        self.death - self.birth
    }
}

/// A class that never dies.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Essential {
    pub birth: f64,
    pub birth_pixel: Option<usize>,
}

impl Essential {
    pub fn new(birth: f64) -> Self {
        Self {
            birth,
            birth_pixel: None,
        }
    }
}

/// All classes of one homology dimension.
#[derive(Debug, Clone, PartialEq, Default)]
pub struct DiagramGroup {
    pub finite: Vec<BirthDeath>,
    pub essential: Vec<Essential>,
}

impl DiagramGroup {
    pub fn is_empty(&self) -> bool {
        self.finite.is_empty() && self.essential.is_empty()
    }
}

static EMPTY_GROUP: DiagramGroup = DiagramGroup {
    finite: Vec::new(),
    essential: Vec::new(),
};

/// Birth-death pairs per homology dimension.
#[derive(Debug, Clone, PartialEq, Default)]
pub struct PersistenceDiagram {
    groups: BTreeMap<usize, DiagramGroup>,
}

impl PersistenceDiagram {
    pub fn new() -> Self {
        Self::default()
    }

    /// Diagram with `H0` and `H1` present but empty.
    pub fn with_dims(dims: impl IntoIterator<Item = usize>) -> Self {
        Self {
            groups: dims.into_iter().map(|h| (h, DiagramGroup::default())).collect(),
        }
    }

    /// Group for dimension `h`; an absent dimension reads as empty.
    pub fn group(&self, h: usize) -> &DiagramGroup {
        self.groups.get(&h).unwrap_or(&EMPTY_GROUP)
    }

    pub fn group_mut(&mut self, h: usize) -> &mut DiagramGroup {
        self.groups.entry(h).or_default()
    }

    pub fn finite(&self, h: usize) -> &[BirthDeath] {
        &self.group(h).finite
    }

    pub fn essential(&self, h: usize) -> &[Essential] {
        &self.group(h).essential
    }

    pub fn push_finite(&mut self, h: usize, pair: BirthDeath) {
        self.group_mut(h).finite.push(pair);
    }

    pub fn push_essential(&mut self, h: usize, class: Essential) {
        self.group_mut(h).essential.push(class);
    }

    /// Dimensions present, ascending.
    pub fn dims(&self) -> impl Iterator<Item = usize> + '_ {
        self.groups.keys().copied()
    }

    pub fn groups(&self) -> impl Iterator<Item = (usize, &DiagramGroup)> {
        self.groups.iter().map(|(&h, g)| (h, g))
    }

    /// Total number of finite pairs across dimensions.
    pub fn finite_count(&self) -> usize {
        self.groups.values().map(|g| g.finite.len()).sum()
    }

    pub fn essential_count(&self) -> usize {
        self.groups.values().map(|g| g.essential.len()).sum()
    }

    /// Same diagram with pixel provenance stripped.
    pub fn without_provenance(&self) -> Self {
        let mut out = self.clone();
        for g in out.groups.values_mut() {
            for p in &mut g.finite {
                p.birth_pixel = None;
                p.death_pixel = None;
            }
            for e in &mut g.essential {
                e.birth_pixel = None;
            }
        }
        out
    }
}

/// Sorted column of row positions; the last entry is the pivot.
type Column = Vec<usize>;

/// `a ^= b` on sorted index sets.
fn add_column(a: &mut Column, b: &[usize], scratch: &mut Column) {
    scratch.clear();
    let (mut i, mut j) = (0, 0);
    while i < a.len() && j < b.len() {
        match a[i].cmp(&b[j]) {
            std::cmp::Ordering::Less => {
                scratch.push(a[i]);
                i += 1;
            }
            std::cmp::Ordering::Greater => {
                scratch.push(b[j]);
                j += 1;
            }
            std::cmp::Ordering::Equal => {
                i += 1;
                j += 1;
            }
        }
    }
    scratch.extend_from_slice(&a[i..]);
    scratch.extend_from_slice(&b[j..]);
    std::mem::swap(a, scratch);
}

/// Computes the `H0` and `H1` persistence diagram of a cubical filtration.
///
/// Cells are ordered by `(value, dimension, index)` and the boundary matrix
/// is reduced column by column, top dimension first, with clearing: once a
/// square kills an edge-born class, that edge's own column is skipped.
/// Pairs with zero persistence are dropped.
pub fn compute_persistence(
    complex: &CubicalComplex,
) -> Result<PersistenceDiagram, HomologyError> {
    let cells = complex.cells();
    for (c, cell) in cells.iter().enumerate() {
        for f in complex.boundary(c) {
            if cells[f].value > cell.value {
                return Err(HomologyError::InvalidFiltration {
                    face: f,
                    coface: c,
                    face_value: cells[f].value,
                    coface_value: cell.value,
                });
            }
        }
    }

    let mut order: Vec<usize> = (0..cells.len()).collect();
    order.sort_by(|&a, &b| {
        cells[a]
            .value
            .total_cmp(&cells[b].value)
            .then(cells[a].dim.cmp(&cells[b].dim))
            .then(a.cmp(&b))
    });
    let mut position = vec![0usize; cells.len()];
    for (pos, &c) in order.iter().enumerate() {
        position[c] = pos;
    }

    let n = cells.len();
    // pivot_owner[row] = column (filtration position) whose reduced pivot is `row`.
    let mut pivot_owner: Vec<Option<usize>> = vec![None; n];
    let mut reduced: Vec<Column> = vec![Vec::new(); n];
    let mut cleared = vec![false; n];
    let mut paired = vec![false; n];
    let mut scratch = Vec::new();

    let mut diagram = PersistenceDiagram::with_dims([0, 1]);

    for dim in [2u8, 1u8] {
        for pos in 0..n {
            let c = order[pos];
            if cells[c].dim != dim || cleared[pos] {
                continue;
            }
            let mut col: Column = complex.boundary(c).map(|f| position[f]).collect();
            col.sort_unstable();
            while let Some(&low) = col.last() {
                match pivot_owner[low] {
                    Some(other) => add_column(&mut col, &reduced[other], &mut scratch),
                    None => break,
                }
            }
            if let Some(&low) = col.last() {
                pivot_owner[low] = Some(pos);
                cleared[low] = true;
                paired[low] = true;
                paired[pos] = true;
                let birth_cell = &cells[order[low]];
                let death_cell = &cells[c];
                if death_cell.value > birth_cell.value {
                    diagram.push_finite(
                        usize::from(dim - 1),
                        BirthDeath {
                            birth: birth_cell.value,
                            death: death_cell.value,
                            birth_pixel: Some(birth_cell.provenance),
                            death_pixel: Some(death_cell.provenance),
                        },
                    );
                }
                reduced[pos] = col;
            }
        }
    }

    for (pos, &c) in order.iter().enumerate() {
        let cell = &cells[c];
        if !paired[pos] && cell.dim < 2 {
            diagram.push_essential(
                usize::from(cell.dim),
                Essential {
                    birth: cell.value,
                    birth_pixel: Some(cell.provenance),
                },
            );
        }
    }
    Ok(diagram)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::homology::build_complex;
    use crate::image::{GrayImage, Orientation};

    #[test]
    fn constant_image_has_one_component() {
        let img = GrayImage::filled(4, 3, 0.3).unwrap();
        let d = compute_persistence(&build_complex(&img, Orientation::Sublevel).unwrap()).unwrap();
        assert_eq!(d.essential(0).len(), 1);
        assert_eq!(d.essential(0)[0].birth, 0.3);
        assert!(d.finite(0).is_empty());
        assert!(d.group(1).is_empty());
    }

    #[test]
    fn invalid_filtration_is_rejected() {
        let img = GrayImage::filled(2, 2, 0.5).unwrap();
        let cx = build_complex(&img, Orientation::Sublevel).unwrap();
        let mut values: Vec<f64> = cx.cells().iter().map(|c| c.value).collect();
        let prov: Vec<usize> = cx.cells().iter().map(|c| c.provenance).collect();
        values[0] = 0.9; // corner vertex above its edges
        let bad = cx.with_values(&values, &prov).unwrap();
        assert!(matches!(
            compute_persistence(&bad),
            Err(HomologyError::InvalidFiltration { face: 0, .. })
        ));
    }

    #[test]
    fn add_column_is_symmetric_difference() {
        let mut a = vec![1, 3, 5];
        let mut s = Vec::new();
        add_column(&mut a, &[3, 4], &mut s);
        assert_eq!(a, vec![1, 4, 5]);
    }
}
