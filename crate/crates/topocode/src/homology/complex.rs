//! Cubical complexes over a pixel grid.
//!
//! Every pixel is a closed unit square (a top-dimensional cell). Its four
//! edges and four corners are shared with neighbouring pixels. Cells are
//! addressed on the doubled grid of size `(2W + 1) x (2H + 1)`: a cell at
//! `(i, j)` has dimension `(i odd) + (j odd)`, and pixel `(x, y)` sits at
//! `(2x + 1, 2y + 1)`.
//!
//! A lower-dimensional cell enters the filtration together with the first of
//! the pixels that contain it, so its value is the minimum over those pixels.
//! The pixel attaining that minimum is kept as the cell's provenance, with
//! ties going to the smallest pixel index.

use crate::error::HomologyError;
use crate::image::{GrayImage, Orientation};

/// One cell of a [`CubicalComplex`].
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Cell {
    pub dim: u8,
    pub value: f64,
    /// Row-major index of the pixel whose value this cell carries.
    pub provenance: usize,
}

/// A filtered cubical complex built from an image.
#[derive(Debug, Clone, PartialEq)]
pub struct CubicalComplex {
    width: usize,
    height: usize,
    orientation: Orientation,
    cells: Vec<Cell>,
}

impl CubicalComplex {
    /// Image width in pixels.
    pub fn width(&self) -> usize {
        self.width
    }

    pub fn height(&self) -> usize {
        self.height
    }

    pub fn orientation(&self) -> Orientation {
        self.orientation
    }

    pub fn cells(&self) -> &[Cell] {
        &self.cells
    }

    pub fn len(&self) -> usize {
        self.cells.len()
    }

    pub fn is_empty(&self) -> bool {
        self.cells.is_empty()
    }

    fn grid_width(&self) -> usize {
        2 * self.width + 1
    }

    /// Doubled-grid coordinates of a cell index.
    pub fn coords(&self, cell: usize) -> (usize, usize) {
        (cell % self.grid_width(), cell / self.grid_width())
    }

    /// Index of the cell covering pixel `(x, y)`.
    pub fn pixel_cell(&self, pixel: usize) -> usize {
        let (x, y) = (pixel % self.width, pixel / self.width);
        (2 * y + 1) * self.grid_width() + 2 * x + 1
    }

    /// Codimension-one faces of a cell. Empty for vertices.
    pub fn boundary(&self, cell: usize) -> impl Iterator<Item = usize> + '_ {
        let gw = self.grid_width();
        let (i, j) = self.coords(cell);
        let horizontal = (i % 2 == 1).then(|| [cell - 1, cell + 1]);
        let vertical = (j % 2 == 1).then(|| [cell - gw, cell + gw]);
        horizontal
            .into_iter()
            .flatten()
            .chain(vertical.into_iter().flatten())
    }

    /// Euler characteristic `#vertices - #edges + #squares`.
    pub fn euler_characteristic(&self) -> i64 {
        self.cells
            .iter()
            .map(|c| if c.dim == 1 { -1 } else { 1 })
            .sum()
    }

    /// Replaces cell values and provenance without any ordering checks.
    ///
    /// Used to feed hand-built filtrations into
    /// [`compute_persistence`](super::compute_persistence), which validates
    /// them.
    pub fn with_values(
        &self,
        values: &[f64],
        provenance: &[usize],
    ) -> Result<CubicalComplex, HomologyError> {
        if values.len() != self.cells.len() || provenance.len() != self.cells.len() {
            return Err(HomologyError::CellCountMismatch {
                expected: self.cells.len(),
                actual: values.len().min(provenance.len()),
            });
        }
        let mut out = self.clone();
        for ((cell, &v), &p) in out.cells.iter_mut().zip(values).zip(provenance) {
            cell.value = v;
            cell.provenance = p;
        }
        Ok(out)
    }
}

/// Pixel indices along one axis that contain grid line/segment `i`.
fn incident_range(i: usize, extent: usize) -> std::ops::Range<usize> {
    if i % 2 == 1 {
        let x = i / 2;
        x..x + 1
    } else {
        let x = i / 2;
        x.saturating_sub(1)..x.min(extent - 1) + 1
    }
}

/// Builds the cubical filtration of `image`.
///
/// With [`Orientation::Superlevel`] every pixel carries `1 - value`.
pub fn build_complex(
    image: &GrayImage,
    orientation: Orientation,
) -> Result<CubicalComplex, HomologyError> {
    let (w, h) = (image.width(), image.height());
    if w < 2 || h < 2 {
        return Err(crate::error::ImageError::DimensionTooSmall {
            width: w,
            height: h,
        }
        .into());
    }
    let gw = 2 * w + 1;
    let gh = 2 * h + 1;
    let values: Vec<f64> = image
        .pixels()
        .iter()
        .map(|&v| orientation.filtration_value(v))
        .collect();

    let mut cells = Vec::with_capacity(gw * gh);
    for j in 0..gh {
        let ys = incident_range(j, h);
        for i in 0..gw {
            let xs = incident_range(i, w);
            let dim = (i % 2) as u8 + (j % 2) as u8;
            let mut best: Option<(f64, usize)> = None;
            // Row-major scan visits pixels in increasing index order, so a
            // strict comparison keeps the smallest index on ties.
            for y in ys.clone() {
                for x in xs.clone() {
                    let p = y * w + x;
                    let v = values[p];
                    if best.map_or(true, |(bv, _)| v < bv) {
                        best = Some((v, p));
                    }
                }
            }
            let (value, provenance) = best.expect("every cell touches a pixel");
            cells.push(Cell {
                dim,
                value,
                provenance,
            });
        }
    }
    Ok(CubicalComplex {
        width: w,
        height: h,
        orientation,
        cells,
    })
}
