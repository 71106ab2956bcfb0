//! Cubical persistent homology of grayscale images.
//!
//! [`build_complex`] turns an image into a filtered cubical complex and
//! [`compute_persistence`] reduces its boundary matrix into a
//! [`PersistenceDiagram`]. Every birth and death carries the index of the
//! pixel that produced it, which is what makes the diagram differentiable
//! with respect to pixel values.

mod complex;
mod persistence;

pub use complex::{build_complex, Cell, CubicalComplex};
pub use persistence::{
    compute_persistence, BirthDeath, DiagramGroup, Essential, PersistenceDiagram,
};

use crate::error::HomologyError;
use crate::image::{GrayImage, Orientation};

/// Builds the complex and computes its diagram in one step.
pub fn diagram_of(
    image: &GrayImage,
    orientation: Orientation,
) -> Result<PersistenceDiagram, HomologyError> {
    compute_persistence(&build_complex(image, orientation)?)
}
