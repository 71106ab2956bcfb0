use thiserror::Error;

#[derive(Debug, Clone, PartialEq, Error)]
pub enum ImageError {
    #[error("image is {width}x{height}; both sides must be at least 2 pixels")]
    DimensionTooSmall { width: usize, height: usize },
    #[error("expected {expected} pixels, got {actual}")]
    LengthMismatch { expected: usize, actual: usize },
    #[error("pixel {index} has value {value}, outside [0, 1]")]
    PixelOutOfRange { index: usize, value: f64 },
    #[error("raw intensity {index} is negative or not finite ({value})")]
    NegativeIntensity { index: usize, value: f64 },
    #[error("margin {margin} leaves no interior in a {width}x{height} image")]
    MarginTooLarge {
        margin: usize,
        width: usize,
        height: usize,
    },
}

#[derive(Debug, Clone, PartialEq, Error)]
pub enum HomologyError {
    #[error(transparent)]
    Image(#[from] ImageError),
    #[error("cell {face} (value {face_value}) enters after its coface {coface} (value {coface_value})")]
    InvalidFiltration {
        face: usize,
        coface: usize,
        face_value: f64,
        coface_value: f64,
    },
    #[error("complex has {expected} cells but {actual} values were supplied")]
    CellCountMismatch { expected: usize, actual: usize },
}

#[derive(Debug, Clone, PartialEq, Error)]
pub enum QuantizeError {
    #[error("coordinate {value} is outside [0, 1]")]
    OutOfRange { value: f64 },
}
