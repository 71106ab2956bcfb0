//! Topological sidecar codes for image transmission.
//!
//! A transmitter computes the persistence diagram of a grayscale image and
//! ships it, quantized, next to the raw pixels. The receiver recomputes the
//! diagram of what arrived and compares the two with a Wasserstein matching:
//! small distances after discarding low-persistence pairs mean the damage is
//! cosmetic, large ones mean the shape of the image changed. The same
//! matching drives a gradient descent that pulls the received image back
//! towards the transmitted topology.
//!
//! The crate also carries the pieces needed to evaluate that idea end to end:
//! a BPSK/AWGN channel, LDPC and convolutional baselines, and PSNR/SSIM.

pub mod baselines;
pub mod channel;
pub mod codec;
pub mod diagram;
pub mod error;
pub mod homology;
pub mod image;
pub mod metrics;
pub mod pipeline;
pub mod transport;

pub use error::{HomologyError, ImageError, QuantizeError};
pub use homology::{
    build_complex, compute_persistence, diagram_of, BirthDeath, Essential, PersistenceDiagram,
};
pub use image::{normalize, GrayImage, NormalizeMode, Orientation};
