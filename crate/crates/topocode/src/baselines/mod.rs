//! Classical forward error correction used as comparison points: a regular
//! LDPC code and a punctured convolutional code.

mod conv;
mod ldpc;

pub use conv::ConvCode;
pub use ldpc::{LdpcCode, LdpcDecoded, LdpcError};
