//! The guide in `book/`, compiled so that every Rust snippet runs as a
//! doc-test. One module per chapter keeps failures traceable.

#[doc = include_str!("../../../book/src/introduction.md")]
pub mod introduction {}
#[doc = include_str!("../../../book/src/persistence.md")]
pub mod persistence {}
#[doc = include_str!("../../../book/src/denoising.md")]
pub mod denoising {}
#[doc = include_str!("../../../book/src/matching.md")]
pub mod matching {}
#[doc = include_str!("../../../book/src/wire-format.md")]
pub mod wire_format {}
#[doc = include_str!("../../../book/src/channel.md")]
pub mod channel {}
#[doc = include_str!("../../../book/src/detection.md")]
pub mod detection {}
#[doc = include_str!("../../../book/src/correction.md")]
pub mod correction {}
#[doc = include_str!("../../../book/src/experiments.md")]
pub mod experiments {}
