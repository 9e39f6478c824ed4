//! The guide's chapters, one module each, so that `cargo test --doc` runs
//! every Rust listing in `book/src`.

#[doc = include_str!("../../../book/src/introduction.md")]
pub mod introduction {}
#[doc = include_str!("../../../book/src/groups.md")]
pub mod groups {}
#[doc = include_str!("../../../book/src/fields.md")]
pub mod fields {}
#[doc = include_str!("../../../book/src/series.md")]
pub mod series {}
#[doc = include_str!("../../../book/src/census.md")]
pub mod census {}
#[doc = include_str!("../../../book/src/extraction.md")]
pub mod extraction {}
#[doc = include_str!("../../../book/src/semilinear.md")]
pub mod semilinear {}
#[doc = include_str!("../../../book/src/cli.md")]
pub mod cli {}
