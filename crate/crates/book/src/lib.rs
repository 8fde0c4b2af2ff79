//! The guide under `book/` as doc modules, so `cargo test` runs every Rust
//! snippet in it. One module per chapter keeps failures traceable.

#[doc = include_str!("../../../book/src/intro.md")]
pub mod intro {}
#[doc = include_str!("../../../book/src/sylow.md")]
pub mod sylow {}
#[doc = include_str!("../../../book/src/characters.md")]
pub mod characters {}
#[doc = include_str!("../../../book/src/induced.md")]
pub mod induced {}
#[doc = include_str!("../../../book/src/classification.md")]
pub mod classification {}
#[doc = include_str!("../../../book/src/combinatorics.md")]
pub mod combinatorics {}
#[doc = include_str!("../../../book/src/verification.md")]
pub mod verification {}
#[doc = include_str!("../../../book/src/cli.md")]
pub mod cli {}
#[doc = include_str!("../../../README.md")]
pub mod readme {}
