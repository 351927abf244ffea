//! The guide under `book/` is plain mdbook, which cannot run listings that
//! depend on an external crate. Each chapter is included here as the doc
//! comment of an empty module, so `cargo test --doc -p polyg-book` compiles
//! and runs every listing against the current `polyg`. A failing doctest
//! names the module, and the module names the chapter.

#[doc = include_str!("../../../book/src/introduction.md")]
pub mod introduction {}
#[doc = include_str!("../../../book/src/exact.md")]
pub mod exact {}
#[doc = include_str!("../../../book/src/series.md")]
pub mod series {}
#[doc = include_str!("../../../book/src/stirling.md")]
pub mod stirling {}
#[doc = include_str!("../../../book/src/families.md")]
pub mod families {}
#[doc = include_str!("../../../book/src/identities.md")]
pub mod identities {}
#[doc = include_str!("../../../book/src/cli.md")]
pub mod cli {}
