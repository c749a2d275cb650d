//! Compiles the book chapters as doc-tests, so every snippet in `book/`
//! runs under `cargo test`.

#[doc = include_str!("../../../book/src/introduction.md")]
pub mod introduction {}
#[doc = include_str!("../../../book/src/graphs.md")]
pub mod graphs {}
#[doc = include_str!("../../../book/src/latin-squares.md")]
pub mod latin_squares {}
#[doc = include_str!("../../../book/src/construction.md")]
pub mod construction {}
#[doc = include_str!("../../../book/src/verification.md")]
pub mod verification {}
#[doc = include_str!("../../../book/src/choosability.md")]
pub mod choosability {}
#[doc = include_str!("../../../book/src/cli.md")]
pub mod cli {}
#[doc = include_str!("../../../README.md")]
pub mod readme {}
