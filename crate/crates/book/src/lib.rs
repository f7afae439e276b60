//! Doctest harness for the guide. Each chapter of `book/src` is included as
//! the documentation of an empty module so `cargo test` runs its snippets.

#[doc = include_str!("../../../book/src/introduction.md")]
pub mod introduction {}
#[doc = include_str!("../../../book/src/multigraphs.md")]
pub mod multigraphs {}
#[doc = include_str!("../../../book/src/census.md")]
pub mod census {}
#[doc = include_str!("../../../book/src/moves.md")]
pub mod moves {}
#[doc = include_str!("../../../book/src/mdp.md")]
pub mod mdp {}
#[doc = include_str!("../../../book/src/trigonometry.md")]
pub mod trigonometry {}
#[doc = include_str!("../../../book/src/surfaces.md")]
pub mod surfaces {}
#[doc = include_str!("../../../book/src/cli.md")]
pub mod cli {}
