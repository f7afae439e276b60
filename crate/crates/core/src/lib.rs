//! Cubic multigraphs, Whitehead moves and the hyperbolic constructions
//! built on them.
//!
//! - [`multigraph`]: half-edge graphs, canonical codes, girth, cycle packings.
//! - [`census`]: isomorphism classes of connected cubic multigraphs.
//! - [`rewrite`]: Whitehead moves, girth lifting and cycle reduction.
//! - [`mdp`]: the graph whose vertices are census entries and whose edges
//!   are simultaneous moves.
//! - [`hypgeom`]: right-angled pentagons, hexagons and collars.
//! - [`surfaces`]: decorated pants decompositions, the hairy torus and
//!   Y-piece surfaces with their systole certificates.

pub mod census;
mod decimal;
pub mod error;
pub mod hypgeom;
pub mod mdp;
pub mod multigraph;
pub mod rewrite;
pub mod surfaces;

pub use error::{Error, Result};
pub use multigraph::{CanonicalCode, CubicMultigraph, EdgeId};
