//! Combinatorial machinery for holey polyforms in hyperbolic `{p,q}` tessellations.
//!
//! The crate grows exact (coordinate-free) tessellation patches, measures
//! polyforms (perimeters, dual graphs, hole decompositions), computes the
//! hole bound `M(n,h)` and the minimal-perimeter function `P_min` from spiral
//! polyforms, certifies crystallized polyforms, realizes the explicit
//! constructions behind the known `g(h)` table values, and runs the
//! depth-first hole-maximizing search. Floating point appears only in the
//! Poincaré-disk renderer; everything else is exact integer/rational/surd
//! arithmetic.

pub mod error;
pub mod exact;
pub mod params;
pub mod polyform;
pub mod tessellation;

pub use error::Error;
pub use params::TessellationParams;
pub use polyform::{Metrics, Polyform};
pub use tessellation::{EdgeId, SharedPatch, TessellationPatch, TileId, VertexId};

/// Convenience alias used throughout the crate.
pub type Result<T> = std::result::Result<T, Error>;
