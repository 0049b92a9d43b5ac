//! Exact isoperimetry of polyform animals on regular {p,q} tessellations.
//!
//! An animal is a finite, connected set of tiles of the regular tessellation
//! by p-gons with q meeting at every vertex. This crate computes the minimal
//! perimeter an n-tile animal can have — exactly, for Euclidean and hyperbolic
//! signatures alike — and cross-checks the closed formulas against three
//! independent oracles:
//!
//! * word machinery (substitution systems, Sturmian words, continued
//!   fractions) that encodes the boundary structure of complete layers,
//! * a spiral-growth simulator that builds animals tile by tile on a lazily
//!   constructed combinatorial map of the tessellation,
//! * an exhaustive search over all small animals.
//!
//! All arithmetic on irrational quantities happens in [`quad::QuadExt`], an
//! exact representation of `a + b*sqrt(D)`; no floating point is used outside
//! of SVG rendering.

pub mod cli;
pub mod context;
pub mod error;
pub mod exhaustive;
pub mod perimeter;
pub mod quad;
pub mod render;
pub mod spiral;
pub mod verify;
pub mod words;

pub use context::{LayerStats, TessClass, TessContext};
pub use error::{Error, Result};
pub use exhaustive::SearchConfig;
pub use perimeter::PerimeterBreakdown;
pub use quad::QuadExt;
pub use spiral::SpiralAnimal;
pub use words::{ContinuedFraction, DegreeWord};
