//! Triangulations of the 3-sphere and the links formed by their edges.
//!
//! The library builds and validates simplicial triangulations of S³, extracts
//! links from their 1-skeleta, realizes polytopal triangulations as
//! straight-line complexes in R³ via Schlegel projection, produces link
//! diagrams by generic orthogonal projection, and evaluates certified
//! crossing-number bounds in exact arbitrary-precision arithmetic.
//!
//! All geometric predicates are exact: the geometry kernel is generic over an
//! ordered-field scalar (see [`scalar::Scalar`]) and is instantiated with
//! arbitrary-precision rationals ([`Rat`]) throughout the pipeline. No
//! floating point enters any decision; floats appear only when serializing
//! SVG output.

pub mod bounds;
pub mod cli;
pub mod complex;
pub mod diagram;
pub mod generators;
pub mod geom;
pub mod io;
pub mod linkset;
pub mod moves;
pub mod realize;
pub mod rng;
pub mod scalar;
pub mod shelling;

pub use scalar::{Int, Rat, Scalar};

/// Vertex label. Labels are arbitrary integers preserved through all
/// operations; fresh labels are allocated as max existing label + 1.
pub type Vertex = i64;

/// An edge as a sorted pair of vertex labels.
pub type Edge = [Vertex; 2];

/// A triangle as a sorted triple of vertex labels.
pub type Triangle = [Vertex; 3];

/// A tetrahedron as a sorted quadruple of vertex labels.
pub type Tet = [Vertex; 4];

/// 4D rational coordinates of a polytopal witness, one point per vertex.
pub type Coords4 = std::collections::BTreeMap<Vertex, geom::V4<Rat>>;

/// 3D rational coordinates of a straight-line realization.
pub type Coords3 = std::collections::BTreeMap<Vertex, geom::V3<Rat>>;

/// Tool version embedded in report artifacts.
pub const VERSION: &str = env!("CARGO_PKG_VERSION");
