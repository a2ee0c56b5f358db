//! Curves on punctured surfaces.
//!
//! The crate computes with isotopy classes of simple closed curves on
//! punctured surfaces, orientable or not, through their normal coordinates
//! on combinatorial ideal triangulations:
//!
//! - [`surface`]: surface signatures and closed-form invariants (Euler
//!   characteristics, curve-complex dimensions, maximal-simplex ranges,
//!   pants counts, the small-surface table).
//! - [`triangulation`]: ideal triangulations as glued triangles with
//!   reversal flags, validation, flips, canonical forms and flip-graph
//!   search.
//! - [`curves`]: admissibility, tracing into components, cutting along a
//!   curve, topological classification, disjointness, flip transport and
//!   bounded enumeration.
//! - [`complex`]: bounded snapshots of the complex of curves with links,
//!   dual links, maximal cliques, pentagons, simple pairs and chains.
//! - [`cli`]: the `curvecx` command line and its audit suites.

pub mod cli;
pub mod complex;
pub mod curves;
pub mod report;
pub mod surface;
pub mod triangulation;

pub use surface::{SimplexDimRange, SmallComplexKind, SurfaceError, SurfaceSig};
pub use triangulation::{CanonicalForm, EdgeIdx, Flag, TriError, Triangulation};

/// Toolkit version string.
pub const VERSION: &str = env!("CARGO_PKG_VERSION");
