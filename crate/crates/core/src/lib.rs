//! Exact computation in right-angled Artin groups.
//!
//! * [`graph`]: presentation graphs, separators, induced paths and the
//!   join/union decomposition.
//! * [`word`]: deletion-based reduction, geodesics, rearrangements, band
//!   matchings and diamond decompositions.
//! * [`cayley`]: Cayley balls, cosets and hyperplanes of the standard cube
//!   complex.
//! * [`criterion`]: certificates for non-path-connected boundary and graph
//!   classification.
//! * [`rays`]: the two rays attached to a certificate and checks of their
//!   finite properties.

pub mod cayley;
pub mod criterion;
pub mod graph;
pub mod rays;
pub mod word;

pub use cayley::{GroupElement, HyperplaneId};
pub use criterion::{Certificate, Classification, Variant, Verdict};
pub use graph::{Graph, GraphError, Vertex, VertexSet};
pub use word::{Letter, Sign, Word, WordError};
