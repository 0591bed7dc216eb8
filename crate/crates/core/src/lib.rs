//! Vertex-transitive group actions on graphs, the bipartite graph of a
//! connection set, and numerical verification of the singular-value bounds
//! on vertex stabilizers.

pub mod case_doc;
pub mod catalog;
pub mod error;
pub mod graph;
pub mod harmonic;
pub mod permgroup;
pub mod pipeline;
pub mod report;
pub mod spectral;
pub mod verifier;

pub use error::{Error, Result};
