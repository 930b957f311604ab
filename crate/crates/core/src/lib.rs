//! Graph entropy: Körner entropy of probabilistic graphs, chromatic entropy,
//! fractional colorings and symmetry criteria.

pub mod config;
pub mod closed_forms;
pub mod coloring;
pub mod corner;
pub mod counting;
pub mod error;
pub mod fractional;
pub mod graph;
pub mod prob;
pub mod symmetry;
pub mod verify;

pub use config::{Caps, SolverConfig};
pub use error::{Error, Result};
pub use graph::{Graph, VertexSet};
pub use prob::Distribution;
