//! Seriation of graphs sampled from diagonally structured graphons: recover
//! the latent vertex order from a single observed graph.

pub mod alphascan;
pub mod cli;
pub mod error;
pub mod eval;
pub mod graph;
pub mod graphon;
pub mod interval;
pub mod io;
pub mod ordering;
pub mod refine;
pub mod rng;
pub mod sketch;

pub use error::{Error, Result};
pub use graph::{BitSet, CommonNeighborMatrix, Graph};
pub use graphon::{GraphonSpec, SampledGraph};
pub use interval::IntervalOrderResult;
pub use ordering::{comparison_to_order, induced_order, Comparison, Ordering};
