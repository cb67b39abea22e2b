//! Exact divisor theory on connected vertex-weighted multigraphs: chip-firing,
//! Dhar decompositions, reduced divisors, a certified effectiveness test,
//! potentials `q_E`, and representatives of special classes.
//!
//! All arithmetic is exact (`BigInt` and `BigRational`).

pub mod cli;
pub mod dhar;
pub mod divisor;
pub mod error;
pub mod graph;
pub mod json;
mod linalg;
pub mod oracle;
pub mod potential;
pub mod reduction;
pub mod uniform;

pub use divisor::{Divisor, FiringScript, RDivisor, RFunction};
pub use error::{Error, Result};
pub use graph::{Graph, VertexId, VertexSet};
