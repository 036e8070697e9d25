//! AT-free graphs: betweenness intervals, convex geometries, antimatroid
//! orders and a Gray-code generator over all AT-free orders.

pub mod betweenness;
pub mod cli;
pub mod convexity;
pub mod corpus;
mod error;
pub mod graph;
pub mod gray;
pub mod orders;

pub use error::{Error, Result};
pub use graph::{Graph, Names, VertexSet};
