//! Matching-theoretic structure of graphs: König–Egerváry certificates, Deming
//! decompositions, Egerváry tests and the supporting oracles.

pub mod bitset;
pub mod budget;
pub mod critical;
pub mod deming;
pub mod egervary;
pub mod error;
pub mod generators;
pub mod graph;
pub mod harness;
pub mod independence;
pub mod io;
pub mod ke;
pub mod matching;
pub(crate) mod search;
pub mod subdivision;
pub(crate) mod twosat;

pub use budget::Budget;
pub use error::{Error, Result};
pub use graph::{Edge, Graph, Induced};
pub use matching::Matching;
