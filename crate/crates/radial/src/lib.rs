//! Toolkit for radials and semiradials over bidirected graphs:
//! sign-coherent trail reachability, vertex and graph classification,
//! ground subgraphs, ear decompositions, decomposition/composition
//! transforms, seeded generators, and an executable property-check
//! suite.

pub mod bdg;
pub mod classify;
pub mod ditrail;
pub mod dot;
pub mod ears;
pub mod enumerate;
pub mod error;
pub mod fixtures;
pub mod grammar;
pub mod graph;
pub mod grounds;
pub mod iso;
pub mod lemmas;
pub mod oracle;
pub mod transform;

pub use error::{Error, Result};
pub use graph::{BidirectedGraph, RootedGraph, Sign};
