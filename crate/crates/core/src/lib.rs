//! Tight cuts, torsoids and torsos of finite matching covered graphs, plus the
//! directed 1-separation structure of strongly connected digraphs.
//!
//! Everything here works on small dense graphs (vertex ids `0..n`, `n <= 64`)
//! and favours definition-faithful computation over speed.

#![no_std]

extern crate alloc;

#[cfg(test)]
extern crate std;

pub mod canon;
pub mod checks;
pub mod corpus;
pub mod digraph;
pub mod error;
pub mod graph;
pub mod matching;
pub mod partition;
pub mod passable;
pub mod tight;
pub mod torso;
pub mod torsoid;

pub use canon::CanonicalForm;
pub use error::{Error, Result};
pub use graph::{Cut, Digraph, Graph, VertexSet};
pub use matching::{Bounds, Matching};
pub use partition::{CollapseClass, CollapseKind, CollapseResult, Correspondence, TightSetPartition};
pub use tight::{CoveredGraph, NestedCutFamily, Parity, TightCutRecord};
pub use torso::Torso;
pub use torsoid::{ChoiceFunction, Residence, ResidenceKind, Torsoid};
