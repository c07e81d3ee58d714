use alloc::string::String;

use crate::graph::VertexSet;

pub type Result<T, E = Error> = core::result::Result<T, E>;

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum Error {
    #[error("loop edge at vertex {0}")]
    LoopEdge(usize),
    #[error("vertex id {id} out of range for a graph on {n} vertices")]
    VertexOutOfRange { id: usize, n: usize },
    #[error("graph has {n} vertices, at most {max} are supported")]
    TooManyVertices { n: usize, max: usize },
    #[error("size bound exceeded: {0}")]
    BoundExceeded(String),
    #[error("graph is not matching covered")]
    NotMatchingCovered,
    #[error("graph is not bipartite")]
    NotBipartite,
    #[error("matching is not a perfect matching of the host graph")]
    NotPerfect,
    #[error("vertex set {0:?} is not tight")]
    NotTight(VertexSet),
    #[error("cut families are not pairwise nested")]
    NotNested,
    #[error("nested cut family is not maximal")]
    NotMaximal,
    #[error("classes {0:?} and {1:?} overlap")]
    Overlap(VertexSet, VertexSet),
    #[error("classes miss vertices {0:?}")]
    Gap(VertexSet),
    #[error("class {class:?} is not tight")]
    NonTightClass { class: VertexSet, witness: Option<crate::matching::Matching> },
    #[error("partition is not cyclic")]
    NotCyclic,
    #[error("partition is not torsoid inducing")]
    NotTorsoidInducing,
    #[error("digraph is not strongly connected")]
    NotStronglyConnected,
    #[error("separation is degenerate or invalid")]
    BadSeparation,
    #[error("objects live on different host graphs")]
    HostMismatch,
    #[error("{0}")]
    Precondition(String),
    #[error("internal invariant violated: {0}")]
    Internal(String),
}

impl Error {
    /// True when the error signals a broken internal invariant rather than bad input.
    pub fn is_internal(&self) -> bool {
        matches!(self, Error::Internal(_))
    }
}
