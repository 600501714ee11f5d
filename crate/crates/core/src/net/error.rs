use thiserror::Error;

use super::{Edge, VertexId};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum NetError {
    #[error("unknown vertex {0}")]
    UnknownVertex(VertexId),
    #[error("unknown edge {0}")]
    UnknownEdge(Edge),
    #[error("unknown arc ({0},{1})")]
    UnknownArc(VertexId, VertexId),
    #[error("self-loop at {0}")]
    SelfLoop(VertexId),
    #[error("vertex {0} does not have degree two")]
    NotDegreeTwo(VertexId),
    #[error("operation would create a parallel edge between {0} and {1}")]
    WouldCreateParallelEdge(VertexId, VertexId),
    #[error("edge {0} is a cut-edge")]
    IsCutEdge(Edge),
    #[error("edge {0} is not a cut-edge")]
    NotCutEdge(Edge),
    #[error("edge {0} has a leaf endpoint")]
    EndpointIsLeaf(Edge),
    #[error("label {0:?} is already in use")]
    DuplicateLabel(String),
    #[error("leaf label sets differ")]
    LabelSetMismatch,
}
