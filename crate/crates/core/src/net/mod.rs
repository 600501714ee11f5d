//! Graph model for unrooted and rooted binary phylogenetic networks and the
//! structural primitives built on it.

mod error;
mod ids;
mod iso;
mod mixed;
mod rooted;
mod split;
pub mod structure;
mod undirected;
mod validate;

pub use error::NetError;
pub use ids::{Edge, VertexId};
pub use iso::{labeled_isomorphic, labeled_isomorphic_rooted, labeled_isomorphism};
pub use mixed::MixedGraph;
pub use rooted::RootedNet;
pub use split::Split;
pub use structure::{
    blobs, chain_vertices, connected_components, cut_edges, eliminate_edge, level,
    maximal_chains, split_of_cut_edge, Blob, Chain,
};
pub use undirected::UndirectedNet;
pub use validate::{validate_rooted, validate_unrooted, ValidationReport, Violation};

#[cfg(test)]
mod tests;
