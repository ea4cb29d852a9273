//! Feynman graphs of φ³ theory in six dimensions and the Hopf algebra of
//! their divergent subgraphs.

mod graph;
mod instance;
mod subgraph;

pub use graph::{FeynGraph, Gradings, GraphRecord, Marker, VertexKind, VertexRecord};
pub use instance::{toy_graph_character, toy_graph_value, Catalog, Graph, GraphInstance};
pub use subgraph::{
    check_admissible, component_graph, coproduct_terms, divergent_subgraphs, maximal_forests, quotient, quotient_with,
    Component, Piece, RawTerm, Subgraph,
};

#[cfg(test)]
mod tests;
