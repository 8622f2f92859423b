//! Set-theoretic relationship analysis for RDF graphs.
//!
//! The crate parses N-Triples documents into named triple sets, derives their
//! subject/predicate/object views and labeled-multigraph form, classifies how
//! pairs of graphs relate through the overlaps of those views (including
//! relations mediated by blank-node reification), applies a small RDF Schema
//! rule set to induce further relations, and exports the resulting relation
//! network as JSON or DOT.
//!
//! ```
//! use rdf_relate::{classify_pair, parse_document, ClassificationMode, RdfGraph, RelationshipKind};
//!
//! let g1 = RdfGraph::new(parse_document(
//!     "<http://ex.org/a> <http://ex.org/p> <http://ex.org/b> .",
//!     "g1",
//! )?);
//! let g2 = RdfGraph::new(parse_document(
//!     "<http://ex.org/a> <http://ex.org/p> <http://ex.org/c> .",
//!     "g2",
//! )?);
//! let c = classify_pair(&g1, &g2, ClassificationMode::Strict);
//! assert!(c.kinds().contains(&RelationshipKind::SsPp));
//! # Ok::<(), rdf_relate::ParseError>(())
//! ```

pub mod graph;
pub mod model;
pub mod network;
pub mod ntriples;
pub mod relationship;
pub mod schema;

pub use graph::{Edge, EdgeId, IntersectionProfile, LabeledMultigraph, NodeId, RdfGraph};
pub use model::{Term, Triple, TripleSet};
pub use network::{
    build_network, export_dot, export_json, export_json_with, ExportOptions, NetworkError,
    RelationEdge, RelationNetwork,
};
pub use ntriples::{
    parse_document, parse_document_with, parse_term, serialize, ParseError, ParseErrorKind,
    ParseOptions,
};
pub use relationship::{
    classify_pair, classify_profile, classify_with_blank_nodes, reify_blank_nodes, Classification,
    ClassificationMode, CyclicBlankNodeError, ReifiedView, RelationshipKind,
};
pub use schema::{
    derivation_dimension, extract_schema, rdfs_closure, Closure, DerivationRule, DerivedTriple,
    InferenceConfig, InferenceError, SchemaStatement, SchemaStatementKind,
};
