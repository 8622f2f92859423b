//! Relation networks over graph corpora, with JSON and DOT exporters.
//!
//! A network holds one node per graph and one edge per related ordered pair.
//! Edges found by direct classification have dimension 1. When inference is
//! enabled, each graph is extended with the closure facts grounded in it and
//! the pairs are classified again: an edge that only appears after inference
//! is schema-induced and its dimension is one more than the largest dimension
//! of the derived facts witnessing it.

use crate::graph::RdfGraph;
use crate::model::Term;
use crate::relationship::{
    classify_with_blank_nodes, Classification, ClassificationMode, CyclicBlankNodeError,
    RelationshipKind,
};
use crate::schema::{derivation_dimension, rdfs_closure, InferenceConfig, InferenceError};
use serde::Serialize;
use std::collections::{BTreeMap, BTreeSet, HashSet};
use thiserror::Error;

/// A directed relation between two graphs.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct RelationEdge {
    pub from: String,
    pub to: String,
    pub kinds: BTreeSet<RelationshipKind>,
    /// 1 for directly observable relations, 2 or more for schema-induced
    /// ones.
    pub dimension: usize,
    pub witnesses: BTreeMap<RelationshipKind, BTreeSet<Term>>,
    /// Names of the rules whose conclusions witness a schema-induced edge;
    /// `None` exactly when `dimension` is 1.
    pub provenance: Option<BTreeSet<String>>,
}

/// Nodes, edges and the configuration they were computed under.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct RelationNetwork {
    nodes: BTreeSet<String>,
    edges: Vec<RelationEdge>,
    mode: ClassificationMode,
    inference: Option<InferenceConfig>,
}

impl RelationNetwork {
    pub fn nodes(&self) -> &BTreeSet<String> {
        &self.nodes
    }

    /// Edges sorted by (from, to).
    pub fn edges(&self) -> &[RelationEdge] {
        &self.edges
    }

    pub fn edge(&self, from: &str, to: &str) -> Option<&RelationEdge> {
        self.edges.iter().find(|e| e.from == from && e.to == to)
    }

    pub fn mode(&self) -> ClassificationMode {
        self.mode
    }

    pub fn inference(&self) -> Option<&InferenceConfig> {
        self.inference.as_ref()
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum NetworkError {
    #[error("duplicate graph id `{0}`")]
    DuplicateGraphId(String),
    #[error(transparent)]
    CyclicBlankNode(#[from] CyclicBlankNodeError),
    #[error(transparent)]
    Inference(#[from] InferenceError),
}

/// Classifies every ordered pair of graphs and assembles the network.
///
/// With `infer` supplied, the closure of all graphs plus the configured
/// extra schema is computed once; each graph is then extended with the
/// derived facts grounded in it and every pair is classified again. Edges
/// present before inference keep dimension 1 and only gain kinds.
pub fn build_network(
    graphs: &[RdfGraph],
    mode: ClassificationMode,
    infer: Option<&InferenceConfig>,
) -> Result<RelationNetwork, NetworkError> {
    let mut seen = HashSet::new();
    for g in graphs {
        if !seen.insert(g.id()) {
            return Err(NetworkError::DuplicateGraphId(g.id().to_owned()));
        }
    }

    let mut direct: BTreeMap<(usize, usize), Classification> = BTreeMap::new();
    for i in 0..graphs.len() {
        for j in 0..graphs.len() {
            if i == j {
                continue;
            }
            let c = classify_with_blank_nodes(&graphs[i], &graphs[j], mode)?;
            if c.is_related() {
                direct.insert((i, j), c);
            }
        }
    }

    let mut edges = Vec::new();
    match infer {
        None => {
            for ((i, j), c) in direct {
                edges.push(direct_edge(graphs[i].id(), graphs[j].id(), &c, None));
            }
        }
        Some(config) => {
            let closure = rdfs_closure(graphs, config)?;
            let extended: Vec<RdfGraph> = graphs
                .iter()
                .map(|g| {
                    let mut triples = g.triples().clone();
                    triples.extend(closure.derived_for_graph(g.id()).map(|f| f.triple.clone()));
                    RdfGraph::new(triples)
                })
                .collect();

            for i in 0..graphs.len() {
                for j in 0..graphs.len() {
                    if i == j {
                        continue;
                    }
                    let post = classify_with_blank_nodes(&extended[i], &extended[j], mode)?;
                    match (direct.get(&(i, j)), post.is_related()) {
                        (Some(c), related) => {
                            let post = related.then_some(&post);
                            edges.push(direct_edge(graphs[i].id(), graphs[j].id(), c, post));
                        }
                        (None, true) => {
                            let witnesses: BTreeSet<&Term> =
                                post.witnesses().values().flatten().collect();
                            let grounded_here = |f: &&crate::schema::DerivedTriple| {
                                f.origins().contains(graphs[i].id())
                                    || f.origins().contains(graphs[j].id())
                            };
                            let mut supporting: Vec<_> = closure
                                .derived()
                                .filter(grounded_here)
                                .filter(|f| {
                                    witnesses.contains(&f.triple.subject)
                                        || witnesses.contains(&f.triple.predicate)
                                        || witnesses.contains(&f.triple.object)
                                })
                                .collect();
                            if supporting.is_empty() {
                                // The edge can also appear because extension
                                // restructured a side (e.g. a strict-mode
                                // exclusion newly satisfied); charge it to
                                // the derived facts that extended the pair.
                                supporting = closure.derived().filter(grounded_here).collect();
                            }
                            let dimension = 1 + supporting
                                .iter()
                                .map(|f| derivation_dimension(f))
                                .max()
                                .expect("an induced edge implies an extended side");
                            let provenance: BTreeSet<String> = supporting
                                .iter()
                                .map(|f| f.rule.name().to_owned())
                                .collect();
                            edges.push(RelationEdge {
                                from: graphs[i].id().to_owned(),
                                to: graphs[j].id().to_owned(),
                                kinds: post.kinds().clone(),
                                dimension,
                                witnesses: post.witnesses().clone(),
                                provenance: Some(provenance),
                            });
                        }
                        (None, false) => {}
                    }
                }
            }
        }
    }

    edges.sort_by(|a, b| (&a.from, &a.to).cmp(&(&b.from, &b.to)));
    Ok(RelationNetwork {
        nodes: graphs.iter().map(|g| g.id().to_owned()).collect(),
        edges,
        mode,
        inference: infer.cloned(),
    })
}

/// An edge observed without inference: dimension 1, kinds possibly widened
/// by the post-inference classification.
fn direct_edge(
    from: &str,
    to: &str,
    direct: &Classification,
    post: Option<&Classification>,
) -> RelationEdge {
    let mut kinds = direct.kinds().clone();
    let mut witnesses = direct.witnesses().clone();
    if let Some(post) = post {
        kinds.extend(post.kinds().iter().copied());
        for (k, w) in post.witnesses() {
            witnesses.entry(*k).or_default().extend(w.iter().cloned());
        }
    }
    RelationEdge {
        from: from.to_owned(),
        to: to.to_owned(),
        kinds,
        dimension: 1,
        witnesses,
        provenance: None,
    }
}

/// Exporter settings.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct ExportOptions {
    /// Maximum witness terms exported per kind; the library API keeps the
    /// full sets.
    pub witness_cap: usize,
}

impl Default for ExportOptions {
    fn default() -> Self {
        ExportOptions { witness_cap: 16 }
    }
}

#[derive(Serialize)]
struct JsonNetwork<'a> {
    nodes: Vec<&'a str>,
    edges: Vec<JsonEdge>,
    config: JsonConfig,
}

#[derive(Serialize)]
struct JsonEdge {
    from: String,
    to: String,
    kinds: Vec<&'static str>,
    dimension: usize,
    witnesses: BTreeMap<&'static str, Vec<String>>,
    provenance: Option<Vec<String>>,
}

#[derive(Serialize)]
struct JsonConfig {
    mode: &'static str,
    inference: Option<JsonInference>,
}

#[derive(Serialize)]
struct JsonInference {
    range_rule: bool,
    domain_rule: bool,
    extra_schema_triples: usize,
    max_iterations: Option<usize>,
}

/// Deterministic JSON rendering of the network, capped at the default
/// witness limit.
pub fn export_json(network: &RelationNetwork) -> String {
    export_json_with(network, &ExportOptions::default())
}

pub fn export_json_with(network: &RelationNetwork, options: &ExportOptions) -> String {
    let doc = JsonNetwork {
        nodes: network.nodes.iter().map(String::as_str).collect(),
        edges: network
            .edges
            .iter()
            .map(|e| JsonEdge {
                from: e.from.clone(),
                to: e.to.clone(),
                kinds: e.kinds.iter().map(|k| k.name()).collect(),
                dimension: e.dimension,
                witnesses: e
                    .witnesses
                    .iter()
                    .map(|(k, terms)| {
                        let rendered: Vec<String> = terms
                            .iter()
                            .take(options.witness_cap)
                            .map(Term::to_string)
                            .collect();
                        (k.name(), rendered)
                    })
                    .collect(),
                provenance: e
                    .provenance
                    .as_ref()
                    .map(|rules| rules.iter().cloned().collect()),
            })
            .collect(),
        config: JsonConfig {
            mode: match network.mode {
                ClassificationMode::Lenient => "lenient",
                ClassificationMode::Strict => "strict",
            },
            inference: network.inference.as_ref().map(|c| JsonInference {
                range_rule: c.enable_range,
                domain_rule: c.enable_domain,
                extra_schema_triples: c.extra_schema.len(),
                max_iterations: c.max_iterations.map(|n| n.get()),
            }),
        },
    };
    let mut out = serde_json::to_string_pretty(&doc).expect("network serializes");
    out.push('\n');
    out
}

/// DOT rendering: one node per graph, one edge per unordered related pair
/// (mirror edges collapsed), labeled with the kinds and the dimension.
pub fn export_dot(network: &RelationNetwork) -> String {
    let mut out = String::from("digraph relations {\n");
    for node in &network.nodes {
        out.push_str(&format!("  {};\n", dot_quoted(node)));
    }
    let rendered: HashSet<(&str, &str)> = network
        .edges
        .iter()
        .map(|e| (e.from.as_str(), e.to.as_str()))
        .collect();
    for e in &network.edges {
        // Keep the lexicographically ordered direction; keep a reverse-only
        // edge as-is.
        if e.from > e.to && rendered.contains(&(e.to.as_str(), e.from.as_str())) {
            continue;
        }
        let kinds: Vec<&str> = e.kinds.iter().map(|k| k.name()).collect();
        out.push_str(&format!(
            "  {} -> {} [label=\"{} (dim={})\"];\n",
            dot_quoted(&e.from),
            dot_quoted(&e.to),
            kinds.join(","),
            e.dimension
        ));
    }
    out.push_str("}\n");
    out
}

fn dot_quoted(id: &str) -> String {
    format!("\"{}\"", id.replace('\\', "\\\\").replace('"', "\\\""))
}
