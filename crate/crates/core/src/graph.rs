//! Set-theoretic views of a triple set and its labeled-multigraph mapping.

use crate::model::{Term, Triple, TripleSet};
use std::collections::{BTreeSet, HashMap};

/// A triple set together with its derived subject, predicate, object and
/// vocabulary sets. Immutable after construction; the derived sets are
/// always consistent with the triples.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct RdfGraph {
    id: String,
    triples: TripleSet,
    subj: BTreeSet<Term>,
    pred: BTreeSet<Term>,
    obj: BTreeSet<Term>,
    vocab: BTreeSet<Term>,
}

impl RdfGraph {
    pub fn new(triples: TripleSet) -> Self {
        let mut subj = BTreeSet::new();
        let mut pred = BTreeSet::new();
        let mut obj = BTreeSet::new();
        for t in triples.iter() {
            subj.insert(t.subject.clone());
            pred.insert(t.predicate.clone());
            obj.insert(t.object.clone());
        }
        let vocab = subj
            .iter()
            .chain(pred.iter())
            .chain(obj.iter())
            .cloned()
            .collect();
        RdfGraph {
            id: triples.id().to_owned(),
            triples,
            subj,
            pred,
            obj,
            vocab,
        }
    }

    pub fn id(&self) -> &str {
        &self.id
    }

    pub fn triples(&self) -> &TripleSet {
        &self.triples
    }

    pub fn subjects(&self) -> &BTreeSet<Term> {
        &self.subj
    }

    pub fn predicates(&self) -> &BTreeSet<Term> {
        &self.pred
    }

    pub fn objects(&self) -> &BTreeSet<Term> {
        &self.obj
    }

    pub fn vocab(&self) -> &BTreeSet<Term> {
        &self.vocab
    }

    /// Maps the graph onto a directed, node- and edge-labeled multigraph:
    /// one node per distinct subject-or-object term, one edge per triple.
    pub fn to_multigraph(&self) -> LabeledMultigraph {
        let mut graph = LabeledMultigraph::default();
        for t in self.triples.iter() {
            let from = graph.intern(&t.subject);
            let to = graph.intern(&t.object);
            graph.edges.push(Edge {
                from,
                to,
                label: t.predicate.clone(),
            });
        }
        graph
    }

    /// The nine pairwise intersections of the subject, predicate and object
    /// sets of `self` against `other`.
    pub fn intersection_profile(&self, other: &RdfGraph) -> IntersectionProfile {
        let cell = |a: &BTreeSet<Term>, b: &BTreeSet<Term>| -> BTreeSet<Term> {
            a.intersection(b).cloned().collect()
        };
        IntersectionProfile {
            subj_subj: cell(&self.subj, &other.subj),
            subj_pred: cell(&self.subj, &other.pred),
            subj_obj: cell(&self.subj, &other.obj),
            pred_subj: cell(&self.pred, &other.subj),
            pred_pred: cell(&self.pred, &other.pred),
            pred_obj: cell(&self.pred, &other.obj),
            obj_subj: cell(&self.obj, &other.subj),
            obj_pred: cell(&self.obj, &other.pred),
            obj_obj: cell(&self.obj, &other.obj),
        }
    }
}

pub type NodeId = usize;
pub type EdgeId = usize;

/// A directed labeled edge of the multigraph.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Edge {
    pub from: NodeId,
    pub to: NodeId,
    pub label: Term,
}

/// Directed, edge- and node-labeled multigraph. Nodes are the distinct
/// subject-or-object terms; parallel edges with distinct labels are kept.
/// Literal node labels carry their datatype as part of the term.
#[derive(Debug, Clone, Default, PartialEq, Eq)]
pub struct LabeledMultigraph {
    labels: Vec<Term>,
    index: HashMap<Term, NodeId>,
    edges: Vec<Edge>,
}

impl LabeledMultigraph {
    fn intern(&mut self, term: &Term) -> NodeId {
        if let Some(&id) = self.index.get(term) {
            return id;
        }
        let id = self.labels.len();
        self.labels.push(term.clone());
        self.index.insert(term.clone(), id);
        id
    }

    pub fn node_count(&self) -> usize {
        self.labels.len()
    }

    pub fn edge_count(&self) -> usize {
        self.edges.len()
    }

    pub fn node_label(&self, node: NodeId) -> Option<&Term> {
        self.labels.get(node)
    }

    pub fn node_id(&self, term: &Term) -> Option<NodeId> {
        self.index.get(term).copied()
    }

    /// Nodes in insertion order (first occurrence while scanning triples).
    pub fn nodes(&self) -> impl Iterator<Item = (NodeId, &Term)> {
        self.labels.iter().enumerate()
    }

    pub fn edges(&self) -> &[Edge] {
        &self.edges
    }

    /// Rebuilds the triples from the incidence structure and labels.
    pub fn to_triples(&self) -> BTreeSet<Triple> {
        self.edges
            .iter()
            .map(|e| {
                Triple::new(
                    self.labels[e.from].clone(),
                    e.label.clone(),
                    self.labels[e.to].clone(),
                )
            })
            .collect()
    }
}

/// All nine positional intersections between two graphs. Field names read
/// left-to-right: `subj_obj` holds subjects of the first graph that occur as
/// objects of the second.
#[derive(Debug, Clone, Default, PartialEq, Eq)]
pub struct IntersectionProfile {
    pub subj_subj: BTreeSet<Term>,
    pub subj_pred: BTreeSet<Term>,
    pub subj_obj: BTreeSet<Term>,
    pub pred_subj: BTreeSet<Term>,
    pub pred_pred: BTreeSet<Term>,
    pub pred_obj: BTreeSet<Term>,
    pub obj_subj: BTreeSet<Term>,
    pub obj_pred: BTreeSet<Term>,
    pub obj_obj: BTreeSet<Term>,
}

impl IntersectionProfile {
    /// True when every cell is empty.
    pub fn is_fully_disjoint(&self) -> bool {
        self.subj_subj.is_empty()
            && self.subj_pred.is_empty()
            && self.subj_obj.is_empty()
            && self.pred_subj.is_empty()
            && self.pred_pred.is_empty()
            && self.pred_obj.is_empty()
            && self.obj_subj.is_empty()
            && self.obj_pred.is_empty()
            && self.obj_obj.is_empty()
    }
}
