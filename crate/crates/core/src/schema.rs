//! RDFS rule application as a depth-tracked forward-chaining fixpoint.
//!
//! Four rules are supported, each producing triples with full provenance:
//!
//! - `SubClassTransitivity`: `(A subClassOf B), (B subClassOf C) => (A subClassOf C)`
//! - `TypeViaSubClass`: `(x type A), (A subClassOf B) => (x type B)`
//! - `TypeViaRange` (on by default): `(p range C), (s p o) => (o type C)`
//! - `TypeViaDomain` (off by default): `(p domain C), (s p o) => (s type C)`
//!
//! Every fact in the closure records the rule that produced it, its premise
//! triples, the set of graphs its derivation is grounded in, and its minimal
//! derivation depth (asserted facts have depth 0).

use crate::graph::RdfGraph;
use crate::model::{Term, Triple, TripleSet};
use std::collections::{BTreeMap, BTreeSet, HashMap};
use std::num::NonZeroUsize;
use thiserror::Error;

pub const RDF_TYPE: &str = "http://www.w3.org/1999/02/22-rdf-syntax-ns#type";
pub const RDFS_SUB_CLASS_OF: &str = "http://www.w3.org/2000/01/rdf-schema#subClassOf";
pub const RDFS_RANGE: &str = "http://www.w3.org/2000/01/rdf-schema#range";
pub const RDFS_DOMAIN: &str = "http://www.w3.org/2000/01/rdf-schema#domain";

/// A schema-level statement extracted from a triple whose predicate is one
/// of the recognized RDF Schema IRIs.
#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord)]
pub struct SchemaStatement {
    pub kind: SchemaStatementKind,
    pub operands: (Term, Term),
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord)]
pub enum SchemaStatementKind {
    SubClassOf,
    Range,
    Domain,
    TypeAssertion,
}

impl SchemaStatementKind {
    fn from_predicate(predicate: &Term) -> Option<Self> {
        match predicate.as_iri()? {
            RDF_TYPE => Some(SchemaStatementKind::TypeAssertion),
            RDFS_SUB_CLASS_OF => Some(SchemaStatementKind::SubClassOf),
            RDFS_RANGE => Some(SchemaStatementKind::Range),
            RDFS_DOMAIN => Some(SchemaStatementKind::Domain),
            _ => None,
        }
    }
}

/// One schema statement per triple with a recognized schema predicate;
/// other triples are ignored.
pub fn extract_schema(graphs: &[RdfGraph]) -> BTreeSet<SchemaStatement> {
    let mut out = BTreeSet::new();
    for g in graphs {
        for t in g.triples().iter() {
            if let Some(kind) = SchemaStatementKind::from_predicate(&t.predicate) {
                out.insert(SchemaStatement {
                    kind,
                    operands: (t.subject.clone(), t.object.clone()),
                });
            }
        }
    }
    out
}

/// The rule that established a fact.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum DerivationRule {
    Asserted,
    SubClassTransitivity,
    TypeViaSubClass,
    TypeViaRange,
    TypeViaDomain,
}

impl DerivationRule {
    pub fn name(self) -> &'static str {
        match self {
            DerivationRule::Asserted => "Asserted",
            DerivationRule::SubClassTransitivity => "SubClassTransitivity",
            DerivationRule::TypeViaSubClass => "TypeViaSubClass",
            DerivationRule::TypeViaRange => "TypeViaRange",
            DerivationRule::TypeViaDomain => "TypeViaDomain",
        }
    }
}

impl std::fmt::Display for DerivationRule {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        f.write_str(self.name())
    }
}

/// A fact of the closure with its provenance.
///
/// `depth` is the minimal derivation depth: asserted facts have depth 0 and
/// no premises, and a derived fact's depth is one more than the largest
/// premise depth of its cheapest derivation.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct DerivedTriple {
    pub triple: Triple,
    pub rule: DerivationRule,
    pub premises: BTreeSet<Triple>,
    pub depth: usize,
    origins: BTreeSet<String>,
}

impl DerivedTriple {
    /// Ids of the graphs whose asserted triples ground some derivation of
    /// this fact. Empty for facts grounded only in configured extra schema.
    pub fn origins(&self) -> &BTreeSet<String> {
        &self.origins
    }
}

/// Dimension of a fact: asserted facts are dimension 1 and each inference
/// layer adds one.
pub fn derivation_dimension(fact: &DerivedTriple) -> usize {
    fact.depth + 1
}

/// Settings for [`rdfs_closure`].
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct InferenceConfig {
    pub enable_range: bool,
    pub enable_domain: bool,
    /// Schema triples joined with the asserted triples before the rules run.
    /// They ground derivations without attributing them to any graph.
    pub extra_schema: TripleSet,
    /// Upper bound on fixpoint rounds; `None` sizes the bound from the
    /// vocabulary (|vocab| squared, at least one).
    pub max_iterations: Option<NonZeroUsize>,
}

impl Default for InferenceConfig {
    fn default() -> Self {
        InferenceConfig {
            enable_range: true,
            enable_domain: false,
            extra_schema: TripleSet::new("schema"),
            max_iterations: None,
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum InferenceError {
    /// The bound was hit before the rules stopped producing changes. The
    /// derivable universe is finite, so this signals a bound set too low,
    /// not divergence.
    #[error("fixpoint not reached within {limit} iterations")]
    IterationLimitExceeded { limit: usize },
}

/// The least fixpoint of the enabled rules, with per-fact provenance.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Closure {
    facts: Vec<DerivedTriple>,
    index: HashMap<Triple, usize>,
}

impl Closure {
    pub fn len(&self) -> usize {
        self.facts.len()
    }

    pub fn is_empty(&self) -> bool {
        self.facts.is_empty()
    }

    pub fn contains(&self, triple: &Triple) -> bool {
        self.index.contains_key(triple)
    }

    pub fn get(&self, triple: &Triple) -> Option<&DerivedTriple> {
        self.index.get(triple).map(|&i| &self.facts[i])
    }

    /// All facts, asserted and derived, in discovery order.
    pub fn iter(&self) -> impl Iterator<Item = &DerivedTriple> {
        self.facts.iter()
    }

    /// Facts established by a rule application (depth > 0).
    pub fn derived(&self) -> impl Iterator<Item = &DerivedTriple> {
        self.facts.iter().filter(|f| f.depth > 0)
    }

    /// Derived facts whose derivations are grounded in the given graph.
    pub fn derived_for_graph<'a>(
        &'a self,
        graph_id: &'a str,
    ) -> impl Iterator<Item = &'a DerivedTriple> {
        self.derived().filter(move |f| f.origins.contains(graph_id))
    }

    pub fn triples(&self) -> impl Iterator<Item = &Triple> {
        self.facts.iter().map(|f| &f.triple)
    }
}

/// Computes the closure of the asserted triples of `graphs` joined with the
/// configured extra schema triples under the enabled rules.
pub fn rdfs_closure(
    graphs: &[RdfGraph],
    config: &InferenceConfig,
) -> Result<Closure, InferenceError> {
    let mut closure = Closure {
        facts: Vec::new(),
        index: HashMap::new(),
    };

    for g in graphs {
        for t in g.triples().iter() {
            assert_fact(&mut closure, t.clone(), Some(g.id()));
        }
    }
    for t in config.extra_schema.iter() {
        assert_fact(&mut closure, t.clone(), None);
    }

    let limit = config
        .max_iterations
        .map(NonZeroUsize::get)
        .unwrap_or_else(|| {
            let vocab: BTreeSet<&Term> = closure
                .facts
                .iter()
                .flat_map(|f| {
                    [&f.triple.subject, &f.triple.predicate, &f.triple.object].into_iter()
                })
                .collect();
            (vocab.len() * vocab.len()).max(1)
        });

    // A round that changes nothing proves the fixpoint; the bound counts
    // that final round too.
    for _ in 0..limit {
        if !run_round(&mut closure, config) {
            return Ok(closure);
        }
    }
    Err(InferenceError::IterationLimitExceeded { limit })
}

fn assert_fact(closure: &mut Closure, triple: Triple, origin: Option<&str>) {
    let origins: BTreeSet<String> = origin.map(str::to_owned).into_iter().collect();
    match closure.index.get(&triple) {
        Some(&i) => {
            closure.facts[i].origins.extend(origins);
        }
        None => {
            closure.index.insert(triple.clone(), closure.facts.len());
            closure.facts.push(DerivedTriple {
                triple,
                rule: DerivationRule::Asserted,
                premises: BTreeSet::new(),
                depth: 0,
                origins,
            });
        }
    }
}

/// Applies every enabled rule to the current facts once. Returns whether
/// anything changed (new fact, smaller depth, or grown origin set).
fn run_round(closure: &mut Closure, config: &InferenceConfig) -> bool {
    let snapshot = closure.facts.len();
    let facts = &closure.facts[..snapshot];

    // Join maps over the snapshot, keyed by the join term.
    let mut subclass_by_sub: BTreeMap<&Term, Vec<usize>> = BTreeMap::new();
    let mut types: Vec<usize> = Vec::new();
    let mut ranges: BTreeMap<&Term, Vec<usize>> = BTreeMap::new();
    let mut domains: BTreeMap<&Term, Vec<usize>> = BTreeMap::new();
    for (i, f) in facts.iter().enumerate() {
        match f.triple.predicate.as_iri() {
            Some(RDFS_SUB_CLASS_OF) => {
                subclass_by_sub
                    .entry(&f.triple.subject)
                    .or_default()
                    .push(i);
            }
            Some(RDF_TYPE) => types.push(i),
            Some(RDFS_RANGE) => ranges.entry(&f.triple.subject).or_default().push(i),
            Some(RDFS_DOMAIN) => domains.entry(&f.triple.subject).or_default().push(i),
            _ => {}
        }
    }

    struct Candidate {
        triple: Triple,
        rule: DerivationRule,
        premises: (usize, usize),
    }
    let mut candidates: Vec<Candidate> = Vec::new();

    let type_iri = Term::iri(RDF_TYPE);
    let subclass_iri = Term::iri(RDFS_SUB_CLASS_OF);

    for list in subclass_by_sub.values() {
        for &i in list {
            let upper = &facts[i].triple.object;
            if let Some(next) = subclass_by_sub.get(upper) {
                for &j in next {
                    candidates.push(Candidate {
                        triple: Triple::new(
                            facts[i].triple.subject.clone(),
                            subclass_iri.clone(),
                            facts[j].triple.object.clone(),
                        ),
                        rule: DerivationRule::SubClassTransitivity,
                        premises: (i, j),
                    });
                }
            }
        }
    }

    for &i in &types {
        let class = &facts[i].triple.object;
        if let Some(next) = subclass_by_sub.get(class) {
            for &j in next {
                candidates.push(Candidate {
                    triple: Triple::new(
                        facts[i].triple.subject.clone(),
                        type_iri.clone(),
                        facts[j].triple.object.clone(),
                    ),
                    rule: DerivationRule::TypeViaSubClass,
                    premises: (i, j),
                });
            }
        }
    }

    if config.enable_range {
        for (i, f) in facts.iter().enumerate() {
            if let Some(list) = ranges.get(&f.triple.predicate) {
                // A literal cannot stand in subject position, so such
                // conclusions are skipped rather than derived.
                if f.triple.object.is_literal() {
                    continue;
                }
                for &j in list {
                    candidates.push(Candidate {
                        triple: Triple::new(
                            f.triple.object.clone(),
                            type_iri.clone(),
                            facts[j].triple.object.clone(),
                        ),
                        rule: DerivationRule::TypeViaRange,
                        premises: (i, j),
                    });
                }
            }
        }
    }

    if config.enable_domain {
        for (i, f) in facts.iter().enumerate() {
            if let Some(list) = domains.get(&f.triple.predicate) {
                for &j in list {
                    candidates.push(Candidate {
                        triple: Triple::new(
                            f.triple.subject.clone(),
                            type_iri.clone(),
                            facts[j].triple.object.clone(),
                        ),
                        rule: DerivationRule::TypeViaDomain,
                        premises: (i, j),
                    });
                }
            }
        }
    }

    let mut changed = false;
    for c in candidates {
        let (i, j) = c.premises;
        let depth = 1 + closure.facts[i].depth.max(closure.facts[j].depth);
        let premises: BTreeSet<Triple> = [
            closure.facts[i].triple.clone(),
            closure.facts[j].triple.clone(),
        ]
        .into_iter()
        .collect();
        let origins: BTreeSet<String> = closure.facts[i]
            .origins
            .iter()
            .chain(closure.facts[j].origins.iter())
            .cloned()
            .collect();

        match closure.index.get(&c.triple) {
            Some(&at) => {
                let existing = &mut closure.facts[at];
                if depth < existing.depth {
                    existing.depth = depth;
                    existing.rule = c.rule;
                    existing.premises = premises;
                    changed = true;
                }
                let before = existing.origins.len();
                existing.origins.extend(origins);
                if existing.origins.len() != before {
                    changed = true;
                }
            }
            None => {
                closure.index.insert(c.triple.clone(), closure.facts.len());
                closure.facts.push(DerivedTriple {
                    triple: c.triple,
                    rule: c.rule,
                    premises,
                    depth,
                    origins,
                });
                changed = true;
            }
        }
    }
    changed
}
