//! Shared generators and oracles for the property suites.
// Each test target compiles this module separately and uses a subset of it.
#![allow(dead_code)]

use proptest::prelude::*;
use rdf_relate::graph::IntersectionProfile;
use rdf_relate::schema::{RDFS_DOMAIN, RDFS_RANGE, RDFS_SUB_CLASS_OF, RDF_TYPE};
use rdf_relate::{RdfGraph, Term, Triple, TripleSet};
use std::collections::HashMap;

/// Small IRI pool so that terms collide across generated graphs.
pub fn arb_iri() -> impl Strategy<Value = Term> {
    prop::sample::select(vec!["a", "b", "c", "d", "e", "f", "g", "♥"])
        .prop_map(|stem| Term::iri(format!("http://ex.org/{stem}")))
}

pub fn arb_pool_literal() -> impl Strategy<Value = Term> {
    let plain =
        prop::sample::select(vec!["x", "y", "0", "1501 Grant Avenue"]).prop_map(Term::literal);
    let typed = prop::sample::select(vec!["5", "01730"])
        .prop_map(|lex| Term::typed_literal(lex, "http://www.w3.org/2001/XMLSchema#string"));
    let tagged =
        prop::sample::select(vec!["hello", "salut"]).prop_map(|lex| Term::lang_literal(lex, "en"));
    prop_oneof![4 => plain, 1 => typed, 1 => tagged]
}

/// Literals with lexical forms that exercise the escaping rules.
pub fn arb_nasty_literal() -> impl Strategy<Value = Term> {
    let chars = prop_oneof![
        5 => proptest::char::range('a', 'z'),
        1 => Just('"'),
        1 => Just('\\'),
        1 => Just('\n'),
        1 => Just('\r'),
        1 => Just('\t'),
        1 => Just('\u{0}'),
        1 => Just('♥'),
        1 => Just('💞'),
    ];
    prop::collection::vec(chars, 0..12).prop_map(|cs| Term::literal(String::from_iter(cs)))
}

pub fn arb_blank(doc: &str) -> impl Strategy<Value = Term> {
    let doc = doc.to_owned();
    prop::sample::select(vec!["b0", "b1", "b2", "b3"])
        .prop_map(move |label| Term::blank(label, doc.clone()))
}

fn arb_predicate() -> impl Strategy<Value = Term> {
    prop_oneof![
        6 => arb_iri(),
        1 => prop::sample::select(vec!["published", "knows"]).prop_map(Term::literal),
    ]
}

/// A triple with no blank nodes, over the shared pools.
pub fn arb_blankfree_triple() -> impl Strategy<Value = Triple> {
    (
        arb_iri(),
        arb_predicate(),
        prop_oneof![3 => arb_iri(), 1 => arb_pool_literal()],
    )
        .prop_map(|(s, p, o)| Triple::new(s, p, o))
}

pub fn arb_blankfree_graph(id: &'static str, max: usize) -> impl Strategy<Value = RdfGraph> {
    prop::collection::vec(arb_blankfree_triple(), 0..=max)
        .prop_map(move |triples| RdfGraph::new(TripleSet::from_triples(id, triples)))
}

/// A triple that may use blank nodes of the given document in subject or
/// object position. Blank-to-blank links are excluded so generated chains
/// never cycle.
pub fn arb_triple_with_blanks(doc: &'static str) -> impl Strategy<Value = Triple> {
    let subject = prop_oneof![3 => arb_iri(), 1 => arb_blank(doc)];
    let object = prop_oneof![
        3 => arb_iri(),
        1 => arb_pool_literal(),
        1 => arb_blank(doc),
    ];
    (subject, arb_predicate(), object).prop_map(|(s, p, o)| {
        if s.is_blank() && o.is_blank() {
            // Break the potential cycle by rerooting the subject.
            Triple::new(Term::iri("http://ex.org/root"), p, o)
        } else {
            Triple::new(s, p, o)
        }
    })
}

pub fn arb_graph_with_blanks(id: &'static str, max: usize) -> impl Strategy<Value = RdfGraph> {
    prop::collection::vec(arb_triple_with_blanks(id), 0..=max)
        .prop_map(move |triples| RdfGraph::new(TripleSet::from_triples(id, triples)))
}

/// A triple set whose blanks are scoped to the set's own id, suitable for
/// serialize-then-reparse round trips.
pub fn arb_document(id: &'static str, max: usize) -> impl Strategy<Value = TripleSet> {
    let subject = prop_oneof![3 => arb_iri(), 1 => arb_blank(id)];
    let object = prop_oneof![
        2 => arb_iri(),
        2 => arb_nasty_literal(),
        1 => arb_pool_literal(),
        1 => arb_blank(id),
    ];
    let triple = (subject, arb_predicate(), object).prop_map(|(s, p, o)| Triple::new(s, p, o));
    prop::collection::vec(triple, 0..=max)
        .prop_map(move |triples| TripleSet::from_triples(id, triples))
}

const CLASSES: [&str; 6] = ["C0", "C1", "C2", "C3", "C4", "C5"];
const PROPS: [&str; 3] = ["p0", "p1", "p2"];
const INSTANCES: [&str; 5] = ["i0", "i1", "i2", "i3", "i4"];

fn class_term() -> impl Strategy<Value = Term> {
    prop::sample::select(CLASSES.to_vec()).prop_map(|c| Term::iri(format!("http://ex.org/{c}")))
}

fn prop_term() -> impl Strategy<Value = Term> {
    prop::sample::select(PROPS.to_vec()).prop_map(|p| Term::iri(format!("http://ex.org/{p}")))
}

fn instance_term() -> impl Strategy<Value = Term> {
    prop::sample::select(INSTANCES.to_vec()).prop_map(|i| Term::iri(format!("http://ex.org/{i}")))
}

/// One schema-level statement triple.
pub fn arb_schema_triple() -> impl Strategy<Value = Triple> {
    prop_oneof![
        (class_term(), class_term()).prop_map(|(a, b)| Triple::new(
            a,
            Term::iri(RDFS_SUB_CLASS_OF),
            b
        )),
        (prop_term(), class_term()).prop_map(|(p, c)| Triple::new(p, Term::iri(RDFS_RANGE), c)),
        (prop_term(), class_term()).prop_map(|(p, c)| Triple::new(p, Term::iri(RDFS_DOMAIN), c)),
    ]
}

/// One data-level triple: a type assertion, a property assertion, or noise.
pub fn arb_data_triple() -> impl Strategy<Value = Triple> {
    prop_oneof![
        (instance_term(), class_term()).prop_map(|(x, c)| Triple::new(x, Term::iri(RDF_TYPE), c)),
        (instance_term(), prop_term(), instance_term()).prop_map(|(s, p, o)| Triple::new(s, p, o)),
        (instance_term(), prop_term(), arb_pool_literal())
            .prop_map(|(s, p, o)| Triple::new(s, p, o)),
        (arb_iri(), arb_iri(), arb_iri()).prop_map(|(s, p, o)| Triple::new(s, p, o)),
    ]
}

/// A corpus for closure testing: one to three graphs holding up to
/// `max_data` data triples plus up to `max_schema` schema statements.
pub fn arb_schema_corpus(
    max_data: usize,
    max_schema: usize,
) -> impl Strategy<Value = Vec<RdfGraph>> {
    (
        prop::collection::vec(arb_data_triple(), 0..=max_data),
        prop::collection::vec(arb_schema_triple(), 0..=max_schema),
        1usize..=3,
    )
        .prop_map(|(data, schema, pieces)| {
            let all: Vec<Triple> = data.into_iter().chain(schema).collect();
            let mut sets: Vec<TripleSet> = (0..pieces)
                .map(|i| TripleSet::new(format!("g{i}")))
                .collect();
            for (i, t) in all.into_iter().enumerate() {
                sets[i % pieces].insert(t);
            }
            sets.into_iter().map(RdfGraph::new).collect()
        })
}

/// Brute-force intersection profile: compares every term of `g1` against
/// every term of `g2`, position by position.
pub fn brute_force_profile(g1: &RdfGraph, g2: &RdfGraph) -> IntersectionProfile {
    let mut profile = IntersectionProfile::default();
    for t1 in g1.triples().iter() {
        for t2 in g2.triples().iter() {
            let left = [(&t1.subject, 0), (&t1.predicate, 1), (&t1.object, 2)];
            let right = [(&t2.subject, 0), (&t2.predicate, 1), (&t2.object, 2)];
            for (term1, pos1) in left {
                for (term2, pos2) in right {
                    if term1 == term2 {
                        let cell = match (pos1, pos2) {
                            (0, 0) => &mut profile.subj_subj,
                            (0, 1) => &mut profile.subj_pred,
                            (0, 2) => &mut profile.subj_obj,
                            (1, 0) => &mut profile.pred_subj,
                            (1, 1) => &mut profile.pred_pred,
                            (1, 2) => &mut profile.pred_obj,
                            (2, 0) => &mut profile.obj_subj,
                            (2, 1) => &mut profile.obj_pred,
                            _ => &mut profile.obj_obj,
                        };
                        cell.insert(term1.clone());
                    }
                }
            }
        }
    }
    profile
}

fn has_predicate(t: &Triple, iri: &str) -> bool {
    t.predicate.as_iri() == Some(iri)
}

/// Exhaustive breadth-first derivation search: minimal depth per derivable
/// triple, independent of the closure implementation.
pub fn oracle_min_depths(
    asserted: &[Triple],
    enable_range: bool,
    enable_domain: bool,
) -> HashMap<Triple, usize> {
    let mut depths: HashMap<Triple, usize> = HashMap::new();
    for t in asserted {
        depths.insert(t.clone(), 0);
    }
    loop {
        let snapshot: Vec<(Triple, usize)> = depths.iter().map(|(t, d)| (t.clone(), *d)).collect();
        let mut changed = false;
        {
            let mut relax = |triple: Triple, depth: usize| match depths.get(&triple) {
                Some(&old) if old <= depth => {}
                _ => {
                    depths.insert(triple, depth);
                    changed = true;
                }
            };
            for (t1, d1) in &snapshot {
                for (t2, d2) in &snapshot {
                    let depth = 1 + d1.max(d2);
                    if has_predicate(t1, RDFS_SUB_CLASS_OF)
                        && has_predicate(t2, RDFS_SUB_CLASS_OF)
                        && t1.object == t2.subject
                    {
                        relax(
                            Triple::new(
                                t1.subject.clone(),
                                Term::iri(RDFS_SUB_CLASS_OF),
                                t2.object.clone(),
                            ),
                            depth,
                        );
                    }
                    if has_predicate(t1, RDF_TYPE)
                        && has_predicate(t2, RDFS_SUB_CLASS_OF)
                        && t1.object == t2.subject
                    {
                        relax(
                            Triple::new(t1.subject.clone(), Term::iri(RDF_TYPE), t2.object.clone()),
                            depth,
                        );
                    }
                    if enable_range
                        && has_predicate(t1, RDFS_RANGE)
                        && t2.predicate == t1.subject
                        && !t2.object.is_literal()
                    {
                        relax(
                            Triple::new(t2.object.clone(), Term::iri(RDF_TYPE), t1.object.clone()),
                            depth,
                        );
                    }
                    if enable_domain && has_predicate(t1, RDFS_DOMAIN) && t2.predicate == t1.subject
                    {
                        relax(
                            Triple::new(t2.subject.clone(), Term::iri(RDF_TYPE), t1.object.clone()),
                            depth,
                        );
                    }
                }
            }
        }
        if !changed {
            return depths;
        }
    }
}
