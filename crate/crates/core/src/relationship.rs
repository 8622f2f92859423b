//! Pairwise relationship classification between RDF graphs.
//!
//! Two graphs relate through the overlaps of their subject, predicate and
//! object sets. The classifier reports every kind whose condition holds:
//!
//! - `SS_PP`: shared subject and shared predicate. In strict mode the object
//!   sets must additionally be disjoint, so the pair states different values
//!   for the same property of the same subject.
//! - `OO_PP`: shared object and shared predicate; strict mode additionally
//!   requires disjoint subject sets.
//! - `SP`/`PS`, `OP`/`PO`, `SO`/`OS`: a term of one graph re-occurs in a
//!   different position of the other (subject as predicate, object as
//!   predicate, subject as object). Strict mode additionally requires the
//!   three same-position intersections to be empty.
//! - `BlankNodeMediated`: the graphs connect only through a triple that
//!   introduces a blank node (see [`reify_blank_nodes`]).
//! - `Unrelated`: nothing above holds.
//!
//! Graphs containing blank nodes are compared through their reified
//! structure: each blank node's introducing triple stays in the comparison
//! while the triples describing the blank node connect to it internally by
//! subject–object chaining.

use crate::graph::{IntersectionProfile, RdfGraph};
use crate::model::{Term, Triple, TripleSet};
use std::collections::{BTreeMap, BTreeSet};
use thiserror::Error;

/// The relationship taxonomy. `SP`, `OP` and `SO` read left-to-right over
/// the argument order: `SP` means a subject of the first graph occurs as a
/// predicate of the second; `PS`, `PO` and `OS` are their mirrors.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum RelationshipKind {
    SsPp,
    OoPp,
    Sp,
    Ps,
    Op,
    Po,
    So,
    Os,
    BlankNodeMediated,
    Unrelated,
}

impl RelationshipKind {
    /// The kind observed when the two arguments swap places.
    pub fn mirror(self) -> Self {
        use RelationshipKind::*;
        match self {
            Sp => Ps,
            Ps => Sp,
            Op => Po,
            Po => Op,
            So => Os,
            Os => So,
            other => other,
        }
    }

    pub fn name(self) -> &'static str {
        use RelationshipKind::*;
        match self {
            SsPp => "SS_PP",
            OoPp => "OO_PP",
            Sp => "SP",
            Ps => "PS",
            Op => "OP",
            Po => "PO",
            So => "SO",
            Os => "OS",
            BlankNodeMediated => "BlankNodeMediated",
            Unrelated => "Unrelated",
        }
    }
}

impl std::fmt::Display for RelationshipKind {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        f.write_str(self.name())
    }
}

/// Lenient mode reports every kind whose overlap condition holds; strict
/// mode additionally applies the exclusion conditions described on the
/// module. Lenient is the default and never reports fewer kinds than strict.
#[derive(Debug, Clone, Copy, Default, PartialEq, Eq)]
pub enum ClassificationMode {
    #[default]
    Lenient,
    Strict,
}

/// The outcome of classifying an ordered graph pair.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Classification {
    kinds: BTreeSet<RelationshipKind>,
    witnesses: BTreeMap<RelationshipKind, BTreeSet<Term>>,
    via_blank_node: Option<Term>,
}

impl Classification {
    fn unrelated() -> Self {
        Classification {
            kinds: [RelationshipKind::Unrelated].into_iter().collect(),
            witnesses: BTreeMap::new(),
            via_blank_node: None,
        }
    }

    pub fn kinds(&self) -> &BTreeSet<RelationshipKind> {
        &self.kinds
    }

    /// The terms realizing each kind's required intersections.
    pub fn witnesses(&self) -> &BTreeMap<RelationshipKind, BTreeSet<Term>> {
        &self.witnesses
    }

    pub fn witnesses_for(&self, kind: RelationshipKind) -> Option<&BTreeSet<Term>> {
        self.witnesses.get(&kind)
    }

    /// The blank node mediating the relation, when `BlankNodeMediated` is
    /// among the kinds.
    pub fn via_blank_node(&self) -> Option<&Term> {
        self.via_blank_node.as_ref()
    }

    pub fn is_related(&self) -> bool {
        !self.kinds.contains(&RelationshipKind::Unrelated)
    }
}

/// Classifies two graphs from their intersection profile. Intended for
/// blank-node-free graphs; use [`classify_with_blank_nodes`] otherwise.
pub fn classify_pair(g1: &RdfGraph, g2: &RdfGraph, mode: ClassificationMode) -> Classification {
    classify_profile(&g1.intersection_profile(g2), mode)
}

/// The classification decision as a pure function of the profile.
pub fn classify_profile(profile: &IntersectionProfile, mode: ClassificationMode) -> Classification {
    let lenient = mode == ClassificationMode::Lenient;
    let ss = !profile.subj_subj.is_empty();
    let pp = !profile.pred_pred.is_empty();
    let oo = !profile.obj_obj.is_empty();
    let same_position_disjoint = !ss && !pp && !oo;

    let mut kinds = BTreeSet::new();
    let mut witnesses: BTreeMap<RelationshipKind, BTreeSet<Term>> = BTreeMap::new();
    let mut add = |kind: RelationshipKind, terms: BTreeSet<Term>| {
        kinds.insert(kind);
        witnesses.entry(kind).or_default().extend(terms);
    };

    if ss && pp && (lenient || !oo) {
        let mut w = profile.subj_subj.clone();
        w.extend(profile.pred_pred.iter().cloned());
        add(RelationshipKind::SsPp, w);
    }
    if oo && pp && (lenient || !ss) {
        let mut w = profile.obj_obj.clone();
        w.extend(profile.pred_pred.iter().cloned());
        add(RelationshipKind::OoPp, w);
    }

    let crossing = [
        (RelationshipKind::Sp, &profile.subj_pred),
        (RelationshipKind::Ps, &profile.pred_subj),
        (RelationshipKind::Op, &profile.obj_pred),
        (RelationshipKind::Po, &profile.pred_obj),
        (RelationshipKind::So, &profile.subj_obj),
        (RelationshipKind::Os, &profile.obj_subj),
    ];
    for (kind, cell) in crossing {
        if !cell.is_empty() && (lenient || same_position_disjoint) {
            add(kind, cell.clone());
        }
    }

    if kinds.is_empty() {
        return Classification::unrelated();
    }
    Classification {
        kinds,
        witnesses,
        via_blank_node: None,
    }
}

/// The partition of a graph's triples around its blank nodes.
///
/// Every triple lands in exactly one part: `residual` triples mention no
/// blank node, a `primary` triple links a named resource to a blank node,
/// and each `auxiliary` group holds the triples describing one blank node
/// (blank node in subject position). When a blank node is never referenced
/// as an object, its least describing triple with a non-blank object is
/// promoted to primary so that the node stays reachable from named terms.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ReifiedView {
    primary: BTreeSet<Triple>,
    auxiliary: BTreeMap<Term, BTreeSet<Triple>>,
    residual: BTreeSet<Triple>,
}

impl ReifiedView {
    pub fn primary(&self) -> &BTreeSet<Triple> {
        &self.primary
    }

    pub fn auxiliary(&self) -> &BTreeMap<Term, BTreeSet<Triple>> {
        &self.auxiliary
    }

    pub fn residual(&self) -> &BTreeSet<Triple> {
        &self.residual
    }

    /// Residual and primary triples together: the triples that take part in
    /// cross-graph comparison.
    pub fn core_triples(&self) -> impl Iterator<Item = &Triple> {
        self.residual.iter().chain(self.primary.iter())
    }

    fn core_graph(&self, id: &str) -> RdfGraph {
        RdfGraph::new(TripleSet::from_triples(id, self.core_triples().cloned()))
    }
}

/// Blank-node reference chains must not loop back on themselves.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
#[error("blank node reference chain forms a cycle through {0}")]
pub struct CyclicBlankNodeError(pub Term);

/// Partitions a graph into primary, auxiliary and residual triples, following
/// chains of blank nodes transitively and rejecting cyclic chains.
pub fn reify_blank_nodes(g: &RdfGraph) -> Result<ReifiedView, CyclicBlankNodeError> {
    let mut primary = BTreeSet::new();
    let mut auxiliary: BTreeMap<Term, BTreeSet<Triple>> = BTreeMap::new();
    let mut residual = BTreeSet::new();
    let mut referenced: BTreeSet<Term> = BTreeSet::new();

    for t in g.triples().iter() {
        if t.object.is_blank() {
            referenced.insert(t.object.clone());
        }
        match (t.subject.is_blank(), t.object.is_blank()) {
            (false, false) => {
                residual.insert(t.clone());
            }
            (false, true) => {
                primary.insert(t.clone());
            }
            (true, _) => {
                auxiliary
                    .entry(t.subject.clone())
                    .or_default()
                    .insert(t.clone());
            }
        }
    }

    // A blank node nothing points at roots its own chain: promote its least
    // describing triple with a non-blank object to primary.
    let roots: Vec<Term> = auxiliary
        .keys()
        .filter(|b| !referenced.contains(*b))
        .cloned()
        .collect();
    for root in roots {
        let group = auxiliary.get_mut(&root).expect("group exists");
        if let Some(candidate) = group.iter().find(|t| !t.object.is_blank()).cloned() {
            group.remove(&candidate);
            primary.insert(candidate);
            if group.is_empty() {
                auxiliary.remove(&root);
            }
        }
    }

    detect_cycles(g)?;

    Ok(ReifiedView {
        primary,
        auxiliary,
        residual,
    })
}

fn detect_cycles(g: &RdfGraph) -> Result<(), CyclicBlankNodeError> {
    // Edges between blank nodes: subject blank referencing object blank.
    let mut successors: BTreeMap<&Term, BTreeSet<&Term>> = BTreeMap::new();
    for t in g.triples().iter() {
        if t.subject.is_blank() && t.object.is_blank() {
            successors.entry(&t.subject).or_default().insert(&t.object);
        }
    }

    #[derive(Clone, Copy, PartialEq)]
    enum Mark {
        Visiting,
        Done,
    }
    let mut marks: BTreeMap<&Term, Mark> = BTreeMap::new();
    let starts: Vec<&Term> = successors.keys().copied().collect();

    // Iterative three-color search; chains can be arbitrarily deep.
    for start in starts {
        if marks.contains_key(start) {
            continue;
        }
        marks.insert(start, Mark::Visiting);
        let mut stack = vec![(start, successors[start].iter())];
        loop {
            let step = match stack.last_mut() {
                None => break,
                Some(frame) => frame.1.next().copied(),
            };
            match step {
                None => {
                    let (node, _) = stack.pop().expect("frame exists");
                    marks.insert(node, Mark::Done);
                }
                Some(next) => match marks.get(next) {
                    Some(Mark::Visiting) => return Err(CyclicBlankNodeError(next.clone())),
                    Some(Mark::Done) => {}
                    None => {
                        marks.insert(next, Mark::Visiting);
                        match successors.get(next) {
                            Some(succ) => stack.push((next, succ.iter())),
                            None => {
                                marks.insert(next, Mark::Done);
                            }
                        }
                    }
                },
            }
        }
    }
    Ok(())
}

/// Which side of a primary triple an anchor term occupies.
#[derive(Clone, Copy)]
enum AnchorPosition {
    Subject,
    Object,
}

/// Classifies a pair of graphs that may contain blank nodes.
///
/// Both sides are reified; the residual and primary triples are classified
/// as usual. In addition, a non-blank term of a primary triple that occurs
/// anywhere in the other graph's comparison sets relates the pair through
/// that primary's blank node: the result then carries the matching kind plus
/// `BlankNodeMediated`, with the mediating blank node recorded.
pub fn classify_with_blank_nodes(
    g1: &RdfGraph,
    g2: &RdfGraph,
    mode: ClassificationMode,
) -> Result<Classification, CyclicBlankNodeError> {
    let r1 = reify_blank_nodes(g1)?;
    let r2 = reify_blank_nodes(g2)?;
    let core1 = r1.core_graph(g1.id());
    let core2 = r2.core_graph(g2.id());

    let base = classify_pair(&core1, &core2, mode);
    let mut kinds = BTreeSet::new();
    let mut witnesses: BTreeMap<RelationshipKind, BTreeSet<Term>> = BTreeMap::new();
    if base.is_related() {
        kinds.extend(base.kinds.iter().copied());
        for (k, w) in &base.witnesses {
            witnesses.entry(*k).or_default().extend(w.iter().cloned());
        }
    }

    let mut mediators: BTreeSet<Term> = BTreeSet::new();
    let mut add = |kind: RelationshipKind, term: &Term| {
        kinds.insert(kind);
        witnesses.entry(kind).or_default().insert(term.clone());
    };

    // Anchors of this side's primary triples matched against the other core.
    // `forward` fixes the reported kind's perspective to the (g1, g2) order.
    let mut mediate = |view: &ReifiedView, other: &RdfGraph, forward: bool| {
        use RelationshipKind::*;
        for t in view.primary() {
            let blank = if t.subject.is_blank() {
                &t.subject
            } else {
                &t.object
            };
            let mut anchors: Vec<(&Term, AnchorPosition)> = Vec::new();
            if !t.subject.is_blank() {
                anchors.push((&t.subject, AnchorPosition::Subject));
            }
            if !t.object.is_blank() {
                anchors.push((&t.object, AnchorPosition::Object));
            }
            let mut hit = false;
            for (anchor, position) in anchors {
                let cases: [(bool, RelationshipKind); 3] = match position {
                    AnchorPosition::Subject => [
                        (other.subjects().contains(anchor), SsPp),
                        (
                            other.objects().contains(anchor),
                            if forward { So } else { Os },
                        ),
                        (
                            other.predicates().contains(anchor),
                            if forward { Sp } else { Ps },
                        ),
                    ],
                    AnchorPosition::Object => [
                        (other.objects().contains(anchor), OoPp),
                        (
                            other.subjects().contains(anchor),
                            if forward { Os } else { So },
                        ),
                        (
                            other.predicates().contains(anchor),
                            if forward { Op } else { Po },
                        ),
                    ],
                };
                for (matched, kind) in cases {
                    if matched {
                        add(kind, anchor);
                        hit = true;
                    }
                }
            }
            if hit {
                mediators.insert(blank.clone());
            }
        }
    };

    mediate(&r1, &core2, true);
    mediate(&r2, &core1, false);

    if kinds.is_empty() {
        return Ok(Classification::unrelated());
    }

    let via_blank_node = mediators.iter().next().cloned();
    if !mediators.is_empty() {
        kinds.insert(RelationshipKind::BlankNodeMediated);
        witnesses.insert(RelationshipKind::BlankNodeMediated, mediators);
    }

    Ok(Classification {
        kinds,
        witnesses,
        via_blank_node,
    })
}
