//! Core RDF data model: terms, triples, and triple sets.

use std::collections::BTreeSet;
use std::fmt;

/// A single RDF node: an IRI, a literal, or a blank node.
///
/// Blank node identity is the pair `(document, label)`: equal labels parsed
/// from different documents are distinct terms and never compare equal.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Term {
    /// An absolute IRI, stored as its unescaped text.
    Iri(String),
    /// A literal value. At most one of `datatype` and `language` is set.
    Literal {
        lexical: String,
        datatype: Option<String>,
        language: Option<String>,
    },
    /// A blank node, scoped to the document it was parsed from.
    Blank { label: String, document: String },
}

impl Term {
    pub fn iri(text: impl Into<String>) -> Self {
        Term::Iri(text.into())
    }

    pub fn literal(lexical: impl Into<String>) -> Self {
        Term::Literal {
            lexical: lexical.into(),
            datatype: None,
            language: None,
        }
    }

    pub fn typed_literal(lexical: impl Into<String>, datatype: impl Into<String>) -> Self {
        Term::Literal {
            lexical: lexical.into(),
            datatype: Some(datatype.into()),
            language: None,
        }
    }

    pub fn lang_literal(lexical: impl Into<String>, language: impl Into<String>) -> Self {
        Term::Literal {
            lexical: lexical.into(),
            datatype: None,
            language: Some(language.into()),
        }
    }

    pub fn blank(label: impl Into<String>, document: impl Into<String>) -> Self {
        Term::Blank {
            label: label.into(),
            document: document.into(),
        }
    }

    pub fn is_iri(&self) -> bool {
        matches!(self, Term::Iri(_))
    }

    pub fn is_literal(&self) -> bool {
        matches!(self, Term::Literal { .. })
    }

    pub fn is_blank(&self) -> bool {
        matches!(self, Term::Blank { .. })
    }

    /// IRI text, if this term is an IRI.
    pub fn as_iri(&self) -> Option<&str> {
        match self {
            Term::Iri(text) => Some(text),
            _ => None,
        }
    }
}

/// Escapes a literal's lexical form for N-Triples output.
fn escape_literal(raw: &str, out: &mut fmt::Formatter<'_>) -> fmt::Result {
    for c in raw.chars() {
        match c {
            '\\' => write!(out, "\\\\")?,
            '"' => write!(out, "\\\"")?,
            '\n' => write!(out, "\\n")?,
            '\r' => write!(out, "\\r")?,
            '\t' => write!(out, "\\t")?,
            c if (c as u32) < 0x20 => write!(out, "\\u{:04X}", c as u32)?,
            c => write!(out, "{c}")?,
        }
    }
    Ok(())
}

/// Renders the term in N-Triples syntax. The document scope of a blank node
/// is not part of the rendering; re-parsing under the same document id
/// reproduces the original term.
impl fmt::Display for Term {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Term::Iri(text) => write!(f, "<{text}>"),
            Term::Literal {
                lexical,
                datatype,
                language,
            } => {
                write!(f, "\"")?;
                escape_literal(lexical, f)?;
                write!(f, "\"")?;
                if let Some(dt) = datatype {
                    write!(f, "^^<{dt}>")?;
                } else if let Some(lang) = language {
                    write!(f, "@{lang}")?;
                }
                Ok(())
            }
            Term::Blank { label, .. } => write!(f, "_:{label}"),
        }
    }
}

/// One subject–predicate–object statement.
///
/// The subject is never a literal. Predicates are IRIs, except that the
/// parser's relaxed mode also admits quoted literal predicates.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Triple {
    pub subject: Term,
    pub predicate: Term,
    pub object: Term,
}

impl Triple {
    pub fn new(subject: Term, predicate: Term, object: Term) -> Self {
        debug_assert!(
            !subject.is_literal(),
            "triple subject must not be a literal"
        );
        Triple {
            subject,
            predicate,
            object,
        }
    }
}

impl fmt::Display for Triple {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{} {} {} .", self.subject, self.predicate, self.object)
    }
}

/// A named set of triples with deterministic iteration order.
///
/// Duplicate insertions collapse silently; iteration yields triples in the
/// order their first occurrence was inserted. The id doubles as the document
/// scope for blank nodes parsed into the set.
#[derive(Debug, Clone)]
pub struct TripleSet {
    id: String,
    order: Vec<Triple>,
    set: BTreeSet<Triple>,
}

impl TripleSet {
    pub fn new(id: impl Into<String>) -> Self {
        TripleSet {
            id: id.into(),
            order: Vec::new(),
            set: BTreeSet::new(),
        }
    }

    pub fn from_triples(id: impl Into<String>, triples: impl IntoIterator<Item = Triple>) -> Self {
        let mut ts = TripleSet::new(id);
        ts.extend(triples);
        ts
    }

    pub fn id(&self) -> &str {
        &self.id
    }

    /// Inserts a triple, returning `false` if it was already present.
    pub fn insert(&mut self, triple: Triple) -> bool {
        if self.set.insert(triple.clone()) {
            self.order.push(triple);
            true
        } else {
            false
        }
    }

    pub fn extend(&mut self, triples: impl IntoIterator<Item = Triple>) {
        for t in triples {
            self.insert(t);
        }
    }

    pub fn contains(&self, triple: &Triple) -> bool {
        self.set.contains(triple)
    }

    /// Iterates in insertion order of first occurrence.
    pub fn iter(&self) -> impl Iterator<Item = &Triple> {
        self.order.iter()
    }

    /// The triples as a sorted set, for order-insensitive comparisons.
    pub fn as_set(&self) -> &BTreeSet<Triple> {
        &self.set
    }

    pub fn len(&self) -> usize {
        self.order.len()
    }

    pub fn is_empty(&self) -> bool {
        self.order.is_empty()
    }
}

/// Equality is set equality on the triples plus id equality; insertion order
/// does not participate.
impl PartialEq for TripleSet {
    fn eq(&self, other: &Self) -> bool {
        self.id == other.id && self.set == other.set
    }
}

impl Eq for TripleSet {}

impl<'a> IntoIterator for &'a TripleSet {
    type Item = &'a Triple;
    type IntoIter = std::slice::Iter<'a, Triple>;

    fn into_iter(self) -> Self::IntoIter {
        self.order.iter()
    }
}
