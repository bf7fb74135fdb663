use std::collections::btree_set;
use std::collections::BTreeSet;
use std::fmt;

use crate::error::{Error, Result};
use crate::rdf::term::Term;

/// A ground RDF statement.
///
/// Field order gives the canonical triple order: subject, then predicate,
/// then object, each compared by N-Triples rendering.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Triple {
    subject: Term,
    predicate: Term,
    object: Term,
}

impl Triple {
    pub fn new(subject: Term, predicate: Term, object: Term) -> Result<Triple> {
        if !(subject.is_iri() || subject.is_blank()) {
            return Err(Error::InvalidTriple(format!(
                "subject {subject} must be an IRI or blank node"
            )));
        }
        if !predicate.is_iri() {
            return Err(Error::InvalidTriple(format!(
                "predicate {predicate} must be an IRI"
            )));
        }
        if object.is_variable() {
            return Err(Error::InvalidTriple(format!(
                "object {object} must be ground"
            )));
        }
        Ok(Triple {
            subject,
            predicate,
            object,
        })
    }

    /// Builds a triple from IRI strings. Panics on relative IRIs, so this is
    /// meant for fixtures and constants.
    pub fn iris(s: &str, p: &str, o: &str) -> Triple {
        Triple::new(
            Term::iri(s).expect("absolute subject IRI"),
            Term::iri(p).expect("absolute predicate IRI"),
            Term::iri(o).expect("absolute object IRI"),
        )
        .expect("well-formed triple")
    }

    pub fn subject(&self) -> &Term {
        &self.subject
    }

    pub fn predicate(&self) -> &Term {
        &self.predicate
    }

    pub fn object(&self) -> &Term {
        &self.object
    }

    pub fn terms(&self) -> [&Term; 3] {
        [&self.subject, &self.predicate, &self.object]
    }

    pub(crate) fn map_terms(&self, mut f: impl FnMut(&Term) -> Term) -> Triple {
        Triple {
            subject: f(&self.subject),
            predicate: f(&self.predicate),
            object: f(&self.object),
        }
    }
}

impl fmt::Display for Triple {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{} {} {} .", self.subject, self.predicate, self.object)
    }
}

/// A finite set of ground triples. Iteration follows the canonical order.
#[derive(Clone, Debug, Default, PartialEq, Eq, Hash)]
pub struct Graph {
    triples: BTreeSet<Triple>,
}

impl Graph {
    pub fn new() -> Graph {
        Graph::default()
    }

    /// Number of triples, `|G|`.
    pub fn cardinality(&self) -> usize {
        self.triples.len()
    }

    pub fn len(&self) -> usize {
        self.triples.len()
    }

    pub fn is_empty(&self) -> bool {
        self.triples.is_empty()
    }

    /// Returns true when the triple was not already present.
    pub fn insert(&mut self, triple: Triple) -> bool {
        self.triples.insert(triple)
    }

    pub fn remove(&mut self, triple: &Triple) -> bool {
        self.triples.remove(triple)
    }

    pub fn contains(&self, triple: &Triple) -> bool {
        self.triples.contains(triple)
    }

    pub fn iter(&self) -> btree_set::Iter<'_, Triple> {
        self.triples.iter()
    }

    pub fn union(&self, other: &Graph) -> Graph {
        self.triples.union(&other.triples).cloned().collect()
    }

    pub fn difference(&self, other: &Graph) -> Graph {
        self.triples.difference(&other.triples).cloned().collect()
    }

    pub fn intersection(&self, other: &Graph) -> Graph {
        self.triples.intersection(&other.triples).cloned().collect()
    }

    pub fn is_subset(&self, other: &Graph) -> bool {
        self.triples.is_subset(&other.triples)
    }

    pub fn is_disjoint(&self, other: &Graph) -> bool {
        self.triples.is_disjoint(&other.triples)
    }

    /// `(self - deletions) + insertions`.
    pub fn apply_diff(&self, diff: &Diff) -> Graph {
        let mut out = self.difference(&diff.deletions);
        out.extend(diff.insertions.iter().cloned());
        out
    }

    /// Replaces every blank node `_:x` by `<scope>/.well-known/genid/x`.
    pub fn skolemize(&self, scope: &str) -> Result<Graph> {
        let base = format!("{}/.well-known/genid/", scope.trim_end_matches('/'));
        let mut out = Graph::new();
        for t in self {
            let mut failure = None;
            let mapped = t.map_terms(|term| match term {
                Term::Blank(label) => Term::iri(format!("{base}{label}")).unwrap_or_else(|e| {
                    failure = Some(e);
                    term.clone()
                }),
                other => other.clone(),
            });
            if let Some(e) = failure {
                return Err(e);
            }
            out.insert(mapped);
        }
        Ok(out)
    }
}

impl FromIterator<Triple> for Graph {
    fn from_iter<I: IntoIterator<Item = Triple>>(iter: I) -> Self {
        Graph {
            triples: iter.into_iter().collect(),
        }
    }
}

impl Extend<Triple> for Graph {
    fn extend<I: IntoIterator<Item = Triple>>(&mut self, iter: I) {
        self.triples.extend(iter)
    }
}

impl IntoIterator for Graph {
    type Item = Triple;
    type IntoIter = btree_set::IntoIter<Triple>;

    fn into_iter(self) -> Self::IntoIter {
        self.triples.into_iter()
    }
}

impl<'a> IntoIterator for &'a Graph {
    type Item = &'a Triple;
    type IntoIter = btree_set::Iter<'a, Triple>;

    fn into_iter(self) -> Self::IntoIter {
        self.triples.iter()
    }
}

/// Insertions `I` and deletions `D` taking one graph version to the next.
#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct Diff {
    insertions: Graph,
    deletions: Graph,
}

impl Diff {
    /// Triples present in both sides cancel out and are dropped from both.
    pub fn new(insertions: Graph, deletions: Graph) -> Diff {
        let both = insertions.intersection(&deletions);
        Diff {
            insertions: insertions.difference(&both),
            deletions: deletions.difference(&both),
        }
    }

    pub fn insertions(&self) -> &Graph {
        &self.insertions
    }

    pub fn deletions(&self) -> &Graph {
        &self.deletions
    }

    pub fn is_empty(&self) -> bool {
        self.insertions.is_empty() && self.deletions.is_empty()
    }
}
