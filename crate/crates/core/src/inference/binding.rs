use std::sync::Arc;

use crate::rdf::{Term, Triple};
use crate::rules::TriplePattern;

/// A partial substitution from variable names to ground terms.
#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct Binding {
    entries: Vec<(Arc<str>, Term)>,
}

impl Binding {
    pub fn new() -> Binding {
        Binding::default()
    }

    pub fn get(&self, name: &str) -> Option<&Term> {
        self.entries
            .iter()
            .find(|(n, _)| &**n == name)
            .map(|(_, t)| t)
    }

    pub fn len(&self) -> usize {
        self.entries.len()
    }

    pub fn is_empty(&self) -> bool {
        self.entries.is_empty()
    }

    /// Binds `name` to `value`; false if it is already bound to something
    /// else.
    pub fn bind(&mut self, name: &Arc<str>, value: &Term) -> bool {
        match self.get(name) {
            Some(existing) => existing == value,
            None => {
                self.entries.push((name.clone(), value.clone()));
                true
            }
        }
    }

    fn resolve(&self, term: &Term) -> Term {
        match term {
            Term::Variable(name) => self.get(name).cloned().unwrap_or_else(|| term.clone()),
            other => other.clone(),
        }
    }

    /// Substitutes bound variables, leaving unbound ones in place.
    pub fn apply(&self, pattern: &TriplePattern) -> TriplePattern {
        TriplePattern {
            subject: self.resolve(&pattern.subject),
            predicate: self.resolve(&pattern.predicate),
            object: self.resolve(&pattern.object),
        }
    }

    /// The ground triple for `pattern`, if every variable is bound and the
    /// result is a well-formed triple.
    pub fn ground(&self, pattern: &TriplePattern) -> Option<Triple> {
        Triple::new(
            self.resolve(&pattern.subject),
            self.resolve(&pattern.predicate),
            self.resolve(&pattern.object),
        )
        .ok()
    }

    /// Extends this binding so that `pattern` matches `triple`.
    pub fn unify(&self, pattern: &TriplePattern, triple: &Triple) -> Option<Binding> {
        let mut out = self.clone();
        for (p, v) in pattern.terms().into_iter().zip(triple.terms()) {
            match p {
                Term::Variable(name) => {
                    if !out.bind(name, v) {
                        return None;
                    }
                }
                constant if constant != v => return None,
                _ => {}
            }
        }
        Some(out)
    }
}
