use std::collections::{HashMap, HashSet};

use crate::inference::binding::Binding;
use crate::rdf::{Graph, Term, Triple};
use crate::rules::TriplePattern;

/// Triple store with per-position lookup, used as the working set of the
/// closure and the fact base of the prover.
#[derive(Clone, Debug, Default)]
pub(crate) struct TripleIndex {
    all: HashSet<Triple>,
    by_subject: HashMap<Term, HashSet<Triple>>,
    by_predicate: HashMap<Term, HashSet<Triple>>,
    by_object: HashMap<Term, HashSet<Triple>>,
}

impl TripleIndex {
    pub fn new() -> Self {
        TripleIndex::default()
    }

    pub fn len(&self) -> usize {
        self.all.len()
    }

    pub fn contains(&self, triple: &Triple) -> bool {
        self.all.contains(triple)
    }

    pub fn insert(&mut self, triple: Triple) -> bool {
        if self.all.contains(&triple) {
            return false;
        }
        for (map, key) in [
            (&mut self.by_subject, triple.subject()),
            (&mut self.by_predicate, triple.predicate()),
            (&mut self.by_object, triple.object()),
        ] {
            map.entry(key.clone()).or_default().insert(triple.clone());
        }
        self.all.insert(triple);
        true
    }

    pub fn remove(&mut self, triple: &Triple) -> bool {
        if !self.all.remove(triple) {
            return false;
        }
        for (map, key) in [
            (&mut self.by_subject, triple.subject()),
            (&mut self.by_predicate, triple.predicate()),
            (&mut self.by_object, triple.object()),
        ] {
            if let Some(set) = map.get_mut(key) {
                set.remove(triple);
                if set.is_empty() {
                    map.remove(key);
                }
            }
        }
        true
    }

    pub fn to_graph(&self) -> Graph {
        self.all.iter().cloned().collect()
    }

    /// Stored triples that could match `pattern`, narrowed by its most
    /// selective constant position.
    fn candidates<'a>(
        &'a self,
        pattern: &TriplePattern,
    ) -> Box<dyn Iterator<Item = &'a Triple> + 'a> {
        if let Some(t) = pattern.to_triple() {
            return Box::new(self.all.get(&t).into_iter());
        }
        let empty =
            || -> Box<dyn Iterator<Item = &'a Triple> + 'a> { Box::new(std::iter::empty()) };
        let mut best: Option<&HashSet<Triple>> = None;
        for (map, term) in [
            (&self.by_subject, &pattern.subject),
            (&self.by_predicate, &pattern.predicate),
            (&self.by_object, &pattern.object),
        ] {
            if term.is_variable() {
                continue;
            }
            match map.get(term) {
                None => return empty(),
                Some(set) if best.is_none_or(|b| set.len() < b.len()) => best = Some(set),
                _ => {}
            }
        }
        match best {
            Some(set) => Box::new(set.iter()),
            None => Box::new(self.all.iter()),
        }
    }

    /// Every extension of `binding` under which `pattern` matches a stored
    /// triple.
    pub fn matches<'a>(
        &'a self,
        pattern: &'a TriplePattern,
        binding: &'a Binding,
    ) -> impl Iterator<Item = Binding> + 'a {
        let applied = binding.apply(pattern);
        self.candidates(&applied)
            .filter_map(move |t| binding.unify(pattern, t))
    }
}

impl FromIterator<Triple> for TripleIndex {
    fn from_iter<I: IntoIterator<Item = Triple>>(iter: I) -> Self {
        let mut index = TripleIndex::new();
        for t in iter {
            index.insert(t);
        }
        index
    }
}

impl<'a> FromIterator<&'a Triple> for TripleIndex {
    fn from_iter<I: IntoIterator<Item = &'a Triple>>(iter: I) -> Self {
        iter.into_iter().cloned().collect()
    }
}
