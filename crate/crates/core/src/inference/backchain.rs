//! Goal-directed entailment check.
//!
//! Subgoals are triple patterns solved left to right. Each distinct
//! subgoal (up to variable renaming) owns an answer table. A subgoal met
//! again while it is still being solved is answered from its table as it
//! stands, which cuts the cycles that inverse, symmetric and transitive
//! rules create. Because a cut may hide answers, the search is repeated
//! until no table grows; at that point every table is closed under the
//! rules and a missing goal is genuinely underivable.
//!
//! Proven answers live only in the tables of one search. They are never
//! added to the fact base.

use std::collections::{HashMap, HashSet};
use std::rc::Rc;
use std::sync::Arc;

use crate::inference::binding::Binding;
use crate::inference::index::TripleIndex;
use crate::rdf::{Graph, Term, Triple};
use crate::rules::{RuleSet, TriplePattern};

/// True iff `goal` is in the closure of `graph` under `rules`.
pub fn backchain(graph: &Graph, rules: &RuleSet, goal: &Triple) -> bool {
    let index: TripleIndex = graph.iter().collect();
    Prover::new(&index, rules).prove(goal)
}

/// A subgoal with its variables renamed to `?0`, `?1`, ... in order of
/// first occurrence, so variant subgoals share one table.
fn variant_key(pattern: &TriplePattern) -> TriplePattern {
    let mut names: Vec<Arc<str>> = Vec::new();
    let mut rename = |term: &Term| match term {
        Term::Variable(name) => {
            let i = names.iter().position(|n| n == name).unwrap_or_else(|| {
                names.push(name.clone());
                names.len() - 1
            });
            Term::variable(i.to_string())
        }
        other => other.clone(),
    };
    TriplePattern {
        subject: rename(&pattern.subject),
        predicate: rename(&pattern.predicate),
        object: rename(&pattern.object),
    }
}

type Answers = Rc<HashSet<Triple>>;

pub(crate) struct Prover<'a> {
    facts: &'a TripleIndex,
    rules: &'a RuleSet,
    tables: HashMap<TriplePattern, Answers>,
    in_progress: HashSet<TriplePattern>,
    settled_this_pass: HashSet<TriplePattern>,
    grew: bool,
}

impl<'a> Prover<'a> {
    pub fn new(facts: &'a TripleIndex, rules: &'a RuleSet) -> Self {
        Prover {
            facts,
            rules,
            tables: HashMap::new(),
            in_progress: HashSet::new(),
            settled_this_pass: HashSet::new(),
            grew: false,
        }
    }

    pub fn prove(&mut self, goal: &Triple) -> bool {
        if self.facts.contains(goal) {
            return true;
        }
        if self.rules.is_empty() {
            return false;
        }
        let pattern = TriplePattern::from(goal);
        self.tables.clear();
        loop {
            self.grew = false;
            self.settled_this_pass.clear();
            if self.solve(&pattern).contains(goal) {
                return true;
            }
            if !self.grew {
                return false;
            }
        }
    }

    fn table(&self, key: &TriplePattern) -> Answers {
        self.tables.get(key).cloned().unwrap_or_default()
    }

    fn solve(&mut self, pattern: &TriplePattern) -> Answers {
        let key = variant_key(pattern);
        if self.in_progress.contains(&key) || self.settled_this_pass.contains(&key) {
            return self.table(&key);
        }
        self.in_progress.insert(key.clone());

        let previous = self.table(&key);
        let mut answers: HashSet<Triple> = (*previous).clone();
        let start = Binding::new();
        for b in self.facts.matches(pattern, &start) {
            if let Some(t) = b.ground(pattern) {
                answers.insert(t);
            }
        }

        let rules = self.rules;
        for rule in rules {
            for head in rule.head() {
                let Some(seed) = head_binding(head, pattern) else {
                    continue;
                };
                let body: Vec<&TriplePattern> = rule.body().iter().collect();
                for solution in self.solve_body(&body, seed) {
                    if let Some(t) = solution.ground(head) {
                        if Binding::new().unify(pattern, &t).is_some() {
                            answers.insert(t);
                        }
                    }
                }
            }
        }

        self.in_progress.remove(&key);
        self.settled_this_pass.insert(key.clone());
        if answers.len() > previous.len() {
            self.grew = true;
            let answers = Rc::new(answers);
            self.tables.insert(key, answers.clone());
            answers
        } else {
            previous
        }
    }

    fn solve_body(&mut self, body: &[&TriplePattern], binding: Binding) -> Vec<Binding> {
        let Some((first, rest)) = body.split_first() else {
            return vec![binding];
        };
        let subgoal = binding.apply(first);
        let answers = self.solve(&subgoal);
        let mut out = Vec::new();
        for t in answers.iter() {
            if let Some(next) = binding.unify(first, t) {
                out.extend(self.solve_body(rest, next));
            }
        }
        out
    }
}

/// Binds rule variables in `head` from the constants of `goal`. Returns
/// `None` when some position can never match.
fn head_binding(head: &TriplePattern, goal: &TriplePattern) -> Option<Binding> {
    let mut binding = Binding::new();
    for (h, g) in head.terms().into_iter().zip(goal.terms()) {
        match (h, g) {
            (_, Term::Variable(_)) => {}
            (Term::Variable(name), constant) => {
                if !binding.bind(name, constant) {
                    return None;
                }
            }
            (hc, gc) if hc != gc => return None,
            _ => {}
        }
    }
    Some(binding)
}
