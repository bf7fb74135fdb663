use std::collections::HashSet;

use crate::inference::binding::Binding;
use crate::inference::index::TripleIndex;
use crate::rdf::{Graph, Triple};
use crate::rules::{Rule, RuleSet, TriplePattern};

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ClosureResult {
    pub graph: Graph,
    /// `|closure| - |input|`
    pub derived_count: usize,
    /// Rounds that derived at least one new triple.
    pub rounds: usize,
}

/// Least fixpoint of `rules` over `graph`, by semi-naive iteration: every
/// rule firing in a round uses at least one triple derived in the
/// previous round.
pub fn closure(graph: &Graph, rules: &RuleSet) -> ClosureResult {
    let mut index: TripleIndex = graph.iter().collect();
    let mut delta: TripleIndex = graph.iter().collect();
    let mut rounds = 0;

    while !rules.is_empty() && delta.len() > 0 {
        let mut fresh = HashSet::new();
        for rule in rules {
            fire_on_delta(rule, &index, &delta, &mut fresh);
        }
        if fresh.is_empty() {
            break;
        }
        rounds += 1;
        for t in &fresh {
            index.insert(t.clone());
        }
        delta = fresh.into_iter().collect();
    }

    let graph_out = index.to_graph();
    ClosureResult {
        derived_count: graph_out.len() - graph.len(),
        graph: graph_out,
        rounds,
    }
}

fn fire_on_delta(rule: &Rule, all: &TripleIndex, delta: &TripleIndex, fresh: &mut HashSet<Triple>) {
    let body = rule.body();
    for (pivot, pivot_pattern) in body.iter().enumerate() {
        let rest: Vec<&TriplePattern> = body
            .iter()
            .enumerate()
            .filter(|&(i, _)| i != pivot)
            .map(|(_, p)| p)
            .collect();
        let start = Binding::new();
        for binding in delta.matches(pivot_pattern, &start) {
            join(&rest, binding, all, &mut |b| {
                for head in rule.head() {
                    if let Some(t) = b.ground(head) {
                        if !all.contains(&t) {
                            fresh.insert(t);
                        }
                    }
                }
            });
        }
    }
}

/// Calls `emit` for every extension of `binding` satisfying all `patterns`
/// against `index`, solving patterns left to right.
pub(crate) fn join(
    patterns: &[&TriplePattern],
    binding: Binding,
    index: &TripleIndex,
    emit: &mut dyn FnMut(&Binding),
) {
    match patterns.split_first() {
        None => emit(&binding),
        Some((first, rest)) => {
            for next in index.matches(first, &binding) {
                join(rest, next, index, emit);
            }
        }
    }
}
