use crate::inference::backchain::Prover;
use crate::inference::closure::closure;
use crate::inference::index::TripleIndex;
use crate::rdf::{Diff, Graph, Triple};
use crate::rules::RuleSet;

/// Removes every triple of `graph` that the remaining triples entail.
///
/// Candidates are visited in canonical order; a candidate is dropped when
/// it can be proven from the rest of `graph` together with `aux`. Triples
/// of `aux` take part in proofs but are never removal candidates, and a
/// candidate does not count as proven merely because `aux` also holds it.
pub fn reduce(graph: &Graph, rules: &RuleSet, aux: &Graph) -> Graph {
    let mut facts: TripleIndex = graph.iter().chain(aux.iter()).collect();
    let mut kept = graph.clone();
    remove_entailed(graph.iter(), &mut kept, &mut facts, rules, aux);
    kept
}

fn remove_entailed<'t>(
    candidates: impl Iterator<Item = &'t Triple>,
    kept: &mut Graph,
    facts: &mut TripleIndex,
    rules: &RuleSet,
    aux: &Graph,
) {
    if rules.is_empty() {
        return;
    }
    for candidate in candidates {
        if !facts.remove(candidate) {
            continue;
        }
        let entailed = Prover::new(facts, rules).prove(candidate);
        if entailed {
            kept.remove(candidate);
        }
        if !entailed || aux.contains(candidate) {
            facts.insert(candidate.clone());
        }
    }
}

/// True when no triple of `graph` is entailed by the others plus `aux`.
fn is_irreducible(graph: &Graph, rules: &RuleSet, aux: &Graph) -> bool {
    let mut kept = graph.clone();
    let mut facts: TripleIndex = graph.iter().chain(aux.iter()).collect();
    remove_entailed(graph.iter(), &mut kept, &mut facts, rules, aux);
    kept.len() == graph.len()
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct IncrementalOutcome {
    pub graph: Graph,
    /// Set when the shortcut result failed verification and a full
    /// reduction of `full` was returned instead.
    pub fallback_used: bool,
}

/// Updates a previous reduction for a diff, testing only the inserted
/// triples.
///
/// Deleting triples from a reduction can drop the support that justified
/// eliding a triple that is still present, and an insertion can make a
/// surviving triple derivable. The shortcut result is therefore checked
/// against `full` (the new version of the graph): it must be a subgraph of
/// `full` with the same closure, and no triple of it may be entailed by
/// the rest. Otherwise this falls back to `reduce(full, rules, aux)`.
///
/// When every rule has a single body pattern, all irreducible subgraphs
/// with the same closure have the same size, so the checks above also fix
/// the cardinality. Rules with several body patterns (transitivity, for
/// one) break that, so for those the shortcut is additionally compared
/// with a full reduction and replaced by it when the sizes differ.
pub fn incremental_reduce(
    prev_min: &Graph,
    diff: &Diff,
    rules: &RuleSet,
    aux: &Graph,
    full: &Graph,
) -> IncrementalOutcome {
    let mut kept = prev_min.difference(diff.deletions());
    kept.extend(diff.insertions().iter().cloned());
    let mut facts: TripleIndex = kept.iter().chain(aux.iter()).collect();
    remove_entailed(diff.insertions().iter(), &mut kept, &mut facts, rules, aux);

    let sound = kept.is_subset(full)
        && closure(&kept.union(aux), rules).graph == closure(&full.union(aux), rules).graph
        && is_irreducible(&kept, rules, aux);
    let replacement = if !sound {
        Some(reduce(full, rules, aux))
    } else if rules.iter().all(|r| r.body().len() == 1) {
        None
    } else {
        Some(reduce(full, rules, aux)).filter(|m| m.len() != kept.len())
    };
    match replacement {
        None => IncrementalOutcome {
            graph: kept,
            fallback_used: false,
        },
        Some(graph) => IncrementalOutcome {
            graph,
            fallback_used: true,
        },
    }
}
