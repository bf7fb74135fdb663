//! Shared test support: a brute-force closure oracle and seeded instance
//! generators. The oracle works on plain IRI strings and enumerates every
//! variable assignment over the constant universe, so it shares no code
//! with the library's matcher or prover.

#![allow(dead_code)]

use std::collections::BTreeSet;

use gnstat::rdf::{Graph, Triple};
use gnstat::rules::{parse_rules, RuleSet};
use rand::seq::SliceRandom;
use rand::Rng;
use rand_chacha::rand_core::SeedableRng;
use rand_chacha::ChaCha8Rng;

pub const EX: &str = "http://example.org/t/";
pub const EXTERNAL: &str = "http://other.example.net/";
pub const SCHEMA: &str = "http://example.org/schema/";
pub const RDF_TYPE: &str = "http://www.w3.org/1999/02/22-rdf-syntax-ns#type";

pub type OracleTriple = (String, String, String);

pub fn rng(seed: u64) -> ChaCha8Rng {
    ChaCha8Rng::seed_from_u64(seed)
}

pub fn individual(i: usize) -> String {
    if i % 3 == 2 {
        format!("{EXTERNAL}e{i}")
    } else {
        format!("{EX}e{i}")
    }
}

pub fn predicate(i: usize) -> String {
    format!("{SCHEMA}p{i}")
}

pub fn class(i: usize) -> String {
    format!("{SCHEMA}C{i}")
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum RuleKind {
    Domain(usize, usize),
    Range(usize, usize),
    Inverse(usize, usize),
    Symmetric(usize),
    Transitive(usize),
    SubClassOf(usize, usize),
}

#[derive(Clone, Debug)]
pub enum Pat {
    Var(usize),
    Const(String),
}

pub struct OracleRule {
    pub body: Vec<[Pat; 3]>,
    pub head: Vec<[Pat; 3]>,
}

fn v(i: usize) -> Pat {
    Pat::Var(i)
}

fn c(s: impl Into<String>) -> Pat {
    Pat::Const(s.into())
}

impl RuleKind {
    pub fn n3(&self) -> String {
        match *self {
            RuleKind::Domain(p, k) => format!("{{ ?x <{}> ?y }} => {{ ?x a <{}> }} .", predicate(p), class(k)),
            RuleKind::Range(p, k) => format!("{{ ?x <{}> ?y }} => {{ ?y a <{}> }} .", predicate(p), class(k)),
            RuleKind::Inverse(p, q) => format!(
                "{{ ?x <{0}> ?y }} => {{ ?y <{1}> ?x }} .\n{{ ?x <{1}> ?y }} => {{ ?y <{0}> ?x }} .",
                predicate(p),
                predicate(q)
            ),
            RuleKind::Symmetric(p) => format!("{{ ?x <{0}> ?y }} => {{ ?y <{0}> ?x }} .", predicate(p)),
            RuleKind::Transitive(p) => format!(
                "{{ ?x <{0}> ?y . ?y <{0}> ?z }} => {{ ?x <{0}> ?z }} .",
                predicate(p)
            ),
            RuleKind::SubClassOf(a, b) => format!("{{ ?x a <{}> }} => {{ ?x a <{}> }} .", class(a), class(b)),
        }
    }

    pub fn oracle(&self) -> Vec<OracleRule> {
        let rule = |body: Vec<[Pat; 3]>, head: Vec<[Pat; 3]>| OracleRule { body, head };
        match *self {
            RuleKind::Domain(p, k) => vec![rule(
                vec![[v(0), c(predicate(p)), v(1)]],
                vec![[v(0), c(RDF_TYPE), c(class(k))]],
            )],
            RuleKind::Range(p, k) => vec![rule(
                vec![[v(0), c(predicate(p)), v(1)]],
                vec![[v(1), c(RDF_TYPE), c(class(k))]],
            )],
            RuleKind::Inverse(p, q) => vec![
                rule(
                    vec![[v(0), c(predicate(p)), v(1)]],
                    vec![[v(1), c(predicate(q)), v(0)]],
                ),
                rule(
                    vec![[v(0), c(predicate(q)), v(1)]],
                    vec![[v(1), c(predicate(p)), v(0)]],
                ),
            ],
            RuleKind::Symmetric(p) => vec![rule(
                vec![[v(0), c(predicate(p)), v(1)]],
                vec![[v(1), c(predicate(p)), v(0)]],
            )],
            RuleKind::Transitive(p) => vec![rule(
                vec![[v(0), c(predicate(p)), v(1)], [v(1), c(predicate(p)), v(2)]],
                vec![[v(0), c(predicate(p)), v(2)]],
            )],
            RuleKind::SubClassOf(a, b) => vec![rule(
                vec![[v(0), c(RDF_TYPE), c(class(a))]],
                vec![[v(0), c(RDF_TYPE), c(class(b))]],
            )],
        }
    }
}

pub fn ruleset(kinds: &[RuleKind]) -> RuleSet {
    let text: Vec<String> = kinds.iter().map(RuleKind::n3).collect();
    parse_rules(&text.join("\n")).expect("generated rules parse")
}

pub fn to_oracle(graph: &Graph) -> BTreeSet<OracleTriple> {
    graph
        .iter()
        .map(|t| {
            let iri =
                |term: &gnstat::rdf::Term| term.as_iri().expect("IRI-only instance").to_string();
            (iri(t.subject()), iri(t.predicate()), iri(t.object()))
        })
        .collect()
}

pub fn from_oracle(triples: &BTreeSet<OracleTriple>) -> Graph {
    triples
        .iter()
        .map(|(s, p, o)| Triple::iris(s, p, o))
        .collect()
}

fn instantiate(pat: &Pat, assignment: &[usize], universe: &[String]) -> String {
    match pat {
        Pat::Var(i) => universe[assignment[*i]].clone(),
        Pat::Const(s) => s.clone(),
    }
}

/// Closure by exhaustive assignment: every rule is tried under every
/// mapping of its variables to universe constants until nothing changes.
pub fn oracle_closure(
    graph: &BTreeSet<OracleTriple>,
    kinds: &[RuleKind],
) -> BTreeSet<OracleTriple> {
    let rules: Vec<OracleRule> = kinds.iter().flat_map(RuleKind::oracle).collect();
    let mut universe: BTreeSet<String> = BTreeSet::new();
    for (s, p, o) in graph {
        universe.extend([s.clone(), p.clone(), o.clone()]);
    }
    for rule in &rules {
        for pat in rule.body.iter().chain(rule.head.iter()).flatten() {
            if let Pat::Const(s) = pat {
                universe.insert(s.clone());
            }
        }
    }
    let universe: Vec<String> = universe.into_iter().collect();
    let mut facts = graph.clone();
    loop {
        let mut added = false;
        for rule in &rules {
            let arity = rule
                .body
                .iter()
                .flatten()
                .filter_map(|p| match p {
                    Pat::Var(i) => Some(i + 1),
                    Pat::Const(_) => None,
                })
                .max()
                .unwrap_or(0);
            let mut assignment = vec![0usize; arity];
            'assignments: loop {
                let holds = rule.body.iter().all(|[s, p, o]| {
                    facts.contains(&(
                        instantiate(s, &assignment, &universe),
                        instantiate(p, &assignment, &universe),
                        instantiate(o, &assignment, &universe),
                    ))
                });
                if holds {
                    for [s, p, o] in &rule.head {
                        added |= facts.insert((
                            instantiate(s, &assignment, &universe),
                            instantiate(p, &assignment, &universe),
                            instantiate(o, &assignment, &universe),
                        ));
                    }
                }
                let mut i = 0;
                loop {
                    if i == arity {
                        break 'assignments;
                    }
                    assignment[i] += 1;
                    if assignment[i] < universe.len() {
                        break;
                    }
                    assignment[i] = 0;
                    i += 1;
                }
            }
        }
        if !added {
            return facts;
        }
    }
}

/// A random IRI-only graph with its ruleset.
#[derive(Clone, Debug)]
pub struct Instance {
    pub graph: Graph,
    pub kinds: Vec<RuleKind>,
    pub individuals: usize,
    pub predicates: usize,
    pub classes: usize,
}

impl Instance {
    pub fn rules(&self) -> RuleSet {
        ruleset(&self.kinds)
    }

    /// Node constants (individuals then classes) and predicates (with
    /// rdf:type) an instance's closure can mention.
    pub fn universe(&self) -> (Vec<String>, Vec<String>) {
        let nodes = (0..self.individuals)
            .map(individual)
            .chain((0..self.classes).map(class))
            .collect();
        let preds = (0..self.predicates)
            .map(predicate)
            .chain(std::iter::once(RDF_TYPE.to_string()))
            .collect();
        (nodes, preds)
    }

    /// Every ground triple over the universe.
    pub fn candidates(&self) -> Vec<Triple> {
        let (nodes, preds) = self.universe();
        let mut out = Vec::new();
        for s in &nodes {
            for p in &preds {
                for o in &nodes {
                    out.push(Triple::iris(s, p, o));
                }
            }
        }
        out
    }

    pub fn random_triple(&self, rng: &mut impl Rng) -> Triple {
        let s = individual(rng.gen_range(0..self.individuals));
        if rng.gen_bool(0.3) {
            Triple::iris(&s, RDF_TYPE, &class(rng.gen_range(0..self.classes)))
        } else {
            Triple::iris(
                &s,
                &predicate(rng.gen_range(0..self.predicates)),
                &individual(rng.gen_range(0..self.individuals)),
            )
        }
    }
}

pub fn random_kind(rng: &mut impl Rng, predicates: usize, classes: usize) -> RuleKind {
    let p = rng.gen_range(0..predicates);
    let q = rng.gen_range(0..predicates);
    let a = rng.gen_range(0..classes);
    let b = rng.gen_range(0..classes);
    match rng.gen_range(0..6) {
        0 => RuleKind::Domain(p, a),
        1 => RuleKind::Range(p, a),
        2 => RuleKind::Inverse(p, q),
        3 => RuleKind::Symmetric(p),
        4 => RuleKind::Transitive(p),
        _ => RuleKind::SubClassOf(a, b),
    }
}

/// At most `max_triples` triples; individuals and classes together
/// number at most six; at most four rules.
pub fn random_instance(rng: &mut impl Rng, max_triples: usize) -> Instance {
    let classes = 2;
    let individuals = rng.gen_range(2..=4);
    let predicates = rng.gen_range(1..=3);
    let mut instance = Instance {
        graph: Graph::new(),
        kinds: Vec::new(),
        individuals,
        predicates,
        classes,
    };
    for _ in 0..rng.gen_range(1..=max_triples) {
        let t = instance.random_triple(rng);
        instance.graph.insert(t);
    }
    for _ in 0..rng.gen_range(0..=4) {
        instance.kinds.push(random_kind(rng, predicates, classes));
    }
    instance.kinds.shuffle(rng);
    instance
}
