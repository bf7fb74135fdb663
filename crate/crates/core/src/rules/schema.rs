//! Compiles a small RDFS/OWL fragment into rules specialised to the
//! schema, so the schema triples themselves need not be present in the
//! graph being reasoned over.
//!
//! | schema triple                  | compiled rule                               |
//! |--------------------------------|---------------------------------------------|
//! | `P rdfs:domain C`              | `{?s P ?o} => {?s a C}`                     |
//! | `P rdfs:range C`               | `{?s P ?o} => {?o a C}`                     |
//! | `C1 rdfs:subClassOf C2`        | `{?x a C1} => {?x a C2}`                    |
//! | `P1 rdfs:subPropertyOf P2`     | `{?s P1 ?o} => {?s P2 ?o}`                  |
//! | `P owl:inverseOf Q`            | `{?s P ?o} => {?o Q ?s}` and the converse   |
//! | `P a owl:SymmetricProperty`    | `{?s P ?o} => {?o P ?s}`                    |
//! | `P a owl:TransitiveProperty`   | `{?x P ?y. ?y P ?z} => {?x P ?z}`           |

use crate::rdf::term::{OWL, RDFS, RDF_TYPE};
use crate::rdf::{Graph, Term, Triple};
use crate::rules::rule::{Rule, RuleSet, TriplePattern};

#[derive(Clone, Debug, Default)]
pub struct SchemaCompilation {
    pub rules: RuleSet,
    /// Schema triples that matched none of the supported constructs.
    pub ignored: Vec<Triple>,
}

pub fn compile_schema(schema: &Graph) -> RuleSet {
    compile_schema_report(schema).rules
}

pub fn compile_schema_report(schema: &Graph) -> SchemaCompilation {
    let mut out = SchemaCompilation::default();
    for triple in schema {
        let compiled = compile_triple(triple);
        if compiled.is_empty() {
            out.ignored.push(triple.clone());
        }
        for rule in compiled {
            out.rules
                .insert(rule)
                .expect("compiled schema rules are safe");
        }
    }
    out
}

fn pattern(s: &Term, p: &Term, o: &Term) -> TriplePattern {
    TriplePattern::new(s.clone(), p.clone(), o.clone()).expect("well-formed schema pattern")
}

fn rule(label: String, body: Vec<TriplePattern>, head: TriplePattern) -> Rule {
    Rule::new(label, body, vec![head]).expect("compiled schema rules are safe")
}

fn compile_triple(triple: &Triple) -> Vec<Rule> {
    let (Some(subject), Some(predicate), Some(object)) = (
        triple.subject().as_iri(),
        triple.predicate().as_iri(),
        triple.object().as_iri(),
    ) else {
        return Vec::new();
    };
    let (x, y, z) = (
        Term::variable("x"),
        Term::variable("y"),
        Term::variable("z"),
    );
    let rdf_type = Term::Iri(RDF_TYPE.into());
    let s = triple.subject();
    let o = triple.object();

    match predicate
        .strip_prefix(RDFS)
        .or_else(|| predicate.strip_prefix(OWL))
    {
        Some("domain") if predicate.starts_with(RDFS) => vec![rule(
            format!("domain <{subject}>"),
            vec![pattern(&x, s, &y)],
            pattern(&x, &rdf_type, o),
        )],
        Some("range") if predicate.starts_with(RDFS) => vec![rule(
            format!("range <{subject}>"),
            vec![pattern(&x, s, &y)],
            pattern(&y, &rdf_type, o),
        )],
        Some("subClassOf") if predicate.starts_with(RDFS) => vec![rule(
            format!("subClassOf <{subject}>"),
            vec![pattern(&x, &rdf_type, s)],
            pattern(&x, &rdf_type, o),
        )],
        Some("subPropertyOf") if predicate.starts_with(RDFS) => vec![rule(
            format!("subPropertyOf <{subject}>"),
            vec![pattern(&x, s, &y)],
            pattern(&x, o, &y),
        )],
        Some("inverseOf") if predicate.starts_with(OWL) => vec![
            rule(
                format!("inverseOf <{subject}>"),
                vec![pattern(&x, s, &y)],
                pattern(&y, o, &x),
            ),
            rule(
                format!("inverseOf <{object}>"),
                vec![pattern(&x, o, &y)],
                pattern(&y, s, &x),
            ),
        ],
        _ if predicate == RDF_TYPE => match object.strip_prefix(OWL) {
            Some("SymmetricProperty") => vec![rule(
                format!("symmetric <{subject}>"),
                vec![pattern(&x, s, &y)],
                pattern(&y, s, &x),
            )],
            Some("TransitiveProperty") => vec![rule(
                format!("transitive <{subject}>"),
                vec![pattern(&x, s, &y), pattern(&y, s, &z)],
                pattern(&x, s, &z),
            )],
            _ => Vec::new(),
        },
        _ => Vec::new(),
    }
}
