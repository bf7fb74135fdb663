//! Dataset descriptions that tie each statistic to the rules it was
//! computed under, and re-computation of those statistics from a
//! description.
//!
//! A description looks like this (the `gn:` base is configurable):
//!
//! ```text
//! <http://ex.org/dataset> a void:Dataset ;
//!     void:dataDump "data.ttl" ;
//!     void:statItem [
//!         scovo:dimension gn:redundancy ;
//!         rdf:value 0.5 ;
//!         gn:normalisation [
//!             a gn:MiniRDF ;
//!             gn:rules [
//!                 a gn:RuleSet ;
//!                 gn:n3 "rules.n3" ;
//!                 gn:dlogic "schema.ttl"
//!             ] ;
//!             gn:constraints [ a gn:ConstraintSet ]
//!         ]
//!     ] .
//! ```
//!
//! Recomputing a description fetches the data dump, the N3 rules and the
//! description-logic graphs (following `owl:imports`), compiles the latter
//! into rules, reduces the data with the description-logic graphs as
//! auxiliary facts, and reports the resulting statistics.

use std::collections::{BTreeSet, HashSet, VecDeque};
use std::fmt::Write as _;
use std::path::{Path, PathBuf};

use crate::error::{Error, Result};
use crate::rdf::term::{OWL, RDF, RDF_TYPE, RDF_VALUE};
use crate::rdf::{is_absolute_iri, parse_turtle, parse_turtle_extended, Graph, Term};
use crate::rules::{compile_schema, parse_rules, RuleSet};
use crate::stats::{
    compute_stats, format_decimal, parse_decimal, NamespaceDecl, Rational, StatsReport,
};

pub const DEFAULT_GN_BASE: &str = "http://purl.org/gn#";
pub const VOID: &str = "http://rdfs.org/ns/void#";
pub const SCOVO: &str = "http://purl.org/NET/scovo#";

/// Where the graph-normalisation terms live.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Vocabulary {
    base: String,
}

impl Default for Vocabulary {
    fn default() -> Self {
        Vocabulary {
            base: DEFAULT_GN_BASE.to_string(),
        }
    }
}

impl Vocabulary {
    pub fn new(base: impl Into<String>) -> Result<Self> {
        let base = base.into();
        if !is_absolute_iri(&base) {
            return Err(Error::Description(format!(
                "vocabulary base <{base}> is not an absolute IRI"
            )));
        }
        Ok(Vocabulary { base })
    }

    pub fn base(&self) -> &str {
        &self.base
    }

    fn term(&self, local: &str) -> String {
        format!("{}{local}", self.base)
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum NormalisationKind {
    None,
    Closure,
    MiniRdf,
}

impl NormalisationKind {
    fn class_name(self) -> &'static str {
        match self {
            NormalisationKind::None => "NoNormalisation",
            NormalisationKind::Closure => "Closure",
            NormalisationKind::MiniRdf => "MiniRDF",
        }
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum RuleFormat {
    N3,
    DLogic,
    Rif,
}

impl RuleFormat {
    const ALL: [RuleFormat; 3] = [RuleFormat::N3, RuleFormat::DLogic, RuleFormat::Rif];

    fn property(self) -> &'static str {
        match self {
            RuleFormat::N3 => "n3",
            RuleFormat::DLogic => "dlogic",
            RuleFormat::Rif => "rif",
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct RuleSource {
    pub format: RuleFormat,
    /// A file path or a `file:` IRI.
    pub locator: String,
}

impl RuleSource {
    pub fn new(format: RuleFormat, locator: impl Into<String>) -> Self {
        RuleSource {
            format,
            locator: locator.into(),
        }
    }
}

/// Which normalisation produced a statistic and from which rule sources.
/// Constraint sets are always empty.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct NormalisationSpec {
    kind: NormalisationKind,
    rule_sources: Vec<RuleSource>,
}

impl NormalisationSpec {
    pub fn none() -> Self {
        NormalisationSpec {
            kind: NormalisationKind::None,
            rule_sources: Vec::new(),
        }
    }

    pub fn new(kind: NormalisationKind, rule_sources: Vec<RuleSource>) -> Result<Self> {
        if kind == NormalisationKind::None && !rule_sources.is_empty() {
            return Err(Error::Description(
                "an unnormalised statistic cannot name rule sources".into(),
            ));
        }
        let mut rule_sources = rule_sources;
        rule_sources.sort();
        rule_sources.dedup();
        Ok(NormalisationSpec { kind, rule_sources })
    }

    pub fn kind(&self) -> NormalisationKind {
        self.kind
    }

    pub fn rule_sources(&self) -> &[RuleSource] {
        &self.rule_sources
    }

    /// RIF sources can be recorded but not evaluated.
    pub fn has_unsupported_sources(&self) -> bool {
        self.rule_sources
            .iter()
            .any(|s| s.format == RuleFormat::Rif)
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum Dimension {
    PublishedTriples,
    ClosureTriples,
    MinimalTriples,
    Redundancy,
    OutLinkDensityPlus,
    OutLinkDensityMinus,
    /// `void:triples`, the rule-free triple count.
    VoidTriples,
}

impl Dimension {
    const ALL: [Dimension; 7] = [
        Dimension::PublishedTriples,
        Dimension::ClosureTriples,
        Dimension::MinimalTriples,
        Dimension::Redundancy,
        Dimension::OutLinkDensityPlus,
        Dimension::OutLinkDensityMinus,
        Dimension::VoidTriples,
    ];

    pub fn iri(self, vocab: &Vocabulary) -> String {
        match self {
            Dimension::PublishedTriples => vocab.term("publishedTriples"),
            Dimension::ClosureTriples => vocab.term("closureTriples"),
            Dimension::MinimalTriples => vocab.term("minimalTriples"),
            Dimension::Redundancy => vocab.term("redundancy"),
            Dimension::OutLinkDensityPlus => vocab.term("outLinkDensityPlus"),
            Dimension::OutLinkDensityMinus => vocab.term("outLinkDensityMinus"),
            Dimension::VoidTriples => format!("{VOID}triples"),
        }
    }

    fn from_iri(iri: &str, vocab: &Vocabulary) -> Option<Dimension> {
        Dimension::ALL.into_iter().find(|d| d.iri(vocab) == iri)
    }

    fn is_count(self) -> bool {
        matches!(
            self,
            Dimension::PublishedTriples
                | Dimension::ClosureTriples
                | Dimension::MinimalTriples
                | Dimension::VoidTriples
        )
    }

    /// The value this dimension takes in `report`, if the report has it.
    pub fn value_in(self, report: &StatsReport) -> Option<StatValue> {
        match self {
            Dimension::PublishedTriples | Dimension::VoidTriples => {
                Some(StatValue::Count(report.published_cardinality))
            }
            Dimension::ClosureTriples => Some(StatValue::Count(report.closure_cardinality)),
            Dimension::MinimalTriples => Some(StatValue::Count(report.minimal_cardinality)),
            Dimension::Redundancy => Some(StatValue::Ratio(report.redundancy)),
            Dimension::OutLinkDensityPlus => report.out_link_density_plus.map(StatValue::Ratio),
            Dimension::OutLinkDensityMinus => report.out_link_density_minus.map(StatValue::Ratio),
        }
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum StatValue {
    Count(u64),
    Ratio(Rational),
}

impl StatValue {
    /// Integer for counts; decimal with up to six places for ratios.
    pub fn lexical(&self) -> String {
        match self {
            StatValue::Count(n) => n.to_string(),
            StatValue::Ratio(r) => format_decimal(*r),
        }
    }
}

/// The dataset a description is about, and where its data can be fetched.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct DatasetRef {
    pub iri: String,
    pub data_dump: String,
    pub namespaces: Option<NamespaceDecl>,
}

/// One statistic as read back from a description.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct StatDescription {
    pub dataset: String,
    pub dimension: Dimension,
    pub value: StatValue,
    /// The literal as written, e.g. `0.333333`.
    pub lexical: String,
    pub normalisation: NormalisationSpec,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Description {
    pub dataset: DatasetRef,
    pub normalisation: NormalisationSpec,
    pub items: Vec<StatDescription>,
}

/// Every statistic present in `report`, in dimension order.
pub fn report_statistics(report: &StatsReport) -> Vec<(Dimension, StatValue)> {
    Dimension::ALL
        .into_iter()
        .filter(|d| *d != Dimension::VoidTriples)
        .filter_map(|d| d.value_in(report).map(|v| (d, v)))
        .collect()
}

pub fn emit_description(
    dataset: &DatasetRef,
    report: &StatsReport,
    spec: &NormalisationSpec,
    vocab: &Vocabulary,
) -> String {
    emit_statistics(dataset, &report_statistics(report), spec, vocab)
}

fn locator_term(locator: &str) -> String {
    if is_absolute_iri(locator) {
        if let Ok(t) = Term::iri(locator) {
            return t.to_string();
        }
    }
    Term::plain_literal(locator).to_string()
}

/// Writes a description holding exactly `items`, sorted by dimension IRI.
pub fn emit_statistics(
    dataset: &DatasetRef,
    items: &[(Dimension, StatValue)],
    spec: &NormalisationSpec,
    vocab: &Vocabulary,
) -> String {
    let mut out = String::new();
    let prefixes = [
        ("gn", vocab.base()),
        ("rdf", RDF),
        ("scovo", SCOVO),
        ("void", VOID),
    ];
    for (prefix, ns) in prefixes {
        let _ = writeln!(out, "@prefix {prefix}: <{ns}> .");
    }
    out.push('\n');

    let dataset_term = Term::iri(&dataset.iri)
        .map(|t| t.to_string())
        .unwrap_or_else(|_| format!("<{}>", dataset.iri));
    let _ = write!(
        out,
        "{dataset_term} a void:Dataset ;\n    void:dataDump {}",
        locator_term(&dataset.data_dump)
    );
    if let Some(ns) = &dataset.namespaces {
        for space in ns.namespaces() {
            let _ = write!(out, " ;\n    void:uriSpace {}", Term::plain_literal(space));
        }
    }

    let mut sorted: Vec<&(Dimension, StatValue)> = items.iter().collect();
    sorted.sort_by_key(|(d, _)| d.iri(vocab));
    sorted.dedup_by_key(|(d, _)| *d);
    for (dimension, value) in sorted {
        let _ = write!(
            out,
            " ;\n    void:statItem [\n        scovo:dimension <{}> ;\n        rdf:value {} ;\n        gn:normalisation [\n            a gn:{}",
            dimension.iri(vocab),
            value.lexical(),
            spec.kind.class_name()
        );
        if spec.kind != NormalisationKind::None {
            out.push_str(" ;\n            gn:rules [\n                a gn:RuleSet");
            for format in RuleFormat::ALL {
                let locators: Vec<String> = spec
                    .rule_sources
                    .iter()
                    .filter(|s| s.format == format)
                    .map(|s| locator_term(&s.locator))
                    .collect();
                if !locators.is_empty() {
                    let _ = write!(
                        out,
                        " ;\n                gn:{} {}",
                        format.property(),
                        locators.join(" , ")
                    );
                }
            }
            out.push_str("\n            ]");
        }
        if spec.kind == NormalisationKind::MiniRdf {
            out.push_str(" ;\n            gn:constraints [ a gn:ConstraintSet ]");
        }
        out.push_str("\n        ]\n    ]");
    }
    out.push_str(" .\n");
    out
}

struct DescriptionGraph<'a> {
    graph: Graph,
    vocab: &'a Vocabulary,
}

impl DescriptionGraph<'_> {
    fn objects(&self, subject: &Term, predicate: &str) -> Vec<&Term> {
        self.graph
            .iter()
            .filter(|t| t.subject() == subject && t.predicate().as_iri() == Some(predicate))
            .map(|t| t.object())
            .collect()
    }

    fn single(&self, subject: &Term, predicate: &str, what: &str) -> Result<&Term> {
        match self.objects(subject, predicate).as_slice() {
            [one] => Ok(one),
            [] => Err(Error::Description(format!("{what} is missing"))),
            _ => Err(Error::Description(format!(
                "{what} is given more than once"
            ))),
        }
    }

    fn locator(term: &Term) -> Result<String> {
        match term {
            Term::Iri(iri) => Ok(iri.to_string()),
            Term::Literal(lit) => Ok(lit.lexical().to_string()),
            other => Err(Error::Description(format!("{other} is not a locator"))),
        }
    }

    fn normalisation(&self, node: &Term) -> Result<NormalisationSpec> {
        let kinds: Vec<NormalisationKind> = self
            .objects(node, RDF_TYPE)
            .into_iter()
            .filter_map(|c| c.as_iri())
            .filter_map(|iri| {
                [
                    NormalisationKind::None,
                    NormalisationKind::Closure,
                    NormalisationKind::MiniRdf,
                ]
                .into_iter()
                .find(|k| self.vocab.term(k.class_name()) == iri)
            })
            .collect();
        let kind = match kinds.as_slice() {
            [k] => *k,
            [] => return Err(Error::Description("normalisation has no known type".into())),
            _ => return Err(Error::Description("normalisation has several types".into())),
        };
        let mut sources = Vec::new();
        for rules_node in self.objects(node, &self.vocab.term("rules")) {
            for format in RuleFormat::ALL {
                for loc in self.objects(rules_node, &self.vocab.term(format.property())) {
                    sources.push(RuleSource::new(format, Self::locator(loc)?));
                }
            }
        }
        NormalisationSpec::new(kind, sources)
    }
}

pub fn parse_description(text: &str, vocab: &Vocabulary) -> Result<Description> {
    let doc = DescriptionGraph {
        graph: parse_turtle_extended(text)?,
        vocab,
    };
    let void_dataset = format!("{VOID}Dataset");
    let datasets: BTreeSet<&Term> = doc
        .graph
        .iter()
        .filter(|t| {
            t.predicate().as_iri() == Some(RDF_TYPE) && t.object().as_iri() == Some(&void_dataset)
        })
        .map(|t| t.subject())
        .collect();
    let dataset_node = match datasets.into_iter().collect::<Vec<_>>().as_slice() {
        [one] => (*one).clone(),
        [] => return Err(Error::Description("no void:Dataset".into())),
        _ => return Err(Error::Description("more than one void:Dataset".into())),
    };
    let dataset_iri = dataset_node
        .as_iri()
        .ok_or_else(|| Error::Description("the dataset must be named by an IRI".into()))?
        .to_string();

    let data_dump = DescriptionGraph::locator(doc.single(
        &dataset_node,
        &format!("{VOID}dataDump"),
        "void:dataDump",
    )?)?;
    let spaces: Vec<String> = doc
        .objects(&dataset_node, &format!("{VOID}uriSpace"))
        .into_iter()
        .map(DescriptionGraph::locator)
        .collect::<Result<_>>()?;
    let namespaces = if spaces.is_empty() {
        None
    } else {
        Some(NamespaceDecl::new(spaces)?)
    };

    let mut items = Vec::new();
    let mut normalisation: Option<NormalisationSpec> = None;
    for item in doc.objects(&dataset_node, &format!("{VOID}statItem")) {
        let dim_term = doc.single(item, &format!("{SCOVO}dimension"), "scovo:dimension")?;
        let dimension = dim_term
            .as_iri()
            .and_then(|iri| Dimension::from_iri(iri, vocab))
            .ok_or_else(|| Error::Description(format!("unknown dimension {dim_term}")))?;
        let lexical = match doc.single(item, RDF_VALUE, "rdf:value")? {
            Term::Literal(lit) => lit.lexical().to_string(),
            other => {
                return Err(Error::Description(format!(
                    "{other} is not a literal value"
                )))
            }
        };
        let value = if dimension.is_count() {
            StatValue::Count(
                lexical
                    .parse()
                    .map_err(|_| Error::Description(format!("{lexical} is not a count")))?,
            )
        } else {
            StatValue::Ratio(
                parse_decimal(&lexical)
                    .ok_or_else(|| Error::Description(format!("{lexical} is not a decimal")))?,
            )
        };
        let spec = doc.normalisation(doc.single(
            item,
            &vocab.term("normalisation"),
            "gn:normalisation",
        )?)?;
        match &normalisation {
            Some(existing) if *existing != spec => {
                return Err(Error::Description(
                    "statistics disagree on their normalisation".into(),
                ))
            }
            _ => normalisation = Some(spec.clone()),
        }
        items.push(StatDescription {
            dataset: dataset_iri.clone(),
            dimension,
            value,
            lexical,
            normalisation: spec,
        });
    }
    items.sort_by_key(|i| i.dimension.iri(vocab));

    Ok(Description {
        dataset: DatasetRef {
            iri: dataset_iri,
            data_dump,
            namespaces,
        },
        normalisation: normalisation.unwrap_or_else(NormalisationSpec::none),
        items,
    })
}

/// Supplies the content behind a locator.
pub trait Resolver {
    fn resolve(&self, locator: &str) -> Result<String>;
}

impl<F> Resolver for F
where
    F: Fn(&str) -> Option<String>,
{
    fn resolve(&self, locator: &str) -> Result<String> {
        self(locator).ok_or_else(|| Error::Unresolvable {
            locator: locator.to_string(),
            reason: "not found".into(),
        })
    }
}

/// Reads local files. Relative paths resolve against `base_dir`;
/// `file://` IRIs are accepted, other schemes are not.
#[derive(Clone, Debug)]
pub struct FileResolver {
    base_dir: PathBuf,
}

impl FileResolver {
    pub fn new(base_dir: impl Into<PathBuf>) -> Self {
        FileResolver {
            base_dir: base_dir.into(),
        }
    }

    fn path_for(&self, locator: &str) -> Result<PathBuf> {
        if let Some(path) = locator.strip_prefix("file://") {
            return Ok(PathBuf::from(path));
        }
        if is_absolute_iri(locator) && !Path::new(locator).exists() {
            return Err(Error::Unresolvable {
                locator: locator.to_string(),
                reason: "only local files can be fetched".into(),
            });
        }
        Ok(self.base_dir.join(locator))
    }
}

impl Resolver for FileResolver {
    fn resolve(&self, locator: &str) -> Result<String> {
        let path = self.path_for(locator)?;
        std::fs::read_to_string(&path).map_err(|e| Error::Unresolvable {
            locator: locator.to_string(),
            reason: e.to_string(),
        })
    }
}

/// Loads each description-logic graph and everything it transitively
/// `owl:imports`, each exactly once.
pub fn load_dlogic(locators: &[String], resolver: &dyn Resolver) -> Result<Graph> {
    let imports = format!("{OWL}imports");
    let mut seen: HashSet<String> = HashSet::new();
    let mut queue: VecDeque<String> = locators.iter().cloned().collect();
    let mut out = Graph::new();
    while let Some(locator) = queue.pop_front() {
        if !seen.insert(locator.clone()) {
            continue;
        }
        let graph = parse_turtle(&resolver.resolve(&locator)?)
            .map_err(|e| Error::from(e).in_input(&locator))?;
        for t in &graph {
            if t.predicate().as_iri() == Some(imports.as_str()) {
                if let Some(target) = t.object().as_iri() {
                    queue.push_back(target.to_string());
                }
            }
        }
        out.extend(graph);
    }
    Ok(out)
}

/// Gathers the ruleset and auxiliary graph a normalisation spec names.
pub fn load_regime(spec: &NormalisationSpec, resolver: &dyn Resolver) -> Result<(RuleSet, Graph)> {
    if let Some(rif) = spec
        .rule_sources
        .iter()
        .find(|s| s.format == RuleFormat::Rif)
    {
        return Err(Error::UnsupportedRif(rif.locator.clone()));
    }
    let mut rules = RuleSet::empty();
    for source in spec
        .rule_sources
        .iter()
        .filter(|s| s.format == RuleFormat::N3)
    {
        let parsed = parse_rules(&resolver.resolve(&source.locator)?)
            .map_err(|e| e.in_input(&source.locator))?;
        rules = rules.union(&parsed);
    }
    let dlogic: Vec<String> = spec
        .rule_sources
        .iter()
        .filter(|s| s.format == RuleFormat::DLogic)
        .map(|s| s.locator.clone())
        .collect();
    let aux = load_dlogic(&dlogic, resolver)?;
    Ok((rules.union(&compile_schema(&aux)), aux))
}

pub fn recompute_description(
    description: &Description,
    resolver: &dyn Resolver,
) -> Result<StatsReport> {
    let (rules, aux) = load_regime(&description.normalisation, resolver)?;
    let dump = &description.dataset.data_dump;
    let data = parse_turtle(&resolver.resolve(dump)?).map_err(|e| Error::from(e).in_input(dump))?;
    compute_stats(&data, &rules, &aux, description.dataset.namespaces.as_ref())
}

/// Recomputes every statistic a description is about. Stated values are
/// not compared here; see [`verify`].
pub fn recompute(text: &str, resolver: &dyn Resolver, vocab: &Vocabulary) -> Result<StatsReport> {
    recompute_description(&parse_description(text, vocab)?, resolver)
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ItemCheck {
    pub dimension: Dimension,
    pub stated: String,
    pub recomputed: String,
    pub matches: bool,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Verification {
    pub report: StatsReport,
    pub checks: Vec<ItemCheck>,
}

impl Verification {
    pub fn is_success(&self) -> bool {
        self.checks.iter().all(|c| c.matches)
    }
}

/// Recomputes a description and compares each stated value.
///
/// Counts must match exactly. A ratio matches when it equals the
/// recomputed rational exactly, or when it is the recomputed rational's
/// six-place rendering, which is what [`emit_description`] writes.
pub fn verify(text: &str, resolver: &dyn Resolver, vocab: &Vocabulary) -> Result<Verification> {
    let description = parse_description(text, vocab)?;
    let report = recompute_description(&description, resolver)?;
    let mut checks = Vec::new();
    for item in &description.items {
        let recomputed = item.dimension.value_in(&report).ok_or_else(|| {
            Error::Description(format!(
                "{} needs void:uriSpace to be recomputed",
                item.dimension.iri(vocab)
            ))
        })?;
        let matches = match (item.value, recomputed) {
            (StatValue::Count(a), StatValue::Count(b)) => a == b,
            (StatValue::Ratio(a), StatValue::Ratio(b)) => {
                a == b || item.lexical == format_decimal(b)
            }
            _ => false,
        };
        checks.push(ItemCheck {
            dimension: item.dimension,
            stated: item.lexical.clone(),
            recomputed: recomputed.lexical(),
            matches,
        });
    }
    Ok(Verification { report, checks })
}

#[cfg(test)]
mod tests {
    use super::*;
    use num_rational::Ratio;
    use std::collections::HashMap;

    const DATA: &str = "@prefix foaf: <http://xmlns.com/foaf/0.1/> . @prefix ex: <http://ex.org/> .
        ex:bob a foaf:Person . ex:bob foaf:knows ex:alice .
        ex:alice a foaf:Person . ex:alice foaf:knows ex:bob .";
    const SCHEMA: &str = "@prefix foaf: <http://xmlns.com/foaf/0.1/> .
        foaf:knows rdfs:domain foaf:Person . foaf:knows rdfs:range foaf:Person .";
    const RULES: &str = "{?s ?p ?o. ?p rdfs:domain ?A} => {?s a ?A}.
        {?s ?p ?o. ?p rdfs:range ?B} => {?o a ?B}.";

    fn files(extra: &[(&str, &str)]) -> impl Fn(&str) -> Option<String> {
        let map: HashMap<String, String> = [
            ("data.ttl", DATA),
            ("schema.ttl", SCHEMA),
            ("rules.n3", RULES),
        ]
        .into_iter()
        .chain(extra.iter().copied())
        .map(|(k, v)| (k.to_string(), v.to_string()))
        .collect();
        move |loc: &str| map.get(loc).cloned()
    }

    fn dataset() -> DatasetRef {
        DatasetRef {
            iri: "http://ex.org/dataset".into(),
            data_dump: "data.ttl".into(),
            namespaces: None,
        }
    }

    fn mini_rdf() -> NormalisationSpec {
        NormalisationSpec::new(
            NormalisationKind::MiniRdf,
            vec![
                RuleSource::new(RuleFormat::N3, "rules.n3"),
                RuleSource::new(RuleFormat::DLogic, "schema.ttl"),
            ],
        )
        .unwrap()
    }

    fn fixture_report() -> StatsReport {
        StatsReport {
            published_cardinality: 4,
            closure_cardinality: 4,
            minimal_cardinality: 2,
            redundancy: Ratio::new(1, 2),
            out_link_density_plus: None,
            out_link_density_minus: None,
            fallback_used: false,
        }
    }

    #[test]
    fn emitted_shape_follows_the_statitem_structure() {
        let vocab = Vocabulary::default();
        let text = emit_statistics(
            &dataset(),
            &[(Dimension::Redundancy, StatValue::Ratio(Ratio::new(1, 2)))],
            &mini_rdf(),
            &vocab,
        );
        let g = parse_turtle_extended(&text).unwrap();
        let has = |p: &str, o: &Term| {
            g.iter()
                .any(|t| t.predicate().as_iri() == Some(p) && t.object() == o)
        };
        let iri = |s: String| Term::iri(s).unwrap();
        assert!(has(RDF_TYPE, &iri(format!("{VOID}Dataset"))));
        assert!(has(
            &format!("{SCOVO}dimension"),
            &iri(vocab.term("redundancy"))
        ));
        assert!(has(
            RDF_VALUE,
            &Term::typed_literal("0.5", crate::rdf::term::XSD_DECIMAL)
        ));
        assert!(has(RDF_TYPE, &iri(vocab.term("MiniRDF"))));
        assert!(has(RDF_TYPE, &iri(vocab.term("RuleSet"))));
        assert!(has(&vocab.term("n3"), &Term::plain_literal("rules.n3")));
        assert!(has(
            &vocab.term("dlogic"),
            &Term::plain_literal("schema.ttl")
        ));
        assert!(has(RDF_TYPE, &iri(vocab.term("ConstraintSet"))));

        let parsed = parse_description(&text, &vocab).unwrap();
        assert_eq!(parsed.items.len(), 1);
        assert_eq!(parsed.items[0].value, StatValue::Ratio(Ratio::new(1, 2)));
        assert_eq!(parsed.normalisation, mini_rdf());
    }

    #[test]
    fn triples_only_description_has_no_rules() {
        let vocab = Vocabulary::default();
        let text = emit_statistics(
            &dataset(),
            &[(Dimension::VoidTriples, StatValue::Count(4))],
            &NormalisationSpec::none(),
            &vocab,
        );
        assert!(!text.contains("gn:rules"));
        assert_eq!(text.matches("void:statItem").count(), 1);
        assert!(text.contains(&format!("<{VOID}triples>")));
        let parsed = parse_description(&text, &vocab).unwrap();
        assert_eq!(parsed.items[0].dimension, Dimension::VoidTriples);
        assert_eq!(parsed.normalisation.kind(), NormalisationKind::None);
    }

    #[test]
    fn report_without_densities_emits_four_items() {
        let text = emit_description(
            &dataset(),
            &fixture_report(),
            &NormalisationSpec::none(),
            &Vocabulary::default(),
        );
        assert_eq!(text.matches("void:statItem").count(), 4);
    }

    #[test]
    fn emission_is_deterministic() {
        let vocab = Vocabulary::default();
        let a = emit_description(&dataset(), &fixture_report(), &mini_rdf(), &vocab);
        let b = emit_description(&dataset(), &fixture_report(), &mini_rdf(), &vocab);
        assert_eq!(a, b);
    }

    #[test]
    fn recompute_fixture() {
        let vocab = Vocabulary::default();
        let text = emit_description(&dataset(), &fixture_report(), &mini_rdf(), &vocab);
        let report = recompute(&text, &files(&[]), &vocab).unwrap();
        assert_eq!(report, fixture_report());
        assert!(verify(&text, &files(&[]), &vocab).unwrap().is_success());
    }

    #[test]
    fn dlogic_alone_reproduces_the_fixture() {
        let vocab = Vocabulary::default();
        let spec = NormalisationSpec::new(
            NormalisationKind::MiniRdf,
            vec![RuleSource::new(RuleFormat::DLogic, "schema.ttl")],
        )
        .unwrap();
        let text = emit_description(&dataset(), &fixture_report(), &spec, &vocab);
        let report = recompute(&text, &files(&[]), &vocab).unwrap();
        assert_eq!(report.redundancy, Ratio::new(1, 2));
    }

    #[test]
    fn unnormalised_recompute() {
        let vocab = Vocabulary::default();
        let text = emit_statistics(
            &dataset(),
            &[(Dimension::VoidTriples, StatValue::Count(4))],
            &NormalisationSpec::none(),
            &vocab,
        );
        let report = recompute(&text, &files(&[]), &vocab).unwrap();
        assert_eq!(report.redundancy, Ratio::from_integer(0));
        assert_eq!(report.published_cardinality, 4);
    }

    #[test]
    fn mismatch_is_reported_not_raised() {
        let vocab = Vocabulary::default();
        let mut wrong = fixture_report();
        wrong.redundancy = Ratio::new(3, 10);
        let text = emit_description(&dataset(), &wrong, &mini_rdf(), &vocab);
        let report = recompute(&text, &files(&[]), &vocab).unwrap();
        assert_eq!(report.redundancy, Ratio::new(1, 2));
        let verification = verify(&text, &files(&[]), &vocab).unwrap();
        assert!(!verification.is_success());
        let bad: Vec<_> = verification.checks.iter().filter(|c| !c.matches).collect();
        assert_eq!(bad.len(), 1);
        assert_eq!(bad[0].dimension, Dimension::Redundancy);
    }

    #[test]
    fn rounded_ratios_verify() {
        let vocab = Vocabulary::default();
        let text = emit_statistics(
            &dataset(),
            &[(Dimension::Redundancy, StatValue::Ratio(Ratio::new(1, 2)))],
            &mini_rdf(),
            &vocab,
        )
        .replace("rdf:value 0.5", "rdf:value 0.500000");
        assert!(verify(&text, &files(&[]), &vocab).unwrap().is_success());
    }

    #[test]
    fn rif_is_unsupported() {
        let vocab = Vocabulary::default();
        let spec = NormalisationSpec::new(
            NormalisationKind::MiniRdf,
            vec![RuleSource::new(RuleFormat::Rif, "rules.rif")],
        )
        .unwrap();
        assert!(spec.has_unsupported_sources());
        let text = emit_description(&dataset(), &fixture_report(), &spec, &vocab);
        assert!(matches!(
            recompute(&text, &files(&[]), &vocab),
            Err(Error::UnsupportedRif(_))
        ));
    }

    #[test]
    fn missing_file_is_unresolvable() {
        let vocab = Vocabulary::default();
        let mut ds = dataset();
        ds.data_dump = "nope.ttl".into();
        let text = emit_description(&ds, &fixture_report(), &mini_rdf(), &vocab);
        assert!(matches!(
            recompute(&text, &files(&[]), &vocab),
            Err(Error::Unresolvable { .. })
        ));
    }

    #[test]
    fn cyclic_imports_load_once() {
        let a = "<file:///a> owl:imports <file:///b> . <http://e/p> rdfs:domain <http://e/C> .";
        let b = "<file:///b> owl:imports <file:///a> . <http://e/p> rdfs:range <http://e/C> .";
        let calls = std::cell::RefCell::new(Vec::new());
        let resolver = |loc: &str| {
            calls.borrow_mut().push(loc.to_string());
            match loc {
                "file:///a" => Some(a.to_string()),
                "file:///b" => Some(b.to_string()),
                _ => None,
            }
        };
        let g = load_dlogic(&["file:///a".to_string()], &resolver).unwrap();
        assert_eq!(g.len(), 4);
        assert_eq!(
            *calls.borrow(),
            vec!["file:///a".to_string(), "file:///b".to_string()]
        );
    }

    #[test]
    fn spec_none_cannot_carry_rules() {
        assert!(NormalisationSpec::new(
            NormalisationKind::None,
            vec![RuleSource::new(RuleFormat::N3, "x.n3")]
        )
        .is_err());
    }

    #[test]
    fn custom_vocabulary_base() {
        let vocab = Vocabulary::new("http://example.org/gn/").unwrap();
        let text = emit_description(&dataset(), &fixture_report(), &mini_rdf(), &vocab);
        assert!(text.contains("@prefix gn: <http://example.org/gn/> ."));
        assert!(parse_description(&text, &Vocabulary::default()).is_err());
        assert_eq!(parse_description(&text, &vocab).unwrap().items.len(), 4);
    }
}
