//! The four fundamental statistics of a graph under a ruleset, plus
//! out-link density.
//!
//! Every statistic is measured against the same ruleset and the same
//! auxiliary (schema) graph. The auxiliary graph feeds inference but is not
//! part of the dataset, so it is never counted: the closure statistic counts
//! the closure of `data ∪ aux` with the purely auxiliary triples taken out.

use num_rational::Ratio;

use crate::error::{Error, Result};
use crate::inference::{closure, reduce};
use crate::rdf::{is_absolute_iri, Graph, Term};
use crate::rules::RuleSet;

pub type Rational = Ratio<u64>;

/// IRI prefixes owned by a dataset.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct NamespaceDecl {
    namespaces: Vec<String>,
}

impl NamespaceDecl {
    /// Rejects an empty list, relative IRIs, and any prefix nested in
    /// another (including duplicates).
    pub fn new<S: Into<String>>(namespaces: impl IntoIterator<Item = S>) -> Result<Self> {
        let mut namespaces: Vec<String> = namespaces.into_iter().map(Into::into).collect();
        if namespaces.is_empty() {
            return Err(Error::Namespace(
                "at least one namespace is required".into(),
            ));
        }
        if let Some(bad) = namespaces.iter().find(|ns| !is_absolute_iri(ns)) {
            return Err(Error::Namespace(format!("<{bad}> is not an absolute IRI")));
        }
        namespaces.sort();
        for pair in namespaces.windows(2) {
            // after sorting, a nested prefix sits directly before an extension of it
            if pair[1].starts_with(&pair[0]) {
                return Err(Error::Namespace(format!(
                    "<{}> is nested in <{}>",
                    pair[1], pair[0]
                )));
            }
        }
        Ok(NamespaceDecl { namespaces })
    }

    pub fn namespaces(&self) -> &[String] {
        &self.namespaces
    }

    pub fn owns(&self, iri: &str) -> bool {
        self.namespaces
            .iter()
            .any(|ns| iri.starts_with(ns.as_str()))
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum DensityMode {
    /// Measured on the closure.
    Plus,
    /// Measured on the reduced graph.
    Minus,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct StatsReport {
    pub published_cardinality: u64,
    pub closure_cardinality: u64,
    pub minimal_cardinality: u64,
    pub redundancy: Rational,
    pub out_link_density_plus: Option<Rational>,
    pub out_link_density_minus: Option<Rational>,
    pub fallback_used: bool,
}

/// The closure of `data ∪ aux`, minus triples that come only from `aux`.
pub fn data_closure(data: &Graph, rules: &RuleSet, aux: &Graph) -> Graph {
    let aux_only = aux.difference(data);
    closure(&data.union(aux), rules).graph.difference(&aux_only)
}

fn ratio(numerator: usize, denominator: usize) -> Rational {
    Ratio::new(numerator as u64, denominator as u64)
}

/// `1 - |reduce(g)| / |g|`.
pub fn redundancy(graph: &Graph, rules: &RuleSet, aux: &Graph) -> Result<Rational> {
    if graph.is_empty() {
        return Err(Error::EmptyGraph("redundancy"));
    }
    let minimal = reduce(graph, rules, aux);
    Ok(Ratio::from_integer(1) - ratio(minimal.len(), graph.len()))
}

/// Triples whose subject is an IRI in the dataset's namespaces and whose
/// object is an IRI outside all of them.
pub fn out_links(graph: &Graph, ns: &NamespaceDecl) -> Graph {
    graph
        .iter()
        .filter(|t| matches!(t.subject(), Term::Iri(s) if ns.owns(s)))
        .filter(|t| matches!(t.object(), Term::Iri(o) if !ns.owns(o)))
        .cloned()
        .collect()
}

fn density_of(normalized: &Graph, ns: &NamespaceDecl) -> Result<Rational> {
    if normalized.is_empty() {
        return Err(Error::EmptyGraph("out-link density"));
    }
    Ok(ratio(out_links(normalized, ns).len(), normalized.len()))
}

pub fn out_link_density(
    graph: &Graph,
    rules: &RuleSet,
    aux: &Graph,
    ns: &NamespaceDecl,
    mode: DensityMode,
) -> Result<Rational> {
    let normalized = match mode {
        DensityMode::Plus => data_closure(graph, rules, aux),
        DensityMode::Minus => reduce(graph, rules, aux),
    };
    density_of(&normalized, ns)
}

pub fn compute_stats(
    graph: &Graph,
    rules: &RuleSet,
    aux: &Graph,
    ns: Option<&NamespaceDecl>,
) -> Result<StatsReport> {
    if graph.is_empty() {
        return Err(Error::EmptyGraph("redundancy"));
    }
    let closed = data_closure(graph, rules, aux);
    let minimal = reduce(graph, rules, aux);
    let (plus, minus) = match ns {
        Some(ns) => (
            Some(density_of(&closed, ns)?),
            Some(density_of(&minimal, ns)?),
        ),
        None => (None, None),
    };
    Ok(StatsReport {
        published_cardinality: graph.len() as u64,
        closure_cardinality: closed.len() as u64,
        minimal_cardinality: minimal.len() as u64,
        redundancy: Ratio::from_integer(1) - ratio(minimal.len(), graph.len()),
        out_link_density_plus: plus,
        out_link_density_minus: minus,
        fallback_used: false,
    })
}

const DECIMAL_PLACES: u32 = 6;

/// Decimal rendering with at most six fractional digits, rounding half to
/// even. Trailing zeros are dropped but one fractional digit always
/// remains, so the output is a valid decimal literal.
pub fn format_decimal(value: Rational) -> String {
    let scale = 10u128.pow(DECIMAL_PLACES);
    let (numer, denom) = (*value.numer() as u128, *value.denom() as u128);
    let scaled = numer * scale;
    let (mut units, remainder) = (scaled / denom, scaled % denom);
    match (2 * remainder).cmp(&denom) {
        std::cmp::Ordering::Greater => units += 1,
        std::cmp::Ordering::Equal if units % 2 == 1 => units += 1,
        _ => {}
    }
    let whole = units / scale;
    let mut frac = format!("{:0width$}", units % scale, width = DECIMAL_PLACES as usize);
    while frac.len() > 1 && frac.ends_with('0') {
        frac.pop();
    }
    format!("{whole}.{frac}")
}

/// Parses a non-negative decimal such as `0.5` or `4` into an exact
/// rational.
pub fn parse_decimal(text: &str) -> Option<Rational> {
    let (whole, frac) = text.split_once('.').unwrap_or((text, ""));
    if whole.is_empty() || !whole.bytes().all(|b| b.is_ascii_digit()) {
        return None;
    }
    if !frac.bytes().all(|b| b.is_ascii_digit()) || frac.len() > 18 {
        return None;
    }
    let denom = 10u64.checked_pow(frac.len() as u32)?;
    let whole: u64 = whole.parse().ok()?;
    let frac: u64 = if frac.is_empty() {
        0
    } else {
        frac.parse().ok()?
    };
    Some(Ratio::new(
        whole.checked_mul(denom)?.checked_add(frac)?,
        denom,
    ))
}
