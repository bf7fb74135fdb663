use std::collections::BTreeSet;
use std::fmt;

use crate::error::{Error, Result};
use crate::rdf::{Term, Triple};

/// A triple whose positions may hold variables.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct TriplePattern {
    pub subject: Term,
    pub predicate: Term,
    pub object: Term,
}

impl TriplePattern {
    pub fn new(subject: Term, predicate: Term, object: Term) -> Result<TriplePattern> {
        if subject.is_literal() {
            return Err(Error::InvalidTriple(format!(
                "literal {subject} in subject position"
            )));
        }
        if !(predicate.is_iri() || predicate.is_variable()) {
            return Err(Error::InvalidTriple(format!(
                "predicate {predicate} must be an IRI or variable"
            )));
        }
        Ok(TriplePattern {
            subject,
            predicate,
            object,
        })
    }

    pub fn terms(&self) -> [&Term; 3] {
        [&self.subject, &self.predicate, &self.object]
    }

    pub fn variables(&self) -> impl Iterator<Item = &str> {
        self.terms().into_iter().filter_map(|t| match t {
            Term::Variable(name) => Some(&**name),
            _ => None,
        })
    }

    pub fn is_ground(&self) -> bool {
        self.variables().next().is_none()
    }

    /// The ground triple this pattern denotes, if it has no variables.
    pub fn to_triple(&self) -> Option<Triple> {
        Triple::new(
            self.subject.clone(),
            self.predicate.clone(),
            self.object.clone(),
        )
        .ok()
    }
}

impl From<&Triple> for TriplePattern {
    fn from(t: &Triple) -> Self {
        TriplePattern {
            subject: t.subject().clone(),
            predicate: t.predicate().clone(),
            object: t.object().clone(),
        }
    }
}

impl fmt::Display for TriplePattern {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{} {} {}", self.subject, self.predicate, self.object)
    }
}

/// A Horn rule `{ body } => { head }`.
#[derive(Clone, Debug)]
pub struct Rule {
    label: String,
    body: Vec<TriplePattern>,
    head: Vec<TriplePattern>,
}

impl Rule {
    /// Builds a rule and rejects it unless it is safe.
    pub fn new(
        label: impl Into<String>,
        body: Vec<TriplePattern>,
        head: Vec<TriplePattern>,
    ) -> Result<Rule> {
        let rule = Rule::unchecked(label, body, head);
        rule.validate()?;
        Ok(rule)
    }

    /// Builds a rule without the safety check; see [`check_safe`].
    pub fn unchecked(
        label: impl Into<String>,
        body: Vec<TriplePattern>,
        head: Vec<TriplePattern>,
    ) -> Rule {
        Rule {
            label: label.into(),
            body,
            head,
        }
    }

    pub fn label(&self) -> &str {
        &self.label
    }

    pub fn body(&self) -> &[TriplePattern] {
        &self.body
    }

    pub fn head(&self) -> &[TriplePattern] {
        &self.head
    }

    pub fn with_label(mut self, label: impl Into<String>) -> Rule {
        self.label = label.into();
        self
    }

    fn validate(&self) -> Result<()> {
        if self.body.is_empty() || self.head.is_empty() {
            return Err(Error::InvalidTriple(format!(
                "rule {} needs a non-empty body and head",
                self.label
            )));
        }
        let report = check_safe(self);
        if let Some(label) = report.blank_labels().next() {
            return Err(Error::BlankInHead {
                rule: self.label.clone(),
                label: label.to_string(),
            });
        }
        let unbound: Vec<String> = report.unbound_variables().map(str::to_string).collect();
        if !unbound.is_empty() {
            return Err(Error::UnsafeRule {
                rule: self.label.clone(),
                variables: unbound,
            });
        }
        Ok(())
    }
}

// Labels are diagnostic only; two rules are the same rule when their
// patterns agree.
impl PartialEq for Rule {
    fn eq(&self, other: &Self) -> bool {
        self.body == other.body && self.head == other.head
    }
}

impl Eq for Rule {}

impl fmt::Display for Rule {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let block = |f: &mut fmt::Formatter<'_>, patterns: &[TriplePattern]| {
            f.write_str("{ ")?;
            for p in patterns {
                write!(f, "{p} . ")?;
            }
            f.write_str("}")
        };
        block(f, &self.body)?;
        f.write_str(" => ")?;
        block(f, &self.head)?;
        f.write_str(" .")
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum SafetyViolation {
    UnboundHeadVariable(String),
    BlankInHead(String),
}

/// Outcome of [`check_safe`]; empty when the rule is safe.
#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct SafetyReport {
    pub violations: Vec<SafetyViolation>,
}

impl SafetyReport {
    pub fn is_safe(&self) -> bool {
        self.violations.is_empty()
    }

    pub fn unbound_variables(&self) -> impl Iterator<Item = &str> {
        self.violations.iter().filter_map(|v| match v {
            SafetyViolation::UnboundHeadVariable(name) => Some(name.as_str()),
            _ => None,
        })
    }

    pub fn blank_labels(&self) -> impl Iterator<Item = &str> {
        self.violations.iter().filter_map(|v| match v {
            SafetyViolation::BlankInHead(label) => Some(label.as_str()),
            _ => None,
        })
    }
}

/// Accepts iff every head variable occurs in the body and the head has no
/// blank nodes. Each offending variable or label is listed once.
pub fn check_safe(rule: &Rule) -> SafetyReport {
    let bound: BTreeSet<&str> = rule.body.iter().flat_map(|p| p.variables()).collect();
    let mut seen = BTreeSet::new();
    let mut violations = Vec::new();
    for term in rule.head.iter().flat_map(|p| p.terms()) {
        match term {
            Term::Variable(name) if !bound.contains(&**name) && seen.insert(term.clone()) => {
                violations.push(SafetyViolation::UnboundHeadVariable(name.to_string()))
            }
            Term::Blank(label) if seen.insert(term.clone()) => {
                violations.push(SafetyViolation::BlankInHead(label.to_string()))
            }
            _ => {}
        }
    }
    SafetyReport { violations }
}

/// A set of safe rules. Insertion order is kept; structural duplicates are
/// dropped.
#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct RuleSet {
    rules: Vec<Rule>,
}

impl RuleSet {
    pub fn new(rules: impl IntoIterator<Item = Rule>) -> Result<RuleSet> {
        let mut set = RuleSet::default();
        for rule in rules {
            set.insert(rule)?;
        }
        Ok(set)
    }

    pub fn empty() -> RuleSet {
        RuleSet::default()
    }

    /// Returns false if an identical rule was already present.
    pub fn insert(&mut self, rule: Rule) -> Result<bool> {
        rule.validate()?;
        if self.rules.contains(&rule) {
            return Ok(false);
        }
        self.rules.push(rule);
        Ok(true)
    }

    pub fn union(&self, other: &RuleSet) -> RuleSet {
        let mut out = self.clone();
        for rule in &other.rules {
            if !out.rules.contains(rule) {
                out.rules.push(rule.clone());
            }
        }
        out
    }

    pub fn len(&self) -> usize {
        self.rules.len()
    }

    pub fn is_empty(&self) -> bool {
        self.rules.is_empty()
    }

    pub fn iter(&self) -> std::slice::Iter<'_, Rule> {
        self.rules.iter()
    }
}

impl<'a> IntoIterator for &'a RuleSet {
    type Item = &'a Rule;
    type IntoIter = std::slice::Iter<'a, Rule>;

    fn into_iter(self) -> Self::IntoIter {
        self.rules.iter()
    }
}

impl fmt::Display for RuleSet {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for rule in &self.rules {
            writeln!(f, "{rule}")?;
        }
        Ok(())
    }
}
