//! Horn rules over triple patterns: data model, safety, parsing, and
//! compilation of schema triples into rules.

mod parser;
mod rule;
mod schema;

pub use parser::parse_rules;
pub use rule::{check_safe, Rule, RuleSet, SafetyReport, SafetyViolation, TriplePattern};
pub use schema::{compile_schema, compile_schema_report, SchemaCompilation};
