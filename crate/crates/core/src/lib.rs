//! Provenance-qualified statistics over RDF graphs.
//!
//! A graph's size depends on how much derivable information it carries.
//! This crate computes the size of a graph as published, of its closure
//! under a ruleset, and of a reduction with entailed triples removed,
//! together with the redundancy and out-link density derived from them.
//! It also writes and re-checks dataset descriptions that record which
//! rules each statistic was computed under.

pub mod cli;
pub mod error;
pub mod inference;
pub mod provenance;
pub mod rdf;
pub mod rules;
pub mod stats;

pub use error::{Error, Result, SyntaxError};
