//! RDF data model: terms, triples, graphs, diffs and the Turtle subset.

mod graph;
pub(crate) mod syntax;
pub mod term;
mod turtle;

pub use graph::{Diff, Graph, Triple};
pub use term::{is_absolute_iri, Literal, Term};
pub(crate) use turtle::parse_turtle_extended;
pub use turtle::{parse_turtle, serialize_turtle};
