//! Forward closure, goal-directed proof, and graph reduction.

mod backchain;
mod binding;
mod closure;
mod index;
mod reduce;

pub use backchain::backchain;
pub use binding::Binding;
pub use closure::{closure, ClosureResult};
pub use reduce::{incremental_reduce, reduce, IncrementalOutcome};
