//! Command-line front end for lmkit: algebra files, corpus generation,
//! Graphviz output and the theorem-regression harness.

pub mod checks;
pub mod corpus;
pub mod dot;
pub mod spec;

pub use checks::{run_suite, CheckReport, Suite, REGISTRY};
pub use corpus::{default_corpus, CorpusEntry};
pub use spec::{load, parse_spec, AlgebraSpec, SpecError};
