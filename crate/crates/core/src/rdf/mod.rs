//! RDF terms, triples and an in-memory graph with set semantics.

mod graph;
mod iri;
mod pattern;
mod term;

pub use graph::{Graph, PrefixConflict};
pub use iri::{percent_encode_local, validate_iri, InvalidIri};
pub use pattern::{Bindings, PatternTerm, TriplePattern};
pub use term::{escape_literal, BlankNode, BlankNodeGen, Iri, Literal, Term, TermError, Triple};

/// Builds an IRI term, rejecting anything that is not an absolute IRI.
/// No encoding is applied.
pub fn make_iri(value: &str) -> Result<Term, InvalidIri> {
    Term::iri(value)
}
