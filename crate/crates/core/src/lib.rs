//! Lifting of Asset Administration Shell documents into RDF.
//!
//! The pipeline reads an `aasenv` XML document (optionally from an AASX
//! container), maps it onto the Semantic AAS vocabulary, serializes the
//! resulting graph, materializes `owl:sameAs` / `rdfs:subClassOf`
//! inferences and validates the graph against per-class shapes.

pub mod aas;
pub mod fixtures;
pub mod ingest;
pub mod mapper;
pub mod pipeline;
pub mod rdf;
pub mod reasoner;
pub mod serialize;
pub mod shacl;
pub mod vocab;
