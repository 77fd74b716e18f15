//! Forward-chaining materialization under the `owl:sameAs` and
//! `rdfs:subClassOf` rule sets.

mod engine;
mod rules;

pub use engine::{ontology_axioms, saturate, saturate_with, ResourceLimit, SaturationConfig, SaturationStats};
pub use rules::{builtin_ruleset, load_rules, Rule, RuleError, RuleSet, RuleSetName};

#[cfg(test)]
mod tests;
