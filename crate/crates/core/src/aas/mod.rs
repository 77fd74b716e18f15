//! Typed model of an AAS environment: shells, assets, submodels and
//! concept descriptions.

mod model;

pub use model::*;

use std::collections::HashMap;

use thiserror::Error;

#[derive(Debug, Clone, Copy, PartialEq)]
pub enum Entity<'a> {
    Shell(&'a AdministrationShell),
    Asset(&'a Asset),
    Submodel(&'a Submodel),
    ConceptDescription(&'a ConceptDescription),
}

impl Entity<'_> {
    pub fn identification(&self) -> &Identifier {
        match self {
            Entity::Shell(s) => &s.identification,
            Entity::Asset(a) => &a.identification,
            Entity::Submodel(s) => &s.identification,
            Entity::ConceptDescription(c) => &c.identification,
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum ResolveError {
    #[error("no {key_type} with identifier {value:?}")]
    NotFound { key_type: String, value: String },
    #[error("{count} entities of type {key_type} share identifier {value:?}")]
    AmbiguousReference {
        key_type: String,
        value: String,
        count: usize,
    },
}

/// Entity counts. Collections count as elements, and so do their children.
#[derive(Debug, Clone, Copy, Default, PartialEq, Eq)]
pub struct Census {
    pub shells: usize,
    pub assets: usize,
    pub submodels: usize,
    pub elements: usize,
    pub concept_descriptions: usize,
}

impl Census {
    pub fn total(&self) -> usize {
        self.shells + self.assets + self.submodels + self.elements + self.concept_descriptions
    }
}

fn count_elements(elements: &[SubmodelElement]) -> usize {
    elements
        .iter()
        .map(|e| {
            1 + match &e.kind {
                ElementKind::Collection { children } => count_elements(children),
                _ => 0,
            }
        })
        .sum()
}

impl AasEnvironment {
    pub fn is_empty(&self) -> bool {
        self.shells.is_empty()
            && self.assets.is_empty()
            && self.submodels.is_empty()
            && self.concept_descriptions.is_empty()
    }

    fn candidates(&self, key_type: &str) -> Vec<Entity<'_>> {
        match key_type {
            "AssetAdministrationShell" => self.shells.iter().map(Entity::Shell).collect(),
            "Asset" => self.assets.iter().map(Entity::Asset).collect(),
            "Submodel" => self.submodels.iter().map(Entity::Submodel).collect(),
            "ConceptDescription" => self
                .concept_descriptions
                .iter()
                .map(Entity::ConceptDescription)
                .collect(),
            _ => Vec::new(),
        }
    }

    /// Follows a reference to the entity whose identification equals the
    /// last key's value and whose entity type matches the key type.
    pub fn resolve_local(&self, reference: &Reference) -> Result<Entity<'_>, ResolveError> {
        let key = reference.target();
        let value = key.value.trim();
        let hits: Vec<_> = self
            .candidates(&key.key_type)
            .into_iter()
            .filter(|e| e.identification().value == value)
            .collect();
        match hits.len() {
            0 => Err(ResolveError::NotFound {
                key_type: key.key_type.clone(),
                value: value.to_string(),
            }),
            1 => Ok(hits[0]),
            count => Err(ResolveError::AmbiguousReference {
                key_type: key.key_type.clone(),
                value: value.to_string(),
                count,
            }),
        }
    }

    pub fn census(&self) -> Census {
        Census {
            shells: self.shells.len(),
            assets: self.assets.len(),
            submodels: self.submodels.len(),
            elements: self.submodels.iter().map(|s| count_elements(&s.elements)).sum(),
            concept_descriptions: self.concept_descriptions.len(),
        }
    }

    /// Non-fatal consistency findings: local shell references that do not
    /// resolve, and idShorts repeated among siblings.
    pub fn check(&self) -> Vec<String> {
        let mut warnings = Vec::new();
        for shell in &self.shells {
            for (label, refs) in [("assetRef", &shell.asset_refs), ("submodelRef", &shell.submodel_refs)] {
                for r in refs.iter().filter(|r| r.target().local) {
                    if let Err(e) = self.resolve_local(r) {
                        warnings.push(format!(
                            "shell {:?} {label}: {e}",
                            shell.identification.value
                        ));
                    }
                }
            }
        }
        for sm in &self.submodels {
            duplicate_id_shorts(&sm.id_short, &sm.elements, &mut warnings);
        }
        warnings
    }
}

fn duplicate_id_shorts(parent: &str, elements: &[SubmodelElement], warnings: &mut Vec<String>) {
    let mut seen: HashMap<&str, usize> = HashMap::new();
    for e in elements {
        *seen.entry(e.id_short.as_str()).or_default() += 1;
        if let ElementKind::Collection { children } = &e.kind {
            duplicate_id_shorts(&e.id_short, children, warnings);
        }
    }
    let mut dups: Vec<_> = seen.into_iter().filter(|(_, n)| *n > 1).collect();
    dups.sort();
    for (id, n) in dups {
        warnings.push(format!("{parent:?} has {n} children with idShort {id:?}"));
    }
}
