//! Mapping of a parsed AAS environment onto the `rami` vocabulary.
//!
//! Every entity becomes one subject IRI derived from its identification.
//! Properties collapse into direct triples whose predicate is the element's
//! semantic id; collections are flattened onto the owning submodel. Nothing
//! is ever emitted as a blank node.

use std::collections::BTreeSet;
use std::fmt;

use crate::aas::{
    AasEnvironment, AdministrationShell, Asset, ConceptDescription, ElementKind, IdType, Key, LangString,
    Submodel, SubmodelElement,
};
use crate::fixtures;
use crate::rdf::{percent_encode_local, Graph, Iri, Literal, Term, Triple};
use crate::vocab::{rdf, rdfs, skos, xsd};

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum IdentifierPolicy {
    /// Non-URI identifiers cause the entity to be skipped.
    StrictSkip,
    /// Non-URI identifiers are percent-encoded and appended to the base.
    MintUnderBase(Iri),
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct MappingConfig {
    pub rami_namespace: Iri,
    pub identifier_policy: IdentifierPolicy,
    /// Append the ontology's `skos:note "abstract"` markers to the output.
    pub emit_abstract_notes: bool,
}

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum ConfigError {
    #[error("namespace {0} must end in '/' or '#'")]
    BadNamespace(String),
}

fn check_namespace(iri: &Iri) -> Result<(), ConfigError> {
    if iri.as_str().ends_with('/') || iri.as_str().ends_with('#') {
        Ok(())
    } else {
        Err(ConfigError::BadNamespace(iri.as_str().to_string()))
    }
}

impl MappingConfig {
    pub fn new(rami_namespace: Iri, identifier_policy: IdentifierPolicy) -> Result<Self, ConfigError> {
        check_namespace(&rami_namespace)?;
        if let IdentifierPolicy::MintUnderBase(base) = &identifier_policy {
            check_namespace(base)?;
        }
        Ok(MappingConfig {
            rami_namespace,
            identifier_policy,
            emit_abstract_notes: false,
        })
    }

    pub fn with_abstract_notes(mut self, on: bool) -> Self {
        self.emit_abstract_notes = on;
        self
    }

    fn rami(&self, local: &str) -> Iri {
        Iri::new(format!("{}{}", self.rami_namespace.as_str(), local))
            .expect("rami local names are plain ASCII")
    }
}

impl Default for MappingConfig {
    fn default() -> Self {
        MappingConfig {
            rami_namespace: fixtures::rami_namespace(),
            identifier_policy: IdentifierPolicy::StrictSkip,
            emit_abstract_notes: false,
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum SkipReason {
    NonUriIdentifier(IdType),
    InvalidIri { value: String, reason: String },
    NoSemanticId,
    MissingValue,
    MissingTarget,
    FilePathNotIri(String),
    BinaryContent,
    Operation,
    UnsupportedElement(String),
    InvalidAttributeName(String),
}

impl fmt::Display for SkipReason {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            SkipReason::NonUriIdentifier(t) => write!(f, "non-URI identifier ({t:?})"),
            SkipReason::InvalidIri { value, reason } => write!(f, "invalid IRI {value:?}: {reason}"),
            SkipReason::NoSemanticId => f.write_str("no semanticId"),
            SkipReason::MissingValue => f.write_str("no value"),
            SkipReason::MissingTarget => f.write_str("reference has no target"),
            SkipReason::FilePathNotIri(p) => write!(f, "file path {p:?} is not an absolute IRI"),
            SkipReason::BinaryContent => f.write_str("blob content is not mapped"),
            SkipReason::Operation => f.write_str("operations are not mapped"),
            SkipReason::UnsupportedElement(name) => write!(f, "unsupported element type {name}"),
            SkipReason::InvalidAttributeName(name) => write!(f, "attribute name {name:?} is not a valid local name"),
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Skip {
    pub path: String,
    pub reason: SkipReason,
}

impl fmt::Display for Skip {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "SKIP {} {}", self.path, self.reason)
    }
}

/// Raw output of one entity. `triples` may contain repeats; the environment
/// mapper collapses them and counts the difference.
#[derive(Debug, Clone, Default, PartialEq)]
pub struct Mapped {
    pub triples: Vec<Triple>,
    pub skipped: Vec<Skip>,
    pub warnings: Vec<String>,
}

#[derive(Debug, Clone, Default, PartialEq)]
pub struct MappingReport {
    pub emitted_triples: usize,
    pub skipped: Vec<Skip>,
    pub collapsed_duplicates: usize,
    pub warnings: Vec<String>,
}

impl MappingReport {
    pub fn to_text(&self) -> String {
        let mut out = format!(
            "emitted={} skipped={} collapsed={} warnings={}\n",
            self.emitted_triples,
            self.skipped.len(),
            self.collapsed_duplicates,
            self.warnings.len()
        );
        for s in &self.skipped {
            out.push_str(&s.to_string());
            out.push('\n');
        }
        for w in &self.warnings {
            out.push_str("WARN ");
            out.push_str(w);
            out.push('\n');
        }
        out
    }
}

/// Turns an identifier into an IRI according to the policy.
pub fn resolve_identifier(value: &str, id_type: IdType, policy: &IdentifierPolicy) -> Result<Iri, SkipReason> {
    match id_type {
        IdType::Uri => Iri::new(value).map_err(|e| SkipReason::InvalidIri {
            value: value.to_string(),
            reason: e.reason,
        }),
        other => match policy {
            IdentifierPolicy::StrictSkip => Err(SkipReason::NonUriIdentifier(other)),
            IdentifierPolicy::MintUnderBase(base) => {
                Iri::new(format!("{}{}", base.as_str(), percent_encode_local(value))).map_err(|e| {
                    SkipReason::InvalidIri {
                        value: value.to_string(),
                        reason: e.reason,
                    }
                })
            }
        },
    }
}

fn resolve_key(key: &Key, policy: &IdentifierPolicy) -> Result<Iri, SkipReason> {
    resolve_identifier(&key.value, key.id_type, policy)
}

fn segment(s: &str) -> String {
    percent_encode_local(s)
}

fn entity_path(kind: &str, id_short: &str, id: &str) -> String {
    let name = if id_short.is_empty() { id } else { id_short };
    format!("{kind}:{}", segment(name))
}

fn triple(s: &Iri, p: Iri, o: impl Into<Term>) -> Triple {
    Triple::new(s.clone(), p, o).expect("IRI subjects are always valid")
}

fn lang_literal(ls: &LangString, path: &str, warnings: &mut Vec<String>) -> Literal {
    if ls.lang.is_empty() {
        return Literal::string(ls.text.clone());
    }
    match Literal::lang(ls.text.clone(), &ls.lang) {
        Ok(l) => l,
        Err(_) => {
            warnings.push(format!("{path}: language tag {:?} is invalid, emitted as plain string", ls.lang));
            Literal::string(ls.text.clone())
        }
    }
}

struct Emitter<'c> {
    cfg: &'c MappingConfig,
    out: Mapped,
}

impl<'c> Emitter<'c> {
    fn new(cfg: &'c MappingConfig) -> Self {
        Emitter { cfg, out: Mapped::default() }
    }

    fn subject(&self, id: &crate::aas::Identifier, path: &str) -> Result<Iri, Skip> {
        resolve_identifier(&id.value, id.id_type, &self.cfg.identifier_policy).map_err(|reason| Skip {
            path: path.to_string(),
            reason,
        })
    }

    fn emit(&mut self, t: Triple) {
        self.out.triples.push(t);
    }

    fn skip(&mut self, path: String, reason: SkipReason) {
        self.out.skipped.push(Skip { path, reason });
    }

    fn header(&mut self, s: &Iri, class: &str, id_short: &str, comments: &[LangString], path: &str) {
        self.emit(triple(s, rdf::type_(), self.cfg.rami(class)));
        if !id_short.is_empty() {
            self.emit(triple(s, rdfs::label(), Literal::string(id_short)));
        }
        for c in comments {
            let lit = lang_literal(c, path, &mut self.out.warnings);
            self.emit(triple(s, rdfs::comment(), lit));
        }
    }

    fn element(&mut self, s: &Iri, e: &SubmodelElement, parent: &str) {
        let path = format!("{parent}/{}", segment(&e.id_short));
        match &e.kind {
            ElementKind::Collection { children } => {
                if !children.is_empty() {
                    self.out
                        .warnings
                        .push(format!("{path}: collection flattened onto the submodel subject"));
                }
                for c in children {
                    self.element(s, c, &path);
                }
            }
            ElementKind::Blob { .. } => self.skip(path, SkipReason::BinaryContent),
            ElementKind::Operation { .. } => self.skip(path, SkipReason::Operation),
            ElementKind::Unsupported { element_name } => {
                self.skip(path, SkipReason::UnsupportedElement(element_name.clone()))
            }
            ElementKind::Property { value, value_type } => {
                let Some(p) = self.semantic_predicate(e, &path) else { return };
                let Some(value) = value else {
                    return self.skip(path, SkipReason::MissingValue);
                };
                let dt = match value_type.as_deref() {
                    None => xsd::string(),
                    Some(vt) => datatype_for(vt).unwrap_or_else(|| {
                        self.out
                            .warnings
                            .push(format!("{path}: unknown valueType {vt:?}, emitted as xsd:string"));
                        xsd::string()
                    }),
                };
                self.emit(triple(s, p.clone(), Literal::typed(value.clone(), dt)));
                self.emit(triple(&p, rdf::type_(), rdf::property()));
            }
            ElementKind::File { path: file, .. } => {
                let Some(p) = self.semantic_predicate(e, &path) else { return };
                let Some(file) = file else {
                    return self.skip(path, SkipReason::MissingValue);
                };
                let object = match Iri::new(file.as_str()) {
                    Ok(iri) => iri,
                    Err(_) => match &self.cfg.identifier_policy {
                        IdentifierPolicy::MintUnderBase(base) => {
                            match Iri::new(format!("{}{}", base.as_str(), percent_encode_local(file))) {
                                Ok(iri) => iri,
                                Err(e) => {
                                    return self.skip(
                                        path,
                                        SkipReason::InvalidIri {
                                            value: file.clone(),
                                            reason: e.reason,
                                        },
                                    )
                                }
                            }
                        }
                        IdentifierPolicy::StrictSkip => {
                            return self.skip(path, SkipReason::FilePathNotIri(file.clone()))
                        }
                    },
                };
                self.emit(triple(s, p, object));
            }
            ElementKind::ReferenceElement { target } => {
                let Some(p) = self.semantic_predicate(e, &path) else { return };
                let Some(target) = target else {
                    return self.skip(path, SkipReason::MissingTarget);
                };
                match resolve_key(target.target(), &self.cfg.identifier_policy) {
                    Ok(o) => self.emit(triple(s, p, o)),
                    Err(reason) => self.skip(path, reason),
                }
            }
        }
    }

    fn semantic_predicate(&mut self, e: &SubmodelElement, path: &str) -> Option<Iri> {
        let Some(sem) = &e.semantic_id else {
            self.skip(path.to_string(), SkipReason::NoSemanticId);
            return None;
        };
        match resolve_key(sem.target(), &self.cfg.identifier_policy) {
            Ok(p) => Some(p),
            Err(reason) => {
                self.skip(path.to_string(), reason);
                None
            }
        }
    }
}

/// The fixed valueType table. Matching ignores ASCII case.
pub fn datatype_for(value_type: &str) -> Option<Iri> {
    Some(match value_type.to_ascii_lowercase().as_str() {
        "int" | "integer" => xsd::integer(),
        "string" | "langstring" => xsd::string(),
        "boolean" | "bool" => xsd::boolean(),
        "double" => xsd::double(),
        "float" => xsd::float(),
        "decimal" => xsd::decimal(),
        "long" => xsd::long(),
        "date" => xsd::date(),
        "datetime" => xsd::date_time(),
        "anyuri" => xsd::any_uri(),
        _ => return None,
    })
}

pub fn map_shell(shell: &AdministrationShell, cfg: &MappingConfig) -> Result<Mapped, Skip> {
    let path = entity_path("shell", &shell.id_short, &shell.identification.value);
    let mut em = Emitter::new(cfg);
    let s = em.subject(&shell.identification, &path)?;
    em.header(&s, "AssetShell", &shell.id_short, &shell.descriptions, &path);
    for (i, r) in shell.asset_refs.iter().enumerate() {
        match resolve_key(r.target(), &cfg.identifier_policy) {
            Ok(o) => em.emit(triple(&s, cfg.rami("hasAsset"), o)),
            Err(reason) => em.skip(format!("{path}/assetRef[{}]", i + 1), reason),
        }
    }
    for (i, r) in shell.submodel_refs.iter().enumerate() {
        match resolve_key(r.target(), &cfg.identifier_policy) {
            Ok(o) => em.emit(triple(&s, cfg.rami("hasSubmodel"), o)),
            Err(reason) => em.skip(format!("{path}/submodelRef[{}]", i + 1), reason),
        }
    }
    Ok(em.out)
}

pub fn map_asset(asset: &Asset, cfg: &MappingConfig) -> Result<Mapped, Skip> {
    let path = entity_path("asset", &asset.id_short, &asset.identification.value);
    let mut em = Emitter::new(cfg);
    let s = em.subject(&asset.identification, &path)?;
    em.header(&s, "Asset", &asset.id_short, &asset.descriptions, &path);
    em.emit(triple(&s, cfg.rami("kind"), Literal::string(asset.kind.as_str())));
    Ok(em.out)
}

pub fn map_submodel(sm: &Submodel, cfg: &MappingConfig) -> Result<Mapped, Skip> {
    let path = entity_path("submodel", &sm.id_short, &sm.identification.value);
    let mut em = Emitter::new(cfg);
    let s = em.subject(&sm.identification, &path)?;
    em.header(&s, "Submodel", &sm.id_short, &sm.descriptions, &path);
    em.emit(triple(&s, cfg.rami("kind"), Literal::string(sm.kind.as_str())));
    for e in &sm.elements {
        em.element(&s, e, &path);
    }
    Ok(em.out)
}

/// Maps a concept description, dropping triples already present in
/// `emitted`. The number dropped is returned alongside.
pub fn map_concept_description(
    cd: &ConceptDescription,
    cfg: &MappingConfig,
    emitted: &Graph,
) -> Result<(Mapped, usize), Skip> {
    let path = entity_path("conceptDescription", &cd.id_short, &cd.identification.value);
    let mut em = Emitter::new(cfg);
    let s = em.subject(&cd.identification, &path)?;
    em.header(&s, "ConceptDescription", &cd.id_short, &cd.definitions, &path);
    for (key, text) in &cd.attributes {
        let local = camel_case(&key.name);
        if local.is_empty() {
            em.skip(
                format!("{path}/{}", segment(&key.name)),
                SkipReason::InvalidAttributeName(key.name.clone()),
            );
            continue;
        }
        let ls = LangString {
            lang: key.lang.clone().unwrap_or_default(),
            text: text.clone(),
        };
        let lit = lang_literal(&ls, &path, &mut em.out.warnings);
        em.emit(triple(&s, cfg.rami(&local), lit));
    }
    let mut out = em.out;
    let before = out.triples.len();
    out.triples.retain(|t| !emitted.contains(t));
    let dropped = before - out.triples.len();
    Ok((out, dropped))
}

/// `source_of_definition`, `Source Of Definition` and `sourceOfDefinition`
/// all become `sourceOfDefinition`.
pub fn camel_case(name: &str) -> String {
    let mut out = String::new();
    let mut upper_next = false;
    for c in name.chars() {
        if c.is_ascii_alphanumeric() {
            if out.is_empty() {
                if c.is_ascii_digit() {
                    continue;
                }
                out.push(c.to_ascii_lowercase());
            } else if upper_next {
                out.push(c.to_ascii_uppercase());
            } else {
                out.push(c);
            }
            upper_next = false;
        } else {
            upper_next = !out.is_empty();
        }
    }
    out
}

fn output_graph(cfg: &MappingConfig) -> Graph {
    let mut g = Graph::new();
    g.bind_prefix("rami", cfg.rami_namespace.clone());
    g.bind_prefix("rdf", Iri::new(rdf::NS).expect("static"));
    g.bind_prefix("rdfs", Iri::new(rdfs::NS).expect("static"));
    g.bind_prefix("xsd", Iri::new(xsd::NS).expect("static"));
    g
}

/// Maps a whole environment. Entities that cannot be identified are skipped
/// and reported; the rest are unaffected.
pub fn map_environment(env: &AasEnvironment, cfg: &MappingConfig) -> (Graph, MappingReport) {
    let mut g = output_graph(cfg);
    let mut report = MappingReport::default();

    let absorb = |g: &mut Graph, report: &mut MappingReport, r: Result<Mapped, Skip>| match r {
        Ok(m) => {
            for t in m.triples {
                if !g.insert(t) {
                    report.collapsed_duplicates += 1;
                }
            }
            report.skipped.extend(m.skipped);
            report.warnings.extend(m.warnings);
        }
        Err(skip) => report.skipped.push(skip),
    };

    for shell in &env.shells {
        absorb(&mut g, &mut report, map_shell(shell, cfg));
    }
    for asset in &env.assets {
        absorb(&mut g, &mut report, map_asset(asset, cfg));
    }
    for sm in &env.submodels {
        absorb(&mut g, &mut report, map_submodel(sm, cfg));
    }
    for cd in &env.concept_descriptions {
        match map_concept_description(cd, cfg, &g) {
            Ok((m, dropped)) => {
                report.collapsed_duplicates += dropped;
                absorb(&mut g, &mut report, Ok(m));
            }
            Err(skip) => report.skipped.push(skip),
        }
    }
    if cfg.emit_abstract_notes {
        g.bind_prefix("skos", Iri::new(skos::NS).expect("static"));
        let notes: BTreeSet<Triple> = abstract_notes(cfg);
        absorb(
            &mut g,
            &mut report,
            Ok(Mapped {
                triples: notes.into_iter().collect(),
                ..Mapped::default()
            }),
        );
    }
    report.emitted_triples = g.len();
    (g, report)
}

/// `skos:note "abstract"` triples of the bundled ontology, rewritten into
/// the configured namespace.
fn abstract_notes(cfg: &MappingConfig) -> BTreeSet<Triple> {
    let bundled = fixtures::rami_namespace();
    let abstract_lit = Term::from(Literal::string("abstract"));
    fixtures::ontology()
        .iter()
        .filter(|t| *t.predicate() == skos::note() && *t.object() == abstract_lit)
        .filter_map(|t| {
            let iri = t.subject().as_iri()?;
            let local = iri.as_str().strip_prefix(bundled.as_str())?;
            Some(triple(&cfg.rami(local), skos::note(), Literal::string("abstract")))
        })
        .collect()
}
