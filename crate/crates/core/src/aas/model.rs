use std::collections::BTreeMap;
use std::fmt;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum IdType {
    Uri,
    Irdi,
    Custom,
}

impl IdType {
    /// "URI" and "IRDI" map to their variants; everything else is custom.
    pub fn from_attr(value: &str) -> Self {
        match value.trim() {
            "URI" => IdType::Uri,
            "IRDI" => IdType::Irdi,
            _ => IdType::Custom,
        }
    }
}

impl fmt::Display for IdType {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            IdType::Uri => "URI",
            IdType::Irdi => "IRDI",
            IdType::Custom => "Custom",
        })
    }
}

/// Global identifiers are valid everywhere, local ones only inside the
/// environment that uses them.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Scope {
    Global,
    Local,
}

#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct Identifier {
    pub value: String,
    pub id_type: IdType,
    pub scope: Scope,
}

impl Identifier {
    /// URI and IRDI identifiers are registered globally; custom ones are
    /// only meaningful locally.
    pub fn new(value: impl Into<String>, id_type: IdType) -> Self {
        let scope = match id_type {
            IdType::Uri | IdType::Irdi => Scope::Global,
            IdType::Custom => Scope::Local,
        };
        Identifier {
            value: value.into(),
            id_type,
            scope,
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct Key {
    pub key_type: String,
    pub local: bool,
    pub id_type: IdType,
    pub value: String,
}

/// An ordered key chain; the last key names the target.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct Reference {
    keys: Vec<Key>,
}

impl Reference {
    /// `None` for an empty key list.
    pub fn new(keys: Vec<Key>) -> Option<Self> {
        if keys.is_empty() {
            None
        } else {
            Some(Reference { keys })
        }
    }

    pub fn keys(&self) -> &[Key] {
        &self.keys
    }

    pub fn target(&self) -> &Key {
        self.keys.last().expect("reference has at least one key")
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct LangString {
    pub lang: String,
    pub text: String,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Kind {
    Instance,
    Type,
}

impl Kind {
    pub fn parse(value: &str) -> Option<Self> {
        match value.trim().to_ascii_lowercase().as_str() {
            "instance" => Some(Kind::Instance),
            "type" | "template" => Some(Kind::Type),
            _ => None,
        }
    }

    pub fn as_str(&self) -> &'static str {
        match self {
            Kind::Instance => "Instance",
            Kind::Type => "Type",
        }
    }
}

/// An XML child the model does not interpret, kept verbatim.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Extra {
    pub name: String,
    pub raw: String,
}

#[derive(Debug, Clone, PartialEq)]
pub struct AdministrationShell {
    pub identification: Identifier,
    pub id_short: String,
    pub descriptions: Vec<LangString>,
    pub asset_refs: Vec<Reference>,
    pub submodel_refs: Vec<Reference>,
    pub extras: Vec<Extra>,
}

#[derive(Debug, Clone, PartialEq)]
pub struct Asset {
    pub identification: Identifier,
    pub id_short: String,
    pub descriptions: Vec<LangString>,
    pub kind: Kind,
    pub extras: Vec<Extra>,
}

#[derive(Debug, Clone, PartialEq)]
pub struct Submodel {
    pub identification: Identifier,
    pub id_short: String,
    pub descriptions: Vec<LangString>,
    pub kind: Kind,
    pub elements: Vec<SubmodelElement>,
    pub extras: Vec<Extra>,
}

#[derive(Debug, Clone, PartialEq)]
pub struct SubmodelElement {
    pub id_short: String,
    pub semantic_id: Option<Reference>,
    pub kind: ElementKind,
    pub extras: Vec<Extra>,
}

#[derive(Debug, Clone, PartialEq)]
pub enum BlobContent {
    Inline(String),
    Empty,
}

#[derive(Debug, Clone, PartialEq)]
pub enum ElementKind {
    Property {
        value: Option<String>,
        value_type: Option<String>,
    },
    Collection {
        children: Vec<SubmodelElement>,
    },
    File {
        mime_type: String,
        path: Option<String>,
    },
    Blob {
        mime_type: String,
        content: BlobContent,
    },
    ReferenceElement {
        target: Option<Reference>,
    },
    /// Parsed without invocation semantics.
    Operation {
        in_params: Vec<SubmodelElement>,
        out_params: Vec<SubmodelElement>,
    },
    /// Element types outside the supported subset (events, ranges, ...).
    Unsupported {
        element_name: String,
    },
}

impl ElementKind {
    pub fn name(&self) -> &'static str {
        match self {
            ElementKind::Property { .. } => "Property",
            ElementKind::Collection { .. } => "SubmodelElementCollection",
            ElementKind::File { .. } => "File",
            ElementKind::Blob { .. } => "Blob",
            ElementKind::ReferenceElement { .. } => "ReferenceElement",
            ElementKind::Operation { .. } => "Operation",
            ElementKind::Unsupported { .. } => "Unsupported",
        }
    }
}

/// Attribute names carry their language when the source was a multi-language
/// string, so `preferredName@en` and `preferredName@de` are distinct entries.
#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct AttributeKey {
    pub name: String,
    pub lang: Option<String>,
}

impl AttributeKey {
    pub fn plain(name: &str) -> Self {
        AttributeKey {
            name: name.to_string(),
            lang: None,
        }
    }

    pub fn with_lang(name: &str, lang: &str) -> Self {
        AttributeKey {
            name: name.to_string(),
            lang: Some(lang.to_string()),
        }
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct ConceptDescription {
    pub identification: Identifier,
    pub id_short: String,
    pub definitions: Vec<LangString>,
    pub attributes: BTreeMap<AttributeKey, String>,
    pub extras: Vec<Extra>,
}

#[derive(Debug, Clone, Default, PartialEq)]
pub struct AasEnvironment {
    pub shells: Vec<AdministrationShell>,
    pub assets: Vec<Asset>,
    pub submodels: Vec<Submodel>,
    pub concept_descriptions: Vec<ConceptDescription>,
}
