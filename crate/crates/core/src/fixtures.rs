//! Bundled ontology and shapes, and checksum verification of the fixture
//! directory.

use std::fmt;
use std::path::{Path, PathBuf};
use std::str::FromStr;
use std::sync::OnceLock;

use sha2::{Digest, Sha256};

use crate::rdf::{BlankNode, Graph, Iri, Term, Triple};
use crate::serialize::{parse_turtle, SyntaxError};

pub const ONTOLOGY_TTL: &str = include_str!("../fixtures/ontology/rami.ttl");

pub const SHAPE_FILES: &[(&str, &str)] = &[
    ("Asset.ttl", include_str!("../fixtures/shapes/Asset.ttl")),
    ("AssetShell.ttl", include_str!("../fixtures/shapes/AssetShell.ttl")),
    ("Blob.ttl", include_str!("../fixtures/shapes/Blob.ttl")),
    ("ConceptDescription.ttl", include_str!("../fixtures/shapes/ConceptDescription.ttl")),
    ("File.ttl", include_str!("../fixtures/shapes/File.ttl")),
    ("Operation.ttl", include_str!("../fixtures/shapes/Operation.ttl")),
    ("ReferenceElement.ttl", include_str!("../fixtures/shapes/ReferenceElement.ttl")),
    ("Submodel.ttl", include_str!("../fixtures/shapes/Submodel.ttl")),
    ("SubmodelElementCollection.ttl", include_str!("../fixtures/shapes/SubmodelElementCollection.ttl")),
    ("View.ttl", include_str!("../fixtures/shapes/View.ttl")),
];

/// The bundled ontology, parsed once.
pub fn ontology() -> &'static Graph {
    static ONTOLOGY: OnceLock<Graph> = OnceLock::new();
    ONTOLOGY.get_or_init(|| parse_turtle(ONTOLOGY_TTL).expect("bundled ontology is valid Turtle"))
}

/// The `rami` namespace as declared in the ontology header.
pub fn rami_namespace() -> Iri {
    ontology()
        .prefixes()
        .get("rami")
        .cloned()
        .expect("bundled ontology binds the rami prefix")
}

/// All bundled shape files merged into one graph.
pub fn shapes_graph() -> Graph {
    merge_turtle_documents(SHAPE_FILES).unwrap_or_else(|(name, e)| panic!("bundled shape {name}: {e}"))
}

/// Parses several Turtle documents into one graph, keeping blank nodes of
/// different documents apart. Fails with the name of the offending document.
pub fn merge_turtle_documents<N: AsRef<str>, T: AsRef<str>>(docs: &[(N, T)]) -> Result<Graph, (String, SyntaxError)> {
    let mut g = Graph::new();
    for (i, (name, text)) in docs.iter().enumerate() {
        let part = parse_turtle(text.as_ref()).map_err(|e| (name.as_ref().to_string(), e))?;
        let relabel = |t: &Term| match t {
            Term::Blank(b) => Term::Blank(BlankNode::new_unchecked(format!("d{i}_{}", b.label()))),
            other => other.clone(),
        };
        for (p, ns) in part.prefixes() {
            if !g.prefixes().contains_key(p) {
                g.bind_prefix(p.clone(), ns.clone());
            }
        }
        for t in part.iter() {
            let t = Triple::new(relabel(t.subject()), t.predicate().clone(), relabel(t.object()))
                .expect("relabelling keeps subjects non-literal");
            g.insert(t);
        }
    }
    Ok(g)
}

/// Source location of the fixture tree; only meaningful inside a checkout.
pub fn fixtures_dir() -> PathBuf {
    Path::new(env!("CARGO_MANIFEST_DIR")).join("fixtures")
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum FixtureKind {
    Ontology,
    Shapes,
    AasXml,
    GoldenRdf,
    GoldenReport,
    OracleOutput,
}

impl fmt::Display for FixtureKind {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            FixtureKind::Ontology => "Ontology",
            FixtureKind::Shapes => "Shapes",
            FixtureKind::AasXml => "AasXml",
            FixtureKind::GoldenRdf => "GoldenRdf",
            FixtureKind::GoldenReport => "GoldenReport",
            FixtureKind::OracleOutput => "OracleOutput",
        })
    }
}

impl FromStr for FixtureKind {
    type Err = String;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        Ok(match s {
            "Ontology" => FixtureKind::Ontology,
            "Shapes" => FixtureKind::Shapes,
            "AasXml" => FixtureKind::AasXml,
            "GoldenRdf" => FixtureKind::GoldenRdf,
            "GoldenReport" => FixtureKind::GoldenReport,
            "OracleOutput" => FixtureKind::OracleOutput,
            other => return Err(format!("unknown fixture kind {other:?}")),
        })
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ManifestEntry {
    pub name: String,
    pub kind: FixtureKind,
    pub checksum: String,
    pub path: String,
}

#[derive(Debug, Clone, Default, PartialEq, Eq)]
pub struct FixtureManifest {
    pub entries: Vec<ManifestEntry>,
}

impl FixtureManifest {
    /// Parses `name<TAB>kind<TAB>sha-256<TAB>path` lines; blank lines and
    /// `#` comments are skipped.
    pub fn parse(text: &str) -> Result<Self, String> {
        let mut entries = Vec::new();
        for (i, line) in text.lines().enumerate() {
            if line.trim().is_empty() || line.starts_with('#') {
                continue;
            }
            let fields: Vec<&str> = line.split('\t').collect();
            let [name, kind, checksum, path] = fields[..] else {
                return Err(format!("line {}: expected 4 tab-separated fields", i + 1));
            };
            entries.push(ManifestEntry {
                name: name.to_string(),
                kind: kind.parse().map_err(|e| format!("line {}: {e}", i + 1))?,
                checksum: checksum.to_ascii_lowercase(),
                path: path.to_string(),
            });
        }
        Ok(FixtureManifest { entries })
    }

    pub fn render(&self) -> String {
        self.entries
            .iter()
            .map(|e| format!("{}\t{}\t{}\t{}\n", e.name, e.kind, e.checksum, e.path))
            .collect()
    }
}

pub fn sha256_hex(bytes: &[u8]) -> String {
    hex::encode(Sha256::digest(bytes))
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Mismatch {
    Missing { name: String, kind: FixtureKind, path: String },
    Checksum { name: String, kind: FixtureKind, expected: String, actual: String },
}

impl fmt::Display for Mismatch {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Mismatch::Missing { name, kind, path } => write!(f, "{name} ({kind}): missing file {path}"),
            Mismatch::Checksum { name, kind, expected, actual } => {
                write!(f, "{name} ({kind}): expected sha-256 {expected}, found {actual}")
            }
        }
    }
}

/// Recomputes every checksum relative to `root`.
pub fn verify_fixtures(manifest: &FixtureManifest, root: &Path) -> Result<(), Vec<Mismatch>> {
    let mut mismatches = Vec::new();
    for e in &manifest.entries {
        match std::fs::read(root.join(&e.path)) {
            Err(_) => mismatches.push(Mismatch::Missing {
                name: e.name.clone(),
                kind: e.kind,
                path: e.path.clone(),
            }),
            Ok(bytes) => {
                let actual = sha256_hex(&bytes);
                if actual != e.checksum {
                    mismatches.push(Mismatch::Checksum {
                        name: e.name.clone(),
                        kind: e.kind,
                        expected: e.checksum.clone(),
                        actual,
                    });
                }
            }
        }
    }
    if mismatches.is_empty() {
        Ok(())
    } else {
        Err(mismatches)
    }
}
