//! Graph serialization (N-Triples, N-Quads, Turtle, RDF/XML, JSON-LD) and
//! parsing (N-Triples, Turtle).
//!
//! N-Triples output is canonical: one triple per line, lines sorted by byte
//! order, LF endings. N-Quads output is identical because graphs never carry
//! named graphs.

pub(crate) mod lexer;
pub(crate) mod parser;
mod writers;

use std::fmt;
use std::str::FromStr;

use thiserror::Error;

use crate::rdf::Graph;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
#[error("syntax error at {line}:{col}: {reason}")]
pub struct SyntaxError {
    pub line: usize,
    pub col: usize,
    pub reason: String,
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum SerializeError {
    #[error("term cannot be serialized: {0}")]
    UnserializableTerm(String),
    #[error("{0} is a write-only format")]
    WriteOnly(SerializationFormat),
    #[error("input is not UTF-8")]
    NotUtf8,
    #[error(transparent)]
    Syntax(#[from] SyntaxError),
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum SerializationFormat {
    NTriples,
    NQuads,
    Turtle,
    RdfXml,
    JsonLd,
}

impl SerializationFormat {
    pub const ALL: [SerializationFormat; 5] = [
        SerializationFormat::NTriples,
        SerializationFormat::NQuads,
        SerializationFormat::Turtle,
        SerializationFormat::RdfXml,
        SerializationFormat::JsonLd,
    ];

    pub fn extension(&self) -> &'static str {
        match self {
            SerializationFormat::NTriples => "nt",
            SerializationFormat::NQuads => "nq",
            SerializationFormat::Turtle => "ttl",
            SerializationFormat::RdfXml => "rdf",
            SerializationFormat::JsonLd => "jsonld",
        }
    }

    /// Short name used on the command line and in stats records.
    pub fn short_name(&self) -> &'static str {
        match self {
            SerializationFormat::RdfXml => "rdfxml",
            other => other.extension(),
        }
    }

    pub fn from_extension(ext: &str) -> Option<Self> {
        Self::ALL
            .into_iter()
            .find(|f| f.extension().eq_ignore_ascii_case(ext))
            .or(match ext.to_ascii_lowercase().as_str() {
                "owl" | "xml" => Some(SerializationFormat::RdfXml),
                "json" => Some(SerializationFormat::JsonLd),
                _ => None,
            })
    }
}

impl fmt::Display for SerializationFormat {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.short_name())
    }
}

impl FromStr for SerializationFormat {
    type Err = String;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        Self::ALL
            .into_iter()
            .find(|f| f.short_name() == s || f.extension() == s)
            .ok_or_else(|| format!("unknown format {s:?} (expected nt, nq, ttl, rdfxml or jsonld)"))
    }
}

pub fn serialize(g: &Graph, format: SerializationFormat) -> Result<Vec<u8>, SerializeError> {
    Ok(match format {
        SerializationFormat::NTriples | SerializationFormat::NQuads => writers::ntriples(g),
        SerializationFormat::Turtle => writers::turtle(g),
        SerializationFormat::RdfXml => writers::rdfxml(g)?,
        SerializationFormat::JsonLd => writers::jsonld(g),
    })
}

/// Parses N-Triples (N-Quads without graph labels) or Turtle.
pub fn parse(doc: &[u8], format: SerializationFormat) -> Result<Graph, SerializeError> {
    let text = std::str::from_utf8(doc).map_err(|_| SerializeError::NotUtf8)?;
    let text = text.strip_prefix('\u{FEFF}').unwrap_or(text);
    match format {
        SerializationFormat::NTriples | SerializationFormat::NQuads => Ok(parser::parse(text, true)?),
        SerializationFormat::Turtle => Ok(parser::parse(text, false)?),
        other => Err(SerializeError::WriteOnly(other)),
    }
}

pub fn parse_turtle(text: &str) -> Result<Graph, SyntaxError> {
    parser::parse(text, false)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::rdf::{BlankNode, Iri, Literal, Term, Triple};
    use crate::vocab;
    use proptest::prelude::*;

    const RAMI: &str = "https://w3id.org/i40/rami#";
    const SHELL: &str = "http://iais.fraunhofer.de/en/aas/examples/raspberry_pi_3b_plus";
    const ASSET: &str = "http://iais.fraunhofer.de/en/aas/devices/rspbry/755003377";

    fn pi_shell_graph() -> Graph {
        let mut g = Graph::new();
        g.bind_prefix("rami", Iri::new(RAMI).unwrap());
        g.bind_prefix("rdfs", Iri::new(vocab::rdfs::NS).unwrap());
        g.bind_prefix("rdf", Iri::new(vocab::rdf::NS).unwrap());
        let s = Iri::new(SHELL).unwrap();
        g.insert(Triple::new(s.clone(), vocab::rdf::type_(), Iri::new(format!("{RAMI}AssetShell")).unwrap()).unwrap());
        g.insert(Triple::new(s.clone(), vocab::rdfs::label(), Literal::string("RaspberryPiModel3B+")).unwrap());
        g.insert(Triple::new(s, Iri::new(format!("{RAMI}hasAsset")).unwrap(), Iri::new(ASSET).unwrap()).unwrap());
        g
    }

    #[test]
    fn empty_graph_serializes_to_nothing() {
        assert!(serialize(&Graph::new(), SerializationFormat::NTriples).unwrap().is_empty());
        assert!(serialize(&Graph::new(), SerializationFormat::Turtle).unwrap().is_empty());
    }

    #[test]
    fn turtle_matches_expected_layout() {
        let ttl = String::from_utf8(serialize(&pi_shell_graph(), SerializationFormat::Turtle).unwrap()).unwrap();
        let expected = format!(
            "@prefix rami: <{RAMI}> .\n@prefix rdfs: <{}> .\n\n<{SHELL}> a rami:AssetShell;\n  rdfs:label \"RaspberryPiModel3B+\";\n  rami:hasAsset <{ASSET}> .\n\n",
            vocab::rdfs::NS
        );
        assert_eq!(ttl, expected);
        assert!(ttl.contains("a rami:AssetShell;"));
        assert!(ttl.contains("rdfs:label \"RaspberryPiModel3B+\";"));
    }

    #[test]
    fn nquads_equal_ntriples_and_exceed_turtle() {
        let g = pi_shell_graph();
        let nt = serialize(&g, SerializationFormat::NTriples).unwrap();
        let nq = serialize(&g, SerializationFormat::NQuads).unwrap();
        let ttl = serialize(&g, SerializationFormat::Turtle).unwrap();
        assert_eq!(nt, nq);
        // byte counts computed by hand from the literal strings: 454 vs 301
        assert_eq!(nq.len(), 454);
        assert_eq!(ttl.len(), 301);
        assert!(nq.len() >= ttl.len());
    }

    #[test]
    fn rdfxml_declares_namespaces_once() {
        let xml = String::from_utf8(serialize(&pi_shell_graph(), SerializationFormat::RdfXml).unwrap()).unwrap();
        assert_eq!(xml.matches("xmlns:rami=").count(), 1);
        assert!(xml.contains("<rdfs:label>RaspberryPiModel3B+</rdfs:label>"));
        assert!(xml.contains(&format!("<rami:hasAsset rdf:resource=\"{ASSET}\"/>")));
        assert!(roxmltree::Document::parse(&xml).is_ok());
    }

    #[test]
    fn rdfxml_mints_prefix_for_unbound_predicates() {
        let mut g = Graph::new();
        g.insert(
            Triple::new(
                Iri::new("http://a/s").unwrap(),
                Iri::new("http://other.org/vocab#size").unwrap(),
                Literal::typed("3", vocab::xsd::integer()),
            )
            .unwrap(),
        );
        let xml = String::from_utf8(serialize(&g, SerializationFormat::RdfXml).unwrap()).unwrap();
        assert!(xml.contains("xmlns:ns0=\"http://other.org/vocab#\""));
        assert!(xml.contains("<ns0:size rdf:datatype=\"http://www.w3.org/2001/XMLSchema#integer\">3</ns0:size>"));
    }

    #[test]
    fn rdfxml_rejects_control_characters() {
        let mut g = Graph::new();
        g.insert(Triple::new(Iri::new("http://a/s").unwrap(), vocab::rdfs::label(), Literal::string("a\u{1}")).unwrap());
        assert!(matches!(
            serialize(&g, SerializationFormat::RdfXml),
            Err(SerializeError::UnserializableTerm(_))
        ));
    }

    #[test]
    fn jsonld_uses_context() {
        let out = serialize(&pi_shell_graph(), SerializationFormat::JsonLd).unwrap();
        let v: serde_json::Value = serde_json::from_slice(&out).unwrap();
        assert_eq!(v["@context"]["rami"], RAMI);
        assert_eq!(v["@graph"][0]["@type"][0], "rami:AssetShell");
        assert_eq!(v["@graph"][0]["rami:hasAsset"][0]["@id"], ASSET);
        assert_eq!(v["@graph"][0]["rdfs:label"][0]["@value"], "RaspberryPiModel3B+");
    }

    #[test]
    fn write_only_formats_refuse_parse() {
        assert!(matches!(
            parse(b"", SerializationFormat::JsonLd),
            Err(SerializeError::WriteOnly(SerializationFormat::JsonLd))
        ));
    }

    fn arb_iri() -> impl Strategy<Value = Iri> {
        prop_oneof![
            "[a-z]{1,5}".prop_map(|l| Iri::new(format!("{RAMI}{l}")).unwrap()),
            "[a-z0-9]{1,5}".prop_map(|l| Iri::new(format!("http://ex.org/x/{l}")).unwrap()),
            "[a-z]{1,3}".prop_map(|l| Iri::new(format!("urn:t:{l}.")).unwrap()),
            Just(vocab::rdf::type_()),
        ]
    }

    fn arb_literal() -> impl Strategy<Value = Literal> {
        prop_oneof![
            any::<String>().prop_map(Literal::string),
            ("\\PC{0,8}", "[a-z]{2}(-[A-Z]{2})?").prop_map(|(s, l)| Literal::lang(s, &l).unwrap()),
            (any::<i32>()).prop_map(|n| Literal::typed(n.to_string(), vocab::xsd::integer())),
            ("[ -~]{0,6}", arb_iri()).prop_map(|(s, dt)| Literal::typed(s, dt)),
        ]
    }

    fn arb_term() -> impl Strategy<Value = Term> {
        prop_oneof![
            arb_iri().prop_map(Term::Iri),
            arb_literal().prop_map(Term::Literal),
            "[a-z][a-z0-9]{0,3}".prop_map(|l| Term::Blank(BlankNode::new(l).unwrap())),
        ]
    }

    fn arb_graph() -> impl Strategy<Value = Graph> {
        let subject = prop_oneof![
            arb_iri().prop_map(Term::Iri),
            "[a-z][a-z0-9]{0,3}".prop_map(|l| Term::Blank(BlankNode::new(l).unwrap())),
        ];
        prop::collection::vec((subject, arb_iri(), arb_term()), 0..20).prop_map(|ts| {
            let mut g: Graph = ts.into_iter().map(|(s, p, o)| Triple::new(s, p, o).unwrap()).collect();
            g.bind_prefix("rami", Iri::new(RAMI).unwrap());
            g.bind_prefix("rdf", Iri::new(vocab::rdf::NS).unwrap());
            g.bind_prefix("xsd", Iri::new(vocab::xsd::NS).unwrap());
            g
        })
    }

    proptest! {
        #[test]
        fn roundtrip_ntriples(g in arb_graph()) {
            let bytes = serialize(&g, SerializationFormat::NTriples).unwrap();
            let back = parse(&bytes, SerializationFormat::NTriples).unwrap();
            prop_assert_eq!(back.triples(), g.triples());
            // canonical bytes are stable
            prop_assert_eq!(serialize(&back, SerializationFormat::NTriples).unwrap(), bytes);
        }

        #[test]
        fn roundtrip_turtle(g in arb_graph()) {
            let bytes = serialize(&g, SerializationFormat::Turtle).unwrap();
            let back = parse(&bytes, SerializationFormat::Turtle).unwrap();
            prop_assert_eq!(back.triples(), g.triples());
        }

        #[test]
        fn jsonld_is_valid_json(g in arb_graph()) {
            let bytes = serialize(&g, SerializationFormat::JsonLd).unwrap();
            prop_assert!(serde_json::from_slice::<serde_json::Value>(&bytes).is_ok());
        }
    }
}
