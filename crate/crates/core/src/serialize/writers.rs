use std::collections::{BTreeMap, BTreeSet};
use std::fmt::Write as _;

use serde_json::{json, Map, Value};

use super::SerializeError;
use crate::rdf::{escape_literal, Graph, Iri, Literal, Term};
use crate::vocab;

/// Splits `iri` into a bound prefix and a local part that is a valid
/// Turtle local name. The longest matching namespace wins.
fn compact<'a>(iri: &'a str, prefixes: &'a BTreeMap<String, Iri>) -> Option<(&'a str, &'a str)> {
    prefixes
        .iter()
        .filter_map(|(p, ns)| {
            iri.strip_prefix(ns.as_str())
                .filter(|local| is_simple_local(local))
                .map(|local| (p.as_str(), local, ns.as_str().len()))
        })
        .max_by_key(|(_, _, len)| *len)
        .map(|(p, l, _)| (p, l))
}

fn is_simple_local(local: &str) -> bool {
    let mut chars = local.chars();
    match chars.next() {
        Some(c) if c.is_ascii_alphanumeric() || c == '_' => {}
        _ => return false,
    }
    !local.ends_with('.') && chars.all(|c| c.is_ascii_alphanumeric() || matches!(c, '_' | '-' | '.'))
}

fn is_ncname(local: &str) -> bool {
    let mut chars = local.chars();
    match chars.next() {
        Some(c) if c.is_alphabetic() || c == '_' => {}
        _ => return false,
    }
    chars.all(|c| c.is_alphanumeric() || matches!(c, '_' | '-' | '.'))
}

pub(super) fn ntriples(g: &Graph) -> Vec<u8> {
    let mut lines: Vec<String> = g.iter().map(|t| t.to_string()).collect();
    lines.sort();
    let mut out = String::with_capacity(lines.iter().map(|l| l.len() + 1).sum());
    for l in lines {
        out.push_str(&l);
        out.push('\n');
    }
    out.into_bytes()
}

struct TurtleTerms<'a> {
    prefixes: &'a BTreeMap<String, Iri>,
    used: BTreeSet<&'a str>,
}

impl<'a> TurtleTerms<'a> {
    fn iri(&mut self, iri: &'a Iri) -> String {
        match compact(iri.as_str(), self.prefixes) {
            Some((p, l)) => {
                self.used.insert(p);
                format!("{p}:{l}")
            }
            None => format!("<{}>", iri.as_str()),
        }
    }

    fn literal(&mut self, lit: &'a Literal) -> String {
        let body = format!("\"{}\"", escape_literal(lit.lexical()));
        match (lit.language(), lit.datatype().as_str()) {
            (Some(tag), _) => format!("{body}@{tag}"),
            (None, vocab::xsd::STRING) => body,
            (None, _) => format!("{body}^^{}", self.iri(lit.datatype())),
        }
    }

    fn term(&mut self, t: &'a Term) -> String {
        match t {
            Term::Iri(i) => self.iri(i),
            Term::Blank(b) => format!("_:{}", b.label()),
            Term::Literal(l) => self.literal(l),
        }
    }
}

/// Groups triples per subject, `rdf:type` first as `a`, objects of one
/// predicate joined with `,`.
pub(super) fn turtle(g: &Graph) -> Vec<u8> {
    let mut terms = TurtleTerms {
        prefixes: g.prefixes(),
        used: BTreeSet::new(),
    };
    let mut subjects: BTreeMap<&Term, BTreeMap<(bool, &Iri), Vec<&Term>>> = BTreeMap::new();
    for t in g.iter() {
        let is_type = t.predicate().as_str() == vocab::rdf::TYPE;
        subjects
            .entry(t.subject())
            .or_default()
            .entry((!is_type, t.predicate()))
            .or_default()
            .push(t.object());
    }
    let mut body = String::new();
    for (subject, preds) in &subjects {
        body.push_str(&terms.term(subject));
        let n = preds.len();
        for (i, ((not_type, pred), objects)) in preds.iter().enumerate() {
            let p = if *not_type { terms.iri(pred) } else { "a".to_string() };
            let objs: Vec<String> = objects.iter().map(|o| terms.term(o)).collect();
            if i == 0 {
                body.push(' ');
            } else {
                body.push_str("  ");
            }
            let _ = write!(body, "{p} {}", objs.join(", "));
            body.push_str(if i + 1 == n { " .\n" } else { ";\n" });
        }
        body.push('\n');
    }
    let mut out = String::new();
    for p in &terms.used {
        let _ = writeln!(out, "@prefix {p}: <{}> .", g.prefixes()[*p].as_str());
    }
    if !terms.used.is_empty() && !body.is_empty() {
        out.push('\n');
    }
    out.push_str(&body);
    out.into_bytes()
}

fn xml_escape(s: &str, attr: bool) -> Result<String, SerializeError> {
    let mut out = String::with_capacity(s.len());
    for c in s.chars() {
        match c {
            '&' => out.push_str("&amp;"),
            '<' => out.push_str("&lt;"),
            '>' => out.push_str("&gt;"),
            '"' if attr => out.push_str("&quot;"),
            '\r' => out.push_str("&#13;"),
            '\n' if attr => out.push_str("&#10;"),
            '\t' if attr => out.push_str("&#9;"),
            c if (c as u32) < 0x20 && !matches!(c, '\n' | '\t') => {
                return Err(SerializeError::UnserializableTerm(format!(
                    "character U+{:04X} cannot appear in XML",
                    c as u32
                )))
            }
            '\u{FFFE}' | '\u{FFFF}' => {
                return Err(SerializeError::UnserializableTerm("non-character in XML".into()))
            }
            c => out.push(c),
        }
    }
    Ok(out)
}

/// Namespaces are declared once on the root; every element name is prefixed.
pub(super) fn rdfxml(g: &Graph) -> Result<Vec<u8>, SerializeError> {
    let mut ns: BTreeMap<String, String> = g
        .prefixes()
        .iter()
        .map(|(p, i)| (p.clone(), i.as_str().to_string()))
        .collect();
    ns.insert("rdf".into(), vocab::rdf::NS.into());
    let mut minted = 0;
    let mut qnames: BTreeMap<&str, String> = BTreeMap::new();
    for t in g.iter() {
        let p = t.predicate().as_str();
        if qnames.contains_key(p) {
            continue;
        }
        let bound = ns
            .iter()
            .filter(|(_, n)| p.starts_with(n.as_str()) && is_ncname(&p[n.len()..]))
            .max_by_key(|(_, n)| n.len())
            .map(|(pre, n)| format!("{pre}:{}", &p[n.len()..]));
        let qname = match bound {
            Some(q) => q,
            None => {
                let split = p.rfind(['#', '/']).map(|i| i + 1);
                let (space, local) = match split {
                    Some(i) if is_ncname(&p[i..]) => (&p[..i], &p[i..]),
                    _ => {
                        return Err(SerializeError::UnserializableTerm(format!(
                            "predicate <{p}> has no XML-qualified-name form"
                        )))
                    }
                };
                let prefix = loop {
                    let cand = format!("ns{minted}");
                    minted += 1;
                    if !ns.contains_key(&cand) {
                        break cand;
                    }
                };
                ns.insert(prefix.clone(), space.to_string());
                format!("{prefix}:{local}")
            }
        };
        qnames.insert(p, qname);
    }
    let used_prefixes: BTreeSet<&str> = qnames
        .values()
        .map(|q| q.split(':').next().unwrap())
        .chain(std::iter::once("rdf"))
        .collect();

    let mut out = String::from("<?xml version=\"1.0\" encoding=\"UTF-8\"?>\n<rdf:RDF");
    for p in &used_prefixes {
        let _ = write!(out, "\n    xmlns:{p}=\"{}\"", xml_escape(&ns[*p], true)?);
    }
    out.push_str(">\n");
    let mut current: Option<&Term> = None;
    for t in g.iter() {
        if current != Some(t.subject()) {
            if current.is_some() {
                out.push_str("  </rdf:Description>\n");
            }
            match t.subject() {
                Term::Iri(i) => {
                    let _ = writeln!(out, "  <rdf:Description rdf:about=\"{}\">", xml_escape(i.as_str(), true)?);
                }
                Term::Blank(b) => {
                    let _ = writeln!(out, "  <rdf:Description rdf:nodeID=\"{}\">", xml_escape(b.label(), true)?);
                }
                Term::Literal(_) => unreachable!("triples never have literal subjects"),
            }
            current = Some(t.subject());
        }
        let q = &qnames[t.predicate().as_str()];
        match t.object() {
            Term::Iri(i) => {
                let _ = writeln!(out, "    <{q} rdf:resource=\"{}\"/>", xml_escape(i.as_str(), true)?);
            }
            Term::Blank(b) => {
                let _ = writeln!(out, "    <{q} rdf:nodeID=\"{}\"/>", xml_escape(b.label(), true)?);
            }
            Term::Literal(l) => {
                let attr = match (l.language(), l.datatype().as_str()) {
                    (Some(tag), _) => format!(" xml:lang=\"{tag}\""),
                    (None, vocab::xsd::STRING) => String::new(),
                    (None, dt) => format!(" rdf:datatype=\"{}\"", xml_escape(dt, true)?),
                };
                let _ = writeln!(out, "    <{q}{attr}>{}</{q}>", xml_escape(l.lexical(), false)?);
            }
        }
    }
    if current.is_some() {
        out.push_str("  </rdf:Description>\n");
    }
    out.push_str("</rdf:RDF>\n");
    Ok(out.into_bytes())
}

struct JsonTerms<'a> {
    prefixes: &'a BTreeMap<String, Iri>,
    used: BTreeSet<&'a str>,
}

impl<'a> JsonTerms<'a> {
    fn iri(&mut self, iri: &'a Iri) -> String {
        match compact(iri.as_str(), self.prefixes) {
            Some((p, l)) => {
                self.used.insert(p);
                format!("{p}:{l}")
            }
            None => iri.as_str().to_string(),
        }
    }

    fn node_id(&mut self, t: &'a Term) -> String {
        match t {
            Term::Iri(i) => self.iri(i),
            Term::Blank(b) => format!("_:{}", b.label()),
            Term::Literal(_) => unreachable!("node ids are never literals"),
        }
    }

    fn value(&mut self, t: &'a Term) -> Value {
        match t {
            Term::Literal(l) => match (l.language(), l.datatype().as_str()) {
                (Some(tag), _) => json!({"@value": l.lexical(), "@language": tag}),
                (None, vocab::xsd::STRING) => json!({"@value": l.lexical()}),
                (None, _) => json!({"@value": l.lexical(), "@type": self.iri(l.datatype())}),
            },
            other => json!({"@id": self.node_id(other)}),
        }
    }
}

/// Flat node map with a single context built from the prefixes in use.
pub(super) fn jsonld(g: &Graph) -> Vec<u8> {
    let mut terms = JsonTerms {
        prefixes: g.prefixes(),
        used: BTreeSet::new(),
    };
    let mut nodes: BTreeMap<&Term, Map<String, Value>> = BTreeMap::new();
    for t in g.iter() {
        let node = nodes.entry(t.subject()).or_default();
        let (key, value) = match (t.predicate().as_str(), t.object()) {
            (vocab::rdf::TYPE, Term::Iri(class)) => ("@type".to_string(), Value::String(terms.iri(class))),
            _ => (terms.iri(t.predicate()), terms.value(t.object())),
        };
        match node.entry(key).or_insert_with(|| Value::Array(Vec::new())) {
            Value::Array(values) => values.push(value),
            _ => unreachable!(),
        }
    }
    let graph: Vec<Value> = nodes
        .into_iter()
        .map(|(subject, mut props)| {
            props.insert("@id".into(), Value::String(terms.node_id(subject)));
            Value::Object(props)
        })
        .collect();
    let context: Map<String, Value> = terms
        .used
        .iter()
        .map(|p| (p.to_string(), Value::String(g.prefixes()[*p].as_str().to_string())))
        .collect();
    let doc = json!({"@context": context, "@graph": graph});
    let mut out = serde_json::to_vec(&doc).expect("JSON values always serialize");
    out.push(b'\n');
    out
}
