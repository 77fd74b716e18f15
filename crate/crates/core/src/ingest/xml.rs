use std::collections::BTreeMap;

use roxmltree::{Document, Node, ParsingOptions};

use super::IngestError;
use crate::aas::*;

const AAS_NAMESPACE_ROOTS: &[&str] = &["http://www.admin-shell.io/", "https://admin-shell.io/"];

pub(super) fn decode(doc: &[u8]) -> Result<&str, IngestError> {
    let doc = doc.strip_prefix(b"\xEF\xBB\xBF").unwrap_or(doc);
    std::str::from_utf8(doc).map_err(|e| {
        let prefix = &doc[..e.valid_up_to()];
        let line = prefix.iter().filter(|b| **b == b'\n').count() + 1;
        let col = prefix.len() - prefix.iter().rposition(|b| *b == b'\n').map_or(0, |p| p + 1) + 1;
        IngestError::XmlSyntax {
            line: line as u32,
            col: col as u32,
            message: "invalid UTF-8".into(),
        }
    })
}

pub(super) fn parse_document(text: &str) -> Result<Document<'_>, IngestError> {
    let opts = ParsingOptions {
        allow_dtd: true,
        ..ParsingOptions::default()
    };
    Document::parse_with_options(text, opts).map_err(|e| {
        let pos = e.pos();
        IngestError::XmlSyntax {
            line: pos.row,
            col: pos.col,
            message: e.to_string(),
        }
    })
}

/// Elements in no namespace or in one of the AAS / IEC 61360 namespaces.
fn is_aas(node: &Node) -> bool {
    node.is_element()
        && match node.tag_name().namespace() {
            None => true,
            Some(ns) => AAS_NAMESPACE_ROOTS.iter().any(|root| ns.starts_with(root)),
        }
}

fn is_named(node: &Node, name: &str) -> bool {
    is_aas(node) && node.tag_name().name() == name
}

fn children<'a, 'i>(node: Node<'a, 'i>) -> impl Iterator<Item = Node<'a, 'i>> {
    node.children().filter(|c| c.is_element())
}

fn child<'a, 'i>(node: Node<'a, 'i>, name: &str) -> Option<Node<'a, 'i>> {
    children(node).find(|c| is_named(c, name))
}

struct Ctx<'i> {
    source: &'i str,
}

impl<'i> Ctx<'i> {
    fn violation(&self, path: &str, reason: impl Into<String>) -> IngestError {
        IngestError::SchemaViolation {
            path: path.to_string(),
            reason: reason.into(),
        }
    }

    /// Trimmed text of a value-bearing node; element content is rejected.
    fn text(&self, node: Node, path: &str) -> Result<String, IngestError> {
        if children(node).next().is_some() {
            return Err(self.violation(
                path,
                format!("<{}> must hold text, found element content", node.tag_name().name()),
            ));
        }
        let text: String = node.children().filter_map(|c| c.text()).collect();
        Ok(text.trim().to_string())
    }

    fn extra(&self, node: Node) -> Extra {
        Extra {
            name: node.tag_name().name().to_string(),
            raw: self.source[node.range()].to_string(),
        }
    }

    fn identification(&self, node: Node, path: &str) -> Result<Identifier, IngestError> {
        let id = child(node, "identification")
            .ok_or_else(|| self.violation(path, "missing identification"))?;
        let p = format!("{path}/identification");
        let value = self.text(id, &p)?;
        if value.is_empty() {
            return Err(self.violation(&p, "empty identification"));
        }
        let id_type = IdType::from_attr(id.attribute("idType").unwrap_or(""));
        Ok(Identifier::new(value, id_type))
    }

    fn id_short(&self, node: Node, path: &str) -> Result<String, IngestError> {
        match child(node, "idShort") {
            Some(n) => self.text(n, &format!("{path}/idShort")),
            None => Ok(String::new()),
        }
    }

    fn lang_strings(&self, node: Node, path: &str) -> Result<Vec<LangString>, IngestError> {
        children(node)
            .filter(|c| c.tag_name().name() == "langString")
            .map(|c| {
                Ok(LangString {
                    lang: c.attribute("lang").unwrap_or("").trim().to_string(),
                    text: self.text(c, &format!("{path}/langString"))?,
                })
            })
            .collect()
    }

    fn descriptions(&self, node: Node, path: &str) -> Result<Vec<LangString>, IngestError> {
        let mut out = Vec::new();
        for d in children(node).filter(|c| is_named(c, "description")) {
            out.extend(self.lang_strings(d, &format!("{path}/description"))?);
        }
        Ok(out)
    }

    fn key(&self, node: Node, path: &str) -> Result<Key, IngestError> {
        let key_type = node.attribute("type").unwrap_or("").trim().to_string();
        let value = self.text(node, path)?;
        if key_type.is_empty() {
            return Err(self.violation(path, "key without type"));
        }
        if value.is_empty() {
            return Err(self.violation(path, "key without value"));
        }
        Ok(Key {
            key_type,
            local: node.attribute("local").map(|v| v.trim() == "true").unwrap_or(false),
            id_type: IdType::from_attr(node.attribute("idType").unwrap_or("")),
            value,
        })
    }

    /// A reference node wraps `<keys>`; an empty key list yields `None`.
    fn reference(&self, node: Node, path: &str) -> Result<Option<Reference>, IngestError> {
        let keys_node = match child(node, "keys") {
            Some(k) => k,
            None => return Ok(None),
        };
        let keys = children(keys_node)
            .filter(|c| is_named(c, "key"))
            .enumerate()
            .map(|(i, k)| self.key(k, &format!("{path}/keys/key[{}]", i + 1)))
            .collect::<Result<Vec<_>, _>>()?;
        Ok(Reference::new(keys))
    }

    fn kind(&self, node: Node, path: &str) -> Result<Option<Kind>, IngestError> {
        let kinds: Vec<_> = children(node).filter(|c| is_named(c, "kind")).collect();
        match kinds.as_slice() {
            [] => Ok(None),
            [k] => {
                let p = format!("{path}/kind");
                let text = self.text(*k, &p)?;
                Kind::parse(&text)
                    .map(Some)
                    .ok_or_else(|| self.violation(&p, format!("unknown kind {text:?}")))
            }
            _ => Err(self.violation(path, "kind given more than once")),
        }
    }

    fn shell(&self, node: Node, path: &str) -> Result<AdministrationShell, IngestError> {
        let mut shell = AdministrationShell {
            identification: self.identification(node, path)?,
            id_short: self.id_short(node, path)?,
            descriptions: self.descriptions(node, path)?,
            asset_refs: Vec::new(),
            submodel_refs: Vec::new(),
            extras: Vec::new(),
        };
        for c in children(node) {
            let name = c.tag_name().name();
            match name {
                "identification" | "idShort" | "description" if is_aas(&c) => {}
                "assetRef" if is_aas(&c) => {
                    if let Some(r) = self.reference(c, &format!("{path}/assetRef"))? {
                        shell.asset_refs.push(r);
                    }
                }
                "submodelRefs" if is_aas(&c) => {
                    for (i, sr) in children(c).filter(|s| is_named(s, "submodelRef")).enumerate() {
                        let p = format!("{path}/submodelRefs/submodelRef[{}]", i + 1);
                        if let Some(r) = self.reference(sr, &p)? {
                            shell.submodel_refs.push(r);
                        }
                    }
                }
                _ => shell.extras.push(self.extra(c)),
            }
        }
        Ok(shell)
    }

    fn asset(&self, node: Node, path: &str) -> Result<Asset, IngestError> {
        let kind = self
            .kind(node, path)?
            .ok_or_else(|| self.violation(path, "asset without kind"))?;
        Ok(Asset {
            identification: self.identification(node, path)?,
            id_short: self.id_short(node, path)?,
            descriptions: self.descriptions(node, path)?,
            kind,
            extras: children(node)
                .filter(|c| {
                    !(is_aas(c)
                        && matches!(c.tag_name().name(), "identification" | "idShort" | "description" | "kind"))
                })
                .map(|c| self.extra(c))
                .collect(),
        })
    }

    fn submodel(&self, node: Node, path: &str) -> Result<Submodel, IngestError> {
        let mut sm = Submodel {
            identification: self.identification(node, path)?,
            id_short: self.id_short(node, path)?,
            descriptions: self.descriptions(node, path)?,
            kind: self.kind(node, path)?.unwrap_or(Kind::Instance),
            elements: Vec::new(),
            extras: Vec::new(),
        };
        for c in children(node) {
            match c.tag_name().name() {
                "identification" | "idShort" | "description" | "kind" if is_aas(&c) => {}
                "submodelElements" if is_aas(&c) => {
                    sm.elements = self.element_list(c, &format!("{path}/submodelElements"))?;
                }
                _ => sm.extras.push(self.extra(c)),
            }
        }
        Ok(sm)
    }

    /// Children of a container: either `<submodelElement>` wrappers or bare
    /// element nodes.
    fn element_list(&self, node: Node, path: &str) -> Result<Vec<SubmodelElement>, IngestError> {
        let mut out = Vec::new();
        for (i, c) in children(node).filter(is_aas).enumerate() {
            let p = format!("{path}/{}[{}]", c.tag_name().name(), i + 1);
            let inner = if c.tag_name().name() == "submodelElement" {
                match children(c).find(is_aas) {
                    Some(inner) => inner,
                    None => return Err(self.violation(&p, "empty submodelElement wrapper")),
                }
            } else {
                c
            };
            out.push(self.element(inner, &p)?);
        }
        Ok(out)
    }

    fn element(&self, node: Node, path: &str) -> Result<SubmodelElement, IngestError> {
        let name = node.tag_name().name();
        let path = format!("{path}/{name}");
        let id_short_node = child(node, "idShort")
            .ok_or_else(|| self.violation(&path, "submodel element without idShort"))?;
        let id_short = self.text(id_short_node, &format!("{path}/idShort"))?;
        let semantic_id = match child(node, "semanticId") {
            Some(s) => self.reference(s, &format!("{path}/semanticId"))?,
            None => None,
        };
        let optional_text = |field: &str| -> Result<Option<String>, IngestError> {
            match child(node, field) {
                Some(n) => {
                    let t = self.text(n, &format!("{path}/{field}"))?;
                    Ok(if t.is_empty() { None } else { Some(t) })
                }
                None => Ok(None),
            }
        };
        let (kind, consumed): (ElementKind, &[&str]) = match name {
            "property" => (
                ElementKind::Property {
                    value: optional_text("value")?,
                    value_type: optional_text("valueType")?,
                },
                &["value", "valueType"],
            ),
            "submodelElementCollection" => {
                let children = match child(node, "value") {
                    Some(v) => self.element_list(v, &format!("{path}/value"))?,
                    None => Vec::new(),
                };
                (ElementKind::Collection { children }, &["value"])
            }
            "file" => (
                ElementKind::File {
                    mime_type: optional_text("mimeType")?.unwrap_or_default(),
                    path: optional_text("value")?,
                },
                &["mimeType", "value"],
            ),
            "blob" => (
                ElementKind::Blob {
                    mime_type: optional_text("mimeType")?.unwrap_or_default(),
                    content: optional_text("value")?.map_or(BlobContent::Empty, BlobContent::Inline),
                },
                &["mimeType", "value"],
            ),
            "referenceElement" => {
                let target = match child(node, "value") {
                    Some(v) => self.reference(v, &format!("{path}/value"))?,
                    None => None,
                };
                (ElementKind::ReferenceElement { target }, &["value"])
            }
            "operation" => (
                ElementKind::Operation {
                    in_params: self.operation_params(node, &["in", "inputVariable"], &path),
                    out_params: self.operation_params(node, &["out", "outputVariable"], &path),
                },
                &["in", "inputVariable", "out", "outputVariable"],
            ),
            other => (
                ElementKind::Unsupported {
                    element_name: other.to_string(),
                },
                &[],
            ),
        };
        let extras = children(node)
            .filter(|c| {
                let n = c.tag_name().name();
                !(is_aas(c) && (n == "idShort" || n == "semanticId" || consumed.contains(&n)))
            })
            .map(|c| self.extra(c))
            .collect();
        Ok(SubmodelElement {
            id_short,
            semantic_id,
            kind,
            extras,
        })
    }

    /// Best-effort: parameters that fail to parse are dropped, since
    /// operations carry no semantics here.
    fn operation_params(&self, node: Node, names: &[&str], path: &str) -> Vec<SubmodelElement> {
        let mut out = Vec::new();
        for var in children(node).filter(|c| is_aas(c) && names.contains(&c.tag_name().name())) {
            let holder = child(var, "value").unwrap_or(var);
            if let Ok(elements) = self.element_list(holder, path) {
                out.extend(elements);
            }
        }
        out
    }

    fn concept_description(&self, node: Node, path: &str) -> Result<ConceptDescription, IngestError> {
        let mut cd = ConceptDescription {
            identification: self.identification(node, path)?,
            id_short: self.id_short(node, path)?,
            definitions: self.descriptions(node, path)?,
            attributes: BTreeMap::new(),
            extras: Vec::new(),
        };
        for c in children(node) {
            match c.tag_name().name() {
                "identification" | "idShort" | "description" if is_aas(&c) => {}
                "embeddedDataSpecification" if is_aas(&c) => {
                    let content = c
                        .descendants()
                        .find(|d| d.is_element() && d.tag_name().name() == "dataSpecificationIEC61360");
                    if let Some(content) = content {
                        self.iec61360(content, &format!("{path}/embeddedDataSpecification"), &mut cd)?;
                    }
                }
                _ => cd.extras.push(self.extra(c)),
            }
        }
        Ok(cd)
    }

    fn iec61360(&self, node: Node, path: &str, cd: &mut ConceptDescription) -> Result<(), IngestError> {
        for attr in children(node).filter(is_aas) {
            let name = attr.tag_name().name();
            let p = format!("{path}/{name}");
            let langs: Vec<_> = children(attr).filter(|c| c.tag_name().name() == "langString").collect();
            if name == "definition" {
                cd.definitions.extend(self.lang_strings(attr, &p)?);
            } else if !langs.is_empty() {
                for ls in self.lang_strings(attr, &p)? {
                    if !ls.text.is_empty() {
                        cd.attributes.insert(AttributeKey::with_lang(name, &ls.lang), ls.text);
                    }
                }
            } else if child(attr, "keys").is_some() {
                if let Some(r) = self.reference(attr, &p)? {
                    cd.attributes.insert(AttributeKey::plain(name), r.target().value.clone());
                }
            } else if children(attr).next().is_none() {
                let text = self.text(attr, &p)?;
                if !text.is_empty() {
                    cd.attributes.insert(AttributeKey::plain(name), text);
                }
            }
            // Other structured content (value lists, ...) is not modelled.
        }
        Ok(())
    }
}

pub(super) fn parse_environment(doc: &[u8]) -> Result<AasEnvironment, IngestError> {
    let text = decode(doc)?;
    let document = parse_document(text)?;
    let ctx = Ctx { source: text };
    let root = document.root_element();
    if !is_named(&root, "aasenv") {
        return Err(ctx.violation(
            &format!("/{}", root.tag_name().name()),
            "root element must be aasenv",
        ));
    }
    let mut env = AasEnvironment::default();
    for section in children(root).filter(is_aas) {
        let section_name = section.tag_name().name();
        let item_name = match section_name {
            "assetAdministrationShells" => "assetAdministrationShell",
            "assets" => "asset",
            "submodels" => "submodel",
            "conceptDescriptions" => "conceptDescription",
            _ => continue,
        };
        for (i, item) in children(section).filter(|c| is_named(c, item_name)).enumerate() {
            let path = format!("/aasenv/{section_name}/{item_name}[{}]", i + 1);
            match item_name {
                "assetAdministrationShell" => env.shells.push(ctx.shell(item, &path)?),
                "asset" => env.assets.push(ctx.asset(item, &path)?),
                "submodel" => env.submodels.push(ctx.submodel(item, &path)?),
                _ => env.concept_descriptions.push(ctx.concept_description(item, &path)?),
            }
        }
    }
    Ok(env)
}
