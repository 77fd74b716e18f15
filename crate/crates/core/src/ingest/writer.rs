//! Test-only AAS XML writer used to check that parsing preserves structure.

use crate::aas::*;

fn esc(s: &str) -> String {
    s.replace('&', "&amp;").replace('<', "&lt;").replace('>', "&gt;").replace('"', "&quot;")
}

fn ident(out: &mut String, id: &Identifier) {
    out.push_str(&format!(
        "<aas:identification idType=\"{}\">{}</aas:identification>",
        id.id_type,
        esc(&id.value)
    ));
}

fn descriptions(out: &mut String, ds: &[LangString]) {
    if ds.is_empty() {
        return;
    }
    out.push_str("<aas:description>");
    for d in ds {
        out.push_str(&format!("<aas:langString lang=\"{}\">{}</aas:langString>", esc(&d.lang), esc(&d.text)));
    }
    out.push_str("</aas:description>");
}

fn reference(out: &mut String, tag: &str, r: &Reference) {
    out.push_str(&format!("<aas:{tag}><aas:keys>"));
    for k in r.keys() {
        out.push_str(&format!(
            "<aas:key type=\"{}\" local=\"{}\" idType=\"{}\">{}</aas:key>",
            esc(&k.key_type),
            k.local,
            k.id_type,
            esc(&k.value)
        ));
    }
    out.push_str(&format!("</aas:keys></aas:{tag}>"));
}

fn element(out: &mut String, e: &SubmodelElement) {
    let tag = match &e.kind {
        ElementKind::Property { .. } => "property",
        ElementKind::Collection { .. } => "submodelElementCollection",
        ElementKind::File { .. } => "file",
        ElementKind::Blob { .. } => "blob",
        ElementKind::ReferenceElement { .. } => "referenceElement",
        ElementKind::Operation { .. } => "operation",
        ElementKind::Unsupported { element_name } => element_name.as_str(),
    };
    out.push_str(&format!("<aas:submodelElement><aas:{tag}><aas:idShort>{}</aas:idShort>", esc(&e.id_short)));
    if let Some(s) = &e.semantic_id {
        reference(out, "semanticId", s);
    }
    match &e.kind {
        ElementKind::Property { value, value_type } => {
            if let Some(v) = value {
                out.push_str(&format!("<aas:value>{}</aas:value>", esc(v)));
            }
            if let Some(v) = value_type {
                out.push_str(&format!("<aas:valueType>{}</aas:valueType>", esc(v)));
            }
        }
        ElementKind::Collection { children } => {
            out.push_str("<aas:value>");
            for c in children {
                element(out, c);
            }
            out.push_str("</aas:value>");
        }
        ElementKind::File { mime_type, path } => {
            out.push_str(&format!("<aas:mimeType>{}</aas:mimeType>", esc(mime_type)));
            if let Some(p) = path {
                out.push_str(&format!("<aas:value>{}</aas:value>", esc(p)));
            }
        }
        ElementKind::Blob { mime_type, content } => {
            out.push_str(&format!("<aas:mimeType>{}</aas:mimeType>", esc(mime_type)));
            if let BlobContent::Inline(c) = content {
                out.push_str(&format!("<aas:value>{}</aas:value>", esc(c)));
            }
        }
        ElementKind::ReferenceElement { target } => {
            if let Some(t) = target {
                reference(out, "value", t);
            }
        }
        ElementKind::Operation { .. } | ElementKind::Unsupported { .. } => {}
    }
    out.push_str(&format!("</aas:{tag}></aas:submodelElement>"));
}

pub fn write_environment(env: &AasEnvironment) -> String {
    let mut out = String::from(
        "<?xml version=\"1.0\"?>\n<aas:aasenv xmlns:aas=\"http://www.admin-shell.io/aas/1/0\" \
         xmlns:IEC61360=\"http://www.admin-shell.io/IEC61360/1/0\">",
    );
    out.push_str("<aas:assetAdministrationShells>");
    for s in &env.shells {
        out.push_str("<aas:assetAdministrationShell>");
        out.push_str(&format!("<aas:idShort>{}</aas:idShort>", esc(&s.id_short)));
        descriptions(&mut out, &s.descriptions);
        ident(&mut out, &s.identification);
        for r in &s.asset_refs {
            reference(&mut out, "assetRef", r);
        }
        out.push_str("<aas:submodelRefs>");
        for r in &s.submodel_refs {
            reference(&mut out, "submodelRef", r);
        }
        out.push_str("</aas:submodelRefs></aas:assetAdministrationShell>");
    }
    out.push_str("</aas:assetAdministrationShells><aas:assets>");
    for a in &env.assets {
        out.push_str("<aas:asset>");
        out.push_str(&format!("<aas:idShort>{}</aas:idShort>", esc(&a.id_short)));
        descriptions(&mut out, &a.descriptions);
        ident(&mut out, &a.identification);
        out.push_str(&format!("<aas:kind>{}</aas:kind></aas:asset>", a.kind.as_str()));
    }
    out.push_str("</aas:assets><aas:submodels>");
    for sm in &env.submodels {
        out.push_str("<aas:submodel>");
        out.push_str(&format!("<aas:idShort>{}</aas:idShort>", esc(&sm.id_short)));
        descriptions(&mut out, &sm.descriptions);
        ident(&mut out, &sm.identification);
        out.push_str(&format!("<aas:kind>{}</aas:kind><aas:submodelElements>", sm.kind.as_str()));
        for e in &sm.elements {
            element(&mut out, e);
        }
        out.push_str("</aas:submodelElements></aas:submodel>");
    }
    out.push_str("</aas:submodels><aas:conceptDescriptions>");
    for cd in &env.concept_descriptions {
        out.push_str("<aas:conceptDescription>");
        out.push_str(&format!("<aas:idShort>{}</aas:idShort>", esc(&cd.id_short)));
        ident(&mut out, &cd.identification);
        out.push_str(
            "<aas:embeddedDataSpecification><aas:dataSpecificationContent><aas:dataSpecificationIEC61360>",
        );
        if !cd.definitions.is_empty() {
            out.push_str("<IEC61360:definition>");
            for d in &cd.definitions {
                out.push_str(&format!(
                    "<IEC61360:langString lang=\"{}\">{}</IEC61360:langString>",
                    esc(&d.lang),
                    esc(&d.text)
                ));
            }
            out.push_str("</IEC61360:definition>");
        }
        for (k, v) in &cd.attributes {
            match &k.lang {
                Some(l) => out.push_str(&format!(
                    "<IEC61360:{0}><IEC61360:langString lang=\"{1}\">{2}</IEC61360:langString></IEC61360:{0}>",
                    k.name,
                    esc(l),
                    esc(v)
                )),
                None => out.push_str(&format!("<IEC61360:{0}>{1}</IEC61360:{0}>", k.name, esc(v))),
            }
        }
        out.push_str(
            "</aas:dataSpecificationIEC61360></aas:dataSpecificationContent></aas:embeddedDataSpecification>",
        );
        out.push_str("</aas:conceptDescription>");
    }
    out.push_str("</aas:conceptDescriptions></aas:aasenv>\n");
    out
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::ingest::{parse_environment, xml_metrics};
    use proptest::prelude::*;
    use std::collections::BTreeMap;

    /// Independent element counter: a stack scan over tags. Only handles the
    /// writer's output (no comments, CDATA or '>' inside attributes).
    fn scan_counts(doc: &str) -> (usize, usize) {
        let mut nodes = 0;
        let mut leaves = 0;
        let mut stack: Vec<bool> = Vec::new(); // has element child
        let mut rest = doc;
        while let Some(start) = rest.find('<') {
            let end = start + rest[start..].find('>').unwrap();
            let tag = &rest[start + 1..end];
            rest = &rest[end + 1..];
            if tag.starts_with('?') || tag.starts_with('!') {
                continue;
            }
            if tag.starts_with('/') {
                let had_child = stack.pop().unwrap();
                if !had_child {
                    leaves += 1;
                }
                continue;
            }
            nodes += 1;
            if let Some(parent) = stack.last_mut() {
                *parent = true;
            }
            if tag.ends_with('/') {
                leaves += 1;
            } else {
                stack.push(false);
            }
        }
        (nodes, leaves)
    }

    fn id_type() -> impl Strategy<Value = IdType> {
        prop_oneof![Just(IdType::Uri), Just(IdType::Irdi), Just(IdType::Custom)]
    }

    fn identifier() -> impl Strategy<Value = Identifier> {
        ("[a-z]{1,6}", id_type()).prop_map(|(v, t)| Identifier::new(format!("http://ex.org/{v}"), t))
    }

    fn leaf_element() -> impl Strategy<Value = SubmodelElement> {
        ("[a-zA-Z]{1,8}", proptest::option::of("[0-9]{1,3}")).prop_map(|(id, v)| SubmodelElement {
            id_short: id,
            semantic_id: None,
            kind: ElementKind::Property {
                value: v,
                value_type: Some("int".into()),
            },
            extras: vec![],
        })
    }

    fn element_tree() -> impl Strategy<Value = SubmodelElement> {
        leaf_element().prop_recursive(3, 20, 4, |inner| {
            ("[a-z]{1,6}", prop::collection::vec(inner, 0..4)).prop_map(|(id, children)| SubmodelElement {
                id_short: id,
                semantic_id: None,
                kind: ElementKind::Collection { children },
                extras: vec![],
            })
        })
    }

    fn environment() -> impl Strategy<Value = AasEnvironment> {
        let shell = (identifier(), "[a-z]{0,5}").prop_map(|(identification, id_short)| AdministrationShell {
            identification,
            id_short,
            descriptions: vec![LangString {
                lang: "en".into(),
                text: "d".into(),
            }],
            asset_refs: vec![],
            submodel_refs: vec![],
            extras: vec![],
        });
        let asset = identifier().prop_map(|identification| Asset {
            identification,
            id_short: "a".into(),
            descriptions: vec![],
            kind: Kind::Instance,
            extras: vec![],
        });
        let sm = (identifier(), prop::collection::vec(element_tree(), 0..4)).prop_map(|(identification, elements)| {
            Submodel {
                identification,
                id_short: "sm".into(),
                descriptions: vec![],
                kind: Kind::Type,
                elements,
                extras: vec![],
            }
        });
        let cd = identifier().prop_map(|identification| ConceptDescription {
            identification,
            id_short: "cd".into(),
            definitions: vec![],
            attributes: BTreeMap::from([(AttributeKey::plain("unit"), "mm".to_string())]),
            extras: vec![],
        });
        (
            prop::collection::vec(shell, 0..3),
            prop::collection::vec(asset, 0..3),
            prop::collection::vec(sm, 0..3),
            prop::collection::vec(cd, 0..3),
        )
            .prop_map(|(shells, assets, submodels, concept_descriptions)| AasEnvironment {
                shells,
                assets,
                submodels,
                concept_descriptions,
            })
    }

    proptest! {
        #[test]
        fn write_then_parse_preserves_census(env in environment()) {
            let xml = write_environment(&env);
            let parsed = parse_environment(xml.as_bytes()).unwrap();
            prop_assert_eq!(parsed.census(), env.census());
            // Deterministic parse.
            prop_assert_eq!(&parsed, &parse_environment(xml.as_bytes()).unwrap());
        }

        #[test]
        fn metrics_agree_with_tag_scan(env in environment()) {
            let xml = write_environment(&env);
            let m = xml_metrics(xml.as_bytes()).unwrap();
            let (nodes, leaves) = scan_counts(&xml);
            prop_assert_eq!(m.node_count, nodes);
            prop_assert_eq!(m.leaf_count, leaves);
            prop_assert!(m.leaf_count <= m.node_count);
            let parsed = parse_environment(xml.as_bytes()).unwrap();
            prop_assert!(parsed.census().total() <= m.leaf_count);
        }

        #[test]
        fn census_ignores_member_order(env in environment()) {
            let mut rev = env.clone();
            rev.shells.reverse();
            rev.assets.reverse();
            rev.submodels.reverse();
            rev.concept_descriptions.reverse();
            prop_assert_eq!(rev.census(), env.census());
        }
    }
}
