//! Reading AAS XML documents and AASX containers.

mod xml;
#[cfg(test)]
mod writer;

use std::io::{Cursor, Read};

use thiserror::Error;

use crate::aas::AasEnvironment;

#[derive(Debug, Error)]
pub enum IngestError {
    #[error("XML syntax error at {line}:{col}: {message}")]
    XmlSyntax { line: u32, col: u32, message: String },
    #[error("schema violation at {path}: {reason}")]
    SchemaViolation { path: String, reason: String },
    #[error("not a ZIP archive: {0}")]
    NotAnArchive(String),
    #[error("archive contains no aasenv XML document")]
    NoEnvironmentFound,
    #[error("reading archive entry {name}: {source}")]
    Archive {
        name: String,
        #[source]
        source: std::io::Error,
    },
}

/// Element and leaf counts of an XML tree. A leaf is an element without
/// element children; text does not count as a child.
#[derive(Debug, Clone, Copy, Default, PartialEq, Eq)]
pub struct XmlMetrics {
    pub node_count: usize,
    pub leaf_count: usize,
}

/// Parses an `aasenv` document. Namespace prefixes are irrelevant: elements
/// match on local name within the AAS namespaces (or no namespace).
pub fn parse_environment(doc: &[u8]) -> Result<AasEnvironment, IngestError> {
    xml::parse_environment(doc)
}

pub fn xml_metrics(doc: &[u8]) -> Result<XmlMetrics, IngestError> {
    let text = xml::decode(doc)?;
    let document = xml::parse_document(text)?;
    let mut metrics = XmlMetrics::default();
    for node in document.descendants().filter(|n| n.is_element()) {
        metrics.node_count += 1;
        if !node.children().any(|c| c.is_element()) {
            metrics.leaf_count += 1;
        }
    }
    Ok(metrics)
}

pub fn is_zip(bytes: &[u8]) -> bool {
    bytes.starts_with(b"PK\x03\x04") || bytes.starts_with(b"PK\x05\x06")
}

fn is_aasenv(bytes: &[u8]) -> bool {
    let Ok(text) = xml::decode(bytes) else {
        return false;
    };
    match xml::parse_document(text) {
        Ok(doc) => doc.root_element().tag_name().name() == "aasenv",
        Err(_) => false,
    }
}

/// Every `.xml` entry of an AASX container whose root element is `aasenv`,
/// in archive order.
pub fn extract_aasx(archive: &[u8]) -> Result<Vec<(String, Vec<u8>)>, IngestError> {
    let mut zip = zip::ZipArchive::new(Cursor::new(archive))
        .map_err(|e| IngestError::NotAnArchive(e.to_string()))?;
    let mut found = Vec::new();
    for i in 0..zip.len() {
        let mut entry = zip
            .by_index(i)
            .map_err(|e| IngestError::NotAnArchive(e.to_string()))?;
        let name = entry.name().to_string();
        if entry.is_dir() || !name.to_ascii_lowercase().ends_with(".xml") {
            continue;
        }
        let mut bytes = Vec::with_capacity(entry.size() as usize);
        entry
            .read_to_end(&mut bytes)
            .map_err(|source| IngestError::Archive { name: name.clone(), source })?;
        if is_aasenv(&bytes) {
            found.push((name, bytes));
        }
    }
    if found.is_empty() {
        return Err(IngestError::NoEnvironmentFound);
    }
    Ok(found)
}

/// The XML document behind `bytes`: the bytes themselves, or the first
/// `aasenv` entry when `bytes` is an AASX container.
pub fn environment_document(bytes: &[u8]) -> Result<Vec<u8>, IngestError> {
    if is_zip(bytes) {
        let mut docs = extract_aasx(bytes)?;
        Ok(docs.swap_remove(0).1)
    } else {
        Ok(bytes.to_vec())
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::aas::{ElementKind, IdType};
    use std::io::Write;

    pub(crate) const PI_SHELL: &str = r#"<?xml version="1.0"?>
<aas:aasenv xmlns:aas="http://www.admin-shell.io/aas/1/0" xmlns:IEC61360="http://www.admin-shell.io/IEC61360/1/0">
  <aas:assetAdministrationShells>
    <aas:assetAdministrationShell>
      <aas:idShort>RaspberryPiModel3B+</aas:idShort>
      <aas:identification idType="URI">
        http://iais.fraunhofer.de/en/aas/examples/raspberry_pi_3b_plus
      </aas:identification>
      <aas:assetRef>
        <aas:keys>
          <aas:key type="Asset" local="true" idType="URI">
          http://iais.fraunhofer.de/en/aas/devices/rspbry/755003377
          </aas:key>
        </aas:keys>
      </aas:assetRef>
    </aas:assetAdministrationShell>
  </aas:assetAdministrationShells>
</aas:aasenv>"#;

    #[test]
    fn parses_pi_shell() {
        let env = parse_environment(PI_SHELL.as_bytes()).unwrap();
        assert_eq!(env.shells.len(), 1);
        let shell = &env.shells[0];
        assert_eq!(shell.id_short, "RaspberryPiModel3B+");
        assert_eq!(shell.identification.id_type, IdType::Uri);
        assert_eq!(
            shell.identification.value,
            "http://iais.fraunhofer.de/en/aas/examples/raspberry_pi_3b_plus"
        );
        let key = shell.asset_refs[0].target();
        assert_eq!(key.key_type, "Asset");
        assert!(key.local);
        assert_eq!(key.value, "http://iais.fraunhofer.de/en/aas/devices/rspbry/755003377");
    }

    #[test]
    fn empty_env() {
        let env = parse_environment(b"<aas:aasenv xmlns:aas=\"http://www.admin-shell.io/aas/1/0\"/>").unwrap();
        assert!(env.is_empty());
        assert!(parse_environment(b"<aasenv/>").unwrap().is_empty());
    }

    #[test]
    fn missing_identification_is_schema_violation() {
        let doc = PI_SHELL.replace(
            r#"<aas:identification idType="URI">
        http://iais.fraunhofer.de/en/aas/examples/raspberry_pi_3b_plus
      </aas:identification>"#,
            "",
        );
        match parse_environment(doc.as_bytes()) {
            Err(IngestError::SchemaViolation { path, reason }) => {
                assert_eq!(path, "/aasenv/assetAdministrationShells/assetAdministrationShell[1]");
                assert_eq!(reason, "missing identification");
            }
            other => panic!("unexpected {other:?}"),
        }
    }

    #[test]
    fn syntax_error_has_position() {
        match parse_environment(b"<aasenv>\n  <a></b>\n</aasenv>") {
            Err(IngestError::XmlSyntax { line, .. }) => assert_eq!(line, 2),
            other => panic!("unexpected {other:?}"),
        }
    }

    #[test]
    fn mixed_content_rejected() {
        let doc = PI_SHELL.replace(
            "<aas:idShort>RaspberryPiModel3B+</aas:idShort>",
            "<aas:idShort>Raspberry<aas:b/>Pi</aas:idShort>",
        );
        assert!(matches!(
            parse_environment(doc.as_bytes()),
            Err(IngestError::SchemaViolation { .. })
        ));
    }

    #[test]
    fn foreign_namespace_children_are_kept_as_extras() {
        let doc = PI_SHELL.replace(
            "<aas:idShort>RaspberryPiModel3B+</aas:idShort>",
            "<aas:idShort>RaspberryPiModel3B+</aas:idShort><x:note xmlns:x=\"urn:x\">hi</x:note><aas:category>C</aas:category>",
        );
        let env = parse_environment(doc.as_bytes()).unwrap();
        let names: Vec<_> = env.shells[0].extras.iter().map(|e| e.name.as_str()).collect();
        assert_eq!(names, ["note", "category"]);
        assert!(env.shells[0].extras[0].raw.contains("hi"));
    }

    #[test]
    fn prefix_is_irrelevant() {
        let doc = PI_SHELL.replace("aas:", "a:").replace("xmlns:aas=", "xmlns:a=");
        let env = parse_environment(doc.as_bytes()).unwrap();
        assert_eq!(env.shells.len(), 1);
    }

    #[test]
    fn metrics_hand_counts() {
        assert_eq!(
            xml_metrics(b"<a><b/><c>t</c></a>").unwrap(),
            XmlMetrics { node_count: 3, leaf_count: 2 }
        );
        assert_eq!(
            xml_metrics(b"<a/>").unwrap(),
            XmlMetrics { node_count: 1, leaf_count: 1 }
        );
        assert!(matches!(xml_metrics(b"<a>"), Err(IngestError::XmlSyntax { .. })));
    }

    #[test]
    fn unsupported_element_types_are_kept() {
        let doc = r#"<aasenv><submodels><submodel>
            <identification idType="URI">http://ex/sm</identification>
            <submodelElements>
              <submodelElement><event><idShort>ev</idShort></event></submodelElement>
              <property><idShort>p</idShort><value> 3 </value><valueType>int</valueType></property>
            </submodelElements></submodel></submodels></aasenv>"#;
        let env = parse_environment(doc.as_bytes()).unwrap();
        let els = &env.submodels[0].elements;
        assert!(matches!(&els[0].kind, ElementKind::Unsupported { element_name } if element_name == "event"));
        assert!(matches!(&els[1].kind, ElementKind::Property { value: Some(v), .. } if v == "3"));
    }

    fn zip_of(entries: &[(&str, &[u8])]) -> Vec<u8> {
        let mut buf = Cursor::new(Vec::new());
        {
            let mut w = zip::ZipWriter::new(&mut buf);
            for (name, bytes) in entries {
                w.start_file(*name, zip::write::SimpleFileOptions::default()).unwrap();
                w.write_all(bytes).unwrap();
            }
            w.finish().unwrap();
        }
        buf.into_inner()
    }

    #[test]
    fn aasx_extraction() {
        let one = zip_of(&[("aasx/pi/pi.aas.xml", PI_SHELL.as_bytes())]);
        assert_eq!(extract_aasx(&one).unwrap().len(), 1);

        let two = zip_of(&[
            ("[Content_Types].xml", b"<Types xmlns=\"urn:ct\"/>"),
            ("aasx/pi/pi.aas.xml", PI_SHELL.as_bytes()),
            ("aasx/docs/readme.txt", b"hello"),
        ]);
        let found = extract_aasx(&two).unwrap();
        assert_eq!(found.len(), 1);
        assert_eq!(found[0].0, "aasx/pi/pi.aas.xml");
        assert_eq!(environment_document(&two).unwrap(), PI_SHELL.as_bytes());

        assert!(matches!(extract_aasx(b"not a zip"), Err(IngestError::NotAnArchive(_))));
        let none = zip_of(&[("x.xml", b"<other/>")]);
        assert!(matches!(extract_aasx(&none), Err(IngestError::NoEnvironmentFound)));
    }
}
