//! End-to-end helpers shared by the command-line front end: load, map,
//! serialize and measure.

use std::collections::BTreeMap;
use std::time::{Duration, Instant};

use thiserror::Error;

use crate::aas::AasEnvironment;
use crate::ingest::{environment_document, parse_environment, xml_metrics, IngestError, XmlMetrics};
use crate::mapper::{map_environment, MappingConfig, MappingReport};
use crate::rdf::Graph;
use crate::serialize::{serialize, SerializationFormat, SerializeError};

#[derive(Debug, Error)]
pub enum PipelineError {
    #[error(transparent)]
    Ingest(#[from] IngestError),
    #[error(transparent)]
    Serialize(#[from] SerializeError),
}

/// A parsed input: the environment plus metrics of the XML it came from.
#[derive(Debug, Clone)]
pub struct LoadedInput {
    pub environment: AasEnvironment,
    pub metrics: XmlMetrics,
    pub input_bytes: usize,
}

/// Accepts a bare `aasenv` document or an AASX archive.
pub fn load_input(bytes: &[u8]) -> Result<LoadedInput, IngestError> {
    let doc = environment_document(bytes)?;
    Ok(LoadedInput {
        environment: parse_environment(&doc)?,
        metrics: xml_metrics(&doc)?,
        input_bytes: bytes.len(),
    })
}

#[derive(Debug, Clone, Default, PartialEq, Eq)]
pub struct PipelineStats {
    pub xml_metrics: XmlMetrics,
    pub input_bytes: usize,
    pub triples: usize,
    pub format_bytes: BTreeMap<SerializationFormat, usize>,
    pub map_ms: Option<Duration>,
    pub reason_ms: Option<Duration>,
    pub validate_ms: Option<Duration>,
}

impl PipelineStats {
    /// One machine-readable line of `key=value` fields.
    pub fn record(&self) -> String {
        let mut fields = vec![
            format!("leaves={}", self.xml_metrics.leaf_count),
            format!("nodes={}", self.xml_metrics.node_count),
            format!("in_bytes={}", self.input_bytes),
            format!("triples={}", self.triples),
        ];
        for f in SerializationFormat::ALL {
            if let Some(n) = self.format_bytes.get(&f) {
                fields.push(format!("{}={n}", f.short_name()));
            }
        }
        for (key, d) in [("map_ms", self.map_ms), ("reason_ms", self.reason_ms), ("validate_ms", self.validate_ms)] {
            if let Some(d) = d {
                fields.push(format!("{key}={}", d.as_millis()));
            }
        }
        fields.join(" ")
    }
}

/// Maps an input and serializes it to every requested format in memory.
pub fn run_stats(
    bytes: &[u8],
    formats: &[SerializationFormat],
    cfg: &MappingConfig,
) -> Result<(PipelineStats, Graph, MappingReport), PipelineError> {
    let input = load_input(bytes)?;
    let started = Instant::now();
    let (graph, report) = map_environment(&input.environment, cfg);
    let map_ms = started.elapsed();
    let mut format_bytes = BTreeMap::new();
    for &f in formats {
        format_bytes.insert(f, serialize(&graph, f)?.len());
    }
    let stats = PipelineStats {
        xml_metrics: input.metrics,
        input_bytes: input.input_bytes,
        triples: graph.len(),
        format_bytes,
        map_ms: Some(map_ms),
        reason_ms: None,
        validate_ms: None,
    };
    Ok((stats, graph, report))
}
