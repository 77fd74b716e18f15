//! `saas`: map AAS documents to RDF, saturate, validate and measure.
//!
//! Exit codes: 0 clean, 1 fatal error, 2 mapped with skipped entities,
//! 3 validation violations.

use std::fs;
use std::path::{Path, PathBuf};
use std::process::ExitCode;
use std::time::Instant;

use anyhow::{anyhow, Context, Result};
use clap::{Args, Parser, Subcommand, ValueEnum};

use saas_core::fixtures;
use saas_core::mapper::{map_environment, IdentifierPolicy, MappingConfig};
use saas_core::pipeline::{load_input, run_stats};
use saas_core::rdf::{Graph, Iri};
use saas_core::reasoner::{builtin_ruleset, load_rules, saturate, RuleSet, RuleSetName};
use saas_core::serialize::{parse, parse_turtle, serialize, SerializationFormat};
use saas_core::shacl::{load_shapes, validate, validate_single_class, ShapeSet};

const EXIT_SKIPPED: u8 = 2;
const EXIT_VIOLATIONS: u8 = 3;

#[derive(Parser)]
#[command(name = "saas", version, about = "Semantic Asset Administration Shell toolkit")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Map an AAS XML or AASX file to RDF.
    Map(MapArgs),
    /// Saturate an RDF graph under a rule set.
    Reason(ReasonArgs),
    /// Validate an RDF graph against the class shapes.
    Validate(ValidateArgs),
    /// Map and serialize in memory and print size and timing figures.
    Stats(StatsArgs),
}

#[derive(Clone, Copy, ValueEnum)]
enum Format {
    Nt,
    Nq,
    Ttl,
    Rdfxml,
    Jsonld,
}

impl From<Format> for SerializationFormat {
    fn from(f: Format) -> Self {
        match f {
            Format::Nt => SerializationFormat::NTriples,
            Format::Nq => SerializationFormat::NQuads,
            Format::Ttl => SerializationFormat::Turtle,
            Format::Rdfxml => SerializationFormat::RdfXml,
            Format::Jsonld => SerializationFormat::JsonLd,
        }
    }
}

#[derive(Args)]
struct PolicyArgs {
    /// `strict` skips entities with non-URI identifiers; `mint:<base>`
    /// builds IRIs under the given base.
    #[arg(long, default_value = "strict", value_parser = parse_policy)]
    policy: IdentifierPolicy,
    /// Also emit the ontology's markers for abstract classes.
    #[arg(long)]
    abstract_notes: bool,
}

impl PolicyArgs {
    fn config(&self) -> Result<MappingConfig> {
        Ok(MappingConfig::new(fixtures::rami_namespace(), self.policy.clone())?.with_abstract_notes(self.abstract_notes))
    }
}

fn parse_policy(s: &str) -> Result<IdentifierPolicy, String> {
    if s == "strict" {
        return Ok(IdentifierPolicy::StrictSkip);
    }
    let base = s
        .strip_prefix("mint:")
        .ok_or_else(|| format!("expected 'strict' or 'mint:<base>', got {s:?}"))?;
    let iri = Iri::new(base).map_err(|e| e.to_string())?;
    if !(base.ends_with('/') || base.ends_with('#')) {
        return Err(format!("mint base {base} must end in '/' or '#'"));
    }
    Ok(IdentifierPolicy::MintUnderBase(iri))
}

#[derive(Args)]
struct MapArgs {
    input: PathBuf,
    #[arg(long = "format", short, value_enum, default_values = ["nt"])]
    formats: Vec<Format>,
    #[arg(long, short, default_value = ".")]
    out: PathBuf,
    #[command(flatten)]
    policy: PolicyArgs,
}

#[derive(Clone, Copy, ValueEnum)]
enum Rules {
    Sameas,
    Subclass,
    Both,
}

#[derive(Args)]
struct ReasonArgs {
    input: PathBuf,
    #[arg(long, value_enum, default_value = "both")]
    rules: Rules,
    /// Additional rules in the rule-file grammar, applied together with the
    /// selected set.
    #[arg(long)]
    rule_file: Option<PathBuf>,
    /// Ontology file (Turtle or N-Triples); the bundled ontology otherwise.
    #[arg(long, env = "SAAS_ONTOLOGY", conflicts_with = "ontology_url")]
    ontology: Option<PathBuf>,
    /// Fetch the ontology over HTTP(S) instead.
    #[arg(long)]
    ontology_url: Option<String>,
    /// Output file; the format follows the extension. Standard output
    /// (N-Triples) when absent.
    #[arg(long, short)]
    out: Option<PathBuf>,
}

#[derive(Args)]
struct ValidateArgs {
    data: PathBuf,
    /// Directory of Turtle shape files; the bundled shapes otherwise.
    #[arg(long, env = "SAAS_SHAPES")]
    shapes: Option<PathBuf>,
    /// Restrict validation to the shapes targeting this class (full IRI or
    /// a prefixed name known to the shapes).
    #[arg(long)]
    class: Option<String>,
}

#[derive(Args)]
struct StatsArgs {
    input: PathBuf,
    #[arg(long = "format", short, value_enum, default_values = ["nt", "nq", "ttl", "rdfxml", "jsonld"])]
    formats: Vec<Format>,
    #[command(flatten)]
    policy: PolicyArgs,
}

fn read(path: &Path) -> Result<Vec<u8>> {
    fs::read(path).with_context(|| format!("reading {}", path.display()))
}

fn rdf_format(path: &Path) -> SerializationFormat {
    path.extension()
        .and_then(|e| e.to_str())
        .and_then(SerializationFormat::from_extension)
        .unwrap_or(SerializationFormat::Turtle)
}

fn read_graph(path: &Path) -> Result<Graph> {
    let bytes = read(path)?;
    let format = match rdf_format(path) {
        f @ (SerializationFormat::NTriples | SerializationFormat::NQuads) => f,
        _ => SerializationFormat::Turtle,
    };
    parse(&bytes, format).with_context(|| format!("parsing {}", path.display()))
}

fn cmd_map(args: &MapArgs) -> Result<u8> {
    let cfg = args.policy.config()?;
    let input = load_input(&read(&args.input)?).with_context(|| format!("loading {}", args.input.display()))?;
    let (graph, report) = map_environment(&input.environment, &cfg);
    fs::create_dir_all(&args.out).with_context(|| format!("creating {}", args.out.display()))?;
    let stem = args
        .input
        .file_stem()
        .and_then(|s| s.to_str())
        .unwrap_or("output")
        .to_string();
    for &f in &args.formats {
        let f = SerializationFormat::from(f);
        let path = args.out.join(format!("{stem}.{}", f.extension()));
        fs::write(&path, serialize(&graph, f)?).with_context(|| format!("writing {}", path.display()))?;
        eprintln!("wrote {}", path.display());
    }
    let report_path = args.out.join(format!("{stem}.report.txt"));
    fs::write(&report_path, report.to_text()).with_context(|| format!("writing {}", report_path.display()))?;
    for s in &report.skipped {
        eprintln!("{s}");
    }
    Ok(if report.skipped.is_empty() { 0 } else { EXIT_SKIPPED })
}

fn fetch_ontology(url: &str) -> Result<Graph> {
    let body = ureq::get(url)
        .set("Accept", "text/turtle, application/n-triples;q=0.9")
        .call()
        .with_context(|| format!("fetching {url}"))?
        .into_string()
        .with_context(|| format!("reading {url}"))?;
    parse_turtle(&body).with_context(|| format!("parsing ontology from {url}"))
}

fn cmd_reason(args: &ReasonArgs) -> Result<u8> {
    let g = read_graph(&args.input)?;
    let ontology = match (&args.ontology, &args.ontology_url) {
        (Some(path), _) => read_graph(path)?,
        (None, Some(url)) => fetch_ontology(url)?,
        (None, None) => fixtures::ontology().clone(),
    };
    let name = match args.rules {
        Rules::Sameas => RuleSetName::SameAs,
        Rules::Subclass => RuleSetName::SubClassOf,
        Rules::Both => RuleSetName::Both,
    };
    let mut rs: RuleSet = builtin_ruleset(name);
    if let Some(path) = &args.rule_file {
        let extra = load_rules(&read(path)?).with_context(|| format!("parsing {}", path.display()))?;
        rs.rules.extend(extra.rules);
        rs.name = RuleSetName::Custom;
    }
    let (out, stats) = saturate(&g, &rs, &ontology)?;
    match &args.out {
        Some(path) => {
            fs::write(path, serialize(&out, rdf_format(path))?).with_context(|| format!("writing {}", path.display()))?;
            println!("{stats}");
        }
        None => {
            use std::io::Write;
            std::io::stdout().write_all(&serialize(&out, SerializationFormat::NTriples)?)?;
            eprintln!("{stats}");
        }
    }
    Ok(0)
}

fn load_shape_dir(dir: &Path) -> Result<ShapeSet> {
    let mut docs = Vec::new();
    let mut entries: Vec<PathBuf> = fs::read_dir(dir)
        .with_context(|| format!("reading shapes directory {}", dir.display()))?
        .filter_map(|e| e.ok().map(|e| e.path()))
        .filter(|p| p.extension().is_some_and(|e| e == "ttl"))
        .collect();
    entries.sort();
    for p in entries {
        let text = fs::read_to_string(&p).with_context(|| format!("reading {}", p.display()))?;
        docs.push((p.display().to_string(), text));
    }
    let g = fixtures::merge_turtle_documents(&docs).map_err(|(name, e)| anyhow!("parsing {name}: {e}"))?;
    Ok(load_shapes(&g)?)
}

fn resolve_class(shapes: &ShapeSet, class: &str) -> Result<Iri> {
    if let Some((prefix, local)) = class.split_once(':') {
        if let Some(ns) = shapes.prefixes.get(prefix) {
            return Ok(Iri::new(format!("{}{local}", ns.as_str()))?);
        }
    }
    Iri::new(class).map_err(|e| anyhow!("--class: {e}"))
}

fn cmd_validate(args: &ValidateArgs) -> Result<u8> {
    let data = read_graph(&args.data)?;
    let shapes = match &args.shapes {
        Some(dir) => load_shape_dir(dir)?,
        None => load_shapes(&fixtures::shapes_graph())?,
    };
    for w in &shapes.warnings {
        eprintln!("warning: {w}");
    }
    let started = Instant::now();
    let report = match &args.class {
        Some(c) => validate_single_class(&data, &shapes, &resolve_class(&shapes, c)?)?,
        None => validate(&data, &shapes),
    };
    print!("{}", report.to_text());
    eprintln!("validate_ms={}", started.elapsed().as_millis());
    Ok(if report.conforms { 0 } else { EXIT_VIOLATIONS })
}

fn cmd_stats(args: &StatsArgs) -> Result<u8> {
    let cfg = args.policy.config()?;
    let formats: Vec<SerializationFormat> = args.formats.iter().map(|&f| f.into()).collect();
    let (stats, _, report) = run_stats(&read(&args.input)?, &formats, &cfg)
        .with_context(|| format!("processing {}", args.input.display()))?;
    println!("{}", stats.record());
    for s in &report.skipped {
        eprintln!("{s}");
    }
    Ok(0)
}

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(cli) => cli,
        Err(e) => {
            let _ = e.print();
            return if e.use_stderr() { ExitCode::FAILURE } else { ExitCode::SUCCESS };
        }
    };
    let outcome = match &cli.command {
        Command::Map(a) => cmd_map(a),
        Command::Reason(a) => cmd_reason(a),
        Command::Validate(a) => cmd_validate(a),
        Command::Stats(a) => cmd_stats(a),
    };
    match outcome {
        Ok(code) => ExitCode::from(code),
        Err(e) => {
            eprintln!("error: {e:#}");
            ExitCode::FAILURE
        }
    }
}

