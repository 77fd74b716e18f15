//! Validation of graphs against per-class shapes (a SHACL Core subset:
//! target class, path, min/max count, datatype, class and node kind).
//!
//! Severity is fixed: constraints on `rdfs:comment` report warnings,
//! everything else reports violations.

use std::collections::{BTreeMap, BTreeSet, HashMap};
use std::fmt;

use thiserror::Error;

use crate::rdf::{Graph, Iri, Term};
use crate::vocab::{rdf, rdfs, sh};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum ShaclError {
    #[error("malformed shape {node}: {reason}")]
    MalformedShape { node: String, reason: String },
    #[error("no shape targets {0}")]
    UnknownShapeTarget(String),
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum Severity {
    Violation,
    Warning,
}

impl Severity {
    pub fn letter(self) -> char {
        match self {
            Severity::Violation => 'V',
            Severity::Warning => 'W',
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum NodeKind {
    IriOnly,
    LiteralOnly,
    Any,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct PropertyConstraint {
    pub path: Iri,
    pub min_count: usize,
    pub max_count: Option<usize>,
    pub datatype: Option<Iri>,
    pub value_class: Option<Iri>,
    pub node_kind: NodeKind,
}

impl PropertyConstraint {
    pub fn severity(&self) -> Severity {
        if self.path == rdfs::comment() {
            Severity::Warning
        } else {
            Severity::Violation
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Shape {
    pub node: Term,
    pub target_class: Iri,
    pub constraints: Vec<PropertyConstraint>,
}

#[derive(Debug, Clone, Default, PartialEq, Eq)]
pub struct ShapeSet {
    pub shapes: Vec<Shape>,
    pub prefixes: BTreeMap<String, Iri>,
    pub warnings: Vec<String>,
}

impl ShapeSet {
    pub fn is_empty(&self) -> bool {
        self.shapes.is_empty()
    }

    pub fn target_classes(&self) -> BTreeSet<&Iri> {
        self.shapes.iter().map(|s| &s.target_class).collect()
    }

    fn for_class(&self, class: &Iri) -> Result<Vec<&Shape>, ShaclError> {
        let shapes: Vec<&Shape> = self.shapes.iter().filter(|s| s.target_class == *class).collect();
        if shapes.is_empty() {
            return Err(ShaclError::UnknownShapeTarget(class.as_str().to_string()));
        }
        Ok(shapes)
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ValidationResult {
    pub focus_node: Term,
    pub path: Iri,
    pub constraint_kind: &'static str,
    pub message: String,
    pub severity: Severity,
}

impl ValidationResult {
    fn sort_key(&self) -> (String, &str, &str, &str) {
        (self.focus_node.to_string(), self.path.as_str(), self.constraint_kind, &self.message)
    }
}

impl fmt::Display for ValidationResult {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(
            f,
            "{} {} {} {} {}",
            self.severity.letter(),
            self.focus_node,
            self.path,
            self.constraint_kind,
            self.message
        )
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ValidationReport {
    pub conforms: bool,
    pub results: Vec<ValidationResult>,
}

impl ValidationReport {
    fn from_results(mut results: Vec<ValidationResult>) -> Self {
        results.sort_by(|a, b| a.sort_key().cmp(&b.sort_key()));
        results.dedup();
        ValidationReport {
            conforms: results.iter().all(|r| r.severity != Severity::Violation),
            results,
        }
    }

    pub fn violations(&self) -> usize {
        self.results.iter().filter(|r| r.severity == Severity::Violation).count()
    }

    pub fn warnings(&self) -> usize {
        self.results.len() - self.violations()
    }

    pub fn to_text(&self) -> String {
        let mut out = format!("conforms: {}\n", self.conforms);
        for r in &self.results {
            out.push_str(&r.to_string());
            out.push('\n');
        }
        out
    }
}

fn malformed(node: &Term, reason: impl Into<String>) -> ShaclError {
    ShaclError::MalformedShape {
        node: node.to_string(),
        reason: reason.into(),
    }
}

fn objects<'g>(g: &'g Graph, s: &'g Term, p: Iri) -> impl Iterator<Item = &'g Term> + 'g {
    g.iter().filter(move |t| t.subject() == s && *t.predicate() == p).map(|t| t.object())
}

fn single_iri(g: &Graph, node: &Term, p: &Iri, what: &str) -> Result<Option<Iri>, ShaclError> {
    let vals: Vec<&Term> = objects(g, node, p.clone()).collect();
    match vals.as_slice() {
        [] => Ok(None),
        [Term::Iri(i)] => Ok(Some(i.clone())),
        [_] => Err(malformed(node, format!("{what} must be an IRI"))),
        _ => Err(malformed(node, format!("more than one {what}"))),
    }
}

fn single_count(g: &Graph, node: &Term, p: &Iri, what: &str) -> Result<Option<usize>, ShaclError> {
    let vals: Vec<&Term> = objects(g, node, p.clone()).collect();
    match vals.as_slice() {
        [] => Ok(None),
        [Term::Literal(l)] => l
            .lexical()
            .trim()
            .parse::<usize>()
            .map(Some)
            .map_err(|_| malformed(node, format!("{what} must be a non-negative integer"))),
        [_] => Err(malformed(node, format!("{what} must be a literal"))),
        _ => Err(malformed(node, format!("more than one {what}"))),
    }
}

const SHAPE_KEYS: &[&str] = &[sh::TARGET_CLASS, sh::PROPERTY];
const PROPERTY_KEYS: &[&str] = &[
    sh::PATH,
    sh::MIN_COUNT,
    sh::MAX_COUNT,
    sh::DATATYPE,
    sh::CLASS,
    sh::NODE_KIND,
];

fn unrecognized(g: &Graph, node: &Term, known: &[&str], warnings: &mut Vec<String>) {
    for t in g.iter().filter(|t| t.subject() == node) {
        let p = t.predicate().as_str();
        if p.starts_with(sh::NS) && !known.contains(&p) {
            warnings.push(format!("{node}: unsupported constraint component {}", t.predicate()));
        }
    }
}

fn property_constraint(g: &Graph, node: &Term, warnings: &mut Vec<String>) -> Result<PropertyConstraint, ShaclError> {
    unrecognized(g, node, PROPERTY_KEYS, warnings);
    let path = single_iri(g, node, &sh::path(), "sh:path")?.ok_or_else(|| malformed(node, "property without sh:path"))?;
    let min_count = single_count(g, node, &sh::min_count(), "sh:minCount")?.unwrap_or(0);
    let max_count = single_count(g, node, &sh::max_count(), "sh:maxCount")?;
    if max_count.is_some_and(|m| m < min_count) {
        return Err(malformed(node, "sh:maxCount is below sh:minCount"));
    }
    let datatype = single_iri(g, node, &sh::datatype(), "sh:datatype")?;
    let value_class = single_iri(g, node, &sh::class(), "sh:class")?;
    if datatype.is_some() && value_class.is_some() {
        return Err(malformed(node, "both sh:datatype and sh:class are set"));
    }
    let node_kind = match single_iri(g, node, &sh::node_kind(), "sh:nodeKind")? {
        None => NodeKind::Any,
        Some(k) if k == sh::iri() => NodeKind::IriOnly,
        Some(k) if k == sh::literal() => NodeKind::LiteralOnly,
        Some(k) => {
            warnings.push(format!("{node}: node kind {k} is not supported and is ignored"));
            NodeKind::Any
        }
    };
    Ok(PropertyConstraint {
        path,
        min_count,
        max_count,
        datatype,
        value_class,
        node_kind,
    })
}

/// Reads every node shape in `g`. A node shape is any subject typed
/// `sh:NodeShape` or carrying `sh:targetClass` / `sh:property`.
pub fn load_shapes(g: &Graph) -> Result<ShapeSet, ShaclError> {
    let nodes: BTreeSet<&Term> = g
        .iter()
        .filter(|t| {
            (*t.predicate() == rdf::type_() && *t.object() == Term::Iri(sh::node_shape()))
                || *t.predicate() == sh::target_class()
                || *t.predicate() == sh::property()
        })
        .map(|t| t.subject())
        .collect();
    let mut set = ShapeSet {
        prefixes: g.prefixes().clone(),
        ..ShapeSet::default()
    };
    for node in nodes {
        unrecognized(g, node, SHAPE_KEYS, &mut set.warnings);
        let mut targets = Vec::new();
        for o in objects(g, node, sh::target_class()) {
            match o {
                Term::Iri(i) => targets.push(i.clone()),
                _ => return Err(malformed(node, "sh:targetClass must be an IRI")),
            }
        }
        if targets.is_empty() {
            return Err(malformed(node, "no sh:targetClass"));
        }
        let mut constraints = Vec::new();
        let mut props: Vec<&Term> = objects(g, node, sh::property()).collect();
        props.sort();
        for p in props {
            constraints.push(property_constraint(g, p, &mut set.warnings)?);
        }
        if constraints.is_empty() {
            return Err(malformed(node, "no property constraints"));
        }
        constraints.sort_by(|a, b| a.path.cmp(&b.path));
        for target_class in targets {
            set.shapes.push(Shape {
                node: node.clone(),
                target_class,
                constraints: constraints.clone(),
            });
        }
    }
    set.shapes
        .sort_by(|a, b| (&a.target_class, &a.node).cmp(&(&b.target_class, &b.node)));
    Ok(set)
}

struct DataIndex<'g> {
    values: HashMap<(&'g Term, &'g Iri), Vec<&'g Term>>,
    instances: HashMap<&'g Term, BTreeSet<&'g Term>>,
}

impl<'g> DataIndex<'g> {
    fn new(data: &'g Graph) -> Self {
        let mut values: HashMap<(&Term, &Iri), Vec<&Term>> = HashMap::new();
        let mut instances: HashMap<&Term, BTreeSet<&Term>> = HashMap::new();
        let ty = rdf::type_();
        for t in data.iter() {
            values.entry((t.subject(), t.predicate())).or_default().push(t.object());
            if *t.predicate() == ty {
                instances.entry(t.object()).or_default().insert(t.subject());
            }
        }
        DataIndex { values, instances }
    }

    fn values(&self, s: &'g Term, p: &'g Iri) -> &[&'g Term] {
        self.values.get(&(s, p)).map_or(&[], Vec::as_slice)
    }

    fn has_type(&self, v: &Term, class: &Term) -> bool {
        self.instances.get(class).is_some_and(|set| set.contains(v))
    }
}

fn check_shape<'g>(data: &DataIndex<'g>, shape: &'g Shape, out: &mut Vec<ValidationResult>) {
    let class = Term::Iri(shape.target_class.clone());
    let Some(foci) = data.instances.get(&class) else { return };
    for &focus in foci {
        for c in &shape.constraints {
            let values = data.values(focus, &c.path);
            let mut result = |kind: &'static str, message: String| {
                out.push(ValidationResult {
                    focus_node: focus.clone(),
                    path: c.path.clone(),
                    constraint_kind: kind,
                    message,
                    severity: c.severity(),
                })
            };
            if values.len() < c.min_count {
                result(
                    "minCount",
                    format!("expected at least {} value(s), found {}", c.min_count, values.len()),
                );
            }
            if let Some(max) = c.max_count {
                if values.len() > max {
                    result("maxCount", format!("expected at most {max} value(s), found {}", values.len()));
                }
            }
            let value_class = c.value_class.clone().map(Term::Iri);
            for &v in values {
                if let Some(dt) = &c.datatype {
                    let ok = matches!(v, Term::Literal(l) if l.datatype() == dt);
                    if !ok {
                        result("datatype", format!("value {v} is not of datatype {dt}"));
                    }
                }
                if let Some(vc) = &value_class {
                    if !data.has_type(v, vc) {
                        result("class", format!("value {v} is not an instance of {vc}"));
                    }
                }
                let kind_ok = match c.node_kind {
                    NodeKind::Any => true,
                    NodeKind::IriOnly => matches!(v, Term::Iri(_)),
                    NodeKind::LiteralOnly => v.is_literal(),
                };
                if !kind_ok {
                    let want = if c.node_kind == NodeKind::IriOnly { "an IRI" } else { "a literal" };
                    result("nodeKind", format!("value {v} is not {want}"));
                }
            }
        }
    }
}

/// Focus nodes are the explicit instances of each target class; subclass
/// instances are only picked up after subclass saturation.
pub fn validate(data: &Graph, shapes: &ShapeSet) -> ValidationReport {
    let index = DataIndex::new(data);
    let mut results = Vec::new();
    for shape in &shapes.shapes {
        check_shape(&index, shape, &mut results);
    }
    ValidationReport::from_results(results)
}

pub fn validate_single_class(data: &Graph, shapes: &ShapeSet, class: &Iri) -> Result<ValidationReport, ShaclError> {
    let targeted = shapes.for_class(class)?;
    let index = DataIndex::new(data);
    let mut results = Vec::new();
    for shape in targeted {
        check_shape(&index, shape, &mut results);
    }
    Ok(ValidationReport::from_results(results))
}

fn compact(prefixes: &BTreeMap<String, Iri>, iri: &Iri) -> String {
    prefixes
        .iter()
        .filter_map(|(p, ns)| {
            let local = iri.as_str().strip_prefix(ns.as_str())?;
            let simple = !local.is_empty() && local.chars().all(|c| c.is_ascii_alphanumeric() || c == '_');
            simple.then(|| (ns.as_str().len(), format!("{p}:{local}")))
        })
        .max_by_key(|(len, _)| *len)
        .map_or_else(|| iri.to_string(), |(_, s)| s)
}

/// Renders the shapes for one class as a plain-text contract: one line per
/// constraint, required ones first.
pub fn shape_as_interface_contract(shapes: &ShapeSet, class: &Iri) -> Result<String, ShaclError> {
    let targeted = shapes.for_class(class)?;
    let name = |i: &Iri| compact(&shapes.prefixes, i);
    let mut out = format!("class {}\n", name(class));
    let mut rows: Vec<(bool, String)> = Vec::new();
    for shape in targeted {
        for c in &shape.constraints {
            let max = c.max_count.map_or("*".to_string(), |m| m.to_string());
            let mut line = format!("{} [{}..{}]", name(&c.path), c.min_count, max);
            match c.node_kind {
                NodeKind::IriOnly => line.push_str(" IRI"),
                NodeKind::LiteralOnly => line.push_str(" literal"),
                NodeKind::Any => {}
            }
            if let Some(dt) = &c.datatype {
                line.push_str(&format!(" datatype {}", name(dt)));
            }
            if let Some(vc) = &c.value_class {
                line.push_str(&format!(" class {}", name(vc)));
            }
            if c.severity() == Severity::Warning {
                line.push_str(" (warning only)");
            }
            rows.push((c.min_count >= 1, line));
        }
    }
    for (required, heading) in [(true, "required"), (false, "optional")] {
        let lines: Vec<&String> = rows.iter().filter(|(r, _)| *r == required).map(|(_, l)| l).collect();
        if lines.is_empty() {
            continue;
        }
        out.push_str(heading);
        out.push_str(":\n");
        for l in lines {
            out.push_str("  ");
            out.push_str(l);
            out.push('\n');
        }
    }
    Ok(out)
}
