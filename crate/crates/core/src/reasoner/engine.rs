use std::collections::{HashMap, HashSet};
use std::fmt;
use std::time::{Duration, Instant};

use thiserror::Error;

use super::rules::RuleSet;
use crate::rdf::{Graph, PatternTerm, Term, Triple, TriplePattern};
use crate::vocab::{owl, rdf, rdfs};

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct SaturationConfig {
    /// Upper bound on the working graph size.
    pub max_triples: usize,
}

impl Default for SaturationConfig {
    fn default() -> Self {
        SaturationConfig { max_triples: 5_000_000 }
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
#[error("saturation exceeded the limit of {limit} triples")]
pub struct ResourceLimit {
    pub limit: usize,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Default)]
pub struct SaturationStats {
    pub added_triples: usize,
    /// Rule-application rounds, including the final one that derived nothing.
    pub passes: usize,
    pub duration: Duration,
}

impl fmt::Display for SaturationStats {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(
            f,
            "added={} passes={} ms={}",
            self.added_triples,
            self.passes,
            self.duration.as_millis()
        )
    }
}

/// The ontology triples that take part in reasoning: `rdfs:subClassOf`,
/// `rdf:type` and `owl:sameAs`. Annotations are left out.
pub fn ontology_axioms(ontology: &Graph) -> Graph {
    let keep = [rdfs::sub_class_of(), rdf::type_(), owl::same_as()];
    ontology.iter().filter(|t| keep.contains(t.predicate())).cloned().collect()
}

type Id = u32;
type Row = [Id; 3];

#[derive(Default)]
struct Interner {
    terms: Vec<Term>,
    ids: HashMap<Term, Id>,
}

impl Interner {
    fn intern(&mut self, t: &Term) -> Id {
        if let Some(&id) = self.ids.get(t) {
            return id;
        }
        let id = self.terms.len() as Id;
        self.terms.push(t.clone());
        self.ids.insert(t.clone(), id);
        id
    }

    fn row(&mut self, t: &Triple) -> Row {
        [
            self.intern(t.subject()),
            self.intern(&Term::Iri(t.predicate().clone())),
            self.intern(t.object()),
        ]
    }

    fn triple(&self, r: Row) -> Option<Triple> {
        let p = self.terms[r[1] as usize].as_iri()?.clone();
        Triple::new(self.terms[r[0] as usize].clone(), p, self.terms[r[2] as usize].clone()).ok()
    }
}

#[derive(Default)]
struct Store {
    rows: Vec<Row>,
    set: HashSet<Row>,
    index: [HashMap<Id, Vec<u32>>; 3],
}

impl Store {
    fn insert(&mut self, r: Row) -> bool {
        if !self.set.insert(r) {
            return false;
        }
        let at = self.rows.len() as u32;
        self.rows.push(r);
        for (pos, idx) in self.index.iter_mut().enumerate() {
            idx.entry(r[pos]).or_default().push(at);
        }
        true
    }

    /// Row indices that may match a pattern with the given bound positions.
    fn candidates(&self, bound: [Option<Id>; 3]) -> Candidates<'_> {
        let mut best: Option<&[u32]> = None;
        for (pos, b) in bound.iter().enumerate() {
            if let Some(id) = b {
                let list = self.index[pos].get(id).map_or(&[][..], Vec::as_slice);
                if best.is_none_or(|cur| list.len() < cur.len()) {
                    best = Some(list);
                }
            }
        }
        match best {
            Some(list) => Candidates::List(list.iter()),
            None => Candidates::All(0..self.rows.len() as u32),
        }
    }
}

enum Candidates<'a> {
    List(std::slice::Iter<'a, u32>),
    All(std::ops::Range<u32>),
}

impl Iterator for Candidates<'_> {
    type Item = u32;

    fn next(&mut self) -> Option<u32> {
        match self {
            Candidates::List(it) => it.next().copied(),
            Candidates::All(r) => r.next(),
        }
    }
}

#[derive(Clone, Copy)]
enum Slot {
    Const(Id),
    Var(usize),
}

type CPattern = [Slot; 3];

struct CRule {
    premises: Vec<CPattern>,
    conclusions: Vec<CPattern>,
    vars: usize,
}

fn compile(rs: &RuleSet, interner: &mut Interner) -> Vec<CRule> {
    rs.rules
        .iter()
        .map(|r| {
            let mut names: Vec<String> = Vec::new();
            let mut slot = |t: &PatternTerm, interner: &mut Interner| match t {
                PatternTerm::Term(term) => Slot::Const(interner.intern(term)),
                PatternTerm::Var(v) => match names.iter().position(|n| n == v) {
                    Some(i) => Slot::Var(i),
                    None => {
                        names.push(v.clone());
                        Slot::Var(names.len() - 1)
                    }
                },
                PatternTerm::Any => unreachable!("rules reject wildcards"),
            };
            let mut pat = |p: &TriplePattern, interner: &mut Interner| {
                [
                    slot(&p.subject, interner),
                    slot(&p.predicate, interner),
                    slot(&p.object, interner),
                ]
            };
            let premises = r.premises().iter().map(|p| pat(p, interner)).collect();
            let conclusions = r.conclusions().iter().map(|p| pat(p, interner)).collect();
            CRule {
                premises,
                conclusions,
                vars: names.len(),
            }
        })
        .collect()
}

fn unify(pat: &CPattern, row: Row, b: &mut [Option<Id>], newly: &mut Vec<usize>) -> bool {
    for pos in 0..3 {
        match pat[pos] {
            Slot::Const(c) => {
                if c != row[pos] {
                    return false;
                }
            }
            Slot::Var(v) => match b[v] {
                Some(x) if x != row[pos] => return false,
                Some(_) => {}
                None => {
                    b[v] = Some(row[pos]);
                    newly.push(v);
                }
            },
        }
    }
    true
}

fn bound(pat: &CPattern, b: &[Option<Id>]) -> [Option<Id>; 3] {
    pat.map(|s| match s {
        Slot::Const(c) => Some(c),
        Slot::Var(v) => b[v],
    })
}

struct Pass<'a> {
    store: &'a Store,
    interner: &'a Interner,
    found: &'a mut HashSet<Row>,
    fresh: &'a mut Vec<Row>,
}

impl Pass<'_> {
    fn join(&mut self, rule: &CRule, skip: usize, k: usize, b: &mut Vec<Option<Id>>) {
        if k == rule.premises.len() {
            return self.conclude(rule, b);
        }
        if k == skip {
            return self.join(rule, skip, k + 1, b);
        }
        let pat = &rule.premises[k];
        let mut newly = Vec::new();
        for at in self.store.candidates(bound(pat, b)) {
            let row = self.store.rows[at as usize];
            if unify(pat, row, b, &mut newly) {
                self.join(rule, skip, k + 1, b);
            }
            for v in newly.drain(..) {
                b[v] = None;
            }
        }
    }

    fn conclude(&mut self, rule: &CRule, b: &[Option<Id>]) {
        for c in &rule.conclusions {
            let row = bound(c, b).map(|x| x.expect("rules are range-restricted"));
            // Conclusions must still be well-formed triples.
            if self.interner.terms[row[0] as usize].is_literal() || self.interner.terms[row[1] as usize].as_iri().is_none() {
                continue;
            }
            if !self.store.set.contains(&row) && self.found.insert(row) {
                self.fresh.push(row);
            }
        }
    }
}

/// Saturates with the default resource limit.
pub fn saturate(g: &Graph, rs: &RuleSet, ontology: &Graph) -> Result<(Graph, SaturationStats), ResourceLimit> {
    saturate_with(g, rs, ontology, &SaturationConfig::default())
}

/// Computes the least fixpoint of `rs` over `g` plus the ontology axioms
/// (semi-naive: each pass only joins through triples new in the previous
/// pass). Axioms not already in `g` are removed from the result; everything
/// derived from them stays.
pub fn saturate_with(
    g: &Graph,
    rs: &RuleSet,
    ontology: &Graph,
    config: &SaturationConfig,
) -> Result<(Graph, SaturationStats), ResourceLimit> {
    let started = Instant::now();
    let axioms = ontology_axioms(ontology);
    let mut interner = Interner::default();
    let mut store = Store::default();
    let mut delta = Vec::new();
    for t in g.iter().chain(axioms.iter()) {
        let r = interner.row(t);
        if store.insert(r) {
            delta.push(r);
        }
    }
    if store.rows.len() > config.max_triples {
        return Err(ResourceLimit { limit: config.max_triples });
    }
    let rules = compile(rs, &mut interner);

    let mut passes = 0;
    while !delta.is_empty() && !rules.is_empty() {
        passes += 1;
        let mut found = HashSet::new();
        let mut fresh = Vec::new();
        let mut pass = Pass {
            store: &store,
            interner: &interner,
            found: &mut found,
            fresh: &mut fresh,
        };
        for rule in &rules {
            let mut b = vec![None; rule.vars];
            for (i, pat) in rule.premises.iter().enumerate() {
                for &row in &delta {
                    let mut newly = Vec::new();
                    if unify(pat, row, &mut b, &mut newly) {
                        pass.join(rule, i, 0, &mut b);
                    }
                    for v in newly {
                        b[v] = None;
                    }
                }
            }
        }
        if store.rows.len() + fresh.len() > config.max_triples {
            return Err(ResourceLimit { limit: config.max_triples });
        }
        for &r in &fresh {
            store.insert(r);
        }
        delta = fresh;
    }

    let mut out = Graph::new();
    for (p, ns) in g.prefixes() {
        out.bind_prefix(p.clone(), ns.clone());
    }
    for &r in &store.rows {
        if let Some(t) = interner.triple(r) {
            if !axioms.contains(&t) || g.contains(&t) {
                out.insert(t);
            }
        }
    }
    let stats = SaturationStats {
        added_triples: out.len() - g.len(),
        passes,
        duration: started.elapsed(),
    };
    Ok((out, stats))
}
