use std::collections::{BTreeMap, BTreeSet};

use super::{Iri, Triple, TriplePattern};

/// A prefix label that was bound differently in the two merged graphs. The
/// left-hand binding is kept.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct PrefixConflict {
    pub prefix: String,
    pub kept: Iri,
    pub dropped: Iri,
}

impl std::fmt::Display for PrefixConflict {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        write!(
            f,
            "prefix {:?} kept {} and ignored {}",
            self.prefix, self.kept, self.dropped
        )
    }
}

/// A set of triples plus a prefix table.
#[derive(Debug, Clone, Default, PartialEq, Eq)]
pub struct Graph {
    triples: BTreeSet<Triple>,
    prefixes: BTreeMap<String, Iri>,
}

impl Graph {
    pub fn new() -> Self {
        Self::default()
    }

    /// Returns true iff the triple was not already present.
    pub fn insert(&mut self, triple: Triple) -> bool {
        self.triples.insert(triple)
    }

    pub fn remove(&mut self, triple: &Triple) -> bool {
        self.triples.remove(triple)
    }

    pub fn contains(&self, triple: &Triple) -> bool {
        self.triples.contains(triple)
    }

    pub fn len(&self) -> usize {
        self.triples.len()
    }

    pub fn is_empty(&self) -> bool {
        self.triples.is_empty()
    }

    /// Triples in sorted order.
    pub fn iter(&self) -> impl Iterator<Item = &Triple> {
        self.triples.iter()
    }

    pub fn triples(&self) -> &BTreeSet<Triple> {
        &self.triples
    }

    pub fn prefixes(&self) -> &BTreeMap<String, Iri> {
        &self.prefixes
    }

    /// Binds `prefix`, replacing an earlier binding. Returns the old namespace.
    pub fn bind_prefix(&mut self, prefix: impl Into<String>, namespace: Iri) -> Option<Iri> {
        self.prefixes.insert(prefix.into(), namespace)
    }

    /// Adds every triple of `other`. Prefixes of `other` are added when the
    /// label is free; conflicting labels keep this graph's binding and are
    /// reported.
    pub fn merge(&mut self, other: &Graph) -> Vec<PrefixConflict> {
        self.triples.extend(other.triples.iter().cloned());
        let mut conflicts = Vec::new();
        for (label, ns) in &other.prefixes {
            match self.prefixes.get(label) {
                Some(existing) if existing != ns => conflicts.push(PrefixConflict {
                    prefix: label.clone(),
                    kept: existing.clone(),
                    dropped: ns.clone(),
                }),
                Some(_) => {}
                None => {
                    self.prefixes.insert(label.clone(), ns.clone());
                }
            }
        }
        conflicts
    }

    /// Non-mutating union; see [`Graph::merge`].
    pub fn union(&self, other: &Graph) -> (Graph, Vec<PrefixConflict>) {
        let mut out = self.clone();
        let conflicts = out.merge(other);
        (out, conflicts)
    }

    /// All triples unifying with `pattern`. Repeated variables must bind
    /// the same term.
    pub fn matches<'a>(&'a self, pattern: &'a TriplePattern) -> impl Iterator<Item = &'a Triple> + 'a {
        self.triples.iter().filter(move |t| pattern.matches(t))
    }
}

impl Extend<Triple> for Graph {
    fn extend<I: IntoIterator<Item = Triple>>(&mut self, iter: I) {
        self.triples.extend(iter)
    }
}

impl FromIterator<Triple> for Graph {
    fn from_iter<I: IntoIterator<Item = Triple>>(iter: I) -> Self {
        Graph {
            triples: iter.into_iter().collect(),
            prefixes: BTreeMap::new(),
        }
    }
}

impl<'a> IntoIterator for &'a Graph {
    type Item = &'a Triple;
    type IntoIter = std::collections::btree_set::Iter<'a, Triple>;

    fn into_iter(self) -> Self::IntoIter {
        self.triples.iter()
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::rdf::{Literal, PatternTerm, Term};
    use crate::vocab;

    fn t(s: &str, o: &str) -> Triple {
        Triple::new(
            Iri::new(format!("http://ex.org/{s}")).unwrap(),
            vocab::rdfs::label(),
            Literal::string(o),
        )
        .unwrap()
    }

    #[test]
    fn insert_set_semantics() {
        let mut g = Graph::new();
        assert!(g.insert(t("a", "1")));
        assert_eq!(g.len(), 1);
        assert!(!g.insert(t("a", "1")));
        assert_eq!(g.len(), 1);
        g.insert(t("b", "1"));
        g.insert(t("c", "1"));
        assert_eq!(g.len(), 3);
    }

    #[test]
    fn merge_counts_shared_triples_once() {
        let g: Graph = (0..5).map(|i| t("x", &i.to_string())).collect();
        let h: Graph = (3..8).map(|i| t("x", &i.to_string())).collect();
        // {0..4} ∪ {3..7} shares 3 and 4
        let (u, _) = g.union(&h);
        assert_eq!(u.len(), 5 + 5 - 2);
        assert_eq!(g.union(&Graph::new()).0, g);
        assert_eq!(g.union(&g).0, g);
    }

    #[test]
    fn merge_keeps_left_prefix_on_conflict() {
        let mut g = Graph::new();
        g.bind_prefix("ex", Iri::new("http://a/").unwrap());
        let mut h = Graph::new();
        h.bind_prefix("ex", Iri::new("http://b/").unwrap());
        h.bind_prefix("other", Iri::new("http://c/").unwrap());
        let conflicts = g.merge(&h);
        assert_eq!(conflicts.len(), 1);
        assert_eq!(g.prefixes()["ex"].as_str(), "http://a/");
        assert_eq!(g.prefixes()["other"].as_str(), "http://c/");
    }

    #[test]
    fn pattern_matching() {
        let g: Graph = vec![t("a", "1"), t("b", "2")].into_iter().collect();
        let all = TriplePattern::new(PatternTerm::var("s"), PatternTerm::var("p"), PatternTerm::var("o"));
        assert_eq!(g.matches(&all).count(), 2);
        let absent = TriplePattern::new(
            Term::iri("http://ex.org/z").unwrap(),
            vocab::rdfs::label(),
            Term::Literal(Literal::string("1")),
        );
        assert_eq!(g.matches(&absent).count(), 0);
        let same = TriplePattern::new(PatternTerm::var("x"), PatternTerm::Any, PatternTerm::var("x"));
        assert_eq!(g.matches(&same).count(), 0);
    }
}
