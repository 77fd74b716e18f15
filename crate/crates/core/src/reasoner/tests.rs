use super::*;
use crate::rdf::{Bindings, Graph, Iri, Literal, Term, Triple};
use crate::vocab::{owl, rdf, rdfs};
use proptest::prelude::*;
use std::collections::BTreeSet;

fn iri(s: &str) -> Iri {
    Iri::new(format!("http://ex.org/{s}")).unwrap()
}

fn t(s: &str, p: Iri, o: &str) -> Triple {
    Triple::new(iri(s), p, iri(o)).unwrap()
}

/// Naive oracle: apply every rule to the whole graph through the generic
/// pattern unifier until nothing changes, then drop the axioms that were
/// not part of the input.
fn oracle(g: &Graph, rs: &RuleSet, ontology: &Graph) -> Graph {
    let axioms: Vec<Triple> = ontology
        .iter()
        .filter(|t| {
            let p = t.predicate().as_str();
            p == rdfs::SUB_CLASS_OF || p == rdf::TYPE || p == owl::SAME_AS
        })
        .cloned()
        .collect();
    let mut all: BTreeSet<Triple> = g.iter().cloned().chain(axioms.iter().cloned()).collect();
    loop {
        let mut next = all.clone();
        for rule in &rs.rules {
            let mut envs = vec![Bindings::new()];
            for p in rule.premises() {
                envs = envs
                    .iter()
                    .flat_map(|b| all.iter().filter_map(move |t| p.unify(t, b)))
                    .collect();
            }
            for b in &envs {
                for c in rule.conclusions() {
                    let get = |pt: &crate::rdf::PatternTerm| match pt {
                        crate::rdf::PatternTerm::Term(t) => t.clone(),
                        crate::rdf::PatternTerm::Var(v) => b[v].clone(),
                        crate::rdf::PatternTerm::Any => unreachable!(),
                    };
                    let (s, p, o) = (get(&c.subject), get(&c.predicate), get(&c.object));
                    if let Some(p) = p.as_iri() {
                        if let Ok(t) = Triple::new(s, p.clone(), o) {
                            next.insert(t);
                        }
                    }
                }
            }
        }
        if next.len() == all.len() {
            break;
        }
        all = next;
    }
    all.into_iter()
        .filter(|t| !axioms.contains(t) || g.contains(t))
        .collect()
}

fn run(g: &Graph, name: RuleSetName, ontology: &Graph) -> (Graph, SaturationStats) {
    saturate(g, &builtin_ruleset(name), ontology).unwrap()
}

#[test]
fn builtin_sizes() {
    assert_eq!(builtin_ruleset(RuleSetName::SubClassOf).rules.len(), 2);
    assert_eq!(builtin_ruleset(RuleSetName::SameAs).rules.len(), 4);
    let both = builtin_ruleset(RuleSetName::Both);
    assert_eq!(both.rules.len(), 6);
    for r in builtin_ruleset(RuleSetName::SameAs)
        .rules
        .iter()
        .chain(&builtin_ruleset(RuleSetName::SubClassOf).rules)
    {
        assert!(both.rules.contains(r));
    }
}

#[test]
fn rdfs9_adds_exactly_one() {
    let g: Graph = [t("x", rdf::type_(), "C")].into_iter().collect();
    let ont: Graph = [t("C", rdfs::sub_class_of(), "D")].into_iter().collect();
    let (out, stats) = run(&g, RuleSetName::SubClassOf, &ont);
    assert_eq!(stats.added_triples, 1);
    let expected: Graph = [t("x", rdf::type_(), "C"), t("x", rdf::type_(), "D")].into_iter().collect();
    assert_eq!(out.triples(), expected.triples());
}

#[test]
fn same_as_micro_fixture_matches_frozen_closure() {
    let g: Graph = [t("a", owl::same_as(), "b"), t("a", iri("p"), "o")].into_iter().collect();
    let (out, stats) = run(&g, RuleSetName::SameAs, &Graph::new());
    // Frozen from the naive oracle and checked by hand: symmetry gives
    // b=a, transitivity through a=b=a gives a=a and b=b, replace-subject
    // moves (a p o) to b.
    let expected: Graph = [
        t("a", owl::same_as(), "a"),
        t("a", owl::same_as(), "b"),
        t("b", owl::same_as(), "a"),
        t("b", owl::same_as(), "b"),
        t("a", iri("p"), "o"),
        t("b", iri("p"), "o"),
    ]
    .into_iter()
    .collect();
    assert_eq!(out.triples(), expected.triples());
    assert_eq!(stats.added_triples, 4);
    assert_eq!(out.triples(), oracle(&g, &builtin_ruleset(RuleSetName::SameAs), &Graph::new()).triples());
}

#[test]
fn chain_of_five_adds_six() {
    let g: Graph = (1..5)
        .map(|i| t(&format!("C{i}"), rdfs::sub_class_of(), &format!("C{}", i + 1)))
        .collect();
    let (out, stats) = run(&g, RuleSetName::SubClassOf, &Graph::new());
    assert_eq!(stats.added_triples, 6);
    assert_eq!(out.len(), 10);
}

#[test]
fn literal_subjects_are_never_concluded() {
    let g: Graph = [Triple::new(iri("a"), owl::same_as(), Literal::string("v")).unwrap()]
        .into_iter()
        .collect();
    let (out, _) = run(&g, RuleSetName::SameAs, &Graph::new());
    assert!(out.iter().all(|t| !t.subject().is_literal()));
    assert_eq!(out.triples(), oracle(&g, &builtin_ruleset(RuleSetName::SameAs), &Graph::new()).triples());
}

#[test]
fn ontology_annotations_do_not_participate() {
    let ont = crate::fixtures::ontology();
    let axioms = ontology_axioms(ont);
    assert!(axioms.len() < ont.len());
    let (out, stats) = run(&Graph::new(), RuleSetName::Both, ont);
    assert_eq!(out.len(), stats.added_triples);
    assert!(out.iter().all(|t| !axioms.contains(t)));
    assert!(out.iter().all(|t| *t.predicate() != rdfs::label()));
    assert_eq!(out.triples(), oracle(&Graph::new(), &builtin_ruleset(RuleSetName::Both), ont).triples());
}

#[test]
fn bundled_ontology_closure_matches_frozen_count() {
    let frozen: usize = include_str!("../../fixtures/oracles/ontology_closure.out").trim().parse().unwrap();
    for name in [RuleSetName::SubClassOf, RuleSetName::Both] {
        let (_, stats) = run(&Graph::new(), name, crate::fixtures::ontology());
        assert_eq!(stats.added_triples, frozen);
    }
    let (_, stats) = run(&Graph::new(), RuleSetName::SameAs, crate::fixtures::ontology());
    assert_eq!(stats.added_triples, 0);
}

#[test]
fn stats_line_format() {
    let g: Graph = [t("x", rdf::type_(), "C")].into_iter().collect();
    let ont: Graph = [t("C", rdfs::sub_class_of(), "D")].into_iter().collect();
    let (_, stats) = run(&g, RuleSetName::SubClassOf, &ont);
    let line = stats.to_string();
    assert!(line.starts_with("added=1 passes=2 ms="), "{line}");
}

#[test]
fn resource_limit() {
    let g: Graph = (0..6).map(|i| t(&format!("n{i}"), owl::same_as(), &format!("n{}", i + 1))).collect();
    let err = saturate_with(
        &g,
        &builtin_ruleset(RuleSetName::SameAs),
        &Graph::new(),
        &SaturationConfig { max_triples: 20 },
    )
    .unwrap_err();
    assert_eq!(err.limit, 20);
}

#[test]
fn empty_inputs() {
    let (out, stats) = run(&Graph::new(), RuleSetName::Both, &Graph::new());
    assert!(out.is_empty());
    assert_eq!(stats.added_triples, 0);
}

const RDFS9: &str = "{ ?c rdfs:subClassOf ?d . ?x a ?c . } => { ?x a ?d . } .";

#[test]
fn rdfs9_from_text_equals_builtin() {
    let rs = load_rules(RDFS9.as_bytes()).unwrap();
    assert_eq!(rs.name, RuleSetName::Custom);
    assert_eq!(rs.rules.len(), 1);
    assert_eq!(rs.rules[0], builtin_ruleset(RuleSetName::SubClassOf).rules[0]);
}

#[test]
fn rule_file_with_prefixes_and_literals() {
    let doc = r#"
        @prefix ex: <http://ex.org/> .
        PREFIX p: <http://ex.org/p/>
        { ?x ex:flag true . ?x p:n 3 } => { ?x a ex:Flagged . ?x ex:label "on"@en . } .
    "#;
    let rs = load_rules(doc.as_bytes()).unwrap();
    assert_eq!(rs.rules.len(), 1);
    assert_eq!(rs.rules[0].premises().len(), 2);
    assert_eq!(rs.rules[0].conclusions().len(), 2);
}

#[test]
fn rule_errors() {
    assert_eq!(
        load_rules(b"{ ?x a ?c . } => { ?y a ?c . } ."),
        Err(RuleError::UnsafeRule { variable: "y".into() })
    );
    assert!(matches!(load_rules(b"{ ?x a ?c . } => { ?x a ?c . }"), Err(RuleError::RuleSyntax(_))));
    assert!(matches!(load_rules(b"{ _:b a ?c } => { _:b a ?c } ."), Err(RuleError::RuleSyntax(_))));
    assert!(matches!(load_rules(b"{ } => { <http://a.org/x> a <http://a.org/y> } ."), Err(RuleError::EmptyRule)));
    let empty = load_rules(b"").unwrap();
    assert_eq!(empty.name, RuleSetName::Custom);
    assert!(empty.rules.is_empty());
}

#[test]
fn rule_display_reparses() {
    for r in builtin_ruleset(RuleSetName::Both).rules {
        let rs = load_rules(r.to_string().as_bytes()).unwrap();
        assert_eq!(rs.rules, vec![r]);
    }
}

// Random graphs over a 10-term vocabulary.

const NODES: [&str; 6] = ["a", "b", "c", "d", "e", "f"];

fn vocab_triple() -> impl Strategy<Value = Triple> {
    let pred = prop_oneof![
        Just(owl::same_as()),
        Just(rdfs::sub_class_of()),
        Just(rdf::type_()),
        Just(iri("p")),
    ];
    let object = prop_oneof![
        5 => (0..NODES.len()).prop_map(|i| Term::Iri(iri(NODES[i]))),
        1 => Just(Term::Literal(Literal::string("lit"))),
    ];
    ((0..NODES.len()), pred, object).prop_map(|(s, p, o)| Triple::new(iri(NODES[s]), p, o).unwrap())
}

fn graph() -> impl Strategy<Value = Graph> {
    prop::collection::vec(vocab_triple(), 0..=50).prop_map(|v| v.into_iter().collect())
}

fn small_ontology() -> impl Strategy<Value = Graph> {
    prop::collection::vec(vocab_triple(), 0..=6).prop_map(|v| v.into_iter().collect())
}

const NAMES: [RuleSetName; 3] = [RuleSetName::SameAs, RuleSetName::SubClassOf, RuleSetName::Both];

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    #[test]
    fn engine_equals_oracle(g in graph(), ont in small_ontology()) {
        for name in NAMES {
            let rs = builtin_ruleset(name);
            let (out, stats) = saturate(&g, &rs, &ont).unwrap();
            let expected = oracle(&g, &rs, &ont);
            prop_assert_eq!(out.triples(), expected.triples());
            prop_assert_eq!(stats.added_triples, out.len() - g.len());
        }
    }

    #[test]
    fn idempotent(g in graph(), ont in small_ontology()) {
        for name in NAMES {
            let rs = builtin_ruleset(name);
            let (once, _) = saturate(&g, &rs, &ont).unwrap();
            let (twice, stats) = saturate(&once, &rs, &ont).unwrap();
            prop_assert_eq!(once.triples(), twice.triples());
            prop_assert_eq!(stats.added_triples, 0);
        }
    }

    #[test]
    fn monotone(g in graph(), extra in graph(), ont in small_ontology()) {
        let h: Graph = g.iter().chain(extra.iter()).cloned().collect();
        for name in NAMES {
            let rs = builtin_ruleset(name);
            let (sg, _) = saturate(&g, &rs, &ont).unwrap();
            let (sh, _) = saturate(&h, &rs, &ont).unwrap();
            prop_assert!(sg.iter().all(|t| sh.contains(t)));
        }
    }

    #[test]
    fn same_as_is_symmetric_and_transitive(g in graph()) {
        let (out, _) = saturate(&g, &builtin_ruleset(RuleSetName::SameAs), &Graph::new()).unwrap();
        let pairs: BTreeSet<(Term, Term)> = out
            .iter()
            .filter(|t| *t.predicate() == owl::same_as())
            .map(|t| (t.subject().clone(), t.object().clone()))
            .collect();
        for (a, b) in &pairs {
            if !b.is_literal() {
                prop_assert!(pairs.contains(&(b.clone(), a.clone())));
            }
            for (c, d) in &pairs {
                if b == c {
                    prop_assert!(pairs.contains(&(a.clone(), d.clone())));
                }
            }
        }
    }
}
