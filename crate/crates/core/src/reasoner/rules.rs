use std::collections::BTreeSet;
use std::fmt;

use thiserror::Error;

use crate::rdf::{Iri, Literal, PatternTerm, Term, TriplePattern};
use crate::serialize::lexer::Tok;
use crate::serialize::parser::{TermContext, TokenStream};
use crate::serialize::SyntaxError;
use crate::vocab::{self, owl, rdf, rdfs};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum RuleError {
    #[error("rule syntax: {0}")]
    RuleSyntax(#[from] SyntaxError),
    #[error("variable ?{variable} appears only in the conclusion")]
    UnsafeRule { variable: String },
    #[error("rule needs at least one premise and one conclusion")]
    EmptyRule,
    #[error("literal in predicate position")]
    LiteralPredicate,
    #[error("wildcards are not allowed in rules")]
    Wildcard,
}

#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct Rule {
    premises: Vec<TriplePattern>,
    conclusions: Vec<TriplePattern>,
}

impl Rule {
    pub fn new(premises: Vec<TriplePattern>, conclusions: Vec<TriplePattern>) -> Result<Self, RuleError> {
        if premises.is_empty() || conclusions.is_empty() {
            return Err(RuleError::EmptyRule);
        }
        for p in premises.iter().chain(&conclusions) {
            if p.positions().iter().any(|t| matches!(t, PatternTerm::Any)) {
                return Err(RuleError::Wildcard);
            }
            if matches!(&p.predicate, PatternTerm::Term(Term::Literal(_))) {
                return Err(RuleError::LiteralPredicate);
            }
        }
        let bound: BTreeSet<&str> = premises.iter().flat_map(|p| p.variables()).collect();
        for c in &conclusions {
            if let Some(v) = c.variables().find(|v| !bound.contains(v)) {
                return Err(RuleError::UnsafeRule { variable: v.to_string() });
            }
        }
        Ok(Rule { premises, conclusions })
    }

    pub fn premises(&self) -> &[TriplePattern] {
        &self.premises
    }

    pub fn conclusions(&self) -> &[TriplePattern] {
        &self.conclusions
    }
}

impl fmt::Display for Rule {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str("{ ")?;
        for p in &self.premises {
            write!(f, "{p} ")?;
        }
        f.write_str("} => { ")?;
        for c in &self.conclusions {
            write!(f, "{c} ")?;
        }
        f.write_str("} .")
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum RuleSetName {
    SameAs,
    SubClassOf,
    Both,
    Custom,
}

impl std::str::FromStr for RuleSetName {
    type Err = String;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        match s.to_ascii_lowercase().as_str() {
            "sameas" => Ok(RuleSetName::SameAs),
            "subclass" | "subclassof" => Ok(RuleSetName::SubClassOf),
            "both" => Ok(RuleSetName::Both),
            other => Err(format!("unknown rule set {other:?} (expected sameas, subclass or both)")),
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct RuleSet {
    pub name: RuleSetName,
    pub rules: Vec<Rule>,
}

fn v(name: &str) -> PatternTerm {
    PatternTerm::var(name)
}

fn rule(premises: Vec<TriplePattern>, conclusions: Vec<TriplePattern>) -> Rule {
    Rule::new(premises, conclusions).expect("builtin rules are safe")
}

fn subclass_rules() -> Vec<Rule> {
    let sub = || PatternTerm::from(rdfs::sub_class_of());
    let ty = || PatternTerm::from(rdf::type_());
    vec![
        // rdfs9
        rule(
            vec![TriplePattern::new(v("c"), sub(), v("d")), TriplePattern::new(v("x"), ty(), v("c"))],
            vec![TriplePattern::new(v("x"), ty(), v("d"))],
        ),
        // rdfs11
        rule(
            vec![TriplePattern::new(v("c"), sub(), v("d")), TriplePattern::new(v("d"), sub(), v("e"))],
            vec![TriplePattern::new(v("c"), sub(), v("e"))],
        ),
    ]
}

fn same_as_rules() -> Vec<Rule> {
    let same = || PatternTerm::from(owl::same_as());
    vec![
        rule(
            vec![TriplePattern::new(v("a"), same(), v("b"))],
            vec![TriplePattern::new(v("b"), same(), v("a"))],
        ),
        rule(
            vec![TriplePattern::new(v("a"), same(), v("b")), TriplePattern::new(v("b"), same(), v("c"))],
            vec![TriplePattern::new(v("a"), same(), v("c"))],
        ),
        rule(
            vec![TriplePattern::new(v("a"), same(), v("b")), TriplePattern::new(v("a"), v("p"), v("o"))],
            vec![TriplePattern::new(v("b"), v("p"), v("o"))],
        ),
        rule(
            vec![TriplePattern::new(v("a"), same(), v("b")), TriplePattern::new(v("s"), v("p"), v("a"))],
            vec![TriplePattern::new(v("s"), v("p"), v("b"))],
        ),
    ]
}

pub fn builtin_ruleset(name: RuleSetName) -> RuleSet {
    let rules = match name {
        RuleSetName::SameAs => same_as_rules(),
        RuleSetName::SubClassOf => subclass_rules(),
        RuleSetName::Both => same_as_rules().into_iter().chain(subclass_rules()).collect(),
        RuleSetName::Custom => Vec::new(),
    };
    RuleSet { name, rules }
}

/// Parses a rule file:
///
/// ```text
/// @prefix ex: <http://example.org/> .
/// { ?c rdfs:subClassOf ?d . ?x a ?c . } => { ?x a ?d . } .
/// ```
///
/// The standard prefixes (`rdf`, `rdfs`, `owl`, `xsd`, ...) are predeclared.
pub fn load_rules(doc: &[u8]) -> Result<RuleSet, RuleError> {
    let text = std::str::from_utf8(doc).map_err(|e| SyntaxError {
        line: 1,
        col: 1,
        reason: format!("input is not UTF-8: {e}"),
    })?;
    let mut ts = TokenStream::new(text, true)?;
    let mut ctx = TermContext::new();
    for (p, ns) in vocab::STANDARD_PREFIXES {
        ctx.prefixes.insert(p.to_string(), Iri::new(*ns).expect("static"));
    }
    let mut rules = Vec::new();
    while let Some(tok) = ts.peek() {
        match tok {
            Tok::AtPrefix => {
                ts.next();
                ctx.prefix_directive(&mut ts, false)?;
            }
            Tok::AtBase => {
                ts.next();
                ctx.base_directive(&mut ts, false)?;
            }
            Tok::Word(w) if w.eq_ignore_ascii_case("prefix") => {
                ts.next();
                ctx.prefix_directive(&mut ts, true)?;
            }
            Tok::Word(w) if w.eq_ignore_ascii_case("base") => {
                ts.next();
                ctx.base_directive(&mut ts, true)?;
            }
            Tok::LBrace => {
                let premises = formula(&mut ts, &ctx)?;
                ts.expect(Tok::Implies, "'=>'")?;
                let conclusions = formula(&mut ts, &ctx)?;
                ts.expect(Tok::Dot, "'.' after rule")?;
                rules.push(Rule::new(premises, conclusions)?);
            }
            _ => return Err(ts.err("expected a rule or a prefix declaration").into()),
        }
    }
    Ok(RuleSet {
        name: RuleSetName::Custom,
        rules,
    })
}

fn formula(ts: &mut TokenStream, ctx: &TermContext) -> Result<Vec<TriplePattern>, RuleError> {
    ts.expect(Tok::LBrace, "'{'")?;
    let mut out = Vec::new();
    loop {
        if ts.peek() == Some(&Tok::RBrace) {
            ts.next();
            return Ok(out);
        }
        let s = pattern_term(ts, ctx, false)?;
        let p = pattern_term(ts, ctx, true)?;
        let o = pattern_term(ts, ctx, false)?;
        out.push(TriplePattern::new(s, p, o));
        match ts.peek() {
            Some(Tok::Dot) => {
                ts.next();
            }
            Some(Tok::RBrace) => {}
            _ => return Err(ts.err("expected '.' or '}'").into()),
        }
    }
}

fn pattern_term(ts: &mut TokenStream, ctx: &TermContext, predicate: bool) -> Result<PatternTerm, RuleError> {
    let Some(tok) = ts.next().map(|t| t.tok) else {
        return Err(ts.err("unexpected end of input").into());
    };
    let term = match tok {
        Tok::Var(name) => return Ok(PatternTerm::Var(name)),
        Tok::IriRef(raw) => Term::Iri(ctx.resolve(ts, &raw)?),
        Tok::PName { prefix, local } => Term::Iri(ctx.expand(ts, &prefix, &local)?),
        Tok::Word(w) if predicate && w == "a" => Term::Iri(rdf::type_()),
        Tok::Str(s) if !predicate => Term::Literal(ctx.literal_tail(ts, s)?),
        Tok::Integer(n) if !predicate => Term::Literal(Literal::typed(n, vocab::xsd::integer())),
        Tok::Decimal(n) if !predicate => Term::Literal(Literal::typed(n, vocab::xsd::decimal())),
        Tok::Double(n) if !predicate => Term::Literal(Literal::typed(n, vocab::xsd::double())),
        Tok::Word(w) if !predicate && (w == "true" || w == "false") => {
            Term::Literal(Literal::typed(w, vocab::xsd::boolean()))
        }
        Tok::Blank(_) | Tok::LBracket => return Err(ts.err_prev("blank nodes are not allowed in rules").into()),
        _ => return Err(ts.err_prev("expected a variable or a term").into()),
    };
    Ok(PatternTerm::Term(term))
}
