//! Turtle parser. N-Triples documents are parsed with the same machinery in
//! a strict mode that rejects every Turtle abbreviation.

use std::collections::{BTreeMap, HashSet};

use super::lexer::{Lexer, Tok, Token};
use super::SyntaxError;
use crate::rdf::{BlankNode, Graph, Iri, Literal, Term, Triple};
use crate::vocab;

pub(crate) struct TokenStream {
    toks: Vec<Token>,
    pos: usize,
    eof: (usize, usize),
}

impl TokenStream {
    pub(crate) fn new(src: &str, allow_vars: bool) -> Result<Self, SyntaxError> {
        let toks = Lexer::new(src, allow_vars).tokenize()?;
        let lines = src.lines().count().max(1);
        let last_col = src.lines().last().map_or(0, |l| l.chars().count()) + 1;
        Ok(TokenStream {
            toks,
            pos: 0,
            eof: (lines, last_col),
        })
    }

    pub(crate) fn peek(&self) -> Option<&Tok> {
        self.toks.get(self.pos).map(|t| &t.tok)
    }

    pub(crate) fn next(&mut self) -> Option<Token> {
        let t = self.toks.get(self.pos).cloned();
        self.pos += 1;
        t
    }

    pub(crate) fn at_end(&self) -> bool {
        self.pos >= self.toks.len()
    }

    pub(crate) fn err(&self, reason: impl Into<String>) -> SyntaxError {
        let (line, col) = self
            .toks
            .get(self.pos)
            .map(|t| (t.line, t.col))
            .unwrap_or(self.eof);
        SyntaxError {
            line,
            col,
            reason: reason.into(),
        }
    }

    /// Error located at the most recently consumed token.
    pub(crate) fn err_prev(&self, reason: impl Into<String>) -> SyntaxError {
        match self.pos.checked_sub(1).and_then(|i| self.toks.get(i)) {
            Some(t) => SyntaxError {
                line: t.line,
                col: t.col,
                reason: reason.into(),
            },
            None => self.err(reason),
        }
    }

    pub(crate) fn expect(&mut self, want: Tok, what: &str) -> Result<(), SyntaxError> {
        if self.peek() == Some(&want) {
            self.pos += 1;
            Ok(())
        } else {
            Err(self.err(format!("expected {what}")))
        }
    }
}

/// Prefix and base state plus term construction shared with the rule parser.
pub(crate) struct TermContext {
    pub prefixes: BTreeMap<String, Iri>,
    pub base: Option<String>,
}

impl TermContext {
    pub(crate) fn new() -> Self {
        TermContext {
            prefixes: BTreeMap::new(),
            base: None,
        }
    }

    pub(crate) fn resolve(&self, ts: &TokenStream, raw: &str) -> Result<Iri, SyntaxError> {
        if let Ok(iri) = Iri::new(raw) {
            return Ok(iri);
        }
        let joined = match &self.base {
            Some(base) => resolve_relative(base, raw),
            None => return Err(ts.err_prev(format!("relative or invalid IRI <{raw}>"))),
        };
        Iri::new(joined).map_err(|e| ts.err_prev(e.to_string()))
    }

    pub(crate) fn expand(&self, ts: &TokenStream, prefix: &str, local: &str) -> Result<Iri, SyntaxError> {
        let ns = self
            .prefixes
            .get(prefix)
            .ok_or_else(|| ts.err_prev(format!("undefined prefix {prefix:?}")))?;
        Iri::new(format!("{}{}", ns.as_str(), local)).map_err(|e| ts.err_prev(e.to_string()))
    }

    /// Literal following an already consumed string token.
    pub(crate) fn literal_tail(&self, ts: &mut TokenStream, lexical: String) -> Result<Literal, SyntaxError> {
        match ts.peek() {
            Some(Tok::LangTag(tag)) => {
                let tag = tag.clone();
                let lit = Literal::lang(lexical, &tag).map_err(|e| ts.err(e.to_string()))?;
                ts.next();
                Ok(lit)
            }
            Some(Tok::DoubleCaret) => {
                ts.next();
                let dt = match ts.next().map(|t| t.tok) {
                    Some(Tok::IriRef(raw)) => self.resolve(ts, &raw)?,
                    Some(Tok::PName { prefix, local }) => self.expand(ts, &prefix, &local)?,
                    _ => return Err(ts.err("expected datatype IRI")),
                };
                Ok(Literal::typed(lexical, dt))
            }
            _ => Ok(Literal::string(lexical)),
        }
    }

    /// `@prefix p: <ns> .` or `PREFIX p: <ns>` after the keyword.
    pub(crate) fn prefix_directive(&mut self, ts: &mut TokenStream, sparql: bool) -> Result<(), SyntaxError> {
        let prefix = match ts.next().map(|t| t.tok) {
            Some(Tok::PName { prefix, local }) if local.is_empty() => prefix,
            _ => return Err(ts.err("expected prefix label")),
        };
        let ns = match ts.next().map(|t| t.tok) {
            Some(Tok::IriRef(raw)) => self.resolve(ts, &raw)?,
            _ => return Err(ts.err("expected namespace IRI")),
        };
        if !sparql {
            ts.expect(Tok::Dot, "'.' after @prefix")?;
        }
        self.prefixes.insert(prefix, ns);
        Ok(())
    }

    pub(crate) fn base_directive(&mut self, ts: &mut TokenStream, sparql: bool) -> Result<(), SyntaxError> {
        let raw = match ts.next().map(|t| t.tok) {
            Some(Tok::IriRef(raw)) => raw,
            _ => return Err(ts.err("expected base IRI")),
        };
        let iri = self.resolve(ts, &raw)?;
        self.base = Some(iri.into_string());
        if !sparql {
            ts.expect(Tok::Dot, "'.' after @base")?;
        }
        Ok(())
    }
}

fn resolve_relative(base: &str, rel: &str) -> String {
    let base_no_frag = base.split('#').next().unwrap_or(base);
    if rel.is_empty() {
        return base_no_frag.to_string();
    }
    if rel.starts_with('#') {
        return format!("{base_no_frag}{rel}");
    }
    if let Some(stripped) = rel.strip_prefix("//") {
        let scheme = base.split(':').next().unwrap_or("");
        return format!("{scheme}://{stripped}");
    }
    if rel.starts_with('/') {
        // scheme://authority
        if let Some(idx) = base.find("://") {
            let after = &base[idx + 3..];
            let auth_end = after.find('/').map_or(base.len(), |i| idx + 3 + i);
            return format!("{}{}", &base[..auth_end], rel);
        }
        return rel.to_string();
    }
    let dir = match base_no_frag.rfind('/') {
        Some(i) => &base_no_frag[..=i],
        None => base_no_frag,
    };
    format!("{dir}{rel}")
}

struct Parser {
    ts: TokenStream,
    ctx: TermContext,
    strict_nt: bool,
    graph: Graph,
    doc_labels: HashSet<String>,
    anon: Vec<String>,
}

const ANON_MARK: &str = "\u{0}anon";

impl Parser {
    fn fresh(&mut self) -> Term {
        let label = format!("{ANON_MARK}{}", self.anon.len());
        self.anon.push(label.clone());
        Term::Blank(BlankNode::new_unchecked(label))
    }

    fn emit(&mut self, s: Term, p: Iri, o: Term) -> Result<(), SyntaxError> {
        let t = Triple::new(s, p, o).map_err(|e| self.ts.err(e.to_string()))?;
        self.graph.insert(t);
        Ok(())
    }

    fn document(&mut self) -> Result<(), SyntaxError> {
        while !self.ts.at_end() {
            match self.ts.peek() {
                Some(Tok::AtPrefix) if !self.strict_nt => {
                    self.ts.next();
                    self.ctx.prefix_directive(&mut self.ts, false)?;
                }
                Some(Tok::AtBase) if !self.strict_nt => {
                    self.ts.next();
                    self.ctx.base_directive(&mut self.ts, false)?;
                }
                Some(Tok::Word(w)) if !self.strict_nt && w.eq_ignore_ascii_case("prefix") => {
                    self.ts.next();
                    self.ctx.prefix_directive(&mut self.ts, true)?;
                }
                Some(Tok::Word(w)) if !self.strict_nt && w.eq_ignore_ascii_case("base") => {
                    self.ts.next();
                    self.ctx.base_directive(&mut self.ts, true)?;
                }
                _ => {
                    self.triples()?;
                    self.ts.expect(Tok::Dot, "'.' at end of statement")?;
                }
            }
        }
        Ok(())
    }

    fn triples(&mut self) -> Result<(), SyntaxError> {
        if self.ts.peek() == Some(&Tok::LBracket) && !self.strict_nt {
            let subject = self.blank_property_list()?;
            if self.ts.peek() != Some(&Tok::Dot) {
                self.predicate_object_list(&subject)?;
            }
            return Ok(());
        }
        let subject = self.subject()?;
        self.predicate_object_list(&subject)
    }

    fn subject(&mut self) -> Result<Term, SyntaxError> {
        match self.ts.peek() {
            Some(Tok::LParen) if !self.strict_nt => self.collection(),
            _ => {
                let t = self.term()?;
                if t.is_literal() {
                    return Err(self.ts.err("literal in subject position"));
                }
                Ok(t)
            }
        }
    }

    fn predicate(&mut self) -> Result<Iri, SyntaxError> {
        let tok = self.ts.next().ok_or_else(|| self.ts.err("expected predicate"))?;
        match tok.tok {
            Tok::Word(w) if w == "a" && !self.strict_nt => Ok(vocab::rdf::type_()),
            Tok::IriRef(raw) => self.ctx.resolve(&self.ts, &raw),
            Tok::PName { prefix, local } if !self.strict_nt => self.ctx.expand(&self.ts, &prefix, &local),
            _ => {
                self.ts.pos -= 1;
                Err(self.ts.err("expected predicate IRI"))
            }
        }
    }

    fn predicate_object_list(&mut self, subject: &Term) -> Result<(), SyntaxError> {
        loop {
            let p = self.predicate()?;
            loop {
                let o = self.object()?;
                self.emit(subject.clone(), p.clone(), o)?;
                if self.ts.peek() == Some(&Tok::Comma) && !self.strict_nt {
                    self.ts.next();
                } else {
                    break;
                }
            }
            if self.strict_nt || self.ts.peek() != Some(&Tok::Semicolon) {
                return Ok(());
            }
            while self.ts.peek() == Some(&Tok::Semicolon) {
                self.ts.next();
            }
            if matches!(self.ts.peek(), Some(Tok::Dot) | Some(Tok::RBracket) | None) {
                return Ok(());
            }
        }
    }

    fn object(&mut self) -> Result<Term, SyntaxError> {
        match self.ts.peek() {
            Some(Tok::LBracket) if !self.strict_nt => self.blank_property_list(),
            Some(Tok::LParen) if !self.strict_nt => self.collection(),
            _ => self.term(),
        }
    }

    fn blank_property_list(&mut self) -> Result<Term, SyntaxError> {
        self.ts.expect(Tok::LBracket, "'['")?;
        let node = self.fresh();
        if self.ts.peek() != Some(&Tok::RBracket) {
            self.predicate_object_list(&node)?;
        }
        self.ts.expect(Tok::RBracket, "']'")?;
        Ok(node)
    }

    fn collection(&mut self) -> Result<Term, SyntaxError> {
        self.ts.expect(Tok::LParen, "'('")?;
        let mut items = Vec::new();
        while self.ts.peek() != Some(&Tok::RParen) {
            if self.ts.at_end() {
                return Err(self.ts.err("unterminated collection"));
            }
            items.push(self.object()?);
        }
        self.ts.next();
        let mut head = Term::Iri(vocab::rdf::nil());
        for item in items.into_iter().rev() {
            let cell = self.fresh();
            self.emit(cell.clone(), vocab::rdf::first(), item)?;
            self.emit(cell.clone(), vocab::rdf::rest(), head)?;
            head = cell;
        }
        Ok(head)
    }

    fn term(&mut self) -> Result<Term, SyntaxError> {
        let tok = self.ts.next().ok_or_else(|| self.ts.err("unexpected end of input"))?;
        let strict = self.strict_nt;
        let term = match tok.tok {
            Tok::IriRef(raw) => Term::Iri(self.ctx.resolve(&self.ts, &raw)?),
            Tok::PName { prefix, local } if !strict => Term::Iri(self.ctx.expand(&self.ts, &prefix, &local)?),
            Tok::Blank(label) => {
                self.doc_labels.insert(label.clone());
                Term::Blank(BlankNode::new(label).map_err(|e| self.ts.err(e.to_string()))?)
            }
            Tok::Str(s) => Term::Literal(self.ctx.literal_tail(&mut self.ts, s)?),
            Tok::Integer(n) if !strict => Term::Literal(Literal::typed(n, vocab::xsd::integer())),
            Tok::Decimal(n) if !strict => Term::Literal(Literal::typed(n, vocab::xsd::decimal())),
            Tok::Double(n) if !strict => Term::Literal(Literal::typed(n, vocab::xsd::double())),
            Tok::Word(w) if !strict && (w == "true" || w == "false") => {
                Term::Literal(Literal::typed(w, vocab::xsd::boolean()))
            }
            _ => {
                self.ts.pos -= 1;
                return Err(self.ts.err("expected an RDF term"));
            }
        };
        Ok(term)
    }

    /// Gives anonymous nodes labels that cannot collide with labels written
    /// in the document.
    fn finish(self) -> Graph {
        if self.anon.is_empty() {
            let mut g = self.graph;
            for (p, ns) in self.ctx.prefixes {
                g.bind_prefix(p, ns);
            }
            return g;
        }
        let mut rename = std::collections::HashMap::new();
        let mut n = 0usize;
        for a in &self.anon {
            let label = loop {
                let candidate = format!("genid{n}");
                n += 1;
                if !self.doc_labels.contains(&candidate) {
                    break candidate;
                }
            };
            rename.insert(a.clone(), BlankNode::new_unchecked(label));
        }
        let fix = |t: Term| match t {
            Term::Blank(b) if b.label().starts_with(ANON_MARK) => Term::Blank(rename[b.label()].clone()),
            t => t,
        };
        let mut out = Graph::new();
        for (p, ns) in self.ctx.prefixes {
            out.bind_prefix(p, ns);
        }
        for t in self.graph.iter().cloned() {
            let (s, p, o) = t.into_parts();
            out.insert(Triple::new(fix(s), p, fix(o)).expect("renaming keeps triples well-formed"));
        }
        out
    }
}

pub(crate) fn parse(src: &str, strict_nt: bool) -> Result<Graph, SyntaxError> {
    let mut p = Parser {
        ts: TokenStream::new(src, false)?,
        ctx: TermContext::new(),
        strict_nt,
        graph: Graph::new(),
        doc_labels: HashSet::new(),
        anon: Vec::new(),
    };
    p.document()?;
    Ok(p.finish())
}
