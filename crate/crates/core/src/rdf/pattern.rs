use std::collections::HashMap;
use std::fmt;

use super::{Iri, Term, Triple};

/// One position of a triple pattern.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub enum PatternTerm {
    Term(Term),
    Var(String),
    /// Matches anything and binds nothing.
    Any,
}

impl PatternTerm {
    pub fn var(name: &str) -> Self {
        PatternTerm::Var(name.to_string())
    }

    pub fn as_var(&self) -> Option<&str> {
        match self {
            PatternTerm::Var(v) => Some(v),
            _ => None,
        }
    }
}

impl From<Term> for PatternTerm {
    fn from(t: Term) -> Self {
        PatternTerm::Term(t)
    }
}

impl From<Iri> for PatternTerm {
    fn from(i: Iri) -> Self {
        PatternTerm::Term(Term::Iri(i))
    }
}

impl fmt::Display for PatternTerm {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            PatternTerm::Term(t) => write!(f, "{t}"),
            PatternTerm::Var(v) => write!(f, "?{v}"),
            PatternTerm::Any => f.write_str("[]"),
        }
    }
}

pub type Bindings = HashMap<String, Term>;

#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct TriplePattern {
    pub subject: PatternTerm,
    pub predicate: PatternTerm,
    pub object: PatternTerm,
}

impl TriplePattern {
    pub fn new(
        subject: impl Into<PatternTerm>,
        predicate: impl Into<PatternTerm>,
        object: impl Into<PatternTerm>,
    ) -> Self {
        TriplePattern {
            subject: subject.into(),
            predicate: predicate.into(),
            object: object.into(),
        }
    }

    pub fn positions(&self) -> [&PatternTerm; 3] {
        [&self.subject, &self.predicate, &self.object]
    }

    pub fn variables(&self) -> impl Iterator<Item = &str> {
        self.positions().into_iter().filter_map(PatternTerm::as_var)
    }

    /// Unifies `triple` with this pattern, extending `bindings`. Returns
    /// `None` when a concrete term or an existing binding disagrees.
    pub fn unify(&self, triple: &Triple, bindings: &Bindings) -> Option<Bindings> {
        let predicate = Term::Iri(triple.predicate().clone());
        let values = [triple.subject(), &predicate, triple.object()];
        let mut out = bindings.clone();
        for (pos, value) in self.positions().into_iter().zip(values) {
            match pos {
                PatternTerm::Any => {}
                PatternTerm::Term(t) => {
                    if t != value {
                        return None;
                    }
                }
                PatternTerm::Var(name) => match out.get(name) {
                    Some(bound) if bound != value => return None,
                    Some(_) => {}
                    None => {
                        out.insert(name.clone(), value.clone());
                    }
                },
            }
        }
        Some(out)
    }

    pub fn matches(&self, triple: &Triple) -> bool {
        self.unify(triple, &Bindings::new()).is_some()
    }
}

impl fmt::Display for TriplePattern {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{} {} {} .", self.subject, self.predicate, self.object)
    }
}
