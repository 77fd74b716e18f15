//! Tokenizer shared by the Turtle / N-Triples parser and the rule-file parser.

use super::SyntaxError;

#[derive(Debug, Clone, PartialEq)]
pub enum Tok {
    IriRef(String),
    PName { prefix: String, local: String },
    Blank(String),
    Var(String),
    Str(String),
    LangTag(String),
    Integer(String),
    Decimal(String),
    Double(String),
    /// Bare word without a colon: `a`, `true`, `false`, `PREFIX`, `BASE`.
    Word(String),
    AtPrefix,
    AtBase,
    DoubleCaret,
    Dot,
    Semicolon,
    Comma,
    LBracket,
    RBracket,
    LParen,
    RParen,
    LBrace,
    RBrace,
    Implies,
}

#[derive(Debug, Clone, PartialEq)]
pub struct Token {
    pub tok: Tok,
    pub line: usize,
    pub col: usize,
}

pub struct Lexer<'a> {
    chars: Vec<char>,
    pos: usize,
    line: usize,
    col: usize,
    allow_vars: bool,
    _src: &'a str,
}

fn is_name_char(c: char) -> bool {
    c.is_alphanumeric() || matches!(c, '_' | '-' | '.' | ':' | '%' | '\\' | '\u{B7}')
}

impl<'a> Lexer<'a> {
    pub fn new(src: &'a str, allow_vars: bool) -> Self {
        Lexer {
            chars: src.chars().collect(),
            pos: 0,
            line: 1,
            col: 1,
            allow_vars,
            _src: src,
        }
    }

    fn err(&self, reason: impl Into<String>) -> SyntaxError {
        SyntaxError {
            line: self.line,
            col: self.col,
            reason: reason.into(),
        }
    }

    fn peek(&self) -> Option<char> {
        self.chars.get(self.pos).copied()
    }

    fn peek_at(&self, n: usize) -> Option<char> {
        self.chars.get(self.pos + n).copied()
    }

    fn bump(&mut self) -> Option<char> {
        let c = self.chars.get(self.pos).copied()?;
        self.pos += 1;
        if c == '\n' {
            self.line += 1;
            self.col = 1;
        } else {
            self.col += 1;
        }
        Some(c)
    }

    fn skip_ws(&mut self) {
        while let Some(c) = self.peek() {
            if c.is_whitespace() {
                self.bump();
            } else if c == '#' {
                while let Some(c) = self.peek() {
                    if c == '\n' {
                        break;
                    }
                    self.bump();
                }
            } else {
                break;
            }
        }
    }

    pub fn tokenize(mut self) -> Result<Vec<Token>, SyntaxError> {
        let mut out = Vec::new();
        loop {
            self.skip_ws();
            let (line, col) = (self.line, self.col);
            let Some(c) = self.peek() else { break };
            let tok = match c {
                '<' => self.iri_ref()?,
                '"' | '\'' => self.string(c)?,
                '@' => self.at_word()?,
                '^' => {
                    self.bump();
                    if self.bump() != Some('^') {
                        return Err(self.err("expected '^^'"));
                    }
                    Tok::DoubleCaret
                }
                '.' if !self.peek_at(1).is_some_and(|d| d.is_ascii_digit()) => {
                    self.bump();
                    Tok::Dot
                }
                ';' => self.single(Tok::Semicolon),
                ',' => self.single(Tok::Comma),
                '[' => self.single(Tok::LBracket),
                ']' => self.single(Tok::RBracket),
                '(' => self.single(Tok::LParen),
                ')' => self.single(Tok::RParen),
                '{' => self.single(Tok::LBrace),
                '}' => self.single(Tok::RBrace),
                '=' => {
                    self.bump();
                    if self.bump() != Some('>') {
                        return Err(self.err("expected '=>'"));
                    }
                    Tok::Implies
                }
                '?' if self.allow_vars => {
                    self.bump();
                    let name = self.take_while(|c| c.is_alphanumeric() || c == '_');
                    if name.is_empty() {
                        return Err(self.err("empty variable name"));
                    }
                    Tok::Var(name)
                }
                '_' if self.peek_at(1) == Some(':') => {
                    self.bump();
                    self.bump();
                    let label = self.name_run();
                    if label.is_empty() {
                        return Err(self.err("empty blank node label"));
                    }
                    Tok::Blank(label)
                }
                c if c.is_ascii_digit() || c == '+' || c == '-' || c == '.' => self.number()?,
                c if is_name_char(c) => self.word()?,
                c => return Err(self.err(format!("unexpected character {c:?}"))),
            };
            out.push(Token { tok, line, col });
        }
        Ok(out)
    }

    fn single(&mut self, t: Tok) -> Tok {
        self.bump();
        t
    }

    fn take_while(&mut self, f: impl Fn(char) -> bool) -> String {
        let mut s = String::new();
        while let Some(c) = self.peek() {
            if !f(c) {
                break;
            }
            s.push(c);
            self.bump();
        }
        s
    }

    /// A name run that never ends in '.', so `ex:a.` leaves the dot.
    fn name_run(&mut self) -> String {
        let start = self.pos;
        let mut end = start;
        let mut i = start;
        while let Some(&c) = self.chars.get(i) {
            if c == '\\' {
                i += 2;
                end = i;
                continue;
            }
            if !is_name_char(c) {
                break;
            }
            i += 1;
            if c != '.' {
                end = i;
            }
        }
        let mut s = String::new();
        while self.pos < end {
            s.push(self.bump().unwrap());
        }
        s
    }

    fn word(&mut self) -> Result<Tok, SyntaxError> {
        let raw = self.name_run();
        match raw.find(':') {
            None => Ok(Tok::Word(raw)),
            Some(i) => {
                let prefix = raw[..i].to_string();
                let local = unescape_local(&raw[i + 1..]).ok_or_else(|| self.err("bad escape in local name"))?;
                Ok(Tok::PName { prefix, local })
            }
        }
    }

    fn at_word(&mut self) -> Result<Tok, SyntaxError> {
        self.bump();
        let w = self.take_while(|c| c.is_ascii_alphanumeric() || c == '-');
        match w.as_str() {
            "prefix" => Ok(Tok::AtPrefix),
            "base" => Ok(Tok::AtBase),
            "" => Err(self.err("empty language tag")),
            _ => Ok(Tok::LangTag(w)),
        }
    }

    fn number(&mut self) -> Result<Tok, SyntaxError> {
        let mut s = String::new();
        if let Some(c @ ('+' | '-')) = self.peek() {
            s.push(c);
            self.bump();
        }
        s.push_str(&self.take_while(|c| c.is_ascii_digit()));
        let mut kind = 0; // 0 integer, 1 decimal, 2 double
        if self.peek() == Some('.') && self.peek_at(1).is_some_and(|d| d.is_ascii_digit()) {
            self.bump();
            s.push('.');
            s.push_str(&self.take_while(|c| c.is_ascii_digit()));
            kind = 1;
        }
        if let Some(e @ ('e' | 'E')) = self.peek() {
            self.bump();
            s.push(e);
            if let Some(c @ ('+' | '-')) = self.peek() {
                s.push(c);
                self.bump();
            }
            let exp = self.take_while(|c| c.is_ascii_digit());
            if exp.is_empty() {
                return Err(self.err("malformed exponent"));
            }
            s.push_str(&exp);
            kind = 2;
        }
        if !s.chars().any(|c| c.is_ascii_digit()) {
            return Err(self.err(format!("malformed number {s:?}")));
        }
        Ok(match kind {
            0 => Tok::Integer(s),
            1 => Tok::Decimal(s),
            _ => Tok::Double(s),
        })
    }

    fn iri_ref(&mut self) -> Result<Tok, SyntaxError> {
        self.bump();
        let mut s = String::new();
        loop {
            match self.bump() {
                None => return Err(self.err("unterminated IRI")),
                Some('>') => break,
                Some('\\') => s.push(self.unicode_escape()?),
                Some(c) if c.is_whitespace() || matches!(c, '<' | '"' | '{' | '}' | '|' | '^' | '`') => {
                    return Err(self.err(format!("illegal character {c:?} in IRI")))
                }
                Some(c) => s.push(c),
            }
        }
        Ok(Tok::IriRef(s))
    }

    fn unicode_escape(&mut self) -> Result<char, SyntaxError> {
        let n = match self.bump() {
            Some('u') => 4,
            Some('U') => 8,
            _ => return Err(self.err("bad escape")),
        };
        let mut hex = String::new();
        for _ in 0..n {
            hex.push(self.bump().ok_or_else(|| self.err("truncated escape"))?);
        }
        u32::from_str_radix(&hex, 16)
            .ok()
            .and_then(char::from_u32)
            .ok_or_else(|| self.err(format!("bad unicode escape {hex:?}")))
    }

    fn string(&mut self, quote: char) -> Result<Tok, SyntaxError> {
        let long = self.peek_at(1) == Some(quote) && self.peek_at(2) == Some(quote);
        let open = if long { 3 } else { 1 };
        for _ in 0..open {
            self.bump();
        }
        let mut s = String::new();
        loop {
            match self.peek() {
                None => return Err(self.err("unterminated string")),
                Some(c) if c == quote => {
                    if !long {
                        self.bump();
                        break;
                    }
                    if self.peek_at(1) == Some(quote) && self.peek_at(2) == Some(quote) {
                        // A closing run may be preceded by up to two quotes
                        // belonging to the content.
                        let mut run = 0;
                        while self.peek_at(run) == Some(quote) {
                            run += 1;
                        }
                        for _ in 0..run - 3 {
                            s.push(quote);
                        }
                        for _ in 0..run {
                            self.bump();
                        }
                        break;
                    }
                    s.push(c);
                    self.bump();
                }
                Some('\\') => {
                    self.bump();
                    let e = match self.peek() {
                        Some('t') => '\t',
                        Some('b') => '\u{8}',
                        Some('n') => '\n',
                        Some('r') => '\r',
                        Some('f') => '\u{C}',
                        Some('"') => '"',
                        Some('\'') => '\'',
                        Some('\\') => '\\',
                        Some('u') | Some('U') => {
                            s.push(self.unicode_escape()?);
                            continue;
                        }
                        _ => return Err(self.err("bad string escape")),
                    };
                    self.bump();
                    s.push(e);
                }
                Some('\n') | Some('\r') if !long => return Err(self.err("newline in short string")),
                Some(c) => {
                    s.push(c);
                    self.bump();
                }
            }
        }
        Ok(Tok::Str(s))
    }
}

fn unescape_local(raw: &str) -> Option<String> {
    let mut out = String::new();
    let mut it = raw.chars();
    while let Some(c) = it.next() {
        if c == '\\' {
            let e = it.next()?;
            if !"_~.-!$&'()*+,;=/?#@%".contains(e) {
                return None;
            }
            out.push(e);
        } else {
            out.push(c);
        }
    }
    Some(out)
}
