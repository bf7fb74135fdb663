//! Tokenizer and term-level parsing shared by the data, rule and
//! description readers.

use std::collections::{HashMap, HashSet};

use crate::error::SyntaxError;
use crate::rdf::term::{
    is_absolute_iri, Term, OWL, RDF, RDFS, RDF_TYPE, XSD, XSD_DECIMAL, XSD_INTEGER,
};

#[derive(Clone, Debug, PartialEq)]
pub(crate) enum Tok {
    Iri(String),
    PName(String, String),
    Blank(String),
    Var(String),
    Str(String),
    LangTag(String),
    Carets,
    Integer(String),
    Decimal(String),
    Dot,
    Semi,
    Comma,
    LBrace,
    RBrace,
    LBracket,
    RBracket,
    Implies,
    Equiv,
    Prefix,
    A,
    Eof,
}

impl Tok {
    fn describe(&self) -> String {
        match self {
            Tok::Iri(i) => format!("<{i}>"),
            Tok::PName(p, l) => format!("{p}:{l}"),
            Tok::Blank(b) => format!("_:{b}"),
            Tok::Var(v) => format!("?{v}"),
            Tok::Str(_) => "string literal".into(),
            Tok::LangTag(l) => format!("@{l}"),
            Tok::Carets => "'^^'".into(),
            Tok::Integer(n) | Tok::Decimal(n) => n.clone(),
            Tok::Dot => "'.'".into(),
            Tok::Semi => "';'".into(),
            Tok::Comma => "','".into(),
            Tok::LBrace => "'{'".into(),
            Tok::RBrace => "'}'".into(),
            Tok::LBracket => "'['".into(),
            Tok::RBracket => "']'".into(),
            Tok::Implies => "'=>'".into(),
            Tok::Equiv => "'<=>'".into(),
            Tok::Prefix => "@prefix".into(),
            Tok::A => "'a'".into(),
            Tok::Eof => "end of input".into(),
        }
    }
}

#[derive(Clone, Debug)]
pub(crate) struct Spanned {
    pub tok: Tok,
    pub line: usize,
    pub column: usize,
}

struct Lexer<'a> {
    chars: std::iter::Peekable<std::str::Chars<'a>>,
    lookahead: Vec<char>,
    line: usize,
    column: usize,
}

fn is_name_start(c: char) -> bool {
    c.is_alphabetic() || c == '_' || (c as u32) > 0x7f
}

fn is_name_char(c: char) -> bool {
    c.is_alphanumeric() || matches!(c, '_' | '-') || (c as u32) > 0x7f
}

impl<'a> Lexer<'a> {
    fn new(text: &'a str) -> Self {
        Lexer {
            chars: text.chars().peekable(),
            lookahead: Vec::new(),
            line: 1,
            column: 1,
        }
    }

    fn peek_n(&mut self, n: usize) -> Option<char> {
        while self.lookahead.len() <= n {
            let c = self.chars.next()?;
            self.lookahead.push(c);
        }
        Some(self.lookahead[n])
    }

    fn peek(&mut self) -> Option<char> {
        self.peek_n(0)
    }

    fn bump(&mut self) -> Option<char> {
        let c = if self.lookahead.is_empty() {
            self.chars.next()
        } else {
            Some(self.lookahead.remove(0))
        }?;
        if c == '\n' {
            self.line += 1;
            self.column = 1;
        } else {
            self.column += 1;
        }
        Some(c)
    }

    fn error(&self, message: impl Into<String>) -> SyntaxError {
        SyntaxError::new(self.line, self.column, message)
    }

    /// Name characters, allowing interior '.' but never a trailing one.
    fn name(&mut self, extra: impl Fn(char) -> bool) -> String {
        let mut out = String::new();
        loop {
            match self.peek() {
                Some(c) if is_name_char(c) || extra(c) => {
                    out.push(c);
                    self.bump();
                }
                Some('.') if matches!(self.peek_n(1), Some(c) if is_name_char(c) || extra(c)) => {
                    out.push('.');
                    self.bump();
                }
                _ => return out,
            }
        }
    }

    fn tokens(mut self) -> Result<Vec<Spanned>, SyntaxError> {
        let mut out = Vec::new();
        loop {
            while let Some(c) = self.peek() {
                if c.is_whitespace() {
                    self.bump();
                } else if c == '#' {
                    while !matches!(self.peek(), None | Some('\n')) {
                        self.bump();
                    }
                } else {
                    break;
                }
            }
            let (line, column) = (self.line, self.column);
            let Some(c) = self.peek() else {
                out.push(Spanned {
                    tok: Tok::Eof,
                    line,
                    column,
                });
                return Ok(out);
            };
            let tok = self.token(c)?;
            out.push(Spanned { tok, line, column });
        }
    }

    fn token(&mut self, c: char) -> Result<Tok, SyntaxError> {
        let simple = match c {
            '.' => Some(Tok::Dot),
            ';' => Some(Tok::Semi),
            ',' => Some(Tok::Comma),
            '{' => Some(Tok::LBrace),
            '}' => Some(Tok::RBrace),
            '[' => Some(Tok::LBracket),
            ']' => Some(Tok::RBracket),
            _ => None,
        };
        if let Some(tok) = simple {
            self.bump();
            return Ok(tok);
        }
        match c {
            '<' => {
                if self.peek_n(1) == Some('=') && self.peek_n(2) == Some('>') {
                    self.bump();
                    self.bump();
                    self.bump();
                    return Ok(Tok::Equiv);
                }
                self.bump();
                let mut iri = String::new();
                loop {
                    match self.bump() {
                        Some('>') => return Ok(Tok::Iri(iri)),
                        Some(c) if c.is_whitespace() || matches!(c, '<' | '"' | '{' | '}') => {
                            return Err(self.error(format!("illegal character {c:?} in IRI")))
                        }
                        Some(c) => iri.push(c),
                        None => return Err(self.error("unterminated IRI")),
                    }
                }
            }
            '=' => {
                self.bump();
                if self.bump() == Some('>') {
                    Ok(Tok::Implies)
                } else {
                    Err(self.error("expected '=>'"))
                }
            }
            '^' => {
                self.bump();
                if self.bump() == Some('^') {
                    Ok(Tok::Carets)
                } else {
                    Err(self.error("expected '^^'"))
                }
            }
            '"' => self.string(),
            '@' => {
                self.bump();
                let word = self.name(|_| false);
                if word.is_empty() {
                    return Err(self.error("expected directive or language tag after '@'"));
                }
                if word == "prefix" {
                    Ok(Tok::Prefix)
                } else {
                    Ok(Tok::LangTag(word))
                }
            }
            '?' => {
                self.bump();
                let name = self.name(|_| false);
                if name.is_empty() {
                    return Err(self.error("expected variable name after '?'"));
                }
                Ok(Tok::Var(name))
            }
            '_' if self.peek_n(1) == Some(':') => {
                self.bump();
                self.bump();
                let label = self.name(|_| false);
                if label.is_empty() {
                    return Err(self.error("empty blank node label"));
                }
                Ok(Tok::Blank(label))
            }
            c if c.is_ascii_digit() || matches!(c, '+' | '-') => self.number(),
            c if is_name_start(c) || c == ':' => {
                let prefix = if c == ':' {
                    String::new()
                } else {
                    self.name(|_| false)
                };
                if self.peek() == Some(':') {
                    self.bump();
                    let local = self.name(|c| c == ':');
                    Ok(Tok::PName(prefix, local))
                } else if prefix == "a" {
                    Ok(Tok::A)
                } else {
                    Err(self.error(format!("unexpected bare word '{prefix}'")))
                }
            }
            other => Err(self.error(format!("unexpected character {other:?}"))),
        }
    }

    fn string(&mut self) -> Result<Tok, SyntaxError> {
        self.bump();
        let mut out = String::new();
        loop {
            match self.bump() {
                Some('"') => return Ok(Tok::Str(out)),
                Some('\\') => {
                    let esc = match self.bump() {
                        Some('n') => '\n',
                        Some('r') => '\r',
                        Some('t') => '\t',
                        Some('"') => '"',
                        Some('\'') => '\'',
                        Some('\\') => '\\',
                        Some(u @ ('u' | 'U')) => {
                            let width = if u == 'u' { 4 } else { 8 };
                            let hex: String = (0..width).filter_map(|_| self.bump()).collect();
                            u32::from_str_radix(&hex, 16)
                                .ok()
                                .and_then(char::from_u32)
                                .ok_or_else(|| {
                                    self.error(format!("bad unicode escape \\{u}{hex}"))
                                })?
                        }
                        other => return Err(self.error(format!("bad string escape {other:?}"))),
                    };
                    out.push(esc);
                }
                Some('\n') | None => return Err(self.error("unterminated string literal")),
                Some(c) => out.push(c),
            }
        }
    }

    fn number(&mut self) -> Result<Tok, SyntaxError> {
        let mut text = String::new();
        if let Some(sign @ ('+' | '-')) = self.peek() {
            text.push(sign);
            self.bump();
        }
        let digits = |lx: &mut Self, text: &mut String| {
            while let Some(d) = lx.peek().filter(char::is_ascii_digit) {
                text.push(d);
                lx.bump();
            }
        };
        digits(self, &mut text);
        if !text.ends_with(|c: char| c.is_ascii_digit()) {
            return Err(self.error("malformed number"));
        }
        if self.peek() == Some('.') && matches!(self.peek_n(1), Some(d) if d.is_ascii_digit()) {
            text.push('.');
            self.bump();
            digits(self, &mut text);
            return Ok(Tok::Decimal(text));
        }
        Ok(Tok::Integer(text))
    }
}

pub(crate) fn tokenize(text: &str) -> Result<Vec<Spanned>, SyntaxError> {
    Lexer::new(text).tokens()
}

/// Where a term is being read; decides which term kinds are legal.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub(crate) enum Position {
    Subject,
    Predicate,
    Object,
}

/// Cursor over a token list plus the prefix table in scope.
pub(crate) struct TokenCursor {
    tokens: Vec<Spanned>,
    pos: usize,
    prefixes: HashMap<String, String>,
    blank_labels: HashSet<String>,
    anon_counter: usize,
}

impl TokenCursor {
    pub fn new(text: &str) -> Result<TokenCursor, SyntaxError> {
        let tokens = tokenize(text)?;
        let blank_labels = tokens
            .iter()
            .filter_map(|t| match &t.tok {
                Tok::Blank(l) => Some(l.clone()),
                _ => None,
            })
            .collect();
        let prefixes = [("rdf", RDF), ("rdfs", RDFS), ("owl", OWL), ("xsd", XSD)]
            .into_iter()
            .map(|(p, ns)| (p.to_string(), ns.to_string()))
            .collect();
        Ok(TokenCursor {
            tokens,
            pos: 0,
            prefixes,
            blank_labels,
            anon_counter: 0,
        })
    }

    pub fn peek(&self) -> &Tok {
        &self.tokens[self.pos].tok
    }

    pub fn next(&mut self) -> Spanned {
        let t = self.tokens[self.pos].clone();
        if self.pos + 1 < self.tokens.len() {
            self.pos += 1;
        }
        t
    }

    pub fn at_eof(&self) -> bool {
        matches!(self.peek(), Tok::Eof)
    }

    pub fn error_here(&self, message: impl Into<String>) -> SyntaxError {
        let t = &self.tokens[self.pos];
        SyntaxError::new(t.line, t.column, message)
    }

    pub fn unexpected(&self, expected: &str) -> SyntaxError {
        self.error_here(format!(
            "expected {expected}, found {}",
            self.peek().describe()
        ))
    }

    pub fn eat(&mut self, tok: &Tok) -> bool {
        if self.peek() == tok {
            self.next();
            true
        } else {
            false
        }
    }

    pub fn expect(&mut self, tok: &Tok) -> Result<(), SyntaxError> {
        if self.eat(tok) {
            Ok(())
        } else {
            Err(self.unexpected(&tok.describe()))
        }
    }

    /// Parses the remainder of `@prefix p: <iri> .` after the keyword.
    /// Redeclaring a prefix replaces the earlier binding.
    pub fn prefix_directive(&mut self) -> Result<(), SyntaxError> {
        let name = match self.peek().clone() {
            Tok::PName(prefix, local) if local.is_empty() => {
                self.next();
                prefix
            }
            _ => return Err(self.unexpected("prefix name ending in ':'")),
        };
        let iri = match self.peek().clone() {
            Tok::Iri(iri) => {
                self.check_absolute(&iri)?;
                self.next();
                iri
            }
            _ => return Err(self.unexpected("namespace IRI")),
        };
        self.expect(&Tok::Dot)?;
        self.prefixes.insert(name, iri);
        Ok(())
    }

    fn check_absolute(&self, iri: &str) -> Result<(), SyntaxError> {
        if is_absolute_iri(iri) {
            Ok(())
        } else {
            Err(self.error_here(format!("relative IRI <{iri}> is not allowed")))
        }
    }

    fn expand(&self, prefix: &str, local: &str) -> Result<String, SyntaxError> {
        self.prefixes
            .get(prefix)
            .map(|ns| format!("{ns}{local}"))
            .ok_or_else(|| self.error_here(format!("undeclared prefix '{prefix}:'")))
    }

    /// A fresh blank label that collides with no label written in the input.
    pub fn fresh_blank(&mut self) -> Term {
        loop {
            self.anon_counter += 1;
            let label = format!("anon{}", self.anon_counter);
            if !self.blank_labels.contains(&label) {
                return Term::blank(label);
            }
        }
    }

    /// Reads one IRI (`<..>`, prefixed name, or `a` in predicate position).
    pub fn iri(&mut self) -> Result<Option<Term>, SyntaxError> {
        let iri = match self.peek().clone() {
            Tok::Iri(iri) => {
                self.check_absolute(&iri)?;
                iri
            }
            Tok::PName(prefix, local) => self.expand(&prefix, &local)?,
            _ => return Ok(None),
        };
        self.next();
        Ok(Some(Term::Iri(iri.into())))
    }

    /// Reads a single term. Variables are only accepted when
    /// `allow_variables` is set; numeric literals only with `allow_numbers`.
    pub fn term(
        &mut self,
        position: Position,
        allow_variables: bool,
        allow_numbers: bool,
    ) -> Result<Term, SyntaxError> {
        if position == Position::Predicate && self.eat(&Tok::A) {
            return Ok(Term::Iri(RDF_TYPE.into()));
        }
        if let Some(iri) = self.iri()? {
            return Ok(iri);
        }
        let tok = self.peek().clone();
        let term = match tok {
            Tok::Var(name) if allow_variables => Term::variable(name),
            Tok::Var(name) => {
                return Err(self.error_here(format!("variable ?{name} is not allowed in data")))
            }
            Tok::Blank(label) if position != Position::Predicate => Term::blank(label),
            Tok::Str(lexical) if position == Position::Object => {
                self.next();
                return match self.peek().clone() {
                    Tok::LangTag(lang) => {
                        self.next();
                        Ok(Term::lang_literal(lexical, lang))
                    }
                    Tok::Carets => {
                        self.next();
                        match self.iri()? {
                            Some(Term::Iri(dt)) => Ok(Term::typed_literal(lexical, dt)),
                            _ => Err(self.unexpected("datatype IRI")),
                        }
                    }
                    _ => Ok(Term::plain_literal(lexical)),
                };
            }
            Tok::Integer(n) if allow_numbers && position == Position::Object => {
                Term::typed_literal(n, XSD_INTEGER)
            }
            Tok::Decimal(n) if allow_numbers && position == Position::Object => {
                Term::typed_literal(n, XSD_DECIMAL)
            }
            Tok::Str(_) | Tok::Integer(_) | Tok::Decimal(_) => {
                return Err(self.error_here(format!(
                    "literal not allowed in {} position",
                    match position {
                        Position::Subject => "subject",
                        Position::Predicate => "predicate",
                        Position::Object => "object",
                    }
                )))
            }
            _ => {
                return Err(self.unexpected(match position {
                    Position::Predicate => "predicate",
                    _ => "term",
                }))
            }
        };
        self.next();
        Ok(term)
    }
}
