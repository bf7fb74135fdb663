use std::cmp::Ordering;
use std::fmt;
use std::iter::once;
use std::sync::Arc;

use crate::error::{Error, Result};

pub const RDF: &str = "http://www.w3.org/1999/02/22-rdf-syntax-ns#";
pub const RDFS: &str = "http://www.w3.org/2000/01/rdf-schema#";
pub const OWL: &str = "http://www.w3.org/2002/07/owl#";
pub const XSD: &str = "http://www.w3.org/2001/XMLSchema#";

pub const RDF_TYPE: &str = "http://www.w3.org/1999/02/22-rdf-syntax-ns#type";
pub const RDF_VALUE: &str = "http://www.w3.org/1999/02/22-rdf-syntax-ns#value";
pub const RDF_LANG_STRING: &str = "http://www.w3.org/1999/02/22-rdf-syntax-ns#langString";
pub const XSD_INTEGER: &str = "http://www.w3.org/2001/XMLSchema#integer";
pub const XSD_DECIMAL: &str = "http://www.w3.org/2001/XMLSchema#decimal";

/// True when `s` starts with an RFC 3987 scheme followed by ':'.
pub fn is_absolute_iri(s: &str) -> bool {
    let Some((scheme, _)) = s.split_once(':') else {
        return false;
    };
    let mut chars = scheme.chars();
    matches!(chars.next(), Some(c) if c.is_ascii_alphabetic())
        && chars.all(|c| c.is_ascii_alphanumeric() || matches!(c, '+' | '-' | '.'))
}

#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct Literal {
    lexical: Arc<str>,
    datatype: Option<Arc<str>>,
    language: Option<Arc<str>>,
}

impl Literal {
    pub fn lexical(&self) -> &str {
        &self.lexical
    }

    pub fn datatype(&self) -> Option<&str> {
        self.datatype.as_deref()
    }

    pub fn language(&self) -> Option<&str> {
        self.language.as_deref()
    }

    fn nt_bytes(&self) -> impl Iterator<Item = u8> + '_ {
        self.lexical
            .bytes()
            .flat_map(escape_byte)
            .chain(once(b'"'))
            .chain(
                self.datatype
                    .iter()
                    .flat_map(|dt| b"^^<".iter().copied().chain(dt.bytes()).chain(once(b'>'))),
            )
            .chain(
                self.language
                    .iter()
                    .flat_map(|lang| once(b'@').chain(lang.bytes())),
            )
    }
}

fn escape_byte(b: u8) -> impl Iterator<Item = u8> {
    let (first, second) = match b {
        b'"' => (b'\\', Some(b'"')),
        b'\\' => (b'\\', Some(b'\\')),
        b'\n' => (b'\\', Some(b'n')),
        b'\r' => (b'\\', Some(b'r')),
        b'\t' => (b'\\', Some(b't')),
        _ => (b, None),
    };
    once(first).chain(second)
}

/// An RDF term, or a variable when used inside a rule pattern.
///
/// Terms order by their N-Triples rendering, compared byte by byte. That
/// order is the canonical order used for serialization and for the
/// candidate sequence of graph reduction.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub enum Term {
    Iri(Arc<str>),
    Blank(Arc<str>),
    Literal(Literal),
    Variable(Arc<str>),
}

impl Term {
    pub fn iri(iri: impl AsRef<str>) -> Result<Term> {
        let iri = iri.as_ref();
        if !is_absolute_iri(iri) {
            return Err(Error::InvalidTriple(format!("relative IRI <{iri}>")));
        }
        if iri
            .chars()
            .any(|c| matches!(c, '<' | '>' | '"' | ' ' | '\n'))
        {
            return Err(Error::InvalidTriple(format!(
                "illegal character in IRI <{iri}>"
            )));
        }
        Ok(Term::Iri(iri.into()))
    }

    pub fn blank(label: impl AsRef<str>) -> Term {
        Term::Blank(label.as_ref().into())
    }

    pub fn variable(name: impl AsRef<str>) -> Term {
        Term::Variable(name.as_ref().into())
    }

    pub fn plain_literal(lexical: impl AsRef<str>) -> Term {
        Term::Literal(Literal {
            lexical: lexical.as_ref().into(),
            datatype: None,
            language: None,
        })
    }

    pub fn typed_literal(lexical: impl AsRef<str>, datatype: impl AsRef<str>) -> Term {
        Term::Literal(Literal {
            lexical: lexical.as_ref().into(),
            datatype: Some(datatype.as_ref().into()),
            language: None,
        })
    }

    pub fn lang_literal(lexical: impl AsRef<str>, language: impl AsRef<str>) -> Term {
        Term::Literal(Literal {
            lexical: lexical.as_ref().into(),
            datatype: None,
            language: Some(language.as_ref().into()),
        })
    }

    pub fn as_iri(&self) -> Option<&str> {
        match self {
            Term::Iri(iri) => Some(iri),
            _ => None,
        }
    }

    pub fn as_literal(&self) -> Option<&Literal> {
        match self {
            Term::Literal(lit) => Some(lit),
            _ => None,
        }
    }

    pub fn is_iri(&self) -> bool {
        matches!(self, Term::Iri(_))
    }

    pub fn is_blank(&self) -> bool {
        matches!(self, Term::Blank(_))
    }

    pub fn is_literal(&self) -> bool {
        matches!(self, Term::Literal(_))
    }

    pub fn is_variable(&self) -> bool {
        matches!(self, Term::Variable(_))
    }

    fn kind_rank(&self) -> u8 {
        // first byte of the N-Triples form
        match self {
            Term::Literal(_) => b'"',
            Term::Iri(_) => b'<',
            Term::Variable(_) => b'?',
            Term::Blank(_) => b'_',
        }
    }
}

impl Ord for Term {
    fn cmp(&self, other: &Self) -> Ordering {
        match (self, other) {
            (Term::Iri(a), Term::Iri(b)) => {
                a.bytes().chain(once(b'>')).cmp(b.bytes().chain(once(b'>')))
            }
            (Term::Blank(a), Term::Blank(b)) | (Term::Variable(a), Term::Variable(b)) => {
                a.as_bytes().cmp(b.as_bytes())
            }
            (Term::Literal(a), Term::Literal(b)) => a.nt_bytes().cmp(b.nt_bytes()),
            _ => self.kind_rank().cmp(&other.kind_rank()),
        }
    }
}

impl PartialOrd for Term {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl fmt::Display for Term {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Term::Iri(iri) => write!(f, "<{iri}>"),
            Term::Blank(label) => write!(f, "_:{label}"),
            Term::Variable(name) => write!(f, "?{name}"),
            Term::Literal(lit) => {
                let bytes: Vec<u8> = once(b'"').chain(lit.nt_bytes()).collect();
                // escaping only ever inserts ASCII, so the bytes stay UTF-8
                f.write_str(std::str::from_utf8(&bytes).map_err(|_| fmt::Error)?)
            }
        }
    }
}
