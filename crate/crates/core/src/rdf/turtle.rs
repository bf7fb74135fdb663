//! Reader for the supported Turtle subset and the canonical line-per-triple
//! writer.
//!
//! Accepted input: `@prefix` directives, absolute `<IRI>`s, prefixed names,
//! the keyword `a`, `;` and `,` abbreviations, string literals with an
//! optional `@lang` or `^^datatype`, and `_:label` blank nodes. The
//! extended mode used for dataset descriptions additionally accepts
//! bracketed anonymous nodes and bare integer/decimal literals.

use crate::error::SyntaxError;
use crate::rdf::graph::{Graph, Triple};
use crate::rdf::syntax::{Position, Tok, TokenCursor};
use crate::rdf::term::Term;

pub fn parse_turtle(text: &str) -> Result<Graph, SyntaxError> {
    TurtleReader::new(text, false)?.read()
}

/// Parses with anonymous `[ ... ]` nodes and numeric literals enabled.
pub(crate) fn parse_turtle_extended(text: &str) -> Result<Graph, SyntaxError> {
    TurtleReader::new(text, true)?.read()
}

/// One triple per line in full N-Triples form, in canonical order.
pub fn serialize_turtle(graph: &Graph) -> String {
    let mut out = String::new();
    for triple in graph {
        out.push_str(&triple.to_string());
        out.push('\n');
    }
    out
}

struct TurtleReader {
    cursor: TokenCursor,
    extended: bool,
    graph: Graph,
}

impl TurtleReader {
    fn new(text: &str, extended: bool) -> Result<Self, SyntaxError> {
        Ok(TurtleReader {
            cursor: TokenCursor::new(text)?,
            extended,
            graph: Graph::new(),
        })
    }

    fn read(mut self) -> Result<Graph, SyntaxError> {
        while !self.cursor.at_eof() {
            if self.cursor.eat(&Tok::Prefix) {
                self.cursor.prefix_directive()?;
                continue;
            }
            let anonymous = matches!(self.cursor.peek(), Tok::LBracket);
            let subject = self.subject()?;
            let bracketed_alone = anonymous && matches!(self.cursor.peek(), Tok::Dot);
            if !bracketed_alone {
                self.predicate_object_list(&subject)?;
            }
            self.cursor.expect(&Tok::Dot)?;
        }
        Ok(self.graph)
    }

    fn subject(&mut self) -> Result<Term, SyntaxError> {
        if self.extended && matches!(self.cursor.peek(), Tok::LBracket) {
            return self.anonymous_node();
        }
        self.cursor.term(Position::Subject, false, false)
    }

    fn object(&mut self) -> Result<Term, SyntaxError> {
        if self.extended && matches!(self.cursor.peek(), Tok::LBracket) {
            return self.anonymous_node();
        }
        self.cursor.term(Position::Object, false, self.extended)
    }

    fn anonymous_node(&mut self) -> Result<Term, SyntaxError> {
        self.cursor.expect(&Tok::LBracket)?;
        let node = self.cursor.fresh_blank();
        if !self.cursor.eat(&Tok::RBracket) {
            self.predicate_object_list(&node)?;
            self.cursor.expect(&Tok::RBracket)?;
        }
        Ok(node)
    }

    fn predicate_object_list(&mut self, subject: &Term) -> Result<(), SyntaxError> {
        loop {
            let predicate = self.cursor.term(Position::Predicate, false, false)?;
            loop {
                let object = self.object()?;
                let triple = Triple::new(subject.clone(), predicate.clone(), object)
                    .map_err(|e| self.cursor.error_here(e.to_string()))?;
                self.graph.insert(triple);
                if !self.cursor.eat(&Tok::Comma) {
                    break;
                }
            }
            if !self.cursor.eat(&Tok::Semi) {
                return Ok(());
            }
            // a trailing ';' before '.' or ']' is allowed
            while self.cursor.eat(&Tok::Semi) {}
            if matches!(self.cursor.peek(), Tok::Dot | Tok::RBracket) {
                return Ok(());
            }
        }
    }
}
