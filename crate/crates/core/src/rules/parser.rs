use crate::error::{Error, Result};
use crate::rdf::syntax::{Position, Tok, TokenCursor};
use crate::rules::rule::{Rule, RuleSet, TriplePattern};

/// Parses N3-style rules: `{ body } => { head } .` and the bidirectional
/// `{ a } <=> { b } .`, which yields a forward and a reversed rule.
///
/// Rules are labelled `r1`, `r2`, ... in the order they are produced.
pub fn parse_rules(text: &str) -> Result<RuleSet> {
    let mut cursor = TokenCursor::new(text)?;
    let mut rules = RuleSet::empty();
    let mut produced = 0usize;
    while !cursor.at_eof() {
        if cursor.eat(&Tok::Prefix) {
            cursor.prefix_directive()?;
            continue;
        }
        let left = graph_block(&mut cursor)?;
        let bidirectional = match cursor.peek() {
            Tok::Implies => false,
            Tok::Equiv => true,
            _ => return Err(cursor.unexpected("'=>' or '<=>'").into()),
        };
        cursor.next();
        let right = graph_block(&mut cursor)?;
        cursor.expect(&Tok::Dot)?;

        let mut pairs = vec![(left.clone(), right.clone())];
        if bidirectional {
            pairs.push((right, left));
        }
        for (body, head) in pairs {
            produced += 1;
            let label = format!("r{produced}");
            if body.is_empty() || head.is_empty() {
                return Err(Error::InvalidTriple(format!(
                    "rule {label} needs a non-empty body and head"
                )));
            }
            rules.insert(Rule::new(label, body, head)?)?;
        }
    }
    Ok(rules)
}

fn graph_block(cursor: &mut TokenCursor) -> Result<Vec<TriplePattern>> {
    cursor.expect(&Tok::LBrace)?;
    let mut patterns = Vec::new();
    while !cursor.eat(&Tok::RBrace) {
        let subject = cursor.term(Position::Subject, true, false)?;
        loop {
            let predicate = cursor.term(Position::Predicate, true, false)?;
            loop {
                let object = cursor.term(Position::Object, true, false)?;
                let pattern = TriplePattern::new(subject.clone(), predicate.clone(), object)
                    .map_err(|e| cursor.error_here(e.to_string()))?;
                patterns.push(pattern);
                if !cursor.eat(&Tok::Comma) {
                    break;
                }
            }
            if !cursor.eat(&Tok::Semi) || matches!(cursor.peek(), Tok::Dot | Tok::RBrace) {
                break;
            }
        }
        if !cursor.eat(&Tok::Dot) && !matches!(cursor.peek(), Tok::RBrace) {
            return Err(cursor.unexpected("'.' or '}'").into());
        }
    }
    Ok(patterns)
}
