//! Text syntax for LTL.
//!
//! Precedence from tightest to loosest: unary `! X F G`, then `U` and `R`
//! (right associative), `&`, `|`, `->` (right associative), `<->`.
//! Constants are `True`/`1` and `False`/`0`.

use std::fmt;

use thiserror::Error;

use crate::formula::{Atom, Formula};

/// Surface syntax before negation normal form.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Expr {
    True,
    False,
    Atom(Atom),
    Not(Box<Expr>),
    Next(Box<Expr>),
    Eventually(Box<Expr>),
    Always(Box<Expr>),
    And(Box<Expr>, Box<Expr>),
    Or(Box<Expr>, Box<Expr>),
    Implies(Box<Expr>, Box<Expr>),
    Iff(Box<Expr>, Box<Expr>),
    Until(Box<Expr>, Box<Expr>),
    Release(Box<Expr>, Box<Expr>),
}

#[derive(Clone, Debug, PartialEq, Eq, Error)]
#[error("{line}:{column}: {kind}")]
pub struct ParseError {
    pub line: usize,
    pub column: usize,
    pub kind: ParseErrorKind,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum ParseErrorKind {
    UnknownToken(char),
    Unexpected {
        found: String,
        expected: &'static str,
    },
}

impl fmt::Display for ParseErrorKind {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            ParseErrorKind::UnknownToken(c) => write!(f, "unknown token '{c}'"),
            ParseErrorKind::Unexpected { found, expected } => {
                write!(f, "expected {expected}, found {found}")
            }
        }
    }
}

impl ParseError {
    /// The offending source line with a caret under the error column.
    pub fn render(&self, source: &str) -> String {
        let line = source.lines().nth(self.line - 1).unwrap_or("");
        format!(
            "error: {self}\n  {line}\n  {caret:>width$}",
            caret = "^",
            width = self.column
        )
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
enum Tok {
    Ident(String),
    True,
    False,
    Not,
    Next,
    Eventually,
    Always,
    Until,
    Release,
    And,
    Or,
    Implies,
    Iff,
    LParen,
    RParen,
    Eof,
}

impl fmt::Display for Tok {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let s = match self {
            Tok::Ident(s) => return write!(f, "'{s}'"),
            Tok::True => "'True'",
            Tok::False => "'False'",
            Tok::Not => "'!'",
            Tok::Next => "'X'",
            Tok::Eventually => "'F'",
            Tok::Always => "'G'",
            Tok::Until => "'U'",
            Tok::Release => "'R'",
            Tok::And => "'&'",
            Tok::Or => "'|'",
            Tok::Implies => "'->'",
            Tok::Iff => "'<->'",
            Tok::LParen => "'('",
            Tok::RParen => "')'",
            Tok::Eof => "end of input",
        };
        f.write_str(s)
    }
}

struct Spanned {
    tok: Tok,
    line: usize,
    column: usize,
}

fn lex(text: &str) -> Result<Vec<Spanned>, ParseError> {
    let chars: Vec<char> = text.chars().collect();
    let mut out = Vec::new();
    let (mut i, mut line, mut col) = (0, 1, 1);
    while i < chars.len() {
        let c = chars[i];
        let (start_line, start_col) = (line, col);
        if c == '\n' {
            i += 1;
            line += 1;
            col = 1;
            continue;
        }
        if c.is_whitespace() {
            i += 1;
            col += 1;
            continue;
        }
        let (tok, len) = if c.is_ascii_alphabetic() || c == '_' {
            let len = chars[i..]
                .iter()
                .take_while(|c| c.is_ascii_alphanumeric() || **c == '_')
                .count();
            let word: String = chars[i..i + len].iter().collect();
            let tok = match word.as_str() {
                "True" => Tok::True,
                "False" => Tok::False,
                "X" => Tok::Next,
                "F" => Tok::Eventually,
                "G" => Tok::Always,
                "U" => Tok::Until,
                "R" => Tok::Release,
                _ => Tok::Ident(word),
            };
            (tok, len)
        } else {
            let rest: String = chars[i..chars.len().min(i + 3)].iter().collect();
            if rest.starts_with("<->") {
                (Tok::Iff, 3)
            } else if rest.starts_with("->") {
                (Tok::Implies, 2)
            } else {
                let tok = match c {
                    '1' => Tok::True,
                    '0' => Tok::False,
                    '!' => Tok::Not,
                    '&' => Tok::And,
                    '|' => Tok::Or,
                    '(' => Tok::LParen,
                    ')' => Tok::RParen,
                    _ => {
                        return Err(ParseError {
                            line,
                            column: col,
                            kind: ParseErrorKind::UnknownToken(c),
                        })
                    }
                };
                (tok, 1)
            }
        };
        out.push(Spanned {
            tok,
            line: start_line,
            column: start_col,
        });
        i += len;
        col += len;
    }
    out.push(Spanned {
        tok: Tok::Eof,
        line,
        column: col,
    });
    Ok(out)
}

struct Parser {
    toks: Vec<Spanned>,
    pos: usize,
    occurrence: u32,
}

impl Parser {
    fn peek(&self) -> &Tok {
        &self.toks[self.pos].tok
    }

    fn bump(&mut self) -> Tok {
        let tok = self.toks[self.pos].tok.clone();
        if tok != Tok::Eof {
            self.pos += 1;
        }
        tok
    }

    fn error(&self, expected: &'static str) -> ParseError {
        let t = &self.toks[self.pos];
        ParseError {
            line: t.line,
            column: t.column,
            kind: ParseErrorKind::Unexpected {
                found: t.tok.to_string(),
                expected,
            },
        }
    }

    fn iff(&mut self) -> Result<Expr, ParseError> {
        let mut lhs = self.implies()?;
        while *self.peek() == Tok::Iff {
            self.bump();
            let rhs = self.implies()?;
            lhs = Expr::Iff(Box::new(lhs), Box::new(rhs));
        }
        Ok(lhs)
    }

    fn implies(&mut self) -> Result<Expr, ParseError> {
        let lhs = self.or()?;
        if *self.peek() == Tok::Implies {
            self.bump();
            let rhs = self.implies()?;
            return Ok(Expr::Implies(Box::new(lhs), Box::new(rhs)));
        }
        Ok(lhs)
    }

    fn or(&mut self) -> Result<Expr, ParseError> {
        let mut lhs = self.and()?;
        while *self.peek() == Tok::Or {
            self.bump();
            let rhs = self.and()?;
            lhs = Expr::Or(Box::new(lhs), Box::new(rhs));
        }
        Ok(lhs)
    }

    fn and(&mut self) -> Result<Expr, ParseError> {
        let mut lhs = self.temporal()?;
        while *self.peek() == Tok::And {
            self.bump();
            let rhs = self.temporal()?;
            lhs = Expr::And(Box::new(lhs), Box::new(rhs));
        }
        Ok(lhs)
    }

    fn temporal(&mut self) -> Result<Expr, ParseError> {
        let lhs = self.unary()?;
        match self.peek() {
            Tok::Until => {
                self.bump();
                let rhs = self.temporal()?;
                Ok(Expr::Until(Box::new(lhs), Box::new(rhs)))
            }
            Tok::Release => {
                self.bump();
                let rhs = self.temporal()?;
                Ok(Expr::Release(Box::new(lhs), Box::new(rhs)))
            }
            _ => Ok(lhs),
        }
    }

    fn unary(&mut self) -> Result<Expr, ParseError> {
        let wrap: fn(Box<Expr>) -> Expr = match self.peek() {
            Tok::Not => Expr::Not,
            Tok::Next => Expr::Next,
            Tok::Eventually => Expr::Eventually,
            Tok::Always => Expr::Always,
            _ => return self.primary(),
        };
        self.bump();
        Ok(wrap(Box::new(self.unary()?)))
    }

    fn primary(&mut self) -> Result<Expr, ParseError> {
        match self.peek().clone() {
            Tok::True => {
                self.bump();
                Ok(Expr::True)
            }
            Tok::False => {
                self.bump();
                Ok(Expr::False)
            }
            Tok::Ident(name) => {
                self.bump();
                let atom = Atom::new(name, self.occurrence);
                self.occurrence += 1;
                Ok(Expr::Atom(atom))
            }
            Tok::LParen => {
                self.bump();
                let inner = self.iff()?;
                if *self.peek() != Tok::RParen {
                    return Err(self.error("')'"));
                }
                self.bump();
                Ok(inner)
            }
            _ => Err(self.error("a formula")),
        }
    }
}

/// Parses the surface syntax without normalizing it.
pub fn parse_expr(text: &str) -> Result<Expr, ParseError> {
    let mut p = Parser {
        toks: lex(text)?,
        pos: 0,
        occurrence: 0,
    };
    let e = p.iff()?;
    if *p.peek() != Tok::Eof {
        return Err(p.error("an operator or end of input"));
    }
    Ok(e)
}

/// Parses `text` and returns its negation normal form.
pub fn parse(text: &str) -> Result<Formula, ParseError> {
    parse_expr(text).map(|e| nnf(&e))
}

/// Negation normal form: negations are pushed onto atoms, `F`/`G` become
/// `True U _` / `False R _`, implications are expanded.
pub fn nnf(e: &Expr) -> Formula {
    push_negation(e, false)
}

fn push_negation(e: &Expr, neg: bool) -> Formula {
    let go = |e: &Expr| push_negation(e, neg);
    match e {
        Expr::True if neg => Formula::ff(),
        Expr::True => Formula::tt(),
        Expr::False if neg => Formula::tt(),
        Expr::False => Formula::ff(),
        Expr::Atom(a) => Formula::literal(a.clone(), !neg),
        Expr::Not(x) => push_negation(x, !neg),
        Expr::Next(x) => Formula::next(go(x)),
        Expr::Eventually(x) if neg => Formula::always(go(x)),
        Expr::Eventually(x) => Formula::eventually(go(x)),
        Expr::Always(x) if neg => Formula::eventually(go(x)),
        Expr::Always(x) => Formula::always(go(x)),
        Expr::And(l, r) if neg => Formula::or(go(l), go(r)),
        Expr::And(l, r) => Formula::and(go(l), go(r)),
        Expr::Or(l, r) if neg => Formula::and(go(l), go(r)),
        Expr::Or(l, r) => Formula::or(go(l), go(r)),
        Expr::Until(l, r) if neg => Formula::release(go(l), go(r)),
        Expr::Until(l, r) => Formula::until(go(l), go(r)),
        Expr::Release(l, r) if neg => Formula::until(go(l), go(r)),
        Expr::Release(l, r) => Formula::release(go(l), go(r)),
        Expr::Implies(l, r) => {
            let desugared = Expr::Or(Box::new(Expr::Not(l.clone())), r.clone());
            push_negation(&desugared, neg)
        }
        Expr::Iff(l, r) => {
            let desugared = Expr::And(
                Box::new(Expr::Implies(l.clone(), r.clone())),
                Box::new(Expr::Implies(r.clone(), l.clone())),
            );
            push_negation(&desugared, neg)
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::formula::Node;

    fn lit(name: &str, occ: u32, positive: bool) -> Formula {
        Formula::literal(Atom::new(name, occ), positive)
    }

    #[test]
    fn until_production() {
        assert_eq!(
            parse("a U b").unwrap(),
            Formula::until(lit("a", 0, true), lit("b", 1, true))
        );
    }

    #[test]
    fn globally_desugars_to_release() {
        assert_eq!(
            parse("G (a U b)").unwrap(),
            Formula::release(
                Formula::ff(),
                Formula::until(lit("a", 0, true), lit("b", 1, true))
            )
        );
        assert_eq!(
            parse("F a").unwrap(),
            Formula::until(Formula::tt(), lit("a", 0, true))
        );
    }

    #[test]
    fn negated_until_is_release() {
        assert_eq!(
            parse("! (a U b)").unwrap(),
            Formula::release(lit("a", 0, false), lit("b", 1, false))
        );
    }

    #[test]
    fn nnf_rules() {
        assert_eq!(
            parse("!(a & b)").unwrap(),
            Formula::or(lit("a", 0, false), lit("b", 1, false))
        );
        assert_eq!(parse("!X a").unwrap(), Formula::next(lit("a", 0, false)));
        assert_eq!(parse("!True").unwrap(), Formula::ff());
        assert_eq!(parse("!0").unwrap(), Formula::tt());
        assert_eq!(
            parse("!G a").unwrap(),
            Formula::until(Formula::tt(), lit("a", 0, false))
        );
    }

    #[test]
    fn precedence_and_associativity() {
        // U binds tighter than &, & tighter than |.
        let f = parse("a U b & c | d").unwrap();
        assert!(matches!(f.node(), Node::Or(..)));
        assert_eq!(f.to_string(), "a U b & c | d");
        // right associative U
        let f = parse("a U b U c").unwrap();
        match f.node() {
            Node::Until(l, r) => {
                assert_eq!(*l, lit("a", 0, true));
                assert!(matches!(r.node(), Node::Until(..)));
            }
            _ => panic!("expected until"),
        }
        // -> is right associative: a -> (b -> c)
        let f = parse("a -> b -> c").unwrap();
        assert_eq!(
            f,
            Formula::or(
                lit("a", 0, false),
                Formula::or(lit("b", 1, false), lit("c", 2, true))
            )
        );
        // unary binds tightest
        assert_eq!(
            parse("X a U b").unwrap(),
            Formula::until(Formula::next(lit("a", 0, true)), lit("b", 1, true))
        );
    }

    #[test]
    fn biconditional_duplicates_operands() {
        let f = parse("a <-> b").unwrap();
        assert_eq!(
            f,
            Formula::and(
                Formula::or(lit("a", 0, false), lit("b", 1, true)),
                Formula::or(lit("b", 1, false), lit("a", 0, true)),
            )
        );
    }

    #[test]
    fn occurrences_left_to_right() {
        let f = parse("a U a").unwrap();
        assert_eq!(f, Formula::until(lit("a", 0, true), lit("a", 1, true)));
    }

    #[test]
    fn identifiers_absorb_keyword_prefixes() {
        assert_eq!(parse("Xa").unwrap(), lit("Xa", 0, true));
        assert_eq!(parse("G_1").unwrap(), lit("G_1", 0, true));
    }

    #[test]
    fn syntax_error_position() {
        let err = parse("a U (").unwrap_err();
        assert_eq!((err.line, err.column), (1, 6));
        assert!(matches!(err.kind, ParseErrorKind::Unexpected { .. }));
        let err = parse("a\n  & $").unwrap_err();
        assert_eq!((err.line, err.column), (2, 5));
        assert_eq!(err.kind, ParseErrorKind::UnknownToken('$'));
        assert!(parse("a b").is_err());
        assert!(parse("").is_err());
        assert!(parse("(a").is_err());
    }

    #[test]
    fn render_points_at_column() {
        let err = parse("a U (").unwrap_err();
        let text = err.render("a U (");
        assert!(text.ends_with("\n  a U (\n       ^"), "{text}");
    }
}
