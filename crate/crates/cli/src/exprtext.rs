//! Text form of path expressions. The grammar is fully parenthesized so
//! positions in printed traces are unambiguous:
//!
//! ```text
//! expr := "refl(" point ")" | edge | "inv(" expr ")" | "(" expr "." expr ")"
//! ```
//!
//! Whitespace is insignificant. `inv` of an edge parses to the reversed
//! letter, the canonical spelling, so printing and parsing round-trip on
//! normal forms.

use pi1_core::expr::PathExpr;
use pi1_core::space::{Orientation, SpacePresentation};

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum ParseError {
    /// Syntax problem with the byte offset where it was noticed.
    Syntax { offset: usize, message: String },
    UnknownEdge { offset: usize, name: String },
    UnknownPoint { offset: usize, name: String },
}

impl std::fmt::Display for ParseError {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        match self {
            ParseError::Syntax { offset, message } => {
                write!(f, "syntax error at byte {offset}: {message}")
            }
            ParseError::UnknownEdge { offset, name } => {
                write!(f, "unknown edge `{name}` at byte {offset}")
            }
            ParseError::UnknownPoint { offset, name } => {
                write!(f, "unknown point `{name}` at byte {offset}")
            }
        }
    }
}

impl std::error::Error for ParseError {}

struct Parser<'a> {
    text: &'a [u8],
    pos: usize,
    space: &'a SpacePresentation,
}

fn is_ident_byte(b: u8) -> bool {
    b.is_ascii_alphanumeric() || b == b'_' || b == b':' || b == b'-'
}

impl<'a> Parser<'a> {
    fn skip_ws(&mut self) {
        while self.pos < self.text.len() && self.text[self.pos].is_ascii_whitespace() {
            self.pos += 1;
        }
    }

    fn expect(&mut self, b: u8) -> Result<(), ParseError> {
        self.skip_ws();
        if self.pos < self.text.len() && self.text[self.pos] == b {
            self.pos += 1;
            Ok(())
        } else {
            Err(ParseError::Syntax {
                offset: self.pos,
                message: format!("expected `{}`", b as char),
            })
        }
    }

    fn ident(&mut self) -> Result<(usize, String), ParseError> {
        self.skip_ws();
        let start = self.pos;
        while self.pos < self.text.len() && is_ident_byte(self.text[self.pos]) {
            self.pos += 1;
        }
        if self.pos == start {
            return Err(ParseError::Syntax {
                offset: start,
                message: "expected an identifier".to_string(),
            });
        }
        Ok((
            start,
            String::from_utf8_lossy(&self.text[start..self.pos]).into_owned(),
        ))
    }

    fn lookahead_keyword(&mut self, kw: &str) -> bool {
        self.skip_ws();
        let bytes = kw.as_bytes();
        if self.text.len() < self.pos + bytes.len() + 1 {
            return false;
        }
        &self.text[self.pos..self.pos + bytes.len()] == bytes
            && self.text[self.pos + bytes.len()] == b'('
    }

    fn expr(&mut self) -> Result<PathExpr, ParseError> {
        self.skip_ws();
        if self.lookahead_keyword("refl") {
            self.pos += 4;
            self.expect(b'(')?;
            let (off, point) = self.ident()?;
            self.expect(b')')?;
            if !self.space.has_point(&point) {
                return Err(ParseError::UnknownPoint {
                    offset: off,
                    name: point,
                });
            }
            return Ok(PathExpr::refl(point));
        }
        if self.lookahead_keyword("inv") {
            self.pos += 3;
            self.expect(b'(')?;
            let inner = self.expr()?;
            self.expect(b')')?;
            // Canonical spelling: the inverse of a forward letter is the
            // reversed letter.
            return Ok(match inner {
                PathExpr::Edge(name, Orientation::Forward) => {
                    PathExpr::Edge(name, Orientation::Reverse)
                }
                other => other.symm(),
            });
        }
        if self.pos < self.text.len() && self.text[self.pos] == b'(' {
            self.pos += 1;
            let left = self.expr()?;
            self.expect(b'.')?;
            let right = self.expr()?;
            self.expect(b')')?;
            return Ok(left.trans(right));
        }
        let (off, name) = self.ident()?;
        if self.space.edge(&name).is_none() {
            return Err(ParseError::UnknownEdge { offset: off, name });
        }
        Ok(PathExpr::edge(name))
    }
}

/// Parses an expression over the edges of `space`.
pub fn parse_path_expr(text: &str, space: &SpacePresentation) -> Result<PathExpr, ParseError> {
    let mut p = Parser {
        text: text.as_bytes(),
        pos: 0,
        space,
    };
    let expr = p.expr()?;
    p.skip_ws();
    if p.pos != p.text.len() {
        return Err(ParseError::Syntax {
            offset: p.pos,
            message: "trailing input".to_string(),
        });
    }
    Ok(expr)
}

/// Prints in the grammar above; inverse of the `Display` on canonical input.
pub fn print_path_expr(expr: &PathExpr) -> String {
    expr.to_string()
}

#[cfg(test)]
mod tests {
    use super::*;

    fn circle() -> SpacePresentation {
        SpacePresentation::circle()
    }

    #[test]
    fn parses_basic_forms() {
        let space = circle();
        assert_eq!(
            parse_path_expr("refl(base)", &space).unwrap(),
            PathExpr::refl("base")
        );
        assert_eq!(
            parse_path_expr("(loop . inv(loop))", &space).unwrap(),
            PathExpr::edge("loop").trans(PathExpr::edge_rev("loop"))
        );
        let rose = SpacePresentation::rose(2);
        assert_eq!(
            parse_path_expr("(a . (b . inv(a)))", &rose).unwrap(),
            PathExpr::edge("a").trans(PathExpr::edge("b").trans(PathExpr::edge_rev("a")))
        );
    }

    #[test]
    fn reports_syntax_offset() {
        let err = parse_path_expr("(loop . ", &circle()).unwrap_err();
        assert!(matches!(err, ParseError::Syntax { offset: 8, .. }), "{err}");
    }

    #[test]
    fn reports_unknown_edge() {
        let err = parse_path_expr("nope", &circle()).unwrap_err();
        assert!(matches!(err, ParseError::UnknownEdge { .. }));
    }

    #[test]
    fn print_parse_round_trip() {
        let space = SpacePresentation::rose(2);
        let exprs = [
            PathExpr::refl("base"),
            PathExpr::edge("a"),
            PathExpr::edge_rev("b"),
            PathExpr::edge_rev("a").symm(),
            PathExpr::edge("a")
                .trans(PathExpr::edge("b").trans(PathExpr::edge_rev("a")))
                .symm(),
        ];
        for e in exprs {
            let text = print_path_expr(&e);
            assert_eq!(parse_path_expr(&text, &space).unwrap(), e, "{text}");
        }
    }
}
