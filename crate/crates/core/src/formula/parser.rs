use std::fmt;

use thiserror::Error;

use super::Formula;

const MAX_NESTING: usize = 512;

/// Syntax error at a byte offset into the input.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub struct ParseError {
    pub offset: usize,
    pub expected: Vec<&'static str>,
    pub found: String,
}

impl fmt::Display for ParseError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(
            f,
            "syntax error at offset {}: expected {}, found {}",
            self.offset,
            self.expected.join(" or "),
            self.found
        )
    }
}

const OPERAND: &[&str] = &["variable", "`1`", "`0`", "`(`", "`!`"];

#[derive(Debug, Clone, PartialEq, Eq)]
enum Token {
    Ident(String),
    And,
    Or,
    Not,
    Top,
    Bottom,
    LParen,
    RParen,
    End,
}

impl Token {
    fn describe(&self) -> String {
        match self {
            Token::Ident(name) => format!("variable `{name}`"),
            Token::And => "`&`".into(),
            Token::Or => "`|`".into(),
            Token::Not => "`!`".into(),
            Token::Top => "`1`".into(),
            Token::Bottom => "`0`".into(),
            Token::LParen => "`(`".into(),
            Token::RParen => "`)`".into(),
            Token::End => "end of input".into(),
        }
    }
}

fn is_ident_start(c: char) -> bool {
    c.is_ascii_alphabetic() || c == '_'
}

fn is_ident_continue(c: char) -> bool {
    c.is_ascii_alphanumeric() || c == '_'
}

fn tokenize(text: &str) -> Result<Vec<(usize, Token)>, ParseError> {
    let mut tokens = Vec::new();
    let mut chars = text.char_indices().peekable();
    while let Some(&(start, c)) = chars.peek() {
        if c.is_whitespace() {
            chars.next();
            continue;
        }
        let single = match c {
            '&' | '∧' => Some(Token::And),
            '|' | '∨' => Some(Token::Or),
            '!' | '~' | '¬' => Some(Token::Not),
            '(' => Some(Token::LParen),
            ')' => Some(Token::RParen),
            _ => None,
        };
        if let Some(tok) = single {
            chars.next();
            tokens.push((start, tok));
            continue;
        }
        if is_ident_continue(c) {
            let mut end = start;
            while let Some(&(i, ch)) = chars.peek() {
                if !is_ident_continue(ch) {
                    break;
                }
                end = i + ch.len_utf8();
                chars.next();
            }
            let word = &text[start..end];
            let tok = match word {
                "1" => Token::Top,
                "0" => Token::Bottom,
                _ if is_ident_start(c) => Token::Ident(word.to_owned()),
                _ => {
                    return Err(ParseError {
                        offset: start,
                        expected: OPERAND.to_vec(),
                        found: format!("`{word}`"),
                    })
                }
            };
            tokens.push((start, tok));
            continue;
        }
        return Err(ParseError {
            offset: start,
            expected: vec!["variable", "constant", "connective", "parenthesis"],
            found: format!("`{c}`"),
        });
    }
    tokens.push((text.len(), Token::End));
    Ok(tokens)
}

struct Parser {
    tokens: Vec<(usize, Token)>,
    pos: usize,
    depth: usize,
}

impl Parser {
    fn peek(&self) -> &Token {
        &self.tokens[self.pos].1
    }

    fn offset(&self) -> usize {
        self.tokens[self.pos].0
    }

    fn bump(&mut self) -> Token {
        let tok = self.tokens[self.pos].1.clone();
        if tok != Token::End {
            self.pos += 1;
        }
        tok
    }

    fn error(&self, expected: &[&'static str]) -> ParseError {
        ParseError {
            offset: self.offset(),
            expected: expected.to_vec(),
            found: self.peek().describe(),
        }
    }

    fn enter(&mut self) -> Result<(), ParseError> {
        self.depth += 1;
        if self.depth > MAX_NESTING {
            return Err(ParseError {
                offset: self.offset(),
                expected: vec!["shallower nesting"],
                found: format!("nesting deeper than {MAX_NESTING}"),
            });
        }
        Ok(())
    }

    fn or_expr(&mut self) -> Result<Formula, ParseError> {
        let mut lhs = self.and_expr()?;
        while *self.peek() == Token::Or {
            self.bump();
            let rhs = self.and_expr()?;
            lhs = Formula::or(lhs, rhs);
        }
        Ok(lhs)
    }

    fn and_expr(&mut self) -> Result<Formula, ParseError> {
        let mut lhs = self.unary()?;
        while *self.peek() == Token::And {
            self.bump();
            let rhs = self.unary()?;
            lhs = Formula::and(lhs, rhs);
        }
        Ok(lhs)
    }

    fn unary(&mut self) -> Result<Formula, ParseError> {
        if *self.peek() == Token::Not {
            self.bump();
            self.enter()?;
            let inner = self.unary()?;
            self.depth -= 1;
            return Ok(Formula::negate(inner));
        }
        self.atom()
    }

    fn atom(&mut self) -> Result<Formula, ParseError> {
        match self.peek().clone() {
            Token::Ident(name) => {
                self.bump();
                Ok(Formula::Var(name))
            }
            Token::Top => {
                self.bump();
                Ok(Formula::Top)
            }
            Token::Bottom => {
                self.bump();
                Ok(Formula::Bottom)
            }
            Token::LParen => {
                self.bump();
                self.enter()?;
                let inner = self.or_expr()?;
                self.depth -= 1;
                if *self.peek() != Token::RParen {
                    return Err(self.error(&["`&`", "`|`", "`)`"]));
                }
                self.bump();
                Ok(inner)
            }
            _ => Err(self.error(OPERAND)),
        }
    }
}

/// Parses the formula syntax described in the [module docs](super).
pub fn parse(text: &str) -> Result<Formula, ParseError> {
    let mut parser = Parser {
        tokens: tokenize(text)?,
        pos: 0,
        depth: 0,
    };
    let formula = parser.or_expr()?;
    if *parser.peek() != Token::End {
        return Err(parser.error(&["`&`", "`|`", "end of input"]));
    }
    Ok(formula)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn v(name: &str) -> Formula {
        Formula::var(name)
    }

    #[test]
    fn conjunction_chain_is_left_associated() {
        assert_eq!(
            parse("x1 & x2 & x3").unwrap(),
            Formula::and(Formula::and(v("x1"), v("x2")), v("x3"))
        );
        assert_eq!(
            parse("x1 | x2 | x3").unwrap(),
            Formula::or(Formula::or(v("x1"), v("x2")), v("x3"))
        );
    }

    #[test]
    fn negated_disjunction() {
        assert_eq!(
            parse("!(p | q)").unwrap(),
            Formula::negate(Formula::or(v("p"), v("q")))
        );
    }

    #[test]
    fn disjunction_of_conjunctions() {
        assert_eq!(
            parse("(x1 & x2) | (x3 & x4)").unwrap(),
            Formula::or(
                Formula::and(v("x1"), v("x2")),
                Formula::and(v("x3"), v("x4"))
            )
        );
    }

    #[test]
    fn precedence_not_and_or() {
        assert_eq!(
            parse("!p & q | r").unwrap(),
            Formula::or(Formula::and(Formula::negate(v("p")), v("q")), v("r"))
        );
        assert_eq!(
            parse("p | q & r").unwrap(),
            Formula::or(v("p"), Formula::and(v("q"), v("r")))
        );
    }

    #[test]
    fn unicode_and_ascii_aliases_agree() {
        let ascii = parse("!p & (q | ~r)").unwrap();
        assert_eq!(parse("¬p ∧ (q ∨ ¬r)").unwrap(), ascii);
        assert_eq!(parse("  !p&(q|~r)  ").unwrap(), ascii);
    }

    #[test]
    fn constants() {
        assert_eq!(parse("1").unwrap(), Formula::Top);
        assert_eq!(parse("p & 0").unwrap(), Formula::and(v("p"), Formula::Bottom));
        assert_eq!(parse("_a1").unwrap(), v("_a1"));
    }

    #[test]
    fn empty_input_is_an_error() {
        let err = parse("").unwrap_err();
        assert_eq!(err.offset, 0);
        assert_eq!(err.found, "end of input");
        assert!(err.expected.contains(&"variable"));
        assert!(parse("   ").is_err());
    }

    #[test]
    fn dangling_operator_reports_offset() {
        let err = parse("p |").unwrap_err();
        assert_eq!(err.offset, 3);
        assert!(err.expected.contains(&"variable"));
        assert_eq!(err.to_string(), "syntax error at offset 3: expected variable or `1` or `0` or `(` or `!`, found end of input");
    }

    #[test]
    fn other_errors() {
        let err = parse("(p & q").unwrap_err();
        assert_eq!(err.offset, 6);
        assert!(err.expected.contains(&"`)`"));

        let err = parse("p q").unwrap_err();
        assert_eq!(err.offset, 2);
        assert_eq!(err.found, "variable `q`");

        let err = parse("p & 2").unwrap_err();
        assert_eq!((err.offset, err.found.as_str()), (4, "`2`"));

        let err = parse("p -> q").unwrap_err();
        assert_eq!((err.offset, err.found.as_str()), (2, "`-`"));

        // offsets are in bytes: `∧` is three bytes wide
        let err = parse("p ∧ ∧").unwrap_err();
        assert_eq!(err.offset, 6);

        assert!(parse("1x").is_err());
        assert!(parse(")").is_err());
    }

    #[test]
    fn nesting_limit() {
        let deep = format!("{}p{}", "(".repeat(2000), ")".repeat(2000));
        assert!(parse(&deep).is_err());
        let ok = format!("{}p{}", "(".repeat(100), ")".repeat(100));
        assert_eq!(parse(&ok).unwrap(), v("p"));
    }
}
