//! Hand-rolled scanner and recursive-descent parser for the formula grammar.
//!
//! Precedence, loosest first: implies (right associative), or, and, not.
//! Quantifiers take the longest formula to their right. Atoms are infix
//! comparisons between variables, `letter(σ, x)`, `prod(m, x, y)`, and the
//! constants.

use super::ast::Formula;
use crate::{Error, Result};

#[derive(Debug, Clone, PartialEq, Eq)]
enum Tok {
    Ident(String),
    Less,
    LessEq,
    Equal,
    NotEq,
    LParen,
    RParen,
    Comma,
    Dot,
}

#[derive(Debug, Clone)]
struct Spanned {
    tok: Tok,
    line: usize,
    col: usize,
}

fn scan(text: &str) -> Result<Vec<Spanned>> {
    let mut out = Vec::new();
    let mut line = 1;
    let mut col = 1;
    let mut chars = text.chars().peekable();
    while let Some(&c) = chars.peek() {
        let (l, co) = (line, col);
        let mut push = |t: Tok| out.push(Spanned { tok: t, line: l, col: co });
        match c {
            '\n' => {
                chars.next();
                line += 1;
                col = 1;
            }
            ' ' | '\t' | '\r' => {
                chars.next();
                col += 1;
            }
            '(' => {
                chars.next();
                col += 1;
                push(Tok::LParen);
            }
            ')' => {
                chars.next();
                col += 1;
                push(Tok::RParen);
            }
            ',' => {
                chars.next();
                col += 1;
                push(Tok::Comma);
            }
            '.' => {
                chars.next();
                col += 1;
                push(Tok::Dot);
            }
            '<' => {
                chars.next();
                col += 1;
                if chars.peek() == Some(&'=') {
                    chars.next();
                    col += 1;
                    push(Tok::LessEq);
                } else {
                    push(Tok::Less);
                }
            }
            '=' => {
                chars.next();
                col += 1;
                push(Tok::Equal);
            }
            '!' => {
                chars.next();
                col += 1;
                if chars.peek() == Some(&'=') {
                    chars.next();
                    col += 1;
                    push(Tok::NotEq);
                } else {
                    return Err(Error::Parse {
                        line,
                        col: col - 1,
                        msg: "expected '=' after '!'".into(),
                    });
                }
            }
            c if c.is_ascii_alphanumeric() || c == '_' || c == '\'' => {
                let mut s = String::new();
                while let Some(&c) = chars.peek() {
                    if c.is_ascii_alphanumeric() || c == '_' || c == '\'' {
                        s.push(c);
                        chars.next();
                        col += 1;
                    } else {
                        break;
                    }
                }
                push(Tok::Ident(s));
            }
            other => {
                return Err(Error::Parse {
                    line,
                    col,
                    msg: format!("unexpected character '{other}'"),
                });
            }
        }
    }
    Ok(out)
}

struct Parser<'a> {
    toks: Vec<Spanned>,
    pos: usize,
    alphabet: &'a [String],
    elements: Option<&'a [String]>,
}

impl<'a> Parser<'a> {
    fn here(&self) -> (usize, usize) {
        if self.pos < self.toks.len() {
            (self.toks[self.pos].line, self.toks[self.pos].col)
        } else {
            self.toks
                .last()
                .map(|t| (t.line, t.col + 1))
                .unwrap_or((1, 1))
        }
    }

    fn fail<T>(&self, msg: impl Into<String>) -> Result<T> {
        let (line, col) = self.here();
        Err(Error::Parse { line, col, msg: msg.into() })
    }

    fn peek(&self) -> Option<&Tok> {
        self.toks.get(self.pos).map(|t| &t.tok)
    }

    fn next(&mut self) -> Option<Tok> {
        let t = self.toks.get(self.pos).map(|t| t.tok.clone());
        if t.is_some() {
            self.pos += 1;
        }
        t
    }

    fn expect(&mut self, t: Tok, what: &str) -> Result<()> {
        if self.peek() == Some(&t) {
            self.pos += 1;
            Ok(())
        } else {
            self.fail(format!("expected {what}"))
        }
    }

    fn ident(&mut self, what: &str) -> Result<String> {
        match self.peek() {
            Some(Tok::Ident(_)) => match self.next() {
                Some(Tok::Ident(s)) => Ok(s),
                _ => unreachable!(),
            },
            _ => self.fail(format!("expected {what}")),
        }
    }

    fn formula(&mut self) -> Result<Formula> {
        let lhs = self.or_expr()?;
        if self.peek() == Some(&Tok::Ident("implies".into())) {
            self.pos += 1;
            let rhs = self.formula()?;
            return Ok(Formula::implies(lhs, rhs));
        }
        Ok(lhs)
    }

    fn or_expr(&mut self) -> Result<Formula> {
        let mut f = self.and_expr()?;
        while self.peek() == Some(&Tok::Ident("or".into())) {
            self.pos += 1;
            f = Formula::or(f, self.and_expr()?);
        }
        Ok(f)
    }

    fn and_expr(&mut self) -> Result<Formula> {
        let mut f = self.not_expr()?;
        while self.peek() == Some(&Tok::Ident("and".into())) {
            self.pos += 1;
            f = Formula::and(f, self.not_expr()?);
        }
        Ok(f)
    }

    fn not_expr(&mut self) -> Result<Formula> {
        if self.peek() == Some(&Tok::Ident("not".into())) {
            self.pos += 1;
            return Ok(Formula::not(self.not_expr()?));
        }
        self.atom()
    }

    fn quantifier(&mut self, make: fn(String, Box<Formula>) -> Formula) -> Result<Formula> {
        let v = self.ident("a variable after the quantifier")?;
        self.expect(Tok::Dot, "'.' after the quantified variable")?;
        let body = self.formula()?;
        Ok(make(v, Box::new(body)))
    }

    fn atom(&mut self) -> Result<Formula> {
        match self.peek().cloned() {
            Some(Tok::LParen) => {
                self.pos += 1;
                let f = self.formula()?;
                self.expect(Tok::RParen, "')'")?;
                Ok(f)
            }
            Some(Tok::Ident(word)) => match word.as_str() {
                "true" => {
                    self.pos += 1;
                    Ok(Formula::True)
                }
                "false" => {
                    self.pos += 1;
                    Ok(Formula::False)
                }
                "exists1" => {
                    self.pos += 1;
                    self.quantifier(Formula::Exists1)
                }
                "forall1" => {
                    self.pos += 1;
                    self.quantifier(Formula::Forall1)
                }
                "exists2" => {
                    self.pos += 1;
                    self.quantifier(Formula::Exists2)
                }
                "forall2" => {
                    self.pos += 1;
                    self.quantifier(Formula::Forall2)
                }
                "letter" => {
                    self.pos += 1;
                    self.expect(Tok::LParen, "'(' after letter")?;
                    let name = self.ident("a letter name")?;
                    let sym = match self.alphabet.iter().position(|a| *a == name) {
                        Some(i) => i,
                        None => return self.fail(format!("unknown letter '{name}'")),
                    };
                    self.expect(Tok::Comma, "','")?;
                    let x = self.ident("a position variable")?;
                    self.expect(Tok::RParen, "')'")?;
                    Ok(Formula::Letter(sym, x))
                }
                "prod" => {
                    self.pos += 1;
                    self.expect(Tok::LParen, "'(' after prod")?;
                    let name = self.ident("a monoid element name")?;
                    let elements = match self.elements {
                        Some(e) => e,
                        None => {
                            return self.fail("prod atom used without a declared monoid")
                        }
                    };
                    let m = match elements.iter().position(|e| *e == name) {
                        Some(i) => i,
                        None => return self.fail(format!("unknown monoid element '{name}'")),
                    };
                    self.expect(Tok::Comma, "','")?;
                    let x = self.ident("a position variable")?;
                    self.expect(Tok::Comma, "','")?;
                    let y = self.ident("a position variable")?;
                    self.expect(Tok::RParen, "')'")?;
                    Ok(Formula::Prod(m, x, y))
                }
                _ => {
                    self.pos += 1;
                    let x = word;
                    match self.next() {
                        Some(Tok::Less) => Ok(Formula::Less(x, self.ident("a variable")?)),
                        Some(Tok::LessEq) => Ok(Formula::Leq(x, self.ident("a variable")?)),
                        Some(Tok::Equal) => Ok(Formula::Eq(x, self.ident("a variable")?)),
                        Some(Tok::NotEq) => Ok(Formula::Neq(x, self.ident("a variable")?)),
                        Some(Tok::Ident(kw)) if kw == "in" => {
                            Ok(Formula::In(x, self.ident("a set variable")?))
                        }
                        _ => {
                            self.pos -= 1;
                            self.fail("expected a comparison after the variable")
                        }
                    }
                }
            },
            _ => self.fail("expected a formula"),
        }
    }
}

/// Parses a formula. `elements` supplies the monoid element names that
/// `prod` atoms may reference; pass None when no monoid is declared.
pub fn parse_formula(
    text: &str,
    alphabet: &[String],
    elements: Option<&[String]>,
) -> Result<Formula> {
    let toks = scan(text)?;
    let mut p = Parser { toks, pos: 0, alphabet, elements };
    let f = p.formula()?;
    if p.pos != p.toks.len() {
        return p.fail("trailing input after the formula");
    }
    Ok(f)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn ab() -> Vec<String> {
        vec!["a".into(), "b".into()]
    }

    #[test]
    fn parses_the_spec_shapes() {
        let f = parse_formula(
            "forall1 x. forall1 y. not (x = y) implies true",
            &ab(),
            None,
        )
        .unwrap();
        match f {
            Formula::Forall1(x, inner) => {
                assert_eq!(x, "x");
                assert!(matches!(*inner, Formula::Forall1(_, _)));
            }
            other => panic!("{:?}", other),
        }

        let f = parse_formula("x != y", &ab(), None).unwrap();
        assert_eq!(f, Formula::Neq("x".into(), "y".into()));
        assert_eq!(f.free_vars(), vec!["x".to_string(), "y".to_string()]);

        let f = parse_formula(
            "(x <= y) and forall1 z. (z <= x) or (y <= z)",
            &ab(),
            None,
        )
        .unwrap();
        assert!(matches!(f, Formula::And(_, _)));
    }

    #[test]
    fn precedence_not_and_or_implies() {
        let f = parse_formula("not x = y and x < y or true implies false", &ab(), None).unwrap();
        // ((not(x=y) and x<y) or true) implies false
        match f {
            Formula::Implies(lhs, rhs) => {
                assert_eq!(*rhs, Formula::False);
                match *lhs {
                    Formula::Or(l, r) => {
                        assert_eq!(*r, Formula::True);
                        assert!(matches!(*l, Formula::And(_, _)));
                    }
                    other => panic!("{:?}", other),
                }
            }
            other => panic!("{:?}", other),
        }
    }

    #[test]
    fn implies_is_right_associative() {
        let f = parse_formula("true implies false implies true", &ab(), None).unwrap();
        match f {
            Formula::Implies(_, rhs) => assert!(matches!(*rhs, Formula::Implies(_, _))),
            other => panic!("{:?}", other),
        }
    }

    #[test]
    fn quantifier_scope_is_maximal() {
        let f = parse_formula("exists1 x. x = y and x = z", &ab(), None).unwrap();
        match f {
            Formula::Exists1(_, body) => assert!(matches!(*body, Formula::And(_, _))),
            other => panic!("{:?}", other),
        }
    }

    #[test]
    fn errors_carry_positions() {
        let e = parse_formula("x <", &ab(), None).unwrap_err();
        assert!(matches!(e, Error::Parse { .. }));
        let e = parse_formula("letter(c, x)", &ab(), None).unwrap_err();
        match e {
            Error::Parse { msg, .. } => assert!(msg.contains("unknown letter")),
            other => panic!("{:?}", other),
        }
        let e = parse_formula("x = y and\n  ?", &ab(), None).unwrap_err();
        match e {
            Error::Parse { line, .. } => assert_eq!(line, 2),
            other => panic!("{:?}", other),
        }
    }

    #[test]
    fn prod_requires_declared_monoid() {
        let e = parse_formula("prod(s, x, y)", &ab(), None).unwrap_err();
        assert!(matches!(e, Error::Parse { .. }));
        let names = vec!["1".to_string(), "s".to_string(), "z".to_string()];
        let f = parse_formula("prod(s, x, y)", &ab(), Some(&names)).unwrap();
        assert_eq!(f, Formula::Prod(1, "x".into(), "y".into()));
    }
}
