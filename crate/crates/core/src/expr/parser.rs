use super::lexer::{lex, Tok, MAX_LITERAL};
use super::{signature, Ast, BinOp, ParseError};
use crate::series::{Exponent, Monomial};

/// Deeper nesting is rejected rather than risking the stack.
const MAX_DEPTH: usize = 200;

/// Parses a complete expression.
pub fn parse(src: &str) -> Result<Ast, ParseError> {
    let toks = lex(src)?;
    let mut p = Parser { toks, at: 0, depth: 0 };
    let e = p.expr()?;
    p.expect(Tok::End, "an operator or end of input")?;
    Ok(e)
}

struct Parser {
    toks: Vec<(Tok, usize)>,
    at: usize,
    depth: usize,
}

impl Parser {
    fn peek(&self) -> &Tok {
        &self.toks[self.at].0
    }

    fn pos(&self) -> usize {
        self.toks[self.at].1
    }

    fn bump(&mut self) -> Tok {
        let t = self.toks[self.at].0.clone();
        if t != Tok::End {
            self.at += 1;
        }
        t
    }

    fn error<T>(&self, expected: &str) -> Result<T, ParseError> {
        Err(ParseError::Syntax { position: self.pos(), expected: expected.to_string(), found: self.peek().to_string() })
    }

    fn expect(&mut self, t: Tok, expected: &str) -> Result<(), ParseError> {
        if *self.peek() == t {
            self.bump();
            Ok(())
        } else {
            self.error(expected)
        }
    }

    fn enter(&mut self) -> Result<(), ParseError> {
        self.depth += 1;
        if self.depth > MAX_DEPTH {
            return Err(ParseError::Syntax {
                position: self.pos(),
                expected: format!("at most {MAX_DEPTH} levels of nesting"),
                found: "deeper nesting".into(),
            });
        }
        Ok(())
    }

    // expr = term { ("+" | "-") term }
    fn expr(&mut self) -> Result<Ast, ParseError> {
        self.enter()?;
        let mut lhs = self.term()?;
        loop {
            let op = match self.peek() {
                Tok::Plus => BinOp::Add,
                Tok::Minus => BinOp::Sub,
                _ => break,
            };
            self.bump();
            let rhs = self.term()?;
            lhs = Ast::Binary(op, Box::new(lhs), Box::new(rhs));
        }
        self.depth -= 1;
        Ok(lhs)
    }

    // term = unary { ("*" | "/") unary }
    fn term(&mut self) -> Result<Ast, ParseError> {
        let mut lhs = self.unary()?;
        loop {
            let op = match self.peek() {
                Tok::Star => BinOp::Mul,
                Tok::Slash => BinOp::Div,
                _ => break,
            };
            self.bump();
            let rhs = self.unary()?;
            lhs = Ast::Binary(op, Box::new(lhs), Box::new(rhs));
        }
        Ok(lhs)
    }

    // unary = "-" unary | power
    fn unary(&mut self) -> Result<Ast, ParseError> {
        if *self.peek() == Tok::Minus {
            self.bump();
            self.enter()?;
            let inner = self.unary()?;
            self.depth -= 1;
            return Ok(Ast::Neg(Box::new(inner)));
        }
        self.power()
    }

    // power = "q" [ "^" exponent ] | atom [ "^" exponent ]
    fn power(&mut self) -> Result<Ast, ParseError> {
        if *self.peek() == Tok::Ident("q".into()) {
            self.bump();
            let e = if *self.peek() == Tok::Caret {
                self.bump();
                self.exponent()?
            } else {
                Exponent::ONE
            };
            return Ok(Ast::Monomial(Monomial::q(e)));
        }
        let base = self.atom()?;
        if *self.peek() == Tok::Caret {
            self.bump();
            let e = self.exponent()?;
            return Ok(Ast::Pow(Box::new(base), e));
        }
        Ok(base)
    }

    // exponent = [ "-" ] int | "(" [ "-" ] int [ "/" int ] ")"
    fn exponent(&mut self) -> Result<Exponent, ParseError> {
        match self.peek() {
            Tok::LParen => {
                self.bump();
                let num = self.signed_int()?;
                let den = if *self.peek() == Tok::Slash {
                    self.bump();
                    match self.peek().clone() {
                        Tok::Int(0) => return self.error("a nonzero denominator"),
                        Tok::Int(d) => {
                            self.bump();
                            d
                        }
                        _ => return self.error("a denominator"),
                    }
                } else {
                    1
                };
                self.expect(Tok::RParen, "\")\"")?;
                Ok(Exponent::new(num, den))
            }
            _ => Ok(Exponent::int(self.signed_int()?)),
        }
    }

    fn signed_int(&mut self) -> Result<i64, ParseError> {
        let neg = if *self.peek() == Tok::Minus {
            self.bump();
            true
        } else {
            false
        };
        match self.peek().clone() {
            Tok::Int(n) => {
                debug_assert!(n <= MAX_LITERAL);
                self.bump();
                Ok(if neg { -n } else { n })
            }
            _ => self.error("an integer exponent"),
        }
    }

    // atom = int | "i" | call | "(" expr ")"
    fn atom(&mut self) -> Result<Ast, ParseError> {
        let pos = self.pos();
        match self.peek().clone() {
            Tok::Int(n) => {
                self.bump();
                Ok(Ast::Int(n))
            }
            Tok::Ident(name) if name == "i" => {
                self.bump();
                Ok(Ast::Monomial(Monomial::unit(1)))
            }
            Tok::Ident(name) => {
                self.bump();
                self.call(name, pos)
            }
            Tok::LParen => {
                self.bump();
                let e = self.expr()?;
                self.expect(Tok::RParen, "\")\"")?;
                Ok(e)
            }
            _ => self.error("a number, `q`, `i`, a function call or \"(\""),
        }
    }

    // call = name ( "(" args ")" | "[" args "]" )
    // args = group { ";" group },  group = expr { "," expr }
    fn call(&mut self, name: String, pos: usize) -> Result<Ast, ParseError> {
        let Some(sig) = signature(&name) else {
            return Err(ParseError::UnknownFunction { position: pos, name });
        };
        let (bracket, close, close_name) = match self.peek() {
            Tok::LParen => (false, Tok::RParen, "\")\""),
            Tok::LBracket => (true, Tok::RBracket, "\"]\""),
            _ => return self.error(&format!("\"(\" or \"[\" after `{name}`")),
        };
        self.bump();
        let mut groups = vec![vec![self.expr()?]];
        loop {
            match self.peek() {
                Tok::Comma => {
                    self.bump();
                    let e = self.expr()?;
                    groups.last_mut().expect("nonempty").push(e);
                }
                Tok::Semi => {
                    self.bump();
                    groups.push(vec![self.expr()?]);
                }
                _ => break,
            }
        }
        let expected = format!("\",\", \";\" or {close_name}");
        self.expect(close, &expected)?;
        let count: usize = groups.iter().map(Vec::len).sum();
        if !sig.forms.iter().any(|f| f.len() == count) {
            return Err(ParseError::Arity { position: pos, name, expected: sig.usage, found: count });
        }
        Ok(Ast::Call { name, bracket, args: groups })
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn mono(n: i64, d: i64) -> Ast {
        Ast::Monomial(Monomial::q(Exponent::new(n, d)))
    }

    #[test]
    fn precedence() {
        let e = parse("1 - q * q").unwrap();
        assert_eq!(
            e,
            Ast::Binary(
                BinOp::Sub,
                Box::new(Ast::Int(1)),
                Box::new(Ast::Binary(BinOp::Mul, Box::new(mono(1, 1)), Box::new(mono(1, 1))))
            )
        );
        assert_eq!(parse("-q^2").unwrap(), Ast::Neg(Box::new(mono(2, 1))));
        assert_eq!(parse("q^(1/2)").unwrap(), mono(1, 2));
        assert_eq!(parse("q^-3").unwrap(), mono(-3, 1));
        assert_eq!(parse("J[1]^2").unwrap(), Ast::Pow(Box::new(parse("J[1]").unwrap()), Exponent::int(2)));
    }

    #[test]
    fn calls_and_groups() {
        let e = parse("f(1,3,1; q, q; 1)").unwrap();
        let Ast::Call { name, bracket, args } = e else { panic!() };
        assert_eq!(name, "f");
        assert!(!bracket);
        assert_eq!(args.iter().map(Vec::len).collect::<Vec<_>>(), vec![3, 2, 1]);
    }

    #[test]
    fn errors() {
        match parse("J[1,2") {
            Err(ParseError::Syntax { position, expected, .. }) => {
                assert_eq!(position, 5);
                assert!(expected.contains("\"]\""));
            }
            other => panic!("{other:?}"),
        }
        assert!(matches!(parse("foo(1)"), Err(ParseError::UnknownFunction { position: 0, .. })));
        assert!(matches!(parse("eta(1, 2)"), Err(ParseError::Arity { .. })));
        assert!(matches!(parse("q^(1/0)"), Err(ParseError::Syntax { position: 5, .. })));
        assert!(parse("").is_err());
        assert!(parse("1 2").is_err());
        assert!(parse(&"(".repeat(10_000)).is_err());
        assert!(parse(&"-".repeat(10_000)).is_err());
    }
}
