use super::ParseError;
use std::fmt;

/// Integer literals larger than this are rejected so exponent arithmetic
/// stays far from `i64` overflow.
pub(super) const MAX_LITERAL: i64 = 1_000_000_000;

#[derive(Clone, Debug, PartialEq, Eq)]
pub(super) enum Tok {
    Int(i64),
    Ident(String),
    Plus,
    Minus,
    Star,
    Slash,
    Caret,
    LParen,
    RParen,
    LBracket,
    RBracket,
    Comma,
    Semi,
    End,
}

impl fmt::Display for Tok {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Tok::Int(n) => write!(f, "integer {n}"),
            Tok::Ident(s) => write!(f, "name `{s}`"),
            Tok::Plus => f.write_str("\"+\""),
            Tok::Minus => f.write_str("\"-\""),
            Tok::Star => f.write_str("\"*\""),
            Tok::Slash => f.write_str("\"/\""),
            Tok::Caret => f.write_str("\"^\""),
            Tok::LParen => f.write_str("\"(\""),
            Tok::RParen => f.write_str("\")\""),
            Tok::LBracket => f.write_str("\"[\""),
            Tok::RBracket => f.write_str("\"]\""),
            Tok::Comma => f.write_str("\",\""),
            Tok::Semi => f.write_str("\";\""),
            Tok::End => f.write_str("end of input"),
        }
    }
}

/// Tokens with their byte offsets; the last is always [`Tok::End`].
pub(super) fn lex(src: &str) -> Result<Vec<(Tok, usize)>, ParseError> {
    let bytes = src.as_bytes();
    let mut out = Vec::new();
    let mut i = 0;
    while i < bytes.len() {
        let c = bytes[i];
        let start = i;
        let single = match c {
            b'+' => Some(Tok::Plus),
            b'-' => Some(Tok::Minus),
            b'*' => Some(Tok::Star),
            b'/' => Some(Tok::Slash),
            b'^' => Some(Tok::Caret),
            b'(' => Some(Tok::LParen),
            b')' => Some(Tok::RParen),
            b'[' => Some(Tok::LBracket),
            b']' => Some(Tok::RBracket),
            b',' => Some(Tok::Comma),
            b';' => Some(Tok::Semi),
            _ => None,
        };
        if let Some(t) = single {
            out.push((t, start));
            i += 1;
        } else if c.is_ascii_whitespace() {
            i += 1;
        } else if c.is_ascii_digit() {
            let mut n: i64 = 0;
            while i < bytes.len() && bytes[i].is_ascii_digit() {
                n = n * 10 + (bytes[i] - b'0') as i64;
                if n > MAX_LITERAL {
                    return Err(ParseError::Syntax {
                        position: start,
                        expected: format!("an integer at most {MAX_LITERAL}"),
                        found: "a larger integer".into(),
                    });
                }
                i += 1;
            }
            out.push((Tok::Int(n), start));
        } else if c.is_ascii_alphabetic() || c == b'_' {
            while i < bytes.len() && (bytes[i].is_ascii_alphanumeric() || bytes[i] == b'_') {
                i += 1;
            }
            out.push((Tok::Ident(src[start..i].to_string()), start));
        } else {
            let ch = src[start..].chars().next().unwrap_or('?');
            return Err(ParseError::Syntax {
                position: start,
                expected: "a number, name, operator or bracket".into(),
                found: format!("character {ch:?}"),
            });
        }
    }
    out.push((Tok::End, bytes.len()));
    Ok(out)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn tokens_and_offsets() {
        let t = lex(" J[1, 2]^-3").unwrap();
        let kinds: Vec<_> = t.iter().map(|(k, _)| k.clone()).collect();
        assert_eq!(
            kinds,
            vec![
                Tok::Ident("J".into()),
                Tok::LBracket,
                Tok::Int(1),
                Tok::Comma,
                Tok::Int(2),
                Tok::RBracket,
                Tok::Caret,
                Tok::Minus,
                Tok::Int(3),
                Tok::End
            ]
        );
        assert_eq!(t[4].1, 6);
        assert_eq!(t.last().unwrap().1, 11);
    }

    #[test]
    fn rejects_stray_characters() {
        assert_eq!(lex("q # 2").unwrap_err().position(), 2);
        assert!(lex("99999999999999999999").is_err());
        assert_eq!(lex("é").unwrap_err().position(), 0);
    }
}
