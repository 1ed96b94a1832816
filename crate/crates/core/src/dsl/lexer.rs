use num_bigint::BigInt;

use super::{DslError, ErrorKind, Pos};

#[derive(Clone, Debug, PartialEq, Eq)]
pub(crate) enum Tok {
    Ident(String),
    Int(BigInt),
    /// `p/q` written without spaces.
    Ratio(BigInt, BigInt),
    Punct(char),
    Eof,
}

impl std::fmt::Display for Tok {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        match self {
            Tok::Ident(s) => write!(f, "`{s}`"),
            Tok::Int(n) => write!(f, "`{n}`"),
            Tok::Ratio(p, q) => write!(f, "`{p}/{q}`"),
            Tok::Punct(c) => write!(f, "`{c}`"),
            Tok::Eof => f.write_str("end of input"),
        }
    }
}

#[derive(Clone, Debug)]
pub(crate) struct Token {
    pub tok: Tok,
    pub pos: Pos,
}

const PUNCT: &[char] = &['(', ')', ',', ';', ':', '=', '+', '-', '*', '^'];

pub(crate) fn lex(src: &str) -> Result<Vec<Token>, DslError> {
    let chars: Vec<char> = src.chars().collect();
    let mut out = Vec::new();
    let (mut i, mut line, mut col) = (0, 1, 1);
    let advance = |i: &mut usize, line: &mut usize, col: &mut usize, c: char| {
        *i += 1;
        if c == '\n' {
            *line += 1;
            *col = 1;
        } else {
            *col += 1;
        }
    };
    while i < chars.len() {
        let c = chars[i];
        let pos = Pos { line, column: col };
        if c.is_whitespace() {
            advance(&mut i, &mut line, &mut col, c);
        } else if c == '#' {
            while i < chars.len() && chars[i] != '\n' {
                let ch = chars[i];
                advance(&mut i, &mut line, &mut col, ch);
            }
        } else if c.is_ascii_alphabetic() || c == '_' {
            let start = i;
            while i < chars.len() && (chars[i].is_ascii_alphanumeric() || chars[i] == '_') {
                let ch = chars[i];
                advance(&mut i, &mut line, &mut col, ch);
            }
            out.push(Token {
                tok: Tok::Ident(chars[start..i].iter().collect()),
                pos,
            });
        } else if c.is_ascii_digit() {
            let digits = |i: &mut usize, line: &mut usize, col: &mut usize| {
                let start = *i;
                while *i < chars.len() && chars[*i].is_ascii_digit() {
                    let ch = chars[*i];
                    advance(i, line, col, ch);
                }
                chars[start..*i]
                    .iter()
                    .collect::<String>()
                    .parse::<BigInt>()
                    .expect("digits")
            };
            let p = digits(&mut i, &mut line, &mut col);
            if i + 1 < chars.len() && chars[i] == '/' && chars[i + 1].is_ascii_digit() {
                advance(&mut i, &mut line, &mut col, '/');
                let q = digits(&mut i, &mut line, &mut col);
                if q == BigInt::from(0) {
                    return Err(DslError::new(
                        ErrorKind::Lexical,
                        pos,
                        "zero denominator in rational literal",
                    ));
                }
                out.push(Token {
                    tok: Tok::Ratio(p, q),
                    pos,
                });
            } else {
                out.push(Token {
                    tok: Tok::Int(p),
                    pos,
                });
            }
        } else if PUNCT.contains(&c) {
            advance(&mut i, &mut line, &mut col, c);
            out.push(Token {
                tok: Tok::Punct(c),
                pos,
            });
        } else {
            return Err(DslError::new(
                ErrorKind::Lexical,
                pos,
                format!("unexpected character `{c}`"),
            ));
        }
    }
    out.push(Token {
        tok: Tok::Eof,
        pos: Pos { line, column: col },
    });
    Ok(out)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn tokens_and_positions() {
        let toks = lex("eq e:\n  1/3*x^2 = 0; # note").unwrap();
        let kinds: Vec<Tok> = toks.iter().map(|t| t.tok.clone()).collect();
        assert_eq!(kinds[3], Tok::Ratio(1.into(), 3.into()));
        assert_eq!(toks[3].pos, Pos { line: 2, column: 3 });
        assert_eq!(kinds.last(), Some(&Tok::Eof));
        assert_eq!(kinds.len(), 12);
    }

    #[test]
    fn spaced_slash_is_not_a_rational() {
        let err = lex("1 / 3").unwrap_err();
        assert_eq!(err.pos, Pos { line: 1, column: 3 });
        assert!(lex("1/0").is_err());
    }
}
