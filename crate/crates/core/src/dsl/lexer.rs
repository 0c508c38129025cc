use num::BigUint;

use super::{DslError, DslErrorKind, Span};

#[derive(Clone, Debug, PartialEq, Eq)]
pub(crate) enum Tok {
    Int(BigUint),
    Ident(String),
    Gen { index: usize, barred: bool },
    Plus,
    Minus,
    Star,
    Slash,
    Caret,
    Eq,
    Colon,
    Comma,
    LParen,
    RParen,
    Eof,
}

impl Tok {
    pub(crate) fn describe(&self) -> String {
        match self {
            Tok::Int(v) => format!("number `{v}`"),
            Tok::Ident(s) => format!("`{s}`"),
            Tok::Gen { index, barred } => {
                format!("generator `{}w{index}`", if *barred { "c" } else { "" })
            }
            Tok::Plus => "`+`".into(),
            Tok::Minus => "`-`".into(),
            Tok::Star => "`*`".into(),
            Tok::Slash => "`/`".into(),
            Tok::Caret => "`^`".into(),
            Tok::Eq => "`=`".into(),
            Tok::Colon => "`:`".into(),
            Tok::Comma => "`,`".into(),
            Tok::LParen => "`(`".into(),
            Tok::RParen => "`)`".into(),
            Tok::Eof => "end of input".into(),
        }
    }
}

fn generator(word: &str) -> Option<(&str, bool)> {
    let (digits, barred) = match word.strip_prefix("cw") {
        Some(rest) => (rest, true),
        None => (word.strip_prefix('w')?, false),
    };
    if !digits.is_empty() && digits.bytes().all(|b| b.is_ascii_digit()) {
        Some((digits, barred))
    } else {
        None
    }
}

pub(crate) fn tokenize(text: &str) -> Result<Vec<(Tok, Span)>, DslError> {
    let mut out = Vec::new();
    let mut chars = text.chars().peekable();
    let (mut line, mut column) = (1usize, 1usize);

    while let Some(&c) = chars.peek() {
        let span = Span { line, column };
        if c == '\n' {
            chars.next();
            line += 1;
            column = 1;
            continue;
        }
        if c.is_whitespace() {
            chars.next();
            column += 1;
            continue;
        }
        if c == '#' {
            while chars.peek().is_some_and(|&c| c != '\n') {
                chars.next();
            }
            continue;
        }
        if c.is_ascii_digit() {
            let mut digits = String::new();
            while let Some(d) = chars.peek().copied().filter(char::is_ascii_digit) {
                digits.push(d);
                chars.next();
                column += 1;
            }
            let value = digits.parse::<BigUint>().expect("ascii digits");
            out.push((Tok::Int(value), span));
            continue;
        }
        if c.is_ascii_alphabetic() || c == '_' {
            let mut word = String::new();
            while let Some(d) = chars.peek().copied().filter(|d| d.is_ascii_alphanumeric() || *d == '_') {
                word.push(d);
                chars.next();
                column += 1;
            }
            let tok = match generator(&word) {
                Some((digits, barred)) => {
                    let index = digits
                        .parse::<usize>()
                        .map_err(|_| DslError::new(span, DslErrorKind::NumberTooLarge(digits.into())))?;
                    Tok::Gen { index, barred }
                }
                None => Tok::Ident(word),
            };
            out.push((tok, span));
            continue;
        }
        let tok = match c {
            '+' => Tok::Plus,
            '-' => Tok::Minus,
            '*' => Tok::Star,
            '/' => Tok::Slash,
            '^' => Tok::Caret,
            '=' => Tok::Eq,
            ':' => Tok::Colon,
            ',' => Tok::Comma,
            '(' => Tok::LParen,
            ')' => Tok::RParen,
            other => return Err(DslError::new(span, DslErrorKind::UnexpectedChar(other))),
        };
        chars.next();
        column += 1;
        out.push((tok, span));
    }
    out.push((Tok::Eof, Span { line, column }));
    Ok(out)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn generators_and_identifiers() {
        let toks: Vec<Tok> = tokenize("d w12 = cw3 w x1 cwa")
            .unwrap()
            .into_iter()
            .map(|(t, _)| t)
            .collect();
        assert_eq!(toks[1], Tok::Gen { index: 12, barred: false });
        assert_eq!(toks[3], Tok::Gen { index: 3, barred: true });
        assert_eq!(toks[4], Tok::Ident("w".into()));
        assert_eq!(toks[6], Tok::Ident("cwa".into()));
    }

    #[test]
    fn positions_skip_comments() {
        let toks = tokenize("# header\n  dim 4 # trailing\n@").unwrap_err();
        assert_eq!(toks.span, Span { line: 3, column: 1 });
        let toks = tokenize("# header\n  dim 4").unwrap();
        assert_eq!(toks[0].1, Span { line: 2, column: 3 });
        assert_eq!(toks[1].1, Span { line: 2, column: 7 });
    }
}
