use super::{DslError, ErrorKind, Span};

#[derive(Debug, Clone, PartialEq)]
pub enum Tok {
    Ident(String),
    /// Integer or decimal literal, kept as written.
    Number(String),
    Punct(char),
}

#[derive(Debug, Clone, PartialEq)]
pub struct Token {
    pub tok: Tok,
    pub span: Span,
}

pub fn lex(src: &str) -> Result<Vec<Token>, DslError> {
    let chars: Vec<(usize, char)> = src.char_indices().collect();
    let mut out = Vec::new();
    let (mut line, mut col) = (1u32, 1u32);
    let mut k = 0;
    let byte_at = |k: usize| chars.get(k).map(|c| c.0).unwrap_or(src.len());
    while k < chars.len() {
        let (start, c) = chars[k];
        let (l0, c0) = (line, col);
        let advance = |k: &mut usize, line: &mut u32, col: &mut u32| {
            if chars[*k].1 == '\n' {
                *line += 1;
                *col = 1;
            } else {
                *col += 1;
            }
            *k += 1;
        };
        if c.is_whitespace() {
            advance(&mut k, &mut line, &mut col);
            continue;
        }
        let comment = c == '#' || (c == '/' && chars.get(k + 1).map(|x| x.1) == Some('/'));
        if comment {
            while k < chars.len() && chars[k].1 != '\n' {
                advance(&mut k, &mut line, &mut col);
            }
            continue;
        }
        if c.is_ascii_alphabetic() || c == '_' {
            while k < chars.len() && (chars[k].1.is_ascii_alphanumeric() || chars[k].1 == '_') {
                advance(&mut k, &mut line, &mut col);
            }
            let mut word = src[start..byte_at(k)].to_string();
            if word == "odd" {
                for suffix in ["-left", "-right"] {
                    if src[byte_at(k)..].starts_with(suffix) {
                        for _ in 0..suffix.len() {
                            advance(&mut k, &mut line, &mut col);
                        }
                        word.push_str(suffix);
                        break;
                    }
                }
            }
            out.push(Token {
                tok: Tok::Ident(word),
                span: Span::new(start, byte_at(k), l0, c0),
            });
            continue;
        }
        if c.is_ascii_digit() {
            let mut seen_dot = false;
            while k < chars.len() {
                let d = chars[k].1;
                if d.is_ascii_digit() {
                    advance(&mut k, &mut line, &mut col);
                } else if d == '.'
                    && !seen_dot
                    && chars.get(k + 1).is_some_and(|x| x.1.is_ascii_digit())
                {
                    seen_dot = true;
                    advance(&mut k, &mut line, &mut col);
                } else {
                    break;
                }
            }
            out.push(Token {
                tok: Tok::Number(src[start..byte_at(k)].to_string()),
                span: Span::new(start, byte_at(k), l0, c0),
            });
            continue;
        }
        if ";,(){}[]+-*/^=".contains(c) {
            advance(&mut k, &mut line, &mut col);
            out.push(Token {
                tok: Tok::Punct(c),
                span: Span::new(start, byte_at(k), l0, c0),
            });
            continue;
        }
        return Err(DslError::new(
            ErrorKind::Lexical,
            Span::new(start, start + c.len_utf8(), l0, c0),
            format!("unexpected character '{c}'"),
        ));
    }
    Ok(out)
}
