//! Tokens of the `.bcat` format.
//!
//! Identifiers are runs of `[A-Za-z0-9_*']` and balanced parenthesized
//! groups, so constructed ids such as `(f,(X,x))_op` form a single token.
//! `{}` is its own token, so that `{ x }` with `x` deleted is not mistaken
//! for the empty set.

use std::fmt;
use std::sync::Arc;

use crate::ParseError;

/// A location in a source file. Line and column are 1-based and count
/// characters; `length` is at least 1.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct SourceSpan {
    pub file: Arc<str>,
    pub line: usize,
    pub column: usize,
    pub length: usize,
}

impl fmt::Display for SourceSpan {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}:{}:{}", self.file, self.line, self.column)
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Tok {
    Ident(String),
    Colon,
    Comma,
    Semi,
    Dot,
    Eq,
    Arrow,
    MapsTo,
    LBrace,
    RBrace,
    /// `{}` written without a gap: the empty set or an empty body.
    Empty,
    Eof,
}

impl fmt::Display for Tok {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Tok::Ident(s) => write!(f, "`{s}`"),
            Tok::Colon => f.write_str("`:`"),
            Tok::Comma => f.write_str("`,`"),
            Tok::Semi => f.write_str("`;`"),
            Tok::Dot => f.write_str("`.`"),
            Tok::Eq => f.write_str("`=`"),
            Tok::Arrow => f.write_str("`->`"),
            Tok::MapsTo => f.write_str("`|->`"),
            Tok::LBrace => f.write_str("`{`"),
            Tok::RBrace => f.write_str("`}`"),
            Tok::Empty => f.write_str("`{}`"),
            Tok::Eof => f.write_str("end of input"),
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Token {
    pub tok: Tok,
    pub span: SourceSpan,
    /// Byte offset of the token's first character.
    pub offset: usize,
}

pub fn is_id_char(c: char) -> bool {
    c.is_ascii_alphanumeric() || matches!(c, '_' | '*' | '\'')
}

struct Cursor<'a> {
    file: Arc<str>,
    text: &'a str,
    chars: Vec<(usize, char)>,
    pos: usize,
    line: usize,
    column: usize,
    /// Position of the last character read, for the end-of-input span.
    last: (usize, usize),
}

impl Cursor<'_> {
    fn peek(&self) -> Option<char> {
        self.chars.get(self.pos).map(|&(_, c)| c)
    }

    fn peek_at(&self, k: usize) -> Option<char> {
        self.chars.get(self.pos + k).map(|&(_, c)| c)
    }

    fn offset(&self) -> usize {
        self.chars.get(self.pos).map_or(self.text.len(), |&(o, _)| o)
    }

    fn bump(&mut self) -> Option<char> {
        let c = self.peek()?;
        self.last = (self.line, self.column);
        self.pos += 1;
        if c == '\n' {
            self.line += 1;
            self.column = 1;
        } else {
            self.column += 1;
        }
        Some(c)
    }

    fn span(&self, line: usize, column: usize, length: usize) -> SourceSpan {
        SourceSpan { file: self.file.clone(), line, column, length: length.max(1) }
    }
}

/// Splits `text` into tokens, ending with [`Tok::Eof`].
///
/// The end-of-input token points at the last character of the file (or at
/// 1:1 for empty input), so every span lies inside the text.
pub fn tokenize(file: &str, text: &str) -> Result<Vec<Token>, ParseError> {
    let mut cur = Cursor {
        file: Arc::from(file),
        text,
        chars: text.char_indices().collect(),
        pos: 0,
        line: 1,
        column: 1,
        last: (1, 1),
    };
    let mut out = Vec::new();
    while let Some(c) = cur.peek() {
        if c.is_whitespace() {
            cur.bump();
            continue;
        }
        if c == '#' {
            while cur.peek().is_some_and(|c| c != '\n') {
                cur.bump();
            }
            continue;
        }
        let (line, column, offset) = (cur.line, cur.column, cur.offset());
        if c == '{' && cur.peek_at(1) == Some('}') {
            cur.bump();
            cur.bump();
            out.push(Token { tok: Tok::Empty, span: cur.span(line, column, 2), offset });
            continue;
        }
        let simple = match c {
            ':' => Some(Tok::Colon),
            ',' => Some(Tok::Comma),
            ';' => Some(Tok::Semi),
            '.' => Some(Tok::Dot),
            '=' => Some(Tok::Eq),
            '{' => Some(Tok::LBrace),
            '}' => Some(Tok::RBrace),
            _ => None,
        };
        if let Some(tok) = simple {
            cur.bump();
            out.push(Token { tok, span: cur.span(line, column, 1), offset });
            continue;
        }
        if c == '-' && cur.peek_at(1) == Some('>') {
            cur.bump();
            cur.bump();
            out.push(Token { tok: Tok::Arrow, span: cur.span(line, column, 2), offset });
            continue;
        }
        if c == '|' && cur.peek_at(1) == Some('-') && cur.peek_at(2) == Some('>') {
            for _ in 0..3 {
                cur.bump();
            }
            out.push(Token { tok: Tok::MapsTo, span: cur.span(line, column, 3), offset });
            continue;
        }
        if is_id_char(c) || c == '(' {
            let id = ident(&mut cur)?;
            let length = id.chars().count();
            out.push(Token { tok: Tok::Ident(id), span: cur.span(line, column, length), offset });
            continue;
        }
        return Err(ParseError {
            span: cur.span(line, column, 1),
            expected: "a declaration token".into(),
            found: format!("character `{c}`"),
        });
    }
    let (line, column) = if text.is_empty() { (1, 1) } else { cur.last };
    out.push(Token { tok: Tok::Eof, span: cur.span(line, column, 1), offset: text.len() });
    Ok(out)
}

fn ident(cur: &mut Cursor<'_>) -> Result<String, ParseError> {
    let mut s = String::new();
    let mut depth = 0usize;
    let mut open = (0, 0);
    loop {
        match cur.peek() {
            Some(c) if is_id_char(c) => s.push(c),
            Some('(') => {
                if depth == 0 {
                    open = (cur.line, cur.column);
                }
                depth += 1;
                s.push('(');
            }
            Some(')') if depth > 0 => {
                depth -= 1;
                s.push(')');
            }
            Some(',') if depth > 0 => s.push(','),
            _ if depth > 0 => {
                let found = cur.peek().map_or("end of input".to_string(), |c| format!("character `{c}`"));
                return Err(ParseError {
                    span: cur.span(open.0, open.1, 1),
                    expected: "`)` closing this pair id".into(),
                    found,
                });
            }
            _ => return Ok(s),
        }
        cur.bump();
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn toks(s: &str) -> Vec<Tok> {
        tokenize("t", s).unwrap().into_iter().map(|t| t.tok).collect()
    }

    #[test]
    fn punctuation_and_ids() {
        assert_eq!(
            toks("f: X -> Y, x |-> y # note\n g . f = gf;"),
            vec![
                Tok::Ident("f".into()),
                Tok::Colon,
                Tok::Ident("X".into()),
                Tok::Arrow,
                Tok::Ident("Y".into()),
                Tok::Comma,
                Tok::Ident("x".into()),
                Tok::MapsTo,
                Tok::Ident("y".into()),
                Tok::Ident("g".into()),
                Tok::Dot,
                Tok::Ident("f".into()),
                Tok::Eq,
                Tok::Ident("gf".into()),
                Tok::Semi,
                Tok::Eof,
            ]
        );
    }

    #[test]
    fn pair_ids_are_single_tokens() {
        assert_eq!(toks("id_(X,x) (f,(X,x))_op"), vec![
            Tok::Ident("id_(X,x)".into()),
            Tok::Ident("(f,(X,x))_op".into()),
            Tok::Eof
        ]);
    }

    #[test]
    fn spans_are_one_based() {
        let t = tokenize("t", "a\n  bc").unwrap();
        assert_eq!((t[1].span.line, t[1].span.column, t[1].span.length), (2, 3, 2));
        assert_eq!((t[2].span.line, t[2].span.column), (2, 4));
    }

    #[test]
    fn unbalanced_pair_and_stray_characters() {
        let e = tokenize("t", "x (f,x").unwrap_err();
        assert_eq!((e.span.line, e.span.column), (1, 3));
        let e = tokenize("t", "a\n @").unwrap_err();
        assert_eq!((e.span.line, e.span.column, e.found.as_str()), (2, 2, "character `@`"));
    }
}
