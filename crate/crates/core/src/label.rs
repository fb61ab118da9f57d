//! Structured ids.
//!
//! Constructed categories name their objects and morphisms by the pair they
//! were built from, e.g. `(X,x1)` or `(f_op,y)`. Opposite categories mark
//! morphisms with the `_op` suffix. This module parses such ids into terms so
//! that tags can be toggled and erased without string surgery at call sites.

use std::fmt;

/// Suffix marking a morphism of an opposite category.
pub const OP_TAG: &str = "_op";

#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum Label {
    Atom(String),
    /// A parenthesised tuple, optionally followed by a suffix such as `_op`.
    Tuple(Vec<Label>, String),
}

impl Label {
    pub fn atom(s: impl Into<String>) -> Self {
        Label::Atom(s.into())
    }

    pub fn tuple<I, S>(parts: I) -> Self
    where
        I: IntoIterator<Item = S>,
        S: Into<Label>,
    {
        Label::Tuple(parts.into_iter().map(Into::into).collect(), String::new())
    }

    /// Parses an id. Anything that is not a well formed tuple is an atom.
    pub fn parse(s: &str) -> Label {
        match parse_term(s.as_bytes(), 0) {
            Some((t, end)) if end == s.len() => t,
            _ => Label::Atom(s.to_string()),
        }
    }

    /// Strips every `_op` suffix, recursively.
    pub fn erase_tags(&self) -> Label {
        match self {
            Label::Atom(a) => Label::Atom(strip_tags(a).to_string()),
            Label::Tuple(parts, suffix) => Label::Tuple(
                parts.iter().map(Label::erase_tags).collect(),
                strip_tags(suffix).to_string(),
            ),
        }
    }

    pub fn components(&self) -> Option<&[Label]> {
        match self {
            Label::Tuple(parts, suffix) if suffix.is_empty() => Some(parts),
            _ => None,
        }
    }
}

impl From<&str> for Label {
    fn from(s: &str) -> Self {
        Label::parse(s)
    }
}

impl From<String> for Label {
    fn from(s: String) -> Self {
        Label::parse(&s)
    }
}

impl From<&String> for Label {
    fn from(s: &String) -> Self {
        Label::parse(s)
    }
}

impl fmt::Display for Label {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Label::Atom(a) => f.write_str(a),
            Label::Tuple(parts, suffix) => {
                f.write_str("(")?;
                for (i, p) in parts.iter().enumerate() {
                    if i > 0 {
                        f.write_str(",")?;
                    }
                    write!(f, "{p}")?;
                }
                write!(f, "){suffix}")
            }
        }
    }
}

fn strip_tags(mut s: &str) -> &str {
    while let Some(rest) = s.strip_suffix(OP_TAG) {
        s = rest;
    }
    s
}

fn is_word(b: u8) -> bool {
    b.is_ascii_alphanumeric() || matches!(b, b'_' | b'*' | b'\'')
}

fn parse_term(s: &[u8], mut i: usize) -> Option<(Label, usize)> {
    if s.get(i) == Some(&b'(') {
        i += 1;
        let mut parts = Vec::new();
        loop {
            let (t, next) = parse_term(s, i)?;
            parts.push(t);
            i = next;
            match s.get(i) {
                Some(b',') => i += 1,
                Some(b')') => {
                    i += 1;
                    break;
                }
                _ => return None,
            }
        }
        let start = i;
        while i < s.len() && is_word(s[i]) {
            i += 1;
        }
        let suffix = std::str::from_utf8(&s[start..i]).ok()?.to_string();
        Some((Label::Tuple(parts, suffix), i))
    } else {
        let start = i;
        while i < s.len() && is_word(s[i]) {
            i += 1;
        }
        if i == start {
            return None;
        }
        let atom = std::str::from_utf8(&s[start..i]).ok()?.to_string();
        Some((Label::Atom(atom), i))
    }
}

/// Renders `(a,b,...)` from already rendered components.
pub fn pair_id<I, S>(parts: I) -> String
where
    I: IntoIterator<Item = S>,
    S: AsRef<str>,
{
    let mut out = String::from("(");
    for (i, p) in parts.into_iter().enumerate() {
        if i > 0 {
            out.push(',');
        }
        out.push_str(p.as_ref());
    }
    out.push(')');
    out
}

/// Adds the op tag, or removes it if present. An involution on ids that do
/// not end in a doubled tag.
pub fn toggle_op(id: &str) -> String {
    match id.strip_suffix(OP_TAG) {
        Some(rest) => rest.to_string(),
        None => format!("{id}{OP_TAG}"),
    }
}

pub fn erase_tags(id: &str) -> String {
    Label::parse(id).erase_tags().to_string()
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn parses_nested_tuples() {
        let l = Label::parse("((X,x),(f_op,y))_op");
        assert_eq!(l.to_string(), "((X,x),(f_op,y))_op");
        assert_eq!(l.erase_tags().to_string(), "((X,x),(f,y))");
    }

    #[test]
    fn malformed_is_atom() {
        assert_eq!(Label::parse("(a,b"), Label::Atom("(a,b".into()));
        assert_eq!(Label::parse("(a,b)c,d"), Label::Atom("(a,b)c,d".into()));
    }

    #[test]
    fn toggle_is_involution() {
        for s in ["f", "f_op", "(f,x)", "id_X", "(g,x)_op"] {
            assert_eq!(toggle_op(&toggle_op(s)), s);
        }
        assert_eq!(toggle_op("(f,x)"), "(f,x)_op");
    }

    #[test]
    fn pair_rendering() {
        assert_eq!(pair_id(["X", "x1"]), "(X,x1)");
        assert_eq!(pair_id(["f", "y", "x"]), "(f,y,x)");
    }
}
