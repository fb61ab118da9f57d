//! Recursive descent over the token list, one function per declaration
//! kind. Sections inside a declaration are introduced by `keyword:` and may
//! be followed by an optional `;`.

use basecat_core::constructions::ActionPresentation;
use basecat_core::{ArrowDecl, CategoryPresentation, ComposeEntry, ConcretePresentation, FunctorPresentation};

use crate::ast::{Declaration, Document, IndexedPresentation, Item, Reference};
use crate::lexer::{tokenize, SourceSpan, Tok, Token};
use crate::ParseError;

pub fn parse(file: &str, text: &str) -> Result<Document, ParseError> {
    let toks = tokenize(file, text)?;
    let mut p = Parser { toks, pos: 0, text, refs: Vec::new() };
    let mut doc = Document::default();
    while p.peek() != &Tok::Eof {
        doc.declarations.push(p.declaration()?);
    }
    Ok(doc)
}

struct Parser<'a> {
    toks: Vec<Token>,
    pos: usize,
    text: &'a str,
    refs: Vec<Reference>,
}

type PResult<T> = Result<T, ParseError>;

impl Parser<'_> {
    fn peek(&self) -> &Tok {
        self.peek_at(0)
    }

    fn peek_at(&self, k: usize) -> &Tok {
        let i = (self.pos + k).min(self.toks.len() - 1);
        &self.toks[i].tok
    }

    fn token(&self) -> &Token {
        &self.toks[self.pos.min(self.toks.len() - 1)]
    }

    fn bump(&mut self) -> Token {
        let t = self.token().clone();
        if self.pos < self.toks.len() - 1 {
            self.pos += 1;
        }
        t
    }

    fn error(&self, expected: impl Into<String>) -> ParseError {
        let t = self.token();
        ParseError { span: t.span.clone(), expected: expected.into(), found: t.tok.to_string() }
    }

    fn expect(&mut self, tok: Tok) -> PResult<Token> {
        if *self.peek() == tok {
            Ok(self.bump())
        } else {
            Err(self.error(tok.to_string()))
        }
    }

    fn ident(&mut self) -> PResult<String> {
        match self.peek() {
            Tok::Ident(_) => match self.bump().tok {
                Tok::Ident(s) => Ok(s),
                _ => unreachable!(),
            },
            _ => Err(self.error("an identifier")),
        }
    }

    /// An identifier naming an earlier declaration.
    fn reference(&mut self) -> PResult<String> {
        let span = self.token().span.clone();
        let name = self.ident()?;
        self.refs.push(Reference { name: name.clone(), span });
        Ok(name)
    }

    fn keyword(&mut self, kw: &str) -> PResult<()> {
        match self.peek() {
            Tok::Ident(s) if s == kw => {
                self.bump();
                Ok(())
            }
            _ => Err(self.error(format!("`{kw}`"))),
        }
    }

    fn is_ident(&self, k: usize) -> bool {
        matches!(self.peek_at(k), Tok::Ident(_))
    }

    fn skip_semi(&mut self) {
        while *self.peek() == Tok::Semi {
            self.bump();
        }
    }

    fn declaration(&mut self) -> PResult<Declaration> {
        let start = self.token().clone();
        self.refs.clear();
        let item = match self.peek() {
            Tok::Ident(s) => match s.as_str() {
                "category" => Item::Category(self.category()?),
                "functor" => Item::Functor(self.functor()?),
                "concrete" => Item::Concrete(self.concrete()?),
                "action" => Item::Action(self.action()?),
                "indexed" => Item::Indexed(self.indexed()?),
                _ => return Err(self.error("`category`, `functor`, `concrete`, `action` or `indexed`")),
            },
            _ => return Err(self.error("`category`, `functor`, `concrete`, `action` or `indexed`")),
        };
        let end = &self.toks[self.pos - 1];
        let length = self.text[start.offset..=end.offset].chars().count();
        let span = SourceSpan { length, ..start.span };
        Ok(Declaration { item, span, references: std::mem::take(&mut self.refs) })
    }

    /// `keyword :` at the cursor, for one of `keywords`.
    fn section(&mut self, keywords: &[&str]) -> PResult<String> {
        let expected = keywords.iter().map(|k| format!("`{k}:`")).collect::<Vec<_>>().join(", ");
        match self.peek() {
            Tok::Ident(s) if keywords.contains(&s.as_str()) => {
                let s = s.clone();
                self.bump();
                self.expect(Tok::Colon)?;
                Ok(s)
            }
            _ => Err(self.error(format!("{expected} or `}}`"))),
        }
    }

    /// `a, b, c` while `starts` holds at the cursor; possibly empty.
    fn list<T>(&mut self, starts: impl Fn(&Self) -> bool, mut item: impl FnMut(&mut Self) -> PResult<T>) -> PResult<Vec<T>> {
        let mut out = Vec::new();
        if !starts(self) {
            return Ok(out);
        }
        out.push(item(self)?);
        while *self.peek() == Tok::Comma {
            self.bump();
            out.push(item(self)?);
        }
        Ok(out)
    }

    fn category(&mut self) -> PResult<CategoryPresentation> {
        self.keyword("category")?;
        let mut p = CategoryPresentation { name: self.ident()?, ..Default::default() };
        if !self.open_body()? {
            return Ok(p);
        }
        while *self.peek() != Tok::RBrace {
            match self.section(&["objects", "identities", "arrows", "compose"])?.as_str() {
                "objects" => p.objects.extend(self.list(|_| true, Self::ident)?),
                "identities" => {
                    let starts = |s: &Self| s.is_ident(0) && *s.peek_at(1) == Tok::Eq;
                    let items = self.list(starts, |s| {
                        let x = s.ident()?;
                        s.expect(Tok::Eq)?;
                        Ok((x, s.ident()?))
                    })?;
                    p.identities.extend(items);
                }
                "arrows" => {
                    let starts = |s: &Self| s.is_ident(0) && *s.peek_at(1) == Tok::Colon && *s.peek_at(3) == Tok::Arrow;
                    let items = self.list(starts, |s| {
                        let id = s.ident()?;
                        s.expect(Tok::Colon)?;
                        let dom = s.ident()?;
                        s.expect(Tok::Arrow)?;
                        Ok(ArrowDecl::new(id, dom, s.ident()?))
                    })?;
                    p.arrows.extend(items);
                }
                _ => {
                    let starts = |s: &Self| s.is_ident(0) && *s.peek_at(1) == Tok::Dot;
                    let items = self.list(starts, |s| {
                        let g = s.ident()?;
                        s.expect(Tok::Dot)?;
                        let f = s.ident()?;
                        s.expect(Tok::Eq)?;
                        Ok(ComposeEntry::new(g, f, s.ident()?))
                    })?;
                    p.compose.extend(items);
                }
            }
            self.skip_semi();
        }
        self.expect(Tok::RBrace)?;
        Ok(p)
    }

    fn maps(&mut self) -> PResult<Vec<(String, String)>> {
        let starts = |s: &Self| s.is_ident(0) && *s.peek_at(1) == Tok::MapsTo;
        self.list(starts, |s| {
            let a = s.ident()?;
            s.expect(Tok::MapsTo)?;
            Ok((a, s.ident()?))
        })
    }

    fn functor(&mut self) -> PResult<FunctorPresentation> {
        self.keyword("functor")?;
        let name = self.ident()?;
        self.expect(Tok::Colon)?;
        let source = self.reference()?;
        self.expect(Tok::Arrow)?;
        let target = self.reference()?;
        let mut p = FunctorPresentation { name, source, target, objects: Vec::new(), arrows: Vec::new() };
        if !self.open_body()? {
            return Ok(p);
        }
        while *self.peek() != Tok::RBrace {
            let kw = self.section(&["objects", "arrows"])?;
            let items = self.maps()?;
            match kw.as_str() {
                "objects" => p.objects.extend(items),
                _ => p.arrows.extend(items),
            }
            self.skip_semi();
        }
        self.expect(Tok::RBrace)?;
        Ok(p)
    }

    /// `{}` or `{ x, ... }` with at least one element.
    fn element_set(&mut self) -> PResult<Vec<String>> {
        if *self.peek() == Tok::Empty {
            self.bump();
            return Ok(Vec::new());
        }
        self.expect(Tok::LBrace)?;
        let elems = self.list(|_| true, Self::ident)?;
        self.expect(Tok::RBrace)?;
        Ok(elems)
    }

    /// Consumes `{`, or `{}` and reports an empty body.
    fn open_body(&mut self) -> PResult<bool> {
        if *self.peek() == Tok::Empty {
            self.bump();
            return Ok(false);
        }
        self.expect(Tok::LBrace)?;
        self.skip_semi();
        Ok(true)
    }

    fn concrete(&mut self) -> PResult<ConcretePresentation> {
        self.keyword("concrete")?;
        let name = self.ident()?;
        self.keyword("over")?;
        let over = self.reference()?;
        let mut p = ConcretePresentation { name, over, ..Default::default() };
        if !self.open_body()? {
            return Ok(p);
        }
        while *self.peek() != Tok::RBrace {
            let id = self.ident().map_err(|_| self.error("an object or morphism id, or `}`"))?;
            self.expect(Tok::Colon)?;
            if matches!(self.peek(), Tok::LBrace | Tok::Empty) {
                let elems = self.element_set()?;
                p.carriers.push((id, elems));
            } else {
                let pairs = self.maps()?;
                p.functions.push((id, pairs));
            }
            self.skip_semi();
        }
        self.expect(Tok::RBrace)?;
        Ok(p)
    }

    /// `phi` entries run until `}` or a `group:` / `set:` section.
    fn phi_entry_starts(&self) -> bool {
        if !(self.is_ident(0) && *self.peek_at(1) == Tok::Colon) {
            return false;
        }
        let pairs_follow = self.is_ident(2) && *self.peek_at(3) == Tok::MapsTo;
        match self.peek() {
            Tok::Ident(s) if s == "group" || s == "set" => pairs_follow,
            _ => true,
        }
    }

    fn action(&mut self) -> PResult<ActionPresentation> {
        self.keyword("action")?;
        let mut p = ActionPresentation { name: self.ident()?, ..Default::default() };
        let mut group = false;
        // the group is mandatory, so there is no empty form
        self.expect(Tok::LBrace)?;
        self.skip_semi();
        while *self.peek() != Tok::RBrace {
            match self.section(&["group", "set", "phi"])?.as_str() {
                "group" => {
                    p.group = self.reference()?;
                    group = true;
                }
                "set" => p.elements.extend(self.element_set()?),
                _ => {
                    self.skip_semi();
                    while self.phi_entry_starts() {
                        let g = self.ident()?;
                        self.expect(Tok::Colon)?;
                        let pairs = self.maps()?;
                        p.phi.push((g, pairs));
                        self.skip_semi();
                    }
                }
            }
            self.skip_semi();
        }
        if !group {
            return Err(self.error("`group:`"));
        }
        self.expect(Tok::RBrace)?;
        Ok(p)
    }

    fn indexed(&mut self) -> PResult<IndexedPresentation> {
        self.keyword("indexed")?;
        let name = self.ident()?;
        self.keyword("over")?;
        let over = self.reference()?;
        let mut p = IndexedPresentation { name, over, ..Default::default() };
        if !self.open_body()? {
            return Ok(p);
        }
        while *self.peek() != Tok::RBrace {
            match self.peek() {
                Tok::Ident(s) if s == "fibre" => {
                    self.bump();
                    let x = self.ident()?;
                    self.expect(Tok::Eq)?;
                    p.fibres.push((x, self.reference()?));
                }
                Tok::Ident(s) if s == "pull" => {
                    self.bump();
                    let u = self.ident()?;
                    self.expect(Tok::Eq)?;
                    p.pulls.push((u, self.reference()?));
                }
                _ => return Err(self.error("`fibre`, `pull` or `}`")),
            }
            self.skip_semi();
        }
        self.expect(Tok::RBrace)?;
        Ok(p)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn one(text: &str) -> Item {
        let doc = parse("t.bcat", text).unwrap();
        assert_eq!(doc.declarations.len(), 1);
        doc.declarations.into_iter().next().unwrap().item
    }

    #[test]
    fn terminal_category() {
        let Item::Category(p) = one("category One { objects: * }") else { panic!() };
        assert_eq!(p.objects, ["*"]);
        assert!(p.arrows.is_empty());
    }

    #[test]
    fn walking_arrow_without_separators() {
        let Item::Category(p) = one("category Two { objects: X, Y  arrows: f: X -> Y }") else { panic!() };
        assert_eq!(p.arrows, [ArrowDecl::new("f", "X", "Y")]);
    }

    #[test]
    fn missing_composite_rhs() {
        let text = "category C {\n  objects: X\n  arrows: f: X -> X\n  compose: f . f = \n}\n";
        let e = parse("t.bcat", text).unwrap_err();
        assert_eq!((e.span.line, e.span.column), (5, 1));
        assert_eq!(e.expected, "an identifier");
        assert_eq!(e.found, "`}`");
    }

    #[test]
    fn arrow_named_like_a_section() {
        let Item::Category(p) = one("category C { objects: X arrows: f: X -> X, compose: X -> X compose: f . f = f }")
        else {
            panic!()
        };
        assert_eq!(p.arrows.len(), 2);
        assert_eq!(p.compose, [ComposeEntry::new("f", "f", "f")]);
    }

    #[test]
    fn functor_concrete_action_indexed() {
        let text = r#"
            category Two { objects: X, Y; arrows: f: X -> Y }
            functor F: Two -> Two { objects: X |-> X, Y |-> Y; arrows: f |-> f }
            concrete U over Two { X: { x1, x2 } Y: {} f: }
            action A { group: Z2 set: { 0, 1 } phi: s: 0 |-> 1, 1 |-> 0 }
            indexed Fam over Two { fibre X = P; fibre Y = P; pull f = idP }
        "#;
        let doc = parse("t.bcat", text).unwrap();
        let kinds: Vec<_> = doc.items().map(Item::kind).collect();
        assert_eq!(kinds, ["category", "functor", "concrete", "action", "indexed"]);
        let Item::Concrete(u) = &doc.declarations[2].item else { panic!() };
        assert_eq!(u.carriers[1], ("Y".to_string(), vec![]));
        assert_eq!(u.functions, [("f".to_string(), vec![])]);
        let Item::Action(a) = &doc.declarations[3].item else { panic!() };
        assert_eq!(a.phi[0].1.len(), 2);
        let refs: Vec<_> = doc.declarations[4].references.iter().map(|r| r.name.as_str()).collect();
        assert_eq!(refs, ["Two", "P", "P", "idP"]);
        assert_eq!(doc.declarations[1].span.line, 3);
    }

    #[test]
    fn unknown_keyword() {
        let e = parse("t.bcat", "categroy X {}").unwrap_err();
        assert_eq!((e.span.column, e.found.as_str()), (1, "`categroy`"));
    }
}
