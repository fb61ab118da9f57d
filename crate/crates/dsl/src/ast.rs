use basecat_core::constructions::ActionPresentation;
use basecat_core::{CategoryPresentation, ConcretePresentation, FunctorPresentation};

use crate::lexer::SourceSpan;

/// `indexed NAME over B { fibre I = C ... pull u = F ... }`.
#[derive(Debug, Clone, PartialEq, Eq, Default)]
pub struct IndexedPresentation {
    pub name: String,
    pub over: String,
    pub fibres: Vec<(String, String)>,
    pub pulls: Vec<(String, String)>,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Item {
    Category(CategoryPresentation),
    Functor(FunctorPresentation),
    Concrete(ConcretePresentation),
    Action(ActionPresentation),
    Indexed(IndexedPresentation),
}

impl Item {
    pub fn kind(&self) -> &'static str {
        match self {
            Item::Category(_) => "category",
            Item::Functor(_) => "functor",
            Item::Concrete(_) => "concrete",
            Item::Action(_) => "action",
            Item::Indexed(_) => "indexed",
        }
    }

    pub fn name(&self) -> &str {
        match self {
            Item::Category(p) => &p.name,
            Item::Functor(p) => &p.name,
            Item::Concrete(p) => &p.name,
            Item::Action(p) => &p.name,
            Item::Indexed(p) => &p.name,
        }
    }
}

/// A reference to an earlier declaration, as written.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Reference {
    pub name: String,
    pub span: SourceSpan,
}

#[derive(Debug, Clone)]
pub struct Declaration {
    pub item: Item,
    /// From the keyword to the closing brace.
    pub span: SourceSpan,
    pub references: Vec<Reference>,
}

impl Declaration {
    /// A declaration not read from a file, e.g. the output of a construction.
    pub fn synthetic(item: Item) -> Self {
        let span = SourceSpan { file: "<generated>".into(), line: 1, column: 1, length: 1 };
        Declaration { item, span, references: Vec::new() }
    }

    pub fn span_of(&self, name: &str) -> &SourceSpan {
        self.references.iter().find(|r| r.name == name).map_or(&self.span, |r| &r.span)
    }
}

#[derive(Debug, Clone, Default)]
pub struct Document {
    pub declarations: Vec<Declaration>,
}

impl Document {
    pub fn items(&self) -> impl Iterator<Item = &Item> {
        self.declarations.iter().map(|d| &d.item)
    }

    /// Equality of the declared data, ignoring source locations.
    pub fn same_structure(&self, other: &Document) -> bool {
        self.items().eq(other.items())
    }

    pub fn push(&mut self, item: Item) {
        self.declarations.push(Declaration::synthetic(item));
    }
}
