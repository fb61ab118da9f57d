//! The `.bcat` text format: parser, canonical printer, name resolution and
//! DOT export.

pub mod ast;
pub mod dot;
pub mod env;
pub mod lexer;
pub mod parser;
pub mod printer;

pub use ast::{Declaration, Document, IndexedPresentation, Item, Reference};
pub use dot::{export_constructed, export_dot, DotOptions};
pub use env::{Environment, LoadError, LoadOptions, Outcome, ValidationError};
pub use lexer::SourceSpan;
pub use parser::parse;
pub use printer::{print, print_item};

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
#[error("{span}: expected {expected}, found {found}")]
pub struct ParseError {
    pub span: SourceSpan,
    pub expected: String,
    pub found: String,
}
