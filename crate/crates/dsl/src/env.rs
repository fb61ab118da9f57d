//! Resolving a parsed document into validated values.
//!
//! Declarations are processed in order; each may only refer to earlier
//! ones. A declaration that fails to validate is reported and left out, so
//! later references to it are unresolved.

use std::collections::BTreeMap;
use std::sync::Arc;

use basecat_core::constructions::{ConstructionError, GroupAction};
use basecat_core::{
    CategoryError, ConcreteError, ConcreteStructure, FinCat, FinFunctor, FunctorError, IndexedFamily,
};

use crate::ast::{Declaration, Document, Item};
use crate::lexer::SourceSpan;

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum ValidationError {
    #[error(transparent)]
    Category(#[from] CategoryError),
    #[error(transparent)]
    Functor(#[from] FunctorError),
    #[error(transparent)]
    Concrete(#[from] ConcreteError),
    #[error(transparent)]
    Construction(#[from] ConstructionError),
}

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum LoadError {
    #[error("{span}: unresolved reference `{name}` (expected a {kind})")]
    Unresolved { name: String, kind: &'static str, span: SourceSpan },
    #[error("{span}: {kind} `{name}` is declared twice")]
    Duplicate { name: String, kind: &'static str, span: SourceSpan },
    #[error("{span}: invalid {kind} `{name}`: {source}")]
    Invalid {
        name: String,
        kind: &'static str,
        span: SourceSpan,
        #[source]
        source: ValidationError,
    },
}

impl LoadError {
    pub fn span(&self) -> &SourceSpan {
        match self {
            LoadError::Unresolved { span, .. } | LoadError::Duplicate { span, .. } | LoadError::Invalid { span, .. } => {
                span
            }
        }
    }
}

#[derive(Debug, Clone, Copy, Default)]
pub struct LoadOptions {
    /// Accept concrete structures that are not faithful, recording a warning.
    pub allow_unfaithful: bool,
}

/// The result of loading one declaration.
#[derive(Debug, Clone)]
pub struct Outcome {
    pub kind: &'static str,
    pub name: String,
    pub span: SourceSpan,
    pub result: Result<(), LoadError>,
    pub warnings: Vec<String>,
}

#[derive(Debug, Clone, Default)]
pub struct Environment {
    pub categories: BTreeMap<String, Arc<FinCat>>,
    pub functors: BTreeMap<String, FinFunctor>,
    pub concretes: BTreeMap<String, ConcreteStructure>,
    pub actions: BTreeMap<String, GroupAction>,
    pub families: BTreeMap<String, IndexedFamily>,
}

impl Environment {
    /// Loads every declaration, continuing past failures.
    pub fn load(doc: &Document, opts: LoadOptions) -> (Environment, Vec<Outcome>) {
        let mut env = Environment::default();
        let outcomes = doc
            .declarations
            .iter()
            .map(|d| {
                let mut warnings = Vec::new();
                let result = env.declare(d, opts, &mut warnings);
                Outcome {
                    kind: d.item.kind(),
                    name: d.item.name().to_string(),
                    span: d.span.clone(),
                    result,
                    warnings,
                }
            })
            .collect();
        (env, outcomes)
    }

    /// Loads every declaration, stopping at the first failure.
    pub fn from_document(doc: &Document, opts: LoadOptions) -> Result<Environment, LoadError> {
        let mut env = Environment::default();
        for d in &doc.declarations {
            env.declare(d, opts, &mut Vec::new())?;
        }
        Ok(env)
    }

    fn category(&self, d: &Declaration, name: &str) -> Result<Arc<FinCat>, LoadError> {
        self.categories.get(name).cloned().ok_or_else(|| unresolved(d, name, "category"))
    }

    fn functor(&self, d: &Declaration, name: &str) -> Result<FinFunctor, LoadError> {
        self.functors.get(name).cloned().ok_or_else(|| unresolved(d, name, "functor"))
    }

    fn declare(&mut self, d: &Declaration, opts: LoadOptions, warnings: &mut Vec<String>) -> Result<(), LoadError> {
        let name = d.item.name().to_string();
        let kind = d.item.kind();
        let taken = match &d.item {
            Item::Category(_) => self.categories.contains_key(&name),
            Item::Functor(_) => self.functors.contains_key(&name),
            Item::Concrete(_) => self.concretes.contains_key(&name),
            Item::Action(_) => self.actions.contains_key(&name),
            Item::Indexed(_) => self.families.contains_key(&name),
        };
        if taken {
            return Err(LoadError::Duplicate { name, kind, span: d.span.clone() });
        }
        let invalid = |e: ValidationError| LoadError::Invalid { name: name.clone(), kind, span: d.span.clone(), source: e };
        match &d.item {
            Item::Category(p) => {
                let c = FinCat::from_presentation(p).map_err(|e| invalid(e.into()))?;
                self.categories.insert(name, Arc::new(c));
            }
            Item::Functor(p) => {
                let (s, t) = (self.category(d, &p.source)?, self.category(d, &p.target)?);
                let f = FinFunctor::from_presentation(p, s, t).map_err(|e| invalid(e.into()))?;
                self.functors.insert(name, f);
            }
            Item::Concrete(p) => {
                let over = self.category(d, &p.over)?;
                let u = ConcreteStructure::from_presentation(p, over, opts.allow_unfaithful)
                    .map_err(|e| invalid(e.into()))?;
                warnings.extend(u.warnings().iter().map(|w| w.to_string()));
                self.concretes.insert(name, u);
            }
            Item::Action(p) => {
                let g = self.category(d, &p.group)?;
                let a = GroupAction::from_presentation(p, g).map_err(|e| invalid(e.into()))?;
                self.actions.insert(name, a);
            }
            Item::Indexed(p) => {
                let base = self.category(d, &p.over)?;
                let fibres = p
                    .fibres
                    .iter()
                    .map(|(x, c)| Ok((x.clone(), self.category(d, c)?)))
                    .collect::<Result<Vec<_>, LoadError>>()?;
                let pulls = p
                    .pulls
                    .iter()
                    .map(|(u, f)| Ok((u.clone(), self.functor(d, f)?)))
                    .collect::<Result<Vec<_>, LoadError>>()?;
                let fam = IndexedFamily::from_parts(name.clone(), base, &fibres, &pulls)
                    .map_err(|e| invalid(e.into()))?;
                self.families.insert(name, fam);
            }
        }
        Ok(())
    }

    /// The kinds under which `name` is declared.
    pub fn kinds_of(&self, name: &str) -> Vec<&'static str> {
        let mut out = Vec::new();
        if self.categories.contains_key(name) {
            out.push("category");
        }
        if self.functors.contains_key(name) {
            out.push("functor");
        }
        if self.concretes.contains_key(name) {
            out.push("concrete");
        }
        if self.actions.contains_key(name) {
            out.push("action");
        }
        if self.families.contains_key(name) {
            out.push("indexed");
        }
        out
    }

    /// Concrete structures over `cat`, by name.
    pub fn concretes_over(&self, cat: &FinCat) -> impl Iterator<Item = &ConcreteStructure> {
        let cat = cat.clone();
        self.concretes.values().filter(move |u| **u.over() == cat)
    }
}

fn unresolved(d: &Declaration, name: &str, kind: &'static str) -> LoadError {
    LoadError::Unresolved { name: name.to_string(), kind, span: d.span_of(name).clone() }
}
