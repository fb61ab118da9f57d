//! The base structured categories of a functor `F: C → D`, the strict
//! Grothendieck construction and transformation groupoids.
//!
//! Every constructed object and morphism is named by the pair it was built
//! from, e.g. `(X,x1)` or `(f_op,y)`. When several morphisms would share a
//! pair, a third component naming the other end disambiguates them.

mod action;
mod defs;
mod family;
mod main_prop;

use std::collections::HashMap;
use std::fmt;
use std::sync::Arc;

use crate::fibration::FunctorOver;
use crate::fincat::{CatBuilder, CategoryError, FinCat, MorId, ObjId};
use crate::finset::ConcreteError;
use crate::functor::{FinFunctor, FunctorError};
use crate::iso::IsoError;
use crate::label;

pub use action::{transformation_groupoid, verify_prop4, ActionImage, ActionPresentation, GroupAction};
pub use defs::{
    abstract_left_action, abstract_right_action, concrete_graph_category, concrete_left_action,
    concrete_right_action, graph_category, inverse_witness, right_action_selfdual,
};
pub use family::{
    abstract_right_family, concrete_right_family, grothendieck_strict, selfdual_family, trivial_categorify,
    IndexedFamily, TrivialCategorification,
};
pub use main_prop::{verify_main_prop, Leg, LegStatus, MainPropReport};

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum ConstructionError {
    #[error(transparent)]
    Category(#[from] CategoryError),
    #[error(transparent)]
    Functor(#[from] FunctorError),
    #[error(transparent)]
    Concrete(#[from] ConcreteError),
    #[error(transparent)]
    Iso(#[from] IsoError),
    #[error("`{structure}` is concrete over `{over}`, but the functor lands in `{expected}`")]
    UnderlyingMismatch { structure: String, over: String, expected: String },
    #[error("no fibre given over `{0}`")]
    MissingFibre(String),
    #[error("no pullback functor given for `{0}`")]
    MissingPull(String),
    #[error("pullback functor for `{0}` does not go from the fibre over its codomain to the fibre over its domain")]
    PullMismatch(String),
    #[error("family is not strict at {v} . {u}")]
    NotStrict { v: String, u: String },
    #[error("`{0}` is not a group")]
    NotAGroup(String),
    #[error("action does not respect {g} . {f}")]
    NotAnAction { g: String, f: String },
    #[error("`{0}` does not act as the identity")]
    ActionIdentity(String),
    #[error("`{0}` is not an isomorphism onto the opposite category")]
    NoSelfDualWitness(String),
    #[error("leg `{leg}` failed: {detail}")]
    ReportFailure { leg: String, detail: String },
}

/// Which definition produced a constructed category.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Provenance {
    /// Graph of a functor `(F,C,D)`.
    Graph,
    /// Concrete graph `(𝔽,C,Set)`.
    ConcreteGraph,
    /// Abstract right action over `C^op`.
    AbstractRight,
    /// Concrete right action over `C^op`.
    ConcreteRight,
    /// Abstract left action `𝒳 ⋊_F C`.
    AbstractLeft,
    /// Concrete left action.
    ConcreteLeft,
    /// Abstract right action over a self-dual `C`.
    SelfDualAbstract,
    /// Concrete right action over a self-dual `C`.
    SelfDualConcrete,
    Grothendieck,
    TransGroupoid,
}

impl fmt::Display for Provenance {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Provenance::Graph => "def1",
            Provenance::ConcreteGraph => "def2",
            Provenance::AbstractRight => "def3",
            Provenance::ConcreteRight => "def4",
            Provenance::AbstractLeft => "def5",
            Provenance::ConcreteLeft => "def6",
            Provenance::SelfDualAbstract => "def7",
            Provenance::SelfDualConcrete => "def8",
            Provenance::Grothendieck => "grothendieck",
            Provenance::TransGroupoid => "trans-groupoid",
        })
    }
}

/// A constructed category with its projection onto the base.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ConstructedCategory {
    pub cat: Arc<FinCat>,
    pub projection: FinFunctor,
    pub provenance: Provenance,
    /// The source pair of each object, by index.
    pub obj_labels: Vec<Vec<String>>,
    /// The source pair of each morphism, by index (without disambiguator).
    pub mor_labels: Vec<Vec<String>>,
}

impl ConstructedCategory {
    pub fn base(&self) -> &Arc<FinCat> {
        self.projection.target()
    }

    pub fn over(&self) -> FunctorOver {
        FunctorOver::new(self.projection.clone())
    }

    /// The opposite category, projecting onto the opposite base. Labels are
    /// kept as they are.
    pub fn opposite(&self) -> ConstructedCategory {
        let cat = Arc::new(self.cat.opposite());
        let base = Arc::new(self.base().opposite());
        let projection = FinFunctor::new(
            label::toggle_op(self.projection.name()),
            cat.clone(),
            base,
            self.projection.obj_map().to_vec(),
            self.projection.mor_map().to_vec(),
        )
        .expect("opposite of a functor is a functor");
        ConstructedCategory { cat, projection, ..self.clone() }
    }

    /// Replaces the base by an equal category value, e.g. `C` for `(C^op)^op`.
    pub fn retarget(&self, base: Arc<FinCat>) -> Option<ConstructedCategory> {
        let projection = self.projection.retarget(base)?;
        Some(ConstructedCategory { projection, ..self.clone() })
    }
}

/// Accumulates labelled objects and morphisms, then names, validates and
/// projects them.
pub(crate) struct Assembly {
    name: String,
    objects: Vec<(Vec<String>, ObjId)>,
    morphisms: Vec<Piece>,
}

pub(crate) struct Piece {
    pub label: Vec<String>,
    /// Appended to the label when the label alone is ambiguous.
    pub extra: String,
    pub dom: usize,
    pub cod: usize,
    pub over: MorId,
}

fn render(parts: &[String]) -> String {
    match parts {
        [single] => single.clone(),
        _ => label::pair_id(parts),
    }
}

impl Assembly {
    pub fn new(name: impl Into<String>) -> Self {
        Assembly { name: name.into(), objects: Vec::new(), morphisms: Vec::new() }
    }

    pub fn object(&mut self, label: Vec<String>, over: ObjId) -> usize {
        self.objects.push((label, over));
        self.objects.len() - 1
    }

    pub fn morphism(&mut self, piece: Piece) -> usize {
        self.morphisms.push(piece);
        self.morphisms.len() - 1
    }

    /// `compose(g, f)` is only called for composable pairs.
    pub fn finish(
        self,
        base: Arc<FinCat>,
        provenance: Provenance,
        identity: impl Fn(usize) -> usize,
        compose: impl Fn(usize, usize) -> usize,
    ) -> Result<ConstructedCategory, ConstructionError> {
        let mut uses: HashMap<&[String], usize> = HashMap::new();
        for p in &self.morphisms {
            *uses.entry(&p.label).or_default() += 1;
        }
        let mut b = CatBuilder::new(&self.name);
        for (l, _) in &self.objects {
            b.add_object(render(l));
        }
        for p in &self.morphisms {
            let id = if uses[p.label.as_slice()] > 1 {
                let mut parts = p.label.clone();
                parts.push(p.extra.clone());
                render(&parts)
            } else {
                render(&p.label)
            };
            b.add_morphism(id, ObjId(p.dom), ObjId(p.cod));
        }
        for x in 0..self.objects.len() {
            b.set_identity(ObjId(x), MorId(identity(x)));
        }
        let n = self.morphisms.len();
        for g in 0..n {
            for f in 0..n {
                if self.morphisms[f].cod == self.morphisms[g].dom {
                    b.set_compose(MorId(g), MorId(f), MorId(compose(g, f)))?;
                }
            }
        }
        let cat = Arc::new(b.build()?);
        let projection = FinFunctor::new(
            format!("P_{}", self.name),
            cat.clone(),
            base,
            self.objects.iter().map(|o| o.1).collect(),
            self.morphisms.iter().map(|p| p.over).collect(),
        )?;
        Ok(ConstructedCategory {
            cat,
            projection,
            provenance,
            obj_labels: self.objects.into_iter().map(|o| o.0).collect(),
            mor_labels: self.morphisms.into_iter().map(|p| p.label).collect(),
        })
    }
}

#[cfg(test)]
mod tests;
