//! Finite sets, functions between them, concrete structures over a finite
//! category, and pullbacks in FinSet.

use std::collections::HashMap;
use std::sync::Arc;

use crate::fincat::{FinCat, MorId, ObjId};
use crate::label;

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum ConcreteError {
    #[error("duplicate element `{element}` in set `{set}`")]
    DuplicateElement { set: String, element: String },
    #[error("unknown object `{0}`")]
    UnknownObject(String),
    #[error("unknown morphism `{0}`")]
    UnknownMorphism(String),
    #[error("no carrier set given for object `{0}`")]
    MissingCarrier(String),
    #[error("no function given for morphism `{0}`")]
    MissingFunction(String),
    #[error("`{function}` mentions `{element}`, which is not in the expected set")]
    UnknownElement { function: String, element: String },
    #[error("`{function}` is not defined on `{element}`")]
    PartialFunction { function: String, element: String },
    #[error("`{function}` assigns `{element}` twice")]
    DuplicateAssignment { function: String, element: String },
    #[error("function of identity `{0}` is not the identity")]
    IdentityNotPreserved(String),
    #[error("function of {g} . {f} is not the composite of their functions")]
    NotFunctorial { g: String, f: String },
    #[error("parallel morphisms `{0}` and `{1}` act by the same function")]
    NotFaithful(String, String),
    #[error("codomains `{0}` and `{1}` differ")]
    CodomainMismatch(String, String),
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct FinSetObj {
    id: String,
    elements: Vec<String>,
    index: HashMap<String, usize>,
}

impl FinSetObj {
    pub fn new<S: Into<String>>(id: impl Into<String>, elements: impl IntoIterator<Item = S>) -> Result<Self, ConcreteError> {
        let id = id.into();
        let elements: Vec<String> = elements.into_iter().map(Into::into).collect();
        let mut index = HashMap::with_capacity(elements.len());
        for (i, e) in elements.iter().enumerate() {
            if index.insert(e.clone(), i).is_some() {
                return Err(ConcreteError::DuplicateElement { set: id, element: e.clone() });
            }
        }
        Ok(FinSetObj { id, elements, index })
    }

    pub fn id(&self) -> &str {
        &self.id
    }

    pub fn elements(&self) -> &[String] {
        &self.elements
    }

    pub fn len(&self) -> usize {
        self.elements.len()
    }

    pub fn is_empty(&self) -> bool {
        self.elements.is_empty()
    }

    pub fn index_of(&self, e: &str) -> Option<usize> {
        self.index.get(e).copied()
    }

    pub fn element(&self, i: usize) -> &str {
        &self.elements[i]
    }
}

/// A total function between finite sets, stored as element indices.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct FinFn {
    name: String,
    dom: FinSetObj,
    cod: FinSetObj,
    map: Vec<usize>,
}

impl FinFn {
    pub fn new(name: impl Into<String>, dom: FinSetObj, cod: FinSetObj, map: Vec<usize>) -> Self {
        assert_eq!(map.len(), dom.len(), "function table must cover the domain");
        assert!(map.iter().all(|&i| i < cod.len()), "function value outside codomain");
        FinFn { name: name.into(), dom, cod, map }
    }

    /// Builds a function from `element |-> element` pairs.
    pub fn from_pairs<S: AsRef<str>>(
        name: impl Into<String>,
        dom: FinSetObj,
        cod: FinSetObj,
        pairs: &[(S, S)],
    ) -> Result<Self, ConcreteError> {
        let name = name.into();
        let mut map: Vec<Option<usize>> = vec![None; dom.len()];
        for (a, b) in pairs {
            let (a, b) = (a.as_ref(), b.as_ref());
            let i = dom
                .index_of(a)
                .ok_or_else(|| ConcreteError::UnknownElement { function: name.clone(), element: a.into() })?;
            let j = cod
                .index_of(b)
                .ok_or_else(|| ConcreteError::UnknownElement { function: name.clone(), element: b.into() })?;
            if map[i].replace(j).is_some() {
                return Err(ConcreteError::DuplicateAssignment { function: name, element: a.into() });
            }
        }
        let mut total = Vec::with_capacity(map.len());
        for (i, v) in map.into_iter().enumerate() {
            total.push(v.ok_or_else(|| ConcreteError::PartialFunction {
                function: name.clone(),
                element: dom.element(i).to_string(),
            })?);
        }
        Ok(FinFn { name, dom, cod, map: total })
    }

    pub fn identity(set: &FinSetObj) -> Self {
        FinFn { name: format!("id_{}", set.id()), dom: set.clone(), cod: set.clone(), map: (0..set.len()).collect() }
    }

    /// `self ∘ first`.
    pub fn after(&self, first: &FinFn) -> Option<FinFn> {
        if first.cod != self.dom {
            return None;
        }
        Some(FinFn {
            name: format!("{}_o_{}", self.name, first.name),
            dom: first.dom.clone(),
            cod: self.cod.clone(),
            map: first.map.iter().map(|&i| self.map[i]).collect(),
        })
    }

    pub fn name(&self) -> &str {
        &self.name
    }

    pub fn dom(&self) -> &FinSetObj {
        &self.dom
    }

    pub fn cod(&self) -> &FinSetObj {
        &self.cod
    }

    pub fn table(&self) -> &[usize] {
        &self.map
    }

    pub fn apply(&self, i: usize) -> usize {
        self.map[i]
    }

    pub fn apply_name(&self, e: &str) -> Option<&str> {
        self.dom.index_of(e).map(|i| self.cod.element(self.map[i]))
    }

    /// Same underlying table, ignoring the function's name.
    pub fn same_graph(&self, other: &FinFn) -> bool {
        self.dom == other.dom && self.cod == other.cod && self.map == other.map
    }

    pub fn is_bijective(&self) -> bool {
        if self.dom.len() != self.cod.len() {
            return false;
        }
        let mut hit = vec![false; self.cod.len()];
        self.map.iter().all(|&j| !std::mem::replace(&mut hit[j], true))
    }
}

/// Raw concrete-structure data: carriers per object, tables per morphism.
#[derive(Debug, Clone, PartialEq, Eq, Default)]
pub struct ConcretePresentation {
    pub name: String,
    pub over: String,
    pub carriers: Vec<(String, Vec<String>)>,
    pub functions: Vec<(String, Vec<(String, String)>)>,
}

/// A faithful functor from a finite category into FinSet.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ConcreteStructure {
    name: String,
    over: Arc<FinCat>,
    carrier: Vec<FinSetObj>,
    action: Vec<FinFn>,
    warnings: Vec<ConcreteError>,
}

impl ConcreteStructure {
    /// Checks identities, functoriality and faithfulness. With
    /// `allow_unfaithful`, faithfulness failures become warnings.
    pub fn new(
        name: impl Into<String>,
        over: Arc<FinCat>,
        carrier: Vec<FinSetObj>,
        action: Vec<FinFn>,
        allow_unfaithful: bool,
    ) -> Result<Self, ConcreteError> {
        assert_eq!(carrier.len(), over.num_objects());
        assert_eq!(action.len(), over.num_morphisms());
        let c = &*over;
        for m in c.morphisms() {
            let a = &action[m.0];
            if *a.dom() != carrier[c.dom(m).0] || *a.cod() != carrier[c.cod(m).0] {
                return Err(ConcreteError::NotFunctorial { g: c.mor_name(m).into(), f: c.mor_name(m).into() });
            }
        }
        for x in c.objects() {
            if !action[c.identity(x).0].same_graph(&FinFn::identity(&carrier[x.0])) {
                return Err(ConcreteError::IdentityNotPreserved(c.mor_name(c.identity(x)).into()));
            }
        }
        for g in c.morphisms() {
            for f in c.morphisms() {
                if let Some(h) = c.compose(g, f) {
                    let composite = action[g.0].after(&action[f.0]).expect("composable functions");
                    if !composite.same_graph(&action[h.0]) {
                        return Err(ConcreteError::NotFunctorial { g: c.mor_name(g).into(), f: c.mor_name(f).into() });
                    }
                }
            }
        }
        let mut warnings = Vec::new();
        'outer: for x in c.objects() {
            for y in c.objects() {
                let hom = c.hom(x, y);
                for (i, &m1) in hom.iter().enumerate() {
                    for &m2 in &hom[i + 1..] {
                        if action[m1.0].same_graph(&action[m2.0]) {
                            let e = ConcreteError::NotFaithful(c.mor_name(m1).into(), c.mor_name(m2).into());
                            if !allow_unfaithful {
                                return Err(e);
                            }
                            warnings.push(e);
                            continue 'outer;
                        }
                    }
                }
            }
        }
        Ok(ConcreteStructure { name: name.into(), over, carrier, action, warnings })
    }

    pub fn from_presentation(
        p: &ConcretePresentation,
        over: Arc<FinCat>,
        allow_unfaithful: bool,
    ) -> Result<Self, ConcreteError> {
        let c = &*over;
        let mut sets: Vec<Option<FinSetObj>> = vec![None; c.num_objects()];
        for (o, elems) in &p.carriers {
            let x = c.object(o).ok_or_else(|| ConcreteError::UnknownObject(o.clone()))?;
            if sets[x.0].is_some() {
                return Err(ConcreteError::DuplicateElement { set: p.name.clone(), element: o.clone() });
            }
            sets[x.0] = Some(FinSetObj::new(o.clone(), elems.iter().cloned())?);
        }
        let carrier: Vec<FinSetObj> = sets
            .into_iter()
            .enumerate()
            .map(|(i, s)| s.ok_or_else(|| ConcreteError::MissingCarrier(c.obj_name(ObjId(i)).into())))
            .collect::<Result<_, _>>()?;
        let mut fns: Vec<Option<FinFn>> = vec![None; c.num_morphisms()];
        for (m, pairs) in &p.functions {
            let mid = c.morphism(m).ok_or_else(|| ConcreteError::UnknownMorphism(m.clone()))?;
            let f = FinFn::from_pairs(
                m.clone(),
                carrier[c.dom(mid).0].clone(),
                carrier[c.cod(mid).0].clone(),
                pairs,
            )?;
            if fns[mid.0].replace(f).is_some() {
                return Err(ConcreteError::DuplicateAssignment { function: p.name.clone(), element: m.clone() });
            }
        }
        for x in c.objects() {
            let id = c.identity(x);
            if fns[id.0].is_none() {
                fns[id.0] = Some(FinFn::identity(&carrier[x.0]));
            }
        }
        let action: Vec<FinFn> = fns
            .into_iter()
            .enumerate()
            .map(|(i, f)| f.ok_or_else(|| ConcreteError::MissingFunction(c.mor_name(MorId(i)).into())))
            .collect::<Result<_, _>>()?;
        ConcreteStructure::new(p.name.clone(), over, carrier, action, allow_unfaithful)
    }

    /// Canonical presentation; identity functions are omitted.
    pub fn presentation(&self) -> ConcretePresentation {
        let c = &*self.over;
        ConcretePresentation {
            name: self.name.clone(),
            over: c.name().to_string(),
            carriers: c.objects().map(|x| (c.obj_name(x).to_string(), self.carrier[x.0].elements().to_vec())).collect(),
            functions: c
                .morphisms()
                .filter(|&m| !c.is_identity(m))
                .map(|m| {
                    let f = &self.action[m.0];
                    let pairs = (0..f.dom().len())
                        .map(|i| (f.dom().element(i).to_string(), f.cod().element(f.apply(i)).to_string()))
                        .collect();
                    (c.mor_name(m).to_string(), pairs)
                })
                .collect(),
        }
    }

    pub fn name(&self) -> &str {
        &self.name
    }

    pub fn over(&self) -> &Arc<FinCat> {
        &self.over
    }

    pub fn carrier(&self, x: ObjId) -> &FinSetObj {
        &self.carrier[x.0]
    }

    pub fn action(&self, m: MorId) -> &FinFn {
        &self.action[m.0]
    }

    pub fn warnings(&self) -> &[ConcreteError] {
        &self.warnings
    }

    pub fn max_carrier(&self) -> usize {
        self.carrier.iter().map(FinSetObj::len).max().unwrap_or(0)
    }
}

/// A commuting square `f ∘ p1 = g ∘ p2` with apex `apex`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct PullbackSquare {
    pub apex: FinSetObj,
    pub p1: FinFn,
    pub p2: FinFn,
    pub f: FinFn,
    pub g: FinFn,
}

/// `A ×_C B` for `f: A → C`, `g: B → C`, enumerated in lexicographic
/// `(a,b)` order with elements named `(a,b)`.
pub fn pullback(f: &FinFn, g: &FinFn) -> Result<PullbackSquare, ConcreteError> {
    if f.cod() != g.cod() {
        return Err(ConcreteError::CodomainMismatch(f.cod().id().into(), g.cod().id().into()));
    }
    let (a, b) = (f.dom(), g.dom());
    let mut pairs = Vec::new();
    for i in 0..a.len() {
        for j in 0..b.len() {
            if f.apply(i) == g.apply(j) {
                pairs.push((i, j));
            }
        }
    }
    let apex = FinSetObj::new(
        format!("{}_x_{}_{}", a.id(), f.cod().id(), b.id()),
        pairs.iter().map(|&(i, j)| label::pair_id([a.element(i), b.element(j)])),
    )?;
    let p1 = FinFn::new("p1", apex.clone(), a.clone(), pairs.iter().map(|p| p.0).collect());
    let p2 = FinFn::new("p2", apex.clone(), b.clone(), pairs.iter().map(|p| p.1).collect());
    Ok(PullbackSquare { apex, p1, p2, f: f.clone(), g: g.clone() })
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum PullbackVerdict {
    Ok,
    /// The square itself does not commute at the named apex element.
    NotCommuting(String),
    /// A cone from a `probe_size`-element set with `mediators` mediating
    /// maps (`!= 1`).
    Counterexample { probe_size: usize, q1: Vec<String>, q2: Vec<String>, mediators: usize },
}

/// Checks the universal property against every cone from sets of size at
/// most `k`.
pub fn verify_pullback_universal(sq: &PullbackSquare, k: usize) -> PullbackVerdict {
    let (a, b) = (sq.f.dom(), sq.g.dom());
    for e in 0..sq.apex.len() {
        if sq.f.apply(sq.p1.apply(e)) != sq.g.apply(sq.p2.apply(e)) {
            return PullbackVerdict::NotCommuting(sq.apex.element(e).into());
        }
    }
    // A cone sends each probe point to a commuting pair; the mediating maps
    // are counted pointwise over the apex.
    let commuting: Vec<(usize, usize)> = (0..a.len())
        .flat_map(|i| (0..b.len()).map(move |j| (i, j)))
        .filter(|&(i, j)| sq.f.apply(i) == sq.g.apply(j))
        .collect();
    let lifts = |(i, j): (usize, usize)| {
        (0..sq.apex.len()).filter(|&e| sq.p1.apply(e) == i && sq.p2.apply(e) == j).count()
    };
    for n in 0..=k {
        let mut cone = vec![0usize; n];
        loop {
            if n > 0 && commuting.is_empty() {
                break;
            }
            let mediators: usize = cone.iter().map(|&c| lifts(commuting[c])).product();
            if mediators != 1 {
                return PullbackVerdict::Counterexample {
                    probe_size: n,
                    q1: cone.iter().map(|&c| a.element(commuting[c].0).to_string()).collect(),
                    q2: cone.iter().map(|&c| b.element(commuting[c].1).to_string()).collect(),
                    mediators,
                };
            }
            // next cone, odometer order
            let mut pos = 0;
            while pos < n {
                cone[pos] += 1;
                if cone[pos] < commuting.len() {
                    break;
                }
                cone[pos] = 0;
                pos += 1;
            }
            if pos == n {
                break;
            }
        }
    }
    PullbackVerdict::Ok
}
