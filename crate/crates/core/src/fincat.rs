//! Explicit finite categories.
//!
//! A [`FinCat`] stores every morphism and the full composition table, so all
//! category laws can be checked by scanning. Objects and morphisms are
//! addressed by dense indices ([`ObjId`], [`MorId`]) and carry string ids.

use std::collections::HashMap;
use std::fmt;

use crate::label::{self, Label};

#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct ObjId(pub usize);

#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct MorId(pub usize);

impl fmt::Display for ObjId {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "#{}", self.0)
    }
}

impl fmt::Display for MorId {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "#{}", self.0)
    }
}

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum CategoryError {
    #[error("duplicate id `{0}`")]
    DuplicateId(String),
    #[error("unknown object `{0}`")]
    UnknownObject(String),
    #[error("unknown morphism `{0}`")]
    UnknownMorphism(String),
    #[error("identity `{morphism}` of `{object}` is not an endomorphism of `{object}`")]
    BadIdentity { object: String, morphism: String },
    #[error("missing composite {g} . {f}")]
    MissingComposite { g: String, f: String },
    #[error("composite {g} . {f} has inconsistent domain or codomain")]
    DomCodMismatch { g: String, f: String },
    #[error("conflicting entries for composite {g} . {f}")]
    ConflictingComposite { g: String, f: String },
    #[error("unit law fails for `{0}`")]
    UnitLawViolation(String),
    #[error("associativity fails for {h} . {g} . {f}")]
    AssociativityViolation { h: String, g: String, f: String },
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ArrowDecl {
    pub id: String,
    pub dom: String,
    pub cod: String,
}

impl ArrowDecl {
    pub fn new(id: impl Into<String>, dom: impl Into<String>, cod: impl Into<String>) -> Self {
        ArrowDecl { id: id.into(), dom: dom.into(), cod: cod.into() }
    }
}

/// One entry `g . f = h` of a composition table.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ComposeEntry {
    pub g: String,
    pub f: String,
    pub result: String,
}

impl ComposeEntry {
    pub fn new(g: impl Into<String>, f: impl Into<String>, result: impl Into<String>) -> Self {
        ComposeEntry { g: g.into(), f: f.into(), result: result.into() }
    }
}

/// Raw, unvalidated category data as it appears in a source file.
///
/// Identities may be omitted: an object `X` without an entry in `identities`
/// gets the morphism `id_X`. Composites with an identity may be omitted too.
#[derive(Debug, Clone, PartialEq, Eq, Default)]
pub struct CategoryPresentation {
    pub name: String,
    pub objects: Vec<String>,
    pub arrows: Vec<ArrowDecl>,
    pub identities: Vec<(String, String)>,
    pub compose: Vec<ComposeEntry>,
}

pub fn default_identity_id(object: &str) -> String {
    format!("id_{object}")
}

/// A validated finite category.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct FinCat {
    name: String,
    objects: Vec<String>,
    morphisms: Vec<String>,
    dom: Vec<ObjId>,
    cod: Vec<ObjId>,
    identity: Vec<MorId>,
    table: Vec<Option<MorId>>,
    homs: Vec<Vec<MorId>>,
    obj_lookup: HashMap<String, ObjId>,
    mor_lookup: HashMap<String, MorId>,
}

impl FinCat {
    pub fn name(&self) -> &str {
        &self.name
    }

    pub fn with_name(mut self, name: impl Into<String>) -> Self {
        self.name = name.into();
        self
    }

    pub fn num_objects(&self) -> usize {
        self.objects.len()
    }

    pub fn num_morphisms(&self) -> usize {
        self.morphisms.len()
    }

    pub fn objects(&self) -> impl ExactSizeIterator<Item = ObjId> + Clone {
        (0..self.objects.len()).map(ObjId)
    }

    pub fn morphisms(&self) -> impl ExactSizeIterator<Item = MorId> + Clone {
        (0..self.morphisms.len()).map(MorId)
    }

    pub fn obj_name(&self, x: ObjId) -> &str {
        &self.objects[x.0]
    }

    pub fn mor_name(&self, m: MorId) -> &str {
        &self.morphisms[m.0]
    }

    pub fn object(&self, id: &str) -> Option<ObjId> {
        self.obj_lookup.get(id).copied()
    }

    pub fn morphism(&self, id: &str) -> Option<MorId> {
        self.mor_lookup.get(id).copied()
    }

    pub fn dom(&self, m: MorId) -> ObjId {
        self.dom[m.0]
    }

    pub fn cod(&self, m: MorId) -> ObjId {
        self.cod[m.0]
    }

    pub fn identity(&self, x: ObjId) -> MorId {
        self.identity[x.0]
    }

    pub fn is_identity(&self, m: MorId) -> bool {
        self.dom(m) == self.cod(m) && self.identity(self.dom(m)) == m
    }

    /// `g ∘ f`, defined exactly when `cod f = dom g`.
    pub fn compose(&self, g: MorId, f: MorId) -> Option<MorId> {
        self.table[g.0 * self.morphisms.len() + f.0]
    }

    pub fn hom(&self, x: ObjId, y: ObjId) -> &[MorId] {
        &self.homs[x.0 * self.objects.len() + y.0]
    }

    pub fn composable(&self, g: MorId, f: MorId) -> bool {
        self.cod(f) == self.dom(g)
    }

    /// The two-sided inverse of `m`, if any.
    pub fn inverse(&self, m: MorId) -> Option<MorId> {
        let (x, y) = (self.dom(m), self.cod(m));
        self.hom(y, x).iter().copied().find(|&n| {
            self.compose(n, m) == Some(self.identity(x)) && self.compose(m, n) == Some(self.identity(y))
        })
    }

    pub fn is_groupoid(&self) -> bool {
        self.morphisms().all(|m| self.inverse(m).is_some())
    }

    /// The canonical presentation: identities and unit composites are left
    /// implicit wherever the default naming allows.
    pub fn presentation(&self) -> CategoryPresentation {
        let mut p = CategoryPresentation { name: self.name.clone(), ..Default::default() };
        p.objects = self.objects.clone();
        for x in self.objects() {
            let id = self.identity(x);
            if self.mor_name(id) != default_identity_id(self.obj_name(x)) {
                p.identities.push((self.obj_name(x).to_string(), self.mor_name(id).to_string()));
            }
        }
        for m in self.morphisms().filter(|&m| !self.is_identity(m)) {
            p.arrows.push(ArrowDecl::new(
                self.mor_name(m),
                self.obj_name(self.dom(m)),
                self.obj_name(self.cod(m)),
            ));
        }
        for g in self.morphisms().filter(|&m| !self.is_identity(m)) {
            for f in self.morphisms().filter(|&m| !self.is_identity(m)) {
                if let Some(h) = self.compose(g, f) {
                    p.compose.push(ComposeEntry::new(self.mor_name(g), self.mor_name(f), self.mor_name(h)));
                }
            }
        }
        p
    }

    /// Validates raw data into a category.
    pub fn from_presentation(p: &CategoryPresentation) -> Result<FinCat, CategoryError> {
        let mut b = CatBuilder::new(&p.name);
        for o in &p.objects {
            if b.object(o).is_some() {
                return Err(CategoryError::DuplicateId(o.clone()));
            }
            b.add_object(o.clone());
        }
        for a in &p.arrows {
            let dom = b.object(&a.dom).ok_or_else(|| CategoryError::UnknownObject(a.dom.clone()))?;
            let cod = b.object(&a.cod).ok_or_else(|| CategoryError::UnknownObject(a.cod.clone()))?;
            if b.morphism(&a.id).is_some() {
                return Err(CategoryError::DuplicateId(a.id.clone()));
            }
            b.add_morphism(a.id.clone(), dom, cod);
        }

        let mut explicit: HashMap<&str, &str> = HashMap::new();
        for (o, m) in &p.identities {
            if b.object(o).is_none() {
                return Err(CategoryError::UnknownObject(o.clone()));
            }
            if explicit.insert(o.as_str(), m.as_str()).is_some() {
                return Err(CategoryError::DuplicateId(format!("identity of {o}")));
            }
        }
        for (i, o) in p.objects.iter().enumerate() {
            let x = ObjId(i);
            let id = explicit.get(o.as_str()).map(|s| s.to_string()).unwrap_or_else(|| default_identity_id(o));
            let m = match b.morphism(&id) {
                Some(m) => {
                    if b.dom_of(m) != x || b.cod_of(m) != x {
                        return Err(CategoryError::BadIdentity { object: o.clone(), morphism: id });
                    }
                    m
                }
                None => b.add_morphism(id, x, x),
            };
            b.set_identity(x, m);
        }

        for e in &p.compose {
            let g = b.morphism(&e.g).ok_or_else(|| CategoryError::UnknownMorphism(e.g.clone()))?;
            let f = b.morphism(&e.f).ok_or_else(|| CategoryError::UnknownMorphism(e.f.clone()))?;
            let h = b.morphism(&e.result).ok_or_else(|| CategoryError::UnknownMorphism(e.result.clone()))?;
            b.set_compose(g, f, h)?;
        }
        b.build()
    }

    pub fn opposite(&self) -> FinCat {
        let n = self.morphisms.len();
        let morphisms: Vec<String> = self.morphisms.iter().map(|m| label::toggle_op(m)).collect();
        let mut table = vec![None; n * n];
        for g in 0..n {
            for f in 0..n {
                // f° ∘ g° = (g ∘ f)°
                table[f * n + g] = self.table[g * n + f];
            }
        }
        FinCat::assemble(
            label::toggle_op(&self.name),
            self.objects.clone(),
            morphisms,
            self.cod.clone(),
            self.dom.clone(),
            self.identity.clone(),
            table,
        )
    }

    /// The same category with new ids, given per index.
    pub fn relabeled(
        &self,
        name: impl Into<String>,
        objects: Vec<String>,
        morphisms: Vec<String>,
    ) -> Result<FinCat, CategoryError> {
        assert_eq!(objects.len(), self.num_objects());
        assert_eq!(morphisms.len(), self.num_morphisms());
        for ids in [&objects, &morphisms] {
            let mut seen = std::collections::HashSet::new();
            if let Some(dup) = ids.iter().find(|id| !seen.insert(id.as_str())) {
                return Err(CategoryError::DuplicateId(dup.clone()));
            }
        }
        Ok(FinCat::assemble(
            name.into(),
            objects,
            morphisms,
            self.dom.clone(),
            self.cod.clone(),
            self.identity.clone(),
            self.table.clone(),
        ))
    }

    /// Erases op tags and sorts objects and morphisms by id.
    ///
    /// Two constructions yield "identical" categories when their normalized
    /// forms are equal. Fails if erasing tags makes two ids collide.
    pub fn normalize(&self) -> Result<FinCat, CategoryError> {
        let objs: Vec<String> = self.objects.iter().map(|o| label::erase_tags(o)).collect();
        let mors: Vec<String> = self.morphisms.iter().map(|m| label::erase_tags(m)).collect();
        let mut obj_order: Vec<usize> = (0..objs.len()).collect();
        obj_order.sort_by(|&a, &b| objs[a].cmp(&objs[b]));
        let mut mor_order: Vec<usize> = (0..mors.len()).collect();
        mor_order.sort_by(|&a, &b| mors[a].cmp(&mors[b]));

        let mut b = CatBuilder::new(label::erase_tags(&self.name));
        let mut obj_new = vec![ObjId(0); objs.len()];
        for &i in &obj_order {
            if b.object(&objs[i]).is_some() {
                return Err(CategoryError::DuplicateId(objs[i].clone()));
            }
            obj_new[i] = b.add_object(objs[i].clone());
        }
        let mut mor_new = vec![MorId(0); mors.len()];
        for &i in &mor_order {
            if b.morphism(&mors[i]).is_some() {
                return Err(CategoryError::DuplicateId(mors[i].clone()));
            }
            mor_new[i] = b.add_morphism(mors[i].clone(), obj_new[self.dom[i].0], obj_new[self.cod[i].0]);
        }
        for x in self.objects() {
            b.set_identity(obj_new[x.0], mor_new[self.identity(x).0]);
        }
        for g in self.morphisms() {
            for f in self.morphisms() {
                if let Some(h) = self.compose(g, f) {
                    b.set_compose(mor_new[g.0], mor_new[f.0], mor_new[h.0])?;
                }
            }
        }
        b.build()
    }

    /// Equality of normalized presentations, ignoring the categories' names.
    /// `false` if either side cannot be normalized.
    pub fn identical(&self, other: &FinCat) -> bool {
        match (self.normalize(), other.normalize()) {
            (Ok(a), Ok(b)) => a.with_name("") == b.with_name(""),
            _ => false,
        }
    }

    /// Product category with its two projections' object and morphism maps.
    ///
    /// Object `(a,b)` has index `a * |Ob D| + b`; morphism `(f,g)` has index
    /// `f * |Mor D| + g`.
    pub fn product(&self, other: &FinCat) -> FinCat {
        let (no, mo) = (other.num_objects(), other.num_morphisms());
        let mut objects = Vec::with_capacity(self.num_objects() * no);
        for a in &self.objects {
            for b in &other.objects {
                objects.push(label::pair_id([a, b]));
            }
        }
        let mut morphisms = Vec::new();
        let mut dom = Vec::new();
        let mut cod = Vec::new();
        for f in self.morphisms() {
            for g in other.morphisms() {
                morphisms.push(label::pair_id([self.mor_name(f), other.mor_name(g)]));
                dom.push(ObjId(self.dom(f).0 * no + other.dom(g).0));
                cod.push(ObjId(self.cod(f).0 * no + other.cod(g).0));
            }
        }
        let mut identity = Vec::new();
        for a in self.objects() {
            for b in other.objects() {
                identity.push(MorId(self.identity(a).0 * mo + other.identity(b).0));
            }
        }
        let n = morphisms.len();
        let mut table = vec![None; n * n];
        for g1 in self.morphisms() {
            for f1 in self.morphisms() {
                let Some(h1) = self.compose(g1, f1) else { continue };
                for g2 in other.morphisms() {
                    for f2 in other.morphisms() {
                        if let Some(h2) = other.compose(g2, f2) {
                            let g = g1.0 * mo + g2.0;
                            let f = f1.0 * mo + f2.0;
                            table[g * n + f] = Some(MorId(h1.0 * mo + h2.0));
                        }
                    }
                }
            }
        }
        FinCat::assemble(
            format!("{}_x_{}", self.name, other.name),
            objects,
            morphisms,
            dom,
            cod,
            identity,
            table,
        )
    }

    /// Disjoint union. Ids of the `k`-th summand become `(in{k},id)`.
    pub fn coproduct(name: impl Into<String>, parts: &[&FinCat]) -> FinCat {
        let mut b = CatBuilder::new(name);
        for (k, c) in parts.iter().enumerate() {
            let tag = format!("in{k}");
            let obj_base = b.objects.len();
            let mor_base = b.morphisms.len();
            for x in c.objects() {
                b.add_object(label::pair_id([tag.as_str(), c.obj_name(x)]));
            }
            for m in c.morphisms() {
                b.add_morphism(
                    label::pair_id([tag.as_str(), c.mor_name(m)]),
                    ObjId(obj_base + c.dom(m).0),
                    ObjId(obj_base + c.cod(m).0),
                );
            }
            for x in c.objects() {
                b.set_identity(ObjId(obj_base + x.0), MorId(mor_base + c.identity(x).0));
            }
            for g in c.morphisms() {
                for f in c.morphisms() {
                    if let Some(h) = c.compose(g, f) {
                        b.set_compose(MorId(mor_base + g.0), MorId(mor_base + f.0), MorId(mor_base + h.0))
                            .expect("summand composites are consistent");
                    }
                }
            }
        }
        b.build().expect("coproduct of categories is a category")
    }

    /// Discrete category on the given objects; identities are named `id_x`.
    pub fn discrete<S: AsRef<str>>(name: impl Into<String>, objects: &[S]) -> Result<FinCat, CategoryError> {
        Self::discrete_with(name, objects, default_identity_id)
    }

    /// Discrete category whose identity ids are produced by `identity_id`.
    pub fn discrete_with<S: AsRef<str>>(
        name: impl Into<String>,
        objects: &[S],
        identity_id: impl Fn(&str) -> String,
    ) -> Result<FinCat, CategoryError> {
        let mut b = CatBuilder::new(name);
        for o in objects {
            let o = o.as_ref();
            if b.object(o).is_some() {
                return Err(CategoryError::DuplicateId(o.to_string()));
            }
            let x = b.add_object(o);
            let id = identity_id(o);
            if b.morphism(&id).is_some() {
                return Err(CategoryError::DuplicateId(id));
            }
            let m = b.add_morphism(id, x, x);
            b.set_identity(x, m);
        }
        b.build()
    }

    /// The one-object, one-morphism category.
    pub fn terminal(name: impl Into<String>) -> FinCat {
        FinCat::discrete(name, &["*"]).expect("terminal category")
    }

    fn assemble(
        name: String,
        objects: Vec<String>,
        morphisms: Vec<String>,
        dom: Vec<ObjId>,
        cod: Vec<ObjId>,
        identity: Vec<MorId>,
        table: Vec<Option<MorId>>,
    ) -> FinCat {
        let no = objects.len();
        let mut homs = vec![Vec::new(); no * no];
        for (i, (d, c)) in dom.iter().zip(&cod).enumerate() {
            homs[d.0 * no + c.0].push(MorId(i));
        }
        let obj_lookup = objects.iter().enumerate().map(|(i, o)| (o.clone(), ObjId(i))).collect();
        let mor_lookup = morphisms.iter().enumerate().map(|(i, m)| (m.clone(), MorId(i))).collect();
        FinCat { name, objects, morphisms, dom, cod, identity, table, homs, obj_lookup, mor_lookup }
    }

    /// Exhaustively re-checks every category law. Validated values always
    /// pass; exposed for tests and for re-checking assembled constructions.
    pub fn check_laws(&self) -> Result<(), CategoryError> {
        for x in self.objects() {
            let id = self.identity(x);
            if self.dom(id) != x || self.cod(id) != x {
                return Err(CategoryError::BadIdentity {
                    object: self.obj_name(x).to_string(),
                    morphism: self.mor_name(id).to_string(),
                });
            }
        }
        for g in self.morphisms() {
            for f in self.morphisms() {
                match (self.composable(g, f), self.compose(g, f)) {
                    (true, None) => {
                        return Err(CategoryError::MissingComposite {
                            g: self.mor_name(g).to_string(),
                            f: self.mor_name(f).to_string(),
                        })
                    }
                    (false, Some(_)) => {
                        return Err(CategoryError::DomCodMismatch {
                            g: self.mor_name(g).to_string(),
                            f: self.mor_name(f).to_string(),
                        })
                    }
                    (true, Some(h)) if self.dom(h) != self.dom(f) || self.cod(h) != self.cod(g) => {
                        return Err(CategoryError::DomCodMismatch {
                            g: self.mor_name(g).to_string(),
                            f: self.mor_name(f).to_string(),
                        })
                    }
                    _ => {}
                }
            }
        }
        for f in self.morphisms() {
            let (x, y) = (self.dom(f), self.cod(f));
            if self.compose(self.identity(y), f) != Some(f) || self.compose(f, self.identity(x)) != Some(f) {
                return Err(CategoryError::UnitLawViolation(self.mor_name(f).to_string()));
            }
        }
        self.check_associativity()
    }

    fn check_associativity(&self) -> Result<(), CategoryError> {
        for h in self.morphisms() {
            for g in self.morphisms().filter(|&g| self.composable(h, g)) {
                let hg = self.compose(h, g).expect("composable");
                for f in self.morphisms().filter(|&f| self.composable(g, f)) {
                    let gf = self.compose(g, f).expect("composable");
                    if self.compose(h, gf) != self.compose(hg, f) {
                        return Err(CategoryError::AssociativityViolation {
                            h: self.mor_name(h).to_string(),
                            g: self.mor_name(g).to_string(),
                            f: self.mor_name(f).to_string(),
                        });
                    }
                }
            }
        }
        Ok(())
    }

    /// Parses each id into a [`Label`] with tags erased, for sort keys.
    pub fn canonical_key(id: &str) -> Label {
        Label::parse(id).erase_tags()
    }
}

/// Incremental construction of a category. [`CatBuilder::build`] fills in
/// unit composites and checks every law.
#[derive(Debug, Clone)]
pub struct CatBuilder {
    name: String,
    objects: Vec<String>,
    morphisms: Vec<String>,
    dom: Vec<ObjId>,
    cod: Vec<ObjId>,
    identity: Vec<Option<MorId>>,
    table: HashMap<(MorId, MorId), MorId>,
    obj_lookup: HashMap<String, ObjId>,
    mor_lookup: HashMap<String, MorId>,
}

impl CatBuilder {
    pub fn new(name: impl Into<String>) -> Self {
        CatBuilder {
            name: name.into(),
            objects: Vec::new(),
            morphisms: Vec::new(),
            dom: Vec::new(),
            cod: Vec::new(),
            identity: Vec::new(),
            table: HashMap::new(),
            obj_lookup: HashMap::new(),
            mor_lookup: HashMap::new(),
        }
    }

    pub fn object(&self, id: &str) -> Option<ObjId> {
        self.obj_lookup.get(id).copied()
    }

    pub fn morphism(&self, id: &str) -> Option<MorId> {
        self.mor_lookup.get(id).copied()
    }

    /// Adds an object. A repeated id is reported by [`CatBuilder::build`].
    pub fn add_object(&mut self, id: impl Into<String>) -> ObjId {
        let id = id.into();
        let x = ObjId(self.objects.len());
        self.obj_lookup.entry(id.clone()).or_insert(x);
        self.objects.push(id);
        self.identity.push(None);
        x
    }

    pub fn add_morphism(&mut self, id: impl Into<String>, dom: ObjId, cod: ObjId) -> MorId {
        let id = id.into();
        let m = MorId(self.morphisms.len());
        self.mor_lookup.entry(id.clone()).or_insert(m);
        self.morphisms.push(id);
        self.dom.push(dom);
        self.cod.push(cod);
        m
    }

    pub fn set_identity(&mut self, x: ObjId, m: MorId) {
        self.identity[x.0] = Some(m);
    }

    fn dom_of(&self, m: MorId) -> ObjId {
        self.dom[m.0]
    }

    fn cod_of(&self, m: MorId) -> ObjId {
        self.cod[m.0]
    }

    /// Records `g ∘ f = h`.
    pub fn set_compose(&mut self, g: MorId, f: MorId, h: MorId) -> Result<(), CategoryError> {
        let names = || (self.morphisms[g.0].clone(), self.morphisms[f.0].clone());
        if self.cod[f.0] != self.dom[g.0] || self.dom[h.0] != self.dom[f.0] || self.cod[h.0] != self.cod[g.0] {
            let (g, f) = names();
            return Err(CategoryError::DomCodMismatch { g, f });
        }
        match self.table.get(&(g, f)) {
            Some(&old) if old != h => {
                let (g, f) = names();
                Err(CategoryError::ConflictingComposite { g, f })
            }
            _ => {
                self.table.insert((g, f), h);
                Ok(())
            }
        }
    }

    pub fn build(self) -> Result<FinCat, CategoryError> {
        let mut seen = std::collections::HashSet::new();
        for o in &self.objects {
            if !seen.insert(o.as_str()) {
                return Err(CategoryError::DuplicateId(o.clone()));
            }
        }
        seen.clear();
        for m in &self.morphisms {
            if !seen.insert(m.as_str()) {
                return Err(CategoryError::DuplicateId(m.clone()));
            }
        }
        let mut identity = Vec::with_capacity(self.objects.len());
        for (i, id) in self.identity.iter().enumerate() {
            let m = id.unwrap_or_else(|| panic!("no identity set for object `{}`", self.objects[i]));
            if self.dom[m.0] != ObjId(i) || self.cod[m.0] != ObjId(i) {
                return Err(CategoryError::BadIdentity {
                    object: self.objects[i].clone(),
                    morphism: self.morphisms[m.0].clone(),
                });
            }
            identity.push(m);
        }
        let n = self.morphisms.len();
        let mut table = vec![None; n * n];
        for (&(g, f), &h) in &self.table {
            table[g.0 * n + f.0] = Some(h);
        }
        // unit composites are forced; explicit ones must agree
        for f in 0..n {
            let id_cod = identity[self.cod[f].0];
            let id_dom = identity[self.dom[f].0];
            for (slot, expect) in [(id_cod.0 * n + f, f), (f * n + id_dom.0, f)] {
                match table[slot] {
                    Some(h) if h.0 != expect => {
                        return Err(CategoryError::UnitLawViolation(self.morphisms[f].clone()))
                    }
                    _ => table[slot] = Some(MorId(expect)),
                }
            }
        }
        for g in 0..n {
            for f in 0..n {
                if self.cod[f] == self.dom[g] && table[g * n + f].is_none() {
                    return Err(CategoryError::MissingComposite {
                        g: self.morphisms[g].clone(),
                        f: self.morphisms[f].clone(),
                    });
                }
            }
        }
        let cat = FinCat::assemble(self.name, self.objects, self.morphisms, self.dom, self.cod, identity, table);
        cat.check_associativity()?;
        Ok(cat)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::samples;

    #[test]
    fn terminal_has_one_of_each() {
        let t = samples::terminal();
        assert_eq!((t.num_objects(), t.num_morphisms()), (1, 1));
    }

    #[test]
    fn walking_arrow_completes_unit_composites() {
        let c = samples::walking_arrow();
        assert_eq!((c.num_objects(), c.num_morphisms()), (2, 3));
        let f = c.morphism("f").unwrap();
        let idy = c.morphism("id_Y").unwrap();
        assert_eq!(c.compose(idy, f), Some(f));
        c.check_laws().unwrap();
    }

    #[test]
    fn missing_composite_is_reported() {
        let p = CategoryPresentation {
            name: "Three".into(),
            objects: vec!["X".into(), "Y".into(), "Z".into()],
            arrows: vec![ArrowDecl::new("f", "X", "Y"), ArrowDecl::new("g", "Y", "Z")],
            ..Default::default()
        };
        assert_eq!(
            FinCat::from_presentation(&p),
            Err(CategoryError::MissingComposite { g: "g".into(), f: "f".into() })
        );
    }

    #[test]
    fn unit_law_violation_is_reported() {
        let mut p = samples::walking_arrow().presentation();
        p.compose.push(ComposeEntry::new("id_Y", "f", "id_X"));
        assert!(matches!(FinCat::from_presentation(&p), Err(CategoryError::DomCodMismatch { .. })));
        let mut p = samples::z2().presentation();
        p.compose.retain(|e| !(e.g == "s" && e.f == "s"));
        p.compose.push(ComposeEntry::new("id_*", "s", "id_*"));
        assert_eq!(FinCat::from_presentation(&p), Err(CategoryError::UnitLawViolation("s".into())));
    }

    #[test]
    fn duplicate_ids_are_reported() {
        let p = CategoryPresentation {
            name: "D".into(),
            objects: vec!["X".into(), "X".into()],
            ..Default::default()
        };
        assert_eq!(FinCat::from_presentation(&p), Err(CategoryError::DuplicateId("X".into())));
    }

    #[test]
    fn bad_identity_is_reported() {
        let p = CategoryPresentation {
            name: "D".into(),
            objects: vec!["X".into(), "Y".into()],
            arrows: vec![ArrowDecl::new("id_X", "X", "Y")],
            ..Default::default()
        };
        assert!(matches!(FinCat::from_presentation(&p), Err(CategoryError::BadIdentity { .. })));
    }

    #[test]
    fn explicit_identity_ids_survive_presentation() {
        let p = CategoryPresentation {
            name: "P".into(),
            objects: vec!["(X,x)".into()],
            identities: vec![("(X,x)".into(), "(id_X,x)".into())],
            ..Default::default()
        };
        let c = FinCat::from_presentation(&p).unwrap();
        assert_eq!(c.mor_name(c.identity(ObjId(0))), "(id_X,x)");
        assert_eq!(c.presentation(), p);
    }

    #[test]
    fn opposite_of_walking_arrow_reverses_f() {
        let op = samples::walking_arrow().opposite();
        let f = op.morphism("f_op").unwrap();
        assert_eq!(op.obj_name(op.dom(f)), "Y");
        assert_eq!(op.obj_name(op.cod(f)), "X");
        op.check_laws().unwrap();
    }

    #[test]
    fn opposite_is_involution() {
        for c in samples::all() {
            assert_eq!(c.opposite().opposite(), c);
        }
    }

    #[test]
    fn z2_opposite_has_transposed_table() {
        // Z2 is commutative, so the transpose of its table is itself.
        let z = samples::z2();
        let op = z.opposite();
        assert_eq!(op.normalize().unwrap(), z.normalize().unwrap().with_name("Z2"));
    }

    #[test]
    fn product_counts() {
        let a = samples::walking_arrow();
        let p = a.product(&a);
        assert_eq!((p.num_objects(), p.num_morphisms()), (4, 9));
        p.check_laws().unwrap();
        let z = samples::z2();
        let k = z.product(&z);
        assert_eq!((k.num_objects(), k.num_morphisms()), (1, 4));
        // Klein four: every element squares to the identity
        for m in k.morphisms() {
            assert_eq!(k.compose(m, m), Some(k.identity(ObjId(0))));
        }
        assert!(k.is_groupoid());
    }

    #[test]
    fn coproduct_counts() {
        let t = samples::terminal();
        let tt = FinCat::coproduct("TT", &[&t, &t]);
        assert_eq!((tt.num_objects(), tt.num_morphisms()), (2, 2));
        let a = samples::walking_arrow();
        let z = samples::z2();
        let az = FinCat::coproduct("AZ", &[&a, &z]);
        assert_eq!((az.num_objects(), az.num_morphisms()), (3, 5));
        let one = FinCat::coproduct("A1", &[&a]);
        assert_eq!(one.num_morphisms(), a.num_morphisms());
        assert!(one.morphism("(in0,f)").is_some());
    }

    #[test]
    fn normalize_detects_tag_collisions() {
        let p = CategoryPresentation {
            name: "C".into(),
            objects: vec!["X".into()],
            arrows: vec![ArrowDecl::new("a", "X", "X"), ArrowDecl::new("a_op", "X", "X")],
            compose: vec![
                ComposeEntry::new("a", "a", "a"),
                ComposeEntry::new("a", "a_op", "a"),
                ComposeEntry::new("a_op", "a", "a"),
                ComposeEntry::new("a_op", "a_op", "a_op"),
            ],
            ..Default::default()
        };
        let c = FinCat::from_presentation(&p);
        if let Ok(c) = c {
            assert!(matches!(c.normalize(), Err(CategoryError::DuplicateId(_))));
        }
    }
}
