//! Cartesian morphisms, (op)fibrations and split cleavages, checked by
//! exhaustive search.
//!
//! Every check is a finite scan of cost about `|Mor E|² · |Mor B|`, guarded
//! by the budget carried in [`FunctorOver`].

use std::collections::{BTreeMap, HashMap};
use std::fmt;
use std::sync::Arc;

use crate::constructions::{ConstructionError, IndexedFamily};
use crate::fincat::{CatBuilder, FinCat, MorId, ObjId};
use crate::functor::FinFunctor;
use crate::iso::{IsoWitness, DEFAULT_BUDGET};

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum FibrationError {
    #[error("unknown morphism `{0}`")]
    UnknownMorphism(String),
    #[error("scan needs about {needed} steps, over the budget of {budget}")]
    BudgetExceeded { needed: u64, budget: u64 },
    #[error("cleavage has no lift of `{u}` at `{object}`")]
    NoLiftInCleavage { u: String, object: String },
    #[error("cleavage is for the other variance")]
    WrongVariance,
    #[error("cleavage is not split: {0}")]
    NotSplit(SplitViolation),
    #[error("`{g}` has {count} vertical factorizations through its lift")]
    Factorization { g: String, count: usize },
    #[error(transparent)]
    Construction(#[from] ConstructionError),
}

/// A verdict: `Ok(())` when the property holds, otherwise the witness.
pub type Verdict<T> = Result<(), T>;

/// A projection `P: E → B`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct FunctorOver {
    proj: FinFunctor,
    budget: u64,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum LiftKind {
    /// Lifts `γ(u, Y)` ending at `Y`.
    Cartesian,
    /// Lifts `κ(u, X)` starting at `X`.
    OpCartesian,
}

/// A choice of (op)cartesian lift per base morphism and total object.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Cleavage {
    kind: LiftKind,
    lifts: BTreeMap<(MorId, ObjId), MorId>,
}

impl Cleavage {
    pub fn new(kind: LiftKind, lifts: BTreeMap<(MorId, ObjId), MorId>) -> Self {
        Cleavage { kind, lifts }
    }

    pub fn kind(&self) -> LiftKind {
        self.kind
    }

    pub fn get(&self, u: MorId, object: ObjId) -> Option<MorId> {
        self.lifts.get(&(u, object)).copied()
    }

    /// Replaces one entry, for hand-edited cleavages.
    pub fn set(&mut self, u: MorId, object: ObjId, lift: MorId) {
        self.lifts.insert((u, object), lift);
    }

    pub fn entries(&self) -> impl Iterator<Item = (MorId, ObjId, MorId)> + '_ {
        self.lifts.iter().map(|(&(u, y), &f)| (u, y, f))
    }

    pub fn len(&self) -> usize {
        self.lifts.len()
    }

    pub fn is_empty(&self) -> bool {
        self.lifts.is_empty()
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct CartesianCounterexample {
    pub f: String,
    pub g: String,
    pub w: String,
    /// Number of `h` over `w` factoring `g` through `f` (not 1).
    pub candidates: usize,
}

impl fmt::Display for CartesianCounterexample {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "`{}` with g = `{}` over w = `{}`: {} mediating morphisms", self.f, self.g, self.w, self.candidates)
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct MissingLift {
    pub kind: LiftKind,
    pub u: String,
    pub object: String,
}

impl fmt::Display for MissingLift {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let what = match self.kind {
            LiftKind::Cartesian => "cartesian",
            LiftKind::OpCartesian => "opcartesian",
        };
        write!(f, "no {what} lift of `{}` at `{}`", self.u, self.object)
    }
}

impl std::error::Error for MissingLift {}

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum SplitViolation {
    Identity { u: String, object: String },
    Composition { v: String, u: String, object: String },
}

impl fmt::Display for SplitViolation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            SplitViolation::Identity { u, object } => write!(f, "lift of identity `{u}` at `{object}` is not an identity"),
            SplitViolation::Composition { v, u, object } => {
                write!(f, "lifts of `{v}` and `{u}` at `{object}` do not compose to the lift of their composite")
            }
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ComposeCounterexample {
    pub g: String,
    pub f: String,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Factorization {
    pub vertical: MorId,
    pub cartesian: MorId,
}

/// A category read forwards, or backwards to check the dual notions.
#[derive(Clone, Copy)]
struct View<'a> {
    cat: &'a FinCat,
    op: bool,
}

impl View<'_> {
    fn dom(&self, m: MorId) -> ObjId {
        if self.op {
            self.cat.cod(m)
        } else {
            self.cat.dom(m)
        }
    }

    fn cod(&self, m: MorId) -> ObjId {
        if self.op {
            self.cat.dom(m)
        } else {
            self.cat.cod(m)
        }
    }

    fn compose(&self, g: MorId, f: MorId) -> Option<MorId> {
        if self.op {
            self.cat.compose(f, g)
        } else {
            self.cat.compose(g, f)
        }
    }

    fn hom(&self, x: ObjId, y: ObjId) -> &[MorId] {
        if self.op {
            self.cat.hom(y, x)
        } else {
            self.cat.hom(x, y)
        }
    }
}

impl FunctorOver {
    pub fn new(proj: FinFunctor) -> Self {
        FunctorOver { proj, budget: DEFAULT_BUDGET }
    }

    pub fn with_budget(mut self, budget: u64) -> Self {
        self.budget = budget;
        self
    }

    pub fn total(&self) -> &Arc<FinCat> {
        self.proj.source()
    }

    pub fn base(&self) -> &Arc<FinCat> {
        self.proj.target()
    }

    pub fn proj(&self) -> &FinFunctor {
        &self.proj
    }

    pub fn budget(&self) -> u64 {
        self.budget
    }

    /// The identity functor of `c`, as a fibration over itself.
    pub fn identity(c: Arc<FinCat>) -> Self {
        FunctorOver::new(FinFunctor::identity(c))
    }

    fn guard(&self) -> Result<(), FibrationError> {
        let e = self.total().num_morphisms() as u64;
        let b = self.base().num_morphisms() as u64;
        let needed = e.saturating_mul(e).saturating_mul(b.max(1));
        if needed > self.budget {
            return Err(FibrationError::BudgetExceeded { needed, budget: self.budget });
        }
        Ok(())
    }

    fn views(&self, kind: LiftKind) -> (View<'_>, View<'_>) {
        let op = kind == LiftKind::OpCartesian;
        (View { cat: self.total(), op }, View { cat: self.base(), op })
    }

    fn counterexample(&self, kind: LiftKind, f: MorId) -> Option<CartesianCounterexample> {
        let (e, b) = self.views(kind);
        let p = &self.proj;
        let u = p.mor(f);
        let (x, y) = (e.dom(f), e.cod(f));
        for g in self.total().morphisms().filter(|&g| e.cod(g) == y) {
            let z = e.dom(g);
            for &w in b.hom(p.obj(z), p.obj(x)) {
                if b.compose(u, w) != Some(p.mor(g)) {
                    continue;
                }
                let candidates =
                    e.hom(z, x).iter().filter(|&&h| p.mor(h) == w && e.compose(f, h) == Some(g)).count();
                if candidates != 1 {
                    return Some(CartesianCounterexample {
                        f: self.total().mor_name(f).into(),
                        g: self.total().mor_name(g).into(),
                        w: self.base().mor_name(w).into(),
                        candidates,
                    });
                }
            }
        }
        None
    }

    fn lookup(&self, f: MorId) -> Result<(), FibrationError> {
        if f.0 >= self.total().num_morphisms() {
            return Err(FibrationError::UnknownMorphism(f.to_string()));
        }
        Ok(())
    }

    /// Every `g` into `cod f` and `w` with `P f ∘ w = P g` factor as
    /// `g = f ∘ h` for exactly one `h` over `w`.
    pub fn is_cartesian(&self, f: MorId) -> Result<Verdict<CartesianCounterexample>, FibrationError> {
        self.lookup(f)?;
        self.guard()?;
        Ok(self.counterexample(LiftKind::Cartesian, f).map_or(Ok(()), Err))
    }

    /// The dual of [`FunctorOver::is_cartesian`].
    pub fn is_opcartesian(&self, f: MorId) -> Result<Verdict<CartesianCounterexample>, FibrationError> {
        self.lookup(f)?;
        self.guard()?;
        Ok(self.counterexample(LiftKind::OpCartesian, f).map_or(Ok(()), Err))
    }

    pub fn cartesian_by_name(&self, f: &str) -> Result<Verdict<CartesianCounterexample>, FibrationError> {
        let m = self.total().morphism(f).ok_or_else(|| FibrationError::UnknownMorphism(f.into()))?;
        self.is_cartesian(m)
    }

    fn find_cleavage(&self, kind: LiftKind) -> Result<Result<Cleavage, MissingLift>, FibrationError> {
        self.guard()?;
        let (e, b) = self.views(kind);
        let (total, base) = (self.total(), self.base());
        let p = &self.proj;
        let mut lifts = BTreeMap::new();
        for y in total.objects() {
            for u in base.morphisms().filter(|&u| b.cod(u) == p.obj(y)) {
                let mut candidates: Vec<MorId> =
                    total.morphisms().filter(|&f| e.cod(f) == y && p.mor(f) == u).collect();
                candidates.sort_by(|&a, &c| total.mor_name(a).cmp(total.mor_name(c)));
                match candidates.into_iter().find(|&f| self.counterexample(kind, f).is_none()) {
                    Some(f) => {
                        lifts.insert((u, y), f);
                    }
                    None => {
                        return Ok(Err(MissingLift {
                            kind,
                            u: base.mor_name(u).into(),
                            object: total.obj_name(y).into(),
                        }))
                    }
                }
            }
        }
        Ok(Ok(Cleavage::new(kind, lifts)))
    }

    /// A cleavage made of the first cartesian lift, by id, of each `u` at
    /// each `Y` over `cod u`.
    pub fn check_fibration(&self) -> Result<Result<Cleavage, MissingLift>, FibrationError> {
        self.find_cleavage(LiftKind::Cartesian)
    }

    pub fn check_opfibration(&self) -> Result<Result<Cleavage, MissingLift>, FibrationError> {
        self.find_cleavage(LiftKind::OpCartesian)
    }

    /// Identity lifts are identities and lifts compose on the nose.
    pub fn check_split(&self, c: &Cleavage) -> Result<Verdict<SplitViolation>, FibrationError> {
        let (e, b) = self.views(c.kind);
        let (total, base) = (self.total(), self.base());
        let p = &self.proj;
        let lift = |u: MorId, y: ObjId| {
            c.get(u, y).ok_or_else(|| FibrationError::NoLiftInCleavage {
                u: base.mor_name(u).into(),
                object: total.obj_name(y).into(),
            })
        };
        for y in total.objects() {
            let id = base.identity(p.obj(y));
            if lift(id, y)? != total.identity(y) {
                return Ok(Err(SplitViolation::Identity { u: base.mor_name(id).into(), object: total.obj_name(y).into() }));
            }
        }
        for z in total.objects() {
            for v in base.morphisms().filter(|&v| b.cod(v) == p.obj(z)) {
                let gv = lift(v, z)?;
                let z1 = e.dom(gv);
                for u in base.morphisms().filter(|&u| b.cod(u) == b.dom(v)) {
                    let gu = lift(u, z1)?;
                    let vu = b.compose(v, u).expect("composable");
                    if e.compose(gv, gu) != Some(lift(vu, z)?) {
                        return Ok(Err(SplitViolation::Composition {
                            v: base.mor_name(v).into(),
                            u: base.mor_name(u).into(),
                            object: total.obj_name(z).into(),
                        }));
                    }
                }
            }
        }
        Ok(Ok(()))
    }

    fn is_vertical(&self, h: MorId) -> bool {
        self.base().is_identity(self.proj.mor(h))
    }

    /// All vertical `h` with `f ∘ h = g`.
    pub fn vertical_factorizations(&self, f: MorId, g: MorId) -> Vec<MorId> {
        let e = self.total();
        e.hom(e.dom(g), e.dom(f))
            .iter()
            .copied()
            .filter(|&h| self.is_vertical(h) && e.compose(f, h) == Some(g))
            .collect()
    }

    /// `g = f ∘ h` with `f` the cleavage's lift of `P g` at `cod g` and `h`
    /// vertical.
    pub fn factor_vertical_cartesian(&self, c: &Cleavage, g: MorId) -> Result<Factorization, FibrationError> {
        self.lookup(g)?;
        if c.kind != LiftKind::Cartesian {
            return Err(FibrationError::WrongVariance);
        }
        let (e, b) = (self.total(), self.base());
        let u = self.proj.mor(g);
        let f = c.get(u, e.cod(g)).ok_or_else(|| FibrationError::NoLiftInCleavage {
            u: b.mor_name(u).into(),
            object: e.obj_name(e.cod(g)).into(),
        })?;
        match self.vertical_factorizations(f, g).as_slice() {
            [h] => Ok(Factorization { vertical: *h, cartesian: f }),
            hs => Err(FibrationError::Factorization { g: e.mor_name(g).into(), count: hs.len() }),
        }
    }

    fn cartesian_set(&self) -> Vec<bool> {
        self.total().morphisms().map(|f| self.counterexample(LiftKind::Cartesian, f).is_none()).collect()
    }

    /// Composites of cartesian morphisms are cartesian.
    pub fn property_cartesian_compose(&self) -> Result<Verdict<ComposeCounterexample>, FibrationError> {
        self.guard()?;
        let e = self.total();
        let cart = self.cartesian_set();
        for g in e.morphisms().filter(|g| cart[g.0]) {
            for f in e.morphisms().filter(|f| cart[f.0]) {
                if let Some(gf) = e.compose(g, f) {
                    if !cart[gf.0] {
                        return Ok(Err(ComposeCounterexample { g: e.mor_name(g).into(), f: e.mor_name(f).into() }));
                    }
                }
            }
        }
        Ok(Ok(()))
    }

    /// Cartesian morphisms over isomorphisms are isomorphisms.
    pub fn property_cartesian_over_iso(&self) -> Result<Verdict<String>, FibrationError> {
        self.guard()?;
        let e = self.total();
        let cart = self.cartesian_set();
        for f in e.morphisms().filter(|f| cart[f.0]) {
            if self.base().inverse(self.proj.mor(f)).is_some() && e.inverse(f).is_none() {
                return Ok(Err(e.mor_name(f).into()));
            }
        }
        Ok(Ok(()))
    }

    /// The fibres and the change-of-base functors induced by a split
    /// cleavage.
    pub fn recover_indexed(&self, c: &Cleavage) -> Result<IndexedFamily, FibrationError> {
        if c.kind != LiftKind::Cartesian {
            return Err(FibrationError::WrongVariance);
        }
        if let Err(v) = self.check_split(c)? {
            return Err(FibrationError::NotSplit(v));
        }
        let (e, b) = (self.total(), self.base());
        let p = &self.proj;
        // fibre over I: objects over I, vertical morphisms over id_I
        let mut local_obj: HashMap<ObjId, ObjId> = HashMap::new();
        let mut local_mor: HashMap<MorId, MorId> = HashMap::new();
        let mut members: Vec<(Vec<ObjId>, Vec<MorId>)> = vec![(Vec::new(), Vec::new()); b.num_objects()];
        let mut fibres = Vec::with_capacity(b.num_objects());
        for i in b.objects() {
            let mut fb = CatBuilder::new(format!("{}_{}", e.name(), b.obj_name(i)));
            for y in e.objects().filter(|&y| p.obj(y) == i) {
                local_obj.insert(y, fb.add_object(e.obj_name(y)));
                members[i.0].0.push(y);
            }
            let id_i = b.identity(i);
            for m in e.morphisms().filter(|&m| p.mor(m) == id_i) {
                local_mor.insert(m, fb.add_morphism(e.mor_name(m), local_obj[&e.dom(m)], local_obj[&e.cod(m)]));
                members[i.0].1.push(m);
            }
            for &y in &members[i.0].0 {
                fb.set_identity(local_obj[&y], local_mor[&e.identity(y)]);
            }
            for &g in &members[i.0].1 {
                for &f in &members[i.0].1 {
                    if let Some(h) = e.compose(g, f) {
                        fb.set_compose(local_mor[&g], local_mor[&f], local_mor[&h])
                            .map_err(ConstructionError::from)?;
                    }
                }
            }
            fibres.push(Arc::new(fb.build().map_err(ConstructionError::from)?));
        }
        let mut pulls = Vec::with_capacity(b.num_morphisms());
        for u in b.morphisms() {
            let (i, j) = (b.dom(u), b.cod(u));
            let lift = |y: ObjId| c.get(u, y).expect("split cleavage covers every object");
            let obj_map = members[j.0].0.iter().map(|&y| local_obj[&e.dom(lift(y))]).collect();
            let mut mor_map = Vec::with_capacity(members[j.0].1.len());
            for &g in &members[j.0].1 {
                // u*(g) is the unique vertical h with γ(u,Y')∘h = g∘γ(u,Y)
                let (ly, ly1) = (lift(e.dom(g)), lift(e.cod(g)));
                let target = e.compose(g, ly).expect("composable");
                match self.vertical_factorizations(ly1, target).as_slice() {
                    [h] => mor_map.push(local_mor[h]),
                    hs => {
                        return Err(FibrationError::Factorization { g: e.mor_name(target).into(), count: hs.len() })
                    }
                }
            }
            let pull = FinFunctor::new(
                format!("{}_star", b.mor_name(u)),
                fibres[j.0].clone(),
                fibres[i.0].clone(),
                obj_map,
                mor_map,
            )
            .map_err(ConstructionError::from)?;
            pulls.push(pull);
        }
        Ok(IndexedFamily::new(format!("{}_fam", e.name()), b.clone(), fibres, pulls)?)
    }

    /// Rebuilds the total category from the recovered family and compares
    /// it with `E` through the comparison functor `(I,Z) ↦ Z`,
    /// `(u,h) ↦ γ(u,Y)∘h`.
    pub fn round_trip(&self, c: &Cleavage) -> Result<RoundTrip, FibrationError> {
        let fam = self.recover_indexed(c)?;
        let (rebuilt, _) = crate::constructions::grothendieck_strict(&fam)?;
        let (e, g) = (self.total(), &rebuilt.cat);
        let obj_map: Vec<ObjId> = g
            .objects()
            .map(|x| e.object(&rebuilt.obj_labels[x.0][1]).expect("fibre objects keep their ids"))
            .collect();
        let mor_map: Vec<MorId> = g
            .morphisms()
            .map(|m| {
                let u = rebuilt.projection.mor(m);
                let h = e.morphism(&rebuilt.mor_labels[m.0][1]).expect("fibre morphisms keep their ids");
                let gamma = c.get(u, obj_map[g.cod(m).0]).expect("split cleavage covers every object");
                e.compose(gamma, h).expect("composable")
            })
            .collect();
        let relabeled = g
            .relabeled(
                e.name(),
                obj_map.iter().map(|&x| e.obj_name(x).to_string()).collect(),
                mor_map.iter().map(|&m| e.mor_name(m).to_string()).collect(),
            )
            .ok();
        let identical = match (&relabeled, e.normalize(), relabeled.as_ref().map(FinCat::normalize)) {
            (Some(_), Ok(a), Some(Ok(b))) => a == b,
            _ => false,
        };
        let witness = FinFunctor::new("compare", g.clone(), e.clone(), obj_map, mor_map)
            .ok()
            .and_then(IsoWitness::from_bijection);
        Ok(RoundTrip { family: fam, rebuilt, identical, witness })
    }
}

/// Result of [`FunctorOver::round_trip`].
#[derive(Debug, Clone)]
pub struct RoundTrip {
    pub family: IndexedFamily,
    pub rebuilt: crate::constructions::ConstructedCategory,
    /// Relabelled along the comparison map, the rebuilt category normalizes
    /// to the same presentation as `E`.
    pub identical: bool,
    pub witness: Option<IsoWitness>,
}

impl RoundTrip {
    pub fn holds(&self) -> bool {
        self.identical && self.witness.is_some()
    }
}

#[cfg(test)]
mod tests;
