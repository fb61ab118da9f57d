//! Functors between finite categories.

use std::collections::HashMap;
use std::sync::Arc;

use crate::fincat::{FinCat, MorId, ObjId};

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum FunctorError {
    #[error("unknown object `{0}`")]
    UnknownObject(String),
    #[error("unknown morphism `{0}`")]
    UnknownMorphism(String),
    #[error("`{0}` is mapped twice")]
    DuplicateMapping(String),
    #[error("object `{0}` is not mapped")]
    UnmappedObject(String),
    #[error("morphism `{0}` is not mapped")]
    UnmappedMorphism(String),
    #[error("identity of `{0}` is not sent to an identity")]
    IdentityNotPreserved(String),
    #[error("domain or codomain of `{0}` is not preserved")]
    DomCodNotPreserved(String),
    #[error("composite {g} . {f} is not preserved")]
    CompositionNotPreserved { g: String, f: String },
    #[error("cannot compose: target of `{first}` is not the source of `{second}`")]
    SourceTargetMismatch { first: String, second: String },
}

/// Raw functor data: pairs of ids, source and target named by category.
#[derive(Debug, Clone, PartialEq, Eq, Default)]
pub struct FunctorPresentation {
    pub name: String,
    pub source: String,
    pub target: String,
    pub objects: Vec<(String, String)>,
    pub arrows: Vec<(String, String)>,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct FinFunctor {
    name: String,
    source: Arc<FinCat>,
    target: Arc<FinCat>,
    obj_map: Vec<ObjId>,
    mor_map: Vec<MorId>,
}

impl FinFunctor {
    /// Checks the functor laws exhaustively.
    pub fn new(
        name: impl Into<String>,
        source: Arc<FinCat>,
        target: Arc<FinCat>,
        obj_map: Vec<ObjId>,
        mor_map: Vec<MorId>,
    ) -> Result<FinFunctor, FunctorError> {
        assert_eq!(obj_map.len(), source.num_objects(), "object map has wrong length");
        assert_eq!(mor_map.len(), source.num_morphisms(), "morphism map has wrong length");
        let f = FinFunctor { name: name.into(), source, target, obj_map, mor_map };
        f.check_laws()?;
        Ok(f)
    }

    pub fn from_presentation(
        p: &FunctorPresentation,
        source: Arc<FinCat>,
        target: Arc<FinCat>,
    ) -> Result<FinFunctor, FunctorError> {
        let mut objs: HashMap<ObjId, ObjId> = HashMap::new();
        for (a, b) in &p.objects {
            let x = source.object(a).ok_or_else(|| FunctorError::UnknownObject(a.clone()))?;
            let y = target.object(b).ok_or_else(|| FunctorError::UnknownObject(b.clone()))?;
            if objs.insert(x, y).is_some() {
                return Err(FunctorError::DuplicateMapping(a.clone()));
            }
        }
        let mut mors: HashMap<MorId, MorId> = HashMap::new();
        for (a, b) in &p.arrows {
            let m = source.morphism(a).ok_or_else(|| FunctorError::UnknownMorphism(a.clone()))?;
            let n = target.morphism(b).ok_or_else(|| FunctorError::UnknownMorphism(b.clone()))?;
            if mors.insert(m, n).is_some() {
                return Err(FunctorError::DuplicateMapping(a.clone()));
            }
        }
        let mut obj_map = Vec::with_capacity(source.num_objects());
        for x in source.objects() {
            obj_map.push(*objs.get(&x).ok_or_else(|| FunctorError::UnmappedObject(source.obj_name(x).into()))?);
        }
        // identities may be omitted
        for x in source.objects() {
            mors.entry(source.identity(x)).or_insert_with(|| target.identity(obj_map[x.0]));
        }
        let mut mor_map = Vec::with_capacity(source.num_morphisms());
        for m in source.morphisms() {
            mor_map.push(*mors.get(&m).ok_or_else(|| FunctorError::UnmappedMorphism(source.mor_name(m).into()))?);
        }
        FinFunctor::new(p.name.clone(), source, target, obj_map, mor_map)
    }

    /// Canonical presentation; identity entries are omitted.
    pub fn presentation(&self) -> FunctorPresentation {
        let (s, t) = (&self.source, &self.target);
        FunctorPresentation {
            name: self.name.clone(),
            source: s.name().to_string(),
            target: t.name().to_string(),
            objects: s.objects().map(|x| (s.obj_name(x).to_string(), t.obj_name(self.obj(x)).to_string())).collect(),
            arrows: s
                .morphisms()
                .filter(|&m| !s.is_identity(m))
                .map(|m| (s.mor_name(m).to_string(), t.mor_name(self.mor(m)).to_string()))
                .collect(),
        }
    }

    fn check_laws(&self) -> Result<(), FunctorError> {
        let (s, t) = (&*self.source, &*self.target);
        for m in s.morphisms() {
            let n = self.mor(m);
            if t.dom(n) != self.obj(s.dom(m)) || t.cod(n) != self.obj(s.cod(m)) {
                return Err(FunctorError::DomCodNotPreserved(s.mor_name(m).into()));
            }
        }
        for x in s.objects() {
            if self.mor(s.identity(x)) != t.identity(self.obj(x)) {
                return Err(FunctorError::IdentityNotPreserved(s.obj_name(x).into()));
            }
        }
        for g in s.morphisms() {
            for f in s.morphisms() {
                if let Some(gf) = s.compose(g, f) {
                    if t.compose(self.mor(g), self.mor(f)) != Some(self.mor(gf)) {
                        return Err(FunctorError::CompositionNotPreserved {
                            g: s.mor_name(g).into(),
                            f: s.mor_name(f).into(),
                        });
                    }
                }
            }
        }
        Ok(())
    }

    pub fn identity(c: Arc<FinCat>) -> FinFunctor {
        let obj_map = c.objects().collect();
        let mor_map = c.morphisms().collect();
        FinFunctor { name: format!("id_{}", c.name()), source: c.clone(), target: c, obj_map, mor_map }
    }

    /// `g ∘ f`.
    pub fn compose(g: &FinFunctor, f: &FinFunctor) -> Result<FinFunctor, FunctorError> {
        if *f.target != *g.source {
            return Err(FunctorError::SourceTargetMismatch { first: f.name.clone(), second: g.name.clone() });
        }
        let obj_map = f.obj_map.iter().map(|&x| g.obj(x)).collect();
        let mor_map = f.mor_map.iter().map(|&m| g.mor(m)).collect();
        FinFunctor::new(format!("{}_o_{}", g.name, f.name), f.source.clone(), g.target.clone(), obj_map, mor_map)
    }

    pub fn name(&self) -> &str {
        &self.name
    }

    pub fn with_name(mut self, name: impl Into<String>) -> Self {
        self.name = name.into();
        self
    }

    pub fn source(&self) -> &Arc<FinCat> {
        &self.source
    }

    pub fn target(&self) -> &Arc<FinCat> {
        &self.target
    }

    pub fn obj(&self, x: ObjId) -> ObjId {
        self.obj_map[x.0]
    }

    pub fn mor(&self, m: MorId) -> MorId {
        self.mor_map[m.0]
    }

    pub fn obj_map(&self) -> &[ObjId] {
        &self.obj_map
    }

    pub fn mor_map(&self) -> &[MorId] {
        &self.mor_map
    }

    pub fn is_bijective(&self) -> bool {
        is_permutation(self.obj_map.iter().map(|x| x.0), self.target.num_objects())
            && is_permutation(self.mor_map.iter().map(|m| m.0), self.target.num_morphisms())
    }

    /// The inverse functor of a bijective functor.
    pub fn inverse(&self) -> Option<FinFunctor> {
        if !self.is_bijective() {
            return None;
        }
        let mut obj_map = vec![ObjId(0); self.obj_map.len()];
        for (i, y) in self.obj_map.iter().enumerate() {
            obj_map[y.0] = ObjId(i);
        }
        let mut mor_map = vec![MorId(0); self.mor_map.len()];
        for (i, n) in self.mor_map.iter().enumerate() {
            mor_map[n.0] = MorId(i);
        }
        FinFunctor::new(
            format!("{}_inv", self.name),
            self.target.clone(),
            self.source.clone(),
            obj_map,
            mor_map,
        )
        .ok()
    }

    /// Re-targets onto an equal category value (e.g. a freshly rebuilt copy).
    pub fn retarget(&self, target: Arc<FinCat>) -> Option<FinFunctor> {
        if *target != *self.target {
            return None;
        }
        Some(FinFunctor { target, ..self.clone() })
    }
}

fn is_permutation(it: impl Iterator<Item = usize>, n: usize) -> bool {
    let mut seen = vec![false; n];
    let mut count = 0;
    for i in it {
        if i >= n || seen[i] {
            return false;
        }
        seen[i] = true;
        count += 1;
    }
    count == n
}

/// Every composable triple `(g, f, g ∘ f)` of a category, indexed by member.
pub(crate) struct CompositionIndex {
    pub triples: Vec<(MorId, MorId, MorId)>,
    pub by_member: Vec<Vec<usize>>,
}

impl CompositionIndex {
    pub fn new(c: &FinCat) -> Self {
        let mut triples = Vec::new();
        let mut by_member = vec![Vec::new(); c.num_morphisms()];
        for g in c.morphisms() {
            for f in c.morphisms() {
                if let Some(h) = c.compose(g, f) {
                    let k = triples.len();
                    triples.push((g, f, h));
                    by_member[g.0].push(k);
                    if f != g {
                        by_member[f.0].push(k);
                    }
                    if h != g && h != f {
                        by_member[h.0].push(k);
                    }
                }
            }
        }
        CompositionIndex { triples, by_member }
    }

    /// Checks every fully assigned triple touching `m`.
    pub fn consistent(&self, m: MorId, map: &[Option<MorId>], target: &FinCat) -> bool {
        self.by_member[m.0].iter().all(|&k| {
            let (g, f, h) = self.triples[k];
            match (map[g.0], map[f.0], map[h.0]) {
                (Some(a), Some(b), Some(c)) => target.compose(a, b) == Some(c),
                _ => true,
            }
        })
    }
}

/// Enumerates functors `source → target` in a fixed order, stopping after
/// `limit` results.
pub fn enumerate_functors(source: &Arc<FinCat>, target: &Arc<FinCat>, limit: usize) -> Vec<FinFunctor> {
    let s = &**source;
    let t = &**target;
    let idx = CompositionIndex::new(s);
    let order: Vec<MorId> = s.morphisms().filter(|&m| !s.is_identity(m)).collect();
    let mut out = Vec::new();
    let mut obj_map = vec![ObjId(0); s.num_objects()];
    if t.num_objects() == 0 && s.num_objects() > 0 {
        return out;
    }

    fn assign_morphisms(
        k: usize,
        order: &[MorId],
        s: &FinCat,
        t: &FinCat,
        idx: &CompositionIndex,
        obj_map: &[ObjId],
        map: &mut Vec<Option<MorId>>,
        out: &mut Vec<Vec<MorId>>,
        limit: usize,
    ) {
        if out.len() >= limit {
            return;
        }
        if k == order.len() {
            out.push(map.iter().map(|m| m.expect("assigned")).collect());
            return;
        }
        let m = order[k];
        for &n in t.hom(obj_map[s.dom(m).0], obj_map[s.cod(m).0]) {
            map[m.0] = Some(n);
            if idx.consistent(m, map, t) {
                assign_morphisms(k + 1, order, s, t, idx, obj_map, map, out, limit);
            }
            map[m.0] = None;
        }
    }

    let nobj = s.num_objects();
    let base = t.num_objects();
    let total = base.checked_pow(nobj as u32).unwrap_or(usize::MAX);
    for code in 0..total {
        if out.len() >= limit {
            break;
        }
        let mut c = code;
        for x in (0..nobj).rev() {
            obj_map[x] = ObjId(c % base);
            c /= base;
        }
        let mut map: Vec<Option<MorId>> = vec![None; s.num_morphisms()];
        for x in s.objects() {
            map[s.identity(x).0] = Some(t.identity(obj_map[x.0]));
        }
        if !s.objects().all(|x| idx.consistent(s.identity(x), &map, t)) {
            continue;
        }
        let mut found = Vec::new();
        assign_morphisms(0, &order, s, t, &idx, &obj_map, &mut map, &mut found, limit - out.len());
        for mor_map in found {
            let n = out.len();
            let f = FinFunctor::new(format!("F{n}"), source.clone(), target.clone(), obj_map.clone(), mor_map)
                .expect("enumeration only yields lawful maps");
            out.push(f);
        }
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::samples;

    fn pres(name: &str, s: &FinCat, t: &FinCat, objs: &[(&str, &str)], arrows: &[(&str, &str)]) -> FunctorPresentation {
        FunctorPresentation {
            name: name.into(),
            source: s.name().into(),
            target: t.name().into(),
            objects: objs.iter().map(|(a, b)| (a.to_string(), b.to_string())).collect(),
            arrows: arrows.iter().map(|(a, b)| (a.to_string(), b.to_string())).collect(),
        }
    }

    #[test]
    fn identity_functor_validates() {
        for c in samples::all() {
            let c = Arc::new(c);
            let id = FinFunctor::identity(c.clone());
            let again = FinFunctor::from_presentation(&id.presentation(), c.clone(), c).unwrap();
            assert_eq!(again.obj_map(), id.obj_map());
            assert_eq!(again.mor_map(), id.mor_map());
        }
    }

    #[test]
    fn collapse_to_terminal() {
        let a = Arc::new(samples::walking_arrow());
        let t = Arc::new(samples::terminal());
        let p = pres("collapse", &a, &t, &[("X", "*"), ("Y", "*")], &[("f", "id_*")]);
        FinFunctor::from_presentation(&p, a, t).unwrap();
    }

    #[test]
    fn z2_constant_functor_is_valid_but_s_to_identity_swap_is_not() {
        let z = Arc::new(samples::z2());
        // s ↦ id: constant functor, lawful
        let p = pres("const", &z, &z, &[("*", "*")], &[("s", "id_*")]);
        FinFunctor::from_presentation(&p, z.clone(), z.clone()).unwrap();
        // e ↦ s: identity not preserved
        let p = pres("bad", &z, &z, &[("*", "*")], &[("s", "s"), ("id_*", "s")]);
        assert_eq!(
            FinFunctor::from_presentation(&p, z.clone(), z),
            Err(FunctorError::IdentityNotPreserved("*".into()))
        );
    }

    #[test]
    fn composition_not_preserved() {
        let z3 = Arc::new(samples::z3());
        // r ↦ r, r2 ↦ r breaks r . r = r2
        let p = pres("bad", &z3, &z3, &[("*", "*")], &[("r", "r"), ("r2", "r")]);
        assert!(matches!(
            FinFunctor::from_presentation(&p, z3.clone(), z3),
            Err(FunctorError::CompositionNotPreserved { .. })
        ));
    }

    #[test]
    fn unmapped_and_domcod_errors() {
        let a = Arc::new(samples::walking_arrow());
        let p = pres("u", &a, &a, &[("X", "X")], &[]);
        assert_eq!(
            FinFunctor::from_presentation(&p, a.clone(), a.clone()),
            Err(FunctorError::UnmappedObject("Y".into()))
        );
        let p = pres("u", &a, &a, &[("X", "X"), ("Y", "Y")], &[]);
        assert_eq!(
            FinFunctor::from_presentation(&p, a.clone(), a.clone()),
            Err(FunctorError::UnmappedMorphism("f".into()))
        );
        let p = pres("u", &a, &a, &[("X", "Y"), ("Y", "X")], &[("f", "f")]);
        assert_eq!(FinFunctor::from_presentation(&p, a.clone(), a), Err(FunctorError::DomCodNotPreserved("f".into())));
    }

    #[test]
    fn compose_with_identity_is_neutral() {
        let a = Arc::new(samples::walking_arrow());
        let t = Arc::new(samples::terminal());
        let fs = enumerate_functors(&a, &a, 100);
        // endofunctors of X -> Y: identity and the two constants
        assert_eq!(fs.len(), 3);
        let collapse = enumerate_functors(&a, &t, 10).pop().unwrap();
        for f in &fs {
            let id = FinFunctor::identity(a.clone());
            assert_eq!(FinFunctor::compose(&id, f).unwrap().mor_map(), f.mor_map());
            assert_eq!(FinFunctor::compose(f, &id).unwrap().mor_map(), f.mor_map());
            assert_eq!(FinFunctor::compose(&collapse, f).unwrap().mor_map(), collapse.mor_map());
        }
        assert!(matches!(FinFunctor::compose(&fs[0], &collapse), Err(FunctorError::SourceTargetMismatch { .. })));
    }

    #[test]
    fn enumeration_counts_group_homomorphisms() {
        // Hom(Z_m, Z_n) has gcd(m, n) elements
        for (m, n, expect) in [(2, 2, 2), (3, 2, 1), (2, 4, 2), (4, 2, 2), (3, 3, 3)] {
            let a = Arc::new(samples::cyclic(m));
            let b = Arc::new(samples::cyclic(n));
            assert_eq!(enumerate_functors(&a, &b, 1000).len(), expect, "Z{m} -> Z{n}");
        }
    }

    #[test]
    fn inverse_of_bijection() {
        let s3 = Arc::new(samples::s3());
        for f in enumerate_functors(&s3, &s3, 100) {
            if let Some(g) = f.inverse() {
                let gf = FinFunctor::compose(&g, &f).unwrap();
                assert_eq!(gf.mor_map(), FinFunctor::identity(s3.clone()).mor_map());
            }
        }
    }
}
