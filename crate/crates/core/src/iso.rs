//! Isomorphisms of finite categories and a backtracking search for them.

use std::sync::Arc;

use crate::fincat::{FinCat, MorId, ObjId};
use crate::functor::{CompositionIndex, FinFunctor, FunctorError};

/// Default node budget for [`find_isomorphism`]; comfortably covers
/// categories up to 8 objects and 48 morphisms.
pub const DEFAULT_BUDGET: u64 = 2_000_000;

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum IsoError {
    #[error(transparent)]
    Functor(#[from] FunctorError),
    #[error("`{0}` is not inverse to `{1}`")]
    NotInverse(String, String),
}

/// A pair of mutually inverse functors.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct IsoWitness {
    pub forward: FinFunctor,
    pub backward: FinFunctor,
}

impl IsoWitness {
    pub fn new(forward: FinFunctor, backward: FinFunctor) -> Result<IsoWitness, IsoError> {
        let w = IsoWitness { forward, backward };
        w.validate()?;
        Ok(w)
    }

    /// Builds the witness from a bijective functor.
    pub fn from_bijection(forward: FinFunctor) -> Option<IsoWitness> {
        let backward = forward.inverse()?;
        IsoWitness::new(forward, backward).ok()
    }

    /// Checks both composites are identities.
    pub fn validate(&self) -> Result<(), IsoError> {
        let there_and_back = FinFunctor::compose(&self.backward, &self.forward)?;
        let back_and_there = FinFunctor::compose(&self.forward, &self.backward)?;
        let is_id = |f: &FinFunctor| {
            f.obj_map().iter().enumerate().all(|(i, x)| x.0 == i) && f.mor_map().iter().enumerate().all(|(i, m)| m.0 == i)
        };
        if !is_id(&there_and_back) || !is_id(&back_and_there) {
            return Err(IsoError::NotInverse(self.forward.name().into(), self.backward.name().into()));
        }
        Ok(())
    }

    pub fn source(&self) -> &Arc<FinCat> {
        self.forward.source()
    }

    pub fn target(&self) -> &Arc<FinCat> {
        self.forward.target()
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum IsoOutcome {
    Found(IsoWitness),
    NotIsomorphic,
    BudgetExhausted,
}

impl IsoOutcome {
    pub fn witness(self) -> Option<IsoWitness> {
        match self {
            IsoOutcome::Found(w) => Some(w),
            _ => None,
        }
    }
}

type ObjFilter<'a> = dyn Fn(ObjId, ObjId) -> bool + 'a;
type MorFilter<'a> = dyn Fn(MorId, MorId) -> bool + 'a;

/// Extra conditions on the isomorphism sought, e.g. commuting with
/// projections onto a common base.
#[derive(Default)]
pub struct IsoConstraints<'a> {
    pub objects: Option<Box<ObjFilter<'a>>>,
    pub morphisms: Option<Box<MorFilter<'a>>>,
}

pub fn find_isomorphism(c: &Arc<FinCat>, d: &Arc<FinCat>, budget: u64) -> IsoOutcome {
    find_isomorphism_with(c, d, budget, &IsoConstraints::default())
}

/// Searches for an isomorphism `c → d` whose object and morphism
/// assignments all satisfy `constraints`.
pub fn find_isomorphism_with(c: &Arc<FinCat>, d: &Arc<FinCat>, budget: u64, constraints: &IsoConstraints) -> IsoOutcome {
    if c.num_objects() != d.num_objects() || c.num_morphisms() != d.num_morphisms() {
        return IsoOutcome::NotIsomorphic;
    }
    let pc: Vec<Profile> = c.objects().map(|x| Profile::of(c, x)).collect();
    let pd: Vec<Profile> = d.objects().map(|x| Profile::of(d, x)).collect();
    {
        let (mut a, mut b) = (pc.clone(), pd.clone());
        a.sort();
        b.sort();
        if a != b {
            return IsoOutcome::NotIsomorphic;
        }
    }
    let obj_ok = |x: ObjId, y: ObjId| constraints.objects.as_ref().is_none_or(|f| f(x, y));
    let candidates: Vec<Vec<ObjId>> =
        c.objects().map(|x| d.objects().filter(|&y| pc[x.0] == pd[y.0] && obj_ok(x, y)).collect()).collect();
    let mut order: Vec<ObjId> = c.objects().collect();
    order.sort_by_key(|x| candidates[x.0].len());

    let mut search = Search {
        c,
        d,
        constraints,
        idx: CompositionIndex::new(c),
        nodes: 0,
        budget,
        exhausted: false,
        obj_map: vec![None; c.num_objects()],
        obj_used: vec![false; d.num_objects()],
        mor_map: vec![None; c.num_morphisms()],
        mor_used: vec![false; d.num_morphisms()],
        mor_order: Vec::new(),
    };
    if search.objects(0, &order, &candidates) {
        let obj_map: Vec<ObjId> = search.obj_map.iter().map(|x| x.expect("assigned")).collect();
        let mor_map: Vec<MorId> = search.mor_map.iter().map(|m| m.expect("assigned")).collect();
        let forward = FinFunctor::new(format!("iso_{}_{}", c.name(), d.name()), c.clone(), d.clone(), obj_map, mor_map)
            .expect("search only yields lawful bijections");
        return match IsoWitness::from_bijection(forward) {
            Some(w) => IsoOutcome::Found(w),
            None => unreachable!("bijective functor between finite categories has an inverse functor"),
        };
    }
    if search.exhausted {
        IsoOutcome::BudgetExhausted
    } else {
        IsoOutcome::NotIsomorphic
    }
}

/// Per-object invariant used to prune object bijections.
#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord)]
struct Profile {
    endo: usize,
    out: Vec<usize>,
    inc: Vec<usize>,
}

impl Profile {
    fn of(c: &FinCat, x: ObjId) -> Profile {
        let mut out: Vec<usize> = c.objects().map(|y| c.hom(x, y).len()).collect();
        let mut inc: Vec<usize> = c.objects().map(|y| c.hom(y, x).len()).collect();
        out.sort_unstable();
        inc.sort_unstable();
        Profile { endo: c.hom(x, x).len(), out, inc }
    }
}

struct Search<'a, 'b> {
    c: &'a FinCat,
    d: &'a FinCat,
    constraints: &'a IsoConstraints<'b>,
    idx: CompositionIndex,
    nodes: u64,
    budget: u64,
    exhausted: bool,
    obj_map: Vec<Option<ObjId>>,
    obj_used: Vec<bool>,
    mor_map: Vec<Option<MorId>>,
    mor_used: Vec<bool>,
    mor_order: Vec<MorId>,
}

impl Search<'_, '_> {
    fn tick(&mut self) -> bool {
        self.nodes += 1;
        if self.nodes > self.budget {
            self.exhausted = true;
        }
        !self.exhausted
    }

    fn mor_ok(&self, m: MorId, n: MorId) -> bool {
        self.constraints.morphisms.as_ref().is_none_or(|f| f(m, n))
    }

    fn objects(&mut self, k: usize, order: &[ObjId], candidates: &[Vec<ObjId>]) -> bool {
        if k == order.len() {
            return self.start_morphisms();
        }
        let x = order[k];
        for &y in &candidates[x.0] {
            if self.obj_used[y.0] || !self.tick() {
                if self.exhausted {
                    return false;
                }
                continue;
            }
            let consistent = order[..k].iter().all(|&z| {
                let w = self.obj_map[z.0].expect("assigned");
                self.c.hom(x, z).len() == self.d.hom(y, w).len() && self.c.hom(z, x).len() == self.d.hom(w, y).len()
            });
            if !consistent {
                continue;
            }
            self.obj_map[x.0] = Some(y);
            self.obj_used[y.0] = true;
            if self.objects(k + 1, order, candidates) {
                return true;
            }
            self.obj_map[x.0] = None;
            self.obj_used[y.0] = false;
            if self.exhausted {
                return false;
            }
        }
        false
    }

    fn start_morphisms(&mut self) -> bool {
        let (c, d) = (self.c, self.d);
        self.mor_map.iter_mut().for_each(|m| *m = None);
        self.mor_used.iter_mut().for_each(|u| *u = false);
        for x in c.objects() {
            let (m, n) = (c.identity(x), d.identity(self.obj_map[x.0].expect("assigned")));
            if !self.mor_ok(m, n) {
                return false;
            }
            self.mor_map[m.0] = Some(n);
            self.mor_used[n.0] = true;
        }
        if !c.objects().all(|x| self.idx.consistent(c.identity(x), &self.mor_map, d)) {
            return false;
        }
        // hom-set by hom-set, in presentation order
        let mut order = Vec::new();
        for x in c.objects() {
            for y in c.objects() {
                order.extend(c.hom(x, y).iter().copied().filter(|&m| !c.is_identity(m)));
            }
        }
        self.mor_order = order;
        self.morphisms(0)
    }

    fn morphisms(&mut self, k: usize) -> bool {
        if k == self.mor_order.len() {
            return true;
        }
        let (c, d) = (self.c, self.d);
        let m = self.mor_order[k];
        let (x, y) = (self.obj_map[c.dom(m).0].expect("assigned"), self.obj_map[c.cod(m).0].expect("assigned"));
        for &n in d.hom(x, y) {
            if self.mor_used[n.0] || !self.mor_ok(m, n) {
                continue;
            }
            if !self.tick() {
                return false;
            }
            self.mor_map[m.0] = Some(n);
            self.mor_used[n.0] = true;
            if self.idx.consistent(m, &self.mor_map, d) && self.morphisms(k + 1) {
                return true;
            }
            self.mor_map[m.0] = None;
            self.mor_used[n.0] = false;
            if self.exhausted {
                return false;
            }
        }
        false
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::samples;

    #[test]
    fn self_isomorphism() {
        for c in samples::all() {
            let c = Arc::new(c);
            let w = find_isomorphism(&c, &c, DEFAULT_BUDGET).witness().expect("C ≅ C");
            w.validate().unwrap();
        }
    }

    #[test]
    fn walking_arrow_is_self_dual_by_swapping_ends() {
        let a = Arc::new(samples::walking_arrow());
        let op = Arc::new(a.opposite());
        let w = find_isomorphism(&a, &op, DEFAULT_BUDGET).witness().unwrap();
        let x = a.object("X").unwrap();
        assert_eq!(op.obj_name(w.forward.obj(x)), "Y");
    }

    #[test]
    fn cardinality_mismatch() {
        let a = Arc::new(samples::walking_arrow());
        let t = samples::terminal();
        let tt = Arc::new(FinCat::coproduct("TT", &[&t, &t]));
        assert_eq!(find_isomorphism(&a, &tt, DEFAULT_BUDGET), IsoOutcome::NotIsomorphic);
    }

    #[test]
    fn z4_is_not_klein() {
        let z4 = Arc::new(samples::cyclic(4));
        let k = Arc::new(samples::z2().product(&samples::z2()));
        assert_eq!(find_isomorphism(&z4, &k, DEFAULT_BUDGET), IsoOutcome::NotIsomorphic);
    }

    #[test]
    fn tiny_budget_is_exhausted() {
        let s3 = Arc::new(samples::s3());
        assert_eq!(find_isomorphism(&s3, &s3, 2), IsoOutcome::BudgetExhausted);
    }

    #[test]
    fn constraints_can_rule_out_every_bijection() {
        let a = Arc::new(samples::walking_arrow());
        let op = Arc::new(a.opposite());
        let same_name = IsoConstraints {
            objects: Some(Box::new(|x: ObjId, y: ObjId| a.obj_name(x) == op.obj_name(y))),
            morphisms: None,
        };
        assert_eq!(find_isomorphism_with(&a, &op, DEFAULT_BUDGET, &same_name), IsoOutcome::NotIsomorphic);
    }
}
