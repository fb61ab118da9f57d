//! Strict indexed families of categories and their Grothendieck
//! construction.

use std::collections::{BTreeMap, HashMap};
use std::sync::Arc;

use super::{Assembly, ConstructedCategory, ConstructionError, Piece, Provenance};
use crate::fibration::{Cleavage, LiftKind};
use crate::fincat::{CatBuilder, FinCat, MorId, ObjId};
use crate::finset::ConcreteStructure;
use crate::functor::FinFunctor;
use crate::iso::IsoWitness;

/// A strict functor `B^op → Cat`: a fibre over each base object and, for
/// each `u: I → J`, a pullback functor `fibre(J) → fibre(I)`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct IndexedFamily {
    name: String,
    base: Arc<FinCat>,
    fibres: Vec<Arc<FinCat>>,
    pulls: Vec<FinFunctor>,
}

impl IndexedFamily {
    pub fn new(
        name: impl Into<String>,
        base: Arc<FinCat>,
        fibres: Vec<Arc<FinCat>>,
        pulls: Vec<FinFunctor>,
    ) -> Result<Self, ConstructionError> {
        assert_eq!(fibres.len(), base.num_objects());
        assert_eq!(pulls.len(), base.num_morphisms());
        for u in base.morphisms() {
            let p = &pulls[u.0];
            if **p.source() != *fibres[base.cod(u).0] || **p.target() != *fibres[base.dom(u).0] {
                return Err(ConstructionError::PullMismatch(base.mor_name(u).into()));
            }
        }
        let fam = IndexedFamily { name: name.into(), base, fibres, pulls };
        fam.check_strict()?;
        Ok(fam)
    }

    /// Resolves fibres and pulls by base id. Pulls along identities may be
    /// omitted.
    pub fn from_parts(
        name: impl Into<String>,
        base: Arc<FinCat>,
        fibres: &[(String, Arc<FinCat>)],
        pulls: &[(String, FinFunctor)],
    ) -> Result<Self, ConstructionError> {
        let unknown_obj = |o: &str| ConstructionError::Category(crate::CategoryError::UnknownObject(o.into()));
        let unknown_mor = |m: &str| ConstructionError::Category(crate::CategoryError::UnknownMorphism(m.into()));
        let mut fs: Vec<Option<Arc<FinCat>>> = vec![None; base.num_objects()];
        for (o, c) in fibres {
            let x = base.object(o).ok_or_else(|| unknown_obj(o))?;
            fs[x.0] = Some(c.clone());
        }
        let fibres: Vec<Arc<FinCat>> = fs
            .into_iter()
            .enumerate()
            .map(|(i, f)| f.ok_or_else(|| ConstructionError::MissingFibre(base.obj_name(ObjId(i)).into())))
            .collect::<Result<_, _>>()?;
        let mut ps: Vec<Option<FinFunctor>> = vec![None; base.num_morphisms()];
        for (m, f) in pulls {
            let u = base.morphism(m).ok_or_else(|| unknown_mor(m))?;
            ps[u.0] = Some(f.clone());
        }
        let pulls: Vec<FinFunctor> = ps
            .into_iter()
            .enumerate()
            .map(|(i, p)| {
                let u = MorId(i);
                match p {
                    Some(p) => Ok(p),
                    None if base.is_identity(u) => Ok(FinFunctor::identity(fibres[base.dom(u).0].clone())),
                    None => Err(ConstructionError::MissingPull(base.mor_name(u).into())),
                }
            })
            .collect::<Result<_, _>>()?;
        IndexedFamily::new(name, base, fibres, pulls)
    }

    fn check_strict(&self) -> Result<(), ConstructionError> {
        let b = &*self.base;
        let not_strict = |v: MorId, u: MorId| ConstructionError::NotStrict {
            v: b.mor_name(v).into(),
            u: b.mor_name(u).into(),
        };
        for x in b.objects() {
            let id = b.identity(x);
            let p = &self.pulls[id.0];
            let trivial = p.obj_map().iter().enumerate().all(|(i, y)| y.0 == i)
                && p.mor_map().iter().enumerate().all(|(i, m)| m.0 == i);
            if !trivial {
                return Err(not_strict(id, id));
            }
        }
        for v in b.morphisms() {
            for u in b.morphisms() {
                let Some(vu) = b.compose(v, u) else { continue };
                let (pv, pu, pvu) = (&self.pulls[v.0], &self.pulls[u.0], &self.pulls[vu.0]);
                let fibre = &self.fibres[b.cod(v).0];
                let objs_ok = fibre.objects().all(|z| pvu.obj(z) == pu.obj(pv.obj(z)));
                let mors_ok = fibre.morphisms().all(|m| pvu.mor(m) == pu.mor(pv.mor(m)));
                if !objs_ok || !mors_ok {
                    return Err(not_strict(v, u));
                }
            }
        }
        Ok(())
    }

    pub fn name(&self) -> &str {
        &self.name
    }

    pub fn base(&self) -> &Arc<FinCat> {
        &self.base
    }

    pub fn fibre(&self, x: ObjId) -> &Arc<FinCat> {
        &self.fibres[x.0]
    }

    pub fn pull(&self, u: MorId) -> &FinFunctor {
        &self.pulls[u.0]
    }
}

/// Each object of `D` as a one-object category, each morphism as the
/// unique functor between them.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct TrivialCategorification {
    pub source: Arc<FinCat>,
    pub fibres: Vec<Arc<FinCat>>,
    pub functors: Vec<FinFunctor>,
}

pub fn trivial_categorify(d: &Arc<FinCat>) -> TrivialCategorification {
    let fibres: Vec<Arc<FinCat>> = d
        .objects()
        .map(|x| {
            let mut b = CatBuilder::new(format!("I_{}", d.obj_name(x)));
            let o = b.add_object(d.obj_name(x));
            let m = b.add_morphism(d.mor_name(d.identity(x)), o, o);
            b.set_identity(o, m);
            Arc::new(b.build().expect("one-object category"))
        })
        .collect();
    let functors = d
        .morphisms()
        .map(|m| {
            FinFunctor::new(
                format!("I_{}", d.mor_name(m)),
                fibres[d.dom(m).0].clone(),
                fibres[d.cod(m).0].clone(),
                vec![ObjId(0)],
                vec![MorId(0)],
            )
            .expect("functor between one-object categories")
        })
        .collect();
    TrivialCategorification { source: d.clone(), fibres, functors }
}

/// Discrete category on a carrier; identities are named by their element.
fn discrete_fibre(name: String, elements: &[String]) -> Arc<FinCat> {
    Arc::new(FinCat::discrete_with(name, elements, |e| e.to_string()).expect("carrier elements are distinct"))
}

fn discrete_functor(name: String, source: &Arc<FinCat>, target: &Arc<FinCat>, table: &[usize]) -> FinFunctor {
    // discrete_with adds the identity of object i as morphism i
    FinFunctor::new(
        name,
        source.clone(),
        target.clone(),
        table.iter().map(|&i| ObjId(i)).collect(),
        table.iter().map(|&i| MorId(i)).collect(),
    )
    .expect("functions are functors between discrete categories")
}

pub(crate) fn check_over(f: &FinFunctor, u: &ConcreteStructure) -> Result<(), ConstructionError> {
    if **u.over() != **f.target() {
        return Err(ConstructionError::UnderlyingMismatch {
            structure: u.name().into(),
            over: u.over().name().into(),
            expected: f.target().name().into(),
        });
    }
    Ok(())
}

/// `I ∘ F̄` over `C^op`: fibre over `X` is `I(FX)`, pull along `f°` is
/// `I(Ff)`.
pub fn abstract_right_family(f: &FinFunctor) -> Result<IndexedFamily, ConstructionError> {
    let c = f.source();
    let t = trivial_categorify(f.target());
    let fibres = c.objects().map(|x| t.fibres[f.obj(x).0].clone()).collect();
    let pulls = c.morphisms().map(|m| t.functors[f.mor(m).0].clone()).collect();
    IndexedFamily::new(format!("I_{}_bar", f.name()), Arc::new(c.opposite()), fibres, pulls)
}

/// `U ∘ F̄` over `C^op` with discrete fibres.
pub fn concrete_right_family(f: &FinFunctor, u: &ConcreteStructure) -> Result<IndexedFamily, ConstructionError> {
    check_over(f, u)?;
    let c = f.source();
    let fibres: Vec<Arc<FinCat>> = c
        .objects()
        .map(|x| discrete_fibre(format!("U_{}", c.obj_name(x)), u.carrier(f.obj(x)).elements()))
        .collect();
    let pulls = c
        .morphisms()
        .map(|m| {
            let (x, y) = (c.dom(m), c.cod(m));
            discrete_functor(format!("U_{}", c.mor_name(m)), &fibres[x.0], &fibres[y.0], u.action(f.mor(m)).table())
        })
        .collect();
    IndexedFamily::new(format!("U_{}_bar", f.name()), Arc::new(c.opposite()), fibres, pulls)
}

/// The contravariant functor `F̄ = F ∘ w` for a witness `w: C ≅ C^op`,
/// trivially categorified (`u = None`) or composed with `U`, indexed over
/// `C` itself.
pub fn selfdual_family(
    f: &FinFunctor,
    w: &IsoWitness,
    u: Option<&ConcreteStructure>,
) -> Result<IndexedFamily, ConstructionError> {
    let c = f.source();
    let fwd = &w.forward;
    if **fwd.source() != **c || **fwd.target() != c.opposite() || w.validate().is_err() {
        return Err(ConstructionError::NoSelfDualWitness(fwd.name().into()));
    }
    // F̄X = F(wX); for g: X → Y with w(g) = h°, F̄g = F(h): F̄Y → F̄X.
    let fbar_obj = |x: ObjId| f.obj(fwd.obj(x));
    let fbar_mor = |g: MorId| f.mor(fwd.mor(g));
    let (fibres, pulls): (Vec<Arc<FinCat>>, Vec<FinFunctor>) = match u {
        None => {
            let t = trivial_categorify(f.target());
            (
                c.objects().map(|x| t.fibres[fbar_obj(x).0].clone()).collect(),
                c.morphisms().map(|g| t.functors[fbar_mor(g).0].clone()).collect(),
            )
        }
        Some(u) => {
            check_over(f, u)?;
            let fibres: Vec<Arc<FinCat>> = c
                .objects()
                .map(|x| discrete_fibre(format!("U_{}", c.obj_name(x)), u.carrier(fbar_obj(x)).elements()))
                .collect();
            let pulls = c
                .morphisms()
                .map(|g| {
                    let (x, y) = (c.dom(g), c.cod(g));
                    let table = u.action(fbar_mor(g)).table();
                    discrete_functor(format!("U_{}_bar", c.mor_name(g)), &fibres[y.0], &fibres[x.0], table)
                })
                .collect();
            (fibres, pulls)
        }
    };
    IndexedFamily::new(format!("{}_bar", f.name()), c.clone(), fibres, pulls)
}

/// The strict Grothendieck construction with its canonical cleavage
/// `γ(u, (J,Y)) = (u, id_{u*Y})`.
pub fn grothendieck_strict(fam: &IndexedFamily) -> Result<(ConstructedCategory, Cleavage), ConstructionError> {
    grothendieck_as(fam, Provenance::Grothendieck, &format!("Int_{}", fam.name()))
}

pub(crate) fn grothendieck_as(
    fam: &IndexedFamily,
    provenance: Provenance,
    name: &str,
) -> Result<(ConstructedCategory, Cleavage), ConstructionError> {
    fam.check_strict()?;
    let b = &**fam.base();
    let mut asm = Assembly::new(name);
    let mut offset = Vec::with_capacity(b.num_objects());
    for i in b.objects() {
        offset.push(asm.objects.len());
        let fib = fam.fibre(i);
        for x in fib.objects() {
            asm.object(vec![b.obj_name(i).into(), fib.obj_name(x).into()], i);
        }
    }
    let obj = |i: ObjId, x: ObjId| offset[i.0] + x.0;

    // (u, f: X → u*Y, Y)
    let mut keys: Vec<(MorId, MorId, ObjId)> = Vec::new();
    let mut index: HashMap<(MorId, MorId, ObjId), usize> = HashMap::new();
    for u in b.morphisms() {
        let (i, j) = (b.dom(u), b.cod(u));
        let (fi, fj) = (fam.fibre(i), fam.fibre(j));
        let pull = fam.pull(u);
        for y in fj.objects() {
            let t = pull.obj(y);
            for x in fi.objects() {
                for &f in fi.hom(x, t) {
                    let k = asm.morphism(Piece {
                        label: vec![b.mor_name(u).into(), fi.mor_name(f).into()],
                        extra: fj.obj_name(y).into(),
                        dom: obj(i, x),
                        cod: obj(j, y),
                        over: u,
                    });
                    keys.push((u, f, y));
                    index.insert((u, f, y), k);
                }
            }
        }
    }

    let mut lifts = BTreeMap::new();
    for u in b.morphisms() {
        let (i, j) = (b.dom(u), b.cod(u));
        for y in fam.fibre(j).objects() {
            let id = fam.fibre(i).identity(fam.pull(u).obj(y));
            lifts.insert((u, ObjId(obj(j, y))), MorId(index[&(u, id, y)]));
        }
    }

    let identity = |x: usize| {
        let i = ObjId(offset.partition_point(|&o| o <= x) - 1);
        let local = ObjId(x - offset[i.0]);
        index[&(b.identity(i), fam.fibre(i).identity(local), local)]
    };
    let compose = |g: usize, f: usize| {
        let (v, gm, z) = keys[g];
        let (u, fm, _) = keys[f];
        let fi = fam.fibre(b.dom(u));
        let h = fi.compose(fam.pull(u).mor(gm), fm).expect("composable in the fibre");
        index[&(b.compose(v, u).expect("composable in the base"), h, z)]
    };
    let total = asm.finish(fam.base().clone(), provenance, identity, compose)?;
    Ok((total, Cleavage::new(LiftKind::Cartesian, lifts)))
}
