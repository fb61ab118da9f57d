//! Graph, action and self-dual categories of a functor.

use std::sync::Arc;

use super::family::{abstract_right_family, check_over, grothendieck_as, selfdual_family};
use super::{Assembly, ConstructedCategory, ConstructionError, Piece, Provenance};
use crate::fincat::{FinCat, MorId, ObjId};
use crate::finset::ConcreteStructure;
use crate::functor::FinFunctor;
use crate::iso::IsoWitness;

/// `(F,C,D)`: objects `(X,FX)`, morphisms `(f,Ff)`.
pub fn graph_category(f: &FinFunctor) -> Result<ConstructedCategory, ConstructionError> {
    let d = f.target();
    pair_category(f, Provenance::Graph, format!("Gr_{}", f.name()), |m| d.mor_name(f.mor(m)).to_string())
}

/// `𝒳 ⋊_F C`: objects `(X,FX)`, morphisms `(f,id_FY)`.
pub fn abstract_left_action(f: &FinFunctor) -> Result<ConstructedCategory, ConstructionError> {
    let (c, d) = (f.source(), f.target());
    pair_category(f, Provenance::AbstractLeft, format!("Left_{}", f.name()), |m| {
        d.mor_name(d.identity(f.obj(c.cod(m)))).to_string()
    })
}

/// One object per object of `C` and one morphism per morphism of `C`,
/// composing as in `C`.
fn pair_category(
    f: &FinFunctor,
    provenance: Provenance,
    name: String,
    second: impl Fn(MorId) -> String,
) -> Result<ConstructedCategory, ConstructionError> {
    let (c, d) = (f.source(), f.target());
    let mut asm = Assembly::new(name);
    for x in c.objects() {
        asm.object(vec![c.obj_name(x).into(), d.obj_name(f.obj(x)).into()], x);
    }
    for m in c.morphisms() {
        asm.morphism(Piece {
            label: vec![c.mor_name(m).into(), second(m)],
            extra: String::new(),
            dom: c.dom(m).0,
            cod: c.cod(m).0,
            over: m,
        });
    }
    asm.finish(
        c.clone(),
        provenance,
        |x| c.identity(ObjId(x)).0,
        |g, h| c.compose(MorId(g), MorId(h)).expect("composable").0,
    )
}

/// The elements `(X,x)`, `x ∈ 𝔽X`, and the pairs `(f,x)`, `x ∈ 𝔽(dom f)`,
/// shared by the concrete constructions.
struct Elements<'a> {
    c: &'a FinCat,
    f: &'a FinFunctor,
    u: &'a ConcreteStructure,
    obj_offset: Vec<usize>,
    mor_offset: Vec<usize>,
    /// `(f, index of x in 𝔽(dom f))` per morphism key.
    keys: Vec<(MorId, usize)>,
}

impl<'a> Elements<'a> {
    fn new(f: &'a FinFunctor, u: &'a ConcreteStructure) -> Self {
        let c = &**f.source();
        let mut obj_offset = Vec::new();
        let mut n = 0;
        for x in c.objects() {
            obj_offset.push(n);
            n += u.carrier(f.obj(x)).len();
        }
        let mut mor_offset = Vec::new();
        let mut keys = Vec::new();
        for m in c.morphisms() {
            mor_offset.push(keys.len());
            for i in 0..u.carrier(f.obj(c.dom(m))).len() {
                keys.push((m, i));
            }
        }
        Elements { c, f, u, obj_offset, mor_offset, keys }
    }

    fn carrier(&self, x: ObjId) -> &[String] {
        self.u.carrier(self.f.obj(x)).elements()
    }

    fn obj(&self, x: ObjId, i: usize) -> usize {
        self.obj_offset[x.0] + i
    }

    fn key(&self, m: MorId, i: usize) -> usize {
        self.mor_offset[m.0] + i
    }

    /// `𝔽f(x)` as an index.
    fn image(&self, m: MorId, i: usize) -> usize {
        self.u.action(self.f.mor(m)).apply(i)
    }

    fn add_objects(&self, asm: &mut Assembly) {
        for x in self.c.objects() {
            for e in self.carrier(x) {
                asm.object(vec![self.c.obj_name(x).into(), e.clone()], x);
            }
        }
    }

    fn identity(&self, obj: usize) -> usize {
        let x = ObjId(self.obj_offset.partition_point(|&o| o <= obj) - 1);
        self.key(self.c.identity(x), obj - self.obj_offset[x.0])
    }

    /// Key of `(g, 𝔽f(x)) ∘ (f, x) = (g∘f, x)`.
    fn compose(&self, g: usize, f: usize) -> usize {
        let (mg, _) = self.keys[g];
        let (mf, i) = self.keys[f];
        self.key(self.c.compose(mg, mf).expect("composable"), i)
    }
}

/// `(𝔽,C,Set)`: objects `(X,x)`, morphisms `(f,x): (X,x) → (Y,𝔽f(x))`,
/// i.e. `f` paired with the restriction of `𝔽f` to `x`.
pub fn concrete_graph_category(f: &FinFunctor, u: &ConcreteStructure) -> Result<ConstructedCategory, ConstructionError> {
    check_over(f, u)?;
    let e = Elements::new(f, u);
    let c = e.c;
    let mut asm = Assembly::new(format!("CGr_{}", f.name()));
    e.add_objects(&mut asm);
    for &(m, i) in &e.keys {
        let (x, y) = (c.dom(m), c.cod(m));
        asm.morphism(Piece {
            label: vec![c.mor_name(m).into(), e.carrier(x)[i].clone()],
            extra: String::new(),
            dom: e.obj(x, i),
            cod: e.obj(y, e.image(m, i)),
            over: m,
        });
    }
    asm.finish(f.source().clone(), Provenance::ConcreteGraph, |x| e.identity(x), |g, h| e.compose(g, h))
}

/// Concrete left action: morphisms `(f,y): (X,x) → (Y,y)` with
/// `y = 𝔽f(x)`, composing as `(g,z)∙(f,y) = (g∘f,z)`.
pub fn concrete_left_action(f: &FinFunctor, u: &ConcreteStructure) -> Result<ConstructedCategory, ConstructionError> {
    check_over(f, u)?;
    let e = Elements::new(f, u);
    let c = e.c;
    let mut asm = Assembly::new(format!("CLeft_{}", f.name()));
    e.add_objects(&mut asm);
    for &(m, i) in &e.keys {
        let (x, y) = (c.dom(m), c.cod(m));
        let j = e.image(m, i);
        asm.morphism(Piece {
            label: vec![c.mor_name(m).into(), e.carrier(y)[j].clone()],
            extra: e.carrier(x)[i].clone(),
            dom: e.obj(x, i),
            cod: e.obj(y, j),
            over: m,
        });
    }
    asm.finish(f.source().clone(), Provenance::ConcreteLeft, |x| e.identity(x), |g, h| e.compose(g, h))
}

/// Concrete right action over `C^op`: morphisms `(f°,y): (Y,y) → (X,x)`
/// with `y = 𝔽f(x)`, composing as `(f°,y)∙(g°,z) = (f°∘g°,z)`.
pub fn concrete_right_action(f: &FinFunctor, u: &ConcreteStructure) -> Result<ConstructedCategory, ConstructionError> {
    check_over(f, u)?;
    let e = Elements::new(f, u);
    let c = e.c;
    let op = Arc::new(c.opposite());
    let mut asm = Assembly::new(format!("CRight_{}", f.name()));
    e.add_objects(&mut asm);
    for &(m, i) in &e.keys {
        let (x, y) = (c.dom(m), c.cod(m));
        let j = e.image(m, i);
        asm.morphism(Piece {
            label: vec![op.mor_name(m).into(), e.carrier(y)[j].clone()],
            extra: e.carrier(x)[i].clone(),
            dom: e.obj(y, j),
            cod: e.obj(x, i),
            over: m,
        });
    }
    // in C^op, g ∘op f is f ∘ g in C
    asm.finish(op, Provenance::ConcreteRight, |x| e.identity(x), |g, h| e.compose(h, g))
}

/// Abstract right action: the Grothendieck construction of the trivially
/// categorified `F̄` over `C^op`, with morphisms `(f°,id_FY)`.
pub fn abstract_right_action(f: &FinFunctor) -> Result<ConstructedCategory, ConstructionError> {
    let fam = abstract_right_family(f)?;
    Ok(grothendieck_as(&fam, Provenance::AbstractRight, &format!("Right_{}", f.name()))?.0)
}

/// `∫_C F̄` for `F̄ = F ∘ w`, indexed directly over the self-dual `C`:
/// morphisms `(f,id_F̄X)` without `u`, `(f,x): (X,x) → (Y,y)` with `u`.
pub fn right_action_selfdual(
    f: &FinFunctor,
    w: &IsoWitness,
    u: Option<&ConcreteStructure>,
) -> Result<ConstructedCategory, ConstructionError> {
    let fam = selfdual_family(f, w, u)?;
    let (provenance, name) = match u {
        None => (Provenance::SelfDualAbstract, format!("SelfDual_{}", f.name())),
        Some(_) => (Provenance::SelfDualConcrete, format!("CSelfDual_{}", f.name())),
    };
    Ok(grothendieck_as(&fam, provenance, &name)?.0)
}

/// `C ≅ C^op` sending each morphism to its inverse; `None` unless `C` is a
/// groupoid.
pub fn inverse_witness(c: &Arc<FinCat>) -> Option<IsoWitness> {
    if !c.is_groupoid() {
        return None;
    }
    let op = Arc::new(c.opposite());
    let objs: Vec<ObjId> = c.objects().collect();
    let mors: Vec<MorId> = c.morphisms().map(|m| c.inverse(m).expect("groupoid")).collect();
    let forward = FinFunctor::new(format!("inv_{}", c.name()), c.clone(), op.clone(), objs.clone(), mors.clone()).ok()?;
    let backward = FinFunctor::new(format!("inv_{}", op.name()), op, c.clone(), objs, mors).ok()?;
    IsoWitness::new(forward, backward).ok()
}
