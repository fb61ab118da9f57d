//! Group actions on finite sets and their transformation groupoids.

use std::sync::Arc;

use super::defs::{inverse_witness, right_action_selfdual};
use super::{Assembly, ConstructedCategory, ConstructionError, Piece, Provenance};
use crate::fincat::{CatBuilder, FinCat, MorId, ObjId};
use crate::finset::{ConcreteStructure, FinFn, FinSetObj};
use crate::functor::FinFunctor;
use crate::iso::IsoWitness;

/// Raw action data: the group by name, the carrier, and `g: x |-> y` tables.
#[derive(Debug, Clone, PartialEq, Eq, Default)]
pub struct ActionPresentation {
    pub name: String,
    pub group: String,
    pub elements: Vec<String>,
    pub phi: Vec<(String, Vec<(String, String)>)>,
}

/// A left action `φ` of a one-object groupoid on a finite set.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct GroupAction {
    name: String,
    group: Arc<FinCat>,
    carrier: FinSetObj,
    phi: Vec<FinFn>,
}

/// The action as a functor `F: G → D` into the one-object category of the
/// distinct `φ_g`, with `U: D → FinSet` the inclusion.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ActionImage {
    pub functor: FinFunctor,
    pub concrete: ConcreteStructure,
}

impl GroupAction {
    pub fn new(
        name: impl Into<String>,
        group: Arc<FinCat>,
        carrier: FinSetObj,
        phi: Vec<FinFn>,
    ) -> Result<Self, ConstructionError> {
        if group.num_objects() != 1 || !group.is_groupoid() {
            return Err(ConstructionError::NotAGroup(group.name().into()));
        }
        assert_eq!(phi.len(), group.num_morphisms());
        let g = &*group;
        let e = g.identity(ObjId(0));
        if !phi[e.0].same_graph(&FinFn::identity(&carrier)) {
            return Err(ConstructionError::ActionIdentity(g.mor_name(e).into()));
        }
        for a in g.morphisms() {
            for b in g.morphisms() {
                let ab = g.compose(a, b).expect("one object");
                let composite = phi[a.0].after(&phi[b.0]).expect("endofunctions of the carrier");
                if !composite.same_graph(&phi[ab.0]) {
                    return Err(ConstructionError::NotAnAction { g: g.mor_name(a).into(), f: g.mor_name(b).into() });
                }
            }
        }
        Ok(GroupAction { name: name.into(), group, carrier, phi })
    }

    /// The identity may be omitted from `p.phi`.
    pub fn from_presentation(p: &ActionPresentation, group: Arc<FinCat>) -> Result<Self, ConstructionError> {
        let carrier = FinSetObj::new(p.name.clone(), p.elements.iter().cloned())?;
        let mut phi: Vec<Option<FinFn>> = vec![None; group.num_morphisms()];
        for (g, pairs) in &p.phi {
            let m = group
                .morphism(g)
                .ok_or_else(|| ConstructionError::Category(crate::CategoryError::UnknownMorphism(g.clone())))?;
            let f = FinFn::from_pairs(g.clone(), carrier.clone(), carrier.clone(), pairs)?;
            if phi[m.0].replace(f).is_some() {
                return Err(ConstructionError::Concrete(crate::ConcreteError::DuplicateAssignment {
                    function: p.name.clone(),
                    element: g.clone(),
                }));
            }
        }
        let phi = phi
            .into_iter()
            .enumerate()
            .map(|(i, f)| match f {
                Some(f) => Ok(f),
                None if group.is_identity(MorId(i)) => Ok(FinFn::identity(&carrier)),
                None => Err(ConstructionError::Concrete(crate::ConcreteError::MissingFunction(
                    group.mor_name(MorId(i)).into(),
                ))),
            })
            .collect::<Result<_, _>>()?;
        GroupAction::new(p.name.clone(), group, carrier, phi)
    }

    pub fn presentation(&self) -> ActionPresentation {
        let g = &*self.group;
        ActionPresentation {
            name: self.name.clone(),
            group: g.name().into(),
            elements: self.carrier.elements().to_vec(),
            phi: g
                .morphisms()
                .filter(|&m| !g.is_identity(m))
                .map(|m| {
                    let f = &self.phi[m.0];
                    let pairs = (0..self.carrier.len())
                        .map(|i| (self.carrier.element(i).to_string(), self.carrier.element(f.apply(i)).to_string()))
                        .collect();
                    (g.mor_name(m).to_string(), pairs)
                })
                .collect(),
        }
    }

    pub fn name(&self) -> &str {
        &self.name
    }

    pub fn group(&self) -> &Arc<FinCat> {
        &self.group
    }

    pub fn carrier(&self) -> &FinSetObj {
        &self.carrier
    }

    pub fn phi(&self, g: MorId) -> &FinFn {
        &self.phi[g.0]
    }

    pub fn image(&self) -> Result<ActionImage, ConstructionError> {
        let g = &*self.group;
        let mut distinct: Vec<&FinFn> = Vec::new();
        let mut names = Vec::new();
        // the identity function first, so it gets the identity's name
        let e = g.identity(ObjId(0));
        let order = std::iter::once(e).chain(g.morphisms().filter(|&m| m != e));
        let mut class_of = vec![0; g.num_morphisms()];
        for m in order {
            let f = &self.phi[m.0];
            let k = match distinct.iter().position(|d| d.same_graph(f)) {
                Some(k) => k,
                None => {
                    distinct.push(f);
                    names.push(if m == e {
                        format!("id_{}", self.carrier.id())
                    } else {
                        format!("phi_{}", g.mor_name(m))
                    });
                    distinct.len() - 1
                }
            };
            class_of[m.0] = k;
        }
        let class: Vec<MorId> = class_of.into_iter().map(MorId).collect();

        let mut b = CatBuilder::new(format!("Im_{}", self.name));
        let o = b.add_object(self.carrier.id());
        for n in &names {
            b.add_morphism(n.clone(), o, o);
        }
        b.set_identity(o, MorId(0));
        for (i, fi) in distinct.iter().enumerate() {
            for (j, fj) in distinct.iter().enumerate() {
                let comp = fi.after(fj).expect("endofunctions");
                let k = distinct.iter().position(|d| d.same_graph(&comp)).expect("image is closed under composition");
                b.set_compose(MorId(i), MorId(j), MorId(k))?;
            }
        }
        let d = Arc::new(b.build()?);
        let functor = FinFunctor::new(format!("F_{}", self.name), self.group.clone(), d.clone(), vec![o], class)?;
        let action = distinct
            .iter()
            .zip(&names)
            .map(|(f, n)| FinFn::new(n.clone(), self.carrier.clone(), self.carrier.clone(), f.table().to_vec()))
            .collect();
        let concrete = ConcreteStructure::new(format!("U_{}", self.name), d, vec![self.carrier.clone()], action, false)?;
        Ok(ActionImage { functor, concrete })
    }
}

/// `X ⫽ G`: objects the elements, morphisms `(g,x): x → φ_g(x)`, with
/// `(g′,φ_g(x))∘(g,x) = (g′g,x)`.
pub fn transformation_groupoid(act: &GroupAction) -> Result<ConstructedCategory, ConstructionError> {
    let g = &*act.group;
    let n = act.carrier.len();
    let star = ObjId(0);
    let mut asm = Assembly::new(format!("{}_by_{}", act.name, g.name()));
    for e in act.carrier.elements() {
        asm.object(vec![e.clone()], star);
    }
    for m in g.morphisms() {
        for i in 0..n {
            asm.morphism(Piece {
                label: vec![g.mor_name(m).into(), act.carrier.element(i).into()],
                extra: String::new(),
                dom: i,
                cod: act.phi[m.0].apply(i),
                over: m,
            });
        }
    }
    let e = g.identity(star);
    asm.finish(
        act.group.clone(),
        Provenance::TransGroupoid,
        |x| e.0 * n + x,
        |a, b| {
            let (ga, gb) = (MorId(a / n), MorId(b / n));
            g.compose(ga, gb).expect("one object").0 * n + b % n
        },
    )
}

/// Compares the transformation groupoid with the concrete self-dual action
/// category of `F̄_g = φ_{g⁻¹}`, relabelled by dropping the first object
/// component; morphisms `(g,x)` correspond by id.
pub fn verify_prop4(act: &GroupAction) -> Result<IsoWitness, ConstructionError> {
    let image = act.image()?;
    let w = inverse_witness(&act.group).ok_or_else(|| ConstructionError::NotAGroup(act.group.name().into()))?;
    let def8 = right_action_selfdual(&image.functor, &w, Some(&image.concrete))?;
    let tg = transformation_groupoid(act)?;
    let mismatch = |detail: String| ConstructionError::ReportFailure { leg: "prop4".into(), detail };

    let mut obj_map = Vec::with_capacity(def8.cat.num_objects());
    for x in def8.cat.objects() {
        let elem = def8.obj_labels[x.0].last().expect("pair label");
        obj_map.push(tg.cat.object(elem).ok_or_else(|| mismatch(format!("no object `{elem}`")))?);
    }
    let mut mor_map = Vec::with_capacity(def8.cat.num_morphisms());
    for m in def8.cat.morphisms() {
        let id = def8.cat.mor_name(m);
        mor_map.push(tg.cat.morphism(id).ok_or_else(|| mismatch(format!("no morphism `{id}`")))?);
    }
    let forward = FinFunctor::new("drop_first", def8.cat.clone(), tg.cat.clone(), obj_map, mor_map)?;
    let over = def8.cat.morphisms().all(|m| tg.projection.mor(forward.mor(m)) == def8.projection.mor(m));
    if !over {
        return Err(mismatch("relabelling does not commute with the projections".into()));
    }
    IsoWitness::from_bijection(forward).ok_or_else(|| mismatch("relabelling is not bijective".into()))
}
