use std::sync::Arc;

use super::*;
use crate::finset::ConcretePresentation;
use crate::iso::DEFAULT_BUDGET;
use crate::{samples, ConcreteStructure, FinCat, FinFunctor, IsoWitness, MorId, ObjId};

fn arc(c: FinCat) -> Arc<FinCat> {
    Arc::new(c)
}

fn names(c: &FinCat) -> Vec<&str> {
    let mut v: Vec<&str> = c.morphisms().map(|m| c.mor_name(m)).collect();
    v.sort();
    v
}

fn collapse(c: &Arc<FinCat>) -> FinFunctor {
    let t = arc(samples::terminal());
    FinFunctor::new(
        "collapse",
        c.clone(),
        t,
        vec![ObjId(0); c.num_objects()],
        vec![MorId(0); c.num_morphisms()],
    )
    .unwrap()
}

fn concrete(over: &Arc<FinCat>, carriers: &[(&str, &[&str])], fns: &[(&str, &[(&str, &str)])]) -> ConcreteStructure {
    let p = ConcretePresentation {
        name: "U".into(),
        over: over.name().into(),
        carriers: carriers.iter().map(|(o, es)| (o.to_string(), es.iter().map(|e| e.to_string()).collect())).collect(),
        functions: fns
            .iter()
            .map(|(m, ps)| (m.to_string(), ps.iter().map(|(a, b)| (a.to_string(), b.to_string())).collect()))
            .collect(),
    };
    ConcreteStructure::from_presentation(&p, over.clone(), false).unwrap()
}

/// Z2 acting on {0,1} by swapping, as `F = id: Z2 → Z2` with `U` the swap.
fn z2_swap() -> (FinFunctor, ConcreteStructure) {
    let z = arc(samples::z2());
    let u = concrete(&z, &[("*", &["0", "1"])], &[("s", &[("0", "1"), ("1", "0")])]);
    (FinFunctor::identity(z), u)
}

/// Walking arrow with `X = {x1,x2}`, `Y = {y1}` and `f` constant.
fn arrow_constant() -> (FinFunctor, ConcreteStructure) {
    let a = arc(samples::walking_arrow());
    let u = concrete(&a, &[("X", &["x1", "x2"]), ("Y", &["y1"])], &[("f", &[("x1", "y1"), ("x2", "y1")])]);
    (FinFunctor::identity(a), u)
}

fn action(group: FinCat, elements: &[&str], phi: &[(&str, &[(&str, &str)])]) -> GroupAction {
    let p = ActionPresentation {
        name: "A".into(),
        group: group.name().into(),
        elements: elements.iter().map(|e| e.to_string()).collect(),
        phi: phi
            .iter()
            .map(|(g, ps)| (g.to_string(), ps.iter().map(|(a, b)| (a.to_string(), b.to_string())).collect()))
            .collect(),
    };
    GroupAction::from_presentation(&p, arc(group)).unwrap()
}

fn z2_swap_action() -> GroupAction {
    action(samples::z2(), &["0", "1"], &[("s", &[("0", "1"), ("1", "0")])])
}

fn z3_regular() -> GroupAction {
    action(
        samples::z3(),
        &["0", "1", "2"],
        &[("r", &[("0", "1"), ("1", "2"), ("2", "0")]), ("r2", &[("0", "2"), ("1", "0"), ("2", "1")])],
    )
}

#[test]
fn graph_of_identity_on_walking_arrow() {
    let a = arc(samples::walking_arrow());
    let g = graph_category(&FinFunctor::identity(a)).unwrap();
    assert_eq!(g.cat.objects().map(|x| g.cat.obj_name(x)).collect::<Vec<_>>(), ["(X,X)", "(Y,Y)"]);
    assert_eq!(g.cat.num_morphisms(), 3);
}

#[test]
fn graph_of_collapse_pairs_with_the_terminal_identity() {
    let a = arc(samples::walking_arrow());
    let g = graph_category(&collapse(&a)).unwrap();
    assert_eq!(names(&g.cat), ["(f,id_*)", "(id_X,id_*)", "(id_Y,id_*)"]);
}

#[test]
fn concrete_graph_counts() {
    let (f, u) = z2_swap();
    let g = concrete_graph_category(&f, &u).unwrap();
    assert_eq!((g.cat.num_objects(), g.cat.num_morphisms()), (2, 4));

    let (f, u) = arrow_constant();
    let g = concrete_graph_category(&f, &u).unwrap();
    assert_eq!((g.cat.num_objects(), g.cat.num_morphisms()), (3, 5));
}

#[test]
fn empty_carriers_give_empty_categories() {
    let a = arc(samples::walking_arrow());
    let u = concrete(&a, &[("X", &[]), ("Y", &[])], &[("f", &[])]);
    let f = FinFunctor::identity(a);
    for cc in [
        concrete_graph_category(&f, &u).unwrap(),
        concrete_left_action(&f, &u).unwrap(),
        concrete_right_action(&f, &u).unwrap(),
    ] {
        assert_eq!((cc.cat.num_objects(), cc.cat.num_morphisms()), (0, 0));
    }
}

#[test]
fn trivial_categorification_of_z2_has_coinciding_functors() {
    let t = trivial_categorify(&arc(samples::z2()));
    assert_eq!(t.fibres.len(), 1);
    assert_eq!(t.functors.len(), 2);
    assert_eq!(t.functors[0].obj_map(), t.functors[1].obj_map());
    assert_eq!(t.functors[0].mor_map(), t.functors[1].mor_map());
}

#[test]
fn abstract_right_action_of_identity_on_walking_arrow() {
    let a = arc(samples::walking_arrow());
    let r = abstract_right_action(&FinFunctor::identity(a.clone())).unwrap();
    assert_eq!(r.cat.num_morphisms(), a.num_morphisms());
    let f = r.cat.morphism("(f_op,id_Y)").expect("(f°,id_FY)");
    assert_eq!(r.cat.obj_name(r.cat.dom(f)), "(Y,Y)");
    assert_eq!(r.cat.obj_name(r.cat.cod(f)), "(X,X)");
}

#[test]
fn abstract_actions_on_terminal_are_terminal() {
    let t = arc(samples::terminal());
    let f = FinFunctor::identity(t);
    for cc in [abstract_right_action(&f).unwrap(), abstract_left_action(&f).unwrap()] {
        assert_eq!((cc.cat.num_objects(), cc.cat.num_morphisms()), (1, 1));
    }
}

#[test]
fn abstract_duality_is_presentation_equality() {
    for c in samples::all() {
        let c = arc(c);
        let f = FinFunctor::identity(c.clone());
        let right = abstract_right_action(&f).unwrap();
        let left = abstract_left_action(&f).unwrap();
        assert!(right.cat.opposite().identical(&left.cat), "{}", c.name());
    }
}

#[test]
fn concrete_left_action_of_z2_swap() {
    let (f, u) = z2_swap();
    let l = concrete_left_action(&f, &u).unwrap();
    assert_eq!(names(&l.cat), ["(id_*,0)", "(id_*,1)", "(s,0)", "(s,1)"]);
}

#[test]
fn concrete_right_action_of_z2_swap_is_a_groupoid() {
    let (f, u) = z2_swap();
    let r = concrete_right_action(&f, &u).unwrap();
    assert_eq!((r.cat.num_objects(), r.cat.num_morphisms()), (2, 4));
    assert!(r.cat.is_groupoid());
}

#[test]
fn concrete_duality_and_grothendieck_cross_check() {
    for (f, u) in [z2_swap(), arrow_constant()] {
        let right = concrete_right_action(&f, &u).unwrap();
        let left = concrete_left_action(&f, &u).unwrap();
        assert!(right.cat.opposite().identical(&left.cat));
        let (g, _) = grothendieck_strict(&concrete_right_family(&f, &u).unwrap()).unwrap();
        assert!(g.cat.identical(&right.cat));
    }
}

#[test]
fn ambiguous_pairs_get_a_third_component() {
    let (f, u) = arrow_constant();
    let l = concrete_left_action(&f, &u).unwrap();
    assert!(l.cat.morphism("(f,y1,x1)").is_some());
    assert!(l.cat.morphism("(f,y1,x2)").is_some());
    assert!(l.cat.morphism("(id_X,x1)").is_some());
}

#[test]
fn mismatched_concrete_structure_is_rejected() {
    let (_, u) = z2_swap();
    let f = FinFunctor::identity(arc(samples::walking_arrow()));
    assert!(matches!(concrete_left_action(&f, &u), Err(ConstructionError::UnderlyingMismatch { .. })));
}

#[test]
fn constant_family_total_is_the_base() {
    let b = arc(samples::composable_pair());
    let t = arc(samples::terminal());
    let fam = IndexedFamily::from_parts(
        "const",
        b.clone(),
        &b.objects().map(|x| (b.obj_name(x).to_string(), t.clone())).collect::<Vec<_>>(),
        &b.morphisms().map(|m| (b.mor_name(m).to_string(), FinFunctor::identity(t.clone()))).collect::<Vec<_>>(),
    )
    .unwrap();
    let (g, _) = grothendieck_strict(&fam).unwrap();
    assert!(IsoWitness::from_bijection(g.projection.clone()).is_some());
}

#[test]
fn grothendieck_with_collapsing_pull() {
    // fibre(X) = 1 point, fibre(Y) = 2 points, pull(f) collapses
    let b = arc(samples::walking_arrow());
    let one = arc(FinCat::discrete("P1", &["p"]).unwrap());
    let two = arc(FinCat::discrete("P2", &["q1", "q2"]).unwrap());
    let pull = FinFunctor::new("c", two.clone(), one.clone(), vec![ObjId(0); 2], vec![MorId(0); 2]).unwrap();
    let fam = IndexedFamily::from_parts(
        "fam",
        b,
        &[("X".into(), one), ("Y".into(), two)],
        &[("f".into(), pull)],
    )
    .unwrap();
    let (g, cleavage) = grothendieck_strict(&fam).unwrap();
    assert_eq!((g.cat.num_objects(), g.cat.num_morphisms()), (3, 5));
    assert!(g.cat.morphism("(f,id_p,q1)").is_some());
    assert_eq!(cleavage.len(), 5);
}

#[test]
fn non_strict_family_is_rejected() {
    let b = arc(samples::z2());
    let two = arc(FinCat::discrete("P2", &["q1", "q2"]).unwrap());
    // s* constant: s* ∘ s* is constant, not the identity
    let constant = FinFunctor::new("k", two.clone(), two.clone(), vec![ObjId(0); 2], vec![MorId(0); 2]).unwrap();
    let err = IndexedFamily::from_parts("bad", b, &[("*".into(), two)], &[("s".into(), constant)]).unwrap_err();
    assert!(matches!(err, ConstructionError::NotStrict { .. }), "{err:?}");
}

#[test]
fn grothendieck_of_trivial_categorification_is_the_abstract_right_action() {
    let f = collapse(&arc(samples::composable_pair()));
    let (g, _) = grothendieck_strict(&abstract_right_family(&f).unwrap()).unwrap();
    let r = abstract_right_action(&f).unwrap();
    assert!(g.cat.identical(&r.cat));
    // every second component is an identity of its fibre
    assert!(g.mor_labels.iter().all(|l| l[1] == "id_*"));
}

#[test]
fn selfdual_on_z2_swap() {
    let (f, u) = z2_swap();
    let w = inverse_witness(f.source()).unwrap();
    let d = right_action_selfdual(&f, &w, Some(&u)).unwrap();
    assert_eq!((d.cat.num_objects(), d.cat.num_morphisms()), (2, 4));
    assert_eq!(d.provenance, Provenance::SelfDualConcrete);
}

#[test]
fn selfdual_on_terminal_is_terminal() {
    let t = arc(samples::terminal());
    let w = inverse_witness(&t).unwrap();
    let f = FinFunctor::identity(t);
    let d = right_action_selfdual(&f, &w, None).unwrap();
    assert_eq!((d.cat.num_objects(), d.cat.num_morphisms()), (1, 1));
}

#[test]
fn bogus_selfdual_witness_is_rejected() {
    let z = arc(samples::z2());
    let w = inverse_witness(&z).unwrap();
    let f = FinFunctor::identity(arc(samples::z3()));
    assert!(matches!(right_action_selfdual(&f, &w, None), Err(ConstructionError::NoSelfDualWitness(_))));
}

#[test]
fn transformation_groupoids() {
    let tg = transformation_groupoid(&z2_swap_action()).unwrap();
    assert_eq!((tg.cat.num_objects(), tg.cat.num_morphisms()), (2, 4));
    assert!(tg.cat.is_groupoid());
    assert_eq!(tg.cat.hom(ObjId(0), ObjId(1)).len(), 1);

    let trivial = action(samples::z2(), &["0", "1"], &[("s", &[("0", "0"), ("1", "1")])]);
    let tg = transformation_groupoid(&trivial).unwrap();
    assert_eq!((tg.cat.num_objects(), tg.cat.num_morphisms()), (2, 4));
    assert!(tg.cat.hom(ObjId(0), ObjId(1)).is_empty());
    assert_eq!(tg.cat.hom(ObjId(0), ObjId(0)).len(), 2);

    let t = transformation_groupoid(&action(samples::terminal(), &["a", "b", "c"], &[])).unwrap();
    assert_eq!((t.cat.num_objects(), t.cat.num_morphisms()), (3, 3));
}

#[test]
fn prop4_witnesses() {
    for (act, mors) in [(z2_swap_action(), 4), (z3_regular(), 9), (action(samples::terminal(), &["x"], &[]), 1)] {
        let w = verify_prop4(&act).unwrap();
        assert_eq!(w.source().num_morphisms(), mors);
        w.validate().unwrap();
    }
}

#[test]
fn non_group_action_is_rejected() {
    let bad = ActionPresentation {
        name: "A".into(),
        group: "Idem".into(),
        elements: vec!["0".into()],
        phi: vec![("e".into(), vec![("0".into(), "0".into())])],
    };
    assert!(matches!(
        GroupAction::from_presentation(&bad, arc(samples::idempotent())),
        Err(ConstructionError::NotAGroup(_))
    ));
}

#[test]
fn main_prop_on_terminal() {
    let t = arc(samples::terminal());
    let u = concrete(&t, &[("*", &["pt"])], &[]);
    let w = inverse_witness(&t).unwrap();
    let r = verify_main_prop(&FinFunctor::identity(t), Some(&u), Some(&w), DEFAULT_BUDGET).unwrap();
    assert!(r.passed(), "{r:?}");
    assert_eq!(r.leg("iv.not-concrete").unwrap().status, LegStatus::Skip);
}

#[test]
fn main_prop_on_z2_swap() {
    let (f, u) = z2_swap();
    let w = inverse_witness(f.source()).unwrap();
    let r = verify_main_prop(&f, Some(&u), Some(&w), DEFAULT_BUDGET).unwrap();
    assert!(r.passed(), "{r:?}");
    assert_eq!(r.leg("iii.def2~def8").unwrap().status, LegStatus::Pass);
    assert_eq!(r.leg("iv.not-concrete").unwrap().status, LegStatus::Pass);
}

#[test]
fn main_prop_on_walking_arrow_uses_the_opposite_right_action() {
    let (f, u) = arrow_constant();
    let r = verify_main_prop(&f, Some(&u), None, DEFAULT_BUDGET).unwrap();
    assert!(r.passed(), "{r:?}");
    assert_eq!(r.leg("iii.def6~def4op").unwrap().status, LegStatus::Pass);
    for cc in [concrete_graph_category(&f, &u).unwrap(), concrete_left_action(&f, &u).unwrap()] {
        assert_eq!((cc.cat.num_objects(), cc.cat.num_morphisms()), (3, 5));
    }
}

#[test]
fn labels_are_kept_per_index() {
    let (f, u) = z2_swap();
    let l = concrete_left_action(&f, &u).unwrap();
    for x in l.cat.objects() {
        assert_eq!(crate::label::pair_id(&l.obj_labels[x.0]), l.cat.obj_name(x));
    }
}
