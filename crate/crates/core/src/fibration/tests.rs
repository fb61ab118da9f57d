use std::sync::Arc;

use super::*;
use crate::constructions::{
    concrete_graph_category, graph_category, grothendieck_strict, transformation_groupoid, ActionPresentation,
    GroupAction,
};
use crate::finset::ConcretePresentation;
use crate::{samples, ConcreteStructure};

fn arc(c: FinCat) -> Arc<FinCat> {
    Arc::new(c)
}

fn over(e: &Arc<FinCat>, b: &Arc<FinCat>, objs: &[(&str, &str)], mors: &[(&str, &str)]) -> FunctorOver {
    let obj_map = e
        .objects()
        .map(|x| {
            let (_, y) = objs.iter().find(|(a, _)| *a == e.obj_name(x)).expect("object mapped");
            b.object(y).unwrap()
        })
        .collect();
    let mor_map = e
        .morphisms()
        .map(|m| {
            let (_, n) = mors.iter().find(|(a, _)| *a == e.mor_name(m)).expect("morphism mapped");
            b.morphism(n).unwrap()
        })
        .collect();
    FunctorOver::new(FinFunctor::new("P", e.clone(), b.clone(), obj_map, mor_map).unwrap())
}

fn first_projection(c: &FinCat, d: &FinCat) -> FunctorOver {
    let (e, c) = (arc(c.product(d)), arc(c.clone()));
    let (no, mo) = (d.num_objects(), d.num_morphisms());
    let obj_map = e.objects().map(|x| ObjId(x.0 / no)).collect();
    let mor_map = e.morphisms().map(|m| MorId(m.0 / mo)).collect();
    FunctorOver::new(FinFunctor::new("pr1", e, c, obj_map, mor_map).unwrap())
}

fn opposite(p: &FunctorOver) -> FunctorOver {
    let e = arc(p.total().opposite());
    let b = arc(p.base().opposite());
    FunctorOver::new(FinFunctor::new("P_op", e, b, p.proj().obj_map().to_vec(), p.proj().mor_map().to_vec()).unwrap())
}

/// Two lifts `f1: A1 → B`, `f2: A2 → B` of `f`, with nothing between `A1`
/// and `A2`.
fn parallel_lifts() -> FunctorOver {
    let e = arc(
        FinCat::from_presentation(&crate::CategoryPresentation {
            name: "Par".into(),
            objects: vec!["A1".into(), "A2".into(), "B".into()],
            arrows: vec![crate::ArrowDecl::new("f1", "A1", "B"), crate::ArrowDecl::new("f2", "A2", "B")],
            ..Default::default()
        })
        .unwrap(),
    );
    let b = arc(samples::walking_arrow());
    over(
        &e,
        &b,
        &[("A1", "X"), ("A2", "X"), ("B", "Y")],
        &[("id_A1", "id_X"), ("id_A2", "id_X"), ("id_B", "id_Y"), ("f1", "f"), ("f2", "f")],
    )
}

fn point_over(object: &str) -> FunctorOver {
    let e = arc(samples::terminal());
    let b = arc(samples::walking_arrow());
    let id = format!("id_{object}");
    over(&e, &b, &[("*", object)], &[("id_*", id.as_str())])
}

fn collapse(c: &Arc<FinCat>) -> FinFunctor {
    let t = arc(samples::terminal());
    FinFunctor::new("collapse", c.clone(), t, vec![ObjId(0); c.num_objects()], vec![MorId(0); c.num_morphisms()])
        .unwrap()
}

fn collapsing_family() -> IndexedFamily {
    let b = arc(samples::walking_arrow());
    let one = arc(FinCat::discrete("P1", &["p"]).unwrap());
    let two = arc(FinCat::discrete("P2", &["q1", "q2"]).unwrap());
    let pull = FinFunctor::new("c", two.clone(), one.clone(), vec![ObjId(0); 2], vec![MorId(0); 2]).unwrap();
    IndexedFamily::from_parts("fam", b, &[("X".into(), one), ("Y".into(), two)], &[("f".into(), pull)]).unwrap()
}

fn name(p: &FunctorOver, m: MorId) -> &str {
    p.total().mor_name(m)
}

#[test]
fn graph_projection_is_cartesian_and_opcartesian_everywhere() {
    for c in [samples::composable_pair(), samples::z2(), samples::idempotent()] {
        let c = arc(c);
        let p = graph_category(&collapse(&c)).unwrap().over();
        for m in p.total().morphisms() {
            assert_eq!(p.is_cartesian(m).unwrap(), Ok(()), "{}", name(&p, m));
            assert_eq!(p.is_opcartesian(m).unwrap(), Ok(()), "{}", name(&p, m));
        }
    }
}

#[test]
fn parallel_lifts_are_not_cartesian() {
    let p = parallel_lifts();
    let cx = p.cartesian_by_name("f1").unwrap().unwrap_err();
    assert_eq!((cx.g.as_str(), cx.w.as_str(), cx.candidates), ("f2", "id_X", 0));
    assert!(p.check_fibration().unwrap().is_err());
}

#[test]
fn dual_of_parallel_lifts_is_not_opcartesian() {
    let p = opposite(&parallel_lifts());
    let f1 = p.total().morphism("f1_op").unwrap();
    let cx = p.is_opcartesian(f1).unwrap().unwrap_err();
    assert_eq!((cx.g.as_str(), cx.candidates), ("f2_op", 0));
    // the forward notion still holds: nothing else leaves B
    assert_eq!(p.is_cartesian(f1).unwrap(), Ok(()));
}

#[test]
fn product_projection_lifts_with_identities() {
    let a = samples::walking_arrow();
    let p = first_projection(&a, &a);
    let c = p.check_fibration().unwrap().unwrap();
    for (u, y, f) in c.entries() {
        let expected = crate::label::pair_id([p.base().mor_name(u), &format!("id_{}", &p.total().obj_name(y)[3..4])]);
        assert_eq!(name(&p, f), expected);
    }
    assert_eq!(c.len(), 2 * 2 + 2 * 1);
    assert_eq!(p.check_split(&c).unwrap(), Ok(()));
}

#[test]
fn graph_cleavage_is_the_graph_of_f() {
    let c = arc(samples::composable_pair());
    let p = graph_category(&collapse(&c)).unwrap().over();
    let cl = p.check_fibration().unwrap().unwrap();
    let f = p.base().morphism("f").unwrap();
    let y = p.total().object("(Y,*)").unwrap();
    assert_eq!(name(&p, cl.get(f, y).unwrap()), "(f,id_*)");
    assert_eq!(p.check_split(&cl).unwrap(), Ok(()));
    let op = p.check_opfibration().unwrap().unwrap();
    assert_eq!(op.kind(), LiftKind::OpCartesian);
    assert_eq!(p.check_split(&op).unwrap(), Ok(()));
}

#[test]
fn missing_lifts_name_the_point() {
    let err = point_over("Y").check_fibration().unwrap().unwrap_err();
    assert_eq!(err, MissingLift { kind: LiftKind::Cartesian, u: "f".into(), object: "*".into() });
    assert_eq!(err.to_string(), "no cartesian lift of `f` at `*`");
    // over X nothing lands in the fibre over Y, so no lift of f is asked for
    assert!(point_over("X").check_fibration().unwrap().is_ok());

    let err = point_over("X").check_opfibration().unwrap().unwrap_err();
    assert_eq!(err, MissingLift { kind: LiftKind::OpCartesian, u: "f".into(), object: "*".into() });
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

#[test]
fn concrete_graph_is_a_split_opfibration() {
    let a = arc(samples::walking_arrow());
    let u = concrete(&a, &[("X", &["x1", "x2"]), ("Y", &["y1"])], &[("f", &[("x1", "y1"), ("x2", "y1")])]);
    let cg = concrete_graph_category(&FinFunctor::identity(a), &u).unwrap();
    let p = cg.over();
    let k = p.check_opfibration().unwrap().unwrap();
    let f = p.base().morphism("f").unwrap();
    let x1 = p.total().object("(X,x1)").unwrap();
    assert_eq!(name(&p, k.get(f, x1).unwrap()), "(f,x1)");
    assert_eq!(p.check_split(&k).unwrap(), Ok(()));
    // two points over X, one over Y: (f,x1) and (f,x2) both end at (Y,y1)
    let cx = p.cartesian_by_name("(f,x1)").unwrap().unwrap_err();
    assert_eq!(cx.candidates, 0);
}

/// `Three × Z2` over `Three`: each lift can carry `id_*` or `s`.
fn edited_product_cleavage() -> (FunctorOver, Cleavage) {
    let p = first_projection(&samples::composable_pair(), &samples::z2());
    let mut c = p.check_fibration().unwrap().unwrap();
    let f = p.base().morphism("f").unwrap();
    let y = p.total().object("(Y,*)").unwrap();
    assert_eq!(name(&p, c.get(f, y).unwrap()), "(f,id_*)");
    let fs = p.total().morphism("(f,s)").unwrap();
    assert_eq!(p.is_cartesian(fs).unwrap(), Ok(()));
    c.set(f, y, fs);
    (p, c)
}

#[test]
fn edited_cleavage_breaks_the_composition_law() {
    let (p, c) = edited_product_cleavage();
    let v = p.check_split(&c).unwrap().unwrap_err();
    assert_eq!(v, SplitViolation::Composition { v: "g".into(), u: "f".into(), object: "(Z,*)".into() });
    assert!(matches!(p.recover_indexed(&c), Err(FibrationError::NotSplit(_))));
}

#[test]
fn edited_identity_lift_breaks_the_unit_law() {
    let p = first_projection(&samples::walking_arrow(), &samples::z2());
    let mut c = p.check_fibration().unwrap().unwrap();
    let id = p.base().morphism("id_X").unwrap();
    let x = p.total().object("(X,*)").unwrap();
    c.set(id, x, p.total().morphism("(id_X,s)").unwrap());
    let v = p.check_split(&c).unwrap().unwrap_err();
    assert_eq!(v, SplitViolation::Identity { u: "id_X".into(), object: "(X,*)".into() });
}

#[test]
fn incomplete_cleavage_is_an_error() {
    let p = first_projection(&samples::walking_arrow(), &samples::z2());
    let c = Cleavage::new(LiftKind::Cartesian, BTreeMap::new());
    assert!(matches!(p.check_split(&c), Err(FibrationError::NoLiftInCleavage { .. })));
}

#[test]
fn factorizations_in_a_grothendieck_total() {
    let (g, c) = grothendieck_strict(&collapsing_family()).unwrap();
    let p = g.over();
    assert_eq!(p.check_split(&c).unwrap(), Ok(()));
    for m in p.total().morphisms() {
        let fac = p.factor_vertical_cartesian(&c, m).unwrap();
        let e = p.total();
        assert_eq!(e.compose(fac.cartesian, fac.vertical), Some(m));
        assert!(p.base().is_identity(p.proj().mor(fac.vertical)));
        assert_eq!(p.is_cartesian(fac.cartesian).unwrap(), Ok(()));
        assert_eq!(p.vertical_factorizations(fac.cartesian, m), vec![fac.vertical]);
        if p.base().is_identity(p.proj().mor(m)) {
            // vertical g: the lift of an identity is an identity
            assert!(e.is_identity(fac.cartesian));
            assert_eq!(fac.vertical, m);
        }
        if p.is_cartesian(m).unwrap().is_ok() && c.get(p.proj().mor(m), e.cod(m)) == Some(m) {
            assert!(e.is_identity(fac.vertical));
        }
    }
}

#[test]
fn factorization_needs_the_right_variance() {
    let p = graph_category(&collapse(&arc(samples::walking_arrow()))).unwrap().over();
    let op = p.check_opfibration().unwrap().unwrap();
    assert_eq!(p.factor_vertical_cartesian(&op, MorId(0)), Err(FibrationError::WrongVariance));
    assert_eq!(p.recover_indexed(&op).unwrap_err(), FibrationError::WrongVariance);
}

fn z3_regular() -> GroupAction {
    let p = ActionPresentation {
        name: "A".into(),
        group: "Z3".into(),
        elements: vec!["0".into(), "1".into(), "2".into()],
        phi: vec![
            ("r".into(), vec![("0".into(), "1".into()), ("1".into(), "2".into()), ("2".into(), "0".into())]),
            ("r2".into(), vec![("0".into(), "2".into()), ("1".into(), "0".into()), ("2".into(), "1".into())]),
        ],
    };
    GroupAction::from_presentation(&p, arc(samples::z3())).unwrap()
}

#[test]
fn lemmas_hold_on_small_fibrations() {
    let z2 = arc(samples::z2());
    let mut cases = vec![
        graph_category(&collapse(&arc(samples::composable_pair()))).unwrap().over(),
        graph_category(&FinFunctor::identity(z2.clone())).unwrap().over(),
        grothendieck_strict(&collapsing_family()).unwrap().0.over(),
        transformation_groupoid(&z3_regular()).unwrap().over(),
        FunctorOver::identity(arc(samples::idempotent())),
        FunctorOver::identity(arc(FinCat::discrete("D", &["a", "b"]).unwrap())),
    ];
    cases.push(first_projection(&samples::composable_pair(), &samples::z2()));
    for p in &cases {
        assert_eq!(p.property_cartesian_compose().unwrap(), Ok(()), "{}", p.total().name());
        assert_eq!(p.property_cartesian_over_iso().unwrap(), Ok(()), "{}", p.total().name());
    }
}

#[test]
fn non_cartesian_fixture_satisfies_the_lemmas_vacuously() {
    let p = parallel_lifts();
    assert_eq!(p.property_cartesian_compose().unwrap(), Ok(()));
    assert_eq!(p.property_cartesian_over_iso().unwrap(), Ok(()));
}

#[test]
fn round_trip_through_the_grothendieck_construction() {
    let fam = collapsing_family();
    let (g, c) = grothendieck_strict(&fam).unwrap();
    let p = g.over();
    let rec = p.recover_indexed(&c).unwrap();
    for x in fam.base().objects() {
        let (a, b) = (fam.fibre(x), rec.fibre(x));
        assert_eq!((a.num_objects(), a.num_morphisms()), (b.num_objects(), b.num_morphisms()));
    }
    let f = fam.base().morphism("f").unwrap();
    assert_eq!(rec.pull(f).obj_map(), fam.pull(f).obj_map());
    let rt = p.round_trip(&c).unwrap();
    assert!(rt.holds());
}

#[test]
fn graph_recovers_one_object_fibres() {
    let c = arc(samples::composable_pair());
    let p = graph_category(&collapse(&c)).unwrap().over();
    let cl = p.check_fibration().unwrap().unwrap();
    let fam = p.recover_indexed(&cl).unwrap();
    for x in c.objects() {
        assert_eq!((fam.fibre(x).num_objects(), fam.fibre(x).num_morphisms()), (1, 1));
    }
    assert!(p.round_trip(&cl).unwrap().holds());
}

#[test]
fn identity_fibration_recovers_the_constant_terminal_family() {
    let c = arc(samples::composable_pair());
    let p = FunctorOver::identity(c.clone());
    let cl = p.check_fibration().unwrap().unwrap();
    assert!(cl.entries().all(|(u, _, f)| u == f));
    let fam = p.recover_indexed(&cl).unwrap();
    for x in c.objects() {
        assert_eq!((fam.fibre(x).num_objects(), fam.fibre(x).num_morphisms()), (1, 1));
    }
    for u in c.morphisms() {
        assert_eq!(fam.pull(u).mor_map(), &[MorId(0)]);
    }
    assert!(p.round_trip(&cl).unwrap().holds());
}

#[test]
fn budget_guard() {
    let p = graph_category(&collapse(&arc(samples::composable_pair()))).unwrap().over().with_budget(10);
    assert!(matches!(p.check_fibration(), Err(FibrationError::BudgetExceeded { budget: 10, .. })));
    assert!(matches!(p.is_cartesian(MorId(0)), Err(FibrationError::BudgetExceeded { .. })));
    assert!(matches!(p.cartesian_by_name("nope"), Err(FibrationError::UnknownMorphism(_))));
}
