use std::sync::Arc;

use basecat_core::random::Generator;
use basecat_core::{
    enumerate_functors, find_isomorphism, samples, ArrowDecl, CategoryPresentation, ComposeEntry, FinCat, FinFunctor,
    IsoOutcome, MorId, ObjId, DEFAULT_BUDGET,
};
use proptest::prelude::*;
use rand::seq::SliceRandom;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

fn config() -> ProptestConfig {
    ProptestConfig { cases: 48, failure_persistence: None, ..ProptestConfig::default() }
}

/// The same category, with every id renamed and objects and morphisms
/// listed in a shuffled order.
fn shuffled_copy(c: &FinCat, seed: u64) -> FinCat {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let p = c.presentation();
    let obj = |s: &str| format!("o_{s}");
    let mor = |s: &str| format!("m_{s}");
    let mut q = CategoryPresentation { name: format!("{}_copy", p.name), ..Default::default() };
    q.objects = p.objects.iter().map(|o| obj(o)).collect();
    q.objects.shuffle(&mut rng);
    q.arrows = p.arrows.iter().map(|a| ArrowDecl::new(mor(&a.id), obj(&a.dom), obj(&a.cod))).collect();
    q.arrows.shuffle(&mut rng);
    // identities named explicitly so the renaming stays uniform
    q.identities = c.objects().map(|x| (obj(c.obj_name(x)), mor(c.mor_name(c.identity(x))))).collect();
    q.compose = p.compose.iter().map(|e| ComposeEntry::new(mor(&e.g), mor(&e.f), mor(&e.result))).collect();
    q.compose.shuffle(&mut rng);
    FinCat::from_presentation(&q).unwrap()
}

fn projections(c: &Arc<FinCat>, d: &Arc<FinCat>) -> (Arc<FinCat>, FinFunctor, FinFunctor) {
    let p = Arc::new(c.product(d));
    let (no, mo) = (d.num_objects(), d.num_morphisms());
    let pi1 = FinFunctor::new(
        "pi1",
        p.clone(),
        c.clone(),
        p.objects().map(|x| ObjId(x.0 / no)).collect(),
        p.morphisms().map(|m| MorId(m.0 / mo)).collect(),
    )
    .unwrap();
    let pi2 = FinFunctor::new(
        "pi2",
        p.clone(),
        d.clone(),
        p.objects().map(|x| ObjId(x.0 % no)).collect(),
        p.morphisms().map(|m| MorId(m.0 % mo)).collect(),
    )
    .unwrap();
    (p, pi1, pi2)
}

fn small(g: &mut Generator, max_morphisms: usize) -> Arc<FinCat> {
    loop {
        let c = g.structured().cat;
        if c.num_morphisms() <= max_morphisms {
            return c;
        }
    }
}

#[test]
fn bundled_samples_satisfy_the_laws() {
    for c in samples::all() {
        c.check_laws().unwrap();
        assert!(FinCat::from_presentation(&c.presentation()).unwrap().identical(&c));
    }
}

proptest! {
    #![proptest_config(config())]

    #[test]
    fn generated_categories_satisfy_the_laws(seed in any::<u64>()) {
        let c = Generator::new(seed).structured().cat;
        prop_assert!(c.check_laws().is_ok());
        prop_assert!(FinCat::from_presentation(&c.presentation()).unwrap().identical(&c));
    }

    #[test]
    fn opposite_is_an_involution(seed in any::<u64>()) {
        let c = Generator::new(seed).structured().cat;
        let op = c.opposite();
        prop_assert!(op.check_laws().is_ok());
        prop_assert_eq!(op.opposite(), (*c).clone());
        prop_assert!(c.identical(&c.normalize().unwrap()));
        prop_assert_eq!(c.normalize().unwrap().normalize().unwrap(), c.normalize().unwrap());
    }

    #[test]
    fn product_has_the_universal_property(seed in any::<u64>()) {
        let mut g = Generator::new(seed);
        let (c, d) = (small(&mut g, 6), small(&mut g, 6));
        let (p, pi1, pi2) = projections(&c, &d);
        prop_assert!(p.check_laws().is_ok());
        let probes = [samples::terminal(), samples::walking_arrow(), FinCat::discrete("Two", &["a", "b"]).unwrap()];
        for t in probes.into_iter().map(Arc::new) {
            let into_p = enumerate_functors(&t, &p, usize::MAX);
            for f1 in enumerate_functors(&t, &c, 64) {
                for f2 in enumerate_functors(&t, &d, 64) {
                    let mediators = into_p
                        .iter()
                        .filter(|h| {
                            let a = FinFunctor::compose(&pi1, h).unwrap();
                            let b = FinFunctor::compose(&pi2, h).unwrap();
                            a.obj_map() == f1.obj_map() && a.mor_map() == f1.mor_map()
                                && b.obj_map() == f2.obj_map() && b.mor_map() == f2.mor_map()
                        })
                        .count();
                    prop_assert_eq!(mediators, 1);
                }
            }
        }
    }

    #[test]
    fn functor_composition_is_associative_and_unital(seed in any::<u64>()) {
        let mut g = Generator::new(seed);
        let (a, b, c, d) = (g.structured().cat, g.structured().cat, g.structured().cat, g.structured().cat);
        let f = g.functor(&a, &b);
        let h = g.functor(&b, &c);
        let k = g.functor(&c, &d);
        let left = FinFunctor::compose(&k, &FinFunctor::compose(&h, &f).unwrap()).unwrap();
        let right = FinFunctor::compose(&FinFunctor::compose(&k, &h).unwrap(), &f).unwrap();
        prop_assert_eq!(left.obj_map(), right.obj_map());
        prop_assert_eq!(left.mor_map(), right.mor_map());
        let unit = FinFunctor::compose(&FinFunctor::identity(b.clone()), &f).unwrap();
        prop_assert_eq!(unit.mor_map(), f.mor_map());
        let unit = FinFunctor::compose(&f, &FinFunctor::identity(a.clone())).unwrap();
        prop_assert_eq!(unit.mor_map(), f.mor_map());
    }

    #[test]
    fn isomorphism_search_finds_shuffled_copies(seed in any::<u64>()) {
        let c = Generator::new(seed).structured().cat;
        let copy = Arc::new(shuffled_copy(&c, seed));
        match find_isomorphism(&c, &copy, DEFAULT_BUDGET) {
            IsoOutcome::Found(w) => prop_assert!(w.validate().is_ok()),
            other => prop_assert!(false, "{:?}", other),
        }
    }

    #[test]
    fn isomorphism_search_rejects_different_sizes(seed in any::<u64>()) {
        let mut g = Generator::new(seed);
        let (c, d) = (g.structured().cat, g.structured().cat);
        let same = (c.num_objects(), c.num_morphisms()) == (d.num_objects(), d.num_morphisms());
        let outcome = find_isomorphism(&c, &d, DEFAULT_BUDGET);
        if !same {
            prop_assert_eq!(outcome, IsoOutcome::NotIsomorphic);
        } else if let IsoOutcome::Found(w) = outcome {
            prop_assert!(w.validate().is_ok());
        }
    }
}

#[test]
fn isomorphism_classes_of_the_samples() {
    let all: Vec<Arc<FinCat>> = samples::all().into_iter().map(Arc::new).collect();
    for (i, c) in all.iter().enumerate() {
        for (j, d) in all.iter().enumerate() {
            let found = matches!(find_isomorphism(c, d, DEFAULT_BUDGET), IsoOutcome::Found(_));
            // the bundled samples are pairwise non-isomorphic
            assert_eq!(found, i == j, "{} vs {}", c.name(), d.name());
        }
    }
}
