//! Seeded generation of small categories, functors and concrete structures.
//!
//! Everything stays within 4 objects, 12 morphisms and carriers of at most 4
//! elements, so that every exhaustive check runs at desk scale.

use std::sync::Arc;

use rand::seq::SliceRandom;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::constructions::{GroupAction, IndexedFamily};
use crate::fincat::{CatBuilder, FinCat, MorId, ObjId};
use crate::finset::{ConcreteStructure, FinFn, FinSetObj};
use crate::functor::{enumerate_functors, FinFunctor};
use crate::samples;

pub const MAX_OBJECTS: usize = 4;
pub const MAX_MORPHISMS: usize = 12;
pub const MAX_CARRIER: usize = 4;

/// A category with a faithful functor into FinSet.
#[derive(Debug, Clone)]
pub struct Structured {
    pub cat: Arc<FinCat>,
    pub concrete: ConcreteStructure,
}

/// `F: C → D` together with `U: D → FinSet`.
#[derive(Debug, Clone)]
pub struct Instance {
    pub functor: FinFunctor,
    pub concrete: ConcreteStructure,
}

#[derive(Debug, Clone)]
pub struct Generator {
    rng: ChaCha8Rng,
    serial: usize,
}

/// Exponent of a morphism of [`samples::cyclic`] as a power of its generator.
fn cyclic_power(id: &str) -> usize {
    match id {
        "id_*" => 0,
        "s" | "r" => 1,
        r => r[1..].parse().expect("named r<k>"),
    }
}

fn letter(i: usize) -> String {
    ((b'A' + i as u8) as char).to_string()
}

impl Generator {
    pub fn new(seed: u64) -> Self {
        Generator { rng: ChaCha8Rng::seed_from_u64(seed), serial: 0 }
    }

    fn fresh(&mut self, prefix: &str) -> String {
        self.serial += 1;
        format!("{prefix}{}", self.serial)
    }

    pub fn rng(&mut self) -> &mut ChaCha8Rng {
        &mut self.rng
    }

    /// A random preorder on up to 4 objects, possibly with isomorphic
    /// objects, and `U(X) = {s ∈ S | s ≤ X}` for a random set `S` of objects.
    pub fn preorder(&mut self) -> Structured {
        let n = self.rng.gen_range(1..=MAX_OBJECTS);
        let le = loop {
            let mut le = vec![vec![false; n]; n];
            for (i, row) in le.iter_mut().enumerate() {
                for (j, e) in row.iter_mut().enumerate() {
                    *e = i == j || self.rng.gen_bool(0.3);
                }
            }
            for k in 0..n {
                for i in 0..n {
                    for j in 0..n {
                        if le[i][k] && le[k][j] {
                            le[i][j] = true;
                        }
                    }
                }
            }
            if le.iter().flatten().filter(|&&e| e).count() <= MAX_MORPHISMS {
                break le;
            }
        };
        let name = self.fresh("P");
        let mut b = CatBuilder::new(name.clone());
        let objs: Vec<ObjId> = (0..n).map(|i| b.add_object(letter(i))).collect();
        let mut mor = vec![vec![None; n]; n];
        for i in 0..n {
            for j in 0..n {
                if le[i][j] {
                    let id = if i == j { format!("id_{}", letter(i)) } else { format!("{}{}", letter(i), letter(j)).to_lowercase() };
                    mor[i][j] = Some(b.add_morphism(id, objs[i], objs[j]));
                }
            }
        }
        for i in 0..n {
            b.set_identity(objs[i], mor[i][i].expect("reflexive"));
            for j in 0..n {
                for k in 0..n {
                    if let (Some(f), Some(g)) = (mor[i][j], mor[j][k]) {
                        b.set_compose(g, f, mor[i][k].expect("transitive")).expect("thin");
                    }
                }
            }
        }
        let cat = Arc::new(b.build().expect("preorders are categories"));

        let chosen: Vec<usize> = (0..n).filter(|_| self.rng.gen_bool(0.6)).collect();
        let carrier: Vec<FinSetObj> = (0..n)
            .map(|x| {
                let elems = chosen.iter().filter(|&&s| le[s][x]).map(|&s| letter(s).to_lowercase());
                FinSetObj::new(letter(x), elems).expect("distinct")
            })
            .collect();
        let action = cat
            .morphisms()
            .map(|m| {
                let (x, y) = (&carrier[cat.dom(m).0], &carrier[cat.cod(m).0]);
                let map = x.elements().iter().map(|e| y.index_of(e).expect("downward closed")).collect();
                FinFn::new(cat.mor_name(m), x.clone(), y.clone(), map)
            })
            .collect();
        let concrete = ConcreteStructure::new(format!("U_{name}"), cat.clone(), carrier, action, false)
            .expect("thin categories are faithful");
        Structured { cat, concrete }
    }

    /// The monoid of functions on 2 or 3 points generated by one or two
    /// random functions, acting on those points.
    pub fn monoid(&mut self) -> Structured {
        let (k, elems) = loop {
            let k = self.rng.gen_range(2..=3);
            let gens: Vec<Vec<usize>> =
                (0..self.rng.gen_range(1..=2)).map(|_| (0..k).map(|_| self.rng.gen_range(0..k)).collect()).collect();
            let mut elems: Vec<Vec<usize>> = vec![(0..k).collect()];
            let mut i = 0;
            while i < elems.len() && elems.len() <= MAX_MORPHISMS {
                for g in &gens {
                    let h: Vec<usize> = elems[i].iter().map(|&x| g[x]).collect();
                    if !elems.contains(&h) {
                        elems.push(h);
                    }
                }
                i += 1;
            }
            if elems.len() <= MAX_MORPHISMS {
                break (k, elems);
            }
        };
        let name = self.fresh("M");
        let tname = |t: &[usize]| t.iter().map(|d| d.to_string()).collect::<String>();
        let mut b = CatBuilder::new(name.clone());
        let o = b.add_object("*");
        let ids: Vec<MorId> = elems
            .iter()
            .enumerate()
            .map(|(i, t)| b.add_morphism(if i == 0 { "id_*".to_string() } else { format!("t{}", tname(t)) }, o, o))
            .collect();
        b.set_identity(o, ids[0]);
        for (gi, g) in elems.iter().enumerate() {
            for (fi, f) in elems.iter().enumerate() {
                let h: Vec<usize> = f.iter().map(|&x| g[x]).collect();
                let hi = elems.iter().position(|e| *e == h).expect("closed");
                b.set_compose(ids[gi], ids[fi], ids[hi]).expect("function composition");
            }
        }
        let cat = Arc::new(b.build().expect("monoids are categories"));
        let set = FinSetObj::new("*", (0..k).map(|i| format!("p{i}"))).expect("distinct");
        let action = elems
            .iter()
            .enumerate()
            .map(|(i, t)| FinFn::new(cat.mor_name(MorId(i)), set.clone(), set.clone(), t.clone()))
            .collect();
        let concrete = ConcreteStructure::new(format!("U_{name}"), cat.clone(), vec![set], action, false)
            .expect("distinct functions");
        Structured { cat, concrete }
    }

    /// A small groupoid: `Z2`, `Z3`, `Z4` acting regularly, `S3` on three
    /// points, or a codiscrete groupoid on two-element carriers.
    pub fn groupoid(&mut self) -> Structured {
        match self.rng.gen_range(0..5) {
            k @ 0..=2 => {
                let n = k + 2;
                let cat = Arc::new(samples::cyclic(n));
                let set = FinSetObj::new("*", (0..n).map(|i| format!("c{i}"))).expect("distinct");
                let action = cat
                    .morphisms()
                    .map(|m| {
                        let j = cyclic_power(cat.mor_name(m));
                        FinFn::new(cat.mor_name(m), set.clone(), set.clone(), (0..n).map(|i| (i + j) % n).collect())
                    })
                    .collect();
                let concrete = ConcreteStructure::new(format!("U_Z{n}"), cat.clone(), vec![set], action, false)
                    .expect("regular action");
                Structured { cat, concrete }
            }
            3 => {
                let cat = Arc::new(samples::s3());
                let set = FinSetObj::new("*", ["l0", "l1", "l2"]).expect("distinct");
                let mut action = Vec::new();
                for m in cat.morphisms() {
                    let p = samples::s3_elements()
                        .into_iter()
                        .find(|p| {
                            let id = format!("p{}{}{}", p[0], p[1], p[2]);
                            cat.mor_name(m) == id || (cat.is_identity(m) && *p == [0, 1, 2])
                        })
                        .expect("named permutation");
                    action.push(FinFn::new(cat.mor_name(m), set.clone(), set.clone(), p.to_vec()));
                }
                let concrete =
                    ConcreteStructure::new("U_S3", cat.clone(), vec![set], action, false).expect("natural action");
                Structured { cat, concrete }
            }
            _ => {
                let n = self.rng.gen_range(2..=3);
                let cat = Arc::new(samples::codiscrete(n));
                let carrier: Vec<FinSetObj> = cat
                    .objects()
                    .map(|x| {
                        let o = cat.obj_name(x).to_lowercase();
                        FinSetObj::new(cat.obj_name(x), [format!("{o}a"), format!("{o}b")]).expect("distinct")
                    })
                    .collect();
                let action = cat
                    .morphisms()
                    .map(|m| FinFn::new(cat.mor_name(m), carrier[cat.dom(m).0].clone(), carrier[cat.cod(m).0].clone(), vec![0, 1]))
                    .collect();
                let concrete = ConcreteStructure::new(format!("U_{}", cat.name()), cat.clone(), carrier, action, false)
                    .expect("thin");
                Structured { cat, concrete }
            }
        }
    }

    pub fn structured(&mut self) -> Structured {
        match self.rng.gen_range(0..5) {
            0 | 1 => self.preorder(),
            2 | 3 => self.monoid(),
            _ => self.groupoid(),
        }
    }

    /// A random functor `source → target`, chosen among the first few
    /// hundred in enumeration order.
    pub fn functor(&mut self, source: &Arc<FinCat>, target: &Arc<FinCat>) -> FinFunctor {
        let all = enumerate_functors(source, target, 512);
        let f = all.choose(&mut self.rng).expect("constant functors exist").clone();
        let name = self.fresh("F");
        f.with_name(name)
    }

    pub fn instance(&mut self) -> Instance {
        let d = self.structured();
        let c = if self.rng.gen_bool(0.25) { d.cat.clone() } else { self.structured().cat };
        let functor = self.functor(&c, &d.cat);
        Instance { functor, concrete: d.concrete }
    }

    /// An instance whose source is a groupoid, so that it is self-dual.
    pub fn groupoid_instance(&mut self) -> Instance {
        let d = self.structured();
        let c = self.groupoid().cat;
        let functor = self.functor(&c, &d.cat);
        Instance { functor, concrete: d.concrete }
    }

    pub fn finset(&mut self, id: &str, max: usize) -> FinSetObj {
        let n = self.rng.gen_range(0..=max);
        let lower = id.to_lowercase();
        FinSetObj::new(id, (0..n).map(|i| format!("{lower}{i}"))).expect("distinct")
    }

    pub fn function(&mut self, name: &str, dom: &FinSetObj, cod: &FinSetObj) -> Option<FinFn> {
        if cod.is_empty() && !dom.is_empty() {
            return None;
        }
        let map = (0..dom.len()).map(|_| self.rng.gen_range(0..cod.len())).collect();
        Some(FinFn::new(name, dom.clone(), cod.clone(), map))
    }

    /// A left action of a group from [`Generator::groupoid`]'s list on at
    /// most 4 points: powers of a random permutation for cyclic groups,
    /// the natural, sign or trivial action for `S3`.
    pub fn action(&mut self) -> GroupAction {
        let name = self.fresh("A");
        if self.rng.gen_bool(0.25) {
            let g = Arc::new(samples::s3());
            let (elems, table): (Vec<&str>, fn(&[usize; 3]) -> Vec<usize>) = match self.rng.gen_range(0..3) {
                0 => (vec!["l0", "l1", "l2"], |p| p.to_vec()),
                1 => (vec!["even", "odd"], |p| {
                    let inversions = (0..3).flat_map(|i| (i + 1..3).map(move |j| (i, j))).filter(|&(i, j)| p[i] > p[j]).count();
                    if inversions % 2 == 0 { vec![0, 1] } else { vec![1, 0] }
                }),
                _ => (vec!["t"], |_| vec![0]),
            };
            let set = FinSetObj::new(name.clone(), elems).expect("distinct");
            let phi = g
                .morphisms()
                .map(|m| {
                    let p = samples::s3_elements()
                        .into_iter()
                        .find(|p| g.mor_name(m) == format!("p{}{}{}", p[0], p[1], p[2]) || (g.is_identity(m) && *p == [0, 1, 2]))
                        .expect("named permutation");
                    FinFn::new(g.mor_name(m), set.clone(), set.clone(), table(&p))
                })
                .collect();
            return GroupAction::new(name, g, set, phi).expect("an action of S3");
        }
        let n = self.rng.gen_range(2..=4);
        let g = Arc::new(samples::cyclic(n));
        let k = self.rng.gen_range(1..=MAX_CARRIER);
        let sigma = loop {
            let mut p: Vec<usize> = (0..k).collect();
            p.shuffle(&mut self.rng);
            let mut q = p.clone();
            for _ in 1..n {
                q = q.iter().map(|&x| p[x]).collect();
            }
            if q.iter().enumerate().all(|(i, &x)| i == x) {
                break p;
            }
        };
        let set = FinSetObj::new(name.clone(), (0..k).map(|i| format!("x{i}"))).expect("distinct");
        let mut powers = vec![(0..k).collect::<Vec<usize>>()];
        for j in 1..n {
            powers.push(powers[j - 1].iter().map(|&x| sigma[x]).collect());
        }
        let phi = g
            .morphisms()
            .map(|m| FinFn::new(g.mor_name(m), set.clone(), set.clone(), powers[cyclic_power(g.mor_name(m))].clone()))
            .collect();
        GroupAction::new(name, g, set, phi).expect("powers of a permutation of order dividing n")
    }

    /// A strict family of discrete categories over `base^op`-shaped data:
    /// the presheaf `U ∘ F` of an instance, read over `C^op`.
    pub fn discrete_family(&mut self) -> IndexedFamily {
        let inst = self.instance();
        crate::constructions::concrete_right_family(&inst.functor, &inst.concrete).expect("instance is well formed")
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn generated_objects_respect_the_bounds() {
        let mut g = Generator::new(7);
        for _ in 0..200 {
            let s = g.structured();
            assert!(s.cat.num_objects() <= MAX_OBJECTS && s.cat.num_morphisms() <= MAX_MORPHISMS, "{}", s.cat.name());
            assert!(s.concrete.max_carrier() <= MAX_CARRIER);
            s.cat.check_laws().unwrap();
            let _ = g.action();
        }
    }

    #[test]
    fn seeds_are_reproducible() {
        let a: Vec<_> = (0..20).map({
            let mut g = Generator::new(3);
            move |_| g.instance().functor.presentation()
        }).collect();
        let b: Vec<_> = (0..20).map({
            let mut g = Generator::new(3);
            move |_| g.instance().functor.presentation()
        }).collect();
        assert_eq!(a, b);
    }
}
