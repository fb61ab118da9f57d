//! Theorem suites run by `verify`: every claim over the corpus plus seeded
//! random instances. Claims are reported as `suite/instance`.

use std::fmt::Display;

use basecat_core::constructions::{
    abstract_left_action, abstract_right_action, concrete_graph_category, concrete_left_action,
    concrete_right_action, graph_category, grothendieck_strict, inverse_witness, transformation_groupoid,
    verify_main_prop, verify_prop4, GroupAction, LegStatus,
};
use basecat_core::random::Generator;
use basecat_core::{
    pullback, verify_pullback_universal, Cleavage, ConcreteStructure, FinCat, FinFn, FinFunctor, FinSetObj,
    FunctorOver, IndexedFamily, PullbackVerdict,
};
use basecat_core::fibration::MissingLift;
use basecat_dsl::{print_item, Environment, Item};

use crate::report::Report;

#[derive(Debug, Clone, Copy, PartialEq, Eq, clap::ValueEnum)]
pub enum Suite {
    Prop2,
    Prop3,
    Prop4,
    Main,
    Duality,
    #[value(name = "appendixC")]
    AppendixC,
    Grothendieck,
    Pullback,
    All,
}

impl Suite {
    pub const EACH: [Suite; 8] = [
        Suite::Prop2,
        Suite::Prop3,
        Suite::Prop4,
        Suite::Main,
        Suite::Duality,
        Suite::AppendixC,
        Suite::Grothendieck,
        Suite::Pullback,
    ];

    pub fn id(self) -> &'static str {
        match self {
            Suite::Prop2 => "prop2",
            Suite::Prop3 => "prop3",
            Suite::Prop4 => "prop4",
            Suite::Main => "main",
            Suite::Duality => "duality",
            Suite::AppendixC => "appendixC",
            Suite::Grothendieck => "grothendieck",
            Suite::Pullback => "pullback",
            Suite::All => "all",
        }
    }
}

/// Inputs shared by the suites.
pub struct Corpus<'a> {
    pub env: &'a Environment,
    pub seed: u64,
    /// Random instances added per suite.
    pub random: usize,
    pub budget: u64,
}

type Claim = Result<String, String>;

fn err(e: impl Display) -> String {
    e.to_string()
}

/// Flattens `Result<Result<T, A>, B>` from the fibration checks.
fn flat<T, A: Display, B: Display>(r: Result<Result<T, A>, B>) -> Result<T, String> {
    r.map_err(err)?.map_err(err)
}

fn sizes(c: &FinCat) -> String {
    format!("{} objects, {} morphisms", c.num_objects(), c.num_morphisms())
}

impl Corpus<'_> {
    pub fn run(&self, suite: Suite, report: &mut Report) {
        match suite {
            Suite::All => Suite::EACH.iter().for_each(|&s| self.run(s, report)),
            Suite::Prop2 => self.prop2(report),
            Suite::Prop3 => self.prop3(report),
            Suite::Prop4 => self.prop4(report),
            Suite::Main => self.main(report),
            Suite::Duality => self.duality(report),
            Suite::AppendixC => self.appendix_c(report),
            Suite::Grothendieck => self.grothendieck(report),
            Suite::Pullback => self.pullback(report),
        }
    }

    fn generator(&self) -> Generator {
        Generator::new(self.seed)
    }

    fn record(report: &mut Report, suite: Suite, instance: &str, claim: Claim) {
        let id = format!("{}/{instance}", suite.id());
        match claim {
            Ok(detail) => report.pass(id, detail),
            Err(detail) => report.fail(id, detail),
        }
    }

    fn over(&self, proj: &FinFunctor) -> FunctorOver {
        FunctorOver::new(proj.clone()).with_budget(self.budget)
    }

    /// Corpus functors with each concrete structure over their target.
    fn pairs(&self) -> Vec<(String, FinFunctor, ConcreteStructure)> {
        let mut out = Vec::new();
        for f in self.env.functors.values() {
            for u in self.env.concretes_over(f.target()) {
                out.push((format!("{}+{}", f.name(), u.name()), f.clone(), u.clone()));
            }
        }
        out
    }

    fn prop2(&self, report: &mut Report) {
        let mut g = self.generator();
        let random = (0..self.random).map(|_| g.instance().functor);
        for f in self.env.functors.values().cloned().chain(random) {
            let claim = self.prop2_one(&f);
            Self::record(report, Suite::Prop2, f.name(), claim);
        }
    }

    fn split_cleavage(&self, p: &FunctorOver, c: Result<Cleavage, MissingLift>, what: &str) -> Result<usize, String> {
        let c = c.map_err(err)?;
        for (_, _, f) in c.entries() {
            let v = match what {
                "cleavage" => p.is_cartesian(f),
                _ => p.is_opcartesian(f),
            };
            flat(v.map(|r| r.map_err(|cx| format!("{what} entry {cx}"))))?;
        }
        flat(p.check_split(&c).map(|r| r.map_err(|v| format!("{what}: {v}"))))?;
        Ok(c.len())
    }

    fn prop2_one(&self, f: &FinFunctor) -> Claim {
        let cc = graph_category(f).map_err(err)?;
        let p = self.over(&cc.projection);
        let n = self.split_cleavage(&p, p.check_fibration().map_err(err)?, "cleavage")?;
        let k = self.split_cleavage(&p, p.check_opfibration().map_err(err)?, "opcleavage")?;
        Ok(format!("{}; split cleavage ({n} lifts) and split opcleavage ({k} lifts)", sizes(&cc.cat)))
    }

    fn prop3(&self, report: &mut Report) {
        let mut g = self.generator();
        let random = (0..self.random).map(|_| {
            let inst = g.instance();
            (format!("{}+{}", inst.functor.name(), inst.concrete.name()), inst.functor, inst.concrete)
        });
        for (id, f, u) in self.pairs().into_iter().chain(random) {
            let claim = concrete_graph_category(&f, &u).map_err(err).and_then(|cc| {
                let p = self.over(&cc.projection);
                let k = self.split_cleavage(&p, p.check_opfibration().map_err(err)?, "opcleavage")?;
                Ok(format!("{}; split opcleavage ({k} lifts)", sizes(&cc.cat)))
            });
            Self::record(report, Suite::Prop3, &id, claim);
        }
    }

    fn prop4(&self, report: &mut Report) {
        let mut g = self.generator();
        let random = (0..self.random).map(|_| g.action());
        for act in self.env.actions.values().cloned().chain(random) {
            Self::record(report, Suite::Prop4, act.name(), prop4_one(&act));
        }
    }

    fn main(&self, report: &mut Report) {
        let mut cases: Vec<(String, FinFunctor, Option<ConcreteStructure>)> = Vec::new();
        for f in self.env.functors.values() {
            let us: Vec<_> = self.env.concretes_over(f.target()).cloned().collect();
            if us.is_empty() {
                cases.push((f.name().to_string(), f.clone(), None));
            }
            for u in us {
                cases.push((format!("{}+{}", f.name(), u.name()), f.clone(), Some(u)));
            }
        }
        let mut g = self.generator();
        for i in 0..self.random {
            let inst = if i % 2 == 0 { g.instance() } else { g.groupoid_instance() };
            cases.push((format!("{}+{}", inst.functor.name(), inst.concrete.name()), inst.functor, Some(inst.concrete)));
        }
        for (id, f, u) in cases {
            Self::record(report, Suite::Main, &id, self.main_one(&f, u.as_ref()));
        }
    }

    fn main_one(&self, f: &FinFunctor, u: Option<&ConcreteStructure>) -> Claim {
        let w = inverse_witness(f.source());
        let r = verify_main_prop(f, u, w.as_ref(), self.budget).map_err(err)?;
        let legs: Vec<String> = r.legs.iter().map(|l| format!("{} {}", l.id, l.status)).collect();
        if let Some(l) = r.legs.iter().find(|l| l.status == LegStatus::Fail) {
            return Err(format!("{}: {}", l.id, l.detail));
        }
        if w.is_some() && r.leg("ii.selfdual").map(|l| l.status) != Some(LegStatus::Pass) {
            return Err("self-dual base but the self-dual leg did not run".into());
        }
        Ok(legs.join(", "))
    }

    fn duality(&self, report: &mut Report) {
        let mut g = self.generator();
        let mut cases: Vec<(String, FinFunctor, Option<ConcreteStructure>)> =
            self.env.functors.values().map(|f| (f.name().to_string(), f.clone(), None)).collect();
        cases.extend(self.pairs().into_iter().map(|(id, f, u)| (id, f, Some(u))));
        for _ in 0..self.random {
            let inst = g.instance();
            cases.push((inst.functor.name().to_string(), inst.functor.clone(), None));
            cases.push((format!("{}+{}", inst.functor.name(), inst.concrete.name()), inst.functor, Some(inst.concrete)));
        }
        for (id, f, u) in cases {
            let claim = match &u {
                None => abstract_right_action(&f)
                    .and_then(|r| Ok((r, abstract_left_action(&f)?)))
                    .map_err(err)
                    .and_then(|(r, l)| same_print(&r.cat.opposite(), &l.cat)),
                Some(u) => concrete_right_action(&f, u)
                    .and_then(|r| Ok((r, concrete_left_action(&f, u)?)))
                    .map_err(err)
                    .and_then(|(r, l)| same_print(&r.cat.opposite(), &l.cat)),
            };
            Self::record(report, Suite::Duality, &id, claim);
        }
    }

    fn appendix_c(&self, report: &mut Report) {
        let mut cases: Vec<(String, FunctorOver)> = Vec::new();
        for f in self.env.functors.values() {
            if let Ok(cc) = graph_category(f) {
                cases.push((format!("graph({})", f.name()), self.over(&cc.projection)));
            }
        }
        for fam in self.env.families.values() {
            if let Ok((cc, _)) = grothendieck_strict(fam) {
                cases.push((format!("grothendieck({})", fam.name()), self.over(&cc.projection)));
            }
        }
        for act in self.env.actions.values() {
            if let Ok(cc) = transformation_groupoid(act) {
                cases.push((format!("trans-groupoid({})", act.name()), self.over(&cc.projection)));
            }
        }
        let mut g = self.generator();
        for _ in 0..self.random {
            let f = g.instance().functor;
            if let Ok(cc) = graph_category(&f) {
                cases.push((format!("graph({})", f.name()), self.over(&cc.projection)));
            }
        }
        for (id, p) in cases {
            Self::record(report, Suite::AppendixC, &id, appendix_c_one(&p));
        }
    }

    fn grothendieck(&self, report: &mut Report) {
        let mut g = self.generator();
        let random: Vec<IndexedFamily> = (0..self.random).map(|_| g.discrete_family()).collect();
        for fam in self.env.families.values().chain(&random) {
            let claim = grothendieck_strict(fam).map_err(err).and_then(|(cc, c)| {
                let rt = self.over(&cc.projection).round_trip(&c).map_err(err)?;
                if rt.holds() {
                    Ok(format!("{}; recovered family rebuilds the total category", sizes(&cc.cat)))
                } else {
                    Err("rebuilt total category differs after normalization".into())
                }
            });
            Self::record(report, Suite::Grothendieck, fam.name(), claim);
        }
    }

    fn pullback(&self, report: &mut Report) {
        Self::record(report, Suite::Pullback, "figure", figure_pullback());
        let mut g = self.generator();
        let squares = self.random.max(50);
        let mut done = 0;
        while done < squares {
            let c = g.finset("C", 5);
            let (a, b) = (g.finset("A", 5), g.finset("B", 5));
            // a nonempty set has no function into the empty one; draw again
            let (Some(f), Some(h)) = (g.function("f", &a, &c), g.function("g", &b, &c)) else { continue };
            Self::record(report, Suite::Pullback, &format!("random{done}"), pullback_one(&f, &h, 2));
            done += 1;
        }
    }
}

fn prop4_one(act: &GroupAction) -> Claim {
    let w = verify_prop4(act).map_err(err)?;
    w.validate().map_err(err)?;
    let tg = transformation_groupoid(act).map_err(err)?;
    let (g, x) = (act.group().num_morphisms(), act.carrier().len());
    let n = tg.cat.num_morphisms();
    if n != g * x || w.source().num_morphisms() != n {
        return Err(format!("{n} morphisms, expected |G|·|X| = {g}·{x}"));
    }
    Ok(format!("witness found; {n} morphisms = {g}·{x}"))
}

fn canonical_text(c: &FinCat) -> Result<String, String> {
    let n = c.normalize().map_err(err)?.with_name("N");
    Ok(print_item(&Item::Category(n.presentation())))
}

fn same_print(a: &FinCat, b: &FinCat) -> Claim {
    let (ta, tb) = (canonical_text(a)?, canonical_text(b)?);
    if ta == tb {
        Ok(format!("`{}` and `{}` print identically ({})", a.name(), b.name(), sizes(b)))
    } else {
        Err(format!("`{}` and `{}` differ after normalization", a.name(), b.name()))
    }
}

fn appendix_c_one(p: &FunctorOver) -> Claim {
    let c = flat(p.check_fibration())?;
    let e = p.total();
    for g in e.morphisms() {
        let fac = p.factor_vertical_cartesian(&c, g).map_err(err)?;
        if e.compose(fac.cartesian, fac.vertical) != Some(g) {
            return Err(format!("factorization of `{}` does not compose back", e.mor_name(g)));
        }
        let n = p.vertical_factorizations(fac.cartesian, g).len();
        if n != 1 {
            return Err(format!("`{}` has {n} vertical factorizations", e.mor_name(g)));
        }
    }
    flat(p.property_cartesian_compose().map(|r| r.map_err(|cx| format!("`{}` . `{}` is not cartesian", cx.g, cx.f))))?;
    flat(p.property_cartesian_over_iso().map(|r| r.map_err(|m| format!("`{m}` over an iso is not invertible"))))?;
    Ok(format!("{} morphisms factor uniquely; both closure lemmas hold", e.num_morphisms()))
}

/// `|A ×_C B| = Σ_c |f⁻¹(c)|·|g⁻¹(c)|` and the universal property against
/// cones of up to `probe` points.
fn pullback_one(f: &FinFn, g: &FinFn, probe: usize) -> Claim {
    let sq = pullback(f, g).map_err(err)?;
    let expected: usize = (0..f.cod().len())
        .map(|c| (0..f.dom().len()).filter(|&i| f.apply(i) == c).count() * (0..g.dom().len()).filter(|&j| g.apply(j) == c).count())
        .sum();
    if sq.apex.len() != expected {
        return Err(format!("{} elements, fibrewise count gives {expected}", sq.apex.len()));
    }
    match verify_pullback_universal(&sq, probe) {
        PullbackVerdict::Ok => Ok(format!("{} elements; universal for cones of up to {probe} points", sq.apex.len())),
        v => Err(format!("{v:?}")),
    }
}

fn figure_pullback() -> Claim {
    let set = |id: &str, e: &[&str]| FinSetObj::new(id, e.iter().copied()).map_err(err);
    let (a, b, c) = (set("A", &["a1", "a2"])?, set("B", &["b1", "b2", "b3"])?, set("C", &["c1", "c2"])?);
    let f = FinFn::from_pairs("f", a, c.clone(), &[("a1", "c1"), ("a2", "c2")]).map_err(err)?;
    let g = FinFn::from_pairs("g", b, c, &[("b1", "c1"), ("b2", "c1"), ("b3", "c2")]).map_err(err)?;
    let detail = pullback_one(&f, &g, 3)?;
    let sq = pullback(&f, &g).map_err(err)?;
    let expected = ["(a1,b1)", "(a1,b2)", "(a2,b3)"];
    if sq.apex.elements() != expected {
        return Err(format!("apex {:?}, expected {expected:?}", sq.apex.elements()));
    }
    Ok(format!("{{{}}}; {detail}", expected.join(", ")))
}
