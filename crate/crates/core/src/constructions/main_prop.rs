//! The isomorphisms between the base structured categories of one functor,
//! checked leg by leg.

use std::fmt;
use std::sync::Arc;

use super::defs::{
    abstract_left_action, concrete_graph_category, concrete_left_action, concrete_right_action, graph_category,
    right_action_selfdual,
};
use super::{ConstructedCategory, ConstructionError};
use crate::fincat::{FinCat, MorId, ObjId};
use crate::finset::ConcreteStructure;
use crate::functor::FinFunctor;
use crate::iso::{find_isomorphism_with, IsoConstraints, IsoOutcome, IsoWitness};

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum LegStatus {
    Pass,
    Fail,
    Skip,
}

impl fmt::Display for LegStatus {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            LegStatus::Pass => "pass",
            LegStatus::Fail => "fail",
            LegStatus::Skip => "skip",
        })
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Leg {
    pub id: String,
    pub status: LegStatus,
    pub detail: String,
}

#[derive(Debug, Clone, PartialEq, Eq, Default)]
pub struct MainPropReport {
    pub legs: Vec<Leg>,
}

impl MainPropReport {
    pub fn passed(&self) -> bool {
        self.legs.iter().all(|l| l.status != LegStatus::Fail)
    }

    pub fn leg(&self, id: &str) -> Option<&Leg> {
        self.legs.iter().find(|l| l.id == id)
    }

    /// The first failing leg as an error.
    pub fn into_result(self) -> Result<MainPropReport, ConstructionError> {
        match self.legs.iter().find(|l| l.status == LegStatus::Fail) {
            Some(l) => Err(ConstructionError::ReportFailure { leg: l.id.clone(), detail: l.detail.clone() }),
            None => Ok(self),
        }
    }

    fn push(&mut self, id: impl Into<String>, ok: bool, detail: impl Into<String>) {
        let status = if ok { LegStatus::Pass } else { LegStatus::Fail };
        self.legs.push(Leg { id: id.into(), status, detail: detail.into() });
    }
}

fn sizes(c: &FinCat) -> String {
    format!("{} objects, {} morphisms", c.num_objects(), c.num_morphisms())
}

/// The projection of a construction that copies `C` must be an isomorphism.
fn projection_leg(report: &mut MainPropReport, id: &str, cc: &ConstructedCategory) {
    let ok = IsoWitness::from_bijection(cc.projection.clone()).is_some();
    let detail = if ok {
        format!("first projection is an isomorphism ({})", sizes(&cc.cat))
    } else {
        "first projection is not bijective".to_string()
    };
    report.push(id, ok, detail);
}

/// Searches for an isomorphism that is the identity on object ids and
/// commutes with the projections onto the common base.
fn concrete_iso(a: &ConstructedCategory, b: &ConstructedCategory, budget: u64) -> Result<IsoWitness, String> {
    let (ca, cb) = (&a.cat, &b.cat);
    let constraints = IsoConstraints {
        objects: Some(Box::new(|x: ObjId, y: ObjId| ca.obj_name(x) == cb.obj_name(y))),
        morphisms: Some(Box::new(|m: MorId, n: MorId| a.projection.mor(m) == b.projection.mor(n))),
    };
    match find_isomorphism_with(ca, cb, budget, &constraints) {
        IsoOutcome::Found(w) => Ok(w),
        IsoOutcome::NotIsomorphic => Err(format!("no isomorphism over the base ({} vs {})", sizes(ca), sizes(cb))),
        IsoOutcome::BudgetExhausted => Err(format!("search budget {budget} exhausted")),
    }
}

/// Checks, for `F: C → D`:
/// - (i) `C`, the graph and the abstract left action are isomorphic;
/// - (ii) with a self-duality, so is the abstract self-dual action;
/// - (iii) with `U`, the concrete graph, concrete left action and either the
///   concrete self-dual action or the opposite of the concrete right action
///   are pairwise isomorphic over `C`, identically on objects;
/// - (iv) with `U`, the concrete categories are not object-for-object copies
///   of `C` once some carrier has two or more elements.
pub fn verify_main_prop(
    f: &FinFunctor,
    u: Option<&ConcreteStructure>,
    self_dual: Option<&IsoWitness>,
    budget: u64,
) -> Result<MainPropReport, ConstructionError> {
    let c = f.source();
    let mut report = MainPropReport::default();
    projection_leg(&mut report, "i.graph", &graph_category(f)?);
    projection_leg(&mut report, "i.left", &abstract_left_action(f)?);
    match self_dual {
        Some(w) => projection_leg(&mut report, "ii.selfdual", &right_action_selfdual(f, w, None)?),
        None => report.legs.push(Leg {
            id: "ii.selfdual".into(),
            status: LegStatus::Skip,
            detail: "no self-duality witness given".into(),
        }),
    }
    let Some(u) = u else {
        for id in ["iii.concrete", "iv.not-concrete"] {
            report.legs.push(Leg { id: id.into(), status: LegStatus::Skip, detail: "no concrete structure".into() });
        }
        return Ok(report);
    };

    let def2 = concrete_graph_category(f, u)?;
    let def6 = concrete_left_action(f, u)?;
    let (third_name, third) = match self_dual {
        Some(w) => ("def8", right_action_selfdual(f, w, Some(u))?),
        None => {
            let op = concrete_right_action(f, u)?.opposite();
            let over_c = op.retarget(c.clone()).unwrap_or_else(|| {
                // (C^op)^op differs from C only if an id already ends in a doubled tag
                let base = Arc::new(c.opposite().opposite());
                op.retarget(base).expect("opposite of the opposite base")
            });
            ("def4op", over_c)
        }
    };
    let trio = [("def2", &def2), ("def6", &def6), (third_name, &third)];
    for (i, (na, a)) in trio.iter().enumerate() {
        for (nb, b) in &trio[i + 1..] {
            let id = format!("iii.{na}~{nb}");
            match concrete_iso(a, b, budget) {
                Ok(_) => report.push(id, true, format!("isomorphic over the base ({})", sizes(&a.cat))),
                Err(detail) => report.push(id, false, detail),
            }
        }
    }

    let big = c.objects().find(|&x| u.carrier(f.obj(x)).len() >= 2);
    match big {
        Some(x) => {
            let p = &def2.projection;
            let injective = {
                let mut seen = vec![false; c.num_objects()];
                p.obj_map().iter().all(|y| !std::mem::replace(&mut seen[y.0], true))
            };
            let detail = format!(
                "carrier over `{}` has {} elements; {} concrete objects over {} base objects",
                c.obj_name(x),
                u.carrier(f.obj(x)).len(),
                def2.cat.num_objects(),
                c.num_objects()
            );
            report.push("iv.not-concrete", !injective, detail);
        }
        None => report.legs.push(Leg {
            id: "iv.not-concrete".into(),
            status: LegStatus::Skip,
            detail: "every carrier has at most one element".into(),
        }),
    }
    Ok(report)
}
