//! Expressions naming inputs on the command line: a declared name, or a
//! construction applied to expressions, e.g. `graph(idTwo)`,
//! `op(right(F))`, `concrete-left(F, U)`.

use std::fmt;
use std::sync::Arc;

use basecat_core::constructions::{
    abstract_left_action, abstract_right_action, concrete_graph_category, concrete_left_action,
    concrete_right_action, graph_category, grothendieck_strict, inverse_witness, right_action_selfdual,
    transformation_groupoid, GroupAction,
};
use basecat_core::{
    find_isomorphism, ConcreteStructure, ConstructedCategory, FinCat, FinFunctor, FunctorOver, IndexedFamily,
    IsoOutcome, IsoWitness,
};
use basecat_dsl::Environment;

use crate::workspace::{usage, CliError};

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Expr {
    Name(String),
    Apply(String, Vec<Expr>),
}

impl fmt::Display for Expr {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Expr::Name(n) => f.write_str(n),
            Expr::Apply(op, args) => {
                let args: Vec<String> = args.iter().map(|a| a.to_string()).collect();
                write!(f, "{op}({})", args.join(", "))
            }
        }
    }
}

fn name_char(c: char) -> bool {
    c.is_ascii_alphanumeric() || matches!(c, '_' | '*' | '\'' | '-')
}

pub fn parse_expr(text: &str) -> Result<Expr, CliError> {
    let chars: Vec<char> = text.chars().filter(|c| !c.is_whitespace()).collect();
    let mut pos = 0;
    let e = expr(&chars, &mut pos, text)?;
    if pos != chars.len() {
        return Err(usage(format!("unexpected `{}` in expression `{text}`", chars[pos])));
    }
    Ok(e)
}

fn expr(chars: &[char], pos: &mut usize, text: &str) -> Result<Expr, CliError> {
    let start = *pos;
    while *pos < chars.len() && name_char(chars[*pos]) {
        *pos += 1;
    }
    if start == *pos {
        return Err(usage(format!("expected a name in expression `{text}`")));
    }
    let name: String = chars[start..*pos].iter().collect();
    if chars.get(*pos) != Some(&'(') {
        return Ok(Expr::Name(name));
    }
    *pos += 1;
    let mut args = vec![expr(chars, pos, text)?];
    loop {
        match chars.get(*pos) {
            Some(',') => {
                *pos += 1;
                args.push(expr(chars, pos, text)?);
            }
            Some(')') => {
                *pos += 1;
                return Ok(Expr::Apply(name, args));
            }
            _ => return Err(usage(format!("expected `,` or `)` in expression `{text}`"))),
        }
    }
}

/// What an expression evaluates to.
#[derive(Debug, Clone)]
pub enum Value {
    Category(Arc<FinCat>),
    Constructed(ConstructedCategory),
    Functor(FinFunctor),
    Concrete(ConcreteStructure),
    Action(GroupAction),
    Family(IndexedFamily),
}

impl Value {
    pub fn kind(&self) -> &'static str {
        match self {
            Value::Category(_) => "category",
            Value::Constructed(_) => "constructed category",
            Value::Functor(_) => "functor",
            Value::Concrete(_) => "concrete structure",
            Value::Action(_) => "action",
            Value::Family(_) => "indexed family",
        }
    }
}

/// The construction names accepted by `construct` and inside expressions.
pub const CONSTRUCTIONS: &[&str] = &[
    "graph",
    "concrete-graph",
    "left",
    "right",
    "concrete-left",
    "concrete-right",
    "selfdual",
    "grothendieck",
    "trans-groupoid",
];

pub struct Evaluator<'a> {
    pub env: &'a Environment,
    pub budget: u64,
}

fn failed(e: impl fmt::Display) -> CliError {
    CliError::Failed(e.to_string())
}

impl Evaluator<'_> {
    pub fn eval(&self, e: &Expr) -> Result<Value, CliError> {
        match e {
            Expr::Name(n) => self.lookup(n),
            Expr::Apply(op, args) => self.apply(op, args),
        }
    }

    fn lookup(&self, n: &str) -> Result<Value, CliError> {
        let env = self.env;
        if let Some(c) = env.categories.get(n) {
            return Ok(Value::Category(c.clone()));
        }
        if let Some(f) = env.functors.get(n) {
            return Ok(Value::Functor(f.clone()));
        }
        if let Some(u) = env.concretes.get(n) {
            return Ok(Value::Concrete(u.clone()));
        }
        if let Some(a) = env.actions.get(n) {
            return Ok(Value::Action(a.clone()));
        }
        if let Some(f) = env.families.get(n) {
            return Ok(Value::Family(f.clone()));
        }
        Err(usage(format!("`{n}` is not declared")))
    }

    fn arity(op: &str, args: &[Expr], range: std::ops::RangeInclusive<usize>) -> Result<(), CliError> {
        if range.contains(&args.len()) {
            Ok(())
        } else {
            Err(usage(format!("`{op}` takes {} to {} arguments, got {}", range.start(), range.end(), args.len())))
        }
    }

    fn apply(&self, op: &str, args: &[Expr]) -> Result<Value, CliError> {
        let cc = |r: Result<ConstructedCategory, _>| r.map(Value::Constructed).map_err(failed);
        match op {
            "graph" | "left" | "right" => {
                Self::arity(op, args, 1..=1)?;
                let f = self.functor(&args[0])?;
                cc(match op {
                    "graph" => graph_category(&f),
                    "left" => abstract_left_action(&f),
                    _ => abstract_right_action(&f),
                })
            }
            "concrete-graph" | "concrete-left" | "concrete-right" => {
                Self::arity(op, args, 1..=2)?;
                let f = self.functor(&args[0])?;
                let u = self.concrete_for(&f, args.get(1))?;
                cc(match op {
                    "concrete-graph" => concrete_graph_category(&f, &u),
                    "concrete-left" => concrete_left_action(&f, &u),
                    _ => concrete_right_action(&f, &u),
                })
            }
            "selfdual" => {
                Self::arity(op, args, 1..=2)?;
                let f = self.functor(&args[0])?;
                let u = args.get(1).map(|a| self.concrete(a)).transpose()?;
                let w = self.self_duality(f.source())?;
                cc(right_action_selfdual(&f, &w, u.as_ref()))
            }
            "grothendieck" => {
                Self::arity(op, args, 1..=1)?;
                match self.eval(&args[0])? {
                    Value::Family(fam) => grothendieck_strict(&fam).map(|(c, _)| Value::Constructed(c)).map_err(failed),
                    v => Err(usage(format!("`{}` is a {}, not an indexed family", args[0], v.kind()))),
                }
            }
            "trans-groupoid" => {
                Self::arity(op, args, 1..=1)?;
                match self.eval(&args[0])? {
                    Value::Action(a) => cc(transformation_groupoid(&a)),
                    v => Err(usage(format!("`{}` is a {}, not an action", args[0], v.kind()))),
                }
            }
            "op" => {
                Self::arity(op, args, 1..=1)?;
                match self.eval(&args[0])? {
                    Value::Constructed(c) => Ok(Value::Constructed(c.opposite())),
                    _ => Ok(Value::Category(Arc::new(self.category(&args[0])?.opposite()))),
                }
            }
            "product" => {
                Self::arity(op, args, 2..=2)?;
                let (c, d) = (self.category(&args[0])?, self.category(&args[1])?);
                Ok(Value::Category(Arc::new(c.product(&d))))
            }
            _ => Err(usage(format!(
                "unknown construction `{op}`; expected one of {}, op or product",
                CONSTRUCTIONS.join(", ")
            ))),
        }
    }

    pub fn category(&self, e: &Expr) -> Result<Arc<FinCat>, CliError> {
        if let Expr::Name(n) = e {
            if let Some(c) = self.env.categories.get(n) {
                return Ok(c.clone());
            }
        }
        match self.eval(e)? {
            Value::Category(c) => Ok(c),
            Value::Constructed(c) => Ok(c.cat),
            v => Err(usage(format!("`{e}` is a {}, not a category", v.kind()))),
        }
    }

    pub fn functor(&self, e: &Expr) -> Result<FinFunctor, CliError> {
        if let Expr::Name(n) = e {
            if let Some(f) = self.env.functors.get(n) {
                return Ok(f.clone());
            }
        }
        match self.eval(e)? {
            Value::Functor(f) => Ok(f),
            Value::Constructed(c) => Ok(c.projection),
            v => Err(usage(format!("`{e}` is a {}, not a functor", v.kind()))),
        }
    }

    pub fn concrete(&self, e: &Expr) -> Result<ConcreteStructure, CliError> {
        match e {
            Expr::Name(n) => {
                self.env.concretes.get(n).cloned().ok_or_else(|| usage(format!("`{n}` is not a concrete structure")))
            }
            _ => Err(usage(format!("`{e}` is not a concrete structure"))),
        }
    }

    /// The given structure, or the only one declared over `F`'s target.
    fn concrete_for(&self, f: &FinFunctor, e: Option<&Expr>) -> Result<ConcreteStructure, CliError> {
        if let Some(e) = e {
            return self.concrete(e);
        }
        let found: Vec<_> = self.env.concretes_over(f.target()).collect();
        match found.as_slice() {
            [u] => Ok((*u).clone()),
            [] => Err(usage(format!("no concrete structure over `{}`; name one", f.target().name()))),
            _ => Err(usage(format!("several concrete structures over `{}`; name one", f.target().name()))),
        }
    }

    /// `C ≅ C^op`: inversion for groupoids, otherwise the first one found.
    pub fn self_duality(&self, c: &Arc<FinCat>) -> Result<IsoWitness, CliError> {
        if let Some(w) = inverse_witness(c) {
            return Ok(w);
        }
        match find_isomorphism(c, &Arc::new(c.opposite()), self.budget) {
            IsoOutcome::Found(w) => Ok(w),
            IsoOutcome::NotIsomorphic => Err(failed(format!("`{}` is not isomorphic to its opposite", c.name()))),
            IsoOutcome::BudgetExhausted => Err(failed(format!("search budget {} exhausted", self.budget))),
        }
    }

    /// A projection to check: constructions project onto their base,
    /// functors are taken as they are and categories over themselves.
    pub fn over(&self, e: &Expr) -> Result<FunctorOver, CliError> {
        let p = match self.eval(e)? {
            Value::Constructed(c) => c.over(),
            Value::Functor(f) => FunctorOver::new(f),
            Value::Category(c) => FunctorOver::identity(c),
            v => return Err(usage(format!("`{e}` is a {}, not a functor or construction", v.kind()))),
        };
        Ok(p.with_budget(self.budget))
    }
}
