use std::fs;
use std::path::Path;
use std::sync::Arc;

use basecat_core::{find_isomorphism, FinCat, FinFunctor, IsoOutcome, IsoWitness};
use basecat_dsl::{export_dot, print, Document, DotOptions, Environment, Item, LoadOptions};

use crate::expr::{parse_expr, Evaluator, Expr, Value};
use crate::report::Report;
use crate::suites::Corpus;
use crate::workspace::{self, usage, CliError};
use crate::{CheckKind, Cli, Command};

pub fn run(cli: &Cli) -> Result<Report, CliError> {
    let opts = LoadOptions { allow_unfaithful: cli.allow_unfaithful };
    let mut report = Report::new(cli.echo());
    match &cli.command {
        Command::Validate { files } => validate(files, opts, &mut report)?,
        Command::Construct { kind, args } => {
            let env = workspace::load(&cli.inputs, opts)?;
            let kind = clap::ValueEnum::to_possible_value(kind).unwrap().get_name().to_string();
            let args = args.iter().map(|a| parse_expr(a)).collect::<Result<Vec<_>, _>>()?;
            construct(cli, &env, &kind, args, &mut report)?;
        }
        Command::Check { kind, args, op } => {
            let env = workspace::load(&cli.inputs, opts)?;
            let ev = Evaluator { env: &env, budget: cli.budget };
            check(&ev, *kind, args, *op, &mut report)?;
        }
        Command::Verify { suite, corpus, random } => {
            let env = match corpus {
                Some(dir) => workspace::load(&workspace::corpus_files(dir)?, opts)?,
                None => workspace::load(&cli.inputs, opts)?,
            };
            let corpus = Corpus { env: &env, seed: cli.seed, random: *random, budget: cli.budget };
            corpus.run(*suite, &mut report);
        }
        Command::Export { expr, show_identities, cluster } => {
            let env = workspace::load(&cli.inputs, opts)?;
            let ev = Evaluator { env: &env, budget: cli.budget };
            let dot_opts = DotOptions { show_identities: *show_identities, cluster_by_fibre: *cluster };
            let (cat, proj) = match ev.eval(&parse_expr(expr)?)? {
                Value::Constructed(c) => (c.cat, Some(c.projection)),
                Value::Functor(f) => (f.source().clone(), Some(f)),
                Value::Category(c) => (c, None),
                v => return Err(usage(format!("cannot draw a {}", v.kind()))),
            };
            let dot = export_dot(&cat, proj.as_ref(), &dot_opts);
            match cli.dot.as_ref().or(cli.out.as_ref()) {
                Some(path) => {
                    write(path, &dot)?;
                    report.pass("export", format!("`{}` written to {}", cat.name(), path.display()));
                }
                None => report.pass("export", dot.trim_end()),
            }
        }
    }
    Ok(report)
}

fn write(path: &Path, text: &str) -> Result<(), CliError> {
    fs::write(path, text).map_err(|source| CliError::Io { path: path.to_path_buf(), source })
}

fn sizes(c: &FinCat) -> String {
    format!("{} objects, {} morphisms", c.num_objects(), c.num_morphisms())
}

fn validate(files: &[std::path::PathBuf], opts: LoadOptions, report: &mut Report) -> Result<(), CliError> {
    let doc = workspace::parse_files(files)?;
    let (env, outcomes) = Environment::load(&doc, opts);
    for o in outcomes {
        let claim = format!("{}/{}", o.kind, o.name);
        match o.result {
            Ok(()) => {
                let mut detail = describe(&env, o.kind, &o.name);
                for w in o.warnings {
                    detail += &format!("; warning: {w}");
                }
                report.pass(claim, detail);
            }
            Err(e) => report.fail(claim, e.to_string()),
        }
    }
    Ok(())
}

fn describe(env: &Environment, kind: &str, name: &str) -> String {
    match kind {
        "category" => sizes(&env.categories[name]),
        "functor" => {
            let f = &env.functors[name];
            format!("{} -> {}", f.source().name(), f.target().name())
        }
        "concrete" => {
            let u = &env.concretes[name];
            format!("over {}, carriers of at most {} elements", u.over().name(), u.max_carrier())
        }
        "action" => {
            let a = &env.actions[name];
            format!("{} acting on {} elements", a.group().name(), a.carrier().len())
        }
        _ => {
            let fam = &env.families[name];
            format!("over {}", fam.base().name())
        }
    }
}

fn construct(cli: &Cli, env: &Environment, kind: &str, args: Vec<Expr>, report: &mut Report) -> Result<(), CliError> {
    let ev = Evaluator { env, budget: cli.budget };
    let e = Expr::Apply(kind.to_string(), args);
    let Value::Constructed(cc) = ev.eval(&e)? else { unreachable!("constructions build categories") };
    report.pass(format!("construct/{kind}"), format!("`{}`: {}", cc.cat.name(), sizes(&cc.cat)));
    if let Some(path) = &cli.out {
        let mut doc = Document::default();
        doc.push(Item::Category(cc.base().presentation()));
        doc.push(Item::Category(cc.cat.presentation()));
        doc.push(Item::Functor(cc.projection.presentation()));
        write(path, &print(&doc))?;
        report.pass("write/bcat", format!("{} with the base, the category and its projection", path.display()));
    }
    if let Some(path) = &cli.dot {
        let opts = DotOptions { show_identities: false, cluster_by_fibre: true };
        write(path, &export_dot(&cc.cat, Some(&cc.projection), &opts))?;
        report.pass("write/dot", path.display().to_string());
    }
    Ok(())
}

fn check(ev: &Evaluator, kind: CheckKind, args: &[String], op: bool, report: &mut Report) -> Result<(), CliError> {
    let fail = |e: basecat_core::FibrationError| CliError::Failed(e.to_string());
    let want = |n: std::ops::RangeInclusive<usize>| {
        if n.contains(&args.len()) {
            Ok(())
        } else {
            Err(usage(format!("expected {} to {} arguments", n.start(), n.end())))
        }
    };
    if kind == CheckKind::Iso {
        want(2..=2)?;
        let (c, d) = (ev.category(&parse_expr(&args[0])?)?, ev.category(&parse_expr(&args[1])?)?);
        iso(&c, &d, ev.budget, report);
        return Ok(());
    }
    let expr = parse_expr(&args[0])?;
    let p = ev.over(&expr)?;
    let (e, b) = (p.total().clone(), p.base().clone());
    match kind {
        CheckKind::Fibration | CheckKind::Opfibration => {
            want(1..=1)?;
            let (name, found) = match kind {
                CheckKind::Fibration => ("fibration", p.check_fibration().map_err(fail)?),
                _ => ("opfibration", p.check_opfibration().map_err(fail)?),
            };
            match found {
                Ok(c) => {
                    let mut detail = format!("{} lifts", c.len());
                    for (u, y, f) in c.entries() {
                        detail += &format!("\nlift of `{}` at `{}`: `{}`", b.mor_name(u), e.obj_name(y), e.mor_name(f));
                    }
                    report.pass(name, detail);
                }
                Err(m) => report.fail(name, format!("missing lift ({}, {}): {m}", m.u, m.object)),
            }
        }
        CheckKind::Split => {
            want(1..=1)?;
            let found = if op { p.check_opfibration() } else { p.check_fibration() }.map_err(fail)?;
            match found {
                Ok(c) => match p.check_split(&c).map_err(fail)? {
                    Ok(()) => report.pass("split", format!("canonical cleavage of {} lifts is split", c.len())),
                    Err(v) => report.fail("split", v.to_string()),
                },
                Err(m) => report.fail("split", format!("no cleavage: missing lift ({}, {}): {m}", m.u, m.object)),
            }
        }
        CheckKind::Cartesian => {
            want(1..=2)?;
            let what = if op { "opcartesian" } else { "cartesian" };
            let mors: Vec<_> = match args.get(1) {
                Some(m) => vec![e.morphism(m).ok_or_else(|| usage(format!("`{m}` is not a morphism of `{}`", e.name())))?],
                None => e.morphisms().collect(),
            };
            for m in mors {
                let v = if op { p.is_opcartesian(m) } else { p.is_cartesian(m) }.map_err(fail)?;
                let claim = format!("{what}/{}", e.mor_name(m));
                match v {
                    Ok(()) => report.pass(claim, format!("over `{}`", b.mor_name(p.proj().mor(m)))),
                    Err(cx) => report.fail(claim, cx.to_string()),
                }
            }
        }
        CheckKind::Iso => unreachable!(),
    }
    Ok(())
}

fn render_witness(w: &IsoWitness) -> String {
    let f: &FinFunctor = &w.forward;
    let (s, t) = (f.source(), f.target());
    let objs: Vec<String> = s.objects().map(|x| format!("{} |-> {}", s.obj_name(x), t.obj_name(f.obj(x)))).collect();
    let mors: Vec<String> = s
        .morphisms()
        .filter(|&m| !s.is_identity(m))
        .map(|m| format!("{} |-> {}", s.mor_name(m), t.mor_name(f.mor(m))))
        .collect();
    format!("objects: {}\narrows: {}", objs.join(", "), mors.join(", "))
}

fn iso(c: &Arc<FinCat>, d: &Arc<FinCat>, budget: u64, report: &mut Report) {
    match find_isomorphism(c, d, budget) {
        IsoOutcome::Found(w) => report.pass("iso", format!("`{}` ≅ `{}`\n{}", c.name(), d.name(), render_witness(&w))),
        IsoOutcome::NotIsomorphic => report.fail("iso", format!("`{}` and `{}` are not isomorphic", c.name(), d.name())),
        IsoOutcome::BudgetExhausted => report.fail("iso", format!("search budget {budget} exhausted")),
    }
}
