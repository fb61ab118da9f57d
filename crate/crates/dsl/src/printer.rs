//! Canonical text form. Never emits `;`, prints empty sets and bodies as
//! `{}` and leaves out empty sections, so the output of `print` always
//! parses back to the same items.

use std::fmt::Write;

use basecat_core::constructions::ActionPresentation;
use basecat_core::{CategoryPresentation, ConcretePresentation, FunctorPresentation};

use crate::ast::{Document, IndexedPresentation, Item};

pub fn print(doc: &Document) -> String {
    let items: Vec<String> = doc.items().map(print_item).collect();
    items.join("\n")
}

pub fn print_item(item: &Item) -> String {
    let (head, body) = match item {
        Item::Category(p) => (format!("category {}", p.name), category_body(p)),
        Item::Functor(p) => (format!("functor {}: {} -> {}", p.name, p.source, p.target), functor_body(p)),
        Item::Concrete(p) => (format!("concrete {} over {}", p.name, p.over), concrete_body(p)),
        Item::Action(p) => (format!("action {}", p.name), action_body(p)),
        Item::Indexed(p) => (format!("indexed {} over {}", p.name, p.over), indexed_body(p)),
    };
    if body.is_empty() {
        format!("{head} {{}}\n")
    } else {
        format!("{head} {{\n{body}}}\n")
    }
}

fn set(elems: &[String]) -> String {
    if elems.is_empty() {
        "{}".into()
    } else {
        format!("{{ {} }}", elems.join(", "))
    }
}

fn pairs(ps: &[(String, String)]) -> String {
    ps.iter().map(|(a, b)| format!("{a} |-> {b}")).collect::<Vec<_>>().join(", ")
}

/// `  keyword:` followed by one item per line.
fn block(out: &mut String, keyword: &str, items: Vec<String>) {
    if items.is_empty() {
        return;
    }
    writeln!(out, "  {keyword}:").unwrap();
    let n = items.len();
    for (i, s) in items.into_iter().enumerate() {
        let sep = if i + 1 < n { "," } else { "" };
        writeln!(out, "    {s}{sep}").unwrap();
    }
}

fn category_body(p: &CategoryPresentation) -> String {
    let mut out = String::new();
    if !p.objects.is_empty() {
        writeln!(out, "  objects: {}", p.objects.join(", ")).unwrap();
    }
    block(&mut out, "identities", p.identities.iter().map(|(x, e)| format!("{x} = {e}")).collect());
    block(&mut out, "arrows", p.arrows.iter().map(|a| format!("{}: {} -> {}", a.id, a.dom, a.cod)).collect());
    block(&mut out, "compose", p.compose.iter().map(|c| format!("{} . {} = {}", c.g, c.f, c.result)).collect());
    out
}

fn functor_body(p: &FunctorPresentation) -> String {
    let mut out = String::new();
    block(&mut out, "objects", p.objects.iter().map(|(a, b)| format!("{a} |-> {b}")).collect());
    block(&mut out, "arrows", p.arrows.iter().map(|(a, b)| format!("{a} |-> {b}")).collect());
    out
}

fn entry(id: &str, rest: &str) -> String {
    if rest.is_empty() {
        format!("  {id}:\n")
    } else {
        format!("  {id}: {rest}\n")
    }
}

fn concrete_body(p: &ConcretePresentation) -> String {
    let mut out = String::new();
    for (x, elems) in &p.carriers {
        out += &entry(x, &set(elems));
    }
    for (m, ps) in &p.functions {
        out += &entry(m, &pairs(ps));
    }
    out
}

fn action_body(p: &ActionPresentation) -> String {
    let mut out = format!("  group: {}\n", p.group);
    if !p.elements.is_empty() {
        writeln!(out, "  set: {}", set(&p.elements)).unwrap();
    }
    if !p.phi.is_empty() {
        out += "  phi:\n";
        for (g, ps) in &p.phi {
            out += "  ";
            out += &entry(g, &pairs(ps));
        }
    }
    out
}

fn indexed_body(p: &IndexedPresentation) -> String {
    let mut out = String::new();
    for (x, c) in &p.fibres {
        writeln!(out, "  fibre {x} = {c}").unwrap();
    }
    for (u, f) in &p.pulls {
        writeln!(out, "  pull {u} = {f}").unwrap();
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::parse;

    #[test]
    fn terminal_prints_on_two_lines() {
        let doc = parse("t", "category One { objects: * }").unwrap();
        assert_eq!(print(&doc), "category One {\n  objects: *\n}\n");
    }

    #[test]
    fn empty_category_and_sets() {
        let text = "category E {}\nconcrete U over E {}\n";
        let doc = parse("t", text).unwrap();
        assert_eq!(print(&doc), "category E {}\n\nconcrete U over E {}\n");
    }

    #[test]
    fn z2_round_trip() {
        let text = "category Z2 { objects: * identities: * = e arrows: s: * -> * compose: s . s = e }";
        let doc = parse("t", text).unwrap();
        let printed = print(&doc);
        let again = parse("t", &printed).unwrap();
        assert!(doc.same_structure(&again));
        assert_eq!(print(&again), printed);
        assert!(!printed.contains(';'));
    }
}
