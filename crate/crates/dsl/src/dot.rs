//! Graphviz output: one node per object, one labelled edge per morphism.

use std::fmt::Write;

use basecat_core::{ConstructedCategory, FinCat, FinFunctor};

#[derive(Debug, Clone, Copy, Default)]
pub struct DotOptions {
    pub show_identities: bool,
    /// Group objects by their image under the projection, when there is one.
    pub cluster_by_fibre: bool,
}

fn quote(s: &str) -> String {
    format!("\"{}\"", s.replace('\\', "\\\\").replace('"', "\\\""))
}

pub fn export_dot(cat: &FinCat, projection: Option<&FinFunctor>, opts: &DotOptions) -> String {
    let mut out = format!("digraph {} {{\n", quote(cat.name()));
    match projection.filter(|_| opts.cluster_by_fibre) {
        Some(p) => {
            let base = p.target();
            for (i, b) in base.objects().enumerate() {
                let members: Vec<_> = cat.objects().filter(|&x| p.obj(x) == b).collect();
                if members.is_empty() {
                    continue;
                }
                writeln!(out, "  subgraph {} {{", quote(&format!("cluster_{i}"))).unwrap();
                writeln!(out, "    label={};", quote(base.obj_name(b))).unwrap();
                for x in members {
                    writeln!(out, "    {};", quote(cat.obj_name(x))).unwrap();
                }
                out += "  }\n";
            }
        }
        None => {
            for x in cat.objects() {
                writeln!(out, "  {};", quote(cat.obj_name(x))).unwrap();
            }
        }
    }
    for m in cat.morphisms().filter(|&m| opts.show_identities || !cat.is_identity(m)) {
        writeln!(
            out,
            "  {} -> {} [label={}];",
            quote(cat.obj_name(cat.dom(m))),
            quote(cat.obj_name(cat.cod(m))),
            quote(cat.mor_name(m))
        )
        .unwrap();
    }
    out += "}\n";
    out
}

pub fn export_constructed(cc: &ConstructedCategory, opts: &DotOptions) -> String {
    export_dot(&cc.cat, Some(&cc.projection), opts)
}

#[cfg(test)]
mod tests {
    use super::*;
    use basecat_core::samples;

    #[test]
    fn walking_arrow() {
        let dot = export_dot(&samples::walking_arrow(), None, &DotOptions::default());
        assert_eq!(dot.matches(" -> ").count(), 1);
        assert!(dot.contains("[label=\"f\"]"));
    }

    #[test]
    fn identities_on_request() {
        let opts = DotOptions { show_identities: true, ..Default::default() };
        let dot = export_dot(&samples::terminal(), None, &opts);
        assert_eq!(dot.matches(" -> ").count(), 1);
    }

    #[test]
    fn quotes_are_escaped() {
        assert_eq!(quote("a\"b"), "\"a\\\"b\"");
    }
}
